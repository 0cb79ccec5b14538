//! Size of a maximum common labelled subgraph, by bounded branch and bound.

use crate::graph::{Graph, Name};

struct Search<'a> {
    a: &'a Graph,
    b: &'a Graph,
    order: Vec<Name>,
    b_names: Vec<Name>,
    used: Vec<bool>,
    mapped: Vec<(Name, Name)>,
    best: usize,
    budget: usize,
}

impl Search<'_> {
    fn go(&mut self, i: usize) {
        if self.budget == 0 {
            return;
        }
        self.budget -= 1;
        self.best = self.best.max(self.mapped.len());
        if i == self.order.len() || self.mapped.len() + (self.order.len() - i) <= self.best {
            return;
        }
        let v = self.order[i].clone();
        let lv = self.a.label(&v);
        for j in 0..self.b_names.len() {
            if self.used[j] || self.b.label(&self.b_names[j]) != lv {
                continue;
            }
            let w = &self.b_names[j];
            if self.mapped.iter().all(|(x, y)| self.a.edge(&v, x) == self.b.edge(w, y)) {
                self.used[j] = true;
                self.mapped.push((v.clone(), w.clone()));
                self.go(i + 1);
                self.mapped.pop();
                self.used[j] = false;
            }
        }
        self.go(i + 1);
    }
}

/// Vertices of the largest induced common subgraph found within `budget`
/// search nodes; a lower bound when the budget runs out.
pub fn common_subgraph_size(a: &Graph, b: &Graph, budget: usize) -> usize {
    let mut order: Vec<Name> = a.names().cloned().collect();
    order.sort_by_key(|v| std::cmp::Reverse(a.neighbours(v).count()));
    let b_names: Vec<Name> = b.names().cloned().collect();
    let mut s = Search { a, b, used: vec![false; b_names.len()], order, b_names, mapped: Vec::new(), best: 0, budget };
    s.go(0);
    s.best
}

/// Vertices of `a` whose label has no partner left in `b`; a lower bound on
/// [`difference`].
pub fn label_deficit(a: &Graph, b: &Graph) -> usize {
    let have = b.label_multiset();
    a.label_multiset().iter().map(|(l, n)| n.saturating_sub(have.get(l).copied().unwrap_or(0))).sum()
}

/// `|V_a|` minus the common subgraph size.
pub fn difference(a: &Graph, b: &Graph) -> usize {
    a.len() - common_subgraph_size(a, b, 5_000).min(a.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn identical_graphs_have_no_deficit() {
        assert_eq!(difference(&samples::water(), &samples::water()), 0);
    }

    #[test]
    fn ethanol_against_chloroethane() {
        // Ethanol and chloroethane share the ethyl group with five hydrogens.
        let n = common_subgraph_size(&samples::ethanol(), &samples::chloroethane(), 1_000_000);
        assert_eq!(n, 7);
    }

    #[test]
    fn label_deficit_bounds_the_difference() {
        let (a, b) = (samples::ethanol(), samples::chloroethane());
        assert_eq!(label_deficit(&a, &b), 2);
        assert!(label_deficit(&a, &b) <= difference(&a, &b));
    }

    #[test]
    fn disjoint_labels() {
        assert_eq!(difference(&samples::water(), &samples::hydrogen_chloride()), 2);
    }
}
