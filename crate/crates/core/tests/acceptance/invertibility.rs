use retrograph::disconnect::{apply, RuleKind};
use retrograph::graph::{validate_chemical, NameGen};

use super::common::{collect, Case, Tally};

const KINDS: [RuleKind; 6] = [RuleKind::E, RuleKind::I, RuleKind::C, RuleKind::Ebar, RuleKind::Ibar, RuleKind::Cbar];

/// Each case walks a few random rules first, so inverse kinds find α pairs
/// and ionic edges to act on.
pub fn run(seed: u64, n: usize) -> Tally {
    let mut t = collect(seed, n, |gen| {
        let g = gen.molecular_graph(14);
        let (_, start) = gen.rule_walk(&g, 3);
        let mut names = NameGen::new("#t");
        let mut out = Vec::new();
        for kind in KINDS {
            let Some(r) = gen.applicable_rule(&start, &[kind], &mut names) else { continue };
            let case = match apply(&r, &start) {
                Err(e) => Case::fail(format!("{r:?} did not apply: {e}")),
                Ok(h) => {
                    let violations = validate_chemical(&h);
                    match apply(&r.inverse(), &h) {
                        _ if !violations.is_empty() => Case::fail(format!("{r:?} gave a non-chemical graph: {}", violations[0])),
                        Ok(b) if b == start => Case::pass(format!("{}:{}-{}", kind.as_str(), r.u, r.v)).tagged(kind.as_str()),
                        Ok(_) => Case::fail(format!("inverse of {r:?} did not restore the graph")),
                        Err(e) => Case::fail(format!("inverse of {r:?} did not apply: {e}")),
                    }
                }
            };
            out.push(case);
        }
        Some(out)
    });
    let ok = t.tags.len() == KINDS.len();
    t.add(Case::check(ok, format!("kinds covered: {:?}", t.tags)));
    t
}
