use retrograph::format::{to_canonical, ReactionDoc};
use retrograph::rewrite::{reaction_from_dpo, reaction_to_dpo};

use super::common::{collect, Case, Tally};

pub fn run(seed: u64, n: usize) -> Tally {
    collect(seed, n, |gen| {
        let c = gen.molecular_graph(14);
        let t = gen.reaction(&c, 3)?;
        let text = to_canonical(&ReactionDoc::from(&t));
        let case = match reaction_to_dpo(&t) {
            Ok(d) if reaction_from_dpo(&d) == t => Case::pass(text),
            Ok(_) => Case::fail(format!("round trip changed the tuple {text}")),
            Err(e) => Case::fail(format!("no DPO for {text}: {e}")),
        };
        Some(vec![case])
    })
}
