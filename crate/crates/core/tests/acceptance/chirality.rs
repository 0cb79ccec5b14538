use retrograph::orientation::are_chiral;
use retrograph::samples;

use super::common::{Case, Tally};

pub fn run(_seed: u64) -> Tally {
    let mut t = Tally::default();
    for (name, (a, b), want) in [
        ("2-butanol", samples::butan_2_ol_pair(), true),
        ("isopentane", samples::isopentane_pair(), false),
        ("1,3-dichloroallene", samples::dichloroallene_pair(), true),
    ] {
        let got = are_chiral(&a, &b).is_chiral();
        t.add(Case::check(got == want, format!("{name}: chiral={got}, expected {want}")));
    }
    t
}
