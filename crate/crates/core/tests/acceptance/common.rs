use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeSet;
use std::hash::Hasher;
use std::time::Duration;

use rayon::prelude::*;
use retrograph::gen::Gen;

/// Outcome of one generated check. `text` feeds the digest; on failure it is
/// also the reason shown.
pub struct Case {
    pub ok: bool,
    pub text: String,
    pub tag: Option<String>,
}

impl Case {
    pub fn pass(text: impl Into<String>) -> Case {
        Case { ok: true, text: text.into(), tag: None }
    }

    pub fn fail(text: impl Into<String>) -> Case {
        Case { ok: false, text: text.into(), tag: None }
    }

    pub fn check(ok: bool, text: impl Into<String>) -> Case {
        Case { ok, text: text.into(), tag: None }
    }

    pub fn tagged(self, tag: impl Into<String>) -> Case {
        Case { tag: Some(tag.into()), ..self }
    }
}

#[derive(Default)]
pub struct Tally {
    pub checks: usize,
    pub failures: Vec<String>,
    /// Tags of passing cases.
    pub tags: BTreeSet<String>,
    hasher: DefaultHasher,
}

impl Tally {
    pub fn add(&mut self, case: Case) {
        self.checks += 1;
        self.hasher.write(case.text.as_bytes());
        self.hasher.write_u8(case.ok as u8);
        if !case.ok {
            self.failures.push(case.text);
        } else if let Some(tag) = case.tag {
            self.tags.insert(tag);
        }
    }

    pub fn digest(&self) -> u64 {
        self.hasher.finish()
    }
}

pub struct Report {
    pub tally: Tally,
    pub minimum: usize,
    pub limit: Duration,
    pub elapsed: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.tally.failures.is_empty() && self.tally.checks >= self.minimum && self.elapsed <= self.limit
    }
}

fn case_seed(seed: u64, i: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i)
}

const BATCH: u64 = 64;

/// The first `n` cases that `f` produces over per-index generators, in index
/// order. Gives up after `50 * n` indices.
pub fn collect<F>(seed: u64, n: usize, f: F) -> Tally
where
    F: Fn(&mut Gen) -> Option<Vec<Case>> + Sync,
{
    let mut tally = Tally::default();
    let mut start = 0u64;
    while tally.checks < n && start < 50 * n as u64 {
        let batch: Vec<Option<Vec<Case>>> = (start..start + BATCH).into_par_iter().map(|i| f(&mut Gen::new(case_seed(seed, i)))).collect();
        for cases in batch.into_iter().flatten() {
            for c in cases {
                if tally.checks < n {
                    tally.add(c);
                }
            }
        }
        start += BATCH;
    }
    tally
}
