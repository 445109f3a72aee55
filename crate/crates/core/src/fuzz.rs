//! Randomized self-checks shared by the CLI and the test suites.

use serde::Serialize;

use crate::kernel::Group;
use crate::random::{self, Rng8};
use crate::rewrite::{
    britton_is_trivial, embed_to_base, embedded_is_trivial, lemma1_rewrite, verify_lemma1_conditions, RewriteOutcome,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzStats {
    pub kind: String,
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    /// Kind-specific counter: skipped free-product words, trivial words seen, …
    pub notes: Vec<(String, usize)>,
    pub first_failures: Vec<String>,
}

impl FuzzStats {
    fn new(kind: &str, seed: u64) -> Self {
        FuzzStats { kind: kind.into(), seed, trials: 0, failures: 0, notes: Vec::new(), first_failures: Vec::new() }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.first_failures.len() < 5 {
            self.first_failures.push(msg);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// One round trip: rewrite, check the conditions, embed back.
pub fn rewrite_trial(group: &Group, w: &crate::kernel::TWord, k: u32) -> Result<bool, String> {
    match lemma1_rewrite(group, w, k).map_err(|e| format!("{w}: {e}"))? {
        RewriteOutcome::FreeProduct { .. } => Ok(false),
        RewriteOutcome::Presentation { presentation, .. } => {
            let report = verify_lemma1_conditions(&presentation);
            if !report.all_pass() {
                return Err(format!("{w}: conditions fail: {report:?}"));
            }
            embed_to_base(&presentation).map_err(|e| format!("{w}: {e}"))?;
            Ok(true)
        }
    }
}

/// `count` words that yield a presentation (free-product words are redrawn).
pub fn fuzz_rewrite(count: usize, seed: u64) -> FuzzStats {
    let mut rng = random::rng(seed);
    let mut stats = FuzzStats::new("rewrite", seed);
    let mut skipped = 0;
    while stats.trials < count {
        let group = random::small_group(&mut rng);
        let w = random::unimodular_word(&mut rng, &group, 8);
        match rewrite_trial(&group, &w, 2) {
            Ok(true) => stats.trials += 1,
            Ok(false) => skipped += 1,
            Err(msg) => {
                stats.trials += 1;
                stats.fail(msg);
            }
        }
    }
    stats.notes.push(("free_product_redrawn".into(), skipped));
    stats
}

pub fn britton_trial(rng: &mut Rng8) -> (bool, Result<(), String>) {
    let group = random::small_group(rng);
    let p = random::presentation(rng, &group, 2, 1, 2);
    let w = if rng_bool(rng) { random::hword(rng, &p, 12) } else { random::trivial_hword(rng, &p, 12) };
    let fast = britton_is_trivial(&w, &p);
    let oracle = embedded_is_trivial(&w, &p);
    let verdict = if fast == oracle { Ok(()) } else { Err(format!("{w} over s={}: britton {fast}, oracle {oracle}", p.s)) };
    (oracle, verdict)
}

fn rng_bool(rng: &mut Rng8) -> bool {
    use rand::Rng;
    rng.gen_bool(0.5)
}

pub fn fuzz_britton(count: usize, seed: u64) -> FuzzStats {
    let mut rng = random::rng(seed);
    let mut stats = FuzzStats::new("britton", seed);
    let mut trivial = 0;
    for _ in 0..count {
        let (was_trivial, verdict) = britton_trial(&mut rng);
        stats.trials += 1;
        trivial += was_trivial as usize;
        if let Err(msg) = verdict {
            stats.fail(msg);
        }
    }
    stats.notes.push(("trivial_words".into(), trivial));
    stats
}

/// Random weights on a random map: total curvature is `2χ`, with `χ` also
/// counted from the orbits directly.
pub fn gauss_bonnet_trial(rng: &mut Rng8) -> Result<(), String> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::Rng;

    let faces = rng.gen_range(1..=6);
    let mut degrees: Vec<usize> = (0..faces).map(|_| rng.gen_range(1..=8)).collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        degrees[0] += 1;
    }
    let map = crate::surface::random_map_with(&degrees, rng).map_err(|e| e.to_string())?;
    let nu: Vec<BigRational> = (0..map.dart_count())
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(-20..=20)), BigInt::from(rng.gen_range(1..=12))))
        .collect();
    let report = crate::curvature::gauss_bonnet_report(&map, &nu).map_err(|e| e.to_string())?;
    let chi = map.vertices().len() as i64 - (map.dart_count() / 2) as i64 + map.face_count() as i64;
    if report.chi != chi || !report.identity_holds() {
        return Err(format!("degrees {degrees:?}: total {} vs chi {}", report.total, chi));
    }
    Ok(())
}

pub fn fuzz_gauss_bonnet(count: usize, seed: u64) -> FuzzStats {
    let mut rng = random::rng(seed);
    let mut stats = FuzzStats::new("gauss-bonnet", seed);
    for _ in 0..count {
        stats.trials += 1;
        if let Err(msg) = gauss_bonnet_trial(&mut rng) {
            stats.fail(msg);
        }
    }
    stats
}
