//! Seeded sampling of uniform m-subsets and the badness probability,
//! exact or Monte Carlo.
//!
//! Monte Carlo runs are split into a fixed number of partitions; partition
//! k draws from a generator seeded with `mix_seed(seed, k)` and the merged
//! estimate reduces over partitions in index order, so the result depends
//! only on (seed, trials), never on how many worker threads ran.

use num::bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::family::MinimalFamily;
use crate::lambda::Lambda;
use crate::rat::{binomial, rat, Rat};
use crate::selector::{BadnessEvaluator, SelectorConfig};
use crate::subset::{m_subsets, Subset};

/// Number of independent partitions a Monte Carlo run is split into.
pub const MC_PARTITIONS: u64 = 64;

/// Worker-seed derivation: SplitMix64 finalizer of `seed + worker`.
pub fn mix_seed(seed: u64, worker: u64) -> u64 {
    let mut z = seed.wrapping_add(worker).wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Uniform m-element subset of `{1..=n}` by partial Fisher-Yates over the
/// label array; the same generator state always yields the same subset.
pub fn sample_m_subset<R: Rng>(n: usize, m: usize, rng: &mut R) -> Subset {
    debug_assert!(m <= n);
    let mut labels: Vec<usize> = (1..=n).collect();
    let mut out = Subset::EMPTY;
    for i in 0..m {
        let j = rng.gen_range(i..n);
        labels.swap(i, j);
        out = out.insert(labels[i]);
    }
    out
}

/// Exact badness probability over all `C(n, m)` subsets; errors above the
/// enumeration cap (10^6 subsets).
pub fn bad_prob_exact(family: &MinimalFamily, lambda: &Lambda, cfg: &SelectorConfig) -> Result<Rat> {
    let n = cfg.n();
    if n != family.n() {
        return Err(Error::InvalidParam(format!(
            "config n = {n} does not match family n = {}",
            family.n()
        )));
    }
    let m = cfg.sample_size();
    let total = binomial(n, m);
    if total > BigInt::from(crate::selector::ENUMERATION_CAP) {
        return Err(Error::CapExceeded(format!(
            "C({n}, {m}) = {total} exceeds {}; use Monte Carlo",
            crate::selector::ENUMERATION_CAP
        )));
    }
    let eval = BadnessEvaluator::new(family, lambda)?;
    let mut hits = 0u64;
    let mut count = 0u64;
    for w in m_subsets(n, m) {
        count += 1;
        if eval.is_bad(w, cfg.c_level()) {
            hits += 1;
        }
    }
    Ok(rat(hits as i64, count as i64))
}

/// A Monte Carlo estimate with its binomial standard error.
#[derive(Clone, Debug, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_err: f64,
    pub hits: u64,
    pub trials: u64,
    pub partitions: u64,
}

/// Monte Carlo badness probability over `trials` samples on up to
/// `threads` worker threads. Identical (seed, trials) give identical
/// estimates for any thread count.
pub fn bad_prob_mc(
    family: &MinimalFamily,
    lambda: &Lambda,
    cfg: &SelectorConfig,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParam("trials must be positive".into()));
    }
    if cfg.n() != family.n() {
        return Err(Error::InvalidParam(format!(
            "config n = {} does not match family n = {}",
            cfg.n(),
            family.n()
        )));
    }
    let eval = BadnessEvaluator::new(family, lambda)?;
    let n = cfg.n();
    let m = cfg.sample_size();
    let c = cfg.c_level();

    let partitions = MC_PARTITIONS.min(trials);
    let base = trials / partitions;
    let extra = trials % partitions;
    let trials_of = |k: u64| base + u64::from(k < extra);

    let run_partition = |k: u64| -> u64 {
        let mut rng = ChaCha12Rng::seed_from_u64(mix_seed(seed, k));
        let mut hits = 0u64;
        for _ in 0..trials_of(k) {
            let w = sample_m_subset(n, m, &mut rng);
            if eval.is_bad(w, c) {
                hits += 1;
            }
        }
        hits
    };

    let workers = threads.max(1).min(partitions as usize);
    let mut per_partition = vec![0u64; partitions as usize];
    if workers <= 1 {
        for (k, slot) in per_partition.iter_mut().enumerate() {
            *slot = run_partition(k as u64);
        }
    } else {
        let next = std::sync::atomic::AtomicU64::new(0);
        let results = std::sync::Mutex::new(vec![0u64; partitions as usize]);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if k >= partitions {
                        break;
                    }
                    let hits = run_partition(k);
                    results.lock().unwrap()[k as usize] = hits;
                });
            }
        });
        per_partition = results.into_inner().unwrap();
    }

    // reduce in partition order (associativity of + makes this moot for
    // integer hits, but the order is fixed on principle)
    let hits: u64 = per_partition.iter().sum();
    let estimate = hits as f64 / trials as f64;
    let std_err = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(McEstimate {
        estimate,
        std_err,
        hits,
        trials,
        partitions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn fam(text: &str) -> MinimalFamily {
        MinimalFamily::parse_fam(text).unwrap()
    }

    fn s(elems: &[usize]) -> Subset {
        Subset::from_elems(elems)
    }

    #[test]
    fn sample_edges() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        assert_eq!(sample_m_subset(5, 5, &mut rng), Subset::universe(5));
        assert_eq!(sample_m_subset(5, 0, &mut rng), Subset::EMPTY);
        let w = sample_m_subset(5, 3, &mut rng);
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn sample_is_seed_deterministic() {
        let mut a = ChaCha12Rng::seed_from_u64(42);
        let mut b = ChaCha12Rng::seed_from_u64(42);
        for _ in 0..100 {
            assert_eq!(sample_m_subset(10, 4, &mut a), sample_m_subset(10, 4, &mut b));
        }
    }

    #[test]
    fn sample_frequencies_are_uniform() {
        // n = 4, m = 2: each of the 6 pairs should appear ~10000 times in
        // 60000 draws; 4 sigma = 4 * sqrt(60000 * (1/6)(5/6)) ~ 365
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..60000 {
            *counts.entry(sample_m_subset(4, 2, &mut rng)).or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 6);
        for (w, c) in counts {
            assert!(
                (c as i64 - 10000).abs() <= 365,
                "pair {{{w}}} drawn {c} times"
            );
        }
    }

    #[test]
    fn singleton_family_is_never_bad() {
        // every nonempty W contains some {v} with mu = 1
        let f = MinimalFamily::singletons(5).unwrap();
        let l = Lambda::new(f.ground(), (1..=5).map(|v| (s(&[v]), int(1)))).unwrap();
        let cfg = SelectorConfig::new(1, 5, rat(1, 10)).unwrap().with_m(2).unwrap();
        assert_eq!(bad_prob_exact(&f, &l, &cfg).unwrap(), int(0));
    }

    #[test]
    fn m_zero_is_always_bad() {
        let f = fam("n=4\n1 2");
        let l = Lambda::new(f.ground(), [(s(&[1, 2]), int(1))]).unwrap();
        let cfg = SelectorConfig::new(1, 4, rat(1, 10)).unwrap().with_m(0).unwrap();
        assert_eq!(bad_prob_exact(&f, &l, &cfg).unwrap(), int(1));
    }

    #[test]
    fn mc_matches_itself_across_threads_and_runs() {
        let f = fam("n=6\n1 2\n3 4");
        let l = Lambda::new(f.ground(), [(s(&[1, 2]), int(1)), (s(&[3, 4]), int(1))]).unwrap();
        let cfg = SelectorConfig::new(2, 6, rat(1, 10)).unwrap().with_m(3).unwrap();
        let a = bad_prob_mc(&f, &l, &cfg, 5000, 11, 1).unwrap();
        let b = bad_prob_mc(&f, &l, &cfg, 5000, 11, 4).unwrap();
        let c = bad_prob_mc(&f, &l, &cfg, 5000, 11, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.partitions, 64);
    }

    #[test]
    fn mc_agrees_with_exact_within_four_sigma() {
        let f = fam("n=6\n1 2\n3 4");
        let l = Lambda::new(f.ground(), [(s(&[1, 2]), int(1)), (s(&[3, 4]), int(1))]).unwrap();
        let cfg = SelectorConfig::new(2, 6, rat(1, 10)).unwrap().with_m(3).unwrap();
        let exact = bad_prob_exact(&f, &l, &cfg).unwrap();
        let exact_f = exact.numer().to_string().parse::<f64>().unwrap()
            / exact.denom().to_string().parse::<f64>().unwrap();
        let mc = bad_prob_mc(&f, &l, &cfg, 20000, 3, 2).unwrap();
        assert!((mc.estimate - exact_f).abs() <= 4.0 * mc.std_err.max(1e-9));
    }

    #[test]
    fn exact_cap_guard() {
        let f = MinimalFamily::singletons(24).unwrap();
        let l = Lambda::new(f.ground(), (1..=24).map(|v| (s(&[v]), int(1)))).unwrap();
        let cfg = SelectorConfig::new(1, 24, rat(1, 2)).unwrap().with_m(12).unwrap();
        assert!(matches!(
            bad_prob_exact(&f, &l, &cfg),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn mix_seed_spreads() {
        let a = mix_seed(0, 0);
        let b = mix_seed(0, 1);
        let c = mix_seed(1, 0);
        assert_ne!(a, b);
        // seed+worker collide by construction: (0,1) and (1,0) mix equally
        assert_eq!(b, c);
        assert_ne!(mix_seed(7, 3), mix_seed(7, 4));
    }
}
