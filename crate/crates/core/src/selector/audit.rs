//! End-to-end slack audit of the randomized-cover argument on a concrete
//! instance.
//!
//! The audit never asserts the final contradiction (the constants are far
//! too conservative for desk-scale instances to satisfy every hypothesis
//! at once); it executes each step, records both sides and the slack, and
//! classifies every row:
//!
//! - `Contract` rows are unconditional theorems: a failure means an
//!   implementation bug.
//! - `Hypothesis` rows record whether an assumption of the argument holds
//!   on this instance (e.g. "not p-small", "weakly small at Jp").
//! - `Info` rows are measurements with no pass/fail meaning of their own.
//!
//! Row slack is always oriented so that passing means `slack >= 0`
//! (strictly positive where the check is strict).

use num::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::family::MinimalFamily;
use crate::lambda::Lambda;
use crate::rat::{int, pow, rat, to_frac_string, Rat};
use crate::selector::{
    bad_prob_exact, bad_prob_mc, bmm_bound, claim_slack, expected_mass, mu_weights,
    normalize_lambda, o1_probability, SelectorConfig, MC_PARTITIONS,
};
use crate::subset::Subset;
use crate::threshold::{lp_min_weight, lp_min_weight_no_empty, min_cover_weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Contract,
    Hypothesis,
    Info,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub name: String,
    pub lhs: Option<Rat>,
    pub rhs: Option<Rat>,
    pub slack: Option<Rat>,
    pub status: RowStatus,
    pub kind: RowKind,
}

impl AuditRow {
    fn skipped(name: &str, kind: RowKind) -> Self {
        AuditRow {
            name: name.to_string(),
            lhs: None,
            rhs: None,
            slack: None,
            status: RowStatus::Skipped,
            kind,
        }
    }

    /// `lhs <= rhs` (`strict`: `<`); slack = rhs - lhs.
    fn le(name: &str, kind: RowKind, lhs: Rat, rhs: Rat, strict: bool) -> Self {
        let slack = &rhs - &lhs;
        let ok = if strict {
            slack.is_positive()
        } else {
            !slack.is_negative()
        };
        AuditRow {
            name: name.to_string(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            slack: Some(slack),
            status: if ok { RowStatus::Pass } else { RowStatus::Fail },
            kind,
        }
    }

    /// `lhs >= rhs` (`strict`: `>`); slack = lhs - rhs.
    fn ge(name: &str, kind: RowKind, lhs: Rat, rhs: Rat, strict: bool) -> Self {
        let slack = &lhs - &rhs;
        let ok = if strict {
            slack.is_positive()
        } else {
            !slack.is_negative()
        };
        AuditRow {
            name: name.to_string(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            slack: Some(slack),
            status: if ok { RowStatus::Pass } else { RowStatus::Fail },
            kind,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AuditOptions {
    pub seed: u64,
    /// Sample count for randomized sweeps (claim pairs beyond the
    /// exhaustive range, Monte Carlo badness fallback).
    pub trials: u64,
    pub budget: Rat,
    /// Explicit sample size; default is the ceiling of the exact m,
    /// capped at n.
    pub m_override: Option<usize>,
    pub threads: usize,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            seed: 0,
            trials: 2000,
            budget: rat(1, 2),
            m_override: None,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    /// Instance description serialized as `# key = value` preamble lines.
    pub preamble: Vec<(String, String)>,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    /// True when no contract row failed (hypothesis and info rows do not
    /// count; skipped rows do not count).
    pub fn contracts_ok(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.kind != RowKind::Contract || r.status != RowStatus::Fail)
    }

    /// CSV with `# key = value` preamble, then
    /// `check_name,lhs,rhs,slack,pass` rows; rationals as `num/den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.preamble {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        out.push_str("check_name,lhs,rhs,slack,pass\n");
        for r in &self.rows {
            let cell = |x: &Option<Rat>| x.as_ref().map(to_frac_string).unwrap_or_default();
            let pass = match r.status {
                RowStatus::Pass => "true",
                RowStatus::Fail => "false",
                RowStatus::Skipped => "skipped",
            };
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.name,
                cell(&r.lhs),
                cell(&r.rhs),
                cell(&r.slack),
                pass
            ));
        }
        out
    }
}

const ROW_NOT_P_SMALL: &str = "smallness.not-p-small";
const ROW_WEAKLY_SMALL: &str = "smallness.weakly-small-at-jp";
const ROW_MU_SUM: &str = "mu.weights-sum-to-one";
const ROW_MU_NU: &str = "mu.normalizer-at-least-one";
const ROW_CLAIM: &str = "claim.min-slack";
const ROW_MASS: &str = "obs22.mass-le-power-bound";
const ROW_MID: &str = "obs22.formula-m-step";
const ROW_CHAIN_END: &str = "obs22.chain-end-le-quarter";
const ROW_MARKOV: &str = "obs22.markov-bound";
const ROW_O1_HALF: &str = "obs22.mass-below-half-probability";
const ROW_BOUND_DEFAULT: &str = "bound.paper-default-below-half";
const ROW_BOUND_SAMPLE: &str = "bound.value-at-sample-m";
const ROW_BAD_EXACT: &str = "bound.badness-exact-le-bound";
const ROW_BAD_MC: &str = "bound.badness-mc-estimate-vs-bound";

/// Runs the whole pipeline on `(family, p, r)`:
/// 1. is the family p-small? (hypothesis, via the exact cover optimum)
/// 2. build an r-supported fractional witness at Jp and normalize it;
/// 3. check the weight-system identities, the claim inequality, the
///    expected-mass chain, the sample-size tail bound, and the badness
///    probability against the bound, each as an exact slack row.
pub fn theorem_audit(
    family: &MinimalFamily,
    p: &Rat,
    r: usize,
    opts: &AuditOptions,
) -> Result<AuditReport> {
    if r == 0 {
        return Err(Error::InvalidParam(
            "restriction r must be a positive integer".into(),
        ));
    }
    if !p.is_positive() {
        return Err(Error::InvalidParam(format!("p must be positive, got {p}")));
    }
    let n = family.n();
    let cfg = SelectorConfig::new(r, n, p.clone())?;
    let m_sample = match opts.m_override {
        Some(m) if m > n => {
            return Err(Error::InvalidParam(format!(
                "sample size m = {m} exceeds n = {n}"
            )))
        }
        Some(m) => m,
        None => cfg.sample_size(),
    };
    let jp = cfg.j_const() * p;

    let mut preamble = vec![
        ("family".to_string(), compact_family(family)),
        ("p".to_string(), to_frac_string(p)),
        ("r".to_string(), r.to_string()),
        ("budget".to_string(), to_frac_string(&opts.budget)),
        ("c-const".to_string(), to_frac_string(cfg.c_const())),
        ("j-const".to_string(), to_frac_string(cfg.j_const())),
        ("jp".to_string(), to_frac_string(&jp)),
        ("m-formula".to_string(), to_frac_string(cfg.m())),
        ("m-sample".to_string(), m_sample.to_string()),
        (
            "m-capped".to_string(),
            (opts.m_override.is_none() && cfg.sample_size_capped()).to_string(),
        ),
        ("c-level".to_string(), to_frac_string(cfg.c_level())),
        ("seed".to_string(), opts.seed.to_string()),
        ("trials".to_string(), opts.trials.to_string()),
        ("mc-partitions".to_string(), MC_PARTITIONS.to_string()),
    ];
    let mut rows = Vec::new();

    if family.is_empty_family() {
        preamble.push(("lambda-source".to_string(), "skipped-empty-family".to_string()));
        for (name, kind) in [
            (ROW_NOT_P_SMALL, RowKind::Hypothesis),
            (ROW_WEAKLY_SMALL, RowKind::Hypothesis),
            (ROW_MU_SUM, RowKind::Contract),
            (ROW_MU_NU, RowKind::Contract),
            (ROW_CLAIM, RowKind::Contract),
            (ROW_MASS, RowKind::Contract),
            (ROW_MID, RowKind::Contract),
            (ROW_CHAIN_END, RowKind::Hypothesis),
            (ROW_MARKOV, RowKind::Contract),
            (ROW_O1_HALF, RowKind::Hypothesis),
            (ROW_BOUND_DEFAULT, RowKind::Contract),
            (ROW_BOUND_SAMPLE, RowKind::Info),
            (ROW_BAD_EXACT, RowKind::Info),
        ] {
            rows.push(AuditRow::skipped(name, kind));
        }
        return Ok(AuditReport { preamble, rows });
    }

    // 1. hypothesis: the family is NOT p-small (strict: weight > budget)
    let cover_opt = min_cover_weight(family, p)?;
    let not_p_small = cover_opt.weight > opts.budget;
    rows.push(AuditRow::ge(
        ROW_NOT_P_SMALL,
        RowKind::Hypothesis,
        cover_opt.weight.clone(),
        opts.budget.clone(),
        true,
    ));

    // 2. the fractional witness at Jp with lambda_empty = 0. The full LP
    // optimum usually degenerates to unit mass on the empty set when
    // Jp >= 1, which cannot be normalized; fall back to the optimum over
    // nonempty supports, which exists whenever no minimal element is empty.
    let lambda = if family.has_empty_minimal() {
        preamble.push((
            "lambda-source".to_string(),
            "skipped-empty-minimal".to_string(),
        ));
        None
    } else {
        let full = lp_min_weight(family, &jp, Some(r))?;
        if full.lambda.empty_set_weight() < Rat::one() {
            let source = if full.lambda.empty_set_weight().is_zero() {
                "lp-at-jp"
            } else {
                "lp-at-jp-normalized"
            };
            preamble.push(("lambda-source".to_string(), source.to_string()));
            Some(normalize_lambda(&full.lambda)?)
        } else {
            let no_empty = lp_min_weight_no_empty(family, &jp, Some(r))?;
            preamble.push(("lambda-source".to_string(), "lp-at-jp-no-empty".to_string()));
            Some(no_empty.lambda)
        }
    };
    preamble.push((
        "lambda".to_string(),
        lambda.as_ref().map_or("-".to_string(), compact_lambda),
    ));

    let Some(lambda) = lambda else {
        for (name, kind) in [
            (ROW_WEAKLY_SMALL, RowKind::Hypothesis),
            (ROW_MU_SUM, RowKind::Contract),
            (ROW_MU_NU, RowKind::Contract),
            (ROW_CLAIM, RowKind::Contract),
            (ROW_MASS, RowKind::Contract),
            (ROW_MID, RowKind::Contract),
            (ROW_CHAIN_END, RowKind::Hypothesis),
            (ROW_MARKOV, RowKind::Contract),
            (ROW_O1_HALF, RowKind::Hypothesis),
        ] {
            rows.push(AuditRow::skipped(name, kind));
        }
        push_bound_rows(&mut rows, &cfg, m_sample, None, not_p_small);
        return Ok(AuditReport { preamble, rows });
    };

    // 3. hypothesis: weakly (Jp, r)-small via the witness we will use
    let weight_at_jp = lambda.weight(&jp);
    let weakly_small = weight_at_jp <= opts.budget;
    rows.push(AuditRow::le(
        ROW_WEAKLY_SMALL,
        RowKind::Hypothesis,
        weight_at_jp,
        opts.budget.clone(),
        false,
    ));

    // members the mu/claim sweeps run over
    let mut rng = ChaCha12Rng::seed_from_u64(opts.seed);
    let exhaustive_members = n <= 12;
    let members: Vec<Subset> = if exhaustive_members {
        family.members()
    } else {
        sample_members(family, &mut rng, opts.trials as usize)
    };

    // mu identities: sum of weights = 1 and nu >= 1 on every swept member
    let mut max_sum_dev = Rat::zero();
    let mut min_nu: Option<Rat> = None;
    for &i in &members {
        let mu = mu_weights(i, &lambda)?;
        let dev = (mu.mass(i) - Rat::one()).abs();
        if dev > max_sum_dev {
            max_sum_dev = dev;
        }
        if min_nu.as_ref().is_none_or(|b| mu.nu() < b) {
            min_nu = Some(mu.nu().clone());
        }
    }
    rows.push(AuditRow::le(
        ROW_MU_SUM,
        RowKind::Contract,
        max_sum_dev,
        Rat::zero(),
        false,
    ));
    rows.push(AuditRow::ge(
        ROW_MU_NU,
        RowKind::Contract,
        min_nu.unwrap_or_else(Rat::one),
        Rat::one(),
        false,
    ));

    // the claim inequality over (Y, member) pairs: exhaustive Y for n <= 8
    let mut worst: Option<(Rat, Rat)> = None; // (lhs, rhs) at minimal slack
    {
        let mut consider = |lhs: Rat, rhs: Rat| {
            let slack = &rhs - &lhs;
            let better = match &worst {
                None => true,
                Some((wl, wr)) => slack < wr - wl,
            };
            if better {
                worst = Some((lhs, rhs));
            }
        };
        if n <= 8 {
            for &i in &members {
                for y_mask in 0u32..1 << n {
                    let c = claim_slack(Subset::from_mask(y_mask), i, &lambda, r)?;
                    consider(c.lhs, c.rhs);
                }
            }
        } else {
            let universe_mask = family.ground().universe().mask();
            for _ in 0..opts.trials {
                let i = members[rng.gen_range(0..members.len())];
                let y = Subset::from_mask(rng.gen::<u32>() & universe_mask);
                let c = claim_slack(y, i, &lambda, r)?;
                consider(c.lhs, c.rhs);
            }
        }
    }
    match worst {
        Some((lhs, rhs)) => rows.push(AuditRow::le(ROW_CLAIM, RowKind::Contract, lhs, rhs, false)),
        None => rows.push(AuditRow::skipped(ROW_CLAIM, RowKind::Contract)),
    }

    // expected-mass chain
    let mass = expected_mass(&lambda, n, m_sample)?;
    let power_bound: Rat = lambda
        .entries()
        .map(|(s, w)| w * pow(&rat(m_sample as i64, n as i64), s.len()))
        .sum();
    rows.push(AuditRow::le(
        ROW_MASS,
        RowKind::Contract,
        mass.clone(),
        power_bound,
        false,
    ));

    let m_over_n = cfg.m() / int(n as i64); // = Jp/(2r) exactly
    let lhs_mid: Rat = lambda
        .entries()
        .map(|(s, w)| w * pow(&m_over_n, s.len()))
        .sum();
    let half_weight_jp = lambda.weight(&jp) / int(2 * r as i64);
    rows.push(AuditRow::le(
        ROW_MID,
        RowKind::Contract,
        lhs_mid,
        half_weight_jp.clone(),
        false,
    ));
    rows.push(AuditRow::le(
        ROW_CHAIN_END,
        if weakly_small {
            RowKind::Contract
        } else {
            RowKind::Hypothesis
        },
        half_weight_jp,
        rat(1, 4 * r as i64),
        false,
    ));

    // Markov bound and the mass-below-threshold probability
    match o1_probability(&lambda, n, m_sample, r) {
        Ok(o1) => {
            let markov_floor = Rat::one() - int(2 * r as i64) * &mass;
            rows.push(AuditRow::ge(
                ROW_MARKOV,
                RowKind::Contract,
                o1.clone(),
                markov_floor,
                false,
            ));
            rows.push(AuditRow::ge(
                ROW_O1_HALF,
                RowKind::Hypothesis,
                o1,
                rat(1, 2),
                false,
            ));
        }
        Err(Error::CapExceeded(_)) => {
            rows.push(AuditRow::skipped(ROW_MARKOV, RowKind::Contract));
            rows.push(AuditRow::skipped(ROW_O1_HALF, RowKind::Hypothesis));
        }
        Err(e) => return Err(e),
    }

    push_bound_rows(&mut rows, &cfg, m_sample, Some((family, &lambda, opts)), not_p_small);
    Ok(AuditReport { preamble, rows })
}

/// Tail-bound rows: the paper-default envelope (always a theorem), the
/// value at the integer sample size, and the badness probability compared
/// against it.
fn push_bound_rows(
    rows: &mut Vec<AuditRow>,
    cfg: &SelectorConfig,
    m_sample: usize,
    badness_input: Option<(&MinimalFamily, &Lambda, &AuditOptions)>,
    not_p_small: bool,
) {
    match bmm_bound(cfg) {
        Ok(b) => rows.push(AuditRow::le(
            ROW_BOUND_DEFAULT,
            RowKind::Contract,
            b.value,
            rat(1, 2),
            true,
        )),
        Err(_) => rows.push(AuditRow::skipped(ROW_BOUND_DEFAULT, RowKind::Contract)),
    }

    let at_sample = if m_sample == 0 {
        None
    } else {
        cfg.clone()
            .with_m(m_sample)
            .and_then(|c| bmm_bound(&c))
            .ok()
    };
    match &at_sample {
        Some(b) => rows.push(AuditRow::le(
            ROW_BOUND_SAMPLE,
            RowKind::Info,
            b.value.clone(),
            Rat::one(),
            true,
        )),
        None => rows.push(AuditRow::skipped(ROW_BOUND_SAMPLE, RowKind::Info)),
    }

    let Some((family, lambda, opts)) = badness_input else {
        rows.push(AuditRow::skipped(ROW_BAD_EXACT, RowKind::Info));
        return;
    };
    let Some(bound) = at_sample else {
        rows.push(AuditRow::skipped(ROW_BAD_EXACT, RowKind::Info));
        return;
    };
    let sample_cfg = cfg.clone().with_m(m_sample).expect("validated above");
    match bad_prob_exact(family, lambda, &sample_cfg) {
        Ok(prob) => {
            // the cited tail bound is only claimed when F is not p-small
            let kind = if not_p_small {
                RowKind::Contract
            } else {
                RowKind::Info
            };
            rows.push(AuditRow::le(ROW_BAD_EXACT, kind, prob, bound.value, false));
        }
        Err(Error::CapExceeded(_)) => {
            match bad_prob_mc(family, lambda, &sample_cfg, opts.trials, opts.seed, opts.threads) {
                Ok(mc) => {
                    let est = rat(mc.hits as i64, mc.trials as i64);
                    rows.push(AuditRow::le(
                        ROW_BAD_MC,
                        RowKind::Info,
                        est,
                        bound.value,
                        false,
                    ));
                }
                Err(_) => rows.push(AuditRow::skipped(ROW_BAD_MC, RowKind::Info)),
            }
        }
        Err(_) => rows.push(AuditRow::skipped(ROW_BAD_EXACT, RowKind::Info)),
    }
}

/// Random members: a uniform minimal element unioned with a uniform subset
/// of the rest of the ground set. Not the uniform member distribution,
/// but every draw is a member and the sweeps only need coverage.
fn sample_members(family: &MinimalFamily, rng: &mut ChaCha12Rng, count: usize) -> Vec<Subset> {
    let universe = family.ground().universe();
    let minimal = family.minimal();
    (0..count.max(1))
        .map(|_| {
            let base = minimal[rng.gen_range(0..minimal.len())];
            let extra = Subset::from_mask(rng.gen::<u32>()).intersect(universe);
            base.union(extra)
        })
        .collect()
}

fn compact_family(family: &MinimalFamily) -> String {
    let mut out = format!("n={}", family.n());
    for s in family.minimal() {
        out.push_str("; ");
        out.push_str(&s.to_string());
    }
    out
}

fn compact_lambda(lambda: &Lambda) -> String {
    let mut out = format!("n={}", lambda.ground().n());
    for (s, w) in lambda.entries() {
        out.push_str(&format!("; {}:{}", to_frac_string(w), s));
    }
    out
}
