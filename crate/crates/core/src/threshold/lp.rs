//! The weak-smallness linear program and its certificates.
//!
//! Primal (what callers ask for):
//!   minimize   sum over S of lambda_S * p^|S|
//!   subject to sum over S contained in I of lambda_S >= 1
//!              for every minimal element I, lambda >= 0,
//!   with lambda supported on candidate sets.
//!
//! Constraining only minimal elements is enough: the constraint left side
//! is monotone under exchanging I for a superset, so feasibility at the
//! minimal elements implies it at every member. Likewise, mass on a set
//! contained in no minimal element appears in no constraint and can be
//! dropped without increasing the objective, so the candidate support is
//! the nonempty subsets of minimal elements (size-capped by r), plus the
//! empty set, which by itself satisfies every constraint at cost 1 and
//! keeps the dual bounded.
//!
//! We solve the dual with the exact simplex:
//!   maximize   sum over minimal I of y_I
//!   subject to sum over minimal I containing S of y_I <= p^|S|
//!              for every candidate S, y >= 0,
//! whose slack basis is feasible (p^|S| > 0). The optimal primal lambda is
//! read off the objective row under the slack columns; exact arithmetic
//! makes strong duality an identity we assert.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::family::MinimalFamily;
use crate::lambda::Lambda;
use crate::rat::{pow, Rat};
use crate::simplex::{solve_max, StandardLp};
use crate::subset::Subset;

/// Cap on the number of candidate support sets.
pub const CANDIDATE_CAP: usize = 1 << 20;

/// Candidate support sets in canonical order: nonempty subsets of minimal
/// elements with size at most `r` (`None` = unbounded), plus the empty set
/// when `include_empty`.
pub(crate) fn candidate_sets(
    family: &MinimalFamily,
    r: Option<usize>,
    include_empty: bool,
) -> Result<Vec<Subset>> {
    let mut out: BTreeSet<Subset> = BTreeSet::new();
    if include_empty {
        out.insert(Subset::EMPTY);
    }
    for &m in family.minimal() {
        for sub in m.submasks() {
            if sub.is_empty() {
                continue;
            }
            if r.is_some_and(|r| sub.len() > r) {
                continue;
            }
            out.insert(sub);
            if out.len() > CANDIDATE_CAP {
                return Err(Error::CapExceeded(format!(
                    "more than {CANDIDATE_CAP} candidate support sets"
                )));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Exact optimum of the weak-smallness LP together with one optimal
/// assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome {
    pub value: Rat,
    pub lambda: Lambda,
}

/// Full LP: candidates include the empty set, so the program is always
/// feasible (`lambda_empty = 1`) and the optimum is at most 1.
pub fn lp_min_weight(family: &MinimalFamily, p: &Rat, r: Option<usize>) -> Result<LpOutcome> {
    if !p.is_positive() {
        return Err(Error::InvalidParam(format!("p must be positive, got {p}")));
    }
    lp_over(family, p, candidate_sets(family, r, true)?)
}

/// Variant without the empty-set candidate, used where a witness with
/// `lambda_empty = 0` is required. Needs `r >= 1` and no empty minimal
/// element, otherwise the program is infeasible or unbounded.
pub(crate) fn lp_min_weight_no_empty(
    family: &MinimalFamily,
    p: &Rat,
    r: Option<usize>,
) -> Result<LpOutcome> {
    if !p.is_positive() {
        return Err(Error::InvalidParam(format!("p must be positive, got {p}")));
    }
    if r == Some(0) {
        return Err(Error::InvalidParam(
            "support restriction r must be at least 1 without the empty set".into(),
        ));
    }
    if family.has_empty_minimal() {
        return Err(Error::InvalidParam(
            "family containing the empty set admits no empty-free fractional cover".into(),
        ));
    }
    lp_over(family, p, candidate_sets(family, r, false)?)
}

fn lp_over(family: &MinimalFamily, p: &Rat, candidates: Vec<Subset>) -> Result<LpOutcome> {
    if family.is_empty_family() {
        return Ok(LpOutcome {
            value: Rat::zero(),
            lambda: Lambda::zero(family.ground()),
        });
    }
    let minimal = family.minimal();
    let lp = StandardLp {
        objective: vec![Rat::one(); minimal.len()],
        rows: candidates
            .iter()
            .map(|s| {
                minimal
                    .iter()
                    .map(|m| {
                        if s.is_subset_of(*m) {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect(),
        rhs: candidates.iter().map(|s| pow(p, s.len())).collect(),
    };
    let sol = solve_max(&lp)?;
    let lambda = Lambda::new(
        family.ground(),
        candidates.iter().copied().zip(sol.duals.into_iter()),
    )?;
    // exact strong duality and primal feasibility are identities here
    debug_assert_eq!(lambda.weight(p), sol.value);
    debug_assert!(lambda.is_feasible_for(family));
    Ok(LpOutcome {
        value: sol.value,
        lambda,
    })
}

/// Result of a weak-duality certificate check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCheck {
    pub dual_value: Rat,
    pub feasible: bool,
}

/// Checks a dual vector `y` (indexed by minimal elements) against the
/// weak-smallness LP at `(p, r)`: feasible iff all entries sit on minimal
/// elements, are nonnegative, and every candidate constraint
/// `sum over minimal I containing S of y_I <= p^|S|` holds. When feasible,
/// `dual_value = sum of y` lower-bounds `lp_min_weight` by weak duality.
pub fn check_dual_certificate(
    family: &MinimalFamily,
    p: &Rat,
    r: Option<usize>,
    y: &BTreeMap<Subset, Rat>,
) -> Result<DualCheck> {
    if !p.is_positive() {
        return Err(Error::InvalidParam(format!("p must be positive, got {p}")));
    }
    let dual_value: Rat = y.values().sum();
    let on_minimal = y.keys().all(|s| family.minimal().contains(s));
    let nonnegative = y.values().all(|w| !w.is_negative());
    let mut feasible = on_minimal && nonnegative;
    if feasible {
        for s in candidate_sets(family, r, true)? {
            let load: Rat = y
                .iter()
                .filter(|(i, _)| s.is_subset_of(**i))
                .map(|(_, w)| w)
                .sum();
            if load > pow(p, s.len()) {
                feasible = false;
                break;
            }
        }
    }
    Ok(DualCheck {
        dual_value,
        feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn fam(text: &str) -> MinimalFamily {
        MinimalFamily::parse_fam(text).unwrap()
    }

    fn s(elems: &[usize]) -> Subset {
        Subset::from_elems(elems)
    }

    #[test]
    fn candidates_are_subsets_of_minimal() {
        let f = fam("n=4\n1 2\n3 4");
        let c = candidate_sets(&f, None, true).unwrap();
        assert_eq!(
            c,
            vec![
                Subset::EMPTY,
                s(&[1]),
                s(&[1, 2]),
                s(&[2]),
                s(&[3]),
                s(&[3, 4]),
                s(&[4]),
            ]
        );
        let c1 = candidate_sets(&f, Some(1), false).unwrap();
        assert_eq!(c1, vec![s(&[1]), s(&[2]), s(&[3]), s(&[4])]);
    }

    #[test]
    fn pair_family_unbounded_takes_the_pair() {
        let out = lp_min_weight(&fam("n=2\n1 2"), &rat(1, 2), None).unwrap();
        assert_eq!(out.value, rat(1, 4));
        assert_eq!(out.lambda.get(s(&[1, 2])), int(1));
        assert_eq!(out.lambda.support_len(), 1);
    }

    #[test]
    fn pair_family_r1_splits_on_singletons() {
        let out = lp_min_weight(&fam("n=2\n1 2"), &rat(1, 2), Some(1)).unwrap();
        assert_eq!(out.value, rat(1, 2));
        assert_eq!(out.lambda.constraint_sum(s(&[1, 2])), int(1));
        assert_eq!(out.lambda.max_support_size(), 1);
    }

    #[test]
    fn triangle_r2_prefers_pairs() {
        let out = lp_min_weight(&fam("n=3\n1 2\n2 3\n1 3"), &rat(3, 10), Some(2)).unwrap();
        assert_eq!(out.value, rat(27, 100));
        assert_eq!(out.lambda.get(s(&[1, 2])), int(1));
        assert_eq!(out.lambda.get(s(&[1, 3])), int(1));
        assert_eq!(out.lambda.get(s(&[2, 3])), int(1));
    }

    #[test]
    fn empty_family_value_zero() {
        let out = lp_min_weight(&fam("n=3"), &rat(1, 2), None).unwrap();
        assert_eq!(out.value, int(0));
        assert!(out.lambda.is_zero());
    }

    #[test]
    fn full_family_costs_one() {
        let full = MinimalFamily::new(
            crate::family::GroundSet::new(3).unwrap(),
            [Subset::EMPTY],
        )
        .unwrap();
        let out = lp_min_weight(&full, &rat(1, 2), None).unwrap();
        assert_eq!(out.value, int(1));
        assert_eq!(out.lambda.empty_set_weight(), int(1));
    }

    #[test]
    fn no_empty_variant_matches_when_empty_unused() {
        let f = fam("n=2\n1 2");
        let a = lp_min_weight(&f, &rat(1, 2), None).unwrap();
        let b = lp_min_weight_no_empty(&f, &rat(1, 2), None).unwrap();
        assert_eq!(a.value, b.value);
        assert!(lp_min_weight_no_empty(&f, &rat(1, 2), Some(0)).is_err());
    }

    #[test]
    fn dual_certificate_examples() {
        let f = fam("n=2\n1 2");
        let p = rat(1, 2);

        let zero = BTreeMap::new();
        let out = check_dual_certificate(&f, &p, None, &zero).unwrap();
        assert!(out.feasible);
        assert_eq!(out.dual_value, int(0));

        let mut good = BTreeMap::new();
        good.insert(s(&[1, 2]), rat(1, 4));
        let out = check_dual_certificate(&f, &p, None, &good).unwrap();
        assert!(out.feasible);
        assert_eq!(out.dual_value, rat(1, 4)); // matches the primal optimum

        let mut too_big = BTreeMap::new();
        too_big.insert(s(&[1, 2]), int(1));
        let out = check_dual_certificate(&f, &p, None, &too_big).unwrap();
        assert!(!out.feasible); // violates the pair constraint 1 > 1/4

        let mut off_support = BTreeMap::new();
        off_support.insert(s(&[1]), rat(1, 8));
        let out = check_dual_certificate(&f, &p, None, &off_support).unwrap();
        assert!(!out.feasible); // {1} is not a minimal element
    }
}
