//! The normalized weight system on members of the family.
//!
//! For a member I and an assignment lambda with no mass on the empty set,
//! `nu_I = sum over S in I of |S| lambda_S` and
//! `mu_I(v) = nu_I^-1 * sum over S with v in S in I of lambda_S`.
//! Feasibility at I gives `nu_I >= 1`, and the weights always sum to 1.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::lambda::Lambda;
use crate::rat::{int, rat, Rat};
use crate::subset::Subset;

/// Rescales the assignment so the empty set carries no mass:
/// `lambda'_S = lambda_S / (1 - lambda_empty)` for nonempty S.
/// Fails when `lambda_empty >= 1`.
pub fn normalize_lambda(lambda: &Lambda) -> Result<Lambda> {
    let l0 = lambda.empty_set_weight();
    if l0.is_zero() {
        return Ok(lambda.clone());
    }
    if l0 >= Rat::one() {
        return Err(Error::Degenerate(format!(
            "lambda_empty = {l0} >= 1 cannot be normalized away"
        )));
    }
    let scale = Rat::one() - l0;
    Lambda::new(
        lambda.ground(),
        lambda
            .entries()
            .filter(|(s, _)| !s.is_empty())
            .map(|(s, w)| (s, w / &scale)),
    )
}

/// The weight system of one member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuWeights {
    member: Subset,
    nu: Rat,
    weights: BTreeMap<usize, Rat>,
}

impl MuWeights {
    pub fn member(&self) -> Subset {
        self.member
    }

    pub fn nu(&self) -> &Rat {
        &self.nu
    }

    /// `mu_I(v)`; zero for elements outside the member.
    pub fn weight_of(&self, elem: usize) -> Rat {
        self.weights.get(&elem).cloned().unwrap_or_else(Rat::zero)
    }

    /// `mu_I(X on I)`: total weight of the member elements hit by `x`.
    pub fn mass(&self, x: Subset) -> Rat {
        self.weights
            .iter()
            .filter(|(e, _)| x.contains_elem(**e))
            .map(|(_, w)| w)
            .sum()
    }
}

/// Builds `mu_I` for member `i`. Contract: `lambda_empty = 0` and lambda
/// must be feasible at `i` (constraint sum at least 1); the error names
/// whichever inequality failed.
pub fn mu_weights(i: Subset, lambda: &Lambda) -> Result<MuWeights> {
    let l0 = lambda.empty_set_weight();
    if !l0.is_zero() {
        return Err(Error::Contract(format!(
            "mu weights need lambda_empty = 0, got {l0}"
        )));
    }
    let mass: Rat = lambda.constraint_sum(i);
    if mass < Rat::one() {
        return Err(Error::Contract(format!(
            "sum of lambda_S over S in {{{i}}} is {mass} < 1 (infeasible member)"
        )));
    }
    let mut nu = Rat::zero();
    let mut numer: BTreeMap<usize, Rat> = BTreeMap::new();
    for (s, w) in lambda.entries() {
        if !s.is_subset_of(i) {
            continue;
        }
        nu += int(s.len() as i64) * w;
        for e in s.elements() {
            *numer.entry(e).or_insert_with(Rat::zero) += w;
        }
    }
    debug_assert!(nu >= Rat::one());
    let weights = numer
        .into_iter()
        .map(|(e, num)| (e, num / &nu))
        .collect();
    Ok(MuWeights {
        member: i,
        nu,
        weights,
    })
}

/// Both sides of the per-member inequality behind the badness claim:
/// `mu_I(Y on I) <= 1 - 1/r + sum of lambda_S over S in Y on I`.
/// Requires lambda supported on sets of size at most r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimSlack {
    pub lhs: Rat,
    pub rhs: Rat,
}

impl ClaimSlack {
    pub fn slack(&self) -> Rat {
        &self.rhs - &self.lhs
    }
}

pub fn claim_slack(y: Subset, i: Subset, lambda: &Lambda, r: usize) -> Result<ClaimSlack> {
    if r == 0 {
        return Err(Error::InvalidParam(
            "restriction r must be a positive integer".into(),
        ));
    }
    if lambda.max_support_size() > r {
        return Err(Error::InvalidParam(format!(
            "lambda has a support set of size {} > r = {}",
            lambda.max_support_size(),
            r
        )));
    }
    let mu = mu_weights(i, lambda)?;
    let lhs = mu.mass(y);
    let rhs = Rat::one() - rat(1, r as i64) + lambda.constraint_sum(y.intersect(i));
    Ok(ClaimSlack { lhs, rhs })
}
