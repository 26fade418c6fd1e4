//! Badness of a subset: the supremum over ALL members I of the family of
//! `mu_I(X on I)`, compared strictly against a level c.
//!
//! The supremum really is taken over every member (there is no reduction
//! to minimal elements: mu is not monotone in I), but `mu_I(X on I)`
//! depends on I only through the profile {S in supp lambda : S in I}, so
//! members are enumerated once and collapsed to their distinct profiles.
//! Numerators and normalizers are held as big integers over the common
//! denominator of lambda, which cancels in every comparison.

use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::family::MinimalFamily;
use crate::lambda::Lambda;
use crate::rat::Rat;
use crate::subset::Subset;

/// Outcome of a single badness query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Badness {
    /// `sup over members I of mu_I(X on I)`; 0 by convention when the
    /// family is empty (see `empty_family`).
    pub sup: Rat,
    /// Strict comparison `sup < c`; vacuously true for the empty family.
    pub is_bad: bool,
    pub empty_family: bool,
}

/// One-shot query; build a [`BadnessEvaluator`] to test many subsets.
pub fn badness(x: Subset, family: &MinimalFamily, lambda: &Lambda, c: &Rat) -> Result<Badness> {
    if !c.is_positive() {
        return Err(Error::InvalidParam(format!(
            "badness level must be positive, got {c}"
        )));
    }
    let eval = BadnessEvaluator::new(family, lambda)?;
    Ok(Badness {
        sup: eval.sup(x),
        is_bad: eval.is_bad(x, c),
        empty_family: eval.is_empty_family(),
    })
}

/// Scaled integer weights of one distinct member profile.
struct Profile {
    /// Support sets contained in the members realizing this profile, with
    /// their weights scaled to integers.
    terms: Vec<(Subset, BigInt)>,
    /// `nu` scaled by the common denominator.
    nu: BigInt,
}

pub struct BadnessEvaluator {
    profiles: Vec<Profile>,
    empty_family: bool,
}

impl BadnessEvaluator {
    /// Validates that lambda has no empty-set mass and is feasible for the
    /// family, then enumerates all `2^n` subsets once to collect the
    /// distinct member profiles.
    pub fn new(family: &MinimalFamily, lambda: &Lambda) -> Result<Self> {
        if !lambda.empty_set_weight().is_zero() {
            return Err(Error::Contract(format!(
                "badness needs lambda_empty = 0, got {}",
                lambda.empty_set_weight()
            )));
        }
        if family.is_empty_family() {
            return Ok(BadnessEvaluator {
                profiles: Vec::new(),
                empty_family: true,
            });
        }
        if !lambda.is_feasible_for(family) {
            return Err(Error::Contract(
                "lambda is infeasible for the family (some member has constraint sum < 1)".into(),
            ));
        }
        let supp: Vec<(Subset, &Rat)> = lambda.entries().collect();
        if supp.len() > 32 {
            return Err(Error::CapExceeded(format!(
                "lambda support of {} sets exceeds the profile cap of 32",
                supp.len()
            )));
        }
        let mut denom = BigInt::one();
        for (_, w) in &supp {
            denom = denom.lcm(w.denom());
        }
        let scaled: Vec<(Subset, BigInt)> = supp
            .iter()
            .map(|(s, w)| (*s, w.numer() * (&denom / w.denom())))
            .collect();

        let mut seen = std::collections::HashSet::new();
        let n = family.n();
        for mask in 0u32..1u32 << n {
            let member = Subset::from_mask(mask);
            if !family.contains(member) {
                continue;
            }
            let mut profile = 0u32;
            for (idx, (s, _)) in scaled.iter().enumerate() {
                if s.is_subset_of(member) {
                    profile |= 1 << idx;
                }
            }
            seen.insert(profile);
        }
        let profiles = seen
            .into_iter()
            .map(|bits| {
                let terms: Vec<(Subset, BigInt)> = scaled
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| bits & (1 << idx) != 0)
                    .map(|(_, t)| t.clone())
                    .collect();
                let nu = terms
                    .iter()
                    .map(|(s, w)| BigInt::from(s.len()) * w)
                    .sum();
                Profile { terms, nu }
            })
            .collect();
        Ok(BadnessEvaluator {
            profiles,
            empty_family: false,
        })
    }

    pub fn is_empty_family(&self) -> bool {
        self.empty_family
    }

    fn numerator(profile: &Profile, x: Subset) -> BigInt {
        profile
            .terms
            .iter()
            .map(|(s, w)| BigInt::from(s.intersect(x).len()) * w)
            .sum()
    }

    /// Exact supremum of `mu_I(X on I)` over members; 0 for the empty family.
    pub fn sup(&self, x: Subset) -> Rat {
        let mut best: Option<Rat> = None;
        for p in &self.profiles {
            let val = Rat::new(Self::numerator(p, x), p.nu.clone());
            if best.as_ref().is_none_or(|b| val > *b) {
                best = Some(val);
            }
        }
        best.unwrap_or_else(Rat::zero)
    }

    /// Strict test `sup < c` without forming the supremum.
    pub fn is_bad(&self, x: Subset, c: &Rat) -> bool {
        self.profiles
            .iter()
            .all(|p| Self::numerator(p, x) * c.denom() < c.numer() * &p.nu)
    }
}
