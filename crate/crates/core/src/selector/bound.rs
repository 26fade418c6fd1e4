//! The selector-process tail bound on the badness probability:
//! `2 * sum for t = 1..n of (C n p / m)^t`, evaluated exactly.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{int, Rat};
use crate::selector::SelectorConfig;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BmmBound {
    /// The exact bound value.
    pub value: Rat,
    /// The per-term ratio `x = C n p / m`.
    pub ratio: Rat,
    /// A bound of 1 or more says nothing about a probability.
    pub vacuous: bool,
}

/// Evaluates the bound with the config's constants and its exact m (the
/// default `m = 5Cpn` makes the ratio exactly 1/5, so the bound stays
/// below 1/2 for every n; integer overrides may be vacuous).
pub fn bmm_bound(cfg: &SelectorConfig) -> Result<BmmBound> {
    if !cfg.m().is_positive() {
        return Err(Error::InvalidParam(format!(
            "tail bound needs m > 0, got {}",
            cfg.m()
        )));
    }
    let x = cfg.c_const() * int(cfg.n() as i64) * cfg.p() / cfg.m();
    // Horner: sum for t=1..n of x^t = x (1 + x (1 + ...))
    let mut acc = Rat::zero();
    for _ in 0..cfg.n() {
        acc = &x * (Rat::one() + acc);
    }
    let value = int(2) * acc;
    let vacuous = value >= Rat::one();
    Ok(BmmBound {
        value,
        ratio: x,
        vacuous,
    })
}
