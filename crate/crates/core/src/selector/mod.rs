//! The randomized-cover verification lab: normalized weight systems on
//! family members, badness of random m-subsets, exact inclusion
//! probabilities, and the selector-process tail bound, all at desk scale.

mod audit;
mod badness;
mod bound;
mod mu;
mod prob;
mod sampling;

pub use audit::{theorem_audit, AuditOptions, AuditReport, AuditRow, RowKind, RowStatus};
pub use badness::{badness, Badness, BadnessEvaluator};
pub use bound::{bmm_bound, BmmBound};
pub use mu::{claim_slack, mu_weights, normalize_lambda, ClaimSlack, MuWeights};
pub use prob::{expected_mass, o1_probability, subset_prob, ENUMERATION_CAP};
pub use sampling::{
    bad_prob_exact, bad_prob_mc, mix_seed, sample_m_subset, McEstimate, MC_PARTITIONS,
};

use num::{One, Signed};

use crate::error::{Error, Result};
use crate::rat::{int, rat, Rat};

/// Rational upper approximation of Euler's number: the 15-digit truncation
/// rounded up, so that the derived constant C = (2er)^2 errs on the large
/// side and every bound it enters keeps its direction.
pub fn e_upper() -> Rat {
    Rat::new(2718281828459046i64.into(), 1000000000000000i64.into())
}

/// Parameters of the random m-subset experiment.
///
/// Defaults follow the source constants: `C = (2er)^2`, `J = 10rC`,
/// `m = Jpn/(2r) = 5Cpn` held as an exact rational, and badness level
/// `c = 1 - 1/(2r)`. The exact `m` feeds the tail-bound formula; actual
/// sampling uses [`SelectorConfig::sample_size`], the ceiling capped at n
/// (a larger sample only lowers the badness probability, and the cap is
/// reported).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelectorConfig {
    r: usize,
    n: usize,
    p: Rat,
    c_const: Rat,
    j_const: Rat,
    m: Rat,
    m_overridden: bool,
    c_level: Rat,
}

impl SelectorConfig {
    pub fn new(r: usize, n: usize, p: Rat) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParam(
                "restriction r must be a positive integer".into(),
            ));
        }
        if !p.is_positive() {
            return Err(Error::InvalidParam(format!("p must be positive, got {p}")));
        }
        let r_rat = int(r as i64);
        let c_const = num::pow(int(2) * e_upper() * &r_rat, 2);
        let j_const = int(10) * &r_rat * &c_const;
        let m = int(5) * &c_const * &p * int(n as i64);
        let c_level = Rat::one() - rat(1, 2) / &r_rat;
        Ok(SelectorConfig {
            r,
            n,
            p,
            c_const,
            j_const,
            m,
            m_overridden: false,
            c_level,
        })
    }

    /// Overrides C (and recomputes J and, unless overridden, m).
    pub fn with_c_const(mut self, c: Rat) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidParam("C must be positive".into()));
        }
        self.c_const = c;
        self.j_const = int(10) * int(self.r as i64) * &self.c_const;
        if !self.m_overridden {
            self.m = int(5) * &self.c_const * &self.p * int(self.n as i64);
        }
        Ok(self)
    }

    /// Overrides the sample size with an explicit integer, 0 <= m <= n.
    pub fn with_m(mut self, m: usize) -> Result<Self> {
        if m > self.n {
            return Err(Error::InvalidParam(format!(
                "sample size m = {m} exceeds n = {}",
                self.n
            )));
        }
        self.m = int(m as i64);
        self.m_overridden = true;
        Ok(self)
    }

    /// Overrides the badness level c.
    pub fn with_c_level(mut self, c: Rat) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::InvalidParam("badness level must be positive".into()));
        }
        self.c_level = c;
        Ok(self)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &Rat {
        &self.p
    }

    pub fn c_const(&self) -> &Rat {
        &self.c_const
    }

    pub fn j_const(&self) -> &Rat {
        &self.j_const
    }

    /// The exact (possibly fractional) m entering the tail bound.
    pub fn m(&self) -> &Rat {
        &self.m
    }

    pub fn c_level(&self) -> &Rat {
        &self.c_level
    }

    /// Integer sample size: ceiling of m, capped at n.
    pub fn sample_size(&self) -> usize {
        if self.m.is_negative() {
            return 0;
        }
        let ceil = self.m.ceil();
        let ceil = ceil.to_integer();
        if ceil > self.n.into() {
            self.n
        } else {
            // fits in usize: bounded by n <= 24
            usize::try_from(ceil).unwrap_or(self.n)
        }
    }

    /// True when the exact m exceeds n, i.e. the cap in
    /// [`SelectorConfig::sample_size`] was applied.
    pub fn sample_size_capped(&self) -> bool {
        self.m > int(self.n as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_tie_the_constants_together() {
        let cfg = SelectorConfig::new(2, 10, rat(1, 100)).unwrap();
        // C = (4e)^2, J = 20C, m = 5*C*p*n = J*p*n/(2r)
        assert_eq!(*cfg.c_const(), num::pow(int(4) * e_upper(), 2));
        assert_eq!(*cfg.j_const(), int(20) * cfg.c_const());
        assert_eq!(
            *cfg.m(),
            cfg.j_const() * cfg.p() * int(10) / (int(2) * int(2))
        );
        assert_eq!(*cfg.c_level(), rat(3, 4));
    }

    #[test]
    fn sample_size_rounds_up_and_caps() {
        let cfg = SelectorConfig::new(1, 10, rat(1, 1000)).unwrap();
        // m = 5 * (2e)^2 * 10 / 1000 ~ 1.478 -> sample 2
        assert_eq!(cfg.sample_size(), 2);
        assert!(!cfg.sample_size_capped());

        let cfg = SelectorConfig::new(1, 10, rat(1, 2)).unwrap();
        // m ~ 147.8 > n -> capped
        assert_eq!(cfg.sample_size(), 10);
        assert!(cfg.sample_size_capped());

        let cfg = cfg.with_m(3).unwrap();
        assert_eq!(cfg.sample_size(), 3);
        assert!(SelectorConfig::new(1, 5, rat(1, 2))
            .unwrap()
            .with_m(9)
            .is_err());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(SelectorConfig::new(0, 5, rat(1, 2)).is_err());
        assert!(SelectorConfig::new(1, 5, int(0)).is_err());
        assert!(SelectorConfig::new(1, 5, rat(1, 2))
            .unwrap()
            .with_c_level(int(0))
            .is_err());
    }
}
