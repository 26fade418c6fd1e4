//! Expectation thresholds by exact bisection.
//!
//! `q(F)` is the largest p at which the family admits an integral cover of
//! weight at most the budget (default 1/2); `q_f(F, r)` is the fractional
//! analogue with supports capped at size r. Both objectives are
//! nondecreasing and continuous in p, so bisection on [0, 1] with exact
//! rational endpoints brackets the threshold; we report the lower endpoint,
//! which carries a verifiable certificate.

mod lp;
mod set_cover;

pub use lp::{check_dual_certificate, lp_min_weight, DualCheck, LpOutcome, CANDIDATE_CAP};
pub(crate) use lp::lp_min_weight_no_empty;
pub use set_cover::{min_cover_weight, MinCover};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::family::{Cover, MinimalFamily};
use crate::lambda::Lambda;
use crate::rat::{pow, rat, to_frac_string, Rat};
use crate::subset::Subset;

/// The paper-default smallness budget, 1/2.
pub fn default_budget() -> Rat {
    rat(1, 2)
}

/// The default bisection tolerance, 2^-40.
pub fn default_tol() -> Rat {
    pow(&rat(1, 2), 40)
}

/// Bracketed threshold for the integral cover weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QResult {
    /// Lower bracket endpoint: the reported threshold, small by witness.
    pub p_hat: Rat,
    /// Upper bracket endpoint: not small (unless the bracket is a point).
    pub p_hi: Rat,
    /// Cover witnessing smallness at `p_hat`.
    pub cover: Cover,
}

/// Bracketed threshold for the fractional cover weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QfResult {
    pub p_hat: Rat,
    pub p_hi: Rat,
    /// Assignment witnessing weak smallness at `p_hat`.
    pub lambda: Lambda,
}

/// Bisection for `q(F)`: returns `p_hat` with
/// `min_cover_weight(F, p_hat) <= budget < min_cover_weight(F, p_hat + tol)`.
/// Degenerate cases: the empty family is small for every p (returns 1);
/// a family containing the empty set is small for none (returns 0).
pub fn q_threshold(family: &MinimalFamily, tol: &Rat, budget: &Rat) -> Result<QResult> {
    check_tol(tol)?;
    if family.is_empty_family() {
        return Ok(QResult {
            p_hat: Rat::one(),
            p_hi: Rat::one(),
            cover: Cover::empty(),
        });
    }
    if family.has_empty_minimal() {
        return Ok(QResult {
            p_hat: Rat::zero(),
            p_hi: Rat::zero(),
            cover: Cover::new([Subset::EMPTY]),
        });
    }
    // at p -> 0+ every cover of nonempty sets is eventually under budget
    let fallback = Cover::new(family.minimal().iter().copied());
    let (lo, hi, cert) = bisect(tol, fallback, |p| {
        let out = min_cover_weight(family, p)?;
        Ok((out.weight <= *budget, out.cover))
    })?;
    Ok(QResult {
        p_hat: lo,
        p_hi: hi,
        cover: cert,
    })
}

/// Bisection for `q_f(F, r)` against the fractional LP; same bracketing
/// contract and degenerate conventions as [`q_threshold`].
pub fn qf_threshold(
    family: &MinimalFamily,
    tol: &Rat,
    r: Option<usize>,
    budget: &Rat,
) -> Result<QfResult> {
    check_tol(tol)?;
    if r == Some(0) {
        return Err(Error::InvalidParam(
            "support restriction r must be a positive integer".into(),
        ));
    }
    if family.is_empty_family() {
        return Ok(QfResult {
            p_hat: Rat::one(),
            p_hi: Rat::one(),
            lambda: Lambda::zero(family.ground()),
        });
    }
    if family.has_empty_minimal() {
        return Ok(QfResult {
            p_hat: Rat::zero(),
            p_hi: Rat::zero(),
            lambda: Lambda::new(family.ground(), [(Subset::EMPTY, Rat::one())])?,
        });
    }
    let fallback = Lambda::new(
        family.ground(),
        family.minimal().iter().map(|&m| (m, Rat::one())),
    )?;
    let (lo, hi, cert) = bisect(tol, fallback, |p| {
        let out = lp_min_weight(family, p, r)?;
        Ok((out.value <= *budget, out.lambda))
    })?;
    Ok(QfResult {
        p_hat: lo,
        p_hi: hi,
        lambda: cert,
    })
}

fn check_tol(tol: &Rat) -> Result<()> {
    if !tol.is_positive() {
        return Err(Error::InvalidParam(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Bisects the monotone predicate `small(p)` on [0, 1] until the bracket is
/// narrower than `tol`, keeping the witness from the last successful probe.
/// `small(0)` is true by convention and never evaluated.
fn bisect<C>(
    tol: &Rat,
    fallback_cert: C,
    mut small: impl FnMut(&Rat) -> Result<(bool, C)>,
) -> Result<(Rat, Rat, C)> {
    let one = Rat::one();
    if let (true, cert) = small(&one)? {
        return Ok((one.clone(), one, cert));
    }
    let mut lo = Rat::zero();
    let mut hi = one;
    let mut cert = fallback_cert;
    while &hi - &lo >= *tol {
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        let (ok, c) = small(&mid)?;
        if ok {
            lo = mid;
            cert = c;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi, cert))
}

// ---- certificates ----

/// A p-smallness witness with its exact weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate {
    pub p: Rat,
    pub weight: Rat,
    pub cover: Cover,
}

impl CoverCertificate {
    pub fn new(p: Rat, cover: Cover) -> Self {
        let weight = cover.weight(&p);
        CoverCertificate { p, weight, cover }
    }

    /// Text form: `p=`, `weight=`, then one set per line in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "p={}\nweight={}\n",
            to_frac_string(&self.p),
            to_frac_string(&self.weight)
        );
        for s in self.cover.sets() {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

/// A weak-smallness witness with its exact weight and support restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaCertificate {
    pub p: Rat,
    pub r: Option<usize>,
    pub weight: Rat,
    pub lambda: Lambda,
}

impl LambdaCertificate {
    pub fn new(p: Rat, r: Option<usize>, lambda: Lambda) -> Self {
        let weight = lambda.weight(&p);
        LambdaCertificate {
            p,
            r,
            weight,
            lambda,
        }
    }

    /// Text form: `p=`, `weight=`, `r=`, then one `set : weight` pair per
    /// line in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "p={}\nweight={}\nr={}\n",
            to_frac_string(&self.p),
            to_frac_string(&self.weight),
            self.r.map_or("unbounded".to_string(), |r| r.to_string())
        );
        for (s, w) in self.lambda.entries() {
            out.push_str(&format!("{} : {}\n", to_frac_string(w), s));
        }
        out
    }
}

/// True iff the cover really covers the family and its recomputed weight
/// matches the stored one and stays within `budget` - all exact.
pub fn verify_cover(cert: &CoverCertificate, family: &MinimalFamily, budget: &Rat) -> bool {
    let weight = cert.cover.weight(&cert.p);
    weight == cert.weight && cert.cover.covers(family) && weight <= *budget
}

/// True iff the assignment satisfies the covering constraint at every
/// minimal element, respects the support restriction, and its recomputed
/// weight matches the stored one and stays within `budget` - all exact.
pub fn verify_lambda(cert: &LambdaCertificate, family: &MinimalFamily, budget: &Rat) -> bool {
    let weight = cert.lambda.weight(&cert.p);
    let sizes_ok = cert
        .r
        .map_or(true, |r| cert.lambda.max_support_size() <= r);
    weight == cert.weight
        && sizes_ok
        && cert.lambda.is_feasible_for(family)
        && weight <= *budget
}
