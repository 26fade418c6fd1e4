//! Exact probabilities for a uniformly random m-element subset W of a
//! ground set of n points.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::lambda::Lambda;
use crate::rat::{binomial, rat, Rat};
use crate::subset::m_subsets;

/// Cap on `C(n, m)` for the exact enumeration routines.
pub const ENUMERATION_CAP: u64 = 1_000_000;

/// `Pr(S in W)` for a fixed set of size `s`: the hypergeometric product
/// `prod over i < s of (m - i)/(n - i)`, zero when `s > m`.
pub fn subset_prob(s: usize, n: usize, m: usize) -> Result<Rat> {
    if s > n || m > n {
        return Err(Error::InvalidParam(format!(
            "need s <= n and m <= n, got s = {s}, m = {m}, n = {n}"
        )));
    }
    if s > m {
        return Ok(Rat::zero());
    }
    let mut acc = Rat::one();
    for i in 0..s {
        acc *= rat((m - i) as i64, (n - i) as i64);
    }
    Ok(acc)
}

/// `E[sum of lambda_S over S in W]`, exactly:
/// `sum over S of lambda_S * subset_prob(|S|, n, m)`.
pub fn expected_mass(lambda: &Lambda, n: usize, m: usize) -> Result<Rat> {
    if lambda.ground().n() > n {
        return Err(Error::InvalidParam(format!(
            "lambda lives on {} points but n = {n}",
            lambda.ground().n()
        )));
    }
    let mut acc = Rat::zero();
    for (s, w) in lambda.entries() {
        acc += w * subset_prob(s.len(), n, m)?;
    }
    Ok(acc)
}

/// `Pr(sum of lambda_S over S in W <= 1/(2r))` by exact enumeration of all
/// `C(n, m)` subsets. Errors out above [`ENUMERATION_CAP`]; use the Monte
/// Carlo path for larger instances.
pub fn o1_probability(lambda: &Lambda, n: usize, m: usize, r: usize) -> Result<Rat> {
    if r == 0 {
        return Err(Error::InvalidParam(
            "restriction r must be a positive integer".into(),
        ));
    }
    if lambda.ground().n() > n || m > n {
        return Err(Error::InvalidParam(format!(
            "need support ground <= n and m <= n, got n = {n}, m = {m}"
        )));
    }
    let total = binomial(n, m);
    if total > ENUMERATION_CAP.into() {
        return Err(Error::CapExceeded(format!(
            "C({n}, {m}) = {total} exceeds {ENUMERATION_CAP}; use Monte Carlo"
        )));
    }
    let threshold = rat(1, 2 * r as i64);
    let mut hits = 0u64;
    let mut count = 0u64;
    for w in m_subsets(n, m) {
        count += 1;
        if lambda.constraint_sum(w) <= threshold {
            hits += 1;
        }
    }
    debug_assert_eq!(num::bigint::BigInt::from(count), total);
    Ok(rat(hits as i64, count as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::GroundSet;
    use crate::rat::int;
    use crate::subset::Subset;

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn s(elems: &[usize]) -> Subset {
        Subset::from_elems(elems)
    }

    #[test]
    fn subset_prob_values() {
        assert_eq!(subset_prob(0, 4, 2).unwrap(), int(1));
        assert_eq!(subset_prob(1, 4, 2).unwrap(), rat(1, 2));
        assert_eq!(subset_prob(2, 4, 2).unwrap(), rat(1, 6));
        assert_eq!(subset_prob(3, 4, 2).unwrap(), int(0));
        assert_eq!(subset_prob(4, 4, 4).unwrap(), int(1));
        assert!(subset_prob(5, 4, 2).is_err());
    }

    #[test]
    fn subset_prob_matches_counting() {
        // Pr(S in W) = C(n-s, m-s)/C(n, m)
        for n in 1..=8usize {
            for m in 0..=n {
                for sz in 0..=m {
                    let direct = Rat::new(binomial(n - sz, m - sz), binomial(n, m));
                    assert_eq!(subset_prob(sz, n, m).unwrap(), direct);
                }
            }
        }
    }

    #[test]
    fn expected_mass_values() {
        let zero = Lambda::zero(g(4));
        assert_eq!(expected_mass(&zero, 4, 2).unwrap(), int(0));

        let l = Lambda::new(g(4), [(s(&[1]), int(1))]).unwrap();
        assert_eq!(expected_mass(&l, 4, 2).unwrap(), rat(1, 2));

        let l = Lambda::new(g(4), [(s(&[1, 2]), int(3))]).unwrap();
        assert_eq!(expected_mass(&l, 4, 2).unwrap(), rat(1, 2));
    }

    #[test]
    fn o1_probability_values() {
        let zero = Lambda::zero(g(4));
        assert_eq!(o1_probability(&zero, 4, 2, 1).unwrap(), int(1));

        // mass <= 1/2 iff 1 not in W: 3 of 6 pairs
        let l = Lambda::new(g(4), [(s(&[1]), int(1))]).unwrap();
        assert_eq!(o1_probability(&l, 4, 2, 1).unwrap(), rat(1, 2));

        // only W = {1,2} has mass 1 > 1/2
        let l = Lambda::new(g(4), [(s(&[1, 2]), int(1))]).unwrap();
        assert_eq!(o1_probability(&l, 4, 2, 1).unwrap(), rat(5, 6));
    }

    #[test]
    fn o1_rejects_oversize_enumerations() {
        let l = Lambda::zero(g(24));
        assert!(matches!(
            o1_probability(&l, 24, 12, 1),
            Err(Error::CapExceeded(_))
        ));
        assert!(o1_probability(&l, 24, 2, 0).is_err());
    }
}
