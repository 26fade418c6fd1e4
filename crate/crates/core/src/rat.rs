//! Exact rational scalars.
//!
//! Every decision procedure in this crate runs on arbitrary-precision
//! rationals so that inequalities can be asserted as equalities, with no
//! solver tolerance anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The scalar used throughout: an arbitrary-precision rational in lowest
/// terms with positive denominator (both maintained by `num`).
pub type Rat = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `n` as an exact rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `base^exp` for a nonnegative integer exponent, exactly.
pub fn pow(base: &Rat, exp: usize) -> Rat {
    let mut acc = Rat::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Binomial coefficient C(n, k) as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Parses an exact rational from `a/b`, an integer `a`, or a finite decimal
/// like `0.125`. Whitespace is not consumed.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = |msg: &str| Error::InvalidParam(format!("cannot parse rational {text:?}: {msg}"));
    if let Some((n, d)) = text.split_once('/') {
        let num: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
        let den: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rat::new(num, den));
    }
    if let Some((i, f)) = text.split_once('.') {
        let sign = if i.starts_with('-') { -1 } else { 1 };
        let int_part: BigInt = if i.is_empty() || i == "-" {
            BigInt::zero()
        } else {
            i.parse().map_err(|_| bad("bad integer part"))?
        };
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("bad fractional part"));
        }
        let frac: BigInt = f.parse().map_err(|_| bad("bad fractional part"))?;
        let scale = num::pow(BigInt::from(10), f.len());
        let abs = Rat::from_integer(int_part.abs()) + Rat::new(frac, scale);
        return Ok(if sign < 0 { -abs } else { abs });
    }
    let num: BigInt = text.parse().map_err(|_| bad("not an integer"))?;
    Ok(Rat::from_integer(num))
}

/// Formats `r` as `num/den` (always with the slash), the exact on-disk form.
pub fn to_frac_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Formats `r` with 12 significant decimal digits, round-half-up.
/// Exact integers print without a decimal point.
pub fn dec12(r: &Rat) -> String {
    const SIG: i64 = 12;
    if r.is_zero() {
        return "0".to_string();
    }
    if r.is_integer() {
        return r.numer().to_string();
    }
    let neg = r.is_negative();
    let abs = r.abs();
    // d = number of digits left of the point: 10^(d-1) <= abs < 10^d.
    let ten = BigInt::from(10);
    let mut d: i64 = 0;
    while abs >= Rat::from_integer(num::pow(ten.clone(), d.max(0) as usize)) {
        d += 1;
    }
    while d > 0 && abs < Rat::from_integer(num::pow(ten.clone(), (d - 1) as usize)) {
        d -= 1;
    }
    if d == 0 {
        // abs < 1: find first nonzero digit position.
        let mut k: i64 = 0;
        let mut scaled = abs.clone();
        while scaled < Rat::one() {
            scaled *= Rat::from_integer(ten.clone());
            k += 1;
        }
        d = 1 - k;
    }
    // digits = round(abs * 10^(SIG - d)), SIG digits (maybe SIG+1 after carry).
    let shift = SIG - d;
    let scaled = if shift >= 0 {
        abs * Rat::from_integer(num::pow(ten.clone(), shift as usize))
    } else {
        abs / Rat::from_integer(num::pow(ten.clone(), (-shift) as usize))
    };
    let (q, rem) = (
        scaled.numer() / scaled.denom(),
        scaled.numer() % scaled.denom(),
    );
    let mut digits = if &rem * 2 >= *scaled.denom() { q + 1 } else { q };
    let mut d = d;
    if digits == num::pow(ten.clone(), SIG as usize) {
        digits = num::pow(ten, (SIG - 1) as usize);
        d += 1;
    }
    let ds = digits.to_string();
    debug_assert_eq!(ds.len() as i64, SIG);
    let body = if d >= SIG {
        format!("{}{}", ds, "0".repeat((d - SIG) as usize))
    } else if d > 0 {
        format!("{}.{}", &ds[..d as usize], &ds[d as usize..])
    } else {
        format!("0.{}{}", "0".repeat((-d) as usize), ds)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_small() {
        assert_eq!(pow(&rat(2, 5), 2), rat(4, 25));
        assert_eq!(pow(&rat(1, 2), 0), int(1));
        assert_eq!(pow(&rat(3, 1), 5), int(243));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(24, 12), BigInt::from(2704156u64));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(7, 0), BigInt::from(1));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(parse_rat("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rat("2.5").unwrap(), rat(5, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn dec12_formats() {
        assert_eq!(dec12(&int(0)), "0");
        assert_eq!(dec12(&int(1)), "1");
        assert_eq!(dec12(&rat(1, 2)), "0.500000000000");
        assert_eq!(dec12(&rat(1, 6)), "0.166666666667");
        assert_eq!(dec12(&rat(1, 16)), "0.0625000000000");
        assert_eq!(dec12(&rat(2, 3)), "0.666666666667");
        assert_eq!(dec12(&rat(-1, 3)), "-0.333333333333");
        assert_eq!(dec12(&rat(1234567890123i64, 1)), "1234567890123");
        // 2^-40, first significant digit far below the point
        let tiny = pow(&rat(1, 2), 40);
        assert_eq!(dec12(&tiny), "0.000000000000909494701773");
        // carry across the leading digit: 0.99999999999996 -> 1.00000000000
        let almost = rat(99999999999996i64, 100000000000000i64);
        assert_eq!(dec12(&almost), "1.00000000000");
    }
}
