//! Arbitrary-precision rationals plus the small combinatorial helpers
//! (factorials, binomials, falling factorials) everything else leans on.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The scalar type used everywhere in this crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`.  Panics on a zero denominator — this is a
/// programmer-facing constructor, not a parser.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "rat: zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `"p/q"` or `"p"` (optional sign, arbitrary size).  Rejects zero
/// denominators and anything else `BigRational`'s parser rejects, but maps
/// the failure to our error type with the offending input attached.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((_, den)) = t.split_once('/') {
        // `BigRational::from_str` panics on a zero denominator instead of
        // returning Err, so screen it out first.
        match den.trim().parse::<BigInt>() {
            Ok(d) if d.is_zero() => return Err(Error::BadRational(s.to_string())),
            Ok(_) => {}
            Err(_) => return Err(Error::BadRational(s.to_string())),
        }
    }
    t.parse::<Rational>()
        .map_err(|_| Error::BadRational(s.to_string()))
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rational::new(num, den)
}

/// Falling factorial `(x)_n = x (x-1) ... (x-n+1)` for rational `x`;
/// `(x)_0 = 1`.
pub fn falling(x: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..n {
        acc *= x - int(i as i64);
    }
    acc
}

/// Integer power with negative exponents allowed; `base` must be nonzero
/// when `exp < 0`.
pub fn pow_i(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let e = exp.unsigned_abs() as u32;
    let p = Rational::new(base.numer().pow(e), base.denom().pow(e));
    if exp < 0 {
        assert!(!p.is_zero(), "pow_i: negative power of zero");
        p.recip()
    } else {
        p
    }
}

/// Exact square root, if `r` is a perfect square of a rational.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(Rational::new(ns, ds))
    } else {
        None
    }
}
