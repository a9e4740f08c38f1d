//! Truncated formal power series over [`Rational`].
//!
//! A [`TruncatedSeries`] stores coefficients `c_0 .. c_N` of
//! `f(t) = sum c_n t^n + O(t^{N+1})`; `N` is the *order*.  All operations are
//! exact on the retained coefficients: a result coefficient is only kept when
//! the inputs determine it, which is why some operations (derivative,
//! division by `t`) return a shorter series.
//!
//! The series here serve as exponential generating functions, so alongside
//! the raw coefficients there are EGF accessors (`egf_coeff`, `from_egf`)
//! that fold the `n!` in and out.
//!
//! Addition and multiplication insist on equal orders.  Mixing truncation
//! orders silently is how wrong coefficients sneak into long pipelines, so a
//! mismatch is treated as a programming error (panic), not user input.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, int, sqrt_exact, Rational};

/// A formal power series truncated at a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    /// Coefficients `c_0 ..= c_order`; length is always `order + 1`.
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Build from raw coefficients `c_0 ..= c_N`; the order is `len - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least c_0");
        TruncatedSeries { coeffs }
    }

    /// Build from EGF values `a_0 ..= a_N`, i.e. `c_n = a_n / n!`.
    pub fn from_egf(values: Vec<Rational>) -> Self {
        let coeffs = values
            .into_iter()
            .enumerate()
            .map(|(n, a)| a / factorial(n))
            .collect();
        TruncatedSeries::new(coeffs)
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::new(vec![Rational::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        TruncatedSeries::new(coeffs)
    }

    /// The identity series `t`.
    pub fn t(order: usize) -> Self {
        assert!(order >= 1, "the series t needs order >= 1");
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[1] = Rational::one();
        TruncatedSeries::new(coeffs)
    }

    /// `e^{ct}` up to the given order.
    pub fn exp_ct(c: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut acc = Rational::one();
        coeffs.push(acc.clone());
        for n in 1..=order {
            acc = acc * c / int(n as i64);
            coeffs.push(acc.clone());
        }
        TruncatedSeries::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^n`.  Panics past the truncation order: a caller
    /// asking for it has already lost information and must widen the order.
    pub fn coeff(&self, n: usize) -> Rational {
        assert!(
            n <= self.order(),
            "coefficient {} requested from a series of order {}",
            n,
            self.order()
        );
        self.coeffs[n].clone()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// EGF value `n! * c_n`.
    pub fn egf_coeff(&self, n: usize) -> Rational {
        self.coeff(n) * factorial(n)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drop coefficients above `order` (which must not exceed the current
    /// order — this type never pretends to know coefficients it does not).
    pub fn truncate(&self, order: usize) -> Self {
        assert!(
            order <= self.order(),
            "cannot truncate order {} up to {}",
            self.order(),
            order
        );
        TruncatedSeries::new(self.coeffs[..=order].to_vec())
    }

    /// Zero-pad up to `order`.  Private on purpose: padding asserts the tail
    /// is genuinely zero or irrelevant, which only local call sites can know.
    fn padded(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `t^k`, keeping the order (top `k` coefficients fall off).
    pub fn mul_by_t_pow(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k > order {
                break;
            }
            coeffs[i + k] = c.clone();
        }
        TruncatedSeries::new(coeffs)
    }

    /// Divide by `t^k`; the low `k` coefficients must vanish and the order
    /// drops by `k`.
    pub fn div_by_t_pow(&self, k: usize) -> Self {
        assert!(k <= self.order(), "division by t^{k} exhausts the series");
        assert!(
            self.coeffs[..k].iter().all(Rational::is_zero),
            "division by t^{k} needs valuation >= {k}"
        );
        TruncatedSeries::new(self.coeffs[k..].to_vec())
    }

    /// Formal derivative; the top coefficient's image is unknown, so the
    /// order drops by one.
    pub fn derivative(&self) -> Self {
        assert!(self.order() >= 1, "derivative needs order >= 1");
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c * int(n as i64))
            .collect();
        TruncatedSeries::new(coeffs)
    }

    /// Antiderivative with zero constant term; every input coefficient
    /// determines one output coefficient, so the order grows by one.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / int((n + 1) as i64));
        }
        TruncatedSeries::new(coeffs)
    }

    /// `self(inner)`, requiring `inner(0) = 0`.  The result is truncated to
    /// the shorter of the two orders.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner from the top coefficient down.
        let mut acc = TruncatedSeries::constant(self.coeff(order), order);
        for n in (0..order).rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = self.coeff(n);
        }
        Ok(acc)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<TruncatedSeries> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let order = self.order();
        let c0_inv = self.coeffs[0].clone().recip();
        let mut out = vec![Rational::zero(); order + 1];
        out[0] = c0_inv.clone();
        for n in 1..=order {
            let mut s = Rational::zero();
            for k in 1..=n {
                s += &self.coeffs[k] * &out[n - k];
            }
            out[n] = -s * &c0_inv;
        }
        Ok(TruncatedSeries::new(out))
    }

    /// Compositional inverse `g` with `self(g) = t`, by Newton iteration with
    /// doubling precision.  Needs `c_0 = 0` and `c_1 != 0`.
    pub fn comp_inverse(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_zero() || self.order() < 1 {
            return Err(Error::NotCompInvertible);
        }
        let c1 = &self.coeffs[1];
        if c1.is_zero() {
            return Err(Error::NotCompInvertible);
        }
        let target = self.order();
        // g = t/c1 is exact through order 1.
        let mut g = TruncatedSeries::new(vec![Rational::zero(), c1.clone().recip()]);
        let mut exact_to = 1usize;
        let deriv = self.derivative();
        while exact_to < target {
            // One Newton step at working order w lifts correctness from m to
            // min(2m + 1, w).
            let w = (2 * exact_to + 1).min(target);
            let gw = g.padded(w);
            let residual = &self.truncate(w).compose(&gw)? - &TruncatedSeries::t(w);
            // The derivative is only known through order target-1; the padded
            // top coefficient cannot reach the correction below order w
            // because the residual has valuation >= 2.
            let slope = deriv.padded(w).compose(&gw)?;
            let correction = &residual * &slope.reciprocal()?;
            g = &gw - &correction;
            exact_to = w;
        }
        debug_assert!(
            self.compose(&g)
                .map(|c| c == TruncatedSeries::t(target))
                .unwrap_or(false),
            "Newton inversion failed to verify"
        );
        Ok(g)
    }

    /// `log(self)`, requiring constant term exactly 1.
    pub fn log_series(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NoExactRoot(self.coeffs[0].to_string()));
        }
        let order = self.order();
        let mut a = vec![Rational::zero(); order + 1];
        // From f = exp(a):  n f_n = sum_{k=1..n} k a_k f_{n-k}.
        for n in 1..=order {
            let mut s = &self.coeffs[n] * int(n as i64);
            for k in 1..n {
                s -= &a[k] * int(k as i64) * &self.coeffs[n - k];
            }
            a[n] = s / int(n as i64);
        }
        Ok(TruncatedSeries::new(a))
    }

    /// `exp(self)`, requiring zero constant term (anything else leaves the
    /// rationals).
    pub fn exp_series(&self) -> Result<TruncatedSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let order = self.order();
        let mut g = vec![Rational::zero(); order + 1];
        g[0] = Rational::one();
        for n in 1..=order {
            let mut s = Rational::zero();
            for k in 1..=n {
                s += &self.coeffs[k] * int(k as i64) * &g[n - k];
            }
            g[n] = s / int(n as i64);
        }
        Ok(TruncatedSeries::new(g))
    }

    /// `self^r` for rational `r`, via `exp(r log self)`; needs constant
    /// term 1.
    pub fn pow_rational(&self, r: &Rational) -> Result<TruncatedSeries> {
        self.log_series()?.scale(r).exp_series()
    }

    /// Integer power, with negative exponents through the reciprocal.
    pub fn pow_i(&self, exp: i64) -> Result<TruncatedSeries> {
        let base = if exp < 0 {
            self.reciprocal()?
        } else {
            self.clone()
        };
        let mut acc = TruncatedSeries::one(self.order());
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Square root with positive leading value; the constant term must be a
    /// nonzero perfect square in Q.
    pub fn sqrt_series(&self) -> Result<TruncatedSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let s0 = sqrt_exact(c0).ok_or_else(|| Error::NoExactRoot(c0.to_string()))?;
        let unit = self.scale(&c0.clone().recip());
        Ok(unit.pow_rational(&crate::rational::rat(1, 2))?.scale(&s0))
    }

    /// Degenerate logarithm `(self^lambda - 1) / lambda`, the λ-deformation
    /// of `log` (and exactly `log` at λ = 0).  Needs constant term 1.
    pub fn degenerate_log(&self, lambda: &Rational) -> Result<TruncatedSeries> {
        if lambda.is_zero() {
            return self.log_series();
        }
        let powed = self.pow_rational(lambda)?;
        let mut coeffs = powed.coeffs;
        coeffs[0] -= Rational::one();
        for c in coeffs.iter_mut() {
            *c = &*c / lambda;
        }
        Ok(TruncatedSeries::new(coeffs))
    }
}

/// `2 sinh(t/2) = e^{t/2} - e^{-t/2}`, the generating series of the central
/// difference operator.  Used as the reference point for everything
/// "central" in this crate.
pub fn two_sinh_half(order: usize) -> TruncatedSeries {
    let half = crate::rational::rat(1, 2);
    &TruncatedSeries::exp_ct(&half, order) - &TruncatedSeries::exp_ct(&-half, order)
}

fn assert_same_order(a: &TruncatedSeries, b: &TruncatedSeries, op: &str) {
    assert!(
        a.order() == b.order(),
        "{op} on mismatched orders {} and {}",
        a.order(),
        b.order()
    );
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_same_order(self, rhs, "add");
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_same_order(self, rhs, "sub");
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_same_order(self, rhs, "mul");
        let order = self.order();
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries::new(out)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match n {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if n == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{n}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_rational, rat};

    fn s(coeffs: &[&str]) -> TruncatedSeries {
        TruncatedSeries::new(coeffs.iter().map(|c| parse_rational(c).unwrap()).collect())
    }

    #[test]
    fn ring_ops_on_small_series() {
        let one_plus = s(&["1", "1", "0", "0"]);
        let one_minus = s(&["1", "-1", "0", "0"]);
        assert_eq!(&one_plus * &one_minus, s(&["1", "0", "-1", "0"]));
        assert_eq!(&one_plus + &one_minus, s(&["2", "0", "0", "0"]));
        assert_eq!(&one_plus - &one_minus, s(&["0", "2", "0", "0"]));
    }

    #[test]
    fn reciprocal_of_one_minus_t_is_geometric() {
        let f = s(&["1", "-1", "0", "0", "0", "0"]);
        let r = f.reciprocal().unwrap();
        assert_eq!(r, s(&["1", "1", "1", "1", "1", "1"]));
        assert_eq!(&f * &r, TruncatedSeries::one(5));
    }

    #[test]
    fn exp_and_log_invert_each_other() {
        let f = TruncatedSeries::exp_ct(&int(1), 10);
        let lg = f.log_series().unwrap();
        assert_eq!(lg, TruncatedSeries::t(10));
        let g = s(&["0", "1", "-2", "1/3", "0", "5", "0", "0", "-7", "0", "1"]);
        assert_eq!(g.exp_series().unwrap().log_series().unwrap(), g);
    }

    #[test]
    fn exp_ct_matches_termwise_definition() {
        let f = TruncatedSeries::exp_ct(&rat(2, 3), 8);
        for n in 0..=8 {
            assert_eq!(
                f.coeff(n),
                crate::rational::pow_i(&rat(2, 3), n as i64) / factorial(n)
            );
        }
    }

    #[test]
    fn compose_against_hand_expansion() {
        // (1 + u)^2 with u = t + t^2: 1 + 2t + 3t^2 + 2t^3 + t^4.
        let outer = s(&["1", "2", "1", "0", "0"]);
        let inner = s(&["0", "1", "1", "0", "0"]);
        let c = outer.compose(&inner).unwrap();
        assert_eq!(c, s(&["1", "2", "3", "2", "1"]));
        // composing with t is the identity
        let any = s(&["3", "1/2", "0", "-4", "7"]);
        assert_eq!(any.compose(&TruncatedSeries::t(4)).unwrap(), any);
    }

    #[test]
    fn compose_rejects_nonzero_inner_constant() {
        let outer = TruncatedSeries::t(4);
        let inner = TruncatedSeries::one(4);
        assert_eq!(
            outer.compose(&inner).unwrap_err(),
            Error::NonzeroInnerConstant
        );
    }

    #[test]
    fn comp_inverse_of_moebius_series() {
        // f = t/(1-t) = t + t^2 + ... inverts to t/(1+t) = t - t^2 + t^3 - ...
        let order = 12;
        let f = TruncatedSeries::new(
            (0..=order)
                .map(|n| if n == 0 { int(0) } else { int(1) })
                .collect(),
        );
        let g = f.comp_inverse().unwrap();
        for n in 1..=order {
            assert_eq!(g.coeff(n), int(if n % 2 == 1 { 1 } else { -1 }));
        }
        assert_eq!(f.compose(&g).unwrap(), TruncatedSeries::t(order));
        assert_eq!(g.compose(&f).unwrap(), TruncatedSeries::t(order));
    }

    #[test]
    fn comp_inverse_of_exp_minus_one_is_log() {
        let order = 14;
        let f = {
            let mut e = TruncatedSeries::exp_ct(&int(1), order);
            e = &e - &TruncatedSeries::one(order);
            e
        };
        let g = f.comp_inverse().unwrap();
        for n in 1..=order {
            let expected = rat(if n % 2 == 1 { 1 } else { -1 }, n as i64);
            assert_eq!(g.coeff(n), expected, "log(1+t) coefficient {n}");
        }
    }

    #[test]
    fn comp_inverse_of_central_difference_base() {
        // Known closed form: the inverse of 2 sinh(t/2) is
        // 2 log((t + sqrt(t^2+4)) / 2) = 2 asinh(t/2).
        let g = two_sinh_half(9).comp_inverse().unwrap();
        let expected = [
            "0",
            "1",
            "0",
            "-1/24",
            "0",
            "3/640",
            "0",
            "-5/7168",
            "0",
            "35/294912",
        ];
        assert_eq!(g, s(&expected));
    }

    #[test]
    fn sqrt_of_four_plus_t_squared() {
        let mut c = vec![int(4)];
        c.extend((1..=8).map(|n| if n == 2 { int(1) } else { int(0) }));
        let root = TruncatedSeries::new(c).sqrt_series().unwrap();
        let expected = [
            "2", "0", "1/4", "0", "-1/64", "0", "1/512", "0", "-5/16384",
        ];
        assert_eq!(root, s(&expected));
        let sq = &root * &root;
        assert_eq!(sq.coeff(0), int(4));
        assert_eq!(sq.coeff(2), int(1));
        for n in [1, 3, 4, 5, 6, 7, 8] {
            assert!(sq.coeff(n).is_zero());
        }
    }

    #[test]
    fn rational_powers_compose_multiplicatively() {
        let f = s(&["1", "1", "0", "0", "0", "0", "0", "0"]); // 1 + t
        let half = f.pow_rational(&rat(1, 2)).unwrap();
        assert_eq!(&half * &half, f);
        let third = f.pow_rational(&rat(-1, 3)).unwrap();
        let cubed = third.pow_i(-3).unwrap();
        assert_eq!(cubed, f);
    }

    #[test]
    fn degenerate_log_of_exponential_is_scaled_exponential_difference() {
        // log_lambda(e^t) = (e^{lambda t} - 1)/lambda.
        let lam = rat(1, 3);
        let f = TruncatedSeries::exp_ct(&int(1), 10);
        let dl = f.degenerate_log(&lam).unwrap();
        let expected = {
            let e = TruncatedSeries::exp_ct(&lam, 10);
            (&e - &TruncatedSeries::one(10)).scale(&lam.clone().recip())
        };
        assert_eq!(dl, expected);
        // lambda = 0 degenerates to the plain logarithm
        assert_eq!(
            f.degenerate_log(&int(0)).unwrap(),
            TruncatedSeries::t(10)
        );
    }

    #[test]
    fn shifts_and_calculus() {
        let f = s(&["0", "0", "3", "-1", "0", "0"]);
        assert_eq!(f.div_by_t_pow(2), s(&["3", "-1", "0", "0"]));
        assert_eq!(f.div_by_t_pow(2).mul_by_t_pow(0), s(&["3", "-1", "0", "0"]));
        let g = s(&["5", "1", "1/2", "0"]);
        assert_eq!(g.derivative(), s(&["1", "1", "0"]));
        assert_eq!(g.derivative().integral(), s(&["0", "1", "1/2", "0"]));
        assert_eq!(f.mul_by_t_pow(1), s(&["0", "0", "0", "3", "-1", "0"]));
    }

    #[test]
    fn valuation_and_egf_accessors() {
        let f = s(&["0", "0", "1/2", "0"]);
        assert_eq!(f.valuation(), Some(2));
        assert_eq!(TruncatedSeries::zero(3).valuation(), None);
        assert_eq!(f.egf_coeff(2), int(1));
        let g = TruncatedSeries::from_egf(vec![int(1), int(1), int(1), int(1)]);
        assert_eq!(g.coeff(3), rat(1, 6));
    }

    #[test]
    fn display_is_readable() {
        let f = s(&["1", "0", "-1/2", "1"]);
        assert_eq!(f.to_string(), "1 - 1/2*t^2 + t^3 + O(t^4)");
        assert_eq!(TruncatedSeries::zero(2).to_string(), "0 + O(t^3)");
    }
}
