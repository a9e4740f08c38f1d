//! Dense polynomials over [`Rational`] and the factorial-type bases they get
//! expressed in.
//!
//! The interesting bases here are all "monic product" bases: the degree-`n`
//! element is a product of `n` linear factors, so conversion *to* monomials
//! is plain expansion and conversion *from* monomials is back-substitution
//! against the leading term.  Supported bases:
//!
//! * monomial `x^n`
//! * falling factorial `(x)_n = x (x-1) ... (x-n+1)`
//! * rising factorial `<x>_n = x (x+1) ... (x+n-1)`
//! * central factorial `x^[n] = x (x + n/2 - 1)_{n-1}`
//! * the λ-deformations of all three factorial bases, where the step between
//!   roots is λ instead of 1 (λ = 0 collapses them to `x^n`, λ = 1 recovers
//!   the plain versions).

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, int, pow_i, rat, Rational};

/// Dense polynomial, coefficients ascending by degree, normalized so the
/// last stored coefficient is nonzero (the zero polynomial stores nothing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(Rational::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    /// The monomial `c x^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    pub fn x() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that the zero polynomial has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficients `c_0 ..= c_deg`; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficients padded with zeros up to `x^n` inclusive.
    pub fn coeffs_to(&self, n: usize) -> Vec<Rational> {
        (0..=n).map(|k| self.coeff(k)).collect()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `x^k`.
    pub fn mul_by_x_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial::new(coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * int(n as i64))
                .collect(),
        )
    }

    /// The `l`-th Taylor coefficient of `self` around `x0`, i.e.
    /// `p^(l)(x0) / l! = sum_{j >= l} C(j, l) c_j x0^{j-l}`.
    pub fn taylor_coeff(&self, x0: &Rational, l: usize) -> Rational {
        let mut acc = Rational::zero();
        for (j, c) in self.coeffs.iter().enumerate().skip(l) {
            acc += binomial(j, l) * c * pow_i(x0, (j - l) as i64);
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
            wrote = true;
        }
        Ok(())
    }
}

/// A polynomial basis indexed by degree.  Every element is monic, which the
/// conversion code relies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    /// `x^n`
    Monomial,
    /// `x (x-1) ... (x-n+1)`
    Falling,
    /// `x (x+1) ... (x+n-1)`
    Rising,
    /// `x (x + n/2 - 1) (x + n/2 - 2) ... (x + n/2 - (n-1))`
    Central,
    /// `x (x-λ) ... (x-(n-1)λ)`
    FallingLambda(Rational),
    /// `x (x+λ) ... (x+(n-1)λ)`
    RisingLambda(Rational),
    /// `x (x + (n/2-1)λ) ... (x + (n/2-(n-1))λ)`
    CentralLambda(Rational),
}

impl Basis {
    /// Look up a basis by its command-line name; λ-deformed bases take their
    /// parameter from `lambda`.
    pub fn by_name(name: &str, lambda: Option<&Rational>) -> Result<Basis> {
        let lam = || {
            lambda.cloned().ok_or(Error::InvalidParam {
                name: "lambda",
                value: "<missing>".into(),
                reason: "this basis is λ-deformed and needs --lambda",
            })
        };
        match name {
            "monomial" => Ok(Basis::Monomial),
            "falling" => Ok(Basis::Falling),
            "rising" => Ok(Basis::Rising),
            "central" => Ok(Basis::Central),
            "falling_lambda" => Ok(Basis::FallingLambda(lam()?)),
            "rising_lambda" => Ok(Basis::RisingLambda(lam()?)),
            "central_lambda" => Ok(Basis::CentralLambda(lam()?)),
            _ => Err(Error::UnknownName {
                kind: "basis",
                name: name.to_string(),
            }),
        }
    }

    /// The degree-`n` basis element, expanded in monomials.
    pub fn element(&self, n: usize) -> Polynomial {
        if n == 0 {
            return Polynomial::one();
        }
        let one = Rational::one();
        let lam_roots = |lam: &Rational| -> Vec<Rational> {
            // x * prod_{j=1}^{n-1} (x + (n/2 - j) λ): roots at -(n/2-j)λ.
            let half_n = rat(n as i64, 2);
            (1..n)
                .map(|j| (&half_n - int(j as i64)) * lam)
                .collect()
        };
        // Collect the additive offsets o_i so the element is x * prod (x + o_i).
        let offsets: Vec<Rational> = match self {
            Basis::Monomial => vec![Rational::zero(); n - 1],
            Basis::Falling => (1..n).map(|j| -int(j as i64)).collect(),
            Basis::Rising => (1..n).map(|j| int(j as i64)).collect(),
            Basis::Central => lam_roots(&one),
            Basis::FallingLambda(lam) => (1..n).map(|j| -int(j as i64) * lam).collect(),
            Basis::RisingLambda(lam) => (1..n).map(|j| int(j as i64) * lam).collect(),
            Basis::CentralLambda(lam) => lam_roots(lam),
        };
        let mut p = Polynomial::x();
        for o in offsets {
            p = &p * &Polynomial::new(vec![o, Rational::one()]);
        }
        p
    }
}

/// Coefficients of `p` in the given basis, ascending by degree, padded to
/// `x^{deg p}` (the vector `c` satisfies `p = sum_k c[k] * basis.element(k)`).
///
/// Works by back-substitution against the leading coefficient; every basis
/// element is monic, so no division is needed beyond subtracting.
pub fn to_basis(p: &Polynomial, basis: &Basis) -> Vec<Rational> {
    let n = p.degree();
    let mut rem = p.clone();
    let mut out = vec![Rational::zero(); n + 1];
    for k in (0..=n).rev() {
        let c = rem.coeff(k);
        if !c.is_zero() {
            rem = &rem - &basis.element(k).scale(&c);
            out[k] = c;
        }
    }
    debug_assert!(rem.is_zero(), "basis expansion left a remainder");
    out
}

/// The polynomial `sum_k coeffs[k] * basis.element(k)`.
pub fn from_basis(coeffs: &[Rational], basis: &Basis) -> Polynomial {
    let mut p = Polynomial::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            p = &p + &basis.element(k).scale(c);
        }
    }
    p
}

/// Re-express coefficients from one basis in another.
pub fn change_basis(coeffs: &[Rational], from: &Basis, to: &Basis) -> Vec<Rational> {
    let p = from_basis(coeffs, from);
    let mut out = to_basis(&p, to);
    // Keep the caller's length when the input had trailing zeros.
    if out.len() < coeffs.len() {
        out.resize(coeffs.len(), Rational::zero());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::parse_rational;

    fn p(coeffs: &[&str]) -> Polynomial {
        Polynomial::new(coeffs.iter().map(|c| parse_rational(c).unwrap()).collect())
    }

    #[test]
    fn arithmetic_and_normalization() {
        let a = p(&["1", "2", "1"]); // (1+x)^2
        let b = p(&["1", "1"]);
        assert_eq!(&b * &b, a);
        assert_eq!(&a - &a, Polynomial::zero());
        assert!((&a - &a).is_zero());
        assert_eq!(Polynomial::new(vec![int(3), int(0), int(0)]).degree(), 0);
        assert_eq!((&a + &b).coeff(0), int(2));
    }

    #[test]
    fn eval_and_taylor() {
        let q = p(&["1", "-3", "0", "2"]); // 2x^3 - 3x + 1
        assert_eq!(q.eval(&int(2)), int(11));
        assert_eq!(q.eval(&rat(1, 2)), rat(-1, 4));
        // Taylor coefficients around 1: q(x) = sum_l t_l (x-1)^l
        let shifted: Vec<Rational> = (0..=3).map(|l| q.taylor_coeff(&int(1), l)).collect();
        let mut back = Polynomial::zero();
        for (l, t) in shifted.iter().enumerate() {
            let mut binom = Polynomial::one();
            for _ in 0..l {
                binom = &binom * &p(&["-1", "1"]);
            }
            back = &back + &binom.scale(t);
        }
        assert_eq!(back, q);
        // l = 0 is plain evaluation
        assert_eq!(q.taylor_coeff(&rat(-1, 2), 0), q.eval(&rat(-1, 2)));
    }

    #[test]
    fn central_factorial_elements() {
        // x^[3] = x^3 - x/4 and x^[6] = x^6 - 5x^4 + 4x^2
        assert_eq!(Basis::Central.element(3), p(&["0", "-1/4", "0", "1"]));
        assert_eq!(
            Basis::Central.element(6),
            p(&["0", "0", "4", "0", "-5", "0", "1"])
        );
        // even elements have only even powers, odd only odd
        for n in 0..=9usize {
            let e = Basis::Central.element(n);
            for (k, c) in e.coeffs().iter().enumerate() {
                if (n + k) % 2 == 1 {
                    assert!(c.is_zero(), "x^[{n}] has mixed-parity term at {k}");
                }
            }
        }
    }

    #[test]
    fn factorial_basis_elements() {
        assert_eq!(Basis::Falling.element(4), p(&["0", "-6", "11", "-6", "1"]));
        assert_eq!(Basis::Rising.element(3), p(&["0", "2", "3", "1"]));
        assert_eq!(Basis::Monomial.element(5), Polynomial::monomial(int(1), 5));
        // λ-deformations at λ=1 match the plain bases; at λ=0 they are monomials
        let one = int(1);
        let zero = int(0);
        for n in 0..=6usize {
            assert_eq!(
                Basis::FallingLambda(one.clone()).element(n),
                Basis::Falling.element(n)
            );
            assert_eq!(
                Basis::CentralLambda(one.clone()).element(n),
                Basis::Central.element(n)
            );
            assert_eq!(
                Basis::RisingLambda(zero.clone()).element(n),
                Basis::Monomial.element(n)
            );
        }
        // x^[3] with λ = 1/3 is x(x+1/6)(x-1/6) = x^3 - x/36
        assert_eq!(
            Basis::CentralLambda(rat(1, 3)).element(3),
            p(&["0", "-1/36", "0", "1"])
        );
    }

    #[test]
    fn monomial_to_central_and_back() {
        // x^3 = x^[3] + (1/4) x^[1]
        let central = change_basis(
            &[int(0), int(0), int(0), int(1)],
            &Basis::Monomial,
            &Basis::Central,
        );
        assert_eq!(central, vec![int(0), rat(1, 4), int(0), int(1)]);
        // x^[6] expanded in monomials
        let mono = change_basis(
            &[int(0), int(0), int(0), int(0), int(0), int(0), int(1)],
            &Basis::Central,
            &Basis::Monomial,
        );
        assert_eq!(
            mono,
            vec![int(0), int(0), int(4), int(0), int(-5), int(0), int(1)]
        );
    }

    #[test]
    fn basis_round_trips() {
        let q = p(&["7", "-1/2", "0", "5", "2/3", "1"]);
        let bases = [
            Basis::Monomial,
            Basis::Falling,
            Basis::Rising,
            Basis::Central,
            Basis::FallingLambda(rat(1, 3)),
            Basis::RisingLambda(rat(-2, 5)),
            Basis::CentralLambda(rat(1, 3)),
        ];
        for b in &bases {
            let c = to_basis(&q, b);
            assert_eq!(from_basis(&c, b), q, "round trip through {b:?}");
        }
        // and across pairs of distinct bases
        let falling = to_basis(&q, &Basis::Falling);
        let central = change_basis(&falling, &Basis::Falling, &Basis::Central);
        assert_eq!(from_basis(&central, &Basis::Central), q);
    }

    #[test]
    fn basis_lookup_by_name() {
        assert_eq!(
            Basis::by_name("central", None).unwrap(),
            Basis::Central
        );
        assert_eq!(
            Basis::by_name("central_lambda", Some(&rat(1, 3))).unwrap(),
            Basis::CentralLambda(rat(1, 3))
        );
        assert!(matches!(
            Basis::by_name("central_lambda", None),
            Err(Error::InvalidParam { .. })
        ));
        assert!(matches!(
            Basis::by_name("hermite", None),
            Err(Error::UnknownName { .. })
        ));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&["0", "-1/4", "0", "1"]).to_string(), "x^3 - 1/4*x");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p(&["-2"]).to_string(), "-2");
    }
}
