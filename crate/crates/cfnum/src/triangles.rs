//! Connection-coefficient triangles between polynomial bases.
//!
//! Each family here is a triangular array `T(n, k)` expressing one polynomial
//! basis in another — Stirling numbers relate powers and falling factorials,
//! central factorial numbers relate powers and central factorials, and so on.
//! Every family can be computed by two independent routes:
//!
//! * **series route** ([`triangle_by_series`]) — column `k` of the triangle is
//!   the coefficient sequence of `(1/k!) · base(t)^k` (times a fixed prefactor
//!   for the one family that carries one), scaled by `n!`;
//! * **algebra route** ([`triangle_by_algebra`]) — expand concrete polynomials
//!   and convert between bases by exact back-substitution, or use a closed
//!   form or matrix identity where one exists.
//!
//! The routes share no code, so their agreement is a meaningful cross-check;
//! [`triangle_cross_checked`] runs both and reports the first mismatch.
//! Triangles are cached per `(family, n_max)` and shared behind [`Arc`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::poly::{self, Basis, Polynomial};
use crate::rational::{binomial, factorial, int, pow_i, rat, Rational};
use crate::series::{two_sinh_half, TruncatedSeries};

/// A named family of connection coefficients, with any parameters it needs.
///
/// The short string ids (`s2`, `t1l`, `gh`, …) are what the command-line
/// interface accepts; [`TriangleFamily::by_name`] resolves them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TriangleFamily {
    /// Signed Stirling, first kind: `(x)_n = Σ_k S1(n,k) x^k`.
    S1,
    /// Stirling, second kind: `x^n = Σ_k S2(n,k) (x)_k`.
    S2,
    /// Degenerate Stirling, first kind: `(x)_n = Σ_k S1λ(n,k) (x)_{k,λ}`.
    S1Lambda(Rational),
    /// Degenerate Stirling, second kind: `(x)_{n,λ} = Σ_k S2λ(n,k) (x)_k`.
    S2Lambda(Rational),
    /// Central factorial, first kind: `x^[n] = Σ_k T1(n,k) x^k`.
    T1,
    /// Central factorial, second kind: `x^n = Σ_k T2(n,k) x^[k]`.
    T2,
    /// Degenerate central factorial, first kind:
    /// `x^[n] = Σ_k T1λ(n,k) (x)_{k,λ}`.
    T1Lambda(Rational),
    /// Degenerate central factorial, second kind:
    /// `(x)_{n,λ} = Σ_k T2λ(n,k) x^[k]`.
    T2Lambda(Rational),
    /// Degenerate central factorial coefficients on powers:
    /// `x^[n,λ] = Σ_k R1λ(n,k) x^k`.
    R1Lambda(Rational),
    /// Powers on degenerate central factorials:
    /// `x^n = Σ_k R2λ(n,k) x^[k,λ]`.
    R2Lambda(Rational),
    /// Lah numbers: `⟨x⟩_n = Σ_k L(n,k) (x)_k`.
    Lah,
    /// Central Lah, first kind: inverse of [`TriangleFamily::L2Central`].
    L1Central,
    /// Central Lah, second kind: columns generated by `4t/(4 − t²)`.
    L2Central,
    /// Central-Lah/central-factorial mix, first kind:
    /// `TL1(n,k) = Σ_l L2c(n,l) T1(l,k)`.
    TL1,
    /// Central-Lah/central-factorial mix, second kind:
    /// `TL2(n,k) = Σ_l T2(n,l) L1c(l,k)`.
    TL2,
    /// Scaled-shifted falling factorials on plain ones:
    /// `(rx+s)_n = Σ_k G(n,k) (x)_k`, requires `r ≠ 0`.
    GouldHopper { r: Rational, s: Rational },
}

impl TriangleFamily {
    /// Resolves a short family id, taking whichever parameters it requires.
    ///
    /// Ids: `s1 s2 s1l s2l t1 t2 t1l t2l r1l r2l lah l1c l2c tl1 tl2 gh`.
    /// The `*l` families need `lambda`, `gh` needs `r` and `s`.
    pub fn by_name(
        name: &str,
        lambda: Option<&Rational>,
        r: Option<&Rational>,
        s: Option<&Rational>,
    ) -> Result<Self> {
        let need_lambda = |p: &'static str| -> Result<Rational> {
            lambda.cloned().ok_or(Error::InvalidParam {
                name: p,
                value: String::from("<missing>"),
                reason: "this family requires --lambda",
            })
        };
        let family = match name {
            "s1" => TriangleFamily::S1,
            "s2" => TriangleFamily::S2,
            "s1l" => TriangleFamily::S1Lambda(need_lambda("lambda")?),
            "s2l" => TriangleFamily::S2Lambda(need_lambda("lambda")?),
            "t1" => TriangleFamily::T1,
            "t2" => TriangleFamily::T2,
            "t1l" => TriangleFamily::T1Lambda(need_lambda("lambda")?),
            "t2l" => TriangleFamily::T2Lambda(need_lambda("lambda")?),
            "r1l" => TriangleFamily::R1Lambda(need_lambda("lambda")?),
            "r2l" => TriangleFamily::R2Lambda(need_lambda("lambda")?),
            "lah" => TriangleFamily::Lah,
            "l1c" => TriangleFamily::L1Central,
            "l2c" => TriangleFamily::L2Central,
            "tl1" => TriangleFamily::TL1,
            "tl2" => TriangleFamily::TL2,
            "gh" => {
                let r = r.cloned().ok_or(Error::InvalidParam {
                    name: "r",
                    value: String::from("<missing>"),
                    reason: "this family requires --r",
                })?;
                let s = s.cloned().ok_or(Error::InvalidParam {
                    name: "s",
                    value: String::from("<missing>"),
                    reason: "this family requires --s",
                })?;
                TriangleFamily::GouldHopper { r, s }
            }
            _ => {
                return Err(Error::UnknownName {
                    kind: "triangle family",
                    name: name.to_string(),
                })
            }
        };
        family.validate()?;
        Ok(family)
    }

    /// The short id this family is addressed by.
    pub fn id(&self) -> &'static str {
        match self {
            TriangleFamily::S1 => "s1",
            TriangleFamily::S2 => "s2",
            TriangleFamily::S1Lambda(_) => "s1l",
            TriangleFamily::S2Lambda(_) => "s2l",
            TriangleFamily::T1 => "t1",
            TriangleFamily::T2 => "t2",
            TriangleFamily::T1Lambda(_) => "t1l",
            TriangleFamily::T2Lambda(_) => "t2l",
            TriangleFamily::R1Lambda(_) => "r1l",
            TriangleFamily::R2Lambda(_) => "r2l",
            TriangleFamily::Lah => "lah",
            TriangleFamily::L1Central => "l1c",
            TriangleFamily::L2Central => "l2c",
            TriangleFamily::TL1 => "tl1",
            TriangleFamily::TL2 => "tl2",
            TriangleFamily::GouldHopper { .. } => "gh",
        }
    }

    /// Named parameters carried by this family, in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, Rational)> {
        match self {
            TriangleFamily::S1Lambda(l)
            | TriangleFamily::S2Lambda(l)
            | TriangleFamily::T1Lambda(l)
            | TriangleFamily::T2Lambda(l)
            | TriangleFamily::R1Lambda(l)
            | TriangleFamily::R2Lambda(l) => vec![("lambda", l.clone())],
            TriangleFamily::GouldHopper { r, s } => {
                vec![("r", r.clone()), ("s", s.clone())]
            }
            _ => Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            TriangleFamily::S1Lambda(l)
            | TriangleFamily::S2Lambda(l)
            | TriangleFamily::T1Lambda(l)
            | TriangleFamily::T2Lambda(l)
            | TriangleFamily::R1Lambda(l)
            | TriangleFamily::R2Lambda(l) => {
                if l.is_zero() {
                    return Err(Error::InvalidParam {
                        name: "lambda",
                        value: l.to_string(),
                        reason: "must be nonzero",
                    });
                }
            }
            TriangleFamily::GouldHopper { r, .. } => {
                if r.is_zero() {
                    return Err(Error::InvalidParam {
                        name: "r",
                        value: r.to_string(),
                        reason: "must be nonzero",
                    });
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Whether entries with `n − k` odd vanish identically in this family.
    pub fn has_even_parity(&self) -> bool {
        matches!(
            self,
            TriangleFamily::T1
                | TriangleFamily::T2
                | TriangleFamily::L1Central
                | TriangleFamily::L2Central
        )
    }

    /// The delta series whose scaled powers `(1/k!) base^k` generate column
    /// `k` of the triangle, truncated at `order`.
    pub fn base_series(&self, order: usize) -> Result<TruncatedSeries> {
        self.validate()?;
        let base = match self {
            TriangleFamily::S1 => one_plus_t(order).log_series()?,
            TriangleFamily::S2 => {
                &TruncatedSeries::exp_ct(&int(1), order) - &TruncatedSeries::one(order)
            }
            TriangleFamily::S1Lambda(l) => one_plus_t(order).degenerate_log(l)?,
            TriangleFamily::S2Lambda(l) => {
                // e_λ(t) − 1 = (1 + λt)^{1/λ} − 1
                let inv = l.recip();
                &one_plus_ct(l, order).pow_rational(&inv)? - &TruncatedSeries::one(order)
            }
            TriangleFamily::T1 => half_sum_with_sqrt(&int(1), order)?
                .log_series()?
                .scale(&int(2)),
            TriangleFamily::T2 => two_sinh_half(order),
            TriangleFamily::T1Lambda(l) => {
                // log_λ of ((t + √(t²+4))/2)², the degenerate analogue of
                // the inverse of 2·sinh(t/2).
                let w = half_sum_with_sqrt(&int(1), order)?;
                (&w * &w).degenerate_log(l)?
            }
            TriangleFamily::T2Lambda(l) => {
                // e_λ^{1/2}(t) − e_λ^{−1/2}(t)
                let half_inv = l.recip() / int(2);
                let base = one_plus_ct(l, order);
                &base.pow_rational(&half_inv)? - &base.pow_rational(&(-half_inv.clone()))?
            }
            TriangleFamily::R1Lambda(l) => half_sum_with_sqrt(l, order)?
                .log_series()?
                .scale(&(int(2) / l.clone())),
            TriangleFamily::R2Lambda(l) => {
                let half = l.clone() / int(2);
                let s = &TruncatedSeries::exp_ct(&half, order)
                    - &TruncatedSeries::exp_ct(&(-half.clone()), order);
                s.scale(&l.recip())
            }
            TriangleFamily::Lah => {
                // t/(1 − t)
                let denom = &TruncatedSeries::one(order) - &TruncatedSeries::t(order);
                (&TruncatedSeries::t(order) * &denom.reciprocal()?).truncate(order)
            }
            TriangleFamily::L2Central => {
                // 4t/(4 − t²)
                let denom = TruncatedSeries::new(pad(vec![int(4), int(0), int(-1)], order));
                (&TruncatedSeries::t(order) * &denom.reciprocal()?)
                    .truncate(order)
                    .scale(&int(4))
            }
            TriangleFamily::L1Central => {
                // (2/t)(√(1 + t²) − 1); the compositional inverse of the
                // second-kind central Lah base.
                let inner = TruncatedSeries::new(pad(vec![int(1), int(0), int(1)], order + 1));
                let shifted = &inner.sqrt_series()? - &TruncatedSeries::one(order + 1);
                shifted.div_by_t_pow(1).scale(&int(2))
            }
            TriangleFamily::TL1 => {
                let outer = TriangleFamily::T1.base_series(order)?;
                let inner = TriangleFamily::L2Central.base_series(order)?;
                outer.compose(&inner)?
            }
            TriangleFamily::TL2 => {
                let outer = TriangleFamily::L1Central.base_series(order)?;
                let inner = TriangleFamily::T2.base_series(order)?;
                outer.compose(&inner)?
            }
            TriangleFamily::GouldHopper { r, .. } => {
                &one_plus_t(order).pow_rational(r)? - &TruncatedSeries::one(order)
            }
        };
        Ok(base)
    }

    /// Constant-coefficient factor multiplying every column's generating
    /// function. Only the scaled-shifted falling family carries one.
    fn column_prefactor(&self, order: usize) -> Result<TruncatedSeries> {
        match self {
            TriangleFamily::GouldHopper { s, .. } => one_plus_t(order).pow_rational(s),
            _ => Ok(TruncatedSeries::one(order)),
        }
    }

    /// Expected diagonal entry `T(n, n)`; `1` everywhere except the
    /// scaled-shifted falling family, whose polynomials have leading
    /// coefficient `r^n`.
    fn diagonal(&self, n: usize) -> Rational {
        match self {
            TriangleFamily::GouldHopper { r, .. } => pow_i(r, n as i64),
            _ => Rational::one(),
        }
    }
}

impl fmt::Display for TriangleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())?;
        for (name, value) in self.params() {
            write!(f, " {name}={value}")?;
        }
        Ok(())
    }
}

/// A fully materialised triangle: rows `0..=n_max`, row `n` holding the
/// `n + 1` entries `T(n, 0) ..= T(n, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    family: TriangleFamily,
    n_max: usize,
    rows: Vec<Vec<Rational>>,
}

impl Triangle {
    pub fn family(&self) -> &TriangleFamily {
        &self.family
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// All rows, row `n` having length `n + 1`.
    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// `T(n, k)`; zero above the diagonal. Panics if `n` exceeds `n_max`.
    pub fn entry(&self, n: usize, k: usize) -> Rational {
        assert!(
            n <= self.n_max,
            "row {n} requested from a triangle built to n_max = {}",
            self.n_max
        );
        if k > n {
            Rational::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    /// `T(n, k)` with signed indices: zero whenever `k < 0` or `k > n`.
    pub fn entry_at(&self, n: isize, k: isize) -> Rational {
        assert!(n >= 0, "row index must be nonnegative");
        if k < 0 || k > n {
            Rational::zero()
        } else {
            self.entry(n as usize, k as usize)
        }
    }

    fn from_rows(family: TriangleFamily, rows: Vec<Vec<Rational>>) -> Self {
        let n_max = rows.len() - 1;
        let t = Triangle {
            family,
            n_max,
            rows,
        };
        t.assert_shape_invariants();
        t
    }

    /// Structural sanity checks that hold for every family: row lengths,
    /// expected diagonal, and the even-parity vanishing pattern where the
    /// family has one.
    fn assert_shape_invariants(&self) {
        for (n, row) in self.rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} has wrong length");
            assert_eq!(
                row[n],
                self.family.diagonal(n),
                "unexpected diagonal entry at n = {n} in {}",
                self.family
            );
            if self.family.has_even_parity() {
                for (k, value) in row.iter().enumerate() {
                    assert!(
                        (n - k) % 2 == 0 || value.is_zero(),
                        "parity violation at ({n}, {k}) in {}",
                        self.family
                    );
                }
            }
        }
    }
}

/// Builds a triangle from the exponential generating functions of its
/// columns: column `k` is `prefactor · base^k / k!`, and
/// `T(n, k) = n! · [tⁿ] column_k`.
pub fn triangle_by_series(family: &TriangleFamily, n_max: usize) -> Result<Triangle> {
    let base = family.base_series(n_max)?;
    let mut column = family.column_prefactor(n_max)?;
    let mut rows: Vec<Vec<Rational>> = (0..=n_max)
        .map(|n| vec![Rational::zero(); n + 1])
        .collect();
    for k in 0..=n_max {
        for n in k..=n_max {
            rows[n][k] = column.coeff(n) * factorial(n);
        }
        if k < n_max {
            column = (&column * &base).truncate(n_max).scale(&rat(1, k as i64 + 1));
        }
    }
    Ok(Triangle::from_rows(family.clone(), rows))
}

/// Builds a triangle without generating functions: by expanding concrete
/// polynomials and changing bases, or through a closed form or matrix
/// identity where the family has one.
pub fn triangle_by_algebra(family: &TriangleFamily, n_max: usize) -> Result<Triangle> {
    family.validate()?;
    let rows = match family {
        TriangleFamily::S1 => rows_from_coeffs(&Basis::Falling, n_max),
        TriangleFamily::S2 => rows_from_conversion(&Basis::Monomial, &Basis::Falling, n_max),
        TriangleFamily::S1Lambda(l) => {
            rows_from_conversion(&Basis::Falling, &Basis::FallingLambda(l.clone()), n_max)
        }
        TriangleFamily::S2Lambda(l) => {
            rows_from_conversion(&Basis::FallingLambda(l.clone()), &Basis::Falling, n_max)
        }
        TriangleFamily::T1 => rows_from_coeffs(&Basis::Central, n_max),
        TriangleFamily::T2 => rows_from_conversion(&Basis::Monomial, &Basis::Central, n_max),
        TriangleFamily::T1Lambda(l) => {
            rows_from_conversion(&Basis::Central, &Basis::FallingLambda(l.clone()), n_max)
        }
        TriangleFamily::T2Lambda(l) => {
            rows_from_conversion(&Basis::FallingLambda(l.clone()), &Basis::Central, n_max)
        }
        TriangleFamily::R1Lambda(l) => {
            rows_from_coeffs(&Basis::CentralLambda(l.clone()), n_max)
        }
        TriangleFamily::R2Lambda(l) => {
            rows_from_conversion(&Basis::Monomial, &Basis::CentralLambda(l.clone()), n_max)
        }
        TriangleFamily::Lah => (0..=n_max)
            .map(|n| (0..=n).map(|k| lah_closed(n, k)).collect())
            .collect(),
        TriangleFamily::L2Central => (0..=n_max)
            .map(|n| (0..=n).map(|k| l2_central_closed(n, k)).collect())
            .collect(),
        TriangleFamily::L1Central => {
            let l2 = triangle_by_algebra(&TriangleFamily::L2Central, n_max)?;
            unitriangular_inverse(l2.rows())
        }
        TriangleFamily::TL1 => {
            let l2 = triangle_by_algebra(&TriangleFamily::L2Central, n_max)?;
            let t1 = triangle_by_algebra(&TriangleFamily::T1, n_max)?;
            triangular_product(l2.rows(), t1.rows())
        }
        TriangleFamily::TL2 => {
            let t2 = triangle_by_algebra(&TriangleFamily::T2, n_max)?;
            let l1 = triangle_by_algebra(&TriangleFamily::L1Central, n_max)?;
            triangular_product(t2.rows(), l1.rows())
        }
        TriangleFamily::GouldHopper { r, s } => (0..=n_max)
            .map(|n| {
                let p = scaled_shifted_falling(r, s, n);
                poly::to_basis(&p, &Basis::Falling)
            })
            .collect(),
    };
    Ok(Triangle::from_rows(family.clone(), rows))
}

/// Cached triangle, computed once per `(family, n_max)` by the series route.
pub fn triangle(family: &TriangleFamily, n_max: usize) -> Result<Arc<Triangle>> {
    static CACHE: Lazy<RwLock<HashMap<(TriangleFamily, usize), Arc<Triangle>>>> =
        Lazy::new(|| RwLock::new(HashMap::new()));

    let key = (family.clone(), n_max);
    if let Some(hit) = CACHE.read().expect("triangle cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let computed = Arc::new(triangle_by_series(family, n_max)?);
    let mut cache = CACHE.write().expect("triangle cache poisoned");
    Ok(cache.entry(key).or_insert(computed).clone())
}

/// Cached triangle with both routes compared entrywise; a disagreement is an
/// internal-consistency error, reported with its first offending index.
pub fn triangle_cross_checked(family: &TriangleFamily, n_max: usize) -> Result<Arc<Triangle>> {
    let by_series = triangle(family, n_max)?;
    let by_algebra = triangle_by_algebra(family, n_max)?;
    for n in 0..=n_max {
        for k in 0..=n {
            let lhs = by_series.entry(n, k);
            let rhs = by_algebra.entry(n, k);
            if lhs != rhs {
                return Err(Error::CrossCheckMismatch {
                    what: format!("triangle {} series vs algebra", family),
                    n,
                    k,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    Ok(by_series)
}

/// Rows `n` are the monomial coefficients of the `n`-th basis element.
fn rows_from_coeffs(basis: &Basis, n_max: usize) -> Vec<Vec<Rational>> {
    (0..=n_max)
        .map(|n| basis.element(n).coeffs_to(n))
        .collect()
}

/// Rows `n` expand the `n`-th element of `from` in the basis `to`.
fn rows_from_conversion(from: &Basis, to: &Basis, n_max: usize) -> Vec<Vec<Rational>> {
    (0..=n_max)
        .map(|n| poly::to_basis(&from.element(n), to))
        .collect()
}

/// `(rx + s)(rx + s − 1) ⋯ (rx + s − n + 1)` as a polynomial in `x`.
fn scaled_shifted_falling(r: &Rational, s: &Rational, n: usize) -> Polynomial {
    let mut p = Polynomial::one();
    for i in 0..n {
        let linear = Polynomial::new(vec![s - int(i as i64), r.clone()]);
        p = &p * &linear;
    }
    p
}

/// `L(n,k) = C(n−1, k−1) · n!/k!`, with `L(0,0) = 1`.
fn lah_closed(n: usize, k: usize) -> Rational {
    if n == 0 && k == 0 {
        return Rational::one();
    }
    if k == 0 || k > n {
        return Rational::zero();
    }
    binomial(n - 1, k - 1) * factorial(n) / factorial(k)
}

/// `(n!/k!) · C((n+k)/2 − 1, (n−k)/2) / 4^{(n−k)/2}` for `n − k` even,
/// zero otherwise, with the empty product `(0,0) = 1`.
fn l2_central_closed(n: usize, k: usize) -> Rational {
    if n == 0 && k == 0 {
        return Rational::one();
    }
    if k == 0 || k > n || (n - k) % 2 == 1 {
        return Rational::zero();
    }
    let half = (n - k) / 2;
    factorial(n) / factorial(k) * binomial((n + k) / 2 - 1, half) / pow_i(&int(4), half as i64)
}

/// Inverse of a lower-triangular matrix with unit diagonal, by forward
/// substitution on each column.
fn unitriangular_inverse(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let size = rows.len();
    let mut inv: Vec<Vec<Rational>> = (0..size)
        .map(|n| vec![Rational::zero(); n + 1])
        .collect();
    for k in 0..size {
        inv[k][k] = Rational::one();
        for n in k + 1..size {
            let mut acc = Rational::zero();
            for l in k..n {
                acc += &rows[n][l] * &inv[l][k];
            }
            inv[n][k] = -acc;
        }
    }
    inv
}

/// Product of two lower-triangular matrices stored as ragged rows.
fn triangular_product(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let size = a.len();
    (0..size)
        .map(|n| {
            (0..=n)
                .map(|k| (k..=n).map(|l| &a[n][l] * &b[l][k]).sum())
                .collect()
        })
        .collect()
}

fn one_plus_t(order: usize) -> TruncatedSeries {
    &TruncatedSeries::one(order) + &TruncatedSeries::t(order)
}

/// `1 + c·t`.
fn one_plus_ct(c: &Rational, order: usize) -> TruncatedSeries {
    TruncatedSeries::new(pad(vec![int(1), c.clone()], order))
}

/// `(c·t + √(c²t² + 4)) / 2`, the quantity whose logarithm inverts the
/// centred exponential difference with scale `c`.
fn half_sum_with_sqrt(c: &Rational, order: usize) -> Result<TruncatedSeries> {
    let under = TruncatedSeries::new(pad(vec![int(4), int(0), c * c], order));
    let numer = &TruncatedSeries::new(pad(vec![int(0), c.clone()], order)) + &under.sqrt_series()?;
    Ok(numer.scale(&rat(1, 2)))
}

fn pad(mut coeffs: Vec<Rational>, order: usize) -> Vec<Rational> {
    coeffs.resize(order + 1, Rational::zero());
    coeffs
}

/// Classical number sequences used by the closed-form identities, each
/// defined by an exponential generating function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NumberSequence {
    /// `t/(eᵗ − 1)`; the degree-one value is `−1/2`.
    Bernoulli,
    /// `2/(eᵗ + 1)`, the Euler polynomial values at zero.
    Euler,
    /// `t/log(1 + t)`, Bernoulli numbers of the second kind.
    Bernoulli2nd,
    /// `exp(x₀(eᵗ − 1))`, Bell polynomial values at `x₀`.
    Bell(Rational),
    /// `exp(x₀ · 2 sinh(t/2))`, central Bell polynomial values at `x₀`.
    CentralBell(Rational),
}

impl NumberSequence {
    /// The defining exponential generating function, truncated at `order`.
    pub fn egf(&self, order: usize) -> TruncatedSeries {
        match self {
            NumberSequence::Bernoulli => {
                let e = &TruncatedSeries::exp_ct(&int(1), order + 1) - &TruncatedSeries::one(order + 1);
                e.div_by_t_pow(1)
                    .reciprocal()
                    .expect("eᵗ − 1 has unit leading coefficient")
            }
            NumberSequence::Euler => {
                let denom = &TruncatedSeries::exp_ct(&int(1), order) + &TruncatedSeries::one(order);
                denom
                    .reciprocal()
                    .expect("eᵗ + 1 has nonzero constant term")
                    .scale(&int(2))
            }
            NumberSequence::Bernoulli2nd => one_plus_t(order + 1)
                .log_series()
                .expect("log(1 + t) exists")
                .div_by_t_pow(1)
                .reciprocal()
                .expect("log(1 + t)/t has unit constant term"),
            NumberSequence::Bell(x0) => {
                let inner = &TruncatedSeries::exp_ct(&int(1), order) - &TruncatedSeries::one(order);
                inner
                    .scale(x0)
                    .exp_series()
                    .expect("argument has zero constant term")
            }
            NumberSequence::CentralBell(x0) => two_sinh_half(order)
                .scale(x0)
                .exp_series()
                .expect("argument has zero constant term"),
        }
    }

    /// Values `a_0 ..= a_{n_max}` read off the generating function,
    /// `a_n = n! · [tⁿ]`.
    pub fn values(&self, n_max: usize) -> Vec<Rational> {
        let egf = self.egf(n_max);
        (0..=n_max).map(|n| egf.coeff(n) * factorial(n)).collect()
    }
}

/// Bernoulli numbers `B_0 ..= B_{n_max}` with `B_1 = −1/2`.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    NumberSequence::Bernoulli.values(n_max)
}
