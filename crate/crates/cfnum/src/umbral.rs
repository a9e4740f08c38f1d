//! Umbral calculus: linear functionals, Sheffer sequences, and the central
//! factorial connection coefficients attached to an arbitrary polynomial
//! sequence.
//!
//! A truncated series `f` acts on polynomials two ways: as a *functional*
//! with `⟨f | xⁿ⟩ = n!·[tⁿ]f` ([`functional_apply`]), and as an *operator*
//! where `tᵏ` differentiates `k` times ([`apply_operator`]). A Sheffer
//! sequence is described by an invertible/delta pair `(g, f)` and generated
//! through the conjugate representation, which keeps everything univariate.
//!
//! For a polynomial sequence `P = {p_n}` with `p_0 = 1` and `deg p_n = n`,
//! the associated triangles expand `p_n` in central factorials
//! (`p_n = Σ_k T2(n,k;P) x^[k]`, second kind) and central factorials in the
//! sequence (`x^[n] = Σ_k T1(n,k;P) p_k`, first kind). Each kind has several
//! computation routes with different preconditions; [`assoc_t2`] and
//! [`assoc_t1`] select one explicitly, and the identity suite checks that
//! routes agree wherever more than one applies.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use once_cell::sync::Lazy;

use crate::default_order;
use crate::error::{Error, Result};
use crate::poly::{Basis, Polynomial};
use crate::rational::{binomial, factorial, int, rat, Rational};
use crate::series::{two_sinh_half, TruncatedSeries};
use crate::triangles::{bernoulli_numbers, triangle, NumberSequence, TriangleFamily};

/// Applies the functional determined by `f` to `p`, using
/// `⟨f | xⁿ⟩ = n!·[tⁿ]f`.
///
/// Errors with [`Error::OrderTooSmall`] when the polynomial's degree exceeds
/// the truncation order: the missing coefficients could contribute, so the
/// pairing is refused rather than silently truncated.
pub fn functional_apply(f: &TruncatedSeries, p: &Polynomial) -> Result<Rational> {
    if p.degree() > f.order() {
        return Err(Error::OrderTooSmall {
            needed: p.degree(),
            order: f.order(),
        });
    }
    Ok((0..=p.degree())
        .map(|k| f.coeff(k) * factorial(k) * p.coeff(k))
        .sum())
}

/// Applies `f(t)` to `p(x)` as an operator, where `tᵏ` acts as the `k`-th
/// derivative: `f(t)·p = Σ_k [tᵏ]f · p⁽ᵏ⁾`.
///
/// Like [`functional_apply`], refuses truncations too short to see every
/// term that acts on `p`.
pub fn apply_operator(f: &TruncatedSeries, p: &Polynomial) -> Result<Polynomial> {
    if p.degree() > f.order() {
        return Err(Error::OrderTooSmall {
            needed: p.degree(),
            order: f.order(),
        });
    }
    let mut acc = Polynomial::zero();
    let mut derivative = p.clone();
    for k in 0..=p.degree() {
        acc = &acc + &derivative.scale(&f.coeff(k));
        derivative = derivative.derivative();
    }
    Ok(acc)
}

/// An invertible series `g` (nonzero constant term) together with a delta
/// series `f` (zero constant term, nonzero linear term), both truncated at
/// the same order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShefferPair {
    g: TruncatedSeries,
    f: TruncatedSeries,
}

impl ShefferPair {
    pub fn new(g: TruncatedSeries, f: TruncatedSeries) -> Result<Self> {
        if g.coeff(0).is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        if !f.coeff(0).is_zero() || f.coeff(1).is_zero() {
            return Err(Error::NotCompInvertible);
        }
        let order = g.order().min(f.order());
        Ok(ShefferPair {
            g: g.truncate(order),
            f: f.truncate(order),
        })
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn f(&self) -> &TruncatedSeries {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// Whether the invertible part is the constant series `1`, i.e. the
    /// sequence is an associated one rather than a general Sheffer one.
    pub fn g_is_one(&self) -> bool {
        self.g == TruncatedSeries::one(self.g.order())
    }
}

/// Generates `s_0 ..= s_{n_max}` for the pair by the conjugate
/// representation: the coefficient of `xʲ` in `s_n` is
/// `n!·[tⁿ] (1/g(f̄)) · f̄ʲ/j!` with `f̄` the compositional inverse of `f`.
pub fn sheffer_polys(pair: &ShefferPair, n_max: usize) -> Result<Vec<Polynomial>> {
    if pair.order() < n_max {
        return Err(Error::OrderTooSmall {
            needed: n_max,
            order: pair.order(),
        });
    }
    let g = pair.g().truncate(n_max);
    let f = pair.f().truncate(n_max);
    let fbar = f.comp_inverse()?;
    let mut column = g.compose(&fbar)?.reciprocal()?;
    let mut rows: Vec<Vec<Rational>> = (0..=n_max)
        .map(|n| vec![Rational::zero(); n + 1])
        .collect();
    for j in 0..=n_max {
        for n in j..=n_max {
            rows[n][j] = column.coeff(n) * factorial(n);
        }
        if j < n_max {
            column = (&column * &fbar)
                .truncate(n_max)
                .scale(&rat(1, j as i64 + 1));
        }
    }
    let polys: Vec<Polynomial> = rows.into_iter().map(Polynomial::new).collect();
    assert_eq!(polys[0], Polynomial::one(), "s_0 must be 1");
    for (n, p) in polys.iter().enumerate() {
        assert_eq!(p.degree(), n, "s_n must have degree n");
    }
    Ok(polys)
}

/// One step of the standard Sheffer recurrence,
/// `s_{n+1} = (x − g′(t)/g(t)) · (1/f′(t)) · s_n`.
///
/// This shares no machinery with [`sheffer_polys`], so agreement between the
/// two is a real cross-check on generation, not a tautology.
pub fn sheffer_recurrence_step(pair: &ShefferPair, s_n: &Polynomial) -> Result<Polynomial> {
    if pair.order() < s_n.degree() + 2 {
        return Err(Error::OrderTooSmall {
            needed: s_n.degree() + 2,
            order: pair.order(),
        });
    }
    let f_prime = pair.f().derivative();
    let lowered = apply_operator(&f_prime.reciprocal()?, s_n)?;
    let g_ratio = (&pair.g().derivative() * &pair.g().truncate(pair.order() - 1).reciprocal()?)
        .truncate(pair.order() - 1);
    let correction = apply_operator(&g_ratio, &lowered)?;
    Ok(&lowered.mul_by_x_pow(1) - &correction)
}

/// A named recipe for a Sheffer pair, materialisable at any truncation
/// order. Keeping recipes symbolic (rather than fixed truncations) lets the
/// same sequence spec serve polynomial generation and series-based routes at
/// whatever order each needs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PairRecipe {
    /// `(1, t)` — plain powers.
    Monomial,
    /// `(1, (e^{λt} − 1)/λ)` — degenerate falling factorials.
    FallingLambda(Rational),
    /// `(1, 1 − e^{−t})` — rising factorials.
    Rising,
    /// `(1, (1 − e^{−λt})/λ)` — degenerate rising factorials.
    RisingLambda(Rational),
    /// `(1, 2 log((t + √(t²+4))/2))` — central Bell polynomials, whose
    /// coefficient matrix is the second-kind central factorial triangle.
    CentralBell,
    /// `(1, log_λ(((t + √(t²+4))/2)²))` — degenerate central Bell.
    CentralBellLambda(Rational),
    /// `(1, (e^{λt/2} − e^{−λt/2})/λ)` — degenerate central factorials.
    CentralLambda(Rational),
    /// `(1, t/(1 + t))` — Lah-Bell polynomials.
    LahBell,
    /// `(1, (e^{λt} − 1)/(λ + e^{λt} − 1))` — degenerate Lah-Bell.
    LahBellLambda(Rational),
    /// `(1, log(1 + t))` — Bell polynomials.
    Bell,
    /// `(1, log_λ(1 + t))` — partially degenerate Bell.
    BellPartialLambda(Rational),
    /// `(1, log_λ(1 + (e^{λt} − 1)/λ))` — fully degenerate Bell.
    BellFullLambda(Rational),
    /// `(1, (eᵗ − 1)/(eᵗ + 1))` — Mittag-Leffler polynomials.
    MittagLeffler,
    /// `(1, t/(t − 1))` — Laguerre polynomials of order −1.
    Laguerre,
    /// `((eᵗ − 1)/t, t)` — Bernoulli polynomials.
    Bernoulli,
    /// `((eᵗ + 1)/2, t)` — Euler polynomials.
    Euler,
    /// `(e^{−(s/r)t}, e^{t/r} − 1)` — scaled-shifted falling factorials
    /// `(rx + s)_n`, requires `r ≠ 0`.
    GouldHopper { r: Rational, s: Rational },
    /// `(t/(eᵗ − 1), eᵗ − 1)` — Bernoulli polynomials of the second kind.
    Bernoulli2nd,
    /// `(e^{a(eᵗ−1)}, a(eᵗ − 1))` — Poisson-Charlier polynomials,
    /// requires `a ≠ 0`.
    PoissonCharlier(Rational),
    /// Explicit truncations supplied by the caller.
    Custom(ShefferPair),
}

impl PairRecipe {
    /// Materialises the pair at the given truncation order.
    pub fn pair(&self, order: usize) -> Result<ShefferPair> {
        let one = TruncatedSeries::one(order);
        let (g, f) = match self {
            PairRecipe::Monomial => (one, TruncatedSeries::t(order)),
            PairRecipe::FallingLambda(l) => {
                let f = (&TruncatedSeries::exp_ct(l, order) - &one).scale(&nonzero(l, "lambda")?.recip());
                (one.clone(), f)
            }
            PairRecipe::Rising => {
                let f = &one - &TruncatedSeries::exp_ct(&int(-1), order);
                (one.clone(), f)
            }
            PairRecipe::RisingLambda(l) => {
                let f = (&one - &TruncatedSeries::exp_ct(&-nonzero(l, "lambda")?, order))
                    .scale(&l.recip());
                (one.clone(), f)
            }
            PairRecipe::CentralBell => (one, TriangleFamily::T1.base_series(order)?),
            PairRecipe::CentralBellLambda(l) => (
                one,
                TriangleFamily::T1Lambda(nonzero(l, "lambda")?).base_series(order)?,
            ),
            PairRecipe::CentralLambda(l) => (
                one,
                TriangleFamily::R2Lambda(nonzero(l, "lambda")?).base_series(order)?,
            ),
            PairRecipe::LahBell => {
                let denom = &one + &TruncatedSeries::t(order);
                let f = (&TruncatedSeries::t(order) * &denom.reciprocal()?).truncate(order);
                (one.clone(), f)
            }
            PairRecipe::LahBellLambda(l) => {
                let shifted = &TruncatedSeries::exp_ct(&nonzero(l, "lambda")?, order) - &one;
                let denom = &shifted + &TruncatedSeries::constant(l.clone(), order);
                let f = (&shifted * &denom.reciprocal()?).truncate(order);
                (one.clone(), f)
            }
            PairRecipe::Bell => (one, TriangleFamily::S1.base_series(order)?),
            PairRecipe::BellPartialLambda(l) => (
                one,
                TriangleFamily::S1Lambda(nonzero(l, "lambda")?).base_series(order)?,
            ),
            PairRecipe::BellFullLambda(l) => {
                let l = nonzero(l, "lambda")?;
                let inner = (&TruncatedSeries::exp_ct(&l, order) - &one).scale(&l.recip());
                let f = (&one + &inner).degenerate_log(&l)?;
                (one.clone(), f)
            }
            PairRecipe::MittagLeffler => {
                let e = TruncatedSeries::exp_ct(&int(1), order);
                let f = (&(&e - &one) * &(&e + &one).reciprocal()?).truncate(order);
                (one.clone(), f)
            }
            PairRecipe::Laguerre => {
                // t/(t − 1) = −t/(1 − t)
                let denom = &one - &TruncatedSeries::t(order);
                let f = (&TruncatedSeries::t(order) * &denom.reciprocal()?)
                    .truncate(order)
                    .scale(&int(-1));
                (one.clone(), f)
            }
            PairRecipe::Bernoulli => {
                let g = (&TruncatedSeries::exp_ct(&int(1), order + 1) - &TruncatedSeries::one(order + 1))
                    .div_by_t_pow(1);
                (g, TruncatedSeries::t(order))
            }
            PairRecipe::Euler => {
                let g = (&TruncatedSeries::exp_ct(&int(1), order) + &one).scale(&rat(1, 2));
                (g, TruncatedSeries::t(order))
            }
            PairRecipe::GouldHopper { r, s } => {
                let r = nonzero(r, "r")?;
                let g = TruncatedSeries::exp_ct(&(-(s / &r)), order);
                let f = &TruncatedSeries::exp_ct(&r.recip(), order) - &one;
                (g, f)
            }
            PairRecipe::Bernoulli2nd => {
                let g = NumberSequence::Bernoulli.egf(order);
                let f = &TruncatedSeries::exp_ct(&int(1), order) - &one;
                (g, f)
            }
            PairRecipe::PoissonCharlier(a) => {
                let f = (&TruncatedSeries::exp_ct(&int(1), order) - &one)
                    .scale(&nonzero(a, "a")?);
                let g = f.exp_series()?;
                (g, f)
            }
            PairRecipe::Custom(pair) => {
                if pair.order() < order {
                    return Err(Error::OrderTooSmall {
                        needed: order,
                        order: pair.order(),
                    });
                }
                (pair.g().truncate(order), pair.f().truncate(order))
            }
        };
        ShefferPair::new(g, f)
    }
}

fn nonzero(value: &Rational, name: &'static str) -> Result<Rational> {
    if value.is_zero() {
        Err(Error::InvalidParam {
            name,
            value: value.to_string(),
            reason: "must be nonzero",
        })
    } else {
        Ok(value.clone())
    }
}

/// Named coefficient-row constructions for sequences that are not generated
/// from a Sheffer pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DirectRows {
    /// `p_n = Σ_k TL1(n,k) xᵏ`, rows of the first-kind central-Lah mix.
    CentralLahFirst,
    /// `p_n = Σ_k TL2(n,k) xᵏ`, rows of the second-kind central-Lah mix.
    CentralLahSecond,
    /// `p_n = (2/(n+2)) Σ_{m=0}^{n−2} C(n+2,m) B_{n−m} B_m(x) + (n+1) B_n(x)`,
    /// a fixed Bernoulli combination equal to the convolution
    /// `Σ_k B_k(x) B_{n−k}(x)`.
    BernoulliPairSum,
}

/// How a polynomial sequence is produced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SequenceRule {
    /// Conjugate-representation generation from a Sheffer pair.
    Sheffer(PairRecipe),
    /// Rows supplied by a named construction.
    Direct(DirectRows),
    /// Cauchy product of two sequences: `p_n = Σ_k left_k · right_{n−k}`.
    Product(Box<PolySequenceSpec>, Box<PolySequenceSpec>),
    /// Multiplication ladder over an inner sequence:
    /// `p̄_n = x^w · inner_{n−w}` for `n ≥ w`, plain powers below.
    XBarOf {
        inner: Box<PolySequenceSpec>,
        power: usize,
    },
}

/// A named polynomial sequence with `p_0 = 1` and `deg p_n = n`, the object
/// the associated triangles are built from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySequenceSpec {
    name: String,
    params: Vec<(&'static str, Rational)>,
    rule: SequenceRule,
}

impl PolySequenceSpec {
    pub fn new(
        name: impl Into<String>,
        params: Vec<(&'static str, Rational)>,
        rule: SequenceRule,
    ) -> Self {
        PolySequenceSpec {
            name: name.into(),
            params,
            rule,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[(&'static str, Rational)] {
        &self.params
    }

    pub fn rule(&self) -> &SequenceRule {
        &self.rule
    }

    /// The Sheffer pair at the requested order, or `None` when the sequence
    /// is not produced by one.
    pub fn pair(&self, order: usize) -> Result<Option<ShefferPair>> {
        match &self.rule {
            SequenceRule::Sheffer(recipe) => Ok(Some(recipe.pair(order)?)),
            _ => Ok(None),
        }
    }

    /// `p_0 ..= p_{n_max}`, memoised per `(spec, n_max)`; generation asserts
    /// `p_0 = 1` and `deg p_n = n`.
    pub fn polys(&self, n_max: usize) -> Result<Arc<Vec<Polynomial>>> {
        static CACHE: Lazy<RwLock<HashMap<(PolySequenceSpec, usize), Arc<Vec<Polynomial>>>>> =
            Lazy::new(|| RwLock::new(HashMap::new()));

        let key = (self.clone(), n_max);
        if let Some(hit) = CACHE.read().expect("poly cache poisoned").get(&key) {
            return Ok(hit.clone());
        }
        let polys = self.compute_polys(n_max)?;
        assert_eq!(polys[0], Polynomial::one(), "p_0 must be 1");
        for (n, p) in polys.iter().enumerate() {
            assert_eq!(p.degree(), n, "p_n must have degree n in {}", self.name);
        }
        let arc = Arc::new(polys);
        let mut cache = CACHE.write().expect("poly cache poisoned");
        Ok(cache.entry(key).or_insert(arc).clone())
    }

    fn compute_polys(&self, n_max: usize) -> Result<Vec<Polynomial>> {
        match &self.rule {
            SequenceRule::Sheffer(recipe) => sheffer_polys(&recipe.pair(n_max)?, n_max),
            SequenceRule::Direct(DirectRows::CentralLahFirst) => {
                Ok(rows_to_polys(triangle(&TriangleFamily::TL1, n_max)?.rows()))
            }
            SequenceRule::Direct(DirectRows::CentralLahSecond) => {
                Ok(rows_to_polys(triangle(&TriangleFamily::TL2, n_max)?.rows()))
            }
            SequenceRule::Direct(DirectRows::BernoulliPairSum) => {
                let bernoulli = sheffer_polys(&PairRecipe::Bernoulli.pair(n_max)?, n_max);
                let bernoulli = bernoulli?;
                let numbers = bernoulli_numbers(n_max);
                Ok((0..=n_max)
                    .map(|n| {
                        let mut p = bernoulli[n].scale(&int(n as i64 + 1));
                        if n >= 2 {
                            let outer = rat(2, n as i64 + 2);
                            for m in 0..=n - 2 {
                                let w = &outer * binomial(n + 2, m) * &numbers[n - m];
                                p = &p + &bernoulli[m].scale(&w);
                            }
                        }
                        p
                    })
                    .collect())
            }
            SequenceRule::Product(left, right) => {
                let a = left.polys(n_max)?;
                let b = right.polys(n_max)?;
                Ok((0..=n_max)
                    .map(|n| {
                        (0..=n)
                            .map(|k| &a[k] * &b[n - k])
                            .fold(Polynomial::zero(), |acc, q| &acc + &q)
                    })
                    .collect())
            }
            SequenceRule::XBarOf { inner, power } => {
                let w = *power;
                let low = n_max.min(w.saturating_sub(1));
                let mut polys: Vec<Polynomial> = (0..=low)
                    .map(|n| Polynomial::monomial(int(1), n))
                    .collect();
                if n_max >= w {
                    let inner_polys = inner.polys(n_max - w)?;
                    for n in w..=n_max {
                        polys.push(inner_polys[n - w].mul_by_x_pow(w));
                    }
                }
                Ok(polys)
            }
        }
    }
}

impl fmt::Display for PolySequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for (name, value) in &self.params {
            write!(f, " {name}={value}")?;
        }
        Ok(())
    }
}

fn rows_to_polys(rows: &[Vec<Rational>]) -> Vec<Polynomial> {
    rows.iter().map(|row| Polynomial::new(row.clone())).collect()
}

/// Default parameter values for the sequence catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogParams {
    pub lambda: Rational,
    pub r: Rational,
    pub s: Rational,
    pub a: Rational,
}

impl Default for CatalogParams {
    fn default() -> Self {
        CatalogParams {
            lambda: rat(1, 3),
            r: int(2),
            s: int(1),
            a: rat(1, 2),
        }
    }
}

/// Every sequence the catalog knows, with the parameters each one takes.
pub const CATALOG: &[(&str, &[&str])] = &[
    ("monomials", &[]),
    ("falling_lambda", &["lambda"]),
    ("rising", &[]),
    ("rising_lambda", &["lambda"]),
    ("tlb1", &[]),
    ("tlb2", &[]),
    ("central_bell", &[]),
    ("central_bell_lambda", &["lambda"]),
    ("central_lambda", &["lambda"]),
    ("lah_bell", &[]),
    ("lah_bell_lambda", &["lambda"]),
    ("bell", &[]),
    ("bell_partial_lambda", &["lambda"]),
    ("bell_full_lambda", &["lambda"]),
    ("mittag_leffler", &[]),
    ("laguerre", &[]),
    ("bernoulli", &[]),
    ("euler", &[]),
    ("gould_hopper", &["r", "s"]),
    ("bernoulli2", &[]),
    ("poisson_charlier", &["a"]),
    ("bernoulli_product", &[]),
];

/// Builds the named catalog sequence with the given parameters.
pub fn catalog(name: &str, params: &CatalogParams) -> Result<PolySequenceSpec> {
    let l = &params.lambda;
    let with_lambda = |recipe: PairRecipe| {
        PolySequenceSpec::new(
            name,
            vec![("lambda", l.clone())],
            SequenceRule::Sheffer(recipe),
        )
    };
    let plain =
        |recipe: PairRecipe| PolySequenceSpec::new(name, Vec::new(), SequenceRule::Sheffer(recipe));
    let spec = match name {
        "monomials" => plain(PairRecipe::Monomial),
        "falling_lambda" => with_lambda(PairRecipe::FallingLambda(l.clone())),
        "rising" => plain(PairRecipe::Rising),
        "rising_lambda" => with_lambda(PairRecipe::RisingLambda(l.clone())),
        "tlb1" => PolySequenceSpec::new(
            name,
            Vec::new(),
            SequenceRule::Direct(DirectRows::CentralLahFirst),
        ),
        "tlb2" => PolySequenceSpec::new(
            name,
            Vec::new(),
            SequenceRule::Direct(DirectRows::CentralLahSecond),
        ),
        "central_bell" => plain(PairRecipe::CentralBell),
        "central_bell_lambda" => with_lambda(PairRecipe::CentralBellLambda(l.clone())),
        "central_lambda" => with_lambda(PairRecipe::CentralLambda(l.clone())),
        "lah_bell" => plain(PairRecipe::LahBell),
        "lah_bell_lambda" => with_lambda(PairRecipe::LahBellLambda(l.clone())),
        "bell" => plain(PairRecipe::Bell),
        "bell_partial_lambda" => with_lambda(PairRecipe::BellPartialLambda(l.clone())),
        "bell_full_lambda" => with_lambda(PairRecipe::BellFullLambda(l.clone())),
        "mittag_leffler" => plain(PairRecipe::MittagLeffler),
        "laguerre" => plain(PairRecipe::Laguerre),
        "bernoulli" => plain(PairRecipe::Bernoulli),
        "euler" => plain(PairRecipe::Euler),
        "gould_hopper" => PolySequenceSpec::new(
            name,
            vec![("r", params.r.clone()), ("s", params.s.clone())],
            SequenceRule::Sheffer(PairRecipe::GouldHopper {
                r: params.r.clone(),
                s: params.s.clone(),
            }),
        ),
        "bernoulli2" => plain(PairRecipe::Bernoulli2nd),
        "poisson_charlier" => PolySequenceSpec::new(
            name,
            vec![("a", params.a.clone())],
            SequenceRule::Sheffer(PairRecipe::PoissonCharlier(params.a.clone())),
        ),
        "bernoulli_product" => PolySequenceSpec::new(
            name,
            Vec::new(),
            SequenceRule::Direct(DirectRows::BernoulliPairSum),
        ),
        _ => {
            return Err(Error::UnknownName {
                kind: "sequence",
                name: name.to_string(),
            })
        }
    };
    Ok(spec)
}

/// Which expansion an associated triangle holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AssocKind {
    /// `p_n = Σ_k T2(n,k;P) x^[k]`.
    SecondKind,
    /// `x^[n] = Σ_k T1(n,k;P) p_k`.
    FirstKind,
}

impl AssocKind {
    pub fn id(&self) -> &'static str {
        match self {
            AssocKind::SecondKind => "t2",
            AssocKind::FirstKind => "t1",
        }
    }
}

/// Computation routes for the second-kind expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum T2Route {
    /// `Σ_{l=k}^n T2(l,k) p_{n,l}` from the monomial coefficients; works for
    /// every sequence.
    Explicit,
    /// `Σ_{l=k}^n S2(l,k) · (shifted Taylor coefficient of p_n at −k/2)`;
    /// works for every sequence.
    Derivative,
    /// Column generating functions `(1/g(f̄)) (1/k!)(2 sinh(f̄/2))ᵏ`; only
    /// for sequences produced by a Sheffer pair.
    GenFunc,
}

impl T2Route {
    pub fn id(&self) -> &'static str {
        match self {
            T2Route::Explicit => "explicit",
            T2Route::Derivative => "derivative",
            T2Route::GenFunc => "genfunc",
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "explicit" => Ok(T2Route::Explicit),
            "derivative" => Ok(T2Route::Derivative),
            "genfunc" => Ok(T2Route::GenFunc),
            _ => Err(Error::UnknownName {
                kind: "second-kind route",
                name: name.to_string(),
            }),
        }
    }
}

impl Default for T2Route {
    fn default() -> Self {
        T2Route::Explicit
    }
}

/// Computation routes for the first-kind expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum T1Route {
    /// `(1/k!)⟨g·fᵏ | x^[n]⟩`; only for sequences produced by a Sheffer
    /// pair.
    Functional,
    /// Exact triangular back-substitution of `x^[n]` against
    /// `p_0, …, p_n`; works for every sequence and serves as the universal
    /// fallback the other routes are measured against.
    Solve,
    /// Column generating functions `(1/k!)(f(2 log((t+√(t²+4))/2)))ᵏ`; only
    /// for pairs whose invertible part is 1.
    GenFunc,
}

impl T1Route {
    pub fn id(&self) -> &'static str {
        match self {
            T1Route::Functional => "functional",
            T1Route::Solve => "solve",
            T1Route::GenFunc => "genfunc",
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "functional" => Ok(T1Route::Functional),
            "solve" => Ok(T1Route::Solve),
            "genfunc" => Ok(T1Route::GenFunc),
            _ => Err(Error::UnknownName {
                kind: "first-kind route",
                name: name.to_string(),
            }),
        }
    }
}

impl Default for T1Route {
    fn default() -> Self {
        T1Route::Solve
    }
}

/// Connection coefficients between a polynomial sequence and the central
/// factorials, one triangle per kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocTriangle {
    kind: AssocKind,
    spec: PolySequenceSpec,
    route: &'static str,
    n_max: usize,
    rows: Vec<Vec<Rational>>,
}

impl AssocTriangle {
    pub fn kind(&self) -> AssocKind {
        self.kind
    }

    pub fn spec(&self) -> &PolySequenceSpec {
        &self.spec
    }

    /// Id of the route that produced the entries.
    pub fn route(&self) -> &'static str {
        self.route
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

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

    fn from_rows(
        kind: AssocKind,
        spec: &PolySequenceSpec,
        route: &'static str,
        rows: Vec<Vec<Rational>>,
    ) -> Self {
        let n_max = rows.len() - 1;
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} has wrong length");
        }
        AssocTriangle {
            kind,
            spec: spec.clone(),
            route,
            n_max,
            rows,
        }
    }
}

/// Second-kind coefficients of `spec`: `p_n = Σ_k T2(n,k;P) x^[k]`.
///
/// `order` bounds series truncations on the generating-function route
/// (`None` means the library default for `n_max`); the polynomial routes
/// ignore it.
pub fn assoc_t2(
    spec: &PolySequenceSpec,
    n_max: usize,
    route: T2Route,
    order: Option<usize>,
) -> Result<AssocTriangle> {
    let rows = match route {
        T2Route::Explicit => {
            let t2 = triangle(&TriangleFamily::T2, n_max)?;
            let polys = spec.polys(n_max)?;
            (0..=n_max)
                .map(|n| {
                    (0..=n)
                        .map(|k| (k..=n).map(|l| t2.entry(l, k) * polys[n].coeff(l)).sum())
                        .collect()
                })
                .collect()
        }
        T2Route::Derivative => {
            let s2 = triangle(&TriangleFamily::S2, n_max)?;
            let polys = spec.polys(n_max)?;
            (0..=n_max)
                .map(|n| {
                    (0..=n)
                        .map(|k| {
                            let at = rat(-(k as i64), 2);
                            (k..=n)
                                .map(|l| s2.entry(l, k) * polys[n].taylor_coeff(&at, l))
                                .sum()
                        })
                        .collect()
                })
                .collect()
        }
        T2Route::GenFunc => {
            let order = order.unwrap_or_else(|| default_order(n_max));
            if order < n_max {
                return Err(Error::OrderTooSmall {
                    needed: n_max,
                    order,
                });
            }
            let pair = spec.pair(order)?.ok_or(Error::RouteUnavailable {
                route: "genfunc",
                sequence: spec.name().to_string(),
                reason: "this route needs a Sheffer pair generating the sequence",
            })?;
            let fbar = pair.f().comp_inverse()?;
            let prefactor = pair.g().compose(&fbar)?.reciprocal()?;
            let base = two_sinh_half(order).compose(&fbar)?;
            egf_column_rows(&prefactor, &base, n_max)
        }
    };
    Ok(AssocTriangle::from_rows(
        AssocKind::SecondKind,
        spec,
        route.id(),
        rows,
    ))
}

/// First-kind coefficients of `spec`: `x^[n] = Σ_k T1(n,k;P) p_k`.
///
/// `order` bounds series truncations on the functional and
/// generating-function routes (`None` means the library default); the solve
/// route ignores it.
pub fn assoc_t1(
    spec: &PolySequenceSpec,
    n_max: usize,
    route: T1Route,
    order: Option<usize>,
) -> Result<AssocTriangle> {
    let rows = match route {
        T1Route::Solve => {
            let polys = spec.polys(n_max)?;
            (0..=n_max)
                .map(|n| expand_in_sequence(&Basis::Central.element(n), &polys))
                .collect()
        }
        T1Route::Functional => {
            let order = order.unwrap_or_else(|| default_order(n_max));
            if order < n_max {
                return Err(Error::OrderTooSmall {
                    needed: n_max,
                    order,
                });
            }
            let pair = spec.pair(order)?.ok_or(Error::RouteUnavailable {
                route: "functional",
                sequence: spec.name().to_string(),
                reason: "this route needs a Sheffer pair generating the sequence",
            })?;
            // Column k applies the functional g·f^k/k! to x^[n].
            let mut column = pair.g().clone();
            let mut columns = Vec::with_capacity(n_max + 1);
            for k in 0..=n_max {
                columns.push(column.clone());
                if k < n_max {
                    column = (&column * pair.f())
                        .truncate(order)
                        .scale(&rat(1, k as i64 + 1));
                }
            }
            let centrals: Vec<Polynomial> =
                (0..=n_max).map(|n| Basis::Central.element(n)).collect();
            (0..=n_max)
                .map(|n| {
                    (0..=n)
                        .map(|k| functional_apply(&columns[k], &centrals[n]))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?
        }
        T1Route::GenFunc => {
            let order = order.unwrap_or_else(|| default_order(n_max));
            if order < n_max {
                return Err(Error::OrderTooSmall {
                    needed: n_max,
                    order,
                });
            }
            let pair = spec.pair(order)?.ok_or(Error::RouteUnavailable {
                route: "genfunc",
                sequence: spec.name().to_string(),
                reason: "this route needs a Sheffer pair generating the sequence",
            })?;
            if !pair.g_is_one() {
                return Err(Error::RouteUnavailable {
                    route: "genfunc",
                    sequence: spec.name().to_string(),
                    reason: "the first-kind generating function exists only when the invertible part is 1",
                });
            }
            let base = central_log(pair.f())?;
            egf_column_rows(&TruncatedSeries::one(order), &base, n_max)
        }
    };
    Ok(AssocTriangle::from_rows(
        AssocKind::FirstKind,
        spec,
        route.id(),
        rows,
    ))
}

/// Reads triangle rows off the generating functions
/// `prefactor · baseᵏ / k!`, exactly as [`crate::triangles::triangle_by_series`]
/// does for the classical families.
fn egf_column_rows(
    prefactor: &TruncatedSeries,
    base: &TruncatedSeries,
    n_max: usize,
) -> Vec<Vec<Rational>> {
    let mut column = prefactor.clone();
    let order = column.order();
    let mut rows: Vec<Vec<Rational>> = (0..=n_max)
        .map(|n| vec![Rational::zero(); n + 1])
        .collect();
    for k in 0..=n_max {
        for n in k..=n_max {
            rows[n][k] = column.coeff(n) * factorial(n);
        }
        if k < n_max {
            column = (&column * base).truncate(order).scale(&rat(1, k as i64 + 1));
        }
    }
    rows
}

/// Expands `target` in the sequence `polys` by back-substitution from the
/// top degree down, dividing by each leading coefficient; exact, and valid
/// for non-monic sequences as well.
fn expand_in_sequence(target: &Polynomial, polys: &[Polynomial]) -> Vec<Rational> {
    let degree = target.degree();
    let mut remainder = target.clone();
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for k in (0..=degree).rev() {
        let c = remainder.coeff(k) / polys[k].coeff(k);
        if !c.is_zero() {
            remainder = &remainder - &polys[k].scale(&c);
        }
        coeffs[k] = c;
    }
    assert!(
        remainder.is_zero(),
        "expansion left a nonzero remainder: {remainder}"
    );
    coeffs
}

/// Transports a delta series to the central side:
/// `f ↦ f(2 log((t+√(t²+4))/2))`.
pub fn central_log(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let arg = TriangleFamily::T1.base_series(f.order())?;
    f.compose(&arg)
}

/// Inverse transport: `f ↦ 2 sinh(f̄(t)/2)` with `f̄` the compositional
/// inverse of `f`; composing with [`central_log`] of the same series gives
/// back `t`.
pub fn central_exp(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let fbar = f.comp_inverse()?;
    two_sinh_half(f.order()).compose(&fbar)
}

/// First-kind coefficients for the Bernoulli pair-sum sequence by the
/// dedicated matrix construction: expand `x^[n]` over Bernoulli polynomials
/// (`γ_m = Σ_{l=m}^n C(l+1,m)/(l+1) · T1(n,l)`), then undo the fixed
/// Bernoulli combination by solving an upper-triangular system with
/// diagonal `1, 2, …, n+1`.
pub fn bernoulli_product_t1(n_max: usize) -> Result<AssocTriangle> {
    let spec = catalog("bernoulli_product", &CatalogParams::default())?;
    let t1 = triangle(&TriangleFamily::T1, n_max)?;
    let numbers = bernoulli_numbers(n_max);
    let rows = (0..=n_max)
        .map(|n| {
            let gamma: Vec<Rational> = (0..=n)
                .map(|m| {
                    (m..=n)
                        .map(|l| binomial(l + 1, m) * t1.entry(n, l) / int(l as i64 + 1))
                        .sum()
                })
                .collect();
            // Back-substitute Γ = A·S with A upper triangular: A[m][m] = m+1,
            // A[m][k] = 2·C(k+2,m)·B_{k−m}/(k+2) for k ≥ m+2, zero otherwise.
            let mut solution = vec![Rational::zero(); n + 1];
            for m in (0..=n).rev() {
                let mut residue = gamma[m].clone();
                for k in m + 2..=n {
                    let eps = int(2) * binomial(k + 2, m) * &numbers[k - m] / int(k as i64 + 2);
                    residue -= eps * &solution[k];
                }
                solution[m] = residue / int(m as i64 + 1);
            }
            solution
        })
        .collect();
    Ok(AssocTriangle::from_rows(
        AssocKind::FirstKind,
        &spec,
        "matrix",
        rows,
    ))
}
