//! Python bindings for the exact central-factorial stack.
//!
//! Every number crosses the boundary as an exact rational string `p/q`
//! (or `p` when the denominator is 1) — feed them to `fractions.Fraction`
//! on the Python side. The λ parameter is spelled `lam` because `lambda`
//! is a Python keyword.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use cfnum::error::Error;
use cfnum::poly::{change_basis, Basis};
use cfnum::rational::{parse_rational, Rational};
use cfnum::triangles::{triangle as build_triangle, triangle_cross_checked, TriangleFamily};
use cfnum::umbral::{
    assoc_t1, assoc_t2, catalog, central_exp, central_log, CatalogParams, T1Route, T2Route,
    CATALOG,
};

fn to_py_err(err: Error) -> PyErr {
    match err {
        // A cross-check mismatch means the library contradicted itself,
        // which no argument change can fix.
        Error::CrossCheckMismatch { .. } => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn parse_param(name: &str, value: Option<&str>) -> PyResult<Option<Rational>> {
    value
        .map(|text| {
            parse_rational(text)
                .map_err(|_| PyValueError::new_err(format!("{name} must be a rational p/q, got {text:?}")))
        })
        .transpose()
}

fn catalog_params(
    lam: Option<&str>,
    r: Option<&str>,
    s: Option<&str>,
    a: Option<&str>,
) -> PyResult<CatalogParams> {
    let mut params = CatalogParams::default();
    if let Some(value) = parse_param("lam", lam)? {
        params.lambda = value;
    }
    if let Some(value) = parse_param("r", r)? {
        params.r = value;
    }
    if let Some(value) = parse_param("s", s)? {
        params.s = value;
    }
    if let Some(value) = parse_param("a", a)? {
        params.a = value;
    }
    Ok(params)
}

fn string_rows(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|row| row.iter().map(Rational::to_string).collect())
        .collect()
}

/// Rows 0..=n_max of a classical or degenerate number triangle. By default
/// the rows are cross-checked against an independent construction route
/// before being returned; pass crosscheck=False to skip that.
#[pyfunction]
#[pyo3(signature = (family, n_max, *, lam=None, r=None, s=None, crosscheck=true))]
fn triangle(
    family: &str,
    n_max: usize,
    lam: Option<&str>,
    r: Option<&str>,
    s: Option<&str>,
    crosscheck: bool,
) -> PyResult<Vec<Vec<String>>> {
    let family = TriangleFamily::by_name(
        family,
        parse_param("lam", lam)?.as_ref(),
        parse_param("r", r)?.as_ref(),
        parse_param("s", s)?.as_ref(),
    )
    .map_err(to_py_err)?;
    let tri = if crosscheck {
        triangle_cross_checked(&family, n_max)
    } else {
        build_triangle(&family, n_max)
    }
    .map_err(to_py_err)?;
    Ok(string_rows(tri.rows()))
}

/// Rows 0..=n_max of the central factorial numbers associated with a catalog
/// sequence. `kind` is "t2" (sequence → central factorials) or "t1" (central
/// factorials → sequence); `route` picks the computation path (defaults:
/// "explicit" for t2, "solve" for t1).
#[pyfunction]
#[pyo3(signature = (kind, sequence, n_max, *, route=None, order=None, lam=None, r=None, s=None, a=None))]
#[allow(clippy::too_many_arguments)]
fn assoc(
    kind: &str,
    sequence: &str,
    n_max: usize,
    route: Option<&str>,
    order: Option<usize>,
    lam: Option<&str>,
    r: Option<&str>,
    s: Option<&str>,
    a: Option<&str>,
) -> PyResult<Vec<Vec<String>>> {
    let spec = catalog(sequence, &catalog_params(lam, r, s, a)?).map_err(to_py_err)?;
    let tri = match kind {
        "t2" => {
            let route = match route {
                Some(name) => T2Route::by_name(name).map_err(to_py_err)?,
                None => T2Route::default(),
            };
            assoc_t2(&spec, n_max, route, order).map_err(to_py_err)?
        }
        "t1" => {
            let route = match route {
                Some(name) => T1Route::by_name(name).map_err(to_py_err)?,
                None => T1Route::default(),
            };
            assoc_t1(&spec, n_max, route, order).map_err(to_py_err)?
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "kind must be \"t1\" or \"t2\", got {other:?}"
            )))
        }
    };
    Ok(string_rows(tri.rows()))
}

/// Convert polynomial coefficients (ascending degree) between bases:
/// monomial, falling, rising, central, falling_lambda, rising_lambda,
/// central_lambda.
#[pyfunction]
#[pyo3(signature = (from_basis, to_basis, coeffs, *, lam=None))]
fn convert(
    from_basis: &str,
    to_basis: &str,
    coeffs: Vec<String>,
    lam: Option<&str>,
) -> PyResult<Vec<String>> {
    let lam = parse_param("lam", lam)?;
    let from = Basis::by_name(from_basis, lam.as_ref()).map_err(to_py_err)?;
    let to = Basis::by_name(to_basis, lam.as_ref()).map_err(to_py_err)?;
    let parsed = coeffs
        .iter()
        .map(|text| parse_rational(text))
        .collect::<Result<Vec<_>, _>>()
        .map_err(to_py_err)?;
    Ok(change_basis(&parsed, &from, &to)
        .iter()
        .map(Rational::to_string)
        .collect())
}

/// The first n_max + 1 polynomials of a catalog sequence, each as its
/// monomial coefficients in ascending degree.
#[pyfunction]
#[pyo3(signature = (name, n_max, *, lam=None, r=None, s=None, a=None))]
fn sequence_polynomials(
    name: &str,
    n_max: usize,
    lam: Option<&str>,
    r: Option<&str>,
    s: Option<&str>,
    a: Option<&str>,
) -> PyResult<Vec<Vec<String>>> {
    let spec = catalog(name, &catalog_params(lam, r, s, a)?).map_err(to_py_err)?;
    let polys = spec.polys(n_max).map_err(to_py_err)?;
    Ok(polys
        .iter()
        .map(|p| p.coeffs().iter().map(Rational::to_string).collect())
        .collect())
}

/// Transport a catalog sequence's delta series: returns the coefficient
/// lists (f, fbar, lc, ec) up to `order`, where fbar is the compositional
/// inverse, lc the central-logarithm transport, and ec the
/// central-exponential transport.
#[pyfunction]
#[pyo3(signature = (name, order=16, *, lam=None, r=None, s=None, a=None))]
fn series_transport(
    name: &str,
    order: usize,
    lam: Option<&str>,
    r: Option<&str>,
    s: Option<&str>,
    a: Option<&str>,
) -> PyResult<(Vec<String>, Vec<String>, Vec<String>, Vec<String>)> {
    let spec = catalog(name, &catalog_params(lam, r, s, a)?).map_err(to_py_err)?;
    let pair = spec.pair(order).map_err(to_py_err)?.ok_or_else(|| {
        PyValueError::new_err(format!(
            "sequence {name:?} is not defined by a generating-function pair"
        ))
    })?;
    let strings = |series: &cfnum::series::TruncatedSeries| -> Vec<String> {
        series.coeffs().iter().map(Rational::to_string).collect()
    };
    let f = pair.f();
    let fbar = f.comp_inverse().map_err(to_py_err)?;
    let lc = central_log(f).map_err(to_py_err)?;
    let ec = central_exp(f).map_err(to_py_err)?;
    Ok((strings(f), strings(&fbar), strings(&lc), strings(&ec)))
}

/// Run the identity verification suite and return its report as a JSON
/// string (the same document the command-line `verify` emits).
#[pyfunction]
#[pyo3(signature = (suite="all", n_max=6, trials=25, seed=42))]
fn verify_report(suite: &str, n_max: usize, trials: usize, seed: u64) -> PyResult<String> {
    let filter = cfnum::identity::SuiteFilter::parse(suite).map_err(to_py_err)?;
    let report = cfnum::identity::run_suite(&filter, n_max, trials, seed).map_err(to_py_err)?;
    serde_json::to_string_pretty(&report)
        .map_err(|err| PyRuntimeError::new_err(format!("report serialization failed: {err}")))
}

/// The catalog: a list of (sequence name, [required parameter names]).
#[pyfunction]
fn catalog_sequences() -> Vec<(String, Vec<String>)> {
    CATALOG
        .iter()
        .map(|(name, params)| {
            (
                name.to_string(),
                params.iter().map(|p| p.to_string()).collect(),
            )
        })
        .collect()
}

#[pymodule]
fn cfnum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(triangle, m)?)?;
    m.add_function(wrap_pyfunction!(assoc, m)?)?;
    m.add_function(wrap_pyfunction!(convert, m)?)?;
    m.add_function(wrap_pyfunction!(sequence_polynomials, m)?)?;
    m.add_function(wrap_pyfunction!(series_transport, m)?)?;
    m.add_function(wrap_pyfunction!(verify_report, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_sequences, m)?)?;
    Ok(())
}
