//! Python bindings: thin JSON-in / JSON-out wrappers over the core crate,
//! so Python callers use the same payload formats as the CLI.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

use ksmooth_core::hilbert;
use ksmooth_core::io;
use ksmooth_core::operator::{self, Operator};
use ksmooth_core::oracle;
use ksmooth_core::scalar::rat_from_str;
use ksmooth_core::space::{Scope, Space};
use ksmooth_core::verify::{verify_theorem, TheoremId};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_json(s: &str) -> PyResult<Value> {
    serde_json::from_str(s).map_err(err)
}

fn parse_op(s: &str) -> PyResult<Operator> {
    let value = parse_json(s)?;
    io::parse_operator(&value, &Scope::default())
        .map(|(op, _)| op)
        .map_err(err)
}

/// Validate a space payload; returns summary json with warnings.
#[pyfunction]
fn space_validate(space_json: &str) -> PyResult<String> {
    let value = parse_json(space_json)?;
    let (s, warnings) = io::parse_space(&value, &Scope::default()).map_err(err)?;
    let summary = match &s {
        Space::Polyhedral(p) => serde_json::json!({
            "dim": p.dim(),
            "vertices": p.vertices().len(),
            "facets": p.facets().len(),
            "warnings": warnings,
        }),
        Space::Euclidean(e) => serde_json::json!({"dim": e.dim, "warnings": warnings}),
    };
    Ok(summary.to_string())
}

/// Polar dual of a polyhedral space payload.
#[pyfunction]
fn space_dual(space_json: &str) -> PyResult<String> {
    let value = parse_json(space_json)?;
    let (s, _) = io::parse_space(&value, &Scope::default()).map_err(err)?;
    match s {
        Space::Polyhedral(p) => {
            let dual = p.dual(&Scope::default()).map_err(err)?;
            Ok(io::space_to_json(&Space::Polyhedral(dual)).to_string())
        }
        Space::Euclidean(_) => Err(err("euclidean spaces are self-dual")),
    }
}

/// Order of smoothness of a unit vector; coordinates as rational strings.
#[pyfunction]
fn point_smoothness(space_json: &str, point: Vec<String>) -> PyResult<usize> {
    let value = parse_json(space_json)?;
    let (s, _) = io::parse_space(&value, &Scope::default()).map_err(err)?;
    let coords: Result<Vec<_>, _> = point.iter().map(|c| rat_from_str(c)).collect();
    let coords = coords.map_err(err)?;
    match s {
        Space::Polyhedral(p) => p.point_smoothness(&coords).map_err(err),
        Space::Euclidean(_) => Ok(1),
    }
}

/// Exact operator norm, rendered as a string ("p/q" or "sqrt(p/q)").
#[pyfunction]
fn op_norm(op_json: &str) -> PyResult<String> {
    let t = parse_op(op_json)?;
    Ok(operator::operator_norm(&t).map_err(err)?.to_scalar().to_string())
}

/// Norm attainment report as json.
#[pyfunction]
fn op_mt(op_json: &str) -> PyResult<String> {
    let t = parse_op(op_json)?;
    let att = operator::norm_attainment_ext(&t).map_err(err)?;
    Ok(io::norm_attainment_json(&att).to_string())
}

/// Smoothness report (order, witnesses) as json.
#[pyfunction]
fn op_smoothness(op_json: &str) -> PyResult<String> {
    let t = parse_op(op_json)?;
    let r = operator::operator_smoothness(&t).map_err(err)?;
    Ok(io::smoothness_report_json(&r).to_string())
}

/// Case classification for unit-norm maps from l-infinity^3 to the plane.
#[pyfunction]
fn op_classify(op_json: &str) -> PyResult<String> {
    let t = parse_op(op_json)?;
    let r = operator::classify_linf3_case(&t).map_err(err)?;
    Ok(io::smoothness_report_json(&r).to_string())
}

/// Birkhoff-James orthogonality of two polyhedral operators.
#[pyfunction]
fn op_bj(op_json: &str, other_json: &str) -> PyResult<bool> {
    let t = parse_op(op_json)?;
    let a = parse_op(other_json)?;
    operator::bj_orthogonal(&t, &a).map_err(err)
}

/// Adjoint operator payload (transpose between the dual spaces).
#[pyfunction]
fn op_adjoint(op_json: &str) -> PyResult<String> {
    let t = parse_op(op_json)?;
    let t_star = operator::adjoint(&t, &Scope::default()).map_err(err)?;
    Ok(io::operator_to_json(&t_star).to_string())
}

/// Extreme-contraction test by exact linear programming.
#[pyfunction]
fn op_extreme(op_json: &str) -> PyResult<bool> {
    let t = parse_op(op_json)?;
    oracle::extreme_contraction_lp(&t).map_err(err)
}

/// Smoothness order of a Hilbert-space operator payload.
#[pyfunction]
#[pyo3(signature = (matrix_json, gap_tol = 1e-8))]
fn hilbert_smoothness(matrix_json: &str, gap_tol: f64) -> PyResult<usize> {
    let value = parse_json(matrix_json)?;
    let t = io::parse_hilbert_matrix(&value).map_err(err)?;
    hilbert::hilbert_smoothness(&t, gap_tol).map_err(err)
}

/// Birkhoff-James orthogonality of two Hilbert-space operators.
#[pyfunction]
#[pyo3(signature = (t_json, a_json, gap_tol = 1e-8))]
fn hilbert_bj(t_json: &str, a_json: &str, gap_tol: f64) -> PyResult<bool> {
    let t = io::parse_hilbert_matrix(&parse_json(t_json)?).map_err(err)?;
    let a = io::parse_hilbert_matrix(&parse_json(a_json)?).map_err(err)?;
    hilbert::bj_orthogonal_hilbert(&t, &a, gap_tol).map_err(err)
}

/// Run a theorem verification suite; returns the report as json.
#[pyfunction]
#[pyo3(signature = (theorem, seeds = 100, seed0 = 1))]
fn verify(theorem: &str, seeds: usize, seed0: u64) -> PyResult<String> {
    let id: TheoremId = theorem.parse().map_err(err)?;
    Ok(verify_theorem(id, seeds, seed0).to_json().to_string())
}

#[pymodule]
fn ksmooth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(space_validate, m)?)?;
    m.add_function(wrap_pyfunction!(space_dual, m)?)?;
    m.add_function(wrap_pyfunction!(point_smoothness, m)?)?;
    m.add_function(wrap_pyfunction!(op_norm, m)?)?;
    m.add_function(wrap_pyfunction!(op_mt, m)?)?;
    m.add_function(wrap_pyfunction!(op_smoothness, m)?)?;
    m.add_function(wrap_pyfunction!(op_classify, m)?)?;
    m.add_function(wrap_pyfunction!(op_bj, m)?)?;
    m.add_function(wrap_pyfunction!(op_adjoint, m)?)?;
    m.add_function(wrap_pyfunction!(op_extreme, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_smoothness, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_bj, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
