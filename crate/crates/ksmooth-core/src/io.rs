//! JSON payload formats for spaces, operators and reports.
//!
//! Rationals travel as strings ("p/q", plain integers accepted as
//! shorthand), so the files stay language-neutral and lossless. Floating
//! entries (Hilbert matrices) are decimal strings or JSON numbers; complex
//! entries are two-element arrays [re, im].

use crate::hilbert::HilbertMatrix;
use crate::linalg::Vector;
use crate::operator::{
    CaseInfo, ExtJPair, NormAttainment, Operator, OperatorError, SmoothnessReport,
};
use crate::scalar::{rat_from_str, rat_to_string, Rat};
use crate::space::{
    validate_polyhedral_scoped, EuclideanSpace, Field, PolyhedralSpace, Scope, Space, SpaceError,
};
use nalgebra::{Complex, DMatrix};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

fn perr(context: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Parse {
        context: context.into(),
        message: message.into(),
    }
}

fn parse_rat(v: &Value, context: &str) -> Result<Rat, IoError> {
    match v {
        Value::String(s) => {
            rat_from_str(s).map_err(|e| perr(context, format!("bad rational {s:?}: {e}")))
        }
        Value::Number(n) => n
            .as_i64()
            .map(crate::scalar::rat)
            .ok_or_else(|| perr(context, format!("non-integer number {n}"))),
        other => Err(perr(context, format!("expected rational, got {other}"))),
    }
}

fn parse_vector(v: &Value, context: &str) -> Result<Vector, IoError> {
    let arr = v
        .as_array()
        .ok_or_else(|| perr(context, "expected an array"))?;
    arr.iter()
        .enumerate()
        .map(|(i, e)| parse_rat(e, &format!("{context}[{i}]")))
        .collect()
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, context: &str) -> Result<&'a Value, IoError> {
    obj.get(key)
        .ok_or_else(|| perr(context, format!("missing field {key:?}")))
}

fn as_dim(v: &Value, context: &str) -> Result<usize, IoError> {
    v.as_u64()
        .map(|d| d as usize)
        .ok_or_else(|| perr(context, "dim must be a non-negative integer"))
}

/// Parses a space descriptor, running full validation (warnings surfaced in
/// the returned list).
pub fn parse_space(value: &Value, scope: &Scope) -> Result<(Space, Vec<String>), IoError> {
    let obj = value
        .as_object()
        .ok_or_else(|| perr("space", "expected an object"))?;
    let kind = get(obj, "type", "space")?
        .as_str()
        .ok_or_else(|| perr("space.type", "expected a string"))?;
    match kind {
        "linf" => {
            let dim = as_dim(get(obj, "dim", "space")?, "space.dim")?;
            Ok((
                Space::Polyhedral(PolyhedralSpace::linf(dim, scope)?),
                vec![],
            ))
        }
        "l1" => {
            let dim = as_dim(get(obj, "dim", "space")?, "space.dim")?;
            Ok((Space::Polyhedral(PolyhedralSpace::l1(dim, scope)?), vec![]))
        }
        "polyhedral" => {
            let verts = get(obj, "vertices", "space")?
                .as_array()
                .ok_or_else(|| perr("space.vertices", "expected an array"))?;
            let points: Vec<Vector> = verts
                .iter()
                .enumerate()
                .map(|(i, v)| parse_vector(v, &format!("space.vertices[{i}]")))
                .collect::<Result<_, _>>()?;
            let validated = validate_polyhedral_scoped(&points, scope)?;
            if let Some(dim_v) = obj.get("dim") {
                let dim = as_dim(dim_v, "space.dim")?;
                if dim != validated.space.dim() {
                    return Err(perr(
                        "space.dim",
                        format!("declared {dim}, vertices have {}", validated.space.dim()),
                    ));
                }
            }
            Ok((Space::Polyhedral(validated.space), validated.warnings))
        }
        "euclidean" => {
            let dim = as_dim(get(obj, "dim", "space")?, "space.dim")?;
            let field = match obj.get("field").and_then(|f| f.as_str()).unwrap_or("real") {
                "real" => Field::Real,
                "complex" => Field::Complex,
                other => return Err(perr("space.field", format!("unknown field {other:?}"))),
            };
            Ok((Space::Euclidean(EuclideanSpace { dim, field }), vec![]))
        }
        other => Err(perr("space.type", format!("unknown space type {other:?}"))),
    }
}

pub fn parse_operator(value: &Value, scope: &Scope) -> Result<(Operator, Vec<String>), IoError> {
    let obj = value
        .as_object()
        .ok_or_else(|| perr("operator", "expected an object"))?;
    let (domain, mut warnings) = parse_space(get(obj, "domain", "operator")?, scope)?;
    let (codomain, w2) = parse_space(get(obj, "codomain", "operator")?, scope)?;
    warnings.extend(w2);
    let rows = get(obj, "matrix", "operator")?
        .as_array()
        .ok_or_else(|| perr("operator.matrix", "expected an array of rows"))?;
    let matrix: Vec<Vector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(r, &format!("operator.matrix[{i}]")))
        .collect::<Result<_, _>>()?;
    let op = Operator::new(matrix, domain, codomain)?;
    Ok((op, warnings))
}

fn vector_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(|x| json!(rat_to_string(x))).collect())
}

pub fn space_to_json(s: &Space) -> Value {
    match s {
        Space::Polyhedral(p) => {
            // canonical shorthand for the two standard balls
            if p.is_linf() {
                json!({"type": "linf", "dim": p.dim()})
            } else {
                json!({
                    "type": "polyhedral",
                    "dim": p.dim(),
                    "vertices": p.vertices().iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
                })
            }
        }
        Space::Euclidean(e) => json!({
            "type": "euclidean",
            "dim": e.dim,
            "field": match e.field { Field::Real => "real", Field::Complex => "complex" },
        }),
    }
}

pub fn operator_to_json(t: &Operator) -> Value {
    json!({
        "matrix": t.matrix.iter().map(|r| vector_json(r)).collect::<Vec<_>>(),
        "domain": space_to_json(&t.domain),
        "codomain": space_to_json(&t.codomain),
    })
}

/// Parses a real or complex matrix for the Hilbert-space analyses.
/// Real entries: numbers or decimal strings; complex entries: [re, im].
pub fn parse_hilbert_matrix(value: &Value) -> Result<HilbertMatrix, IoError> {
    let obj = value
        .as_object()
        .ok_or_else(|| perr("matrix payload", "expected an object"))?;
    let field = obj.get("field").and_then(|f| f.as_str()).unwrap_or("real");
    let rows = get(obj, "matrix", "matrix payload")?
        .as_array()
        .ok_or_else(|| perr("matrix", "expected an array of rows"))?;
    let nrows = rows.len();
    let ncols = rows
        .first()
        .and_then(|r| r.as_array())
        .map(|r| r.len())
        .unwrap_or(0);
    if nrows == 0 || ncols == 0 {
        return Err(perr("matrix", "empty matrix"));
    }
    let parse_f64 = |v: &Value, ctx: &str| -> Result<f64, IoError> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| perr(ctx, "unrepresentable number")),
            Value::String(s) => s
                .parse::<f64>()
                .map_err(|e| perr(ctx, format!("bad decimal {s:?}: {e}"))),
            other => Err(perr(ctx, format!("expected a number, got {other}"))),
        }
    };
    match field {
        "real" => {
            let mut m = DMatrix::<f64>::zeros(nrows, ncols);
            for (i, row) in rows.iter().enumerate() {
                let ctx = format!("matrix[{i}]");
                let row = row.as_array().ok_or_else(|| perr(&ctx, "expected a row"))?;
                if row.len() != ncols {
                    return Err(perr(&ctx, "ragged matrix"));
                }
                for (j, e) in row.iter().enumerate() {
                    m[(i, j)] = parse_f64(e, &format!("matrix[{i}][{j}]"))?;
                }
            }
            Ok(HilbertMatrix::Real(m))
        }
        "complex" => {
            let mut m = DMatrix::<Complex<f64>>::zeros(nrows, ncols);
            for (i, row) in rows.iter().enumerate() {
                let ctx = format!("matrix[{i}]");
                let row = row.as_array().ok_or_else(|| perr(&ctx, "expected a row"))?;
                if row.len() != ncols {
                    return Err(perr(&ctx, "ragged matrix"));
                }
                for (j, e) in row.iter().enumerate() {
                    let ctx = format!("matrix[{i}][{j}]");
                    let pair = e
                        .as_array()
                        .ok_or_else(|| perr(&ctx, "complex entry must be [re, im]"))?;
                    if pair.len() != 2 {
                        return Err(perr(&ctx, "complex entry must be [re, im]"));
                    }
                    m[(i, j)] = Complex::new(
                        parse_f64(&pair[0], &ctx)?,
                        parse_f64(&pair[1], &ctx)?,
                    );
                }
            }
            Ok(HilbertMatrix::Complex(m))
        }
        other => Err(perr("field", format!("unknown field {other:?}"))),
    }
}

fn ext_j_pair_json(p: &ExtJPair) -> Value {
    json!({
        "x": vector_json(&p.x),
        "y_star": vector_json(&p.y_star),
        "exact_functional": p.exact_functional,
    })
}

fn case_info_json(c: &CaseInfo) -> Value {
    json!({
        "label": c.label.to_string(),
        "s1_size": c.s1_size,
        "predicted_order": c.predicted_order,
        "consistent": c.consistent,
    })
}

pub fn smoothness_report_json(r: &SmoothnessReport) -> Value {
    json!({
        "order": r.order,
        "witness_pairs": r.witness_pairs.iter().map(ext_j_pair_json).collect::<Vec<_>>(),
        "case": r.case.as_ref().map(case_info_json),
    })
}

pub fn norm_attainment_json(a: &NormAttainment) -> Value {
    json!({
        "norm": a.norm.to_scalar().to_string(),
        "attaining_vertices": a.attaining_vertices.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
        "tol": a.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn scope() -> Scope {
        Scope::default()
    }

    #[test]
    fn parse_linf_shorthand() {
        let (s, w) = parse_space(&json!({"type": "linf", "dim": 3}), &scope()).unwrap();
        assert!(w.is_empty());
        match s {
            Space::Polyhedral(p) => assert_eq!(p.vertices().len(), 8),
            _ => panic!(),
        }
    }

    #[test]
    fn parse_rectangle_vertices() {
        let v = json!({"type": "polyhedral", "dim": 2,
            "vertices": [["2","1"],["2","-1"],["-2","-1"],["-2","1"]]});
        let (s, _) = parse_space(&v, &scope()).unwrap();
        match s {
            Space::Polyhedral(p) => {
                assert_eq!(p.vertices().len(), 4);
                assert_eq!(p.norm(&[rat(2), rat(1)]).unwrap(), rat(1));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn asymmetric_vertices_rejected() {
        let v = json!({"type": "polyhedral", "vertices": [["1","0"]]});
        assert!(matches!(
            parse_space(&v, &scope()),
            Err(IoError::Space(SpaceError::NotSymmetric(_)))
        ));
    }

    #[test]
    fn rational_shorthand_accepted() {
        let v = json!({
            "matrix": [[1, "1/2"], ["-1/3", 0]],
            "domain": {"type": "linf", "dim": 2},
            "codomain": {"type": "linf", "dim": 2},
        });
        let (op, _) = parse_operator(&v, &scope()).unwrap();
        assert_eq!(op.matrix[0][1], ratio(1, 2));
        assert_eq!(op.matrix[1][0], ratio(-1, 3));
    }

    #[test]
    fn operator_round_trip() {
        let v = json!({
            "matrix": [["1","0","0"],["0","1/2","0"]],
            "domain": {"type": "linf", "dim": 3},
            "codomain": {"type": "polyhedral",
                "vertices": [["2","1"],["2","-1"],["-2","-1"],["-2","1"]]},
        });
        let (op, _) = parse_operator(&v, &scope()).unwrap();
        let rendered = operator_to_json(&op);
        let (op2, _) = parse_operator(&rendered, &scope()).unwrap();
        assert_eq!(op.matrix, op2.matrix);
        assert_eq!(op.domain, op2.domain);
        assert_eq!(op.codomain, op2.codomain);
    }

    #[test]
    fn parse_complex_matrix() {
        let v = json!({"field": "complex", "matrix": [[[1, 0], [0, "-1"]], [["0.5", 0], [0, 0]]]});
        match parse_hilbert_matrix(&v).unwrap() {
            HilbertMatrix::Complex(m) => {
                assert_eq!(m[(0, 1)], Complex::new(0.0, -1.0));
                assert_eq!(m[(1, 0)], Complex::new(0.5, 0.0));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn parse_error_has_context() {
        let v = json!({"type": "polyhedral", "vertices": [["x","0"],["-1","0"]]});
        let err = parse_space(&v, &scope()).unwrap_err();
        assert!(err.to_string().contains("vertices[0]"));
    }
}
