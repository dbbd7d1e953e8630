//! Operators between finite-dimensional normed spaces: norm, norm-attainment
//! over extreme points, extreme supporting functionals, smoothness order,
//! Birkhoff-James orthogonality, adjoint, and the ℓ∞³ → 2D classification.
//!
//! The domain is always polyhedral here, so the operator norm is a maximum
//! over finitely many extreme points and every equality is decided exactly.
//! A Euclidean codomain is handled through exact squared norms; the support
//! functional of an image is then stored as an exact direction vector (a
//! positive multiple of the true unit functional), which leaves every span
//! computation exact.

use crate::linalg::{self, Vector};
use crate::scalar::{rat, rat_to_f64, Rat, Scalar};
use crate::space::{
    euclidean_sq_norm, Field, PolyhedralSpace, Scope, Space, SpaceError,
};
use num_traits::{One, Signed};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum OperatorError {
    #[error("matrix shape does not match the space dimensions")]
    ShapeMismatch,
    #[error("zero operator")]
    ZeroOperator,
    #[error("unsupported space pair: {0}")]
    UnsupportedSpacePair(String),
    #[error("expected domain ℓ∞³ and a two-dimensional codomain")]
    WrongSpaces,
    #[error("operator norm is not 1")]
    NotNormalized,
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// A matrix with its domain and codomain descriptors. Rows are indexed by
/// codomain coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    pub matrix: Vec<Vector>,
    pub domain: Space,
    pub codomain: Space,
}

impl Operator {
    pub fn new(matrix: Vec<Vector>, domain: Space, codomain: Space) -> Result<Self, OperatorError> {
        if matrix.len() != codomain.dim() || matrix.iter().any(|r| r.len() != domain.dim()) {
            return Err(OperatorError::ShapeMismatch);
        }
        Ok(Operator {
            matrix,
            domain,
            codomain,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|r| linalg::is_zero_vec(r))
    }

    pub fn apply(&self, x: &[Rat]) -> Vector {
        self.matrix.iter().map(|row| linalg::dot(row, x)).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    fn domain_polyhedral(&self) -> Result<&PolyhedralSpace, OperatorError> {
        match &self.domain {
            Space::Polyhedral(p) => Ok(p),
            Space::Euclidean(_) => Err(OperatorError::UnsupportedSpacePair(
                "Euclidean domain is handled by the Hilbert-space analysis".into(),
            )),
        }
    }

    /// Exact scalar rescale of the matrix.
    pub fn scaled(&self, c: &Rat) -> Operator {
        Operator {
            matrix: self.matrix.iter().map(|r| linalg::scale(r, c)).collect(),
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
        }
    }
}

/// Operator norm in a form that keeps exact comparisons possible: a rational
/// value for a polyhedral codomain, a rational squared value for a Euclidean
/// one.
#[derive(Debug, Clone, PartialEq)]
pub enum OpNorm {
    Exact(Rat),
    EuclideanSq(Rat),
}

impl OpNorm {
    pub fn to_scalar(&self) -> Scalar {
        match self {
            OpNorm::Exact(q) => Scalar::Exact(q.clone()),
            OpNorm::EuclideanSq(q) => Scalar::Approx(rat_to_f64(q).sqrt()),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            OpNorm::Exact(q) | OpNorm::EuclideanSq(q) => q.is_one(),
        }
    }
}

/// Max of the codomain norm over the extreme points of the domain ball.
pub fn operator_norm(t: &Operator) -> Result<OpNorm, OperatorError> {
    if t.is_zero() {
        return Err(OperatorError::ZeroOperator);
    }
    let dom = t.domain_polyhedral()?;
    match &t.codomain {
        Space::Polyhedral(cod) => {
            let mut best = rat(0);
            for v in dom.vertices() {
                let n = cod.norm(&t.apply(v))?;
                if n > best {
                    best = n;
                }
            }
            Ok(OpNorm::Exact(best))
        }
        Space::Euclidean(e) => {
            if e.field == Field::Complex {
                return Err(OperatorError::UnsupportedSpacePair(
                    "complex codomain with polyhedral domain".into(),
                ));
            }
            let mut best = rat(0);
            for v in dom.vertices() {
                let n = euclidean_sq_norm(&t.apply(v));
                if n > best {
                    best = n;
                }
            }
            Ok(OpNorm::EuclideanSq(best))
        }
    }
}

/// The norm attainment set intersected with the extreme points of the
/// domain ball.
#[derive(Debug, Clone)]
pub struct NormAttainment {
    pub norm: OpNorm,
    pub attaining_vertices: Vec<Vector>,
    /// Echoed in approx (Euclidean-codomain) mode; the comparison itself is
    /// exact on squared norms.
    pub tol: Option<f64>,
}

pub fn norm_attainment_ext(t: &Operator) -> Result<NormAttainment, OperatorError> {
    let norm = operator_norm(t)?;
    let dom = t.domain_polyhedral()?;
    let (attaining, tol) = match (&norm, &t.codomain) {
        (OpNorm::Exact(n), Space::Polyhedral(cod)) => {
            let mut out = Vec::new();
            for v in dom.vertices() {
                if cod.norm(&t.apply(v))? == *n {
                    out.push(v.clone());
                }
            }
            (out, None)
        }
        (OpNorm::EuclideanSq(nsq), _) => {
            let mut out = Vec::new();
            for v in dom.vertices() {
                if euclidean_sq_norm(&t.apply(v)) == *nsq {
                    out.push(v.clone());
                }
            }
            (out, Some(crate::space::EUCLIDEAN_UNIT_TOL))
        }
        _ => unreachable!(),
    };
    Ok(NormAttainment {
        norm,
        attaining_vertices: attaining,
        tol,
    })
}

/// One extreme supporting functional of T: the pair (x, y*) representing
/// y* ⊗ x. For a Euclidean codomain `y_star` is the exact image direction
/// Tx, a positive multiple of the true unit functional; `exact_functional`
/// is false in that case.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtJPair {
    pub x: Vector,
    pub y_star: Vector,
    pub exact_functional: bool,
}

impl fmt::Display for ExtJPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_vec = |v: &Vector| {
            v.iter()
                .map(crate::scalar::rat_to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "x = ({}), y* = ({})", fmt_vec(&self.x), fmt_vec(&self.y_star))
    }
}

/// All pairs (x, y*) with x an attaining extreme point and y* an extreme
/// supporting functional of Tx/‖T‖, reduced to one representative per
/// antipodal pair (x kept lexicographically positive).
pub fn ext_j_operator(t: &Operator) -> Result<Vec<ExtJPair>, OperatorError> {
    let att = norm_attainment_ext(t)?;
    let mut pairs = Vec::new();
    for x in &att.attaining_vertices {
        if !linalg::lex_positive(x) {
            continue;
        }
        let image = t.apply(x);
        match (&att.norm, &t.codomain) {
            (OpNorm::Exact(n), Space::Polyhedral(cod)) => {
                let unit = linalg::scale(&image, &(rat(1) / n));
                let face = cod.support_face(&unit)?;
                for f in face.functionals {
                    pairs.push(ExtJPair {
                        x: x.clone(),
                        y_star: f,
                        exact_functional: true,
                    });
                }
            }
            (OpNorm::EuclideanSq(_), _) => {
                pairs.push(ExtJPair {
                    x: x.clone(),
                    y_star: image,
                    exact_functional: false,
                });
            }
            _ => unreachable!(),
        }
    }
    Ok(pairs)
}

/// Case labels for the ℓ∞³ → 2D classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseLabel {
    IA,
    IB,
    II,
    III,
    IV,
    Reduced,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::IA => "I(a)",
            CaseLabel::IB => "I(b)",
            CaseLabel::II => "II",
            CaseLabel::III => "III",
            CaseLabel::IV => "IV",
            CaseLabel::Reduced => "reduced",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseInfo {
    pub label: CaseLabel,
    pub s1_size: Option<usize>,
    pub predicted_order: usize,
    /// Prediction agrees with the rank-computed order. A false value is a
    /// property violation and is surfaced by callers.
    pub consistent: bool,
}

#[derive(Debug, Clone)]
pub struct SmoothnessReport {
    pub order: usize,
    pub witness_pairs: Vec<ExtJPair>,
    pub case: Option<CaseInfo>,
}

/// dim span Ext J(T): the rank of the flattened rank-one functionals
/// y* ⊗ x over all extreme supporting pairs.
pub fn operator_smoothness(t: &Operator) -> Result<SmoothnessReport, OperatorError> {
    let pairs = ext_j_operator(t)?;
    let rows: Vec<Vector> = pairs
        .iter()
        .map(|p| linalg::outer_flatten(&p.y_star, &p.x))
        .collect();
    let order = linalg::rank(&rows);
    let witness_idx = linalg::independent_subset(&rows);
    debug_assert_eq!(witness_idx.len(), order);
    let witness_pairs = witness_idx.into_iter().map(|i| pairs[i].clone()).collect();
    let case = maybe_classify(t, order)?;
    Ok(SmoothnessReport {
        order,
        witness_pairs,
        case,
    })
}

/// Attach ℓ∞³ → 2D case metadata when the spaces fit and the operator can
/// be normalized exactly.
fn maybe_classify(t: &Operator, order: usize) -> Result<Option<CaseInfo>, OperatorError> {
    let fits = matches!(&t.domain, Space::Polyhedral(p) if p.is_linf() && p.dim() == 3)
        && t.codomain.dim() == 2;
    if !fits {
        return Ok(None);
    }
    let norm = operator_norm(t)?;
    let normalized = match &norm {
        OpNorm::Exact(n) => Some(t.scaled(&(rat(1) / n))),
        OpNorm::EuclideanSq(nsq) => nsq.is_one().then(|| t.clone()),
    };
    match normalized {
        Some(tn) => {
            let info = classify_case_info(&tn, order)?;
            Ok(Some(info))
        }
        None => Ok(None),
    }
}

/// Classification of a unit-norm T: ℓ∞³ → 2D per the attainment pattern of
/// the eight cube vertices and the point smoothness of their images.
pub fn classify_linf3_case(t: &Operator) -> Result<SmoothnessReport, OperatorError> {
    let fits = matches!(&t.domain, Space::Polyhedral(p) if p.is_linf() && p.dim() == 3)
        && t.codomain.dim() == 2;
    if !fits {
        return Err(OperatorError::WrongSpaces);
    }
    if t.is_zero() {
        return Err(OperatorError::ZeroOperator);
    }
    if !operator_norm(t)?.is_one() {
        return Err(OperatorError::NotNormalized);
    }
    let pairs = ext_j_operator(t)?;
    let rows: Vec<Vector> = pairs
        .iter()
        .map(|p| linalg::outer_flatten(&p.y_star, &p.x))
        .collect();
    let order = linalg::rank(&rows);
    let witness_idx = linalg::independent_subset(&rows);
    let witness_pairs: Vec<ExtJPair> = witness_idx.into_iter().map(|i| pairs[i].clone()).collect();
    let info = classify_case_info(t, order)?;
    Ok(SmoothnessReport {
        order,
        witness_pairs,
        case: Some(info),
    })
}

fn image_smoothness(t: &Operator, x: &[Rat]) -> Result<usize, OperatorError> {
    match &t.codomain {
        Space::Polyhedral(cod) => Ok(cod.point_smoothness(&t.apply(x))?),
        // smooth space: every support face is a singleton
        Space::Euclidean(_) => Ok(1),
    }
}

/// Support direction of the (singleton) face of Tx, for the colinearity test
/// of case I(a).
fn singleton_face_direction(t: &Operator, x: &[Rat]) -> Result<Vector, OperatorError> {
    match &t.codomain {
        Space::Polyhedral(cod) => {
            let face = cod.support_face(&t.apply(x))?;
            debug_assert_eq!(face.functionals.len(), 1);
            Ok(face.functionals[0].clone())
        }
        Space::Euclidean(_) => Ok(t.apply(x)),
    }
}

fn classify_case_info(t: &Operator, computed_order: usize) -> Result<CaseInfo, OperatorError> {
    let att = norm_attainment_ext(t)?;
    let count = att.attaining_vertices.len();
    debug_assert!(count % 2 == 0);
    if count < 8 {
        // At most three independent attaining pairs: the sum rule applies.
        let reps: Vec<&Vector> = att
            .attaining_vertices
            .iter()
            .filter(|v| linalg::lex_positive(v))
            .collect();
        let mut predicted = 0;
        for x in &reps {
            predicted += image_smoothness(t, x)?;
        }
        return Ok(CaseInfo {
            label: CaseLabel::Reduced,
            s1_size: None,
            predicted_order: predicted,
            consistent: predicted == computed_order,
        });
    }

    // All eight vertices attain; canonical labeling of one vertex per pair.
    let canonical: [Vector; 4] = [
        vec![rat(1), rat(1), rat(1)],
        vec![rat(-1), rat(1), rat(1)],
        vec![rat(-1), rat(-1), rat(1)],
        vec![rat(1), rat(-1), rat(1)],
    ];
    let mut smooth_images = Vec::new();
    let mut s1 = 0usize;
    for x in &canonical {
        if image_smoothness(t, x)? == 1 {
            s1 += 1;
            smooth_images.push(x.clone());
        }
    }
    let (label, predicted) = match s1 {
        4 => {
            // I(a): all four support faces are singletons equal up to sign,
            // i.e. the face directions span a line.
            let dirs: Vec<Vector> = canonical
                .iter()
                .map(|x| singleton_face_direction(t, x))
                .collect::<Result<_, _>>()?;
            if linalg::rank(&dirs) == 1 {
                (CaseLabel::IA, 3)
            } else {
                (CaseLabel::IB, 4)
            }
        }
        3 => (CaseLabel::II, 4),
        2 => (CaseLabel::III, 5),
        _ => (CaseLabel::IV, 6),
    };
    Ok(CaseInfo {
        label,
        s1_size: Some(s1),
        predicted_order: predicted,
        consistent: predicted == computed_order,
    })
}

/// Adjoint: transpose matrix between the dual spaces.
pub fn adjoint(t: &Operator, scope: &Scope) -> Result<Operator, OperatorError> {
    let (dual_dom, dual_cod) = match (&t.domain, &t.codomain) {
        (Space::Polyhedral(d), Space::Polyhedral(c)) => (
            Space::Polyhedral(c.dual(scope)?),
            Space::Polyhedral(d.dual(scope)?),
        ),
        (Space::Euclidean(d), Space::Euclidean(c)) => {
            (Space::Euclidean(*c), Space::Euclidean(*d))
        }
        _ => {
            return Err(OperatorError::UnsupportedSpacePair(
                "adjoint needs both spaces polyhedral or both Euclidean".into(),
            ))
        }
    };
    let rows = t.matrix.len();
    let cols = t.matrix[0].len();
    let matrix: Vec<Vector> = (0..cols)
        .map(|j| (0..rows).map(|i| t.matrix[i][j].clone()).collect())
        .collect();
    Operator::new(matrix, dual_dom, dual_cod)
}

/// Birkhoff-James orthogonality T ⊥ A on a polyhedral pair, decided exactly.
///
/// g(λ) = ‖T + λA‖ is the upper envelope of the affine functions
/// λ ↦ f((T + λA)v) over codomain facets f and domain vertices v. T ⊥ A iff
/// λ = 0 minimizes g, iff the active slopes at 0 contain both a
/// non-positive and a non-negative one.
pub fn bj_orthogonal(t: &Operator, a: &Operator) -> Result<bool, OperatorError> {
    let (dom, cod) = match (&t.domain, &t.codomain) {
        (Space::Polyhedral(d), Space::Polyhedral(c)) => (d, c),
        _ => {
            return Err(OperatorError::UnsupportedSpacePair(
                "Birkhoff-James test on operators needs a polyhedral pair".into(),
            ))
        }
    };
    if t.domain != a.domain || t.codomain != a.codomain {
        return Err(OperatorError::ShapeMismatch);
    }
    let norm = match operator_norm(t)? {
        OpNorm::Exact(n) => n,
        OpNorm::EuclideanSq(_) => unreachable!(),
    };
    let mut min_slope: Option<Rat> = None;
    let mut max_slope: Option<Rat> = None;
    for f in cod.facets() {
        for v in dom.vertices() {
            let value = linalg::dot(f, &t.apply(v));
            if value == norm {
                let slope = linalg::dot(f, &a.apply(v));
                if min_slope.as_ref().is_none_or(|m| slope < *m) {
                    min_slope = Some(slope.clone());
                }
                if max_slope.as_ref().is_none_or(|m| slope > *m) {
                    max_slope = Some(slope);
                }
            }
        }
    }
    let (lo, hi) = (min_slope.unwrap(), max_slope.unwrap());
    Ok(!lo.is_positive() && !hi.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::testutil::*;

    #[test]
    fn norm_examples() {
        // paper's ℓ∞⁴ → rectangle instance
        let t = linf4_rectangle_example();
        assert_eq!(operator_norm(&t).unwrap(), OpNorm::Exact(rat(1)));
        // identity on ℓ∞²
        let t = op_linf(&[&[1, 0], &[0, 1]], 2, 2);
        assert_eq!(operator_norm(&t).unwrap(), OpNorm::Exact(rat(1)));
        // averaging into Euclidean ℝ²
        let t = halves_into_r2();
        assert_eq!(operator_norm(&t).unwrap(), OpNorm::EuclideanSq(rat(1)));
    }

    #[test]
    fn zero_operator_rejected() {
        let t = op_linf(&[&[0, 0], &[0, 0]], 2, 2);
        assert_eq!(operator_norm(&t), Err(OperatorError::ZeroOperator));
    }

    #[test]
    fn euclidean_domain_rejected() {
        let t = Operator::new(
            vec![v(&[1, 0]), v(&[0, 1])],
            Space::Euclidean(crate::space::EuclideanSpace::real(2)),
            Space::Polyhedral(linf(2)),
        )
        .unwrap();
        assert!(matches!(
            operator_norm(&t),
            Err(OperatorError::UnsupportedSpacePair(_))
        ));
    }

    #[test]
    fn attainment_examples() {
        let t = diag_1_half_linf2();
        let att = norm_attainment_ext(&t).unwrap();
        assert_eq!(att.attaining_vertices.len(), 4);

        let t = halves_into_r2();
        let att = norm_attainment_ext(&t).unwrap();
        assert_eq!(att.attaining_vertices.len(), 8);

        // the ℓ∞⁴ instance attains at all 16 vertices (e.g. (1,-1,1,1) ↦ (0,1))
        let t = linf4_rectangle_example();
        let att = norm_attainment_ext(&t).unwrap();
        assert_eq!(att.attaining_vertices.len(), 16);
    }

    #[test]
    fn ext_j_examples() {
        let t = diag_1_half_linf2();
        let pairs = ext_j_operator(&t).unwrap();
        assert_eq!(pairs.len(), 2);
        for p in &pairs {
            assert_eq!(p.y_star, v(&[1, 0]));
        }

        let id = op_linf(&[&[1, 0], &[0, 1]], 2, 2);
        let pairs = ext_j_operator(&id).unwrap();
        let expected = vec![
            (v(&[1, -1]), v(&[0, -1])),
            (v(&[1, -1]), v(&[1, 0])),
            (v(&[1, 1]), v(&[0, 1])),
            (v(&[1, 1]), v(&[1, 0])),
        ];
        let mut got: Vec<(Vector, Vector)> =
            pairs.into_iter().map(|p| (p.x, p.y_star)).collect();
        got.sort_by(|a, b| {
            crate::linalg::lex_cmp(&a.0, &b.0).then(crate::linalg::lex_cmp(&a.1, &b.1))
        });
        assert_eq!(got, expected);
    }

    #[test]
    fn smoothness_examples() {
        assert_eq!(operator_smoothness(&diag_1_half_linf2()).unwrap().order, 2);
        assert_eq!(operator_smoothness(&rank_one_into_r2()).unwrap().order, 3);
        assert_eq!(operator_smoothness(&halves_into_r2()).unwrap().order, 4);
    }

    #[test]
    fn worked_example_order() {
        // The ℓ∞⁴ → rectangle instance. All 16 domain vertices attain the
        // norm, and the resulting supporting functionals span 7 dimensions:
        // the (1/2, 0)-facet block contributes span{(1,1,·,1), (1,-1,·,-1)}
        // (3 dims) and the (0, 1)-facet block all 8 sign patterns (4 dims).
        let t = linf4_rectangle_example();
        let rep = operator_smoothness(&t).unwrap();
        assert_eq!(rep.witness_pairs.len(), rep.order);
        assert_eq!(rep.order, 7);
    }

    #[test]
    fn witness_pairs_span() {
        let rep = operator_smoothness(&diag_1_half_linf2()).unwrap();
        let rows: Vec<Vector> = rep
            .witness_pairs
            .iter()
            .map(|p| linalg::outer_flatten(&p.y_star, &p.x))
            .collect();
        assert_eq!(linalg::rank(&rows), rep.order);
    }

    #[test]
    fn adjoint_examples() {
        let scope = Scope::default();
        let t = op(&[&[1, 0, 0], &[0, 1, 0]], linf(3), linf(2));
        let tstar = adjoint(&t, &scope).unwrap();
        assert_eq!(tstar.matrix, vec![v(&[1, 0]), v(&[0, 1]), v(&[0, 0])]);
        assert_eq!(tstar.domain, Space::Polyhedral(l1(2)));
        assert_eq!(tstar.codomain, Space::Polyhedral(l1(3)));
        let back = adjoint(&tstar, &scope).unwrap();
        assert_eq!(back.matrix, t.matrix);
        assert_eq!(back.domain, t.domain);

        let a = diag_1_half_linf2();
        let astar = adjoint(&a, &scope).unwrap();
        assert_eq!(operator_smoothness(&a).unwrap().order, 2);
        assert_eq!(operator_smoothness(&astar).unwrap().order, 2);
    }

    #[test]
    fn bj_examples() {
        let t = diag_1_half_linf2();
        let a = op_linf(&[&[0, 0], &[0, 1]], 2, 2);
        assert_eq!(bj_orthogonal(&t, &a).unwrap(), true);

        let id = op_linf(&[&[1, 0], &[0, 1]], 2, 2);
        assert_eq!(bj_orthogonal(&id, &id).unwrap(), false);

        let refl = op_linf(&[&[1, 0], &[0, -1]], 2, 2);
        assert_eq!(bj_orthogonal(&id, &refl).unwrap(), true);
    }

    #[test]
    fn classify_examples() {
        let rep = classify_linf3_case(&halves_into_r2()).unwrap();
        let case = rep.case.unwrap();
        assert_eq!(case.label, CaseLabel::IB);
        assert_eq!(case.s1_size, Some(4));
        assert_eq!(rep.order, 4);
        assert!(case.consistent);

        let rep = classify_linf3_case(&rank_one_into_r2()).unwrap();
        let case = rep.case.unwrap();
        assert_eq!(case.label, CaseLabel::IA);
        assert_eq!(rep.order, 3);
        assert!(case.consistent);

        let t = op(&[&[1, 0, 0], &[0, 1, 0]], linf(3), linf(2));
        let rep = classify_linf3_case(&t).unwrap();
        let case = rep.case.unwrap();
        assert_eq!(case.label, CaseLabel::IV);
        assert_eq!(case.s1_size, Some(0));
        assert_eq!(rep.order, 6);
        assert!(case.consistent);
    }

    #[test]
    fn classify_rejects_wrong_input() {
        let t = diag_1_half_linf2();
        assert!(matches!(
            classify_linf3_case(&t),
            Err(OperatorError::WrongSpaces)
        ));
    }

    #[test]
    fn classify_rejects_unnormalized() {
        let t = op(&[&[2, 0, 0], &[0, 2, 0]], linf(3), linf(2));
        assert!(matches!(
            classify_linf3_case(&t),
            Err(OperatorError::NotNormalized)
        ));
    }

    #[test]
    fn smoothness_attaches_case_metadata() {
        // non-normalized exact operator: metadata via exact rescale
        let t = op(&[&[2, 0, 0], &[0, 2, 0]], linf(3), linf(2));
        let rep = operator_smoothness(&t).unwrap();
        assert_eq!(rep.case.unwrap().label, CaseLabel::IV);
    }

    #[test]
    fn smoothness_order_padded_diag() {
        // diag(1, 1/2) padded with a zero column: all eight vertices attain
        // and every image lies on the edge x = 1 of the square, so the four
        // support faces agree up to sign.
        let t = op_q(
            &[&[(1, 1), (0, 1), (0, 1)], &[(0, 1), (1, 2), (0, 1)]],
            linf(3),
            linf(2),
        );
        let rep = operator_smoothness(&t).unwrap();
        let case = rep.case.clone().unwrap();
        assert_eq!(case.label, CaseLabel::IA);
        assert_eq!(rep.order, 3);
        assert!(case.consistent);
    }

    pub fn ratio_vec(xs: &[(i64, i64)]) -> Vector {
        xs.iter().map(|&(n, d)| ratio(n, d)).collect()
    }
}
