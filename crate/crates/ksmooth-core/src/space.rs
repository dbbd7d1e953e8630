//! Finite-dimensional normed spaces: symmetric polytopal unit balls with
//! exact rational arithmetic, and Euclidean spaces.
//!
//! A polyhedral space is stored by its canonical V-representation (the
//! extreme points of the unit ball) together with the derived facet
//! functionals, which are exactly the extreme points of the dual ball.

use crate::linalg::{self, Vector};
use crate::scalar::{rat, rat_to_f64, Rat};
use itertools::Itertools;
use num_traits::{One, Signed};
use thiserror::Error;

pub const DEFAULT_MAX_DIM: usize = 4;
pub const DEFAULT_MAX_VERTICES: usize = 64;
pub const EUCLIDEAN_UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct Scope {
    pub max_dim: usize,
    pub max_vertices: usize,
}

impl Default for Scope {
    fn default() -> Self {
        Scope {
            max_dim: DEFAULT_MAX_DIM,
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SpaceError {
    #[error("empty vertex list")]
    Empty,
    #[error("inconsistent vector dimensions")]
    DimensionMismatch,
    #[error("vertex set is not symmetric: {0:?} present but its negation is missing")]
    NotSymmetric(Vec<String>),
    #[error("vertices do not span the space: unit ball is not full-dimensional")]
    NotFullDimensional,
    #[error("scope exceeded: dim {dim} or vertex count {vertices} beyond bound (max dim {max_dim}, max vertices {max_vertices})")]
    ScopeExceeded {
        dim: usize,
        vertices: usize,
        max_dim: usize,
        max_vertices: usize,
    },
    #[error("not a unit vector")]
    NotUnitVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EuclideanSpace {
    pub dim: usize,
    pub field: Field,
}

impl EuclideanSpace {
    pub fn real(dim: usize) -> Self {
        assert!(dim >= 1);
        EuclideanSpace {
            dim,
            field: Field::Real,
        }
    }

    pub fn complex(dim: usize) -> Self {
        assert!(dim >= 1);
        EuclideanSpace {
            dim,
            field: Field::Complex,
        }
    }
}

/// Symmetric polytope unit ball in canonical form.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralSpace {
    dim: usize,
    vertices: Vec<Vector>,
    facets: Vec<Vector>,
}

/// Result of canonicalization, carrying warnings about dropped input points.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedSpace {
    pub space: PolyhedralSpace,
    pub warnings: Vec<String>,
}

impl PolyhedralSpace {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme points of the unit ball, sorted lexicographically.
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    /// Extreme points of the dual unit ball, sorted lexicographically.
    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    /// The ℓ∞ ball: all ±1 sign vectors.
    pub fn linf(dim: usize, scope: &Scope) -> Result<PolyhedralSpace, SpaceError> {
        let verts: Vec<Vector> = (0..1usize << dim)
            .map(|mask| {
                (0..dim)
                    .map(|i| if mask >> i & 1 == 1 { rat(1) } else { rat(-1) })
                    .collect()
            })
            .collect();
        Ok(validate_polyhedral_scoped(&verts, scope)?.space)
    }

    /// The ℓ1 ball: ± standard basis vectors.
    pub fn l1(dim: usize, scope: &Scope) -> Result<PolyhedralSpace, SpaceError> {
        let mut verts = Vec::new();
        for i in 0..dim {
            let mut e: Vector = vec![rat(0); dim];
            e[i] = rat(1);
            verts.push(e.clone());
            e[i] = rat(-1);
            verts.push(e);
        }
        Ok(validate_polyhedral_scoped(&verts, scope)?.space)
    }

    /// True when this is exactly the ℓ∞ ball of its dimension.
    pub fn is_linf(&self) -> bool {
        self.vertices.len() == 1 << self.dim
            && self
                .vertices
                .iter()
                .all(|v| v.iter().all(|x| x.abs().is_one()))
    }

    /// Exact norm: gauge of the polytope, max over facet functionals.
    pub fn norm(&self, x: &[Rat]) -> Result<Rat, SpaceError> {
        if x.len() != self.dim {
            return Err(SpaceError::DimensionMismatch);
        }
        let mut best = rat(0);
        for f in &self.facets {
            let v = linalg::dot(f, x).abs();
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    /// All extreme dual functionals supporting the unit vector `y`.
    pub fn support_face(&self, y: &[Rat]) -> Result<SupportFace, SpaceError> {
        if self.norm(y)? != rat(1) {
            return Err(SpaceError::NotUnitVector);
        }
        let one = rat(1);
        let functionals: Vec<Vector> = self
            .facets
            .iter()
            .filter(|f| linalg::dot(f, y) == one)
            .cloned()
            .collect();
        Ok(SupportFace {
            base_point: y.to_vec(),
            functionals,
        })
    }

    /// dim span of the supporting functionals of `y`.
    pub fn point_smoothness(&self, y: &[Rat]) -> Result<usize, SpaceError> {
        let face = self.support_face(y)?;
        Ok(linalg::rank(&face.functionals))
    }

    pub fn is_extreme_point(&self, x: &[Rat]) -> Result<bool, SpaceError> {
        if x.len() != self.dim {
            return Err(SpaceError::DimensionMismatch);
        }
        Ok(self.vertices.iter().any(|v| v.as_slice() == x))
    }

    /// Polar polytope: vertices of the dual are the facet functionals.
    pub fn dual(&self, scope: &Scope) -> Result<PolyhedralSpace, SpaceError> {
        Ok(validate_polyhedral_scoped(&self.facets, scope)?.space)
    }
}

/// The set Ext J(y): extreme supporting functionals of a unit vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportFace {
    pub base_point: Vector,
    pub functionals: Vec<Vector>,
}

pub fn validate_polyhedral(points: &[Vector]) -> Result<ValidatedSpace, SpaceError> {
    validate_polyhedral_scoped(points, &Scope::default())
}

pub fn validate_polyhedral_scoped(
    points: &[Vector],
    scope: &Scope,
) -> Result<ValidatedSpace, SpaceError> {
    if points.is_empty() {
        return Err(SpaceError::Empty);
    }
    let dim = points[0].len();
    if dim == 0 || points.iter().any(|p| p.len() != dim) {
        return Err(SpaceError::DimensionMismatch);
    }
    // dedup + canonical order
    let mut pts: Vec<Vector> = points.to_vec();
    pts.sort_by(|a, b| linalg::lex_cmp(a, b));
    pts.dedup();
    if dim > scope.max_dim || pts.len() > scope.max_vertices {
        return Err(SpaceError::ScopeExceeded {
            dim,
            vertices: pts.len(),
            max_dim: scope.max_dim,
            max_vertices: scope.max_vertices,
        });
    }
    for p in &pts {
        let n = linalg::neg(p);
        if pts.binary_search_by(|q| linalg::lex_cmp(q, &n)).is_err() {
            return Err(SpaceError::NotSymmetric(
                p.iter().map(crate::scalar::rat_to_string).collect(),
            ));
        }
    }
    if linalg::rank(&pts) != dim {
        return Err(SpaceError::NotFullDimensional);
    }

    let facets = facet_scan(&pts, dim);
    debug_assert!(!facets.is_empty());

    // Classify points: extreme iff the active facet normals span the space.
    let one = rat(1);
    let mut vertices = Vec::new();
    let mut warnings = Vec::new();
    for p in &pts {
        let active: Vec<Vector> = facets
            .iter()
            .filter(|f| linalg::dot(f, p) == one)
            .cloned()
            .collect();
        if !active.is_empty() && linalg::rank(&active) == dim {
            vertices.push(p.clone());
        } else {
            warnings.push(format!(
                "redundant point dropped: ({})",
                p.iter().map(crate::scalar::rat_to_string).join(", ")
            ));
        }
    }
    if linalg::rank(&vertices) != dim {
        return Err(SpaceError::NotFullDimensional);
    }
    Ok(ValidatedSpace {
        space: PolyhedralSpace {
            dim,
            vertices,
            facets,
        },
        warnings,
    })
}

/// Enumerates the facet functionals of conv(points) by scanning all
/// dim-subsets that span a hyperplane missing the origin, solving for the
/// normal and keeping supporting ones. Points on a facet hyperplane f·x = 1
/// are affinely independent iff linearly independent, so every facet is hit.
fn facet_scan(points: &[Vector], dim: usize) -> Vec<Vector> {
    let one = rat(1);
    let mut facets: Vec<Vector> = Vec::new();
    for subset in (0..points.len()).combinations(dim) {
        let rows: Vec<Vector> = subset.iter().map(|&i| points[i].clone()).collect();
        let rhs: Vector = vec![one.clone(); dim];
        let Some(f) = linalg::solve_square(&rows, &rhs) else {
            continue;
        };
        if points.iter().all(|p| linalg::dot(&f, p) <= one) {
            facets.push(f);
        }
    }
    facets.sort_by(|a, b| linalg::lex_cmp(a, b));
    facets.dedup();
    facets
}

/// Euclidean squared norm of a rational vector, exact.
pub fn euclidean_sq_norm(x: &[Rat]) -> Rat {
    x.iter().map(|c| c * c).sum()
}

/// Euclidean norm, approximate.
pub fn euclidean_norm(x: &[Rat]) -> f64 {
    rat_to_f64(&euclidean_sq_norm(x)).sqrt()
}

/// Supporting functional of a unit vector in a real Euclidean space: the
/// singleton inner-product functional. The unit check is within tolerance.
pub fn euclidean_support_face(y: &[Rat], tol: f64) -> Result<SupportFace, SpaceError> {
    if (euclidean_norm(y) - 1.0).abs() > tol {
        return Err(SpaceError::NotUnitVector);
    }
    Ok(SupportFace {
        base_point: y.to_vec(),
        functionals: vec![y.to_vec()],
    })
}

/// Space descriptor used by operators: polyhedral carries its full data.
#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Polyhedral(PolyhedralSpace),
    Euclidean(EuclideanSpace),
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Polyhedral(p) => p.dim(),
            Space::Euclidean(e) => e.dim,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    pub fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn space(points: &[Vector]) -> PolyhedralSpace {
        validate_polyhedral(points).unwrap().space
    }

    pub fn linf2() -> PolyhedralSpace {
        PolyhedralSpace::linf(2, &Scope::default()).unwrap()
    }

    pub fn rectangle() -> PolyhedralSpace {
        space(&[v(&[2, 1]), v(&[2, -1]), v(&[-2, -1]), v(&[-2, 1])])
    }

    #[test]
    fn linf2_is_square_with_cross_dual() {
        let s = linf2();
        assert_eq!(s.vertices().len(), 4);
        assert_eq!(
            s.facets(),
            &[v(&[-1, 0]), v(&[0, -1]), v(&[0, 1]), v(&[1, 0])]
        );
    }

    #[test]
    fn rectangle_facets() {
        let s = rectangle();
        let expected = vec![
            vec![ratio(-1, 2), rat(0)],
            vec![rat(0), rat(-1)],
            vec![rat(0), rat(1)],
            vec![ratio(1, 2), rat(0)],
        ];
        assert_eq!(s.facets(), expected.as_slice());
    }

    #[test]
    fn redundant_point_dropped_with_warning() {
        let pts = vec![
            v(&[1, 0]),
            v(&[-1, 0]),
            v(&[0, 1]),
            v(&[0, -1]),
            vec![ratio(1, 2), ratio(1, 2)],
            vec![ratio(-1, 2), ratio(-1, 2)],
        ];
        let r = validate_polyhedral(&pts).unwrap();
        assert_eq!(r.warnings.len(), 2);
        let l1 = PolyhedralSpace::l1(2, &Scope::default()).unwrap();
        assert_eq!(r.space, l1);
    }

    #[test]
    fn asymmetric_rejected() {
        let pts = vec![v(&[1, 0])];
        assert!(matches!(
            validate_polyhedral(&pts),
            Err(SpaceError::NotSymmetric(_))
        ));
    }

    #[test]
    fn flat_rejected() {
        let pts = vec![v(&[1, 0]), v(&[-1, 0])];
        assert_eq!(
            validate_polyhedral(&pts),
            Err(SpaceError::NotFullDimensional)
        );
    }

    #[test]
    fn scope_bound_enforced() {
        let pts = vec![v(&[1, 0, 0, 0, 0]), v(&[-1, 0, 0, 0, 0])];
        assert!(matches!(
            validate_polyhedral(&pts),
            Err(SpaceError::ScopeExceeded { .. })
        ));
    }

    #[test]
    fn linf_l1_polarity() {
        let scope = Scope::default();
        let linf3 = PolyhedralSpace::linf(3, &scope).unwrap();
        assert_eq!(linf3.facets().len(), 6);
        let l13 = PolyhedralSpace::l1(3, &scope).unwrap();
        assert_eq!(l13.facets().len(), 8);
        assert_eq!(linf3.dual(&scope).unwrap(), l13);
        assert_eq!(l13.dual(&scope).unwrap(), linf3);
    }

    #[test]
    fn norm_values() {
        let linf3 = PolyhedralSpace::linf(3, &Scope::default()).unwrap();
        assert_eq!(linf3.norm(&v(&[1, -1, 1])).unwrap(), rat(1));
        assert_eq!(rectangle().norm(&v(&[4, 0])).unwrap(), rat(2));
        assert!(linf3.norm(&v(&[1, 1])).is_err());
    }

    #[test]
    fn support_faces() {
        let s = linf2();
        let f = s.support_face(&v(&[1, 1])).unwrap();
        assert_eq!(f.functionals, vec![v(&[0, 1]), v(&[1, 0])]);
        let f = s.support_face(&v(&[1, 0])).unwrap();
        assert_eq!(f.functionals, vec![v(&[1, 0])]);
        let f = rectangle().support_face(&v(&[2, 1])).unwrap();
        assert_eq!(
            f.functionals,
            vec![vec![rat(0), rat(1)], vec![ratio(1, 2), rat(0)]]
        );
        assert_eq!(
            s.support_face(&v(&[2, 0])),
            Err(SpaceError::NotUnitVector)
        );
    }

    #[test]
    fn point_smoothness_values() {
        let linf3 = PolyhedralSpace::linf(3, &Scope::default()).unwrap();
        assert_eq!(linf3.point_smoothness(&v(&[1, 1, 1])).unwrap(), 3);
        assert_eq!(linf3.point_smoothness(&v(&[1, 1, 0])).unwrap(), 2);
        assert_eq!(linf3.point_smoothness(&v(&[1, 0, 0])).unwrap(), 1);
    }

    #[test]
    fn extreme_points() {
        let s = linf2();
        assert!(s.is_extreme_point(&v(&[1, 1])).unwrap());
        assert!(!s.is_extreme_point(&v(&[1, 0])).unwrap());
        assert!(!rectangle().is_extreme_point(&v(&[0, 1])).unwrap());
    }

    #[test]
    fn euclidean_norms() {
        assert_eq!(euclidean_norm(&v(&[3, 4])), 5.0);
        assert_eq!(euclidean_sq_norm(&v(&[3, 4])), rat(25));
        let f = euclidean_support_face(&v(&[0, 1]), EUCLIDEAN_UNIT_TOL).unwrap();
        assert_eq!(f.functionals, vec![v(&[0, 1])]);
        assert!(euclidean_support_face(&v(&[1, 1]), EUCLIDEAN_UNIT_TOL).is_err());
    }
}
