//! Seeded instance generators for the verification suites.
//!
//! Every generator is deterministic in its seed, re-checks the hypothesis
//! bundle it claims to establish (generator soundness: checked, not
//! trusted), and resamples within a fixed budget; running out of budget is
//! reported as `GenerationExhausted`, never papered over.

use crate::hilbert::HilbertMatrix;
use crate::linalg::{self, Vector};
use crate::operator::{
    classify_linf3_case, norm_attainment_ext, operator_norm, CaseLabel, OpNorm, Operator,
};
use crate::scalar::{rat, ratio, Rat};
use crate::space::{
    validate_polyhedral_scoped, EuclideanSpace, Field, PolyhedralSpace, Scope, Space,
};
use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

const BUDGET: usize = 500;

#[derive(Debug, Error)]
pub enum GenError {
    #[error("no valid instance found for seed {seed} after {attempts} attempts ({rejections} rejections)")]
    GenerationExhausted {
        seed: u64,
        attempts: usize,
        rejections: usize,
    },
}

/// A generated instance together with how many candidates were rejected
/// before the hypothesis bundle held.
#[derive(Debug, Clone)]
pub struct Generated<T> {
    pub value: T,
    pub rejections: usize,
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt))
}

fn small_vec(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vector {
    (0..dim).map(|_| rat(rng.random_range(-bound..=bound))).collect()
}

fn nonzero_small_vec(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> Vector {
    loop {
        let v = small_vec(rng, dim, bound);
        if !linalg::is_zero_vec(&v) {
            return v;
        }
    }
}

fn exhausted<T>(seed: u64, rejections: usize) -> Result<Generated<T>, GenError> {
    Err(GenError::GenerationExhausted {
        seed,
        attempts: BUDGET,
        rejections,
    })
}

/// Retry loop shared by all generators: `make` draws a candidate from a
/// fresh sub-rng, `check` re-verifies the hypothesis bundle.
fn search<T>(
    seed: u64,
    salt: u64,
    mut make: impl FnMut(&mut ChaCha8Rng) -> Option<T>,
) -> Result<Generated<T>, GenError> {
    let mut rejections = 0;
    for attempt in 0..BUDGET {
        let mut rng = rng_for(seed, salt.wrapping_add(attempt as u64));
        match make(&mut rng) {
            Some(value) => return Ok(Generated { value, rejections }),
            None => rejections += 1,
        }
    }
    exhausted(seed, rejections)
}

fn matrix_from_columns(cols: &[Vector]) -> Vec<Vector> {
    let rows = cols[0].len();
    (0..rows)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect()
}

/// Random symmetries that preserve the ℓ∞³ case label: a signed coordinate
/// permutation of the domain (permutes the cube's vertices) and an optional
/// global sign on the codomain.
fn scramble_columns(rng: &mut ChaCha8Rng, cols: &mut [Vector]) {
    let n = cols.len();
    for i in (1..n).rev() {
        cols.swap(i, rng.random_range(0..=i));
    }
    for c in cols.iter_mut() {
        if rng.random_bool(0.5) {
            *c = linalg::neg(c);
        }
    }
}

fn independent_pair(rng: &mut ChaCha8Rng, bound: i64) -> (Vector, Vector) {
    loop {
        let c = nonzero_small_vec(rng, 2, bound);
        let e = nonzero_small_vec(rng, 2, bound);
        if linalg::rank(&[c.clone(), e.clone()]) == 2 {
            return (c, e);
        }
    }
}

fn polygon(points: Vec<Vector>, scope: &Scope) -> Option<PolyhedralSpace> {
    let mut all = points.clone();
    all.extend(points.iter().map(|p| linalg::neg(p)));
    validate_polyhedral_scoped(&all, scope).ok().map(|v| v.space)
}

/// Pythagorean units: exact rational vectors of Euclidean norm 1.
const TRIPLES: [(i64, i64, i64); 5] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29), (7, 24, 25)];

fn pythagorean_unit(rng: &mut ChaCha8Rng) -> Vector {
    let (a, b, c) = TRIPLES[rng.random_range(0..TRIPLES.len())];
    let (a, b) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
    let s = if rng.random_bool(0.5) { 1 } else { -1 };
    let t = if rng.random_bool(0.5) { 1 } else { -1 };
    vec![ratio(s * a, c), ratio(t * b, c)]
}

fn rotate90(v: &[Rat]) -> Vector {
    vec![-v[1].clone(), v[0].clone()]
}

/// Builds a unit-norm ℓ∞³ → 2-dimensional operator whose classifier label is
/// the requested one. The construction plants the label; the classifier
/// re-derives it and mismatches are rejected, not patched.
pub fn linf3_case_instance(
    seed: u64,
    label: CaseLabel,
    scope: &Scope,
) -> Result<Generated<Operator>, GenError> {
    let domain = PolyhedralSpace::linf(3, scope).expect("scope admits dim 3");
    search(seed, 0xCA5E, |rng| {
        let candidate = match label {
            CaseLabel::IA => {
                if rng.random_bool(0.5) {
                    rank_one_euclidean(rng, &domain)
                } else {
                    parallel_family(rng, &domain, scope, Extension::Both)
                }
            }
            CaseLabel::IB => orthogonal_euclidean(rng, &domain),
            CaseLabel::II => parallel_family(rng, &domain, scope, Extension::One),
            CaseLabel::III => parallel_family(rng, &domain, scope, Extension::None),
            CaseLabel::IV => diamond_family(rng, &domain, scope),
            CaseLabel::Reduced => zonogon_family(rng, &domain, scope),
        }?;
        let report = classify_linf3_case(&candidate).ok()?;
        let info = report.case.as_ref()?;
        if info.label == label && info.consistent {
            Some(candidate)
        } else {
            None
        }
    })
}

/// Rank-one map into Euclidean ℝ²: one unit column, two zero columns.
fn rank_one_euclidean(rng: &mut ChaCha8Rng, domain: &PolyhedralSpace) -> Option<Operator> {
    let u = pythagorean_unit(rng);
    let mut cols = vec![u, vec![rat(0), rat(0)], vec![rat(0), rat(0)]];
    scramble_columns(rng, &mut cols);
    Operator::new(
        matrix_from_columns(&cols),
        Space::Polyhedral(domain.clone()),
        Space::Euclidean(EuclideanSpace { dim: 2, field: Field::Real }),
    )
    .ok()
}

/// Columns αu, βu⊥, 0 with α² + β² = 1: every cube vertex attains, every
/// image is smooth, and the image directions span a plane.
fn orthogonal_euclidean(rng: &mut ChaCha8Rng, domain: &PolyhedralSpace) -> Option<Operator> {
    let (a, b, c) = TRIPLES[rng.random_range(0..TRIPLES.len())];
    let (alpha, beta) = (ratio(a, c), ratio(b, c));
    let u = pythagorean_unit(rng);
    let up = rotate90(&u);
    let mut cols = vec![
        linalg::scale(&u, &alpha),
        linalg::scale(&up, &beta),
        vec![rat(0), rat(0)],
    ];
    scramble_columns(rng, &mut cols);
    Operator::new(
        matrix_from_columns(&cols),
        Space::Polyhedral(domain.clone()),
        Space::Euclidean(EuclideanSpace { dim: 2, field: Field::Real }),
    )
    .ok()
}

enum Extension {
    /// codomain exactly spans the attained segment — two images are corners
    None,
    /// one end of the segment extended — one image stays a corner
    One,
    /// both ends extended — all images interior to one edge pair
    Both,
}

/// The "parallel columns" family: columns c, βc, e with 0 < β < 1, so the
/// cube maps onto four points of the segment {tc + e}. The codomain is a
/// parallelogram whose top edge carries that segment; extending the edge
/// past the extreme images controls how many of them remain corners.
fn parallel_family(
    rng: &mut ChaCha8Rng,
    domain: &PolyhedralSpace,
    scope: &Scope,
    ext: Extension,
) -> Option<Operator> {
    let (c, e) = independent_pair(rng, 3);
    let q = rng.random_range(2..=5);
    let p = rng.random_range(1..q);
    let beta = ratio(p, q);
    let mut bump = || ratio(1, rng.random_range(1..=3));
    let reach = rat(1) + &beta;
    let (right, left) = match ext {
        Extension::None => (reach.clone(), reach.clone()),
        Extension::One => (reach.clone(), &reach + bump()),
        Extension::Both => {
            let m = &reach + bump();
            (m.clone(), m)
        }
    };
    // top edge from −left·c + e to right·c + e; vertices of the codomain
    let v1 = linalg::add(&linalg::scale(&c, &right), &e);
    let v2 = linalg::sub_vec(&linalg::scale(&c, &left), &e);
    let codomain = polygon(vec![v1, v2], scope)?;
    let mut cols = vec![c.clone(), linalg::scale(&c, &beta), e];
    scramble_columns(rng, &mut cols);
    let t = Operator::new(
        matrix_from_columns(&cols),
        Space::Polyhedral(domain.clone()),
        Space::Polyhedral(codomain),
    )
    .ok()?;
    operator_norm(&t).ok()?.is_one().then_some(t)
}

/// Columns c, 0, e with codomain conv{±(c+e), ±(c−e)}: every image is a
/// corner of the codomain.
fn diamond_family(
    rng: &mut ChaCha8Rng,
    domain: &PolyhedralSpace,
    scope: &Scope,
) -> Option<Operator> {
    let (c, e) = independent_pair(rng, 3);
    let codomain = polygon(
        vec![linalg::add(&c, &e), linalg::sub_vec(&c, &e)],
        scope,
    )?;
    let mut cols = vec![c, vec![rat(0), rat(0)], e];
    scramble_columns(rng, &mut cols);
    let t = Operator::new(
        matrix_from_columns(&cols),
        Space::Polyhedral(domain.clone()),
        Space::Polyhedral(codomain),
    )
    .ok()?;
    operator_norm(&t).ok()?.is_one().then_some(t)
}

/// Generic three-column map onto its own image zonogon: six of the eight
/// cube vertices land on corners, the remaining antipodal pair falls
/// strictly inside, giving a six-point attainment set.
fn zonogon_family(
    rng: &mut ChaCha8Rng,
    domain: &PolyhedralSpace,
    scope: &Scope,
) -> Option<Operator> {
    let cols: Vec<Vector> = (0..3).map(|_| nonzero_small_vec(rng, 2, 4)).collect();
    let images: Vec<Vector> = domain
        .vertices()
        .iter()
        .map(|v| {
            let mut acc = vec![rat(0), rat(0)];
            for (x, col) in v.iter().zip(&cols) {
                acc = linalg::add(&acc, &linalg::scale(col, x));
            }
            acc
        })
        .collect();
    let codomain = validate_polyhedral_scoped(&images, scope).ok()?.space;
    if codomain.vertices().len() != 6 {
        return None;
    }
    let t = Operator::new(
        matrix_from_columns(&cols),
        Space::Polyhedral(domain.clone()),
        Space::Polyhedral(codomain),
    )
    .ok()?;
    let att = norm_attainment_ext(&t).ok()?;
    (att.attaining_vertices.len() == 6).then_some(t)
}

/// A zonogon instance with one attained corner flattened into an edge, so
/// the attaining images mix point-smoothness 1 and 2. Used by the sum-rule
/// suite for variety beyond the all-corner case.
pub fn zonogon_with_flat_vertex(
    seed: u64,
    scope: &Scope,
) -> Result<Generated<Operator>, GenError> {
    let domain = PolyhedralSpace::linf(3, scope).expect("scope admits dim 3");
    search(seed, 0xF1A7, |rng| {
        let t = zonogon_family(rng, &domain, scope)?;
        let cod = match &t.codomain {
            Space::Polyhedral(p) => p,
            _ => unreachable!(),
        };
        // pick an attained corner p and its hull-neighbor q, then extend the
        // edge beyond p so p becomes edge-interior while staying on the
        // boundary of the enlarged ball
        let att = norm_attainment_ext(&t).ok()?;
        let p = t.apply(&att.attaining_vertices[rng.random_range(0..6)]);
        let mut verts: Vec<Vector> = cod.vertices().to_vec();
        verts.sort_by(|a, b| {
            let ang = |v: &Vector| {
                crate::scalar::rat_to_f64(&v[1]).atan2(crate::scalar::rat_to_f64(&v[0]))
            };
            ang(a).partial_cmp(&ang(b)).unwrap()
        });
        let i = verts.iter().position(|v| *v == p)?;
        let q = verts[(i + 1) % verts.len()].clone();
        let stretch = ratio(rng.random_range(1..=2), 3);
        let p_ext = linalg::add(&p, &linalg::scale(&linalg::sub_vec(&p, &q), &stretch));
        let mut new_pts: Vec<Vector> = verts.iter().filter(|v| **v != p).cloned().collect();
        new_pts.push(p_ext);
        let enlarged = polygon(new_pts, scope)?;
        // hypothesis re-check: attainment set unchanged, p now smooth
        if enlarged.norm(&p).ok()? != rat(1) || enlarged.point_smoothness(&p).ok()? != 1 {
            return None;
        }
        let t2 = Operator::new(
            t.matrix.clone(),
            t.domain.clone(),
            Space::Polyhedral(enlarged),
        )
        .ok()?;
        let att2 = norm_attainment_ext(&t2).ok()?;
        (att2.attaining_vertices == att.attaining_vertices).then_some(t2)
    })
}

/// Unit-norm maps whose attainment set spans the attaining vertices and
/// whose images are all corners with full point-smoothness: either the
/// six-point zonogon family (m=2, r=3) or a signed projection onto ℓ∞²
/// (eight attaining vertices, r=3).
pub fn mr_rule_instance(seed: u64, scope: &Scope) -> Result<Generated<Operator>, GenError> {
    let domain = PolyhedralSpace::linf(3, scope).expect("scope admits dim 3");
    search(seed, 0x3B17, |rng| {
        if rng.random_bool(0.5) {
            zonogon_family(rng, &domain, scope)
        } else {
            let mut cols = vec![
                vec![rat(1), rat(0)],
                vec![rat(0), rat(1)],
                vec![rat(0), rat(0)],
            ];
            scramble_columns(rng, &mut cols);
            Operator::new(
                matrix_from_columns(&cols),
                Space::Polyhedral(domain.clone()),
                Space::Polyhedral(PolyhedralSpace::linf(2, scope).ok()?),
            )
            .ok()
        }
    })
}

/// A random polyhedral space of the given dimension: the standard balls or
/// a perturbed cross-polytope (dim ≥ 3) / random polygon (dim 2).
pub fn random_space(rng: &mut ChaCha8Rng, dim: usize, scope: &Scope) -> Option<PolyhedralSpace> {
    match rng.random_range(0..3) {
        0 => PolyhedralSpace::linf(dim, scope).ok(),
        1 => PolyhedralSpace::l1(dim, scope).ok(),
        _ => {
            if dim == 2 {
                let k = rng.random_range(2..=4);
                let pts: Vec<Vector> = (0..k).map(|_| nonzero_small_vec(rng, 2, 3)).collect();
                polygon(pts, scope)
            } else {
                // perturbed cross-polytope: one vertex pair per axis keeps
                // facet enumeration cheap in dims 3 and 4
                let mut pts = Vec::new();
                for i in 0..dim {
                    let mut v = small_vec(rng, dim, 1);
                    v[i] = rat(rng.random_range(2..=3));
                    pts.push(v);
                }
                if linalg::rank(&pts) < dim {
                    return None;
                }
                polygon(pts, scope)
            }
        }
    }
}

/// Random nonzero rational operator between random polyhedral spaces.
/// Smoothness order is scale-invariant, so no normalization is applied.
pub fn random_polyhedral_operator(
    seed: u64,
    dims: std::ops::RangeInclusive<usize>,
    scope: &Scope,
) -> Result<Generated<Operator>, GenError> {
    search(seed, 0xAD01, |rng| {
        let dd = rng.random_range(dims.clone());
        let cd = rng.random_range(dims.clone());
        let domain = random_space(rng, dd, scope)?;
        let codomain = random_space(rng, cd, scope)?;
        // small ±1/0 entries most of the time: ties in the norm maximum are
        // what produce rich attainment sets and higher orders
        let sparse = rng.random_bool(0.6);
        let matrix: Vec<Vector> = (0..cd)
            .map(|_| {
                (0..dd)
                    .map(|_| {
                        if sparse {
                            rat(rng.random_range(-1..=1i64))
                        } else {
                            let n = rng.random_range(-3..=3i64);
                            let d = rng.random_range(1..=2i64);
                            ratio(n, d)
                        }
                    })
                    .collect()
            })
            .collect();
        if matrix.iter().all(|r| linalg::is_zero_vec(r)) {
            return None;
        }
        Operator::new(
            matrix,
            Space::Polyhedral(domain),
            Space::Polyhedral(codomain),
        )
        .ok()
    })
}

/// Unit-norm ℓ∞³ → random polygon instances for the extremality suites.
/// Even seeds draw a generic matrix and rescale it exactly to norm one
/// (usually not extreme); odd seeds use the all-corner diamond family
/// (always extreme), so both outcomes occur.
pub fn extreme_instance(seed: u64, scope: &Scope) -> Result<Generated<Operator>, GenError> {
    let domain = PolyhedralSpace::linf(3, scope).expect("scope admits dim 3");
    if seed % 2 == 1 {
        return search(seed, 0xE71, |rng| diamond_family(rng, &domain, scope));
    }
    search(seed, 0xE70, |rng| {
        let pts: Vec<Vector> = (0..rng.random_range(2..=4))
            .map(|_| nonzero_small_vec(rng, 2, 3))
            .collect();
        let codomain = polygon(pts, scope)?;
        let matrix: Vec<Vector> = (0..2).map(|_| nonzero_small_vec(rng, 3, 3)).collect();
        let t = Operator::new(
            matrix,
            Space::Polyhedral(domain.clone()),
            Space::Polyhedral(codomain),
        )
        .ok()?;
        let norm = match operator_norm(&t).ok()? {
            OpNorm::Exact(n) => n,
            OpNorm::EuclideanSq(_) => unreachable!(),
        };
        let t = t.scaled(&(rat(1) / norm));
        operator_norm(&t).ok()?.is_one().then_some(t)
    })
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random_range(f64::EPSILON..1.0);
    let u2: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
    loop {
        let g = DMatrix::from_fn(n, n, |_, _| gaussian(rng));
        let qr = g.qr();
        let q = qr.q();
        if q.determinant().abs() > 0.5 {
            return q;
        }
    }
}

fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex<f64>> {
    let g = DMatrix::from_fn(n, n, |_, _| Complex::new(gaussian(rng), gaussian(rng)));
    g.qr().q()
}

/// Hilbert-space operator with a planted top singular value of the given
/// multiplicity and a spectral gap of at least 0.2.
pub fn planted_hilbert(seed: u64, dim: usize, multiplicity: usize, field: Field) -> HilbertMatrix {
    assert!(multiplicity >= 1 && multiplicity <= dim);
    let mut rng = rng_for(seed, 0x41_1B);
    let mut sigma = vec![1.0; multiplicity];
    for _ in multiplicity..dim {
        sigma.push(rng.random_range(0.2..0.8));
    }
    match field {
        Field::Real => {
            let u = random_orthogonal(&mut rng, dim);
            let v = random_orthogonal(&mut rng, dim);
            let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(sigma));
            HilbertMatrix::Real(&u * d * v.transpose())
        }
        Field::Complex => {
            let u = random_unitary(&mut rng, dim);
            let v = random_unitary(&mut rng, dim);
            let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(
                sigma.into_iter().map(|s| Complex::new(s, 0.0)).collect::<Vec<_>>(),
            ));
            HilbertMatrix::Complex(&u * d * v.adjoint())
        }
    }
}

/// (T, A) pair for the Hilbert orthogonality suite: T has a planted spectral
/// gap; A is Gaussian. Pairs whose orthogonality decision sits within
/// `margin` of the boundary are rejected as ill-conditioned.
pub fn hilbert_bj_pair(
    seed: u64,
    dim: usize,
    field: Field,
    margin: f64,
) -> Result<Generated<(HilbertMatrix, HilbertMatrix)>, GenError> {
    search(seed, 0xB111, |rng| {
        let mult = rng.random_range(1..=2);
        let t = planted_hilbert(rng.random_range(0..u64::MAX / 2), dim, mult, field);
        let a = match field {
            Field::Real => HilbertMatrix::Real(DMatrix::from_fn(dim, dim, |_, _| gaussian(rng))),
            Field::Complex => HilbertMatrix::Complex(DMatrix::from_fn(dim, dim, |_, _| {
                Complex::new(gaussian(rng), gaussian(rng))
            })),
        };
        // reject near-boundary decisions: the two routes could legitimately
        // disagree inside the numerical tolerance band
        let norm_t = t.spectral_norm();
        let min = crate::oracle::line_search_min(&t, &a);
        if (min - norm_t).abs() < margin && min < norm_t {
            return None;
        }
        Some((t, a))
    })
}

/// Random (T, A) pair on a shared polyhedral pair, for the exact
/// orthogonality suite.
pub fn bj_polyhedral_pair(
    seed: u64,
    scope: &Scope,
) -> Result<Generated<(Operator, Operator)>, GenError> {
    search(seed, 0xB3, |rng| {
        let dim = rng.random_range(2..=3);
        let domain = PolyhedralSpace::linf(dim, scope).ok()?;
        let codomain = PolyhedralSpace::linf(rng.random_range(2..=3), scope).ok()?;
        let cd = codomain.dim();
        let mk = |rng: &mut ChaCha8Rng| -> Option<Operator> {
            let matrix: Vec<Vector> = (0..cd).map(|_| small_vec(rng, dim, 3)).collect();
            if matrix.iter().all(|r| linalg::is_zero_vec(r)) {
                return None;
            }
            Operator::new(
                matrix,
                Space::Polyhedral(domain.clone()),
                Space::Polyhedral(codomain.clone()),
            )
            .ok()
        };
        let t = mk(rng)?;
        let a = mk(rng)?;
        Some((t, a))
    })
}

/// Independent vertex set {x₁..x_r} ⊂ ℚⁿ and functional set {y₁..y_m} ⊂ ℚᵐ
/// for the outer-product independence property.
pub fn independence_instance(
    seed: u64,
) -> Result<Generated<(Vec<Vector>, Vec<Vector>)>, GenError> {
    search(seed, 0x1D, |rng| {
        let n = rng.random_range(1..=4usize);
        let m = rng.random_range(1..=4usize);
        let r = rng.random_range(1..=n);
        let k = rng.random_range(1..=m);
        let draw_set = |rng: &mut ChaCha8Rng, dim: usize, count: usize| -> Option<Vec<Vector>> {
            let mut set: Vec<Vector> = Vec::new();
            for _ in 0..20 {
                if set.len() == count {
                    break;
                }
                let v = nonzero_small_vec(rng, dim, 4);
                let mut probe = set.clone();
                probe.push(v.clone());
                if linalg::rank(&probe) == probe.len() {
                    set = probe;
                }
            }
            (set.len() == count).then_some(set)
        };
        let xs = draw_set(rng, n, r)?;
        let ys = draw_set(rng, m, k)?;
        Some((xs, ys))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::operator_smoothness;

    fn scope() -> Scope {
        Scope::default()
    }

    #[test]
    fn all_five_labels_generate() {
        for label in [
            CaseLabel::IA,
            CaseLabel::IB,
            CaseLabel::II,
            CaseLabel::III,
            CaseLabel::IV,
        ] {
            let g = linf3_case_instance(7, label, &scope()).unwrap();
            let info = classify_linf3_case(&g.value).unwrap().case.unwrap();
            assert_eq!(info.label, label);
            assert!(info.consistent);
        }
    }

    #[test]
    fn determinism() {
        let a = linf3_case_instance(3, CaseLabel::III, &scope()).unwrap();
        let b = linf3_case_instance(3, CaseLabel::III, &scope()).unwrap();
        assert_eq!(a.value.matrix, b.value.matrix);
        assert_eq!(a.rejections, b.rejections);
    }

    #[test]
    fn reduced_family_has_six_attainers() {
        let g = linf3_case_instance(11, CaseLabel::Reduced, &scope()).unwrap();
        let att = norm_attainment_ext(&g.value).unwrap();
        assert_eq!(att.attaining_vertices.len(), 6);
    }

    #[test]
    fn flat_vertex_instance_mixes_smoothness() {
        let g = zonogon_with_flat_vertex(5, &scope()).unwrap();
        let report = classify_linf3_case(&g.value).unwrap();
        let info = report.case.unwrap();
        assert_eq!(info.label, CaseLabel::Reduced);
        assert!(info.consistent);
        assert!(info.predicted_order < 6);
    }

    #[test]
    fn random_operator_has_equal_adjoint_order() {
        for seed in 0..5 {
            let g = random_polyhedral_operator(seed, 2..=3, &scope()).unwrap();
            let t = g.value;
            let t_star = crate::operator::adjoint(&t, &scope()).unwrap();
            assert_eq!(
                operator_smoothness(&t).unwrap().order,
                operator_smoothness(&t_star).unwrap().order
            );
        }
    }

    #[test]
    fn planted_multiplicity_recovered() {
        for mult in 1..=3 {
            let t = planted_hilbert(mult as u64, 5, mult, Field::Real);
            let s = crate::hilbert::top_singular_subspace(&t, 1e-8).unwrap();
            assert_eq!(s.multiplicity, mult);
        }
    }

    #[test]
    fn extreme_instance_both_parities() {
        let even = extreme_instance(2, &scope()).unwrap();
        let odd = extreme_instance(3, &scope()).unwrap();
        assert!(crate::oracle::extreme_contraction_lp(&odd.value).unwrap());
        // even parity draws are usually non-extreme; just check validity
        assert!(operator_norm(&even.value).unwrap().is_one());
    }
}
