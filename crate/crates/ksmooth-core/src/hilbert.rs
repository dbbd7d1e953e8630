//! Smoothness analysis of operators between real and complex Euclidean
//! spaces.
//!
//! The norm attainment set of such an operator is the unit sphere of the top
//! singular subspace H0. When the top singular value has a strict gap, the
//! smoothness order is n(n+1)/2 over the reals and n² over the complexes,
//! where n = dim H0. A seeded sampling oracle recomputes the order as the
//! numerical rank of sampled supporting functionals, and Birkhoff-James
//! orthogonality is decided through the restriction of the bilinear form
//! x ↦ ⟨Ax, Tx⟩ to H0.

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const DEFAULT_GAP_TOL: f64 = 1e-8;
pub const RANK_REL_TOL: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum HilbertError {
    #[error("zero operator")]
    ZeroOperator,
    #[error("no spectral gap: the top singular subspace is the whole domain, smoothness is undefined")]
    NoGap,
    #[error("operator shapes do not match")]
    ShapeMismatch,
}

/// A matrix over the real or complex field.
#[derive(Debug, Clone, PartialEq)]
pub enum HilbertMatrix {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex<f64>>),
}

impl HilbertMatrix {
    pub fn domain_dim(&self) -> usize {
        match self {
            HilbertMatrix::Real(m) => m.ncols(),
            HilbertMatrix::Complex(m) => m.ncols(),
        }
    }

    pub fn codomain_dim(&self) -> usize {
        match self {
            HilbertMatrix::Real(m) => m.nrows(),
            HilbertMatrix::Complex(m) => m.nrows(),
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, HilbertMatrix::Real(_))
    }

    fn singular_values_desc(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = match self {
            HilbertMatrix::Real(m) => m.clone().svd(false, false).singular_values.iter().copied().collect(),
            HilbertMatrix::Complex(m) => m.clone().svd(false, false).singular_values.iter().copied().collect(),
        };
        // treat the kernel directions of a wide matrix as singular value 0
        while sv.len() < self.domain_dim() {
            sv.push(0.0);
        }
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }

    pub fn spectral_norm(&self) -> f64 {
        self.singular_values_desc()[0]
    }
}

/// Basis of the top singular subspace, real or complex columns.
#[derive(Debug, Clone)]
pub enum H0Basis {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex<f64>>),
}

/// Top singular value, its multiplicity, and the subspace it is attained on.
#[derive(Debug, Clone)]
pub struct SingularStructure {
    pub sigma_max: f64,
    pub h0_basis: H0Basis,
    pub multiplicity: usize,
    /// sigma_max minus the largest singular value outside the top cluster.
    pub gap: f64,
}

/// Singular value decomposition with the top cluster identified via
/// `gap_tol`. Errors with `NoGap` when the cluster covers the whole domain,
/// matching the strict-gap hypothesis smoothness needs.
pub fn top_singular_subspace(
    t: &HilbertMatrix,
    gap_tol: f64,
) -> Result<SingularStructure, HilbertError> {
    let dom = t.domain_dim();
    match t {
        HilbertMatrix::Real(m) => {
            let svd = m.clone().svd(false, true);
            let vt = svd.v_t.unwrap();
            let mut sv: Vec<(f64, DVector<f64>)> = svd
                .singular_values
                .iter()
                .enumerate()
                .map(|(i, &s)| (s, vt.row(i).transpose()))
                .collect();
            sv.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let sigma_max = sv[0].0;
            if sigma_max <= f64::EPSILON {
                return Err(HilbertError::ZeroOperator);
            }
            let mult = sv.iter().take_while(|(s, _)| sigma_max - s <= gap_tol).count();
            if mult == dom {
                return Err(HilbertError::NoGap);
            }
            // Singular vectors beyond min(m, n) span the kernel, reachable
            // only when the cluster already stopped; gap then closes at the
            // largest remaining value (0 if the explicit list is exhausted).
            let next = sv.get(mult).map(|(s, _)| *s).unwrap_or(0.0);
            let mut basis = DMatrix::zeros(dom, mult);
            for (j, (_, v)) in sv.iter().take(mult).enumerate() {
                basis.set_column(j, v);
            }
            Ok(SingularStructure {
                sigma_max,
                h0_basis: H0Basis::Real(basis),
                multiplicity: mult,
                gap: sigma_max - next,
            })
        }
        HilbertMatrix::Complex(m) => {
            let svd = m.clone().svd(false, true);
            let vt = svd.v_t.unwrap();
            let mut sv: Vec<(f64, DVector<Complex<f64>>)> = svd
                .singular_values
                .iter()
                .enumerate()
                .map(|(i, &s)| (s, vt.row(i).adjoint()))
                .collect();
            sv.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let sigma_max = sv[0].0;
            if sigma_max <= f64::EPSILON {
                return Err(HilbertError::ZeroOperator);
            }
            let mult = sv.iter().take_while(|(s, _)| sigma_max - s <= gap_tol).count();
            if mult == dom {
                return Err(HilbertError::NoGap);
            }
            let next = sv.get(mult).map(|(s, _)| *s).unwrap_or(0.0);
            let mut basis = DMatrix::zeros(dom, mult);
            for (j, (_, v)) in sv.iter().take(mult).enumerate() {
                basis.set_column(j, v);
            }
            Ok(SingularStructure {
                sigma_max,
                h0_basis: H0Basis::Complex(basis),
                multiplicity: mult,
                gap: sigma_max - next,
            })
        }
    }
}

/// Closed-form smoothness order: n(n+1)/2 real, n² complex, n = dim H0.
pub fn hilbert_smoothness(t: &HilbertMatrix, gap_tol: f64) -> Result<usize, HilbertError> {
    let s = top_singular_subspace(t, gap_tol)?;
    let n = s.multiplicity;
    Ok(if t.is_real() { n * (n + 1) / 2 } else { n * n })
}

/// Recomputes the order as the numerical rank of the span of the sampled
/// supporting functionals S ↦ ⟨Sx, Tx⟩, x a random unit vector of H0:
/// real-linear span over the reals, complex-linear span over the complexes.
/// Deterministic given the seed.
pub fn sampled_rank_oracle(
    t: &HilbertMatrix,
    gap_tol: f64,
    sample_count: usize,
    seed: u64,
) -> Result<usize, HilbertError> {
    let s = top_singular_subspace(t, gap_tol)?;
    let n = s.multiplicity;
    let samples = sample_count.max(4 * n * n + 8);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match (&s.h0_basis, t) {
        (H0Basis::Real(basis), HilbertMatrix::Real(m)) => {
            let mut rows = DMatrix::zeros(samples, m.nrows() * m.ncols());
            for k in 0..samples {
                let c = random_unit_real(&mut rng, n);
                let x = basis * c;
                let tx = m * &x;
                // flattened rank-one functional (Tx)(x^T)
                let mut col = 0;
                for i in 0..tx.len() {
                    for j in 0..x.len() {
                        rows[(k, col)] = tx[i] * x[j];
                        col += 1;
                    }
                }
            }
            Ok(numerical_rank_real(&rows, RANK_REL_TOL))
        }
        (H0Basis::Complex(basis), HilbertMatrix::Complex(m)) => {
            let mut rows = DMatrix::zeros(samples, m.nrows() * m.ncols());
            for k in 0..samples {
                let c = random_unit_complex(&mut rng, n);
                let x = basis * c;
                let tx = m * &x;
                // entries of the functional S ↦ ⟨Sx, Tx⟩ = Σ conj(Tx)_i S_ij x_j
                let mut col = 0;
                for i in 0..tx.len() {
                    for j in 0..x.len() {
                        rows[(k, col)] = tx[i].conj() * x[j];
                        col += 1;
                    }
                }
            }
            Ok(numerical_rank_complex(&rows, RANK_REL_TOL))
        }
        _ => unreachable!(),
    }
}

/// Birkhoff-James orthogonality T ⊥ A through the restriction of
/// x ↦ ⟨Ax, Tx⟩ to the top singular subspace of T. Real case: true iff 0
/// lies in the eigenvalue interval of the symmetric part. Complex case: true
/// iff 0 lies in the numerical range, tested via rotated Hermitian parts.
pub fn bj_orthogonal_hilbert(
    t: &HilbertMatrix,
    a: &HilbertMatrix,
    gap_tol: f64,
) -> Result<bool, HilbertError> {
    if t.domain_dim() != a.domain_dim() || t.codomain_dim() != a.codomain_dim() {
        return Err(HilbertError::ShapeMismatch);
    }
    let s = top_singular_subspace(t, gap_tol)?;
    match (&s.h0_basis, t, a) {
        (H0Basis::Real(basis), HilbertMatrix::Real(tm), HilbertMatrix::Real(am)) => {
            let restricted = basis.transpose() * am.transpose() * tm * basis;
            let sym = (&restricted + restricted.transpose()) * 0.5;
            let eig = sym.symmetric_eigenvalues();
            let tol = 1e-12 * s.sigma_max.max(1.0) * a.spectral_norm().max(1.0);
            let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            Ok(min <= tol && max >= -tol)
        }
        (H0Basis::Complex(basis), HilbertMatrix::Complex(tm), HilbertMatrix::Complex(am)) => {
            let restricted = basis.adjoint() * am.adjoint() * tm * basis;
            let tol = 1e-12 * s.sigma_max.max(1.0) * a.spectral_norm().max(1.0);
            // 0 is outside the (convex) numerical range iff some rotation
            // makes the Hermitian part positive definite.
            let steps = 720;
            for k in 0..steps {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / steps as f64;
                let rot = Complex::new(theta.cos(), theta.sin());
                let rotated = restricted.map(|z| z * rot);
                let herm = (&rotated + rotated.adjoint()) * Complex::new(0.5, 0.0);
                let eig = herm.symmetric_eigenvalues();
                if eig.iter().all(|&l| l > tol) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Err(HilbertError::ShapeMismatch),
    }
}

fn random_unit_real(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(n, |_, _| standard_normal(rng));
        let norm = v.norm();
        if norm > 1e-8 {
            return v / norm;
        }
    }
}

fn random_unit_complex(rng: &mut ChaCha8Rng, n: usize) -> DVector<Complex<f64>> {
    loop {
        let v = DVector::from_fn(n, |_, _| {
            Complex::new(standard_normal(rng), standard_normal(rng))
        });
        let norm = v.norm();
        if norm > 1e-8 {
            return v.map(|z| z / norm);
        }
    }
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = rng.random::<f64>().max(1e-12);
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn numerical_rank_real(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0f64, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > top * rel_tol).count()
}

pub fn numerical_rank_complex(m: &DMatrix<Complex<f64>>, rel_tol: f64) -> usize {
    let sv = m.clone().svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0f64, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > top * rel_tol).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real_diag(d: &[f64]) -> HilbertMatrix {
        HilbertMatrix::Real(DMatrix::from_diagonal(&DVector::from_row_slice(d)))
    }

    fn complex_diag(d: &[f64]) -> HilbertMatrix {
        let n = d.len();
        HilbertMatrix::Complex(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(d[i], 0.0)
            } else {
                Complex::new(0.0, 0.0)
            }
        }))
    }

    #[test]
    fn top_subspace_diagonal() {
        let s = top_singular_subspace(&real_diag(&[1.0, 1.0, 0.5]), DEFAULT_GAP_TOL).unwrap();
        assert_eq!(s.multiplicity, 2);
        assert!((s.sigma_max - 1.0).abs() < 1e-12);
        assert!((s.gap - 0.5).abs() < 1e-12);
        // H0 = span{e1, e2}: basis vectors have zero third coordinate
        match &s.h0_basis {
            H0Basis::Real(b) => {
                assert_eq!(b.ncols(), 2);
                for j in 0..2 {
                    assert!(b[(2, j)].abs() < 1e-12);
                }
            }
            _ => unreachable!(),
        }

        let s = top_singular_subspace(&real_diag(&[1.0, 0.5, 1.0 / 3.0]), DEFAULT_GAP_TOL).unwrap();
        assert_eq!(s.multiplicity, 1);
    }

    #[test]
    fn no_gap_on_identity() {
        assert!(matches!(
            top_singular_subspace(&real_diag(&[1.0, 1.0, 1.0]), DEFAULT_GAP_TOL),
            Err(HilbertError::NoGap)
        ));
    }

    #[test]
    fn zero_operator() {
        assert!(matches!(
            top_singular_subspace(&real_diag(&[0.0, 0.0]), DEFAULT_GAP_TOL),
            Err(HilbertError::ZeroOperator)
        ));
    }

    #[test]
    fn smoothness_formulas() {
        assert_eq!(
            hilbert_smoothness(&real_diag(&[1.0, 1.0, 0.5]), DEFAULT_GAP_TOL).unwrap(),
            3
        );
        assert_eq!(
            hilbert_smoothness(&real_diag(&[1.0, 0.5, 1.0 / 3.0]), DEFAULT_GAP_TOL).unwrap(),
            1
        );
        assert_eq!(
            hilbert_smoothness(&complex_diag(&[1.0, 1.0, 0.5]), DEFAULT_GAP_TOL).unwrap(),
            4
        );
    }

    #[test]
    fn oracle_matches_formula() {
        assert_eq!(
            sampled_rank_oracle(&real_diag(&[1.0, 1.0, 0.5]), DEFAULT_GAP_TOL, 0, 7).unwrap(),
            3
        );
        assert_eq!(
            sampled_rank_oracle(&real_diag(&[1.0, 1.0, 1.0, 0.5]), DEFAULT_GAP_TOL, 0, 7).unwrap(),
            6
        );
        assert_eq!(
            sampled_rank_oracle(&complex_diag(&[1.0, 1.0, 0.5]), DEFAULT_GAP_TOL, 0, 7).unwrap(),
            4
        );
    }

    #[test]
    fn oracle_deterministic() {
        let t = real_diag(&[1.0, 1.0, 0.5]);
        let a = sampled_rank_oracle(&t, DEFAULT_GAP_TOL, 32, 42).unwrap();
        let b = sampled_rank_oracle(&t, DEFAULT_GAP_TOL, 32, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bj_examples() {
        // identity has no gap
        assert!(matches!(
            bj_orthogonal_hilbert(&real_diag(&[1.0, 1.0]), &real_diag(&[1.0, 0.0]), DEFAULT_GAP_TOL),
            Err(HilbertError::NoGap)
        ));
        // T = diag(1, 1/2), A = e2⊗e2: ⟨Ae1, Te1⟩ = 0
        assert_eq!(
            bj_orthogonal_hilbert(&real_diag(&[1.0, 0.5]), &real_diag(&[0.0, 1.0]), DEFAULT_GAP_TOL)
                .unwrap(),
            true
        );
        // restricted symmetric part has eigenvalues ±1
        assert_eq!(
            bj_orthogonal_hilbert(
                &real_diag(&[1.0, 1.0, 0.5]),
                &real_diag(&[1.0, -1.0, 0.0]),
                DEFAULT_GAP_TOL
            )
            .unwrap(),
            true
        );
        // A = T on H0: strictly positive form, not orthogonal
        assert_eq!(
            bj_orthogonal_hilbert(&real_diag(&[1.0, 0.5]), &real_diag(&[1.0, 0.0]), DEFAULT_GAP_TOL)
                .unwrap(),
            false
        );
    }

    #[test]
    fn bj_complex() {
        let t = complex_diag(&[1.0, 1.0, 0.5]);
        let a = complex_diag(&[1.0, -1.0, 0.0]);
        assert_eq!(bj_orthogonal_hilbert(&t, &a, DEFAULT_GAP_TOL).unwrap(), true);
        let a = complex_diag(&[1.0, 1.0, 0.0]);
        assert_eq!(bj_orthogonal_hilbert(&t, &a, DEFAULT_GAP_TOL).unwrap(), false);
    }

    #[test]
    fn wide_matrix_kernel_counts_as_zero() {
        // 2×3 map: kernel direction pads the singular values with 0
        let m = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let s = top_singular_subspace(&HilbertMatrix::Real(m), DEFAULT_GAP_TOL).unwrap();
        assert_eq!(s.multiplicity, 2);
        assert!((s.gap - 1.0).abs() < 1e-12);
    }
}
