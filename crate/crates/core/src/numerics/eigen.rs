//! Lowest eigenpairs of Hermitian operator matrices.
//!
//! Tridiagonal matrices (every discretized Schrodinger operator here) go
//! through Sturm-count bisection and inverse iteration, O(n) per eigenpair.
//! Wider Hermitian matrices fall back to a dense solve.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use super::{Grid, NumericsError, OperatorMatrix};

/// Relative sup-norm deviation from Hermiticity accepted by
/// [`symmetric_eigensolve`].
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralMetadata {
    pub label: String,
    pub grid: Grid,
    pub hermiticity_tolerance: f64,
    /// Free-form parameter echo, in insertion order.
    pub params: Vec<(String, f64)>,
}

/// Ascending eigenvalues with the residual `|M v - lambda v|_2` of each
/// unit-norm eigenvector.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub eigenvalues: Vec<f64>,
    pub residual_norms: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
    pub metadata: SpectralMetadata,
}

impl SpectralReport {
    pub fn with_param(mut self, name: impl Into<String>, value: f64) -> Self {
        self.metadata.params.push((name.into(), value));
        self
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

/// The `k` lowest eigenpairs of a Hermitian matrix.
///
/// Non-Hermitian input is rejected; spectra of pseudo-Hermitian operators are
/// obtained from their Hermitian conjugation partners.
pub fn symmetric_eigensolve(m: &OperatorMatrix, k: usize) -> Result<SpectralReport, NumericsError> {
    m.check_finite()?;
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITICITY_TOLERANCE {
        return Err(NumericsError::NotHermitian { deviation });
    }
    let k = k.min(m.dim());
    let (eigenvalues, eigenvectors) =
        if m.is_tridiagonal() { tridiagonal_eigenpairs(m, k) } else { dense_eigenpairs(m, k) };
    let residual_norms = eigenvalues
        .iter()
        .zip(&eigenvectors)
        .map(|(&lambda, v)| {
            let mv = m.apply(v);
            mv.iter().zip(v).map(|(a, b)| (a - lambda * b).norm_sqr()).sum::<f64>().sqrt()
        })
        .collect();
    Ok(SpectralReport {
        eigenvalues,
        residual_norms,
        eigenvectors,
        metadata: SpectralMetadata {
            label: m.label().to_string(),
            grid: *m.grid(),
            hermiticity_tolerance: HERMITICITY_TOLERANCE,
            params: Vec::new(),
        },
    })
}

/// Lowest `k` eigenvalues of a tridiagonal matrix with real diagonal whose
/// off-diagonal products `M[i][i+1] * M[i+1][i]` are real and nonnegative.
///
/// Such a matrix is diagonally similar to a real symmetric one, so this
/// covers the non-Hermitian images `D h D^{-1}` of discretized Hermitian
/// operators without a general nonsymmetric eigensolver.
pub fn sign_symmetric_tridiagonal_eigenvalues(m: &OperatorMatrix, k: usize) -> Result<Vec<f64>, NumericsError> {
    if !m.is_tridiagonal() {
        return Err(NumericsError::NotTridiagonal { bandwidth: m.bandwidth() });
    }
    let n = m.dim();
    let scale = m.sup_norm().max(f64::MIN_POSITIVE);
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        let d = m.get(i, i);
        if d.im.abs() > 1e-14 * scale {
            return Err(NumericsError::NotSignSymmetric { index: i });
        }
        diag.push(d.re);
    }
    let mut prods = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let p = m.get(i, i + 1) * m.get(i + 1, i);
        if p.im.abs() > 1e-12 * scale * scale || p.re < -1e-12 * scale * scale {
            return Err(NumericsError::NotSignSymmetric { index: i });
        }
        prods.push(p.re.max(0.0));
    }
    Ok(bisect_lowest(&diag, &prods, k.min(n)))
}

/// Number of eigenvalues strictly below `x` for the tridiagonal matrix with
/// diagonal `diag` and off-diagonal products `prods`.
fn count_below(diag: &[f64], prods: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        q = diag[i] - x - prods[i - 1] / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

#[allow(clippy::needless_range_loop)]
fn bisect_lowest(diag: &[f64], prods: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    let off = |i: usize| prods.get(i).map_or(0.0, |p| p.sqrt());
    let (mut lo0, mut hi0) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let r = off(i) + if i > 0 { off(i - 1) } else { 0.0 };
        lo0 = lo0.min(diag[i] - r);
        hi0 = hi0.max(diag[i] + r);
    }
    let norm = lo0.abs().max(hi0.abs()).max(f64::MIN_POSITIVE);
    let pivmin = f64::MIN_POSITIVE * prods.iter().fold(1.0f64, |a, &p| a.max(p));
    lo0 -= 2.0 * f64::EPSILON * norm + pivmin;
    hi0 += 2.0 * f64::EPSILON * norm + pivmin;
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        // eigenvalues are found in order, so the previous one bounds from below
        let (mut lo, mut hi) = (out.last().map_or(lo0, |&v: &f64| v.max(lo0) - 4.0 * f64::EPSILON * norm), hi0);
        if count_below(diag, prods, lo, pivmin) > j {
            lo = lo0;
        }
        // bisect down to adjacent floats; zero pivots count as negative, so
        // lambda_j lies in (lo, hi]
        for _ in 0..2100 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if count_below(diag, prods, mid, pivmin) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(hi);
    }
    out
}

/// LU factorization with partial pivoting of a real tridiagonal matrix, laid
/// out as in LAPACK `dgttrf`.
struct TridiagonalLu {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn factor(diag: &[f64], off: &[f64], shift: f64, tiny: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|a| a - shift).collect();
        let mut dl = off.to_vec();
        let mut du = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let f = dl[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -f;
                }
                swapped[i] = true;
            }
        }
        if let Some(last) = d.last_mut() {
            if last.abs() < tiny {
                *last = tiny;
            }
        }
        for v in d.iter_mut() {
            if *v == 0.0 {
                *v = tiny;
            }
        }
        Self { dl, d, du, du2, swapped }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let t = b[i];
                b[i] = b[i + 1];
                b[i + 1] = t - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// Eigenvector of the real symmetric tridiagonal matrix by inverse iteration,
/// orthogonalized against `previous` (vectors of nearby eigenvalues).
fn inverse_iteration(diag: &[f64], off: &[f64], lambda: f64, previous: &[&Vec<f64>], norm: f64) -> Vec<f64> {
    let n = diag.len();
    let tiny = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
    let lu = TridiagonalLu::factor(diag, off, lambda, tiny);
    // deterministic start vector with no special symmetry
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i as f64) * 0.7548776662).sin()).collect();
    normalize(&mut v);
    for _ in 0..6 {
        lu.solve(&mut v);
        for p in previous {
            let dot: f64 = v.iter().zip(p.iter()).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(p.iter()).for_each(|(a, b)| *a -= dot * b);
        }
        normalize(&mut v);
    }
    v
}

/// Fix the global phase so the largest-magnitude entry is real positive.
pub(crate) fn fix_phase(v: &mut [Complex64]) {
    let (mut best, mut idx) = (0.0, 0);
    for (i, z) in v.iter().enumerate() {
        if z.norm() > best * (1.0 + 1e-10) {
            best = z.norm();
            idx = i;
        }
    }
    if best > 0.0 {
        let phase = v[idx].conj() / best;
        v.iter_mut().for_each(|z| *z *= phase);
    }
}

fn tridiagonal_eigenpairs(m: &OperatorMatrix, k: usize) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let n = m.dim();
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    // Hermitian tridiagonal = Phi T Phi^* with T real symmetric
    let upper: Vec<Complex64> = (0..n - 1).map(|i| m.get(i, i + 1)).collect();
    let off: Vec<f64> = upper.iter().map(|z| z.norm()).collect();
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n - 1 {
        phases[i + 1] = if off[i] > 0.0 { phases[i] * upper[i].conj() / off[i] } else { phases[i] };
    }
    let prods: Vec<f64> = off.iter().map(|b| b * b).collect();
    let values = bisect_lowest(&diag, &prods, k);
    let norm = m.sup_norm() * 3.0;
    let cluster = 1e-8 * norm.max(1.0);
    let mut real_vectors: Vec<Vec<f64>> = Vec::with_capacity(k);
    for (j, &lambda) in values.iter().enumerate() {
        let previous: Vec<&Vec<f64>> =
            (0..j).filter(|&i| (values[i] - lambda).abs() < cluster).map(|i| &real_vectors[i]).collect();
        let v = inverse_iteration(&diag, &off, lambda, &previous, norm);
        real_vectors.push(v);
    }
    let vectors = real_vectors
        .into_iter()
        .map(|v| {
            let mut c: Vec<Complex64> = v.iter().zip(&phases).map(|(&x, &p)| p * x).collect();
            fix_phase(&mut c);
            c
        })
        .collect();
    (values, vectors)
}

fn dense_eigenpairs(m: &OperatorMatrix, k: usize) -> (Vec<f64>, Vec<Vec<Complex64>>) {
    let eig = SymmetricEigen::new(m.to_dense());
    let mut order: Vec<usize> = (0..m.dim()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    order
        .into_iter()
        .take(k)
        .map(|i| {
            let mut v: Vec<Complex64> = eig.eigenvectors.column(i).iter().copied().collect();
            fix_phase(&mut v);
            (eig.eigenvalues[i], v)
        })
        .unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{conjugate_by_diagonal, d2_matrix, diag_matrix_real};
    use nalgebra::DMatrix;

    #[test]
    fn diagonal_two_by_two() {
        let g = Grid::new(1.0, 3).unwrap();
        // 3x3 is the smallest grid; embed diag(1, 2, 5)
        let m = crate::numerics::diag_from_values(&[1.0, 2.0, 5.0].map(|x| Complex64::new(x, 0.0)), &g).unwrap();
        let r = symmetric_eigensolve(&m, 2).unwrap();
        assert_eq!(r.eigenvalues, vec![1.0, 2.0]);
    }

    #[test]
    fn oscillator_spectrum() {
        let g = Grid::new(10.0, 2001).unwrap();
        let h = &(-1.0 * &d2_matrix(&g).unwrap()) + &diag_matrix_real(|z| z * z, &g).unwrap();
        let r = symmetric_eigensolve(&h, 8).unwrap();
        for (n, e) in r.eigenvalues.iter().enumerate() {
            let exact = 2.0 * n as f64 + 1.0;
            assert!(((e - exact) / exact).abs() < 1e-4, "level {n}: {e}");
        }
        let scale = h.sup_norm();
        assert!(r.residual_norms.iter().all(|&res| res <= 1e-8 * scale), "{:?}", r.residual_norms);
    }

    #[test]
    fn rejects_non_hermitian() {
        let g = Grid::new(2.0, 11).unwrap();
        let h = &(-1.0 * &d2_matrix(&g).unwrap()) + &diag_matrix_real(|z| z * z, &g).unwrap();
        let d: Vec<f64> = g.points().iter().map(|x| (0.4 * x * x).exp()).collect();
        let nh = conjugate_by_diagonal(&h, &d).unwrap();
        assert!(matches!(symmetric_eigensolve(&nh, 2), Err(NumericsError::NotHermitian { .. })));
        // but its spectrum is reachable through the product form
        let a = sign_symmetric_tridiagonal_eigenvalues(&nh, 11).unwrap();
        let b = symmetric_eigensolve(&h, 11).unwrap().eigenvalues;
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() <= 1e-12 * y.abs().max(1.0));
        }
    }

    #[test]
    fn complex_hermitian_tridiagonal_uses_phases() {
        let g = Grid::new(1.0, 7).unwrap();
        let mut dense = DMatrix::<Complex64>::zeros(7, 7);
        for i in 0..7 {
            dense[(i, i)] = Complex64::new(i as f64 * 0.3 - 1.0, 0.0);
            if i + 1 < 7 {
                let z = Complex64::new(0.5, 0.2 * i as f64 - 0.4);
                dense[(i, i + 1)] = z;
                dense[(i + 1, i)] = z.conj();
            }
        }
        let banded = OperatorMatrix::from_dense(g, &dense, "t").unwrap().compact();
        assert!(banded.is_tridiagonal());
        let fast = symmetric_eigensolve(&banded, 7).unwrap();
        let mut slow = SymmetricEigen::new(dense).eigenvalues.iter().copied().collect::<Vec<f64>>();
        slow.sort_by(f64::total_cmp);
        for (a, b) in fast.eigenvalues.iter().zip(&slow) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(fast.residual_norms.iter().all(|&r| r < 1e-12));
    }

    #[test]
    fn phase_convention() {
        let mut v = vec![Complex64::new(0.0, -2.0), Complex64::new(1.0, 0.0)];
        fix_phase(&mut v);
        assert!((v[0] - Complex64::new(2.0, 0.0)).norm() < 1e-15);
        assert!((v[1] - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }
}
