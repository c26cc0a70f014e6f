//! Banded complex matrices standing in for differential operators on a grid.
//!
//! Every operator built from finite-difference stencils and multiplication
//! operators is banded; products widen the band additively. Storage is by
//! band, but the algebra is that of the dense `n x n` matrix and
//! [`OperatorMatrix::to_dense`] recovers it.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{Grid, NumericsError};

#[derive(Clone, Debug)]
pub struct OperatorMatrix {
    grid: Grid,
    lower: usize,
    upper: usize,
    band: Vec<Complex64>,
    label: String,
}

impl OperatorMatrix {
    pub fn zeros(grid: Grid, lower: usize, upper: usize, label: impl Into<String>) -> Self {
        let n = grid.n_points();
        let (lower, upper) = (lower.min(n - 1), upper.min(n - 1));
        Self { grid, lower, upper, band: vec![Complex64::new(0.0, 0.0); n * (lower + upper + 1)], label: label.into() }
    }

    pub fn identity(grid: Grid) -> Self {
        let mut m = Self::zeros(grid, 0, 0, "I");
        m.band.iter_mut().for_each(|e| *e = Complex64::new(1.0, 0.0));
        m
    }

    pub fn from_dense(grid: Grid, dense: &DMatrix<Complex64>, label: impl Into<String>) -> Result<Self, NumericsError> {
        let n = grid.n_points();
        if dense.nrows() != n || dense.ncols() != n {
            return Err(NumericsError::DimensionMismatch { expected: n, found: dense.nrows() });
        }
        let mut m = Self::zeros(grid, n - 1, n - 1, label);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, dense[(i, j)]);
            }
        }
        m.check_finite()?;
        Ok(m)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.n_points()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `(lower, upper)` bandwidths.
    pub fn bandwidth(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }

    fn width(&self) -> usize {
        self.lower + self.upper + 1
    }

    /// Column range stored for row `i`.
    fn row_range(&self, i: usize) -> std::ops::Range<usize> {
        let lo = i.saturating_sub(self.lower);
        let hi = (i + self.upper + 1).min(self.dim());
        lo..hi
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        if j + self.lower < i || j > i + self.upper {
            None
        } else {
            Some(i * self.width() + j + self.lower - i)
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.slot(i, j).map_or(Complex64::new(0.0, 0.0), |s| self.band[s])
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex64) {
        let s = self.slot(i, j).expect("entry outside band");
        self.band[s] = v;
    }

    /// Stored entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim()).flat_map(move |i| self.row_range(i).map(move |j| (i, j, self.get(i, j))))
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().into_iter().sum()
    }

    pub fn sup_norm(&self) -> f64 {
        self.band.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn check_finite(&self) -> Result<(), NumericsError> {
        match self.band.iter().position(|e| !(e.re.is_finite() && e.im.is_finite())) {
            Some(p) => Err(NumericsError::NonFinite { index: p / self.width() }),
            None => Ok(()),
        }
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut d = DMatrix::zeros(n, n);
        for (i, j, v) in self.entries() {
            d[(i, j)] = v;
        }
        d
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim(), "vector length does not match operator");
        (0..self.dim()).map(|i| self.row_range(i).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn apply_real(&self, v: &[f64]) -> Vec<Complex64> {
        let v: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.apply(&v)
    }

    /// Largest entry of `M - M^dagger`, relative to the largest entry of `M`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let scale = self.sup_norm().max(f64::MIN_POSITIVE);
        // entries whose transpose lies outside the band compare against zero
        self.entries().map(|(i, j, v)| (v - self.get(j, i).conj()).norm()).fold(0.0, f64::max) / scale
    }

    /// True when the matrix is tridiagonal (or narrower).
    pub fn is_tridiagonal(&self) -> bool {
        self.lower <= 1 && self.upper <= 1
    }

    /// Drop band diagonals that are identically zero.
    pub fn compact(mut self) -> Self {
        let n = self.dim();
        let diag_is_zero = |m: &Self, off: isize| {
            (0..n).all(|i| {
                let j = i as isize + off;
                j < 0 || j >= n as isize || m.get(i, j as usize) == Complex64::new(0.0, 0.0)
            })
        };
        let mut lower = self.lower;
        while lower > 0 && diag_is_zero(&self, -(lower as isize)) {
            lower -= 1;
        }
        let mut upper = self.upper;
        while upper > 0 && diag_is_zero(&self, upper as isize) {
            upper -= 1;
        }
        if (lower, upper) != (self.lower, self.upper) {
            let mut out = Self::zeros(self.grid, lower, upper, std::mem::take(&mut self.label));
            for i in 0..n {
                for j in out.row_range(i) {
                    out.set(i, j, self.get(i, j));
                }
            }
            return out;
        }
        self
    }
}

fn check_grids(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<(), NumericsError> {
    if a.grid.same_as(&b.grid) {
        Ok(())
    } else {
        Err(NumericsError::GridMismatch { left: a.label.clone(), right: b.label.clone() })
    }
}

/// Central second difference with Dirichlet ends.
pub fn d2_matrix(g: &Grid) -> Result<OperatorMatrix, NumericsError> {
    if g.n_points() < 5 {
        return Err(NumericsError::GridTooSmall { n_points: g.n_points(), minimum: 5 });
    }
    let h2 = g.spacing() * g.spacing();
    let mut m = OperatorMatrix::zeros(*g, 1, 1, "d2");
    for i in 0..g.n_points() {
        m.set(i, i, Complex64::new(-2.0 / h2, 0.0));
        if i > 0 {
            m.set(i, i - 1, Complex64::new(1.0 / h2, 0.0));
        }
        if i + 1 < g.n_points() {
            m.set(i, i + 1, Complex64::new(1.0 / h2, 0.0));
        }
    }
    Ok(m)
}

/// Central first difference with Dirichlet ends; the stencil is exactly
/// antisymmetric.
pub fn d1_matrix(g: &Grid) -> Result<OperatorMatrix, NumericsError> {
    if g.n_points() < 5 {
        return Err(NumericsError::GridTooSmall { n_points: g.n_points(), minimum: 5 });
    }
    let c = 1.0 / (2.0 * g.spacing());
    let mut m = OperatorMatrix::zeros(*g, 1, 1, "d1");
    for i in 0..g.n_points() {
        if i > 0 {
            m.set(i, i - 1, Complex64::new(-c, 0.0));
        }
        if i + 1 < g.n_points() {
            m.set(i, i + 1, Complex64::new(c, 0.0));
        }
    }
    Ok(m)
}

/// Multiplication operator by `f` sampled on the grid.
pub fn diag_matrix<F>(f: F, g: &Grid) -> Result<OperatorMatrix, NumericsError>
where
    F: Fn(f64) -> Complex64,
{
    diag_from_values(&g.points().into_iter().map(f).collect::<Vec<_>>(), g)
}

/// Real-valued convenience wrapper around [`diag_matrix`].
pub fn diag_matrix_real<F>(f: F, g: &Grid) -> Result<OperatorMatrix, NumericsError>
where
    F: Fn(f64) -> f64,
{
    diag_matrix(|x| Complex64::new(f(x), 0.0), g)
}

pub fn diag_from_values(values: &[Complex64], g: &Grid) -> Result<OperatorMatrix, NumericsError> {
    if values.len() != g.n_points() {
        return Err(NumericsError::DimensionMismatch { expected: g.n_points(), found: values.len() });
    }
    let mut m = OperatorMatrix::zeros(*g, 0, 0, "diag");
    for (i, &v) in values.iter().enumerate() {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(NumericsError::NonFinite { index: i });
        }
        m.set(i, i, v);
    }
    Ok(m)
}

/// `D M D^{-1}` with `D = diag(d)`.
pub fn conjugate_by_diagonal(m: &OperatorMatrix, d: &[f64]) -> Result<OperatorMatrix, NumericsError> {
    if d.len() != m.dim() {
        return Err(NumericsError::DimensionMismatch { expected: m.dim(), found: d.len() });
    }
    if let Some(i) = d.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(NumericsError::NonPositive { index: i });
    }
    let mut out = m.clone();
    for i in 0..m.dim() {
        for j in m.row_range(i) {
            out.set(i, j, m.get(i, j) * (d[i] / d[j]));
        }
    }
    out.check_finite()?;
    Ok(out)
}

pub fn mat_mul(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix, NumericsError> {
    check_grids(a, b)?;
    let mut c = OperatorMatrix::zeros(a.grid, a.lower + b.lower, a.upper + b.upper, format!("{}*{}", a.label, b.label));
    for i in 0..a.dim() {
        for k in a.row_range(i) {
            let aik = a.get(i, k);
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in b.row_range(k) {
                let s = c.slot(i, j).expect("product entry inside band");
                c.band[s] += aik * b.get(k, j);
            }
        }
    }
    Ok(c)
}

fn combine(a: &OperatorMatrix, b: &OperatorMatrix, sign: f64, label: String) -> Result<OperatorMatrix, NumericsError> {
    check_grids(a, b)?;
    let mut c = OperatorMatrix::zeros(a.grid, a.lower.max(b.lower), a.upper.max(b.upper), label);
    for (i, j, v) in a.entries() {
        let s = c.slot(i, j).expect("inside band");
        c.band[s] += v;
    }
    for (i, j, v) in b.entries() {
        let s = c.slot(i, j).expect("inside band");
        c.band[s] += sign * v;
    }
    Ok(c)
}

pub fn mat_add(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix, NumericsError> {
    combine(a, b, 1.0, format!("{}+{}", a.label, b.label))
}

pub fn mat_sub(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix, NumericsError> {
    combine(a, b, -1.0, format!("{}-{}", a.label, b.label))
}

pub fn scalar_mul(c: Complex64, a: &OperatorMatrix) -> OperatorMatrix {
    let mut out = a.clone();
    out.band.iter_mut().for_each(|e| *e *= c);
    out
}

/// `A + c I`.
pub fn add_scalar(a: &OperatorMatrix, c: Complex64) -> OperatorMatrix {
    let mut out = a.clone();
    for i in 0..a.dim() {
        let s = out.slot(i, i).expect("diagonal is always stored");
        out.band[s] += c;
    }
    out
}

/// `AB - BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix, NumericsError> {
    let c = mat_sub(&mat_mul(a, b)?, &mat_mul(b, a)?)?;
    Ok(c.with_label(format!("[{},{}]", a.label, b.label)))
}

/// Conjugate transpose.
pub fn dagger(a: &OperatorMatrix) -> OperatorMatrix {
    let mut out = OperatorMatrix::zeros(a.grid, a.upper, a.lower, format!("{}'", a.label));
    for (i, j, v) in a.entries() {
        out.set(j, i, v.conj());
    }
    out
}

// Operator sugar for code that builds many matrices on one grid. These panic
// on grid mismatch; the free functions above return errors instead.

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        mat_mul(self, rhs).expect("operator product on mismatched grids")
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        mat_add(self, rhs).expect("operator sum on mismatched grids")
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        mat_sub(self, rhs).expect("operator difference on mismatched grids")
    }
}

impl Mul<&OperatorMatrix> for f64 {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        scalar_mul(Complex64::new(self, 0.0), rhs)
    }
}

impl Add<f64> for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: f64) -> OperatorMatrix {
        add_scalar(self, Complex64::new(rhs, 0.0))
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn neg(self) -> OperatorMatrix {
        scalar_mul(Complex64::new(-1.0, 0.0), self)
    }
}
