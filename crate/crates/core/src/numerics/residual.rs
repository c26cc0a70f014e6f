//! Interior-restricted residuals of operator identities.
//!
//! An identity `T_1 + T_2 + ... = 0` between grid operators is measured by
//! its action on a block of smooth probe vectors, using only interior grid
//! points. The residual is reported relative to the largest individual term,
//! i.e. as the fraction of the cancelling magnitudes that fails to cancel.

use num_complex::Complex64;

use super::{Grid, NumericsError, OperatorMatrix};

/// Orthonormal Hermite functions `psi_0(z) .. psi_{count-1}(z)` by the
/// stable three-term recurrence.
pub fn hermite_functions(z: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let p0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * z * z).exp();
    out.push(p0);
    if count == 1 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * z * p0);
    for n in 1..count - 1 {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * z * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
        out.push(next);
    }
    out
}

/// Smooth test vectors for measuring operator identities, plus an optional
/// weight in the norm (for frames related by a diagonal similarity).
#[derive(Clone, Debug)]
pub struct ProbeSet {
    grid: Grid,
    vectors: Vec<Vec<Complex64>>,
    norm_weight: Option<Vec<f64>>,
}

impl ProbeSet {
    pub fn new(grid: Grid, vectors: Vec<Vec<Complex64>>) -> Result<Self, NumericsError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != grid.n_points()) {
            return Err(NumericsError::DimensionMismatch { expected: grid.n_points(), found: v.len() });
        }
        Ok(Self { grid, vectors, norm_weight: None })
    }

    /// Hermite functions of `z = delta * x`, `n = 0..count`.
    pub fn hermite(grid: Grid, delta: f64, count: usize) -> Self {
        let samples: Vec<Vec<f64>> = grid.points().iter().map(|&x| hermite_functions(delta * x, count)).collect();
        let vectors = (0..count).map(|n| samples.iter().map(|s| Complex64::new(s[n], 0.0)).collect()).collect();
        Self { grid, vectors, norm_weight: None }
    }

    /// Probes multiplied pointwise by `d`, with norms weighted by `1/d^2`, so
    /// that `D M D^{-1}` measured on the new set reproduces `M` measured on
    /// the old one.
    pub fn conjugated(&self, d: &[f64]) -> Self {
        let vectors = self.vectors.iter().map(|v| v.iter().zip(d).map(|(a, &s)| a * s).collect()).collect();
        let base = self.norm_weight.clone().unwrap_or_else(|| vec![1.0; d.len()]);
        let w = base.iter().zip(d).map(|(b, s)| b / (s * s)).collect();
        Self { grid: self.grid, vectors, norm_weight: Some(w) }
    }

    pub fn with_norm_weight(mut self, w: Vec<f64>) -> Self {
        self.norm_weight = Some(w);
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn norm_weight(&self) -> Option<&[f64]> {
        self.norm_weight.as_deref()
    }

    /// Squared interior norm of `v` (weighted if the set carries a weight).
    pub fn norm_sqr(&self, v: &[Complex64]) -> f64 {
        let h = self.grid.spacing();
        self.grid
            .interior_indices()
            .map(|i| v[i].norm_sqr() * self.norm_weight.as_ref().map_or(1.0, |w| w[i]))
            .sum::<f64>()
            * h
    }
}

/// Interior 2-norm `sqrt(h * sum_{|x| <= L - 10h} w_i |v_i|^2)`.
pub fn interior_norm(v: &[Complex64], grid: &Grid, weight: Option<&[f64]>) -> f64 {
    let h = grid.spacing();
    (grid.interior_indices().map(|i| v[i].norm_sqr() * weight.map_or(1.0, |w| w[i])).sum::<f64>() * h).sqrt()
}

/// Relative interior residual of `sum(terms) = 0` on the probe block.
pub fn identity_residual(terms: &[&OperatorMatrix], probes: &ProbeSet) -> Result<f64, NumericsError> {
    let mut total = 0.0;
    let mut largest: f64 = 0.0;
    let mut term_norms = vec![0.0; terms.len()];
    for t in terms {
        if !t.grid().same_as(&probes.grid) {
            return Err(NumericsError::GridMismatch { left: t.label().to_string(), right: "probes".into() });
        }
    }
    for p in &probes.vectors {
        let mut sum = vec![Complex64::new(0.0, 0.0); p.len()];
        for (k, t) in terms.iter().enumerate() {
            let tp = t.apply(p);
            term_norms[k] += probes.norm_sqr(&tp);
            sum.iter_mut().zip(&tp).for_each(|(s, v)| *s += v);
        }
        total += probes.norm_sqr(&sum);
    }
    for n in term_norms {
        largest = largest.max(n);
    }
    if largest == 0.0 {
        return Ok(0.0);
    }
    Ok((total / largest).sqrt())
}

/// Relative residual of `sum(vectors) = 0` on interior points.
pub fn vector_identity_residual(vectors: &[Vec<Complex64>], grid: &Grid, weight: Option<&[f64]>) -> f64 {
    let n = grid.n_points();
    let mut sum = vec![Complex64::new(0.0, 0.0); n];
    let mut largest: f64 = 0.0;
    for v in vectors {
        largest = largest.max(interior_norm(v, grid, weight));
        sum.iter_mut().zip(v).for_each(|(s, x)| *s += x);
    }
    if largest == 0.0 {
        0.0
    } else {
        interior_norm(&sum, grid, weight) / largest
    }
}
