use num_complex::Complex64;

use super::{Grid, NumericsError};

/// Normalization applied to a [`WaveSample`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormConvention {
    /// Values as sampled.
    Raw,
    /// Unit norm under the weighted trapezoid rule; global phase chosen so
    /// the largest-magnitude entry is real positive.
    WeightedUnit,
}

/// Complex function values on a grid.
#[derive(Clone, Debug)]
pub struct WaveSample {
    grid: Grid,
    values: Vec<Complex64>,
    norm_convention: NormConvention,
}

impl WaveSample {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self, NumericsError> {
        if values.len() != grid.n_points() {
            return Err(NumericsError::DimensionMismatch { expected: grid.n_points(), found: values.len() });
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(NumericsError::NonFinite { index: i });
        }
        Ok(Self { grid, values, norm_convention: NormConvention::Raw })
    }

    pub fn from_real(grid: Grid, values: &[f64]) -> Result<Self, NumericsError> {
        Self::new(grid, values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn sample<F: Fn(f64) -> f64>(grid: Grid, f: F) -> Result<Self, NumericsError> {
        Self::from_real(grid, &grid.points().into_iter().map(f).collect::<Vec<_>>())
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn norm_convention(&self) -> NormConvention {
        self.norm_convention
    }

    /// Rescale to unit weighted norm and fix the phase.
    pub fn normalized(mut self, weight: &[f64]) -> Result<Self, NumericsError> {
        let n2 = weighted_inner(&self, &self, weight)?.re;
        if !(n2 > 0.0 && n2.is_finite()) {
            return Err(NumericsError::Degenerate("cannot normalize a zero or non-finite sample".into()));
        }
        let s = 1.0 / n2.sqrt();
        self.values.iter_mut().for_each(|v| *v *= s);
        super::eigen::fix_phase(&mut self.values);
        self.norm_convention = NormConvention::WeightedUnit;
        Ok(self)
    }
}

/// Trapezoid weights `h * (1/2, 1, ..., 1, 1/2)`.
pub fn trapezoid_weights(g: &Grid) -> Vec<f64> {
    let mut w = vec![g.spacing(); g.n_points()];
    w[0] *= 0.5;
    w[g.n_points() - 1] *= 0.5;
    w
}

/// Trapezoid quadrature of `conj(f) * w * g`.
pub fn weighted_inner(f: &WaveSample, g: &WaveSample, w: &[f64]) -> Result<Complex64, NumericsError> {
    if !f.grid.same_as(&g.grid) {
        return Err(NumericsError::GridMismatch { left: "f".into(), right: "g".into() });
    }
    if w.len() != f.values.len() {
        return Err(NumericsError::DimensionMismatch { expected: f.values.len(), found: w.len() });
    }
    let tw = trapezoid_weights(&f.grid);
    Ok(f.values.iter().zip(&g.values).zip(w.iter().zip(&tw)).map(|((a, b), (wi, ti))| a.conj() * b * (wi * ti)).sum())
}
