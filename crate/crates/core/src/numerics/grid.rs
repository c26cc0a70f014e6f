use super::NumericsError;

/// Uniform grid on `[-L, L]` with an odd number of points, so that `0` is a
/// grid point and the grid is mirror symmetric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    half_width: f64,
    n_points: usize,
    spacing: f64,
}

impl Grid {
    pub const DEFAULT_HALF_WIDTH: f64 = 10.0;
    pub const DEFAULT_POINTS: usize = 2001;

    pub fn new(half_width: f64, n_points: usize) -> Result<Self, NumericsError> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(NumericsError::InvalidGrid(format!(
                "half width must be positive and finite, got {half_width}"
            )));
        }
        if n_points < 3 || n_points.is_multiple_of(2) {
            return Err(NumericsError::InvalidGrid(format!("point count must be odd and at least 3, got {n_points}")));
        }
        Ok(Self { half_width, n_points, spacing: 2.0 * half_width / (n_points - 1) as f64 })
    }

    /// `L = 10`, `N = 2001`.
    pub fn default_grid() -> Self {
        Self::new(Self::DEFAULT_HALF_WIDTH, Self::DEFAULT_POINTS).expect("valid default grid")
    }

    /// Grid whose half width is `half_width / delta`: a grid given in the
    /// dimensionless coordinate `z = delta * x` re-expressed in `x`.
    pub fn in_x_units(half_width_z: f64, n_points: usize, delta: f64) -> Result<Self, NumericsError> {
        Self::new(half_width_z / delta, n_points)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Same interval with the spacing halved.
    pub fn refined(&self) -> Self {
        Self::new(self.half_width, 2 * self.n_points - 1).expect("refinement of a valid grid")
    }

    pub fn point(&self, i: usize) -> f64 {
        let centre = (self.n_points / 2) as f64;
        (i as f64 - centre) * self.spacing
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.point(i)).collect()
    }

    /// Index of the point `x = 0`.
    pub fn centre(&self) -> usize {
        self.n_points / 2
    }

    /// Residuals of differential identities are measured only on points with
    /// `|x| <= L - 10 h`.
    pub fn is_interior(&self, i: usize) -> bool {
        self.point(i).abs() <= self.half_width - 10.0 * self.spacing + 1e-12 * self.half_width
    }

    pub fn interior_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_points).filter(move |&i| self.is_interior(i))
    }

    pub(crate) fn same_as(&self, other: &Grid) -> bool {
        self.n_points == other.n_points && self.half_width == other.half_width
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_and_contains_zero() {
        let g = Grid::new(10.0, 2001).unwrap();
        assert_eq!(g.spacing(), 0.01);
        assert_eq!(g.point(g.centre()), 0.0);
        for i in 0..g.n_points() {
            assert_eq!(g.point(i), -g.point(g.n_points() - 1 - i));
        }
        assert_eq!(g.point(0), -10.0);
        assert_eq!(g.point(2000), 10.0);
    }

    #[test]
    fn rejects_even_or_tiny() {
        assert!(Grid::new(1.0, 4).is_err());
        assert!(Grid::new(1.0, 1).is_err());
        assert!(Grid::new(-1.0, 5).is_err());
        assert!(Grid::new(f64::NAN, 5).is_err());
    }

    #[test]
    fn refinement_halves_spacing() {
        let g = Grid::new(10.0, 2001).unwrap();
        assert_eq!(g.refined().n_points(), 4001);
        assert!((g.refined().spacing() - 0.005).abs() < 1e-15);
    }

    #[test]
    fn interior_excludes_ten_spacings() {
        let g = Grid::new(1.0, 201).unwrap();
        let interior: Vec<usize> = g.interior_indices().collect();
        assert_eq!(interior.first(), Some(&10));
        assert_eq!(interior.last(), Some(&190));
    }
}
