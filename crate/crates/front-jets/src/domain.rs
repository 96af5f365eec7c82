use crate::error::GeomError;

/// What the parameter box represents geometrically.
///
/// All kinds are sampled as product grids over the per-axis bounds; `Annulus`
/// additionally filters grid points by the Euclidean norm of the coordinates,
/// which is how neighborhoods `Op(S^{n-1})` of the wrinkle sphere are swept.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainKind {
    Box,
    /// Keep only points with `inner <= |q| <= outer`.
    Annulus { inner: f64, outer: f64 },
    /// One periodic axis; the grid excludes the right endpoint.
    Circle,
    /// A coordinate chart of a sphere factor (sampled as a box).
    SphereChart,
}

/// A rectangular parameter domain with per-axis sample counts.
#[derive(Debug, Clone)]
pub struct ParamDomain {
    pub kind: DomainKind,
    pub bounds: Vec<(f64, f64)>,
    pub grid: Vec<usize>,
}

impl ParamDomain {
    pub fn new(kind: DomainKind, bounds: Vec<(f64, f64)>, grid: Vec<usize>) -> Result<Self, GeomError> {
        if bounds.len() != grid.len() {
            return Err(GeomError::InvalidDomain(format!(
                "{} bounds vs {} grid counts",
                bounds.len(),
                grid.len()
            )));
        }
        for (i, (lo, hi)) in bounds.iter().enumerate() {
            if !(hi > lo) {
                return Err(GeomError::InvalidDomain(format!(
                    "axis {i}: bounds ({lo}, {hi}) have non-positive length"
                )));
            }
        }
        if let Some(i) = grid.iter().position(|&g| g < 2) {
            return Err(GeomError::InvalidDomain(format!("axis {i}: grid count < 2")));
        }
        if let DomainKind::Annulus { inner, outer } = kind {
            if !(0.0 <= inner && inner < outer) {
                return Err(GeomError::InvalidDomain(format!(
                    "annulus radii ({inner}, {outer}) invalid"
                )));
            }
        }
        Ok(Self { kind, bounds, grid })
    }

    /// Cube `[-h, h]^n` sampled with `g` points per axis.
    pub fn cube(n: usize, h: f64, g: usize) -> Self {
        Self::new(DomainKind::Box, vec![(-h, h); n], vec![g; n]).expect("valid cube")
    }

    /// Shell `inner <= |q| <= outer` inside the box `[-outer, outer]^n`.
    pub fn annulus(n: usize, inner: f64, outer: f64, g: usize) -> Self {
        Self::new(
            DomainKind::Annulus { inner, outer },
            vec![(-outer, outer); n],
            vec![g; n],
        )
        .expect("valid annulus")
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn contains(&self, q: &[f64]) -> bool {
        q.len() == self.dim()
            && q.iter()
                .zip(&self.bounds)
                .all(|(x, (lo, hi))| *x >= *lo && *x <= *hi)
    }

    /// Coordinate of grid index `k` on `axis`.
    pub fn coord(&self, axis: usize, k: usize) -> f64 {
        let (lo, hi) = self.bounds[axis];
        let g = self.grid[axis];
        let denom = match self.kind {
            // periodic axis: do not repeat the endpoint
            DomainKind::Circle => g as f64,
            _ => (g - 1) as f64,
        };
        lo + (hi - lo) * k as f64 / denom
    }

    /// Grid spacing on `axis`.
    pub fn step(&self, axis: usize) -> f64 {
        self.coord(axis, 1) - self.coord(axis, 0)
    }

    fn admits(&self, q: &[f64]) -> bool {
        match self.kind {
            DomainKind::Annulus { inner, outer } => {
                let r = q.iter().map(|x| x * x).sum::<f64>().sqrt();
                r >= inner && r <= outer
            }
            _ => true,
        }
    }

    /// All grid points (row-major over axes), annulus-filtered when applicable.
    pub fn grid_points(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let total: usize = self.grid.iter().product();
        let mut out = Vec::with_capacity(total);
        let mut idx = vec![0usize; n];
        for _ in 0..total {
            let q: Vec<f64> = (0..n).map(|a| self.coord(a, idx[a])).collect();
            if self.admits(&q) {
                out.push(q);
            }
            for a in (0..n).rev() {
                idx[a] += 1;
                if idx[a] < self.grid[a] {
                    break;
                }
                idx[a] = 0;
            }
        }
        out
    }

    /// Distance from `q` to the nearest domain face, per axis minimum.
    pub fn face_distance(&self, q: &[f64]) -> f64 {
        q.iter()
            .zip(&self.bounds)
            .map(|(x, (lo, hi))| (x - lo).min(hi - x))
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_grid_has_expected_count_and_corners() {
        let d = ParamDomain::cube(2, 1.0, 3);
        let pts = d.grid_points();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], vec![-1.0, -1.0]);
        assert_eq!(pts[8], vec![1.0, 1.0]);
    }

    #[test]
    fn annulus_filters_center() {
        let d = ParamDomain::annulus(2, 0.5, 1.5, 21);
        assert!(d.grid_points().iter().all(|q| {
            let r = (q[0] * q[0] + q[1] * q[1]).sqrt();
            (0.5..=1.5).contains(&r)
        }));
    }

    #[test]
    fn circle_grid_excludes_endpoint() {
        let d = ParamDomain::new(
            DomainKind::Circle,
            vec![(0.0, 1.0)],
            vec![4],
        )
        .unwrap();
        let pts = d.grid_points();
        assert_eq!(pts.len(), 4);
        assert!((pts[3][0] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn degenerate_bounds_rejected() {
        assert!(ParamDomain::new(DomainKind::Box, vec![(0.0, 0.0)], vec![4]).is_err());
        assert!(ParamDomain::new(DomainKind::Box, vec![(0.0, 1.0)], vec![1]).is_err());
    }
}
