use nalgebra::{DMatrix, DVector};

/// Order of jet data requested from an evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetOrder {
    One,
    Two,
}

/// Value, Jacobian and optional Hessian of a map at a point.
///
/// `jacobian` is stored target-dim × domain-dim, so column `j` is the partial
/// derivative of the map along the `j`-th domain coordinate. `hessian[k]` is
/// the symmetric domain-dim × domain-dim matrix of second partials of the
/// `k`-th target coordinate.
#[derive(Debug, Clone)]
pub struct Jet2 {
    pub value: DVector<f64>,
    pub jacobian: DMatrix<f64>,
    pub hessian: Option<Vec<DMatrix<f64>>>,
}

impl Jet2 {
    pub fn order1(value: DVector<f64>, jacobian: DMatrix<f64>) -> Self {
        Self {
            value,
            jacobian,
            hessian: None,
        }
    }

    pub fn order2(value: DVector<f64>, jacobian: DMatrix<f64>, hessian: Vec<DMatrix<f64>>) -> Self {
        Self {
            value,
            jacobian,
            hessian: Some(hessian),
        }
    }

    pub fn target_dim(&self) -> usize {
        self.value.len()
    }

    pub fn domain_dim(&self) -> usize {
        self.jacobian.ncols()
    }

    pub fn is_finite(&self) -> bool {
        self.value.iter().all(|v| v.is_finite())
            && self.jacobian.iter().all(|v| v.is_finite())
            && self
                .hessian
                .as_ref()
                .map_or(true, |hs| hs.iter().all(|h| h.iter().all(|v| v.is_finite())))
    }

    /// Largest asymmetry |H_ij - H_ji| over all Hessian slices; 0 when absent.
    pub fn hessian_asymmetry(&self) -> f64 {
        let Some(hs) = &self.hessian else { return 0.0 };
        let mut worst: f64 = 0.0;
        for h in hs {
            for i in 0..h.nrows() {
                for j in (i + 1)..h.ncols() {
                    worst = worst.max((h[(i, j)] - h[(j, i)]).abs());
                }
            }
        }
        worst
    }
}
