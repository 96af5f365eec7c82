use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;

use crate::domain::ParamDomain;
use crate::error::GeomError;
use crate::finite_diff::{hessian_fd, jacobian_fd, jacobian_fd_in};
use crate::jet::{Jet2, JetOrder};

/// Target space of a parametric map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetSpace {
    /// `T*R^n` with coordinates `(q_1..q_n, p_1..p_n)`.
    Cotangent { n: usize },
    /// `J^1(R^n, R)` with coordinates `(q_1..q_n, p_1..p_n, z)`.
    JetOne { n: usize },
    /// Plain `R^dim`.
    Euclidean { dim: usize },
}

impl TargetSpace {
    pub fn dim(&self) -> usize {
        match *self {
            TargetSpace::Cotangent { n } => 2 * n,
            TargetSpace::JetOne { n } => 2 * n + 1,
            TargetSpace::Euclidean { dim } => dim,
        }
    }

    /// Base dimension `n` for the fibred targets.
    pub fn base_dim(&self) -> Option<usize> {
        match *self {
            TargetSpace::Cotangent { n } | TargetSpace::JetOne { n } => Some(n),
            TargetSpace::Euclidean { .. } => None,
        }
    }
}

impl fmt::Display for TargetSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TargetSpace::Cotangent { n } => write!(f, "T*R^{n}"),
            TargetSpace::JetOne { n } => write!(f, "J1(R^{n},R)"),
            TargetSpace::Euclidean { dim } => write!(f, "R^{dim}"),
        }
    }
}

/// A parametric map with an optional analytic jet evaluator.
///
/// Implementations must be total on their declared domain; `analytic_jet`
/// returning `None` routes jet requests through central finite differences
/// of `value`.
pub trait SmoothMap: Send + Sync {
    fn name(&self) -> &str;
    fn domain_dim(&self) -> usize;
    fn target(&self) -> TargetSpace;
    fn value(&self, q: &[f64]) -> DVector<f64>;

    fn analytic_jet(&self, _q: &[f64], _order: JetOrder) -> Option<Jet2> {
        None
    }

    fn has_analytic_jet(&self) -> bool {
        false
    }
}

pub type MapRef = Arc<dyn SmoothMap>;

/// A map built from closures, for tests and ad-hoc models.
pub struct FnMap {
    pub name: String,
    pub domain_dim: usize,
    pub target: TargetSpace,
    pub f: Box<dyn Fn(&[f64]) -> DVector<f64> + Send + Sync>,
    #[allow(clippy::type_complexity)]
    pub jet: Option<Box<dyn Fn(&[f64], JetOrder) -> Jet2 + Send + Sync>>,
}

impl FnMap {
    pub fn value_only(
        name: &str,
        domain_dim: usize,
        target: TargetSpace,
        f: impl Fn(&[f64]) -> DVector<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.to_string(),
            domain_dim,
            target,
            f: Box::new(f),
            jet: None,
        }
    }

    pub fn with_jet(
        name: &str,
        domain_dim: usize,
        target: TargetSpace,
        f: impl Fn(&[f64]) -> DVector<f64> + Send + Sync + 'static,
        jet: impl Fn(&[f64], JetOrder) -> Jet2 + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.to_string(),
            domain_dim,
            target,
            f: Box::new(f),
            jet: Some(Box::new(jet)),
        }
    }
}

impl SmoothMap for FnMap {
    fn name(&self) -> &str {
        &self.name
    }
    fn domain_dim(&self) -> usize {
        self.domain_dim
    }
    fn target(&self) -> TargetSpace {
        self.target
    }
    fn value(&self, q: &[f64]) -> DVector<f64> {
        (self.f)(q)
    }
    fn analytic_jet(&self, q: &[f64], order: JetOrder) -> Option<Jet2> {
        self.jet.as_ref().map(|j| j(q, order))
    }
    fn has_analytic_jet(&self) -> bool {
        self.jet.is_some()
    }
}

/// Evaluate the jet of `map` at `q`, analytic when available, otherwise by
/// central finite differences.
pub fn eval_jet(map: &dyn SmoothMap, q: &[f64], order: JetOrder) -> Result<Jet2, GeomError> {
    if q.len() != map.domain_dim() {
        return Err(GeomError::DimensionMismatch {
            expected: map.domain_dim(),
            got: q.len(),
        });
    }
    let jet = match map.analytic_jet(q, order) {
        Some(j) => j,
        None => fd_jet(map, q, order, None),
    };
    if !jet.is_finite() {
        return Err(GeomError::NonFinite {
            map: map.name().to_string(),
            point: q.to_vec(),
        });
    }
    Ok(jet)
}

/// Like [`eval_jet`] but clips finite-difference stencils to `domain`,
/// switching to one-sided differences at the boundary.
pub fn eval_jet_in(
    map: &dyn SmoothMap,
    domain: &ParamDomain,
    q: &[f64],
    order: JetOrder,
) -> Result<Jet2, GeomError> {
    if !domain.contains(q) {
        let axis = q
            .iter()
            .zip(&domain.bounds)
            .position(|(x, (lo, hi))| *x < *lo || *x > *hi)
            .unwrap_or(0);
        return Err(GeomError::DomainViolation {
            point: q.to_vec(),
            axis,
        });
    }
    if q.len() != map.domain_dim() {
        return Err(GeomError::DimensionMismatch {
            expected: map.domain_dim(),
            got: q.len(),
        });
    }
    let jet = match map.analytic_jet(q, order) {
        Some(j) => j,
        None => fd_jet(map, q, order, Some(domain)),
    };
    if !jet.is_finite() {
        return Err(GeomError::NonFinite {
            map: map.name().to_string(),
            point: q.to_vec(),
        });
    }
    Ok(jet)
}

fn fd_jet(map: &dyn SmoothMap, q: &[f64], order: JetOrder, domain: Option<&ParamDomain>) -> Jet2 {
    let value = map.value(q);
    let jac = match domain {
        Some(d) => jacobian_fd_in(&|x| map.value(x), q, d),
        None => jacobian_fd(&|x| map.value(x), q),
    };
    match order {
        JetOrder::One => Jet2::order1(value, jac),
        JetOrder::Two => {
            let hess = hessian_fd(&|x| map.value(x), q);
            Jet2::order2(value, jac, hess)
        }
    }
}

/// Max relative disagreement between the analytic and finite-difference
/// Jacobians over the given sample points.
///
/// The comparison is entry-wise, normalized by the largest Jacobian entry at
/// each point (with a floor of 1 so that near-zero rows compare absolutely).
pub fn validate_analytic_jacobian(
    map: &dyn SmoothMap,
    points: &[Vec<f64>],
) -> Result<f64, GeomError> {
    let mut worst: f64 = 0.0;
    for q in points {
        let a = eval_jet(map, q, JetOrder::One)?;
        let fd = jacobian_fd(&|x| map.value(x), q);
        let scale = a.jacobian.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let diff = (&a.jacobian - &fd).abs().max();
        worst = worst.max(diff / scale);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;

    fn cusp() -> FnMap {
        // q -> (q^2, q^3), the planar semi-cubical cusp
        FnMap::value_only("cusp", 1, TargetSpace::Euclidean { dim: 2 }, |q| {
            dvector![q[0] * q[0], q[0] * q[0] * q[0]]
        })
    }

    #[test]
    fn fd_jacobian_of_cusp_at_one() {
        let j = eval_jet(&cusp(), &[1.0], JetOrder::One).unwrap();
        assert!((j.jacobian[(0, 0)] - 2.0).abs() < 1e-8);
        assert!((j.jacobian[(1, 0)] - 3.0).abs() < 1e-8);
    }

    #[test]
    fn fd_hessian_is_symmetric_and_correct() {
        let m = FnMap::value_only("xy", 2, TargetSpace::Euclidean { dim: 1 }, |q| {
            dvector![q[0] * q[1] + q[0] * q[0]]
        });
        let j = eval_jet(&m, &[0.3, -0.2], JetOrder::Two).unwrap();
        let h = &j.hessian.as_ref().unwrap()[0];
        assert!((h[(0, 0)] - 2.0).abs() < 1e-5);
        assert!((h[(0, 1)] - 1.0).abs() < 1e-5);
        assert!(j.hessian_asymmetry() < 1e-12);
    }

    #[test]
    fn boundary_uses_one_sided_stencil() {
        let d = ParamDomain::cube(1, 1.0, 5);
        let m = cusp();
        let j = eval_jet_in(&m, &d, &[1.0], JetOrder::One).unwrap();
        assert!((j.jacobian[(0, 0)] - 2.0).abs() < 1e-7);
        assert!(eval_jet_in(&m, &d, &[1.5], JetOrder::One).is_err());
    }
}
