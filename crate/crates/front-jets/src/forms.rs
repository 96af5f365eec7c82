use crate::domain::ParamDomain;
use crate::error::GeomError;
use crate::jet::{Jet2, JetOrder};
use crate::map::{eval_jet, SmoothMap, TargetSpace};

/// Which form to pull back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PullbackForm {
    /// `dp ∧ dq` on `T*R^n`.
    Symplectic,
    /// `dz − p·dq` on `J^1(R^n, R)`.
    Contact,
}

/// `max_{i<j} |ω(∂_i f, ∂_j f)|` at one jet, where `ω = Σ dp_k ∧ dq_k`.
///
/// Coordinates `(q_1..q_n, p_1..p_n)`; extra trailing coordinates (a fibred
/// parameter block or a `z` coordinate) are ignored by passing `n`.
pub fn symplectic_residual(jet: &Jet2, n: usize, q_offset: usize) -> f64 {
    let d = jet.domain_dim();
    let jac = &jet.jacobian;
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in (i + 1)..d {
            let mut w = 0.0;
            for k in 0..n {
                let qk = q_offset + k;
                let pk = q_offset + n + k;
                w += jac[(pk, i)] * jac[(qk, j)] - jac[(pk, j)] * jac[(qk, i)];
            }
            worst = worst.max(w.abs());
        }
    }
    worst
}

/// `max_i |(dz − p·dq)(∂_i f)|` at one jet; coordinates `(q, p, z)`.
pub fn contact_residual(jet: &Jet2, n: usize) -> f64 {
    let d = jet.domain_dim();
    let jac = &jet.jacobian;
    let z = 2 * n;
    let mut worst: f64 = 0.0;
    for i in 0..d {
        let mut a = jac[(z, i)];
        for k in 0..n {
            a -= jet.value[n + k] * jac[(k, i)];
        }
        worst = worst.max(a.abs());
    }
    worst
}

/// Max-abs pullback residual of the chosen form over the domain grid.
pub fn pullback_residual(
    map: &dyn SmoothMap,
    domain: &ParamDomain,
    form: PullbackForm,
) -> Result<f64, GeomError> {
    let n = match (form, map.target()) {
        (PullbackForm::Symplectic, TargetSpace::Cotangent { n }) => n,
        (PullbackForm::Contact, TargetSpace::JetOne { n }) => n,
        (_, t) => {
            return Err(GeomError::TargetMismatch {
                expected: match form {
                    PullbackForm::Symplectic => "T*R^n".into(),
                    PullbackForm::Contact => "J1(R^n,R)".into(),
                },
                got: t.to_string(),
            })
        }
    };
    let mut worst: f64 = 0.0;
    for q in domain.grid_points() {
        let jet = eval_jet(map, &q, JetOrder::One)?;
        let r = match form {
            PullbackForm::Symplectic => symplectic_residual(&jet, n, 0),
            PullbackForm::Contact => contact_residual(&jet, n),
        };
        worst = worst.max(r);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::FnMap;
    use nalgebra::DVector;

    #[test]
    fn zero_section_residual_is_exactly_zero() {
        let m = FnMap::value_only("zero-section", 3, TargetSpace::Cotangent { n: 3 }, |q| {
            DVector::from_iterator(6, q.iter().copied().chain([0.0, 0.0, 0.0]))
        });
        let d = ParamDomain::cube(3, 1.0, 5);
        assert_eq!(pullback_residual(&m, &d, PullbackForm::Symplectic).unwrap(), 0.0);
    }

    #[test]
    fn graph_of_non_closed_one_form_has_residual() {
        // p = (q2, 0): dp∧dq pulls back to -dq1∧dq2, residual 1
        let m = FnMap::value_only("non-closed", 2, TargetSpace::Cotangent { n: 2 }, |q| {
            DVector::from_vec(vec![q[0], q[1], q[1], 0.0])
        });
        let d = ParamDomain::cube(2, 1.0, 4);
        let r = pullback_residual(&m, &d, PullbackForm::Symplectic).unwrap();
        assert!((r - 1.0).abs() < 1e-7, "residual {r}");
    }

    #[test]
    fn jet_of_function_is_legendrian() {
        // j^1(h) for h = q1^2 q2: exact contact residual 0
        let m = FnMap::value_only("j1h", 2, TargetSpace::JetOne { n: 2 }, |q| {
            let h = q[0] * q[0] * q[1];
            DVector::from_vec(vec![q[0], q[1], 2.0 * q[0] * q[1], q[0] * q[0], h])
        });
        let d = ParamDomain::cube(2, 1.0, 6);
        let r = pullback_residual(&m, &d, PullbackForm::Contact).unwrap();
        assert!(r < 1e-9, "residual {r}");
    }

    #[test]
    fn form_target_mismatch_is_rejected() {
        let m = FnMap::value_only("zero", 1, TargetSpace::Euclidean { dim: 2 }, |q| {
            DVector::from_vec(vec![q[0], 0.0])
        });
        let d = ParamDomain::cube(1, 1.0, 3);
        assert!(pullback_residual(&m, &d, PullbackForm::Symplectic).is_err());
    }
}
