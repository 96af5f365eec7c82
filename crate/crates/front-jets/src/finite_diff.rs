use nalgebra::{DMatrix, DVector};

use crate::domain::ParamDomain;

/// Central finite-difference step for first derivatives.
pub const H_FD: f64 = 1e-5;
/// Step for second derivatives (larger to tame round-off in the h^2 divisor).
pub const H_HESS: f64 = 1e-4;

/// Central-difference Jacobian, target-dim × domain-dim.
pub fn jacobian_fd(f: &dyn Fn(&[f64]) -> DVector<f64>, q: &[f64]) -> DMatrix<f64> {
    let n = q.len();
    let mut x = q.to_vec();
    x[0] += 0.0;
    let probe = f(q);
    let m = probe.len();
    let mut jac = DMatrix::zeros(m, n);
    for j in 0..n {
        let mut xp = q.to_vec();
        let mut xm = q.to_vec();
        xp[j] += H_FD;
        xm[j] -= H_FD;
        let col = (f(&xp) - f(&xm)) / (2.0 * H_FD);
        jac.set_column(j, &col);
    }
    jac
}

/// Jacobian with stencils clipped to `domain`: second-order one-sided
/// differences replace the central stencil at faces.
pub fn jacobian_fd_in(
    f: &dyn Fn(&[f64]) -> DVector<f64>,
    q: &[f64],
    domain: &ParamDomain,
) -> DMatrix<f64> {
    let n = q.len();
    let probe = f(q);
    let m = probe.len();
    let mut jac = DMatrix::zeros(m, n);
    for j in 0..n {
        let (lo, hi) = domain.bounds[j];
        let col = if q[j] + H_FD <= hi && q[j] - H_FD >= lo {
            let mut xp = q.to_vec();
            let mut xm = q.to_vec();
            xp[j] += H_FD;
            xm[j] -= H_FD;
            (f(&xp) - f(&xm)) / (2.0 * H_FD)
        } else if q[j] + 2.0 * H_FD <= hi {
            let mut x1 = q.to_vec();
            let mut x2 = q.to_vec();
            x1[j] += H_FD;
            x2[j] += 2.0 * H_FD;
            (-3.0 * &probe + 4.0 * f(&x1) - f(&x2)) / (2.0 * H_FD)
        } else {
            let mut x1 = q.to_vec();
            let mut x2 = q.to_vec();
            x1[j] -= H_FD;
            x2[j] -= 2.0 * H_FD;
            (3.0 * &probe - 4.0 * f(&x1) + f(&x2)) / (2.0 * H_FD)
        };
        jac.set_column(j, &col);
    }
    jac
}

/// Central-difference gradient of a scalar function.
pub fn gradient_fd(f: &dyn Fn(&[f64]) -> f64, q: &[f64]) -> DVector<f64> {
    let n = q.len();
    let mut g = DVector::zeros(n);
    for j in 0..n {
        let mut xp = q.to_vec();
        let mut xm = q.to_vec();
        xp[j] += H_FD;
        xm[j] -= H_FD;
        g[j] = (f(&xp) - f(&xm)) / (2.0 * H_FD);
    }
    g
}

/// Central-difference Hessian of each target coordinate; symmetrized.
pub fn hessian_fd(f: &dyn Fn(&[f64]) -> DVector<f64>, q: &[f64]) -> Vec<DMatrix<f64>> {
    let n = q.len();
    let f0 = f(q);
    let m = f0.len();
    let h = H_HESS;
    let mut out = vec![DMatrix::zeros(n, n); m];

    for i in 0..n {
        let mut xp = q.to_vec();
        let mut xm = q.to_vec();
        xp[i] += h;
        xm[i] -= h;
        let dii = (f(&xp) - 2.0 * &f0 + f(&xm)) / (h * h);
        for k in 0..m {
            out[k][(i, i)] = dii[k];
        }
        for j in (i + 1)..n {
            let mut pp = q.to_vec();
            let mut pm = q.to_vec();
            let mut mp = q.to_vec();
            let mut mm = q.to_vec();
            pp[i] += h;
            pp[j] += h;
            pm[i] += h;
            pm[j] -= h;
            mp[i] -= h;
            mp[j] += h;
            mm[i] -= h;
            mm[j] -= h;
            let dij = (f(&pp) - f(&pm) - f(&mp) + f(&mm)) / (4.0 * h * h);
            for k in 0..m {
                out[k][(i, j)] = dij[k];
                out[k][(j, i)] = dij[k];
            }
        }
    }
    out
}
