//! The smooth wrinkle, its embryo, and the fibered (parametric) wrinkle.

use front_jets::{hessian_fd, Jet2, JetOrder, SmoothMap, TargetSpace};
use nalgebra::{DMatrix, DVector};

use crate::fields::{eta, h_field, p_field};
use crate::jet2d::Jet2D;

fn norm_sq(q: &[f64]) -> f64 {
    q.iter().map(|x| x * x).sum()
}

pub(crate) fn fd_hessian_for(map: &dyn SmoothMap, q: &[f64]) -> Vec<DMatrix<f64>> {
    hessian_fd(&|x| map.value(x), q)
}

/// `W_{n,r}: (q̂, q_n) -> (q̂, eta, 0, .., 0, h)` into `R^{n+r}`.
///
/// For `r = 0` this degenerates to the wrinkled mapping `(q̂, eta)`.
#[derive(Debug, Clone)]
pub struct SmoothWrinkle {
    pub n: usize,
    pub r: usize,
    name: String,
}

impl SmoothWrinkle {
    pub fn new(n: usize, r: usize) -> Self {
        assert!(n >= 1);
        Self {
            n,
            r,
            name: format!("smooth-wrinkle-{n}-{r}"),
        }
    }
}

impl SmoothMap for SmoothWrinkle {
    fn name(&self) -> &str {
        &self.name
    }
    fn domain_dim(&self) -> usize {
        self.n
    }
    fn target(&self) -> TargetSpace {
        TargetSpace::Euclidean {
            dim: self.n + self.r,
        }
    }

    fn value(&self, q: &[f64]) -> DVector<f64> {
        self.analytic_jet(q, JetOrder::One).unwrap().value
    }

    fn analytic_jet(&self, q: &[f64], order: JetOrder) -> Option<Jet2> {
        let (n, r) = (self.n, self.r);
        let dim = n + r;
        let b = Jet2D::var_x(norm_sq(&q[..n - 1]) - 1.0);
        let t = Jet2D::var_y(q[n - 1]);
        let e = eta(b, t);
        let h = h_field(b, t);

        let mut value = DVector::zeros(dim);
        let mut jac = DMatrix::zeros(dim, n);
        for j in 0..n - 1 {
            value[j] = q[j];
            jac[(j, j)] = 1.0;
        }
        value[n - 1] = e.v;
        for k in 0..n - 1 {
            jac[(n - 1, k)] = e.dx * 2.0 * q[k];
        }
        jac[(n - 1, n - 1)] = e.dy;
        if r >= 1 {
            value[dim - 1] = h.v;
            for k in 0..n - 1 {
                jac[(dim - 1, k)] = h.dx * 2.0 * q[k];
            }
            jac[(dim - 1, n - 1)] = h.dy;
        }
        let jet = match order {
            JetOrder::One => Jet2::order1(value, jac),
            JetOrder::Two => Jet2::order2(value, jac, fd_hessian_for(self, q)),
        };
        Some(jet)
    }

    fn has_analytic_jet(&self) -> bool {
        true
    }
}

/// Embryo `E_{n,r}: q -> (q̂, mu, 0, .., 0, e)` with
/// `mu = q_n^3 + 3 |q̂|^2 q_n` and `e = ∫_0^{q_n} (|q̂|^2 + u^2)^2 du`;
/// the same polynomials as the wrinkle at `b = |q̂|^2`.
#[derive(Debug, Clone)]
pub struct Embryo {
    pub n: usize,
    pub r: usize,
    name: String,
}

impl Embryo {
    pub fn new(n: usize, r: usize) -> Self {
        assert!(n >= 1 && r >= 1);
        Self {
            n,
            r,
            name: format!("embryo-{n}-{r}"),
        }
    }
}

impl SmoothMap for Embryo {
    fn name(&self) -> &str {
        &self.name
    }
    fn domain_dim(&self) -> usize {
        self.n
    }
    fn target(&self) -> TargetSpace {
        TargetSpace::Euclidean {
            dim: self.n + self.r,
        }
    }

    fn value(&self, q: &[f64]) -> DVector<f64> {
        self.analytic_jet(q, JetOrder::One).unwrap().value
    }

    fn analytic_jet(&self, q: &[f64], order: JetOrder) -> Option<Jet2> {
        let (n, r) = (self.n, self.r);
        let dim = n + r;
        let a = Jet2D::var_x(norm_sq(&q[..n - 1]));
        let t = Jet2D::var_y(q[n - 1]);
        let mu = eta(a, t);
        let e = h_field(a, t);

        let mut value = DVector::zeros(dim);
        let mut jac = DMatrix::zeros(dim, n);
        for j in 0..n - 1 {
            value[j] = q[j];
            jac[(j, j)] = 1.0;
        }
        value[n - 1] = mu.v;
        value[dim - 1] = e.v;
        for k in 0..n - 1 {
            jac[(n - 1, k)] = mu.dx * 2.0 * q[k];
            jac[(dim - 1, k)] = e.dx * 2.0 * q[k];
        }
        jac[(n - 1, n - 1)] = mu.dy;
        jac[(dim - 1, n - 1)] = e.dy;
        let jet = match order {
            JetOrder::One => Jet2::order1(value, jac),
            JetOrder::Two => Jet2::order2(value, jac, fd_hessian_for(self, q)),
        };
        Some(jet)
    }

    fn has_analytic_jet(&self) -> bool {
        true
    }
}

/// Fibered Lagrangian wrinkle
/// `(z, q) -> (z, q̂, eta_c, p̂_c, h_c)` into `R^m x T*R^n`, where every
/// field uses `c = |z|^2 + |q̂|^2 - 1` in place of `|q̂|^2 - 1`; with `lift`,
/// the Legendrian `H_c` coordinate is appended.
///
/// The wrinkle sphere `{c + q_n^2 = 0}` shrinks to the embryo point as
/// `|z| -> 1`.
#[derive(Debug, Clone)]
pub struct FiberedWrinkle {
    pub n: usize,
    pub m: usize,
    pub lift: bool,
    name: String,
}

impl FiberedWrinkle {
    pub fn new(n: usize, m: usize, lift: bool) -> Self {
        assert!(n >= 1 && m >= 1);
        Self {
            n,
            m,
            lift,
            name: format!(
                "{}fibered-wrinkle-{n}-{m}",
                if lift { "legendrian-" } else { "" }
            ),
        }
    }

    fn dim_out(&self) -> usize {
        self.m + 2 * self.n + usize::from(self.lift)
    }
}

impl SmoothMap for FiberedWrinkle {
    fn name(&self) -> &str {
        &self.name
    }
    fn domain_dim(&self) -> usize {
        self.m + self.n
    }
    fn target(&self) -> TargetSpace {
        TargetSpace::Euclidean {
            dim: self.dim_out(),
        }
    }

    fn value(&self, zq: &[f64]) -> DVector<f64> {
        self.analytic_jet(zq, JetOrder::One).unwrap().value
    }

    fn analytic_jet(&self, zq: &[f64], order: JetOrder) -> Option<Jet2> {
        let (n, m) = (self.n, self.m);
        let dim = self.dim_out();
        let z = &zq[..m];
        let q = &zq[m..];
        let c = Jet2D::var_x(norm_sq(z) + norm_sq(&q[..n - 1]) - 1.0);
        let t = Jet2D::var_y(q[n - 1]);
        let e = eta(c, t);
        let h = h_field(c, t);
        let p = p_field(c, t);
        let bh = crate::fields::big_h(c, t);

        // dc/d(coordinate i of zq): 2 * coordinate, except q_n
        let dc = |i: usize| -> f64 {
            if i == m + n - 1 {
                0.0
            } else {
                2.0 * zq[i]
            }
        };

        let mut value = DVector::zeros(dim);
        let mut jac = DMatrix::zeros(dim, m + n);
        for i in 0..m {
            value[i] = z[i];
            jac[(i, i)] = 1.0;
        }
        for j in 0..n - 1 {
            value[m + j] = q[j];
            jac[(m + j, m + j)] = 1.0;
        }
        let row_eta = m + n - 1;
        value[row_eta] = e.v;
        for i in 0..m + n - 1 {
            jac[(row_eta, i)] = e.dx * dc(i);
        }
        jac[(row_eta, m + n - 1)] = e.dy;

        for j in 0..n - 1 {
            let row = m + n + j;
            value[row] = 2.0 * q[j] * p.v;
            for i in 0..m + n - 1 {
                let mut d = 2.0 * q[j] * p.dx * dc(i);
                if i == m + j {
                    d += 2.0 * p.v;
                }
                jac[(row, i)] = d;
            }
            jac[(row, m + n - 1)] = 2.0 * q[j] * p.dy;
        }
        let row_h = m + 2 * n - 1;
        value[row_h] = h.v;
        for i in 0..m + n - 1 {
            jac[(row_h, i)] = h.dx * dc(i);
        }
        jac[(row_h, m + n - 1)] = h.dy;

        if self.lift {
            let row_z = dim - 1;
            value[row_z] = bh.v;
            for i in 0..m + n - 1 {
                jac[(row_z, i)] = bh.dx * dc(i);
            }
            jac[(row_z, m + n - 1)] = bh.dy;
        }

        let jet = match order {
            JetOrder::One => Jet2::order1(value, jac),
            JetOrder::Two => Jet2::order2(value, jac, fd_hessian_for(self, zq)),
        };
        Some(jet)
    }

    fn has_analytic_jet(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use front_jets::eval_jet;

    #[test]
    fn one_dimensional_wrinkle_values() {
        let w = SmoothWrinkle::new(1, 1);
        let j = eval_jet(&w, &[1.0], JetOrder::One).unwrap();
        assert_eq!(j.value[0], -2.0); // eta(1) = 1 + 3(0 - 1)
        assert!((j.value[1] - 8.0 / 15.0).abs() < 1e-15); // h(1) = 8/15
    }

    #[test]
    fn wrinkle_jacobian_degenerates_exactly_on_the_sphere() {
        let w = SmoothWrinkle::new(2, 2);
        for theta in [0.0_f64, 0.6, 1.4, 2.8, 4.0] {
            let q = [theta.cos(), theta.sin()];
            let j = eval_jet(&w, &q, JetOrder::One).unwrap();
            let svd = j.jacobian.svd(false, false);
            assert!(svd.singular_values.min() < 1e-12);
        }
        let j = eval_jet(&w, &[0.5, 0.5], JetOrder::One).unwrap();
        assert!(j.jacobian.svd(false, false).singular_values.min() > 1e-3);
    }

    #[test]
    fn embryo_at_origin_has_corank_one_kernel_along_qn() {
        let e = Embryo::new(3, 1);
        let j = eval_jet(&e, &[0.0, 0.0, 0.0], JetOrder::One).unwrap();
        let svd = j.jacobian.clone().svd(false, true);
        let min_idx = svd
            .singular_values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert!(svd.singular_values[min_idx] < 1e-14);
        let kernel = svd.v_t.unwrap().row(min_idx).transpose();
        assert!((kernel[2].abs() - 1.0).abs() < 1e-12);
        // only one vanishing singular value
        let small = svd.singular_values.iter().filter(|s| **s < 1e-8).count();
        assert_eq!(small, 1);
    }

    #[test]
    fn fibered_wrinkle_degenerates_to_embryo_at_unit_parameter() {
        // at |z| = 1 the wrinkle sphere radius^2 = 1 - |z|^2 = 0
        let f = FiberedWrinkle::new(1, 1, false);
        let j = eval_jet(&f, &[1.0, 0.0], JetOrder::One).unwrap();
        // q-block of the differential vanishes at the embryo point
        assert!(j.jacobian[(1, 1)].abs() < 1e-14);
        assert!(j.jacobian[(2, 1)].abs() < 1e-14);
        // and for |z| < 1 the wrinkle sphere is where q_n^2 = 1 - |z|^2
        let z = 0.6_f64;
        let qn = (1.0 - z * z).sqrt();
        let jj = eval_jet(&f, &[z, qn], JetOrder::One).unwrap();
        let dq_eta = jj.jacobian[(1, 1)];
        let dq_h = jj.jacobian[(2, 1)];
        assert!(dq_eta.abs() < 1e-12 && dq_h.abs() < 1e-12);
    }

    #[test]
    fn fibered_reduces_to_plain_wrinkle_at_zero_parameter() {
        let f = FiberedWrinkle::new(1, 1, false);
        let l = crate::lagrangian::LagrangianWrinkle::new(1, false);
        for qn in [-0.9, -0.2, 0.4, 1.1] {
            let a = f.value(&[0.0, qn]);
            let b = l.value(&[qn]);
            assert!((a[1] - b[0]).abs() < 1e-15);
            assert!((a[2] - b[1]).abs() < 1e-15);
        }
    }
}
