//! Cusp and swallowtail sharpening homotopies.
//!
//! Both families deform only the front's `z`-component, so exactness is
//! automatic; the Lagrangian formulas follow by the front-generation rule
//! `p_i = dz/dx_i`.

use front_jets::{Jet2, JetOrder, SmoothMap, TargetSpace};
use nalgebra::{DMatrix, DVector};

use crate::bump::{sharpen_phi, sharpen_psi, BumpSpec};
use crate::error::ModelError;
use crate::fields::{big_h, eta, h_field, p_field};
use crate::jet2d::Jet2D;
use crate::quadrature::integrate_split;
use crate::wrinkle::fd_hessian_for;

/// Quotient guard: below this |tau_t| the shielded term is identically zero.
const TAU_GUARD: f64 = 1e-9;

fn norm(q: &[f64]) -> f64 {
    q.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Swallowtail model `eps G_n` on `S^{n-2} x R^2`, implemented on the chart
/// `(q̃, w, t) = (q_1..q_{n-2}, q_{n-1}, q_n)`:
/// `(q̃, w, tau, 0, eps p_{n-1}, eps g)` with `tau = t^3 - 3 w t`,
/// `g = ∫_0^t (u^2 - w)^2 du`; `lift` appends `z = eps G`.
#[derive(Debug, Clone)]
pub struct Swallowtail {
    pub n: usize,
    pub eps: f64,
    pub lift: bool,
    name: String,
}

impl Swallowtail {
    pub fn new(n: usize, eps: f64, lift: bool) -> Self {
        assert!(n >= 2);
        Self {
            n,
            eps,
            lift,
            name: if lift {
                format!("legendrian-swallowtail-{n}")
            } else {
                format!("swallowtail-{n}")
            },
        }
    }
}

impl SmoothMap for Swallowtail {
    fn name(&self) -> &str {
        &self.name
    }
    fn domain_dim(&self) -> usize {
        self.n
    }
    fn target(&self) -> TargetSpace {
        if self.lift {
            TargetSpace::JetOne { n: self.n }
        } else {
            TargetSpace::Cotangent { n: self.n }
        }
    }

    fn value(&self, q: &[f64]) -> DVector<f64> {
        self.analytic_jet(q, JetOrder::One).unwrap().value
    }

    fn analytic_jet(&self, q: &[f64], order: JetOrder) -> Option<Jet2> {
        let n = self.n;
        let dim = 2 * n + usize::from(self.lift);
        let w = Jet2D::var_x(q[n - 2]);
        let t = Jet2D::var_y(q[n - 1]);
        let b = -w;
        let tau = eta(b, t);
        let g = h_field(b, t);
        // p_{n-1} = G_w - g tau_w = -P(-w, t)
        let pm1 = -p_field(b, t);
        let gg = big_h(b, t);

        let mut value = DVector::zeros(dim);
        let mut jac = DMatrix::zeros(dim, n);
        for j in 0..n - 2 {
            value[j] = q[j];
            jac[(j, j)] = 1.0;
        }
        value[n - 2] = q[n - 2];
        jac[(n - 2, n - 2)] = 1.0;

        let put = |value: &mut DVector<f64>, jac: &mut DMatrix<f64>, row: usize, f: Jet2D, s: f64| {
            value[row] = s * f.v;
            jac[(row, n - 2)] = s * f.dx;
            jac[(row, n - 1)] = s * f.dy;
        };
        put(&mut value, &mut jac, n - 1, tau, 1.0);
        put(&mut value, &mut jac, 2 * n - 2, pm1, self.eps);
        put(&mut value, &mut jac, 2 * n - 1, g, self.eps);
        if self.lift {
            put(&mut value, &mut jac, dim - 1, gg, self.eps);
        }

        Some(match order {
            JetOrder::One => Jet2::order1(value, jac),
            JetOrder::Two => Jet2::order2(value, jac, fd_hessian_for(self, q)),
        })
    }

    fn has_analytic_jet(&self) -> bool {
        true
    }
}

/// Cusp sharpening family `C_{n,t}`: the front `(q̂, q_n^2)` with
/// `z = (2/5) psi_t(q_n, |q̂|) q_n^5`, `psi_t = (1-t) + t psi`.
#[derive(Clone)]
pub struct CuspSharpening {
    pub n: usize,
    pub delta: f64,
    pub eps: f64,
    pub time: f64,
    pub lift: bool,
    pub psi: BumpSpec,
    name: String,
}

impl CuspSharpening {
    pub fn new(n: usize, delta: f64, eps: f64, time: f64, lift: bool) -> Result<Self, ModelError> {
        if !(delta > 0.0 && delta < 0.25) {
            return Err(ModelError::ParamOutOfRange {
                param: "delta",
                value: delta,
                expected: "(0, 1/4)",
            });
        }
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(ModelError::ParamOutOfRange {
                param: "eps",
                value: eps,
                expected: "(0, 1]",
            });
        }
        if !(0.0..=1.0).contains(&time) {
            return Err(ModelError::ParamOutOfRange {
                param: "t",
                value: time,
                expected: "[0, 1]",
            });
        }
        Ok(Self {
            n,
            delta,
            eps,
            time,
            lift,
            psi: sharpen_psi(delta, eps),
            name: format!("cusp-sharpening-{n}"),
        })
    }

    /// psi_t and its needed partials at `(x, y) = (q_n, |q̂|)`.
    fn psi_t(&self, x: f64, y: f64) -> Jet2D {
        let p = self.psi.at(x, y);
        p.scale(self.time) + (1.0 - self.time)
    }
}

impl SmoothMap for CuspSharpening {
    fn name(&self) -> &str {
        &self.name
    }
    fn domain_dim(&self) -> usize {
        self.n
    }
    fn target(&self) -> TargetSpace {
        if self.lift {
            TargetSpace::JetOne { n: self.n }
        } else {
            TargetSpace::Cotangent { n: self.n }
        }
    }

    fn value(&self, q: &[f64]) -> DVector<f64> {
        self.analytic_jet(q, JetOrder::One).unwrap().value
    }

    fn analytic_jet(&self, q: &[f64], order: JetOrder) -> Option<Jet2> {
        let n = self.n;
        let dim = 2 * n + usize::from(self.lift);
        let t = q[n - 1];
        let a = norm(&q[..n - 1]);
        let ps = self.psi_t(t, a);
        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t2 * t2;
        let t5 = t4 * t;

        let mut value = DVector::zeros(dim);
        let mut jac = DMatrix::zeros(dim, n);
        for j in 0..n - 1 {
            value[j] = q[j];
            jac[(j, j)] = 1.0;
        }
        value[n - 1] = t2;
        jac[(n - 1, n - 1)] = 2.0 * t;

        // p_n = (1/5) psi_x t^4 + psi t^3
        value[2 * n - 1] = 0.2 * ps.dx * t4 + ps.v * t3;
        jac[(2 * n - 1, n - 1)] = 0.2 * ps.dxx * t4 + 1.8 * ps.dx * t3 + 3.0 * ps.v * t2;

        let y_active = ps.dy != 0.0 || ps.dyy != 0.0 || ps.dxy != 0.0;
        if y_active {
            // the y-ramp lives at |q̂| >= 1 - 2 delta > 0, so a > 0 here
            let inv_a = 1.0 / a;
            jac[(2 * n - 1, 0)] = 0.0; // filled below per column
            for k in 0..n - 1 {
                jac[(2 * n - 1, k)] = (0.2 * ps.dxy * t4 + ps.dy * t3) * q[k] * inv_a;
            }
            for j in 0..n - 1 {
                let row = n + j;
                value[row] = 0.4 * ps.dy * q[j] * t5 * inv_a;
                jac[(row, n - 1)] = (0.4 * ps.dxy * t5 + 2.0 * ps.dy * t4) * q[j] * inv_a;
                for k in 0..n - 1 {
                    let mut d = 0.4
                        * t5
                        * (ps.dyy * q[j] * q[k] * inv_a * inv_a
                            - ps.dy * q[j] * q[k] * inv_a * inv_a * inv_a);
                    if k == j {
                        d += 0.4 * t5 * ps.dy * inv_a;
                    }
                    jac[(row, k)] = d;
                }
            }
        }

        if self.lift {
            let row = dim - 1;
            value[row] = 0.4 * ps.v * t5;
            jac[(row, n - 1)] = 0.4 * ps.dx * t5 + 2.0 * ps.v * t4;
            if y_active {
                let inv_a = 1.0 / a;
                for k in 0..n - 1 {
                    jac[(row, k)] = 0.4 * ps.dy * t5 * q[k] * inv_a;
                }
            }
        }

        Some(match order {
            JetOrder::One => Jet2::order1(value, jac),
            JetOrder::Two => Jet2::order2(value, jac, fd_hessian_for(self, q)),
        })
    }

    fn has_analytic_jet(&self) -> bool {
        true
    }
}

/// Swallowtail sharpening family `G_{n,t}`: the front `(q̃, w, tau)` with
/// `z = phi_t(w, q_n) G`, `phi_t = (1-t) + t phi`.
///
/// The fibre components contain the quotient `phi_y G / tau_t`; the shield
/// built into [`sharpen_phi`] makes `phi_y` vanish identically near the
/// parabola `w = q_n^2` where `tau_t = 0`, so the term extends by zero there.
#[derive(Clone)]
pub struct SwallowtailSharpening {
    pub n: usize,
    pub delta: f64,
    pub eps: f64,
    pub time: f64,
    pub lift: bool,
    pub phi: BumpSpec,
    name: String,
}

impl SwallowtailSharpening {
    pub fn new(n: usize, delta: f64, eps: f64, time: f64, lift: bool) -> Result<Self, ModelError> {
        if !(delta > 0.0 && delta < 0.25) {
            return Err(ModelError::ParamOutOfRange {
                param: "delta",
                value: delta,
                expected: "(0, 1/4)",
            });
        }
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(ModelError::ParamOutOfRange {
                param: "eps",
                value: eps,
                expected: "(0, 1]",
            });
        }
        if !(0.0..=1.0).contains(&time) {
            return Err(ModelError::ParamOutOfRange {
                param: "t",
                value: time,
                expected: "[0, 1]",
            });
        }
        Ok(Self {
            n: n.max(2),
            delta,
            eps,
            time,
            lift,
            phi: sharpen_phi(delta, eps),
            name: format!("swallowtail-sharpening-{n}"),
        })
    }
}

impl SmoothMap for SwallowtailSharpening {
    fn name(&self) -> &str {
        &self.name
    }
    fn domain_dim(&self) -> usize {
        self.n
    }
    fn target(&self) -> TargetSpace {
        if self.lift {
            TargetSpace::JetOne { n: self.n }
        } else {
            TargetSpace::Cotangent { n: self.n }
        }
    }

    fn value(&self, q: &[f64]) -> DVector<f64> {
        self.analytic_jet(q, JetOrder::One).unwrap().value
    }

    fn analytic_jet(&self, q: &[f64], order: JetOrder) -> Option<Jet2> {
        let n = self.n;
        let dim = 2 * n + usize::from(self.lift);
        let s = self.time;
        let w = Jet2D::var_x(q[n - 2]);
        let t = Jet2D::var_y(q[n - 1]);
        let b = -w;
        let tau = eta(b, t);
        let g = h_field(b, t);
        let gg = big_h(b, t);
        // G_w = -H_b(-w, t), as an explicit jet
        let gw = -(b * b * t * t * 4.5 + b * t.powi(4) * 2.5 + t.powi(6) * (13.0 / 30.0));
        let tau_t = (t * t - w).scale(3.0);

        let ph = self.phi.at(q[n - 2], q[n - 1]);
        // phi_t value as a first-order jet in (w, t)
        let phv = Jet2D {
            v: (1.0 - s) + s * ph.v,
            dx: s * ph.dx,
            dy: s * ph.dy,
            dxx: 0.0,
            dxy: 0.0,
            dyy: 0.0,
        };
        // first-order jet of s*phi_y
        let phy = Jet2D {
            v: s * ph.dy,
            dx: s * ph.dxy,
            dy: s * ph.dyy,
            dxx: 0.0,
            dxy: 0.0,
            dyy: 0.0,
        };
        let phx = Jet2D {
            v: s * ph.dx,
            dx: s * ph.dxx,
            dy: s * ph.dxy,
            dxx: 0.0,
            dxy: 0.0,
            dyy: 0.0,
        };

        // shielded quotient term  s*phi_y * G / tau_t
        let qterm = if tau_t.v.abs() < TAU_GUARD {
            debug_assert!(phy.v.abs() < 1e-10, "shield must cover the cusp locus");
            Jet2D::ZERO
        } else {
            phy * gg / tau_t
        };
        let pn = qterm + phv * g;
        let pm1 = phx * gg + phv * gw + pn * t.scale(3.0);
        let z = phv * gg;

        let mut value = DVector::zeros(dim);
        let mut jac = DMatrix::zeros(dim, n);
        for j in 0..n - 2 {
            value[j] = q[j];
            jac[(j, j)] = 1.0;
        }
        value[n - 2] = q[n - 2];
        jac[(n - 2, n - 2)] = 1.0;
        let mut put = |row: usize, f: Jet2D| {
            value[row] = f.v;
            jac[(row, n - 2)] = f.dx;
            jac[(row, n - 1)] = f.dy;
        };
        put(n - 1, tau);
        put(2 * n - 2, pm1);
        put(2 * n - 1, pn);
        if self.lift {
            put(dim - 1, z);
        }

        Some(match order {
            JetOrder::One => Jet2::order1(value, jac),
            JetOrder::Two => Jet2::order2(value, jac, fd_hessian_for(self, q)),
        })
    }

    fn has_analytic_jet(&self) -> bool {
        true
    }
}

/// Sup of value and Jacobian deviations of `fam` from `base` over the grid.
pub fn c1_distance(
    base: &dyn SmoothMap,
    fam: &dyn SmoothMap,
    domain: &front_jets::ParamDomain,
) -> (f64, f64) {
    let mut dv: f64 = 0.0;
    let mut dj: f64 = 0.0;
    for q in domain.grid_points() {
        let a = base.analytic_jet(&q, JetOrder::One).unwrap();
        let b = fam.analytic_jet(&q, JetOrder::One).unwrap();
        dv = dv.max((a.value - b.value).abs().max());
        dj = dj.max((a.jacobian - b.jacobian).abs().max());
    }
    (dv, dj)
}

/// Front-level area discrepancy of a sharpening: the integral of
/// `(p_fam - p_base) · d(base)/dq_n` along the fiber `q̂ = const`,
/// `q_n in [-span, span]` crossing the support. Zero for exact homotopies.
pub fn front_area_discrepancy(
    base: &dyn SmoothMap,
    fam: &dyn SmoothMap,
    qhat: &[f64],
    span: f64,
) -> f64 {
    let n = base.domain_dim();
    let integrand = |u: f64| -> f64 {
        let mut q = qhat.to_vec();
        q.push(u);
        let jb = base.analytic_jet(&q, JetOrder::One).unwrap();
        let jf = fam.analytic_jet(&q, JetOrder::One).unwrap();
        let mut acc = 0.0;
        for i in 0..n {
            // base x-velocities agree for both maps (front deformations fix x)
            acc += (jf.value[n + i] - jb.value[n + i]) * jb.jacobian[(i, n - 1)];
        }
        acc
    };
    integrate_split(&integrand, -span, span, &[0.0], 1e-11)
}
