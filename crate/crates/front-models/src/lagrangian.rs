//! The Lagrangian wrinkle, its Legendrian lift, and the elementary catalog
//! models (zero section, fold, cusp).

use front_jets::{Jet2, JetOrder, SmoothMap, TargetSpace};
use nalgebra::{DMatrix, DVector};

use crate::fields::{big_h, eta, h_field, p_field};
use crate::jet2d::Jet2D;
use crate::wrinkle::fd_hessian_for;

fn norm_sq(q: &[f64]) -> f64 {
    q.iter().map(|x| x * x).sum()
}

/// `L_n: q -> (q̂, eta, p_1, .., p_{n-1}, h)` into `T*R^n`, with
/// `p_j = dH/dq_j - h d(eta)/dq_j = 2 q_j P`; `lift` appends `z = H` for the
/// Legendrian model in `J^1(R^n, R)`.
#[derive(Debug, Clone)]
pub struct LagrangianWrinkle {
    pub n: usize,
    pub lift: bool,
    name: String,
}

impl LagrangianWrinkle {
    pub fn new(n: usize, lift: bool) -> Self {
        assert!(n >= 1);
        Self {
            n,
            lift,
            name: if lift {
                format!("legendrian-wrinkle-{n}")
            } else {
                format!("lagrangian-wrinkle-{n}")
            },
        }
    }
}

impl SmoothMap for LagrangianWrinkle {
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
        let b = Jet2D::var_x(norm_sq(&q[..n - 1]) - 1.0);
        let t = Jet2D::var_y(q[n - 1]);
        let e = eta(b, t);
        let h = h_field(b, t);
        let p = p_field(b, t);

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

        for j in 0..n - 1 {
            let row = n + j;
            value[row] = 2.0 * q[j] * p.v;
            for k in 0..n - 1 {
                let mut d = 4.0 * q[j] * q[k] * p.dx;
                if k == j {
                    d += 2.0 * p.v;
                }
                jac[(row, k)] = d;
            }
            jac[(row, n - 1)] = 2.0 * q[j] * p.dy;
        }
        value[2 * n - 1] = h.v;
        for k in 0..n - 1 {
            jac[(2 * n - 1, k)] = h.dx * 2.0 * q[k];
        }
        jac[(2 * n - 1, n - 1)] = h.dy;

        if self.lift {
            let bh = big_h(b, t);
            value[dim - 1] = bh.v;
            for k in 0..n - 1 {
                jac[(dim - 1, k)] = bh.dx * 2.0 * q[k];
            }
            jac[(dim - 1, n - 1)] = bh.dy;
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

/// Zero section of `T*R^n` (or of `J^1` with `lift`).
#[derive(Debug, Clone)]
pub struct ZeroSection {
    pub n: usize,
    pub lift: bool,
    name: String,
}

impl ZeroSection {
    pub fn new(n: usize, lift: bool) -> Self {
        Self {
            n,
            lift,
            name: format!("zero-section-{n}"),
        }
    }
}

impl SmoothMap for ZeroSection {
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
        let dim = 2 * self.n + usize::from(self.lift);
        let mut v = DVector::zeros(dim);
        for j in 0..self.n {
            v[j] = q[j];
        }
        v
    }

    fn analytic_jet(&self, q: &[f64], order: JetOrder) -> Option<Jet2> {
        let n = self.n;
        let dim = 2 * n + usize::from(self.lift);
        let mut jac = DMatrix::zeros(dim, n);
        for j in 0..n {
            jac[(j, j)] = 1.0;
        }
        let value = self.value(q);
        Some(match order {
            JetOrder::One => Jet2::order1(value, jac),
            JetOrder::Two => Jet2::order2(value, jac, vec![DMatrix::zeros(n, n); dim]),
        })
    }

    fn has_analytic_jet(&self) -> bool {
        true
    }
}

/// Sharpenable Lagrangian cusp `eps C_n: q -> (q̂, q_n^2, 0, .., eps q_n^3)`,
/// the product of the semi-cubical cusp with the zero section; `lift` appends
/// `z = eps (2/5) q_n^5`.
#[derive(Debug, Clone)]
pub struct CuspModel {
    pub n: usize,
    pub eps: f64,
    pub lift: bool,
    name: String,
}

impl CuspModel {
    pub fn new(n: usize, eps: f64, lift: bool) -> Self {
        assert!(n >= 1);
        Self {
            n,
            eps,
            lift,
            name: if lift {
                format!("legendrian-cusp-{n}")
            } else {
                format!("cusp-{n}")
            },
        }
    }
}

impl SmoothMap for CuspModel {
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
        let n = self.n;
        let t = q[n - 1];
        let dim = 2 * n + usize::from(self.lift);
        let mut v = DVector::zeros(dim);
        for j in 0..n - 1 {
            v[j] = q[j];
        }
        v[n - 1] = t * t;
        v[2 * n - 1] = self.eps * t * t * t;
        if self.lift {
            v[dim - 1] = self.eps * 0.4 * t.powi(5);
        }
        v
    }

    fn analytic_jet(&self, q: &[f64], order: JetOrder) -> Option<Jet2> {
        let n = self.n;
        let t = q[n - 1];
        let dim = 2 * n + usize::from(self.lift);
        let mut jac = DMatrix::zeros(dim, n);
        for j in 0..n - 1 {
            jac[(j, j)] = 1.0;
        }
        jac[(n - 1, n - 1)] = 2.0 * t;
        jac[(2 * n - 1, n - 1)] = 3.0 * self.eps * t * t;
        if self.lift {
            jac[(dim - 1, n - 1)] = 2.0 * self.eps * t.powi(4);
        }
        let value = self.value(q);
        Some(match order {
            JetOrder::One => Jet2::order1(value, jac),
            JetOrder::Two => {
                let mut hess = vec![DMatrix::zeros(n, n); dim];
                hess[n - 1][(n - 1, n - 1)] = 2.0;
                hess[2 * n - 1][(n - 1, n - 1)] = 6.0 * self.eps * t;
                if self.lift {
                    hess[dim - 1][(n - 1, n - 1)] = 8.0 * self.eps * t * t * t;
                }
                Jet2::order2(value, jac, hess)
            }
        })
    }

    fn has_analytic_jet(&self) -> bool {
        true
    }
}

/// Immersed fold `q -> (q̂, q_n^2, 0, .., (3/2) q_n)`, the Lagrangian whose
/// front is the standard fold `(q̂, q_n^2)`; `lift` appends `z = q_n^3`.
#[derive(Debug, Clone)]
pub struct FoldModel {
    pub n: usize,
    pub lift: bool,
    name: String,
}

impl FoldModel {
    pub fn new(n: usize, lift: bool) -> Self {
        assert!(n >= 1);
        Self {
            n,
            lift,
            name: if lift {
                format!("legendrian-fold-{n}")
            } else {
                format!("fold-{n}")
            },
        }
    }
}

impl SmoothMap for FoldModel {
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
        let n = self.n;
        let t = q[n - 1];
        let dim = 2 * n + usize::from(self.lift);
        let mut v = DVector::zeros(dim);
        for j in 0..n - 1 {
            v[j] = q[j];
        }
        v[n - 1] = t * t;
        v[2 * n - 1] = 1.5 * t;
        if self.lift {
            v[dim - 1] = t * t * t;
        }
        v
    }

    fn analytic_jet(&self, q: &[f64], order: JetOrder) -> Option<Jet2> {
        let n = self.n;
        let t = q[n - 1];
        let dim = 2 * n + usize::from(self.lift);
        let mut jac = DMatrix::zeros(dim, n);
        for j in 0..n - 1 {
            jac[(j, j)] = 1.0;
        }
        jac[(n - 1, n - 1)] = 2.0 * t;
        jac[(2 * n - 1, n - 1)] = 1.5;
        if self.lift {
            jac[(dim - 1, n - 1)] = 3.0 * t * t;
        }
        let value = self.value(q);
        Some(match order {
            JetOrder::One => Jet2::order1(value, jac),
            JetOrder::Two => {
                let mut hess = vec![DMatrix::zeros(n, n); dim];
                hess[n - 1][(n - 1, n - 1)] = 2.0;
                if self.lift {
                    hess[dim - 1][(n - 1, n - 1)] = 6.0 * t;
                }
                Jet2::order2(value, jac, hess)
            }
        })
    }

    fn has_analytic_jet(&self) -> bool {
        true
    }
}
