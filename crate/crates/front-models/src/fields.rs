//! Closed-form scalar fields of the wrinkle family, as functions of
//! `(b, t)` where `b = |q̂|^2 - 1` and `t = q_n`.
//!
//! All integrals in the defining formulas have polynomial antiderivatives:
//!   eta = t^3 + 3 b t
//!   h   = ∫_0^t (b + u^2)^2 du           = b^2 t + (2/3) b t^3 + t^5/5
//!   H   = ∫_0^t h(b,u) eta_u(b,u) du     = (3/2) b^3 t^2 + (5/4) b^2 t^4
//!                                          + (13/30) b t^6 + (3/40) t^8
//!   P   = (∂H/∂b - 3 t h) / 2-ish combo  = (3/2) b^2 t^2 + (1/2) b t^4 - (1/6) t^6
//! with `p_j = 2 q_j P` the fibre components of the Lagrangian wrinkle.
//!
//! The swallowtail fields are the same polynomials at `b = -q_{n-1}`:
//! `tau = eta(-w, t)`, `g = h(-w, t)`, `G = H(-w, t)`.

use crate::jet2d::Jet2D;

pub fn eta(b: Jet2D, t: Jet2D) -> Jet2D {
    t.powi(3) + b * t * 3.0
}

pub fn h_field(b: Jet2D, t: Jet2D) -> Jet2D {
    b * b * t + b * t.powi(3) * (2.0 / 3.0) + t.powi(5) * (1.0 / 5.0)
}

pub fn big_h(b: Jet2D, t: Jet2D) -> Jet2D {
    b.powi(3) * t.powi(2) * 1.5
        + b.powi(2) * t.powi(4) * 1.25
        + b * t.powi(6) * (13.0 / 30.0)
        + t.powi(8) * (3.0 / 40.0)
}

pub fn p_field(b: Jet2D, t: Jet2D) -> Jet2D {
    b * b * t * t * 1.5 + b * t.powi(4) * 0.5 - t.powi(6) * (1.0 / 6.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(b: f64, t: f64) -> (Jet2D, Jet2D) {
        (Jet2D::var_x(b), Jet2D::var_y(t))
    }

    #[test]
    fn one_dimensional_values() {
        // n = 1: b = -1; eta(1) = -2, h(1) = 8/15, H(1) = -73/120
        let (b, t) = at(-1.0, 1.0);
        assert_eq!(eta(b, t).v, -2.0);
        assert!((h_field(b, t).v - 8.0 / 15.0).abs() < 1e-15);
        assert!((big_h(b, t).v + 73.0 / 120.0).abs() < 1e-15);
    }

    #[test]
    fn h_derivative_is_the_squared_factor() {
        // dh/dt = (b + t^2)^2
        for &(b, t) in &[(-1.0, 0.3), (0.2, -0.8), (-0.5, 1.4)] {
            let (bj, tj) = at(b, t);
            let ht = h_field(bj, tj).dy;
            let expect = (b + t * t) * (b + t * t);
            assert!((ht - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn big_h_derivative_matches_integrand() {
        // dH/dt = h * eta_t
        for &(b, t) in &[(-1.0, 0.7), (0.4, -0.6), (-0.2, 1.1)] {
            let (bj, tj) = at(b, t);
            let lhs = big_h(bj, tj).dy;
            let rhs = h_field(bj, tj).v * eta(bj, tj).dy;
            assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
        }
    }

    #[test]
    fn p_is_h_b_minus_three_t_h() {
        // P = H_b - 3 t h, the bracket of p_j = dH/dq_j - h d(eta)/dq_j
        for &(b, t) in &[(-1.0, 0.5), (0.3, -0.9), (-0.7, 1.2)] {
            let (bj, tj) = at(b, t);
            let lhs = p_field(bj, tj).v;
            let rhs = big_h(bj, tj).dx - 3.0 * t * h_field(bj, tj).v;
            assert!((lhs - rhs).abs() < 1e-12 * (1.0 + rhs.abs()));
        }
    }
}
