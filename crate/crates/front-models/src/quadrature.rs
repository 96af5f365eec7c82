//! Gauss–Legendre quadrature: fixed 32-node panels with adaptive bisection.

use std::sync::OnceLock;

const NODES: usize = 32;

fn gl32() -> &'static ([f64; NODES], [f64; NODES]) {
    static TABLE: OnceLock<([f64; NODES], [f64; NODES])> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Newton iteration on Legendre P_32, standard recurrence
        let n = NODES;
        let mut x = [0.0; NODES];
        let mut w = [0.0; NODES];
        for i in 0..n {
            let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, t);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
                let dt = p1 / dp;
                t -= dt;
                if dt.abs() < 1e-16 {
                    break;
                }
            }
            x[i] = t;
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
        (x, w)
    })
}

/// One 32-node panel over `[a, b]`.
pub fn panel(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (x, w) = gl32();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut s = 0.0;
    for i in 0..NODES {
        s += w[i] * f(mid + half * x[i]);
    }
    s * half
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: usize) -> f64 {
    let mid = 0.5 * (a + b);
    let left = panel(f, a, mid);
    let right = panel(f, mid, b);
    let refined = left + right;
    if (refined - whole).abs() <= tol || depth == 0 {
        return refined;
    }
    adaptive(f, a, mid, left, tol * 0.5, depth - 1) + adaptive(f, mid, b, right, tol * 0.5, depth - 1)
}

/// Adaptive Gauss–Legendre integral of `f` over `[a, b]` to tolerance `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let whole = panel(f, a, b);
    adaptive(f, a, b, whole, tol, 24)
}

/// Integral over `[a, b]` split at the interior `breakpoints` (sorted or not);
/// use when the integrand is only piecewise smooth.
pub fn integrate_split(f: &dyn Fn(f64) -> f64, a: f64, b: f64, breakpoints: &[f64], tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|t| *t > lo && *t < hi)
        .collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let mut total = 0.0;
    let mut left = lo;
    for c in cuts {
        total += integrate(f, left, c, tol);
        left = c;
    }
    total += integrate(f, left, hi, tol);
    sign * total
}

/// One 32-node panel of a jet-valued integrand.
pub fn panel_jet(f: &dyn Fn(f64) -> crate::jet2d::Jet2D, a: f64, b: f64) -> crate::jet2d::Jet2D {
    use crate::jet2d::Jet2D;
    let (x, w) = gl32();
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut s = Jet2D::ZERO;
    for i in 0..NODES {
        s = s + f(mid + half * x[i]).scale(w[i]);
    }
    s.scale(half)
}

fn jet_gap(a: &crate::jet2d::Jet2D, b: &crate::jet2d::Jet2D) -> f64 {
    (a.v - b.v)
        .abs()
        .max((a.dx - b.dx).abs())
        .max((a.dy - b.dy).abs())
        .max((a.dxx - b.dxx).abs())
        .max((a.dxy - b.dxy).abs())
        .max((a.dyy - b.dyy).abs())
}

fn adaptive_jet(
    f: &dyn Fn(f64) -> crate::jet2d::Jet2D,
    a: f64,
    b: f64,
    whole: crate::jet2d::Jet2D,
    tol: f64,
    depth: usize,
) -> crate::jet2d::Jet2D {
    let mid = 0.5 * (a + b);
    let left = panel_jet(f, a, mid);
    let right = panel_jet(f, mid, b);
    let refined = left + right;
    if jet_gap(&refined, &whole) <= tol || depth == 0 {
        return refined;
    }
    adaptive_jet(f, a, mid, left, tol * 0.5, depth - 1)
        + adaptive_jet(f, mid, b, right, tol * 0.5, depth - 1)
}

/// Adaptive integral of a jet-valued integrand, split at `breakpoints`.
/// All six jet channels are integrated together; adaptivity keys on the
/// worst channel.
pub fn integrate_jet_split(
    f: &dyn Fn(f64) -> crate::jet2d::Jet2D,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> crate::jet2d::Jet2D {
    use crate::jet2d::Jet2D;
    if a == b {
        return Jet2D::ZERO;
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|t| *t > lo && *t < hi)
        .collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let mut total = Jet2D::ZERO;
    let mut left = lo;
    for c in cuts {
        let whole = panel_jet(f, left, c);
        total = total + adaptive_jet(f, left, c, whole, tol, 16);
        left = c;
    }
    let whole = panel_jet(f, left, hi);
    total = total + adaptive_jet(f, left, hi, whole, tol, 16);
    total.scale(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        // degree 7 is far below the 63-degree exactness of GL32
        let f = |u: f64| 3.0 * u.powi(7) - u.powi(3) + 2.0;
        let got = integrate(&f, -1.0, 2.0, 1e-12);
        let exact = 3.0 * (2.0_f64.powi(8) - 1.0) / 8.0 - (16.0 - 1.0) / 4.0 + 2.0 * 3.0;
        assert!((got - exact).abs() < 1e-12);
    }

    #[test]
    fn wrinkle_h_at_one() {
        // ∫_0^1 (u^2 - 1)^2 du = 8/15
        let f = |u: f64| (u * u - 1.0) * (u * u - 1.0);
        let got = integrate(&f, 0.0, 1.0, 1e-13);
        assert!((got - 8.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn kink_handled_by_split() {
        let f = |u: f64| u.abs();
        let got = integrate_split(&f, -1.0, 1.0, &[0.0], 1e-13);
        assert!((got - 1.0).abs() < 1e-13);
    }

    #[test]
    fn reversed_interval_flips_sign() {
        let f = |u: f64| u * u;
        let fwd = integrate_split(&f, 0.0, 2.0, &[1.0], 1e-13);
        let rev = integrate_split(&f, 2.0, 0.0, &[1.0], 1e-13);
        assert!((fwd + rev).abs() < 1e-13);
    }
}
