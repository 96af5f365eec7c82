//! Mollifier-based profiles: smooth steps, bumps, the sharpening profiles of
//! the cusp and swallowtail homotopies, and the axial cutoffs used by the
//! oscillating models.
//!
//! Everything is built from `b(x) = exp(-1/x)` so the profiles are smooth,
//! and evaluated through [`Jet2D`] so first and second derivatives are exact.

use std::sync::Arc;

use crate::jet2d::Jet2D;

/// `exp(-1/t)` for `t > 0`, identically 0 otherwise.
pub fn mollifier(t: Jet2D) -> Jet2D {
    if t.v <= 0.0 {
        Jet2D::ZERO
    } else {
        (-t.recip()).exp()
    }
}

/// Smooth step: 0 for `t <= 0`, 1 for `t >= 1`, strictly increasing between.
pub fn smoothstep(t: Jet2D) -> Jet2D {
    if t.v <= 0.0 {
        Jet2D::ZERO
    } else if t.v >= 1.0 {
        Jet2D::ONE
    } else {
        let a = mollifier(t);
        let b = mollifier(-t + 1.0);
        a / (a + b)
    }
}

/// Step from 0 at `x <= lo` to 1 at `x >= hi`.
pub fn step_between(x: Jet2D, lo: f64, hi: f64) -> Jet2D {
    smoothstep((x - lo).scale(1.0 / (hi - lo)))
}

/// Compactly supported bump: support `(-1, 1)`, value 1 at 0.
pub fn unit_bump(x: Jet2D) -> Jet2D {
    if x.v.abs() >= 1.0 {
        Jet2D::ZERO
    } else {
        let one_minus = -(x * x) + 1.0;
        ((-one_minus.recip()) + 1.0).exp()
    }
}

/// Plateau bump: 1 for `|r| <= 0.4`, 0 for `|r| >= 0.9`, even and smooth.
pub fn plateau(r: Jet2D) -> Jet2D {
    let a = (r * r - 0.16).scale(1.0 / (0.81 - 0.16));
    -smoothstep(a) + 1.0
}

/// Even smooth step in |x|: 0 for `|x| <= lo`, 1 for `|x| >= hi`.
///
/// Uses `x^2` internally so the profile is smooth across `x = 0`.
pub fn even_step(x: Jet2D, lo: f64, hi: f64) -> Jet2D {
    step_between(x * x, lo * lo, hi * hi)
}

/// Builder kinds for [`BumpSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BumpKind {
    RegPhi,
    SharpenPsi,
    SharpenPhi,
    CutoffRho,
    CutoffPsiAxial,
    EtaProfile,
}

/// A concrete profile with exact derivative evaluators and the constants
/// measured from it at build time.
#[derive(Clone)]
pub struct BumpSpec {
    pub kind: BumpKind,
    pub delta: f64,
    pub eps: f64,
    /// Measured `sup |first partials| * delta`.
    pub published_a1: f64,
    /// Measured `sup |second partials| * delta^2`.
    pub published_a2: f64,
    eval: Arc<dyn Fn(Jet2D, Jet2D) -> Jet2D + Send + Sync>,
}

impl BumpSpec {
    pub fn eval(&self, x: Jet2D, y: Jet2D) -> Jet2D {
        (self.eval)(x, y)
    }

    /// Evaluate with `x`, `y` seeded as the two jet variables.
    pub fn at(&self, x: f64, y: f64) -> Jet2D {
        (self.eval)(Jet2D::var_x(x), Jet2D::var_y(y))
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        self.at(x, y).v
    }
}

fn measure_constants(
    eval: &(dyn Fn(Jet2D, Jet2D) -> Jet2D + Send + Sync),
    delta: f64,
    xr: (f64, f64),
    yr: (f64, f64),
) -> (f64, f64) {
    let m = 160;
    let mut a1: f64 = 0.0;
    let mut a2: f64 = 0.0;
    for i in 0..=m {
        for j in 0..=m {
            let x = xr.0 + (xr.1 - xr.0) * i as f64 / m as f64;
            let y = yr.0 + (yr.1 - yr.0) * j as f64 / m as f64;
            let jet = eval(Jet2D::var_x(x), Jet2D::var_y(y));
            a1 = a1.max(jet.dx.abs().max(jet.dy.abs()));
            a2 = a2.max(jet.dxx.abs().max(jet.dxy.abs()).max(jet.dyy.abs()));
        }
    }
    (a1 * delta, a2 * delta * delta)
}

/// Sharpening profile for the cusp homotopy.
///
/// `psi(x, y) = eps` on `[-d, d] x [-1+2d, 1-2d]`, 1 outside
/// `[-2d, 2d] x [-1+d, 1-d]`, between `eps` and 1 in the transition shell,
/// and `d(psi)/dy = 0` for `|y| < 1 - 2d`.
pub fn sharpen_psi(delta: f64, eps: f64) -> BumpSpec {
    let d = delta;
    let e = eps;
    let eval = move |x: Jet2D, y: Jet2D| -> Jet2D {
        let u = even_step(x, d, 2.0 * d);
        let v = even_step(y, 1.0 - 2.0 * d, 1.0 - d);
        let m = u + v - u * v;
        m.scale(1.0 - e) + e
    };
    let arc: Arc<dyn Fn(Jet2D, Jet2D) -> Jet2D + Send + Sync> = Arc::new(eval);
    let (a1, a2) = measure_constants(arc.as_ref(), d, (-2.5 * d, 2.5 * d), (-1.0, 1.0));
    BumpSpec {
        kind: BumpKind::SharpenPsi,
        delta: d,
        eps: e,
        published_a1: a1,
        published_a2: a2,
        eval: arc,
    }
}

/// Sharpening profile for the swallowtail homotopy, with the cusp-locus shield.
///
/// `phi(x, y) = eps` on `[-d, d]^2`, 1 outside `[-2d, 2d]^2`, smooth, and
/// `d(phi)/dy` vanishes on a neighborhood of the parabola `x = y^2` inside
/// the transition shell, so that the quotient `phi_y * G / tau_t` in the
/// sharpened model stays finite across the front's cusp locus. The shield
/// freezes the `y`-ramp at its value on the parabola; the price is that
/// `d(phi)/dx` grows like `1/d^2` there, which the published constants record.
pub fn sharpen_phi(delta: f64, eps: f64) -> BumpSpec {
    let d = delta;
    let e = eps;
    let eval = move |x: Jet2D, y: Jet2D| -> Jet2D {
        let u = even_step(x, d, 2.0 * d);
        let v = even_step(y, d, 2.0 * d);

        // shield half-width in p = x - y^2, pinched off at the ramp ends
        // where dv/dy already vanishes to all orders
        let yy = y * y;
        let t_lo = (yy - d * d).scale(1.0 / (d * d)); // 0 at |y|=d, 1 at |y|=d*sqrt(2)
        let t_hi = (-yy + 4.0 * d * d).scale(1.0 / (d * d));
        let pinch = smoothstep(t_lo) * smoothstep(t_hi);
        let width = pinch.scale(0.5 * d * d);

        let vt = if width.v <= 0.0 {
            v
        } else {
            let p = x - yy;
            let r = p / width;
            let chi = plateau(r);
            if chi.v == 0.0 {
                v
            } else {
                // v frozen to its value at the parabola point above x
                let vpar = if x.v <= 0.0 {
                    Jet2D::ZERO
                } else {
                    even_step(x.sqrt(), d, 2.0 * d)
                };
                v + chi * (vpar - v)
            }
        };

        let m = u + vt - u * vt;
        m.scale(1.0 - e) + e
    };
    let arc: Arc<dyn Fn(Jet2D, Jet2D) -> Jet2D + Send + Sync> = Arc::new(eval);
    let (a1, a2) = measure_constants(arc.as_ref(), d, (-2.5 * d, 2.5 * d), (-2.5 * d, 2.5 * d));
    BumpSpec {
        kind: BumpKind::SharpenPhi,
        delta: d,
        eps: e,
        published_a1: a1,
        published_a2: a2,
        eval: arc,
    }
}

/// Radial cutoff: 1 on `[0, 1-d]`, 0 near 1.
pub fn cutoff_rho(delta: f64) -> BumpSpec {
    let d = delta;
    let eval = move |x: Jet2D, _y: Jet2D| -> Jet2D {
        -step_between(x, 1.0 - d, 1.0 - 0.05 * d) + 1.0
    };
    let arc: Arc<dyn Fn(Jet2D, Jet2D) -> Jet2D + Send + Sync> = Arc::new(eval);
    let (a1, a2) = measure_constants(arc.as_ref(), d, (0.0, 1.0), (0.0, 0.0));
    BumpSpec {
        kind: BumpKind::CutoffRho,
        delta: d,
        eps: 0.0,
        published_a1: a1,
        published_a2: a2,
        eval: arc,
    }
}

/// Axial cutoff: 1 on `[0, 1-w]`, 0 near 1, for `w = 1/(4N+2)`.
pub fn cutoff_psi_axial(w: f64) -> BumpSpec {
    let eval = move |x: Jet2D, _y: Jet2D| -> Jet2D {
        -step_between(x, 1.0 - w, 1.0 - 0.05 * w) + 1.0
    };
    let arc: Arc<dyn Fn(Jet2D, Jet2D) -> Jet2D + Send + Sync> = Arc::new(eval);
    let (a1, a2) = measure_constants(arc.as_ref(), w, (0.0, 1.0), (0.0, 0.0));
    BumpSpec {
        kind: BumpKind::CutoffPsiAxial,
        delta: w,
        eps: 0.0,
        published_a1: a1,
        published_a2: a2,
        eval: arc,
    }
}

/// Non-increasing profile: 1 on `[0, 1-2d]`, `-d` on `[1-d, 1]`.
pub fn eta_profile(delta: f64) -> BumpSpec {
    let d = delta;
    let eval = move |x: Jet2D, _y: Jet2D| -> Jet2D {
        -step_between(x, 1.0 - 2.0 * d, 1.0 - d).scale(1.0 + d) + 1.0
    };
    let arc: Arc<dyn Fn(Jet2D, Jet2D) -> Jet2D + Send + Sync> = Arc::new(eval);
    let (a1, a2) = measure_constants(arc.as_ref(), d, (0.0, 1.0), (0.0, 0.0));
    BumpSpec {
        kind: BumpKind::EtaProfile,
        delta: d,
        eps: 0.0,
        published_a1: a1,
        published_a2: a2,
        eval: arc,
    }
}

/// Re-check the defining constraints of a sharpening profile on a sample
/// grid; returns the first violated constraint by name.
pub fn verify_sharpening_profile(spec: &BumpSpec) -> Result<(), String> {
    let d = spec.delta;
    let e = spec.eps;
    let (y_in, y_out) = match spec.kind {
        BumpKind::SharpenPsi => (1.0 - 2.0 * d, 1.0 - d),
        BumpKind::SharpenPhi => (d, 2.0 * d),
        _ => return Err("not a sharpening profile".into()),
    };
    let m = 33;
    for i in 0..m {
        for j in 0..m {
            let x = -2.4 * d + 4.8 * d * i as f64 / (m - 1) as f64;
            let ymax = match spec.kind {
                BumpKind::SharpenPsi => 1.1,
                _ => 2.4 * d,
            };
            let y = -ymax + 2.0 * ymax * j as f64 / (m - 1) as f64;
            let jet = spec.at(x, y);
            let val = jet.v;
            if !(e - 1e-12..=1.0 + 1e-12).contains(&val) {
                return Err(format!("range violation: psi({x},{y}) = {val}"));
            }
            if x.abs() <= d && y.abs() <= y_in && (val - e).abs() > 1e-12 {
                return Err(format!("inner-box violation at ({x},{y}): {val} != {e}"));
            }
            if (x.abs() >= 2.0 * d || y.abs() >= y_out) && (val - 1.0).abs() > 1e-12 {
                return Err(format!("outer violation at ({x},{y}): {val} != 1"));
            }
            let bound1 = spec.published_a1 / d * (1.0 + 1e-9) + 1e-12;
            if jet.dx.abs() > bound1 || jet.dy.abs() > bound1 {
                return Err(format!("first-derivative bound violated at ({x},{y})"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothstep_endpoints_and_monotone() {
        assert_eq!(smoothstep(Jet2D::var_x(-0.1)).v, 0.0);
        assert_eq!(smoothstep(Jet2D::var_x(1.1)).v, 1.0);
        let mut prev = -1.0;
        for k in 0..=100 {
            let t = k as f64 / 100.0;
            let v = smoothstep(Jet2D::var_x(t)).v;
            assert!(v >= prev);
            prev = v;
        }
        assert!((smoothstep(Jet2D::var_x(0.5)).v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn psi_profile_satisfies_lemma_constraints() {
        for &(d, e) in &[(0.1, 0.1), (0.05, 0.5), (0.2, 0.01)] {
            let spec = sharpen_psi(d, e);
            verify_sharpening_profile(&spec).unwrap();
            // d(psi)/dy = 0 when |y| < 1 - 2d
            for k in 0..50 {
                let y = -(1.0 - 2.0 * d) * 0.99 + 2.0 * (1.0 - 2.0 * d) * 0.99 * k as f64 / 49.0;
                let j = spec.at(1.5 * d, y);
                assert!(j.dy.abs() < 1e-14, "psi_y({}, {y}) = {}", 1.5 * d, j.dy);
            }
        }
    }

    #[test]
    fn phi_profile_shields_the_parabola() {
        for &(d, e) in &[(0.1, 0.1), (0.05, 0.01)] {
            let spec = sharpen_phi(d, e);
            verify_sharpening_profile(&spec).unwrap();
            // phi_y vanishes on the parabola x = y^2 through the whole shell
            for k in 0..80 {
                let y = d + (2.0 * d - d) * k as f64 / 79.0;
                let j = spec.at(y * y, y);
                assert!(
                    j.dy.abs() < 1e-12,
                    "phi_y on parabola at y={y}: {}",
                    j.dy
                );
                let jm = spec.at(y * y, -y);
                assert!(jm.dy.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cutoffs_are_one_then_zero() {
        let rho = cutoff_rho(0.2);
        assert_eq!(rho.value(0.5, 0.0), 1.0);
        assert_eq!(rho.value(0.999, 0.0), 0.0);
        let eta = eta_profile(0.2);
        assert_eq!(eta.value(0.1, 0.0), 1.0);
        assert!((eta.value(0.95, 0.0) + 0.2).abs() < 1e-12);
    }
}
