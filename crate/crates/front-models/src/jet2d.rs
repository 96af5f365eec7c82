//! Second-order bivariate dual numbers.
//!
//! Carries value, both first partials and all second partials of a quantity
//! through arithmetic, so every profile function in this crate (mollifier
//! steps, sharpening bumps, regularization lobes, zig-zag cores) gets exact
//! derivatives without hand differentiation.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2D {
    pub v: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxx: f64,
    pub dxy: f64,
    pub dyy: f64,
}

impl Jet2D {
    pub const ZERO: Jet2D = Jet2D::constant(0.0);
    pub const ONE: Jet2D = Jet2D::constant(1.0);

    pub const fn constant(v: f64) -> Self {
        Self {
            v,
            dx: 0.0,
            dy: 0.0,
            dxx: 0.0,
            dxy: 0.0,
            dyy: 0.0,
        }
    }

    /// Seed the first variable.
    pub const fn var_x(v: f64) -> Self {
        Self {
            v,
            dx: 1.0,
            dy: 0.0,
            dxx: 0.0,
            dxy: 0.0,
            dyy: 0.0,
        }
    }

    /// Seed the second variable.
    pub const fn var_y(v: f64) -> Self {
        Self {
            v,
            dx: 0.0,
            dy: 1.0,
            dxx: 0.0,
            dxy: 0.0,
            dyy: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite()
            && self.dx.is_finite()
            && self.dy.is_finite()
            && self.dxx.is_finite()
            && self.dxy.is_finite()
            && self.dyy.is_finite()
    }

    /// Compose with a scalar function given its value and two derivatives at `self.v`.
    pub fn chain(self, g: f64, dg: f64, d2g: f64) -> Self {
        Self {
            v: g,
            dx: dg * self.dx,
            dy: dg * self.dy,
            dxx: d2g * self.dx * self.dx + dg * self.dxx,
            dxy: d2g * self.dx * self.dy + dg * self.dxy,
            dyy: d2g * self.dy * self.dy + dg * self.dyy,
        }
    }

    pub fn exp(self) -> Self {
        let e = self.v.exp();
        self.chain(e, e, e)
    }

    pub fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * s * s))
    }

    pub fn sin(self) -> Self {
        self.chain(self.v.sin(), self.v.cos(), -self.v.sin())
    }

    pub fn cos(self) -> Self {
        self.chain(self.v.cos(), -self.v.sin(), -self.v.cos())
    }

    pub fn tanh(self) -> Self {
        let t = self.v.tanh();
        let sech2 = 1.0 - t * t;
        self.chain(t, sech2, -2.0 * t * sech2)
    }

    pub fn powi(self, k: i32) -> Self {
        let v = self.v.powi(k);
        let d1 = k as f64 * self.v.powi(k - 1);
        let d2 = (k * (k - 1)) as f64 * self.v.powi(k - 2);
        self.chain(v, d1, d2)
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn scale(self, c: f64) -> Self {
        Self {
            v: c * self.v,
            dx: c * self.dx,
            dy: c * self.dy,
            dxx: c * self.dxx,
            dxy: c * self.dxy,
            dyy: c * self.dyy,
        }
    }
}

impl std::ops::Add for Jet2D {
    type Output = Jet2D;
    fn add(self, o: Jet2D) -> Jet2D {
        Jet2D {
            v: self.v + o.v,
            dx: self.dx + o.dx,
            dy: self.dy + o.dy,
            dxx: self.dxx + o.dxx,
            dxy: self.dxy + o.dxy,
            dyy: self.dyy + o.dyy,
        }
    }
}

impl std::ops::Sub for Jet2D {
    type Output = Jet2D;
    fn sub(self, o: Jet2D) -> Jet2D {
        Jet2D {
            v: self.v - o.v,
            dx: self.dx - o.dx,
            dy: self.dy - o.dy,
            dxx: self.dxx - o.dxx,
            dxy: self.dxy - o.dxy,
            dyy: self.dyy - o.dyy,
        }
    }
}

impl std::ops::Neg for Jet2D {
    type Output = Jet2D;
    fn neg(self) -> Jet2D {
        self.scale(-1.0)
    }
}

impl std::ops::Mul for Jet2D {
    type Output = Jet2D;
    fn mul(self, o: Jet2D) -> Jet2D {
        Jet2D {
            v: self.v * o.v,
            dx: self.dx * o.v + self.v * o.dx,
            dy: self.dy * o.v + self.v * o.dy,
            dxx: self.dxx * o.v + 2.0 * self.dx * o.dx + self.v * o.dxx,
            dxy: self.dxy * o.v + self.dx * o.dy + self.dy * o.dx + self.v * o.dxy,
            dyy: self.dyy * o.v + 2.0 * self.dy * o.dy + self.v * o.dyy,
        }
    }
}

impl std::ops::Div for Jet2D {
    type Output = Jet2D;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet2D) -> Jet2D {
        self * o.recip()
    }
}

impl std::ops::Add<f64> for Jet2D {
    type Output = Jet2D;
    fn add(self, c: f64) -> Jet2D {
        let mut r = self;
        r.v += c;
        r
    }
}

impl std::ops::Sub<f64> for Jet2D {
    type Output = Jet2D;
    fn sub(self, c: f64) -> Jet2D {
        let mut r = self;
        r.v -= c;
        r
    }
}

impl std::ops::Mul<f64> for Jet2D {
    type Output = Jet2D;
    fn mul(self, c: f64) -> Jet2D {
        self.scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd2(f: impl Fn(f64, f64) -> f64, x: f64, y: f64) -> (f64, f64, f64, f64, f64) {
        let h = 1e-5;
        let dx = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
        let dy = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
        let dxx = (f(x + h, y) - 2.0 * f(x, y) + f(x - h, y)) / (h * h);
        let dyy = (f(x, y + h) - 2.0 * f(x, y) + f(x, y - h)) / (h * h);
        let dxy = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h))
            / (4.0 * h * h);
        (dx, dy, dxx, dxy, dyy)
    }

    #[test]
    fn matches_finite_differences_on_composite() {
        let f = |x: f64, y: f64| ((x * y).sin() + x * x / (1.0 + y * y)).exp();
        let eval = |x: f64, y: f64| {
            let xj = Jet2D::var_x(x);
            let yj = Jet2D::var_y(y);
            ((xj * yj).sin() + xj * xj / (yj * yj + 1.0)).exp()
        };
        for &(x, y) in &[(0.3, -0.7), (1.1, 0.4), (-0.5, 0.9)] {
            let j = eval(x, y);
            let (dx, dy, dxx, dxy, dyy) = fd2(f, x, y);
            assert!((j.v - f(x, y)).abs() < 1e-14);
            assert!((j.dx - dx).abs() < 1e-6 * (1.0 + dx.abs()));
            assert!((j.dy - dy).abs() < 1e-6 * (1.0 + dy.abs()));
            assert!((j.dxx - dxx).abs() < 1e-4 * (1.0 + dxx.abs()));
            assert!((j.dxy - dxy).abs() < 1e-4 * (1.0 + dxy.abs()));
            assert!((j.dyy - dyy).abs() < 1e-4 * (1.0 + dyy.abs()));
        }
    }

    #[test]
    fn sqrt_and_tanh_jets() {
        let x = Jet2D::var_x(2.0);
        let s = x.sqrt();
        assert!((s.v - 2.0_f64.sqrt()).abs() < 1e-15);
        assert!((s.dx - 0.5 / 2.0_f64.sqrt()).abs() < 1e-15);
        let t = x.tanh();
        let (d, _, _, _, _) = fd2(|a, _| a.tanh(), 2.0, 0.0);
        assert!((t.dx - d).abs() < 1e-8);
    }
}
