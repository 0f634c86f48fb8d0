//! Dense quadrature-projection oracle for operators on the ball basis.
//!
//! Basis functions are evaluated here from scratch with forward-mode dual
//! numbers, the operator is applied pointwise in cylindrical components, and
//! the result is projected onto the output basis with a tensor Gauss rule.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use spherinder_core::basis::{SpaceTag, Spin};
use spherinder_core::jacobi::{gauss_jacobi, JacobiParams};

#[derive(Debug, Clone, Copy)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn var(v: f64) -> Self {
        Self { v, d: 1.0 }
    }
    pub fn cst(v: f64) -> Self {
        Self { v, d: 0.0 }
    }
    pub fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        Self { v: r, d: if r > 0.0 { 0.5 * self.d / r } else { 0.0 } }
    }
    pub fn powi(self, n: u32) -> Self {
        let mut out = Dual::cst(1.0);
        for _ in 0..n {
            out = out * self;
        }
        out
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { v: self.v + o.v, d: self.d + o.d }
    }
}
impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { v: self.v - o.v, d: self.d - o.d }
    }
}
impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { v: self.v * o.v, d: self.d * o.v + self.v * o.d }
    }
}
impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual { v: self.v / o.v, d: (self.d * o.v - self.v * o.d) / (o.v * o.v) }
    }
}
impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { v: -self.v, d: -self.d }
    }
}

/// Classical Jacobi polynomial by the textbook three-term recurrence.
pub fn jacobi(n: usize, a: f64, b: f64, x: Dual) -> Dual {
    let mut p0 = Dual::cst(1.0);
    if n == 0 {
        return p0;
    }
    let mut p1 = Dual::cst(0.5) * (Dual::cst(a + b + 2.0) * x + Dual::cst(a - b));
    for k in 1..n {
        let k = k as f64;
        let c = 2.0 * k + a + b;
        let a1 = 2.0 * (k + 1.0) * (k + a + b + 1.0) * c;
        let a2 = (c + 1.0) * (a * a - b * b);
        let a3 = c * (c + 1.0) * (c + 2.0);
        let a4 = 2.0 * (k + a) * (k + b) * (c + 2.0);
        let p2 = (Dual::cst(a2) * p1 + Dual::cst(a3) * x * p1 - Dual::cst(a4) * p0) / Dual::cst(a1);
        p0 = p1;
        p1 = p2;
    }
    p1
}

fn ln_norm(n: usize, a: f64, b: f64) -> f64 {
    let lg = |x: f64| libm::lgamma(x);
    let nf = n as f64;
    let head = (a + b + 1.0) * std::f64::consts::LN_2;
    if n == 0 {
        head + lg(a + 1.0) + lg(b + 1.0) - lg(a + b + 2.0)
    } else {
        head - (2.0 * nf + a + b + 1.0).ln() + lg(nf + a + 1.0) + lg(nf + b + 1.0) - lg(nf + a + b + 1.0) - lg(nf + 1.0)
    }
}

/// Orthonormal basis function without the `e^{imφ}` factor, as a function of
/// `(s, η)` given as duals.
pub fn psi(m: u32, sigma: Spin, alpha: f64, l: usize, k: usize, s: Dual, eta: Dual) -> Dual {
    let b = (m as i32 + sigma.value()).unsigned_abs();
    let t = Dual::cst(2.0) * s * s - Dual::cst(1.0);
    let one = Dual::cst(1.0);
    let a = l as f64 + alpha + 0.5;
    let nalpha = (2.0 * std::f64::consts::PI / 2f64.powf(2.5 + alpha)).sqrt();
    let scale = 1.0 / (nalpha * (0.5 * (ln_norm(l, alpha, alpha) + ln_norm(k, a, b as f64))).exp());
    let axis = (Dual::cst(2.0f64.sqrt()) * s).powi(b);
    let eq = (Dual::cst(2.0) * (one - s) * (one + s)).sqrt().powi(l as u32);
    Dual::cst(scale) * axis * eq * jacobi(l, alpha, alpha, eta) * jacobi(k, a, b as f64, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Grad,
    Div,
    Curl,
    /// `r⃗ f`
    RadialMultiply,
    /// `r⃗ · u`
    RadialComponent,
    /// `(1 - r²) f`
    OneMinusR2,
    Identity,
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn spinor_to_cyl(sigma: Spin) -> [Complex64; 3] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match sigma {
        Spin::Plus => [Complex64::new(r, 0.0), -I * r, Complex64::new(0.0, 0.0)],
        Spin::Minus => [Complex64::new(r, 0.0), I * r, Complex64::new(0.0, 0.0)],
        Spin::Zero => [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    }
}

fn cyl_component(w: [Complex64; 3], sigma: Spin) -> Complex64 {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    match sigma {
        Spin::Plus => (w[0] + I * w[1]) * r,
        Spin::Minus => (w[0] - I * w[1]) * r,
        Spin::Zero => w[2],
    }
}

/// Pointwise action on the input basis function at `(s, η)`.
pub fn apply_action(action: Action, dom: &SpaceTag, cod: &SpaceTag, l: usize, k: usize, s: f64, eta: f64) -> Complex64 {
    let gs = psi(dom.m, dom.sigma, dom.alpha, l, k, Dual::var(s), Dual::cst(eta));
    let ge = psi(dom.m, dom.sigma, dom.alpha, l, k, Dual::cst(s), Dual::var(eta));
    let g = gs.v;
    let h = (1.0 - s * s).sqrt();
    let z = eta * h;
    let d_s = gs.d + s * eta / (1.0 - s * s) * ge.d;
    let d_z = ge.d / h;
    let im = I * dom.m as f64;
    let c = spinor_to_cyl(dom.sigma);
    let gc = Complex64::new(g, 0.0);
    match action {
        Action::Grad => {
            let w = [Complex64::new(d_s, 0.0), im / s * g, Complex64::new(d_z, 0.0)];
            cyl_component(w, cod.sigma)
        }
        Action::Div => c[0] * (d_s + g / s) + im / s * c[1] * g + c[2] * d_z,
        Action::Curl => {
            let w = [
                im / s * c[2] * g - c[1] * d_z,
                c[0] * d_z - c[2] * d_s,
                c[1] * (g / s + d_s) - im / s * c[0] * g,
            ];
            cyl_component(w, cod.sigma)
        }
        Action::RadialMultiply => cyl_component([gc * s, Complex64::new(0.0, 0.0), gc * z], cod.sigma),
        Action::RadialComponent => (c[0] * s + c[2] * z) * g,
        Action::OneMinusR2 => gc * (1.0 - s * s - z * z),
        Action::Identity => gc,
    }
}

/// Dense `<Ψ_out, A Ψ_in>` over all retained modes.
pub fn projection_matrix(action: Action, dom: &SpaceTag, cod: &SpaceTag) -> Vec<Vec<Complex64>> {
    let lmax = dom.trunc.l_count.max(cod.trunc.l_count);
    let nmax = dom.trunc.n_max.max(cod.trunc.n_max);
    let n_eta = lmax + 8;
    let n_t = lmax + 2 * nmax + cod.m as usize + 10;
    let qe = gauss_jacobi(n_eta, JacobiParams::new(cod.alpha, cod.alpha).unwrap()).unwrap();
    let qt = gauss_jacobi(n_t, JacobiParams::new(cod.alpha + 0.5, 0.0).unwrap()).unwrap();
    let scale = 2.0 * std::f64::consts::PI / 2f64.powf(2.5 + cod.alpha);
    let out_modes: Vec<_> = cod.trunc.modes().collect();
    let in_modes: Vec<_> = dom.trunc.modes().collect();
    let mut m = vec![vec![Complex64::new(0.0, 0.0); in_modes.len()]; out_modes.len()];
    for (&t, &wt) in qt.nodes.iter().zip(&qt.weights) {
        let s = (0.5 * (1.0 + t)).sqrt();
        for (&eta, &we) in qe.nodes.iter().zip(&qe.weights) {
            let w = scale * wt * we;
            let outs: Vec<f64> = out_modes
                .iter()
                .map(|&(l, k)| psi(cod.m, cod.sigma, cod.alpha, l, k, Dual::cst(s), Dual::cst(eta)).v)
                .collect();
            for (j, &(l, k)) in in_modes.iter().enumerate() {
                let v = apply_action(action, dom, cod, l, k, s, eta) * w;
                for (i, o) in outs.iter().enumerate() {
                    m[i][j] += v * *o;
                }
            }
        }
    }
    m
}
