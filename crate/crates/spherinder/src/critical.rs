//! Onset of rotating convection: the Rayleigh number at which the least
//! damped eigenvalue crosses the imaginary axis.

use num_complex::Complex64;
use spherinder_core::problems::{build_convection, PhysicalParams};
use spherinder_core::Truncation;

use crate::error::{Error, Result};
use crate::solve::{solve_gevp, SolveMode};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalOptions {
    pub m: u32,
    pub trunc: Truncation,
    pub ekman: f64,
    pub prandtl: f64,
    /// physical Rayleigh numbers
    pub bracket: [f64; 2],
    /// first shift; `None` solves densely at every step
    pub target: Option<Complex64>,
    /// eigenvalues requested around the shift
    pub count: usize,
    pub tol: f64,
    /// stop once the bracket is this narrow relative to its midpoint
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl CriticalOptions {
    /// Bracket and shift given in reduced units, `Ra·E^{4/3}` and `λ·E^{2/3}`.
    pub fn reduced(m: u32, trunc: Truncation, ekman: f64, prandtl: f64, bracket: [f64; 2], omega: Option<f64>) -> Self {
        let ra = ekman.powf(-4.0 / 3.0);
        let w = ekman.powf(-2.0 / 3.0);
        Self {
            m,
            trunc,
            ekman,
            prandtl,
            bracket: [bracket[0] * ra, bracket[1] * ra],
            target: omega.map(|o| Complex64::new(0.0, o * w)),
            count: 8,
            tol: 1e-9,
            rel_tol: 1e-8,
            max_iter: 60,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalResult {
    pub rayleigh: f64,
    pub omega: f64,
    pub reduced_rayleigh: f64,
    pub reduced_omega: f64,
    pub eigenvalue: Complex64,
    pub iterations: usize,
    pub warnings: Vec<String>,
}

struct Tracker<'a> {
    opts: &'a CriticalOptions,
    last: Option<Complex64>,
    motion: Option<f64>,
    evals: usize,
    warnings: Vec<String>,
}

impl Tracker<'_> {
    /// Least damped eigenvalue at `ra`, checked against the previous one.
    fn lead(&mut self, ra: f64) -> Result<Complex64> {
        let o = self.opts;
        let params = PhysicalParams::new(o.ekman, o.prandtl, ra)?;
        let evp = build_convection(o.m, o.trunc, params)?;
        let mode = match self.last.or(o.target) {
            // keep the shift off the axis: at convergence the tracked
            // eigenvalue sits on it and would make the shifted pencil singular
            Some(t) if o.target.is_some() => {
                let target = Complex64::new(0.02 * t.norm().max(1.0), t.im);
                SolveMode::ShiftInvert { target, count: o.count }
            }
            _ => SolveMode::DenseFull,
        };
        let sol = solve_gevp(&evp.l, &evp.mass, mode, o.tol, false)?;
        let i = sol.least_damped().ok_or_else(|| Error::Solver(format!("no finite eigenvalues at Ra = {ra:e}")))?;
        if !sol.converged {
            return Err(Error::Solver(format!("eigensolver did not converge at Ra = {ra:e}")));
        }
        let lambda = sol.eigenvalues[i];
        self.evals += 1;
        if let Some(prev) = self.last {
            let step = (lambda - prev).norm();
            if let Some(m) = self.motion {
                if m > 0.0 && step > 10.0 * m {
                    self.warnings.push(format!(
                        "mode tracking jump at Ra = {ra:e}: moved {step:e} after {m:e} (λ = {} {:+}i)",
                        lambda.re, lambda.im
                    ));
                }
            }
            self.motion = Some(step);
        }
        self.last = Some(lambda);
        Ok(lambda)
    }
}

/// Illinois-style false position on `g(Ra) = Re λ_lead(Ra)`, falling back to
/// bisection when the secant step leaves the bracket interior.
pub fn critical_rayleigh(opts: &CriticalOptions) -> Result<CriticalResult> {
    let [mut a, mut b] = opts.bracket;
    if !(a > 0.0 && a < b) {
        return Err(Error::Usage(format!("bracket [{a:e}, {b:e}] must be positive and increasing")));
    }
    let mut tr = Tracker { opts, last: None, motion: None, evals: 0, warnings: Vec::new() };
    let la = tr.lead(a)?;
    let lb = tr.lead(b)?;
    let (mut ga, mut gb) = (la.re, lb.re);
    if !(ga < 0.0 && gb > 0.0) {
        return Err(Error::Bracket { low: a, high: b, g_low: ga, g_high: gb });
    }
    let mut best = (b, lb);
    let mut side = 0i8;
    for _ in 0..opts.max_iter {
        if (b - a) <= opts.rel_tol * 0.5 * (a + b) {
            break;
        }
        let mut c = b - gb * (b - a) / (gb - ga);
        if !(c > a && c < b) || !c.is_finite() {
            c = 0.5 * (a + b);
        }
        let lc = tr.lead(c)?;
        let gc = lc.re;
        best = (c, lc);
        if gc == 0.0 {
            break;
        }
        if gc < 0.0 {
            a = c;
            ga = gc;
            if side == -1 {
                gb *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            gb = gc;
            if side == 1 {
                ga *= 0.5;
            }
            side = 1;
        }
    }
    let (ra, lambda) = best;
    let e = opts.ekman;
    Ok(CriticalResult {
        rayleigh: ra,
        omega: lambda.im,
        reduced_rayleigh: ra * e.powf(4.0 / 3.0),
        reduced_omega: lambda.im * e.powf(2.0 / 3.0),
        eigenvalue: lambda,
        iterations: tr.evals,
        warnings: tr.warnings,
    })
}
