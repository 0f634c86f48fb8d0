use num_complex::Complex64;

use crate::math::{cos, sin, FRAC_1_SQRT_2};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `(u, v, w) -> (u_+, u_-, u_0)` with `u_± = (u ± i v)/√2`, `u_0 = w`.
/// `u, v, w` are the `ê_s, ê_φ, ê_z` components.
pub fn spinor_from_cylindrical(u: Complex64, v: Complex64, w: Complex64) -> (Complex64, Complex64, Complex64) {
    ((u + I * v) * FRAC_1_SQRT_2, (u - I * v) * FRAC_1_SQRT_2, w)
}

/// Inverse of [`spinor_from_cylindrical`].
pub fn cylindrical_from_spinor(
    plus: Complex64,
    minus: Complex64,
    zero: Complex64,
) -> (Complex64, Complex64, Complex64) {
    ((plus + minus) * FRAC_1_SQRT_2, -I * (plus - minus) * FRAC_1_SQRT_2, zero)
}

/// Rotate cylindrical components at azimuth `phi` into Cartesian ones.
pub fn cylindrical_to_cartesian(phi: f64, c: [Complex64; 3]) -> [Complex64; 3] {
    let (cp, sp) = (cos(phi), sin(phi));
    [c[0] * cp - c[1] * sp, c[0] * sp + c[1] * cp, c[2]]
}
