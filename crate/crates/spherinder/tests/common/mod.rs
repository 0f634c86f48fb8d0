#![allow(dead_code)]

pub mod jacobi1d;
pub mod oracle2d;
pub mod suite2d;

use spherinder_core::basis::SpherinderPoint;

/// Deterministic pseudo-random interior points (xorshift).
pub fn interior_points(n: usize, seed: u64) -> Vec<SpherinderPoint> {
    let mut state = seed.max(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..n)
        .map(|_| {
            let s = 0.05 + 0.85 * next();
            let phi = 2.0 * std::f64::consts::PI * next();
            let eta = -0.9 + 1.8 * next();
            SpherinderPoint::new(s, phi, eta).unwrap()
        })
        .collect()
}
