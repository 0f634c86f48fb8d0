//! Assembled sparse operators against the 2-D projection oracle.

use spherinder_core::basis::{Spin, Truncation};
use spherinder_core::operators::{
    calculus_operator, conversion, one_minus_r2, radial_component_part, radial_multiply_component, AssembledOperator,
    Calculus,
};

use super::oracle2d::{projection_matrix, Action};

pub const MS: [u32; 3] = [0, 1, 3];
pub const ALPHAS: [f64; 3] = [0.0, -0.5, 1.0];

pub fn trunc() -> Truncation {
    Truncation::new(6, 6).unwrap()
}

/// Worst entry error and where it happened.
pub fn max_error(op: &AssembledOperator, action: Action) -> (f64, String) {
    let oracle = projection_matrix(action, &op.domain, &op.codomain);
    let dense = op.matrix.to_dense();
    let mut worst = 0.0f64;
    let mut at = (0, 0);
    for (i, row) in oracle.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let e = (dense[i][j] - *v).norm();
            if e > worst {
                worst = e;
                at = (i, j);
            }
        }
    }
    let where_ = format!(
        "{} m={} α={} at {:?} (assembled {}, oracle {})",
        op.name, op.domain.m, op.domain.alpha, at, dense[at.0][at.1], oracle[at.0][at.1]
    );
    (worst, where_)
}

pub const CALCULUS: [Calculus; 12] = [
    Calculus::GradPlus,
    Calculus::GradMinus,
    Calculus::GradZero,
    Calculus::DivPlus,
    Calculus::DivMinus,
    Calculus::DivZero,
    Calculus::CurlPlusPlus0,
    Calculus::CurlMinusMinus0,
    Calculus::CurlZeroFromMinus,
    Calculus::CurlZeroFromPlus,
    Calculus::CurlMinusFromZero,
    Calculus::CurlPlusFromZero,
];

pub fn calculus_action(op: Calculus) -> Action {
    use Calculus::*;
    match op {
        GradPlus | GradMinus | GradZero => Action::Grad,
        DivPlus | DivMinus | DivZero => Action::Div,
        _ => Action::Curl,
    }
}

/// Every operator family with its defining action, over all `MS × ALPHAS`
/// (and spins where the family is per-component).
pub fn all_operators() -> Vec<(AssembledOperator, Action)> {
    let t = trunc();
    let mut out = Vec::new();
    for m in MS {
        for alpha in ALPHAS {
            for op in CALCULUS {
                out.push((calculus_operator(op, m, alpha, t, t).unwrap(), calculus_action(op)));
            }
            for s in Spin::ALL {
                out.push((radial_multiply_component(m, s, alpha, t, t).unwrap(), Action::RadialMultiply));
                out.push((radial_component_part(m, s, alpha, t, t).unwrap(), Action::RadialComponent));
                out.push((conversion(m, s, alpha, t).unwrap(), Action::Identity));
                out.push((one_minus_r2(m, s, alpha + 1.0, t).unwrap(), Action::OneMinusR2));
            }
        }
    }
    out
}

/// Worst error over [`all_operators`] and the number of operators checked.
pub fn suite() -> (f64, usize, String) {
    let ops = all_operators();
    let mut worst = (0.0, String::new());
    for (op, action) in &ops {
        let e = max_error(op, *action);
        if e.0 >= worst.0 {
            worst = e;
        }
    }
    (worst.0, ops.len(), worst.1)
}
