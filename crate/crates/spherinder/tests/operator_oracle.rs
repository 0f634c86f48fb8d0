mod common;

use common::jacobi1d;
use common::oracle2d::{projection_matrix, Action};
use common::suite2d::{self, calculus_action, max_error, trunc, ALPHAS, CALCULUS, MS};
use num_complex::Complex64;
use spherinder_core::basis::Spin;
use spherinder_core::jacobi::{JacobiOperatorKind, JacobiParams};
use spherinder_core::operators::{
    calculus_operator, conversion, one_minus_r2, radial_component_part, radial_multiply_component, AssembledOperator,
};

const TOL: f64 = 1e-10;

fn check(op: &AssembledOperator, action: Action) {
    let (e, at) = max_error(op, action);
    assert!(e < TOL, "max error {e:e}: {at}");
}

#[test]
fn calculus_operators_match_projection() {
    for m in MS {
        for alpha in ALPHAS {
            for op in CALCULUS {
                check(&calculus_operator(op, m, alpha, trunc(), trunc()).unwrap(), calculus_action(op));
            }
        }
    }
}

#[test]
fn radial_operators_match_projection() {
    for m in MS {
        for alpha in ALPHAS {
            for s in Spin::ALL {
                check(&radial_multiply_component(m, s, alpha, trunc(), trunc()).unwrap(), Action::RadialMultiply);
                check(&radial_component_part(m, s, alpha, trunc(), trunc()).unwrap(), Action::RadialComponent);
            }
        }
    }
}

#[test]
fn conversion_matches_projection() {
    for m in MS {
        for alpha in ALPHAS {
            for s in Spin::ALL {
                check(&conversion(m, s, alpha, trunc()).unwrap(), Action::Identity);
            }
        }
    }
}

#[test]
fn one_minus_r2_matches_projection() {
    for m in MS {
        for alpha in ALPHAS {
            for s in Spin::ALL {
                check(&one_minus_r2(m, s, alpha + 1.0, trunc()).unwrap(), Action::OneMinusR2);
            }
        }
    }
}

#[test]
fn suite_covers_every_family() {
    let (e, n, at) = suite2d::suite();
    assert_eq!(n, MS.len() * ALPHAS.len() * (CALCULUS.len() + 4 * 3));
    assert!(e < TOL, "{e:e}: {at}");
}

#[test]
fn oracle_reproduces_identity() {
    let tag = spherinder_core::SpaceTag::new(2, Spin::Minus, 0.5, trunc()).unwrap();
    let m = projection_matrix(Action::Identity, &tag, &tag);
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let want = if i == j { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            assert!((v - want).norm() < 1e-12, "({i},{j}) {v}");
        }
    }
}

#[test]
fn explicit_sum_matches_classical_values() {
    // P_2^{(0,0)} = (3z² - 1)/2, P_1^{(a,b)} = (a+1) + (a+b+2)(z-1)/2
    let z = 0.3;
    let (p, dp) = jacobi1d::jacobi_explicit(2, 0.0, 0.0, z);
    assert!((p - 0.5 * (3.0 * z * z - 1.0)).abs() < 1e-15);
    assert!((dp - 3.0 * z).abs() < 1e-15);
    let (p, dp) = jacobi1d::jacobi_explicit(1, 1.5, -0.5, z);
    assert!((p - (2.5 + 3.0 * (z - 1.0) / 2.0)).abs() < 1e-15);
    assert!((dp - 1.5).abs() < 1e-15);
}

#[test]
fn gauss_rule_reproduces_beta_moments() {
    for (a, b) in jacobi1d::PARAMS {
        for n in [1, 5, 12] {
            let e = jacobi1d::rule_moment_error(n, a, b);
            assert!(e < 1e-12, "n={n} a={a} b={b}: {e:e}");
        }
    }
}

#[test]
fn banded_jacobi_operators_match_explicit_projection() {
    for kind in JacobiOperatorKind::ALL {
        for (a, b) in jacobi1d::PARAMS {
            let src = JacobiParams::new(a, b).unwrap();
            if kind.dst(src).validate().is_err() {
                continue;
            }
            let e = jacobi1d::max_error(kind, 8, src);
            assert!(e < TOL, "{kind:?} a={a} b={b}: {e:e}");
        }
    }
}
