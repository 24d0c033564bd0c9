// Generated by tools/oracle.py. Do not edit by hand.
#![allow(dead_code, clippy::approx_constant)]

/// (eta, Q) for the four-dimensional example across [1/3, 2/3].
pub const EXAMPLE_Q_GRID: [(f64, f64); 21] = [
    (0.3333333333333333, 0.6666666666666666),
    (0.35, 0.6745368781616021),
    (0.36666666666666664, 0.6815016100086958),
    (0.38333333333333336, 0.6875883781578757),
    (0.4, 0.6928203230275509),
    (0.4166666666666667, 0.6972166887783963),
    (0.43333333333333335, 0.7007932013876212),
    (0.45, 0.7035623639735145),
    (0.4666666666666667, 0.7055336829505575),
    (0.48333333333333334, 0.7067138349038063),
    (0.5, 0.7071067811865476),
    (0.5166666666666667, 0.7067138349038063),
    (0.5333333333333333, 0.7055336829505575),
    (0.55, 0.7035623639735145),
    (0.5666666666666667, 0.7007932013876212),
    (0.5833333333333334, 0.6972166887783963),
    (0.6, 0.6928203230275509),
    (0.6166666666666667, 0.6875883781578757),
    (0.6333333333333333, 0.6815016100086958),
    (0.65, 0.6745368781616021),
    (0.6666666666666666, 0.6666666666666666),
];
pub const EXAMPLE_Q_QUARTER: f64 = 0.625;
pub const EXAMPLE_Q_HALF: f64 = 0.7071067811865476;
pub const EXAMPLE_FIDELITY: f64 = 0.7071067811865476;

/// Dividers for cos^2 = (3/4, 1/4) at the given alpha.
pub const DIVIDERS_A25: [f64; 4] = [0.058823529411764705, 0.1, 0.5, 0.64];
pub const DIVIDERS_A5: [f64; 4] = [0.15789473684210525, 0.25, 0.75, 0.8421052631578947];
pub const DIVIDERS_A75: [f64; 4] = [0.36, 0.5, 0.9, 0.9411764705882353];
pub const DIVIDERS_A9: [f64; 4] = [0.627906976744186, 0.75, 0.9642857142857143, 0.9795918367346939];

pub const KEY_SHARING_VALID: f64 = 0.08578643762690494;
pub const KEY_SHARING_SINGLE: f64 = 0.2928932188134524;
pub const BLACK_BOX_SUCCESS: f64 = 0.29289321881345254;

pub const JORDAN_COS: [f64; 2] = [0.7071067811865475, 0.4472135954999579];

/// total, saturating, projective, povm, mixed
pub const CENSUS_3_4_1_4: [usize; 5] = [25, 3, 12, 3, 10];
pub const CENSUS_9_10_1_10: [usize; 5] = [25, 3, 12, 3, 10];
