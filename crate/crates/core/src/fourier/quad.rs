//! Adaptive Gauss–Kronrod (G7, K15) panel integration.
//!
//! One rule evaluation yields the K15 value plus the |K15 − G7| error
//! estimate; panels whose estimate misses the budget are bisected. The
//! recursion order is fixed (left before right), so results are bit-stable
//! across runs.

/// Kronrod abscissae (positive half, ascending to the center).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_7,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss weights for the embedded G7 rule (odd Kronrod indices).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

/// Single G7/K15 application on [a, b]: (kronrod, |kronrod − gauss|).
fn gk15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for i in 0..7 {
        let dx = half * XGK[i];
        let fsum = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * fsum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    (kronrod, (kronrod - gauss).abs())
}

/// Adaptive bisection down to `depth` levels. Returns (value, error bound).
pub(crate) fn integrate<F: Fn(f64) -> f64 + ?Sized>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    depth: u32,
) -> (f64, f64) {
    let (val, err) = gk15(f, a, b);
    if err <= abs_tol + rel_tol * val.abs() || depth == 0 || (b - a) < 1e-15 * b.abs().max(1.0) {
        return (val, err);
    }
    let mid = 0.5 * (a + b);
    let (lv, le) = integrate(f, a, mid, 0.5 * abs_tol, rel_tol, depth - 1);
    let (rv, re) = integrate(f, mid, b, 0.5 * abs_tol, rel_tol, depth - 1);
    (lv + rv, le + re)
}
