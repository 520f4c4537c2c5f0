//! Positive zeros j_{ν,m} of J_ν, located by Newton iteration from McMahon
//! expansion starting points. Good to ~1e-12, which is all the lobe
//! partitioning needs.

use crate::specfun::bessel_j_unchecked;

/// m-th positive zero of J_ν (m ≥ 1), for ν ≥ 0.
pub fn bessel_j_zero(nu: f64, m: u32) -> f64 {
    debug_assert!(nu >= 0.0 && m >= 1);
    let mu = 4.0 * nu * nu;
    let b = (m as f64 + 0.5 * nu - 0.25) * std::f64::consts::PI;
    let eb = 8.0 * b;
    let mut z = b
        - (mu - 1.0) / eb
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * eb.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * eb.powi(5));
    // The first zero of higher orders sits to the right of McMahon's guess;
    // keep Newton inside the basin.
    z = z.max(nu + 1.0);
    for _ in 0..4 {
        let j = bessel_j_unchecked(nu, z).unwrap_or(0.0);
        let jp = if nu == 0.0 {
            -bessel_j_unchecked(1.0, z).unwrap_or(1.0)
        } else {
            bessel_j_unchecked(nu - 1.0, z).unwrap_or(0.0) - nu / z * j
        };
        if jp == 0.0 {
            break;
        }
        let step = j / jp;
        z -= step;
        if step.abs() < 1e-13 * z {
            break;
        }
    }
    z
}
