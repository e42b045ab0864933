//! Integer-order Bessel functions of the first kind.

use std::f64::consts::PI;

/// `J_n(x)` from the integral representation
/// `J_n(x) = (1/pi) * integral_0^pi cos(n t - x sin t) dt`.
///
/// The integrand extends to a smooth 2pi-periodic function, so the trapezoid
/// rule converges geometrically; the node count grows with `|x| + n` to keep
/// the aliasing terms `J_{2M±n}(x)` below double precision.
pub fn besselj(order: u32, x: f64) -> f64 {
    let n = order as f64;
    let m = (x.abs() + n).ceil() as usize + 32;
    let h = PI / m as f64;
    let mut sum = 0.5 * (1.0 + (n * PI).cos());
    for k in 1..m {
        let t = k as f64 * h;
        sum += (n * t - x * t.sin()).cos();
    }
    sum / m as f64
}
