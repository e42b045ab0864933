use super::ScalarField;
use crate::error::{Error, Result};

fn stencil_room(g: &ScalarField, x: f64, reach: f64) -> (bool, bool) {
    let dom = g.domain();
    let s = dom.slack();
    (x - reach >= dom.lo() - s, x + reach <= dom.hi() + s)
}

/// First derivative by a fourth-order stencil with `h = 1e-5 * max(1, |x|)`:
/// the central five-point formula in the interior and the one-sided
/// five-point formula where the domain edge is within `2h`.
pub fn fd_derivative(g: &ScalarField, x: f64) -> Result<f64> {
    let h = 1e-5 * x.abs().max(1.0);
    let f = |k: f64| g.eval(x + k * h);
    match stencil_room(g, x, 2.0 * h) {
        (true, true) => Ok((f(-2.0)? - 8.0 * f(-1.0)? + 8.0 * f(1.0)? - f(2.0)?) / (12.0 * h)),
        (false, _) if stencil_room(g, x, 4.0 * h).1 => Ok((-25.0 * f(0.0)? + 48.0 * f(1.0)?
            - 36.0 * f(2.0)?
            + 16.0 * f(3.0)?
            - 3.0 * f(4.0)?)
            / (12.0 * h)),
        (_, false) if stencil_room(g, x, 4.0 * h).0 => Ok((25.0 * f(0.0)? - 48.0 * f(-1.0)?
            + 36.0 * f(-2.0)?
            - 16.0 * f(-3.0)?
            + 3.0 * f(-4.0)?)
            / (12.0 * h)),
        _ => Err(Error::StencilDomain { x }),
    }
}

/// Second derivative, fourth order, with `h = 1e-3 * max(1, |x|)` (the larger
/// step keeps the `1/h^2` roundoff amplification near 1e-9 relative).
pub fn fd_second_derivative(g: &ScalarField, x: f64) -> Result<f64> {
    let h = 1e-3 * x.abs().max(1.0);
    let f = |k: f64| g.eval(x + k * h);
    let h2 = 12.0 * h * h;
    match stencil_room(g, x, 2.0 * h) {
        (true, true) => {
            Ok((-f(-2.0)? + 16.0 * f(-1.0)? - 30.0 * f(0.0)? + 16.0 * f(1.0)? - f(2.0)?) / h2)
        }
        (false, _) if stencil_room(g, x, 5.0 * h).1 => Ok((45.0 * f(0.0)? - 154.0 * f(1.0)?
            + 214.0 * f(2.0)?
            - 156.0 * f(3.0)?
            + 61.0 * f(4.0)?
            - 10.0 * f(5.0)?)
            / h2),
        (_, false) if stencil_room(g, x, 5.0 * h).0 => Ok((45.0 * f(0.0)? - 154.0 * f(-1.0)?
            + 214.0 * f(-2.0)?
            - 156.0 * f(-3.0)?
            + 61.0 * f(-4.0)?
            - 10.0 * f(-5.0)?)
            / h2),
        _ => Err(Error::StencilDomain { x }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Bindings;
    use crate::numerics::Interval;

    fn field(src: &str, lo: f64, hi: f64) -> ScalarField {
        ScalarField::parse(src, "x", &Bindings::new(), Interval::new(lo, hi).unwrap()).unwrap()
    }

    #[test]
    fn central_and_one_sided_first_derivative() {
        let sq = field("x^2", 0.0, 5.0);
        assert!((fd_derivative(&sq, 3.0).unwrap() - 6.0).abs() < 1e-8);
        assert!((fd_derivative(&sq, 0.0).unwrap() - 0.0).abs() < 1e-8);
        assert!((fd_derivative(&sq, 5.0).unwrap() - 10.0).abs() < 1e-8);
        let e = field("exp(x)", -1.0, 1.0);
        assert!((fd_derivative(&e, 0.0).unwrap() - 1.0).abs() < 1e-8);
        assert!((fd_derivative(&e, 1.0).unwrap() - 1f64.exp()).abs() < 1e-8);
    }

    #[test]
    fn second_derivative() {
        let s = field("sin(x)", 0.0, 3.0);
        for &x in &[0.0, 0.7, 1.5, 3.0] {
            let d2 = fd_second_derivative(&s, x).unwrap();
            assert!((d2 + x.sin()).abs() < 1e-8, "x={x}: {d2}");
        }
    }

    #[test]
    fn tiny_domain_is_rejected() {
        let g = field("x", 0.0, 1e-6);
        assert_eq!(fd_derivative(&g, 5e-7), Err(Error::StencilDomain { x: 5e-7 }));
    }
}
