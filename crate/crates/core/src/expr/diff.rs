use super::{BinOp, Expr, Func};

/// Symbolic derivative of `e` with respect to `var`.
///
/// The result is built with the folding constructors, so constant subtrees
/// collapse but no further simplification is attempted.
pub fn differentiate(e: &Expr, var: &str) -> Expr {
    if !e.depends_on(var) {
        return Expr::num(0.0);
    }
    match e {
        Expr::Num(_) => Expr::num(0.0),
        Expr::Sym(s) => Expr::num(if s.as_ref() == var { 1.0 } else { 0.0 }),
        Expr::Neg(u) => Expr::neg(differentiate(u, var)),
        Expr::Binary(op, l, r) => {
            let (u, v) = (l.as_ref().clone(), r.as_ref().clone());
            let du = differentiate(&u, var);
            let dv = differentiate(&v, var);
            match op {
                BinOp::Add => Expr::add(du, dv),
                BinOp::Sub => Expr::sub(du, dv),
                BinOp::Mul => Expr::add(Expr::mul(du, v), Expr::mul(u, dv)),
                BinOp::Div => Expr::div(
                    Expr::sub(Expr::mul(du, v.clone()), Expr::mul(u, dv)),
                    Expr::pow(v, Expr::num(2.0)),
                ),
                BinOp::Pow => {
                    if !v.depends_on(var) {
                        // v u^(v-1) u'
                        let lowered = Expr::pow(u, Expr::sub(v.clone(), Expr::num(1.0)));
                        Expr::mul(Expr::mul(v, lowered), du)
                    } else if !u.depends_on(var) {
                        // u^v ln(u) v'
                        Expr::mul(Expr::mul(e.clone(), Expr::call(Func::Log, u)), dv)
                    } else {
                        // u^v (v' ln u + v u'/u)
                        let inner = Expr::add(
                            Expr::mul(dv, Expr::call(Func::Log, u.clone())),
                            Expr::div(Expr::mul(v, du), u),
                        );
                        Expr::mul(e.clone(), inner)
                    }
                }
            }
        }
        Expr::Call(func, arg) => {
            let u = arg.as_ref().clone();
            let du = differentiate(&u, var);
            let outer = match func {
                Func::Exp => e.clone(),
                Func::Log => Expr::div(Expr::num(1.0), u),
                Func::Sin => Expr::call(Func::Cos, u),
                Func::Cos => Expr::neg(Expr::call(Func::Sin, u)),
                Func::Tan => {
                    Expr::div(Expr::num(1.0), Expr::pow(Expr::call(Func::Cos, u), Expr::num(2.0)))
                }
                Func::Sqrt => Expr::div(Expr::num(1.0), Expr::mul(Expr::num(2.0), e.clone())),
            };
            Expr::mul(outer, du)
        }
        Expr::BesselJ(n, arg) => {
            let u = arg.as_ref().clone();
            let du = differentiate(&u, var);
            // J0' = -J1, Jn' = (J(n-1) - J(n+1))/2
            let outer = if *n == 0 {
                Expr::neg(Expr::besselj(1, u))
            } else {
                Expr::div(
                    Expr::sub(Expr::besselj(n - 1, u.clone()), Expr::besselj(n + 1, u)),
                    Expr::num(2.0),
                )
            };
            Expr::mul(outer, du)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{evaluate, Bindings};

    fn d_at(src: &str, x: f64) -> f64 {
        let e: Expr = src.parse().unwrap();
        evaluate(&differentiate(&e, "x"), &Bindings::new().with("x", x)).unwrap()
    }

    #[test]
    fn elementary_rules() {
        assert_eq!(d_at("sin(x)", 0.0), 1.0);
        assert_eq!(d_at("x^3", 2.0), 12.0);
        assert!((d_at("exp(2*x)", 0.0) - 2.0).abs() < 1e-15);
        assert!((d_at("log(x)", 4.0) - 0.25).abs() < 1e-15);
        assert!((d_at("sqrt(x)", 4.0) - 0.25).abs() < 1e-15);
        assert!((d_at("tan(x)", 0.0) - 1.0).abs() < 1e-15);
        assert!((d_at("x^x", 1.0) - 1.0).abs() < 1e-15);
        assert!((d_at("2^x", 0.0) - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((d_at("1/x", 2.0) + 0.25).abs() < 1e-15);
    }

    #[test]
    fn bessel_derivative_matches_central_difference() {
        let sym = d_at("besselj(0, x)", 1.0);
        // J1(1) tabulated value
        assert!((sym + 0.440_050_585_744_933_5).abs() < 1e-10);
        let e: Expr = "besselj(0, x)".parse().unwrap();
        let h = 1e-6;
        let f = |x: f64| evaluate(&e, &Bindings::new().with("x", x)).unwrap();
        let fd = (f(1.0 + h) - f(1.0 - h)) / (2.0 * h);
        assert!((sym - fd).abs() < 1e-8, "{sym} vs {fd}");
        let d3 = d_at("besselj(3, 2*x)", 0.7);
        let g = |x: f64| crate::numerics::bessel::besselj(3, 2.0 * x);
        let fd3 = (g(0.7 + h) - g(0.7 - h)) / (2.0 * h);
        assert!((d3 - fd3).abs() < 1e-8);
    }

    #[test]
    fn symbolic_exponent_parameter_is_treated_as_constant() {
        let e: Expr = "x^m".parse().unwrap();
        let d = differentiate(&e, "x");
        let env = Bindings::new().with("x", -2.0).with("m", 3.0);
        // no log(x) is introduced, so negative x is fine for integer m
        assert_eq!(evaluate(&d, &env).unwrap(), 12.0);
    }

    #[test]
    fn independent_subtrees_differentiate_to_zero() {
        let e: Expr = "sin(alpha)*beta".parse().unwrap();
        assert_eq!(differentiate(&e, "x"), Expr::num(0.0));
    }
}
