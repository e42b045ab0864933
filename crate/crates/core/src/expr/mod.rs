//! Expression trees for coefficient functions.
//!
//! An [`Expr`] is an immutable tree over numeric constants, named symbols,
//! arithmetic, the elementary functions `exp log sin cos tan sqrt`, powers
//! and integer-order Bessel functions `besselj(n, u)`. Trees are built by the
//! parser ([`parse`]) or by the folding constructors (`Expr::add`, ...), which
//! perform constant folding and nothing else.

mod diff;
mod parse;

pub use diff::differentiate;
pub use parse::{parse, parse_unchecked};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::bessel::besselj;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }

    fn apply(self, v: f64) -> std::result::Result<f64, &'static str> {
        match self {
            Func::Exp => Ok(v.exp()),
            Func::Log if v > 0.0 => Ok(v.ln()),
            Func::Log => Err("log of a non-positive number"),
            Func::Sin => Ok(v.sin()),
            Func::Cos => Ok(v.cos()),
            Func::Tan => Ok(v.tan()),
            Func::Sqrt if v >= 0.0 => Ok(v.sqrt()),
            Func::Sqrt => Err("sqrt of a negative number"),
        }
    }
}

/// Expression node. Numeric literals are always non-negative; a negative
/// constant is `Neg(Num(..))`, which is also what the parser produces for `-2`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Sym(Arc<str>),
    Neg(Arc<Expr>),
    Binary(BinOp, Arc<Expr>, Arc<Expr>),
    Call(Func, Arc<Expr>),
    BesselJ(u32, Arc<Expr>),
}

/// Symbol values used during evaluation: the free variable plus parameters.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Bindings(BTreeMap<String, f64>);

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn as_map(&self) -> &BTreeMap<String, f64> {
        &self.0
    }

    /// Overlays `other` on top of `self`.
    pub fn merged(&self, other: &Bindings) -> Bindings {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.set(k, v);
        }
        out
    }
}

impl FromIterator<(String, f64)> for Bindings {
    fn from_iter<I: IntoIterator<Item = (String, f64)>>(iter: I) -> Self {
        Bindings(iter.into_iter().collect())
    }
}

/// `base^exponent` under the real-valued rules of the toolkit: any base for a
/// non-negative integer exponent, otherwise the base must be positive
/// (or zero with a positive exponent).
pub(crate) fn real_pow(base: f64, exponent: f64) -> std::result::Result<f64, &'static str> {
    if exponent.fract() == 0.0 && exponent >= 0.0 {
        if exponent <= i32::MAX as f64 {
            Ok(base.powi(exponent as i32))
        } else {
            Ok(base.powf(exponent))
        }
    } else if base > 0.0 {
        Ok(base.powf(exponent))
    } else if base == 0.0 && exponent > 0.0 {
        Ok(0.0)
    } else {
        Err("negative or fractional exponent requires a positive base")
    }
}

impl Expr {
    pub fn sym(name: &str) -> Expr {
        Expr::Sym(Arc::from(name))
    }

    /// Numeric constant; negative values become `Neg(Num(|v|))`.
    pub fn num(v: f64) -> Expr {
        if v < 0.0 {
            Expr::Neg(Arc::new(Expr::Num(-v)))
        } else {
            // normalizes -0.0
            Expr::Num(v + 0.0)
        }
    }

    /// The value of a constant node (`Num` or negated `Num`).
    pub fn as_const(&self) -> Option<f64> {
        match self {
            Expr::Num(v) => Some(*v),
            Expr::Neg(inner) => match inner.as_ref() {
                Expr::Num(v) => Some(-*v),
                _ => None,
            },
            _ => None,
        }
    }

    fn is_const(&self, v: f64) -> bool {
        self.as_const() == Some(v)
    }

    pub fn neg(e: Expr) -> Expr {
        if let Some(v) = e.as_const() {
            return Expr::num(-v);
        }
        match e {
            Expr::Neg(inner) => (*inner).clone(),
            other => Expr::Neg(Arc::new(other)),
        }
    }

    pub fn add(l: Expr, r: Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) => Expr::num(a + b),
            (Some(a), _) if a == 0.0 => r,
            (_, Some(b)) if b == 0.0 => l,
            _ => Expr::Binary(BinOp::Add, Arc::new(l), Arc::new(r)),
        }
    }

    pub fn sub(l: Expr, r: Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) => Expr::num(a - b),
            (Some(a), _) if a == 0.0 => Expr::neg(r),
            (_, Some(b)) if b == 0.0 => l,
            _ => Expr::Binary(BinOp::Sub, Arc::new(l), Arc::new(r)),
        }
    }

    pub fn mul(l: Expr, r: Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) => Expr::num(a * b),
            (Some(a), _) | (_, Some(a)) if a == 0.0 => Expr::num(0.0),
            (Some(a), _) if a == 1.0 => r,
            (_, Some(b)) if b == 1.0 => l,
            (Some(a), _) if a == -1.0 => Expr::neg(r),
            (_, Some(b)) if b == -1.0 => Expr::neg(l),
            _ => Expr::Binary(BinOp::Mul, Arc::new(l), Arc::new(r)),
        }
    }

    pub fn div(l: Expr, r: Expr) -> Expr {
        match (l.as_const(), r.as_const()) {
            (Some(a), Some(b)) if b != 0.0 => Expr::num(a / b),
            (Some(a), _) if a == 0.0 => Expr::num(0.0),
            (_, Some(b)) if b == 1.0 => l,
            _ => Expr::Binary(BinOp::Div, Arc::new(l), Arc::new(r)),
        }
    }

    pub fn pow(base: Expr, exponent: Expr) -> Expr {
        if let (Some(b), Some(e)) = (base.as_const(), exponent.as_const()) {
            if let Ok(v) = real_pow(b, e) {
                if v.is_finite() {
                    return Expr::num(v);
                }
            }
        }
        if exponent.is_const(1.0) {
            return base;
        }
        if exponent.is_const(0.0) {
            return Expr::num(1.0);
        }
        Expr::Binary(BinOp::Pow, Arc::new(base), Arc::new(exponent))
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        if let Some(v) = arg.as_const() {
            if let Ok(r) = func.apply(v) {
                if r.is_finite() {
                    return Expr::num(r);
                }
            }
        }
        Expr::Call(func, Arc::new(arg))
    }

    pub fn besselj(order: u32, arg: Expr) -> Expr {
        if let Some(v) = arg.as_const() {
            return Expr::num(besselj(order, v));
        }
        Expr::BesselJ(order, Arc::new(arg))
    }

    pub fn binary(op: BinOp, l: Expr, r: Expr) -> Expr {
        match op {
            BinOp::Add => Expr::add(l, r),
            BinOp::Sub => Expr::sub(l, r),
            BinOp::Mul => Expr::mul(l, r),
            BinOp::Div => Expr::div(l, r),
            BinOp::Pow => Expr::pow(l, r),
        }
    }

    /// True if the symbol `name` occurs anywhere in the tree.
    pub fn depends_on(&self, name: &str) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Sym(s) => s.as_ref() == name,
            Expr::Neg(u) | Expr::Call(_, u) | Expr::BesselJ(_, u) => u.depends_on(name),
            Expr::Binary(_, l, r) => l.depends_on(name) || r.depends_on(name),
        }
    }

    pub fn free_symbols(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Sym(s) => {
                out.insert(s.to_string());
            }
            Expr::Neg(u) | Expr::Call(_, u) | Expr::BesselJ(_, u) => u.collect_symbols(out),
            Expr::Binary(_, l, r) => {
                l.collect_symbols(out);
                r.collect_symbols(out);
            }
        }
    }

    /// Replaces bound symbols by their values and re-folds constants.
    pub fn substitute(&self, env: &Bindings) -> Expr {
        match self {
            Expr::Num(v) => Expr::Num(*v),
            Expr::Sym(s) => match env.get(s) {
                Some(v) => Expr::num(v),
                None => self.clone(),
            },
            Expr::Neg(u) => Expr::neg(u.substitute(env)),
            Expr::Binary(op, l, r) => Expr::binary(*op, l.substitute(env), r.substitute(env)),
            Expr::Call(f, u) => Expr::call(*f, u.substitute(env)),
            Expr::BesselJ(n, u) => Expr::besselj(*n, u.substitute(env)),
        }
    }

    /// Node count, used to keep generated trees bounded.
    pub fn size(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Sym(_) => 1,
            Expr::Neg(u) | Expr::Call(_, u) | Expr::BesselJ(_, u) => 1 + u.size(),
            Expr::Binary(_, l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Evaluates with symbol values supplied by `lookup`.
    pub fn eval_with<F>(&self, lookup: &F) -> Result<f64>
    where
        F: Fn(&str) -> Option<f64>,
    {
        match self {
            Expr::Num(v) => Ok(*v),
            Expr::Sym(s) => lookup(s).ok_or_else(|| Error::UnboundSymbol { name: s.to_string() }),
            Expr::Neg(u) => Ok(-u.eval_with(lookup)?),
            Expr::Binary(op, l, r) => {
                let a = l.eval_with(lookup)?;
                let b = r.eval_with(lookup)?;
                match op {
                    BinOp::Add => Ok(a + b),
                    BinOp::Sub => Ok(a - b),
                    BinOp::Mul => Ok(a * b),
                    BinOp::Div if b == 0.0 => Err(self.domain_error("division by zero")),
                    BinOp::Div => Ok(a / b),
                    BinOp::Pow => real_pow(a, b).map_err(|detail| self.domain_error(detail)),
                }
            }
            Expr::Call(f, u) => {
                let v = u.eval_with(lookup)?;
                f.apply(v).map_err(|detail| self.domain_error(detail))
            }
            Expr::BesselJ(n, u) => Ok(besselj(*n, u.eval_with(lookup)?)),
        }
    }

    fn domain_error(&self, detail: &str) -> Error {
        Error::Domain { expr: self.to_string(), detail: detail.to_string() }
    }
}

/// Evaluates `e` with all symbols taken from `env`.
pub fn evaluate(e: &Expr, env: &Bindings) -> Result<f64> {
    e.eval_with(&|name: &str| env.get(name))
}

// Printing: precedence levels 1 (+ -), 2 (* /), 3 (unary -), 4 (^), 5 (atoms).
fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
        Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
        Expr::Neg(_) => 3,
        Expr::Binary(BinOp::Pow, ..) => 4,
        _ => 5,
    }
}

fn write_number(f: &mut fmt::Formatter<'_>, v: f64) -> fmt::Result {
    if v == 0.0 || (1e-5..1e15).contains(&v) {
        write!(f, "{v}")
    } else {
        write!(f, "{v:e}")
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write_number(f, *v),
            Expr::Sym(s) => f.write_str(s),
            Expr::Neg(u) => {
                f.write_str("-")?;
                write_child(f, u, precedence(u) < 3)
            }
            Expr::Binary(op, l, r) => {
                let (sym, level) = match op {
                    BinOp::Add => (" + ", 1),
                    BinOp::Sub => (" - ", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                    BinOp::Pow => ("^", 4),
                };
                if *op == BinOp::Pow {
                    // right-associative; the exponent may be a unary minus
                    write_child(f, l, precedence(l) <= 4)?;
                    f.write_str(sym)?;
                    write_child(f, r, precedence(r) < 3)
                } else {
                    write_child(f, l, precedence(l) < level)?;
                    f.write_str(sym)?;
                    write_child(f, r, precedence(r) <= level)
                }
            }
            Expr::Call(func, u) => write!(f, "{}({})", func.name(), u),
            Expr::BesselJ(n, u) => write!(f, "besselj({n}, {u})"),
        }
    }
}

impl std::str::FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        parse_unchecked(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_at(src: &str, env: &Bindings) -> f64 {
        evaluate(&src.parse::<Expr>().unwrap(), env).unwrap()
    }

    #[test]
    fn arithmetic_and_functions() {
        let env = Bindings::new().with("x", 1.0);
        assert_eq!(eval_at("2*x+3", &env), 5.0);
        assert_eq!(eval_at("sin(x) - sin(x)", &env), 0.0);
        let env = Bindings::new().with("x", 0.0);
        assert_eq!(eval_at("sin(x)", &env), 0.0);
        let env = Bindings::new().with("x", 2.0).with("m", 3.0);
        assert_eq!(eval_at("x^m", &env), 8.0);
        assert_eq!(eval_at("besselj(0, 0)", &Bindings::new()), 1.0);
    }

    #[test]
    fn precedence_of_unary_minus_and_power() {
        let env = Bindings::new();
        assert_eq!(eval_at("-2^2", &env), -4.0);
        assert_eq!(eval_at("2^-1", &env), 0.5);
        assert_eq!(eval_at("2^3^2", &env), 512.0);
        assert_eq!(eval_at("8/4/2", &env), 1.0);
        assert_eq!(eval_at("8-4-2", &env), 2.0);
        assert_eq!(eval_at("-3*2", &env), -6.0);
    }

    #[test]
    fn domain_errors_name_the_subexpression() {
        let env = Bindings::new().with("x", -1.0);
        for src in ["sqrt(x)", "log(x)", "x^0.5", "0^-1"] {
            let e: Expr = src.parse().unwrap();
            match evaluate(&e, &env) {
                Err(Error::Domain { expr, .. }) => assert!(!expr.is_empty()),
                other => panic!("{src}: expected domain error, got {other:?}"),
            }
        }
        // integer exponents accept any base
        assert_eq!(eval_at("x^3", &env), -1.0);
    }

    #[test]
    fn unbound_symbol_at_evaluation() {
        let e: Expr = "x + y".parse().unwrap();
        let err = evaluate(&e, &Bindings::new().with("x", 1.0)).unwrap_err();
        assert_eq!(err, Error::UnboundSymbol { name: "y".into() });
    }

    #[test]
    fn folding_constructors() {
        let x = Expr::sym("x");
        assert_eq!(Expr::mul(Expr::num(1.0), x.clone()), x);
        assert_eq!(Expr::add(x.clone(), Expr::num(0.0)), x);
        assert_eq!(Expr::mul(Expr::num(0.0), x.clone()), Expr::num(0.0));
        assert_eq!(Expr::add(Expr::num(2.0), Expr::num(3.0)), Expr::num(5.0));
        assert_eq!(Expr::neg(Expr::neg(x.clone())), x);
        assert_eq!(Expr::num(-2.0).as_const(), Some(-2.0));
        assert_eq!(Expr::call(Func::Sqrt, Expr::num(0.0)), Expr::num(0.0));
        // invalid constant powers stay symbolic
        assert!(matches!(Expr::pow(Expr::num(-1.0), Expr::num(0.5)), Expr::Binary(..)));
    }

    #[test]
    fn substitution_folds_parameters() {
        let e: Expr = "exp(beta*x)*x^m".parse().unwrap();
        let bound = e.substitute(&Bindings::new().with("beta", 0.0).with("m", 1.0));
        assert_eq!(bound, Expr::sym("x"));
    }

    #[test]
    fn printing_round_trips_negatives() {
        for src in ["-2", "x*-2", "(-x)^2", "-x^2", "x - -y", "x^-y", "-(x + y)", "--x", "2^3^4", "(2^3)^4"] {
            let e: Expr = src.parse().unwrap();
            let again: Expr = e.to_string().parse().unwrap();
            assert_eq!(e, again, "{src} printed as {e}");
        }
    }
}
