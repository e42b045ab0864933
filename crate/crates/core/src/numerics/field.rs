use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::fd::fd_derivative;
use super::interp::{MonotoneCubic, QuinticHermite};
use super::{Grid, Interval};
use crate::error::{Error, Result};
use crate::expr::{differentiate, parse, BinOp, Bindings, Expr, Func};

/// How a derivative was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativePath {
    Symbolic,
    /// Chain rule over the composition, using the stored slopes of
    /// tabulated antiderivatives.
    ChainRule,
    /// At least one part needed the finite-difference stencil.
    FiniteDifference,
}

impl DerivativePath {
    fn worst(self, other: DerivativePath) -> DerivativePath {
        use DerivativePath::*;
        match (self, other) {
            (FiniteDifference, _) | (_, FiniteDifference) => FiniteDifference,
            (ChainRule, _) | (_, ChainRule) => ChainRule,
            _ => Symbolic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unary {
    Neg,
    Exp,
    Sqrt,
    Square,
    Recip,
}

type CustomFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;

enum Backing {
    Const(f64),
    Expr { expr: Expr, var: Arc<str> },
    Table(MonotoneCubic),
    Cumulative { table: QuinticHermite, offset: f64 },
    Unary(Unary, ScalarField),
    Binary(BinOp, ScalarField, ScalarField),
    FdDerivative(ScalarField),
    /// Slope of a `Cumulative` field.
    Slope(ScalarField),
    Custom(CustomFn),
}

/// A real function evaluatable on an interval.
///
/// Fields backed by expressions stay symbolic under arithmetic with other
/// symbolic fields of the same variable, so derivatives of compositions such
/// as `(-b + sqrt(f)) / (2c)` remain exact. Everything else composes lazily.
/// Fields are immutable and cheap to clone.
#[derive(Clone)]
pub struct ScalarField {
    backing: Arc<Backing>,
    domain: Interval,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.backing.as_ref() {
            Backing::Const(v) => format!("const {v}"),
            Backing::Expr { expr, var } => format!("expr[{var}] {expr}"),
            Backing::Table(_) => "table".into(),
            Backing::Cumulative { table, .. } => format!("cumulative({} nodes)", table.nodes()),
            Backing::Unary(op, _) => format!("{op:?}(..)"),
            Backing::Binary(op, ..) => format!("{op:?}(..)"),
            Backing::FdDerivative(_) => "fd-derivative".into(),
            Backing::Slope(_) => "slope".into(),
            Backing::Custom(_) => "custom".into(),
        };
        write!(f, "ScalarField({kind} on [{}, {}])", self.domain.lo(), self.domain.hi())
    }
}

impl ScalarField {
    fn wrap(backing: Backing, domain: Interval) -> Self {
        ScalarField { backing: Arc::new(backing), domain }
    }

    pub fn constant(value: f64, domain: Interval) -> Self {
        Self::wrap(Backing::Const(value), domain)
    }

    /// The identity function of `var`.
    pub fn identity(var: &str, domain: Interval) -> Self {
        Self::wrap(Backing::Expr { expr: Expr::sym(var), var: Arc::from(var) }, domain)
    }

    /// Binds every parameter of `expr` from `bindings`; `var` stays free.
    pub fn from_expr(expr: &Expr, var: &str, bindings: &Bindings, domain: Interval) -> Result<Self> {
        let mut env = bindings.clone();
        // the free variable is never substituted, even if a caller bound it
        if env.contains(var) {
            env = env.iter().filter(|(k, _)| *k != var).map(|(k, v)| (k.to_string(), v)).collect();
        }
        let bound = expr.substitute(&env);
        if let Some(name) = bound.free_symbols().into_iter().find(|s| s != var) {
            return Err(Error::UnboundSymbol { name });
        }
        Ok(Self::from_bound_expr(bound, var, domain))
    }

    fn from_bound_expr(expr: Expr, var: &str, domain: Interval) -> Self {
        match expr.as_const() {
            Some(v) => Self::constant(v, domain),
            None => Self::wrap(Backing::Expr { expr, var: Arc::from(var) }, domain),
        }
    }

    /// Parses `source` with `var` and the names in `bindings` declared.
    pub fn parse(source: &str, var: &str, bindings: &Bindings, domain: Interval) -> Result<Self> {
        let mut declared: Vec<&str> = bindings.names().collect();
        declared.push(var);
        let expr = parse(source, &declared)?;
        Self::from_expr(&expr, var, bindings, domain)
    }

    /// Monotone cubic interpolation through `(xs, ys)`; the domain is the
    /// span of `xs`.
    pub fn from_table(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let table = MonotoneCubic::new(xs, ys)?;
        let domain = Interval::new(table.lo(), table.hi())?;
        Ok(Self::wrap(Backing::Table(table), domain))
    }

    pub fn from_fn<F>(domain: Interval, f: F) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Self::wrap(Backing::Custom(Arc::new(f)), domain)
    }

    pub(crate) fn cumulative(table: QuinticHermite, offset: f64, domain: Interval) -> Self {
        Self::wrap(Backing::Cumulative { table, offset }, domain)
    }

    pub fn domain(&self) -> Interval {
        self.domain
    }

    /// Same function on a sub-interval.
    pub fn restrict(&self, domain: Interval) -> Result<Self> {
        if !self.domain.contains_interval(&domain) {
            return Err(Error::Precondition(format!(
                "[{}, {}] is not inside the field domain [{}, {}]",
                domain.lo(),
                domain.hi(),
                self.domain.lo(),
                self.domain.hi()
            )));
        }
        Ok(ScalarField { backing: self.backing.clone(), domain })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::OutOfDomain { x, lo: self.domain.lo(), hi: self.domain.hi() });
        }
        self.eval_unchecked(x)
    }

    fn eval_unchecked(&self, x: f64) -> Result<f64> {
        match self.backing.as_ref() {
            Backing::Const(v) => Ok(*v),
            Backing::Expr { expr, var } => {
                let lookup = |name: &str| (name == var.as_ref()).then_some(x);
                expr.eval_with(&lookup).map_err(|e| match e {
                    Error::Domain { expr, detail } => Error::Domain { expr, detail: format!("{detail} at {var} = {x}") },
                    other => other,
                })
            }
            Backing::Table(t) => Ok(t.eval(x)),
            Backing::Cumulative { table, offset } => Ok(table.eval(x) - offset),
            Backing::Unary(op, inner) => {
                let v = inner.eval_unchecked(x)?;
                match op {
                    Unary::Neg => Ok(-v),
                    Unary::Exp => Ok(v.exp()),
                    Unary::Square => Ok(v * v),
                    Unary::Sqrt if v >= 0.0 => Ok(v.sqrt()),
                    Unary::Sqrt => Err(domain_at("sqrt of a negative number", x)),
                    Unary::Recip if v != 0.0 => Ok(1.0 / v),
                    Unary::Recip => Err(domain_at("division by zero", x)),
                }
            }
            Backing::Binary(op, l, r) => {
                let a = l.eval_unchecked(x)?;
                let b = r.eval_unchecked(x)?;
                match op {
                    BinOp::Add => Ok(a + b),
                    BinOp::Sub => Ok(a - b),
                    BinOp::Mul => Ok(a * b),
                    BinOp::Div if b == 0.0 => Err(domain_at("division by zero", x)),
                    BinOp::Div => Ok(a / b),
                    BinOp::Pow => crate::expr::real_pow(a, b).map_err(|d| domain_at(d, x)),
                }
            }
            Backing::FdDerivative(inner) => fd_derivative(inner, x),
            Backing::Slope(inner) => match inner.backing.as_ref() {
                Backing::Cumulative { table, .. } => Ok(table.derivative(x)),
                _ => unreachable!("slopes are only built for cumulative fields"),
            },
            Backing::Custom(f) => f(x),
        }
    }

    pub fn sample(&self, grid: &Grid) -> Result<Vec<f64>> {
        grid.points().iter().map(|&x| self.eval(x)).collect()
    }

    /// `(expression, variable)` if the field is symbolic. Constants report no
    /// variable.
    fn symbolic(&self) -> Option<(Expr, Option<Arc<str>>)> {
        match self.backing.as_ref() {
            Backing::Const(v) => Some((Expr::num(*v), None)),
            Backing::Expr { expr, var } => Some((expr.clone(), Some(var.clone()))),
            _ => None,
        }
    }

    pub fn as_expr(&self) -> Option<&Expr> {
        match self.backing.as_ref() {
            Backing::Expr { expr, .. } => Some(expr),
            _ => None,
        }
    }

    pub fn as_constant(&self) -> Option<f64> {
        match self.backing.as_ref() {
            Backing::Const(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        self.symbolic().is_some()
    }

    /// Exact derivative for expression-backed fields.
    pub fn symbolic_derivative(&self) -> Option<ScalarField> {
        let (expr, var) = self.symbolic()?;
        Some(match var {
            None => Self::constant(0.0, self.domain),
            Some(var) => Self::from_bound_expr(differentiate(&expr, &var), &var, self.domain),
        })
    }

    /// The derivative as a field: symbolic when possible, otherwise by the
    /// chain rule through arithmetic and tabulated antiderivatives, with the
    /// finite-difference stencil for opaque parts (tables, closures).
    pub fn derivative(&self) -> (ScalarField, DerivativePath) {
        if let Some(d) = self.symbolic_derivative() {
            return (d, DerivativePath::Symbolic);
        }
        let chain = match self.backing.as_ref() {
            Backing::Cumulative { .. } => {
                Some((Self::wrap(Backing::Slope(self.clone()), self.domain), DerivativePath::ChainRule))
            }
            Backing::Unary(op, u) => {
                let (du, path) = u.derivative();
                let d = match op {
                    Unary::Neg => Ok(du.neg()),
                    Unary::Exp => self.mul(&du),
                    Unary::Sqrt => du.div(&self.scale(2.0)),
                    Unary::Square => u.mul(&du).map(|p| p.scale(2.0)),
                    Unary::Recip => du.div(&u.square()).map(|q| q.neg()),
                };
                d.ok().map(|d| (d, path.worst(DerivativePath::ChainRule)))
            }
            Backing::Binary(op, l, r) if *op != BinOp::Pow => {
                let (dl, pl) = l.derivative();
                let (dr, pr) = r.derivative();
                let d = match op {
                    BinOp::Add => dl.add(&dr),
                    BinOp::Sub => dl.sub(&dr),
                    BinOp::Mul => dl.mul(r).and_then(|a| a.add(&l.mul(&dr)?)),
                    _ => dl.mul(r).and_then(|a| a.sub(&l.mul(&dr)?)).and_then(|n| n.div(&r.square())),
                };
                d.ok().map(|d| (d, pl.worst(pr).worst(DerivativePath::ChainRule)))
            }
            _ => None,
        };
        match chain.and_then(|(d, path)| d.restrict(self.domain).ok().map(|d| (d, path))) {
            Some(pair) => pair,
            None => (Self::wrap(Backing::FdDerivative(self.clone()), self.domain), DerivativePath::FiniteDifference),
        }
    }

    fn binary(&self, op: BinOp, other: &ScalarField) -> Result<ScalarField> {
        let domain = self.domain.intersect(&other.domain).map_err(|_| {
            Error::Precondition("operand domains do not overlap".into())
        })?;
        if let (Some((l, lv)), Some((r, rv))) = (self.symbolic(), other.symbolic()) {
            let var = match (lv, rv) {
                (Some(a), Some(b)) if a == b => Some(Some(a)),
                (Some(a), None) | (None, Some(a)) => Some(Some(a)),
                (None, None) => Some(None),
                _ => None,
            };
            if let Some(var) = var {
                let e = Expr::binary(op, l, r);
                return Ok(match var {
                    Some(v) => Self::from_bound_expr(e, &v, domain),
                    None => match e.as_const() {
                        Some(c) => Self::constant(c, domain),
                        None => Self::wrap(Backing::Binary(op, self.clone(), other.clone()), domain),
                    },
                });
            }
        }
        Ok(Self::wrap(Backing::Binary(op, self.clone(), other.clone()), domain))
    }

    fn unary(&self, op: Unary) -> ScalarField {
        if let Some((e, var)) = self.symbolic() {
            let out = match op {
                Unary::Neg => Expr::neg(e),
                Unary::Exp => Expr::call(Func::Exp, e),
                Unary::Sqrt => Expr::call(Func::Sqrt, e),
                Unary::Square => Expr::pow(e, Expr::num(2.0)),
                Unary::Recip => Expr::div(Expr::num(1.0), e),
            };
            match (out.as_const(), var) {
                (Some(c), _) => return Self::constant(c, self.domain),
                (None, Some(v)) => return Self::from_bound_expr(out, &v, self.domain),
                // constant whose image did not fold (e.g. sqrt of a negative)
                (None, None) => {}
            }
        }
        Self::wrap(Backing::Unary(op, self.clone()), self.domain)
    }

    pub fn add(&self, other: &ScalarField) -> Result<ScalarField> {
        self.binary(BinOp::Add, other)
    }

    pub fn sub(&self, other: &ScalarField) -> Result<ScalarField> {
        self.binary(BinOp::Sub, other)
    }

    pub fn mul(&self, other: &ScalarField) -> Result<ScalarField> {
        self.binary(BinOp::Mul, other)
    }

    pub fn div(&self, other: &ScalarField) -> Result<ScalarField> {
        self.binary(BinOp::Div, other)
    }

    pub fn neg(&self) -> ScalarField {
        self.unary(Unary::Neg)
    }

    pub fn exp(&self) -> ScalarField {
        self.unary(Unary::Exp)
    }

    pub fn sqrt(&self) -> ScalarField {
        self.unary(Unary::Sqrt)
    }

    pub fn square(&self) -> ScalarField {
        self.unary(Unary::Square)
    }

    pub fn recip(&self) -> ScalarField {
        self.unary(Unary::Recip)
    }

    /// `k * self`.
    pub fn scale(&self, k: f64) -> ScalarField {
        self.binary(BinOp::Mul, &Self::constant(k, self.domain)).expect("same domain")
    }

    /// `self + k`.
    pub fn shift(&self, k: f64) -> ScalarField {
        self.binary(BinOp::Add, &Self::constant(k, self.domain)).expect("same domain")
    }
}

fn domain_at(detail: &str, x: f64) -> Error {
    Error::Domain { expr: "<field>".into(), detail: format!("{detail} at x = {x}") }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval {
        Interval::new(0.5, 2.0).unwrap()
    }

    #[test]
    fn symbolic_arithmetic_stays_symbolic() {
        let b = ScalarField::parse("2*x", "x", &Bindings::new(), unit()).unwrap();
        let c = ScalarField::constant(1.0, unit());
        let w = b.neg().div(&c.scale(2.0)).unwrap();
        assert!(w.is_symbolic());
        assert_eq!(w.eval(1.5).unwrap(), -1.5);
        let (dw, path) = w.derivative();
        assert_eq!(path, DerivativePath::Symbolic);
        assert_eq!(dw.eval(1.0).unwrap(), -1.0);
    }

    #[test]
    fn parameters_are_bound_at_construction() {
        let env = Bindings::new().with("m", 3.0);
        let f = ScalarField::parse("x^m", "x", &env, unit()).unwrap();
        assert_eq!(f.eval(2.0).unwrap(), 8.0);
        let err = ScalarField::parse("x^m", "x", &Bindings::new(), unit()).unwrap_err();
        assert_eq!(err, Error::UnboundSymbol { name: "m".into() });
    }

    #[test]
    fn mixed_fields_fall_back_to_fd() {
        let t = ScalarField::from_table(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 1.0, 4.0, 9.0]).unwrap();
        let x = ScalarField::identity("x", unit());
        let p = t.add(&x).unwrap();
        assert!(!p.is_symbolic());
        assert_eq!(p.domain(), unit());
        assert_eq!(p.derivative().1, DerivativePath::FiniteDifference);
    }

    #[test]
    fn chain_rule_through_antiderivatives() {
        let dom = unit();
        let g = ScalarField::parse("cos(x)", "x", &Bindings::new(), dom).unwrap();
        let q = crate::numerics::antiderivative(&g, 0.5, dom, 1e-12).unwrap();
        // y = exp(Q) / (3 - Q), Q = sin x - sin 0.5
        let y = q.exp().div(&q.neg().shift(3.0)).unwrap();
        let (dy, path) = y.derivative();
        assert_eq!(path, DerivativePath::ChainRule);
        for x in [0.5f64, 1.0, 1.7, 2.0] {
            let qv = x.sin() - 0.5f64.sin();
            let expect = x.cos() * qv.exp() / (3.0 - qv) + qv.exp() * x.cos() / (3.0 - qv).powi(2);
            assert!((dy.eval(x).unwrap() - expect).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn out_of_domain_and_division_errors() {
        let x = ScalarField::identity("x", unit());
        assert!(matches!(x.eval(3.0), Err(Error::OutOfDomain { .. })));
        let f = ScalarField::from_fn(unit(), |x| Ok(x - 1.0)).recip();
        assert!(matches!(f.eval(1.0), Err(Error::Domain { .. })));
    }
}
