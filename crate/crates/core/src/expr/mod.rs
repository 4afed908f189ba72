//! Real functions of one variable and the two textual grammars that drive
//! the engine: function expressions (`t^2`, `abs(t - 1) * sin(t)`, ...) and
//! time-scale specs (`[0,1] u {2,4}`, `hZ(0.5;0;3)`, ...).

mod cursor;
mod parser;
mod scale;

use std::fmt;

use crate::error::{Error, Result};

pub use parser::parse_func;
pub use scale::parse_scale;

/// Anything that can be evaluated at a real `t`.
///
/// Implemented for [`FuncExpr`] and for closures, so the calculus and
/// quadrature routines accept either.
pub trait RealFn {
    fn eval(&self, t: f64) -> Result<f64>;
}

impl<F> RealFn for F
where
    F: Fn(f64) -> Result<f64>,
{
    fn eval(&self, t: f64) -> Result<f64> {
        self(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func1 {
    Abs,
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func2 {
    Min,
    Max,
}

impl Func1 {
    pub fn name(&self) -> &'static str {
        match self {
            Func1::Abs => "abs",
            Func1::Exp => "exp",
            Func1::Ln => "ln",
            Func1::Sin => "sin",
            Func1::Cos => "cos",
            Func1::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "abs" => Func1::Abs,
            "exp" => Func1::Exp,
            "ln" => Func1::Ln,
            "sin" => Func1::Sin,
            "cos" => Func1::Cos,
            "sqrt" => Func1::Sqrt,
            _ => return None,
        })
    }
}

impl Func2 {
    pub fn name(&self) -> &'static str {
        match self {
            Func2::Min => "min",
            Func2::Max => "max",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "min" => Some(Func2::Min),
            "max" => Some(Func2::Max),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Const(f64),
    Var,
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Call1(Func1, Box<Node>),
    Call2(Func2, Box<Node>, Box<Node>),
}

/// A parsed real-valued function of `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuncExpr {
    root: Node,
}

impl FuncExpr {
    pub fn new(root: Node) -> Self {
        FuncExpr { root }
    }

    pub fn constant(c: f64) -> Self {
        FuncExpr::new(Node::Const(c))
    }

    pub fn var() -> Self {
        FuncExpr::new(Node::Var)
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        self.root.eval(t)
    }

    fn binary(op: BinOp, lhs: &FuncExpr, rhs: &FuncExpr) -> FuncExpr {
        FuncExpr::new(Node::Binary(
            op,
            Box::new(lhs.root.clone()),
            Box::new(rhs.root.clone()),
        ))
    }

    pub fn add(&self, rhs: &FuncExpr) -> FuncExpr {
        Self::binary(BinOp::Add, self, rhs)
    }

    pub fn sub(&self, rhs: &FuncExpr) -> FuncExpr {
        Self::binary(BinOp::Sub, self, rhs)
    }

    pub fn mul(&self, rhs: &FuncExpr) -> FuncExpr {
        Self::binary(BinOp::Mul, self, rhs)
    }

    pub fn scale(&self, c: f64) -> FuncExpr {
        Self::binary(BinOp::Mul, &FuncExpr::constant(c), self)
    }

    pub fn abs(&self) -> FuncExpr {
        FuncExpr::new(Node::Call1(Func1::Abs, Box::new(self.root.clone())))
    }
}

impl RealFn for FuncExpr {
    fn eval(&self, t: f64) -> Result<f64> {
        self.root.eval(t)
    }
}

impl Node {
    fn domain_err(&self, t: f64, reason: &str) -> Error {
        Error::Domain {
            t,
            node: self.to_string(),
            reason: reason.to_string(),
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        let v = match self {
            Node::Const(c) => *c,
            Node::Var => t,
            Node::Neg(x) => -x.eval(t)?,
            Node::Binary(op, l, r) => {
                let a = l.eval(t)?;
                let b = r.eval(t)?;
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(self.domain_err(t, "division by zero"));
                        }
                        a / b
                    }
                    BinOp::Pow => {
                        if a == 0.0 && b < 0.0 {
                            return Err(self.domain_err(t, "zero raised to a negative power"));
                        }
                        if a < 0.0 && b.fract() != 0.0 {
                            return Err(
                                self.domain_err(t, "negative base with non-integer exponent")
                            );
                        }
                        pow(a, b)
                    }
                }
            }
            Node::Call1(func, x) => {
                let a = x.eval(t)?;
                match func {
                    Func1::Abs => a.abs(),
                    Func1::Exp => a.exp(),
                    Func1::Ln => {
                        if a <= 0.0 {
                            return Err(self.domain_err(t, "logarithm of a non-positive number"));
                        }
                        a.ln()
                    }
                    Func1::Sin => a.sin(),
                    Func1::Cos => a.cos(),
                    Func1::Sqrt => {
                        if a < 0.0 {
                            return Err(self.domain_err(t, "square root of a negative number"));
                        }
                        a.sqrt()
                    }
                }
            }
            Node::Call2(func, x, y) => {
                let a = x.eval(t)?;
                let b = y.eval(t)?;
                match func {
                    Func2::Min => a.min(b),
                    Func2::Max => a.max(b),
                }
            }
        };
        if !v.is_finite() {
            return Err(self.domain_err(t, "result is not finite"));
        }
        Ok(v)
    }

    fn precedence(&self) -> u8 {
        match self {
            Node::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Node::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Node::Neg(_) => 3,
            Node::Binary(BinOp::Pow, ..) => 4,
            Node::Const(c) if c.is_sign_negative() => 3,
            _ => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        if self.precedence() < min_prec {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Node::Const(c) => {
                if c.is_sign_negative() {
                    write!(f, "-{:?}", -c)
                } else {
                    write!(f, "{c:?}")
                }
            }
            Node::Var => f.write_str("t"),
            Node::Neg(x) => {
                f.write_str("-")?;
                x.fmt_at(f, 3)
            }
            Node::Binary(op, l, r) => {
                let (sym, lp, rp) = match op {
                    BinOp::Add => (" + ", 1, 2),
                    BinOp::Sub => (" - ", 1, 2),
                    BinOp::Mul => (" * ", 2, 3),
                    BinOp::Div => (" / ", 2, 3),
                    BinOp::Pow => ("^", 5, 3),
                };
                l.fmt_at(f, lp)?;
                f.write_str(sym)?;
                r.fmt_at(f, rp)
            }
            Node::Call1(func, x) => {
                write!(f, "{}(", func.name())?;
                x.fmt_at(f, 0)?;
                f.write_str(")")
            }
            Node::Call2(func, x, y) => {
                write!(f, "{}(", func.name())?;
                x.fmt_at(f, 0)?;
                f.write_str(", ")?;
                y.fmt_at(f, 0)?;
                f.write_str(")")
            }
        }
    }
}

/// `powi` for small integer exponents keeps polynomials exact on integers.
fn pow(a: f64, b: f64) -> f64 {
    if b.fract() == 0.0 && b.abs() <= 64.0 {
        a.powi(b as i32)
    } else {
        a.powf(b)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Display for FuncExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.root.fmt(f)
    }
}

impl std::str::FromStr for FuncExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_func(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(src: &str) -> FuncExpr {
        parse_func(src).unwrap()
    }

    #[test]
    fn evaluates_examples() {
        assert_eq!(f("t^2").eval(2.0).unwrap(), 4.0);
        assert_eq!(f("t^2").eval(-3.0).unwrap(), 9.0);
        assert_eq!(f("1").eval(123.0).unwrap(), 1.0);
        assert_eq!(f("abs(t - 1) * sin(t)").eval(1.0).unwrap(), 0.0);
        assert_eq!(f("exp(0)").eval(5.0).unwrap(), 1.0);
        assert_eq!(f("min(t, 2) + max(t, 2)").eval(7.0).unwrap(), 9.0);
        assert_eq!(f("sqrt(t) * ln(exp(t))").eval(4.0).unwrap(), 8.0);
        assert!((f("cos(pi)").eval(0.0).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn domain_errors_carry_context() {
        match f("1/t").eval(0.0) {
            Err(Error::Domain { t, node, .. }) => {
                assert_eq!(t, 0.0);
                assert_eq!(node, "1.0 / t");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(f("ln(t)").eval(0.0).is_err());
        assert!(f("ln(t)").eval(-1.0).is_err());
        assert!(f("sqrt(t)").eval(-1.0).is_err());
        assert!(f("t^0.5").eval(-1.0).is_err());
        assert!(f("t^-1").eval(0.0).is_err());
        assert!(f("exp(t)").eval(1000.0).is_err());
        assert_eq!(f("t^3").eval(-2.0).unwrap(), -8.0);
    }

    #[test]
    fn builders_compose() {
        let g = f("t").add(&f("1")).mul(&f("t")).scale(2.0).abs();
        assert_eq!(g.eval(-3.0).unwrap(), 12.0);
        assert_eq!(
            parse_func(&g.to_string()).unwrap().eval(-3.0).unwrap(),
            12.0
        );
        assert_eq!(FuncExpr::constant(-2.5).to_string(), "-2.5");
        assert_eq!(
            FuncExpr::constant(-2.5).mul(&FuncExpr::var()).to_string(),
            "-2.5 * t"
        );
    }

    #[test]
    fn printing_is_minimal_and_faithful() {
        for (src, printed) in [
            ("t^2", "t^2.0"),
            ("-t^2", "-t^2.0"),
            ("(-t)^2", "(-t)^2.0"),
            ("2^3^2", "2.0^3.0^2.0"),
            ("(2^3)^2", "(2.0^3.0)^2.0"),
            ("1 - (2 - t)", "1.0 - (2.0 - t)"),
            ("(1 - 2) - t", "1.0 - 2.0 - t"),
            ("t / (2 * t)", "t / (2.0 * t)"),
            ("--t", "--t"),
            ("2^-t", "2.0^-t"),
        ] {
            assert_eq!(f(src).to_string(), printed, "{src}");
        }
    }
}
