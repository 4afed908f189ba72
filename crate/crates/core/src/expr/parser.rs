//! Recursive-descent parser for function expressions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' unary)?
//! atom  := number | 't' | 'pi' | 'e' | name '(' expr (',' expr)? ')' | '(' expr ')'
//! ```
//!
//! Exponentiation binds tighter than unary minus and is right-associative.

use super::cursor::Cursor;
use super::{BinOp, Func1, Func2, FuncExpr, Node};
use crate::error::Result;

/// Nesting cap so pathological inputs fail with a diagnostic instead of
/// exhausting the stack.
const MAX_DEPTH: usize = 256;

pub fn parse_func(src: &str) -> Result<FuncExpr> {
    let mut p = Parser {
        cur: Cursor::new(src),
        depth: 0,
    };
    if p.cur.at_end() {
        return Err(p.cur.error_here("empty expression"));
    }
    let root = p.expr()?;
    if let Some(c) = p.cur.peek() {
        return Err(p.cur.error_here(format!("unexpected '{c}'")));
    }
    Ok(FuncExpr::new(root))
}

struct Parser {
    cur: Cursor,
    depth: usize,
}

impl Parser {
    fn expr(&mut self) -> Result<Node> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.cur.error_here("expression nested too deeply"));
        }
        let mut lhs = self.term()?;
        loop {
            let op = if self.cur.eat('+') {
                BinOp::Add
            } else if self.cur.eat('-') {
                BinOp::Sub
            } else {
                break;
            };
            let rhs = self.term()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.cur.eat('*') {
                BinOp::Mul
            } else if self.cur.eat('/') {
                BinOp::Div
            } else {
                break;
            };
            let rhs = self.unary()?;
            lhs = Node::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.cur.error_here("expression nested too deeply"));
        }
        let node = if self.cur.eat('-') {
            Node::Neg(Box::new(self.unary()?))
        } else if self.cur.eat('+') {
            self.unary()?
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(node)
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.cur.eat('^') {
            let exp = self.unary()?;
            return Ok(Node::Binary(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        if self.cur.at_number() {
            return Ok(Node::Const(self.cur.number()?));
        }
        let start = {
            self.cur.skip_ws();
            self.cur.pos()
        };
        if self.cur.eat('(') {
            let inner = self.expr()?;
            self.cur.expect(')')?;
            return Ok(inner);
        }
        let Some(name) = self.cur.ident() else {
            return Err(match self.cur.peek() {
                Some(c) => self.cur.error_here(format!("unexpected '{c}'")),
                None => self.cur.error_here("unexpected end of input"),
            });
        };
        match name.as_str() {
            "t" => return Ok(Node::Var),
            "pi" => return Ok(Node::Const(std::f64::consts::PI)),
            "e" => return Ok(Node::Const(std::f64::consts::E)),
            _ => {}
        }
        if let Some(func) = Func1::from_name(&name) {
            self.cur.expect('(')?;
            let arg = self.expr()?;
            self.cur.expect(')')?;
            return Ok(Node::Call1(func, Box::new(arg)));
        }
        if let Some(func) = Func2::from_name(&name) {
            self.cur.expect('(')?;
            let a = self.expr()?;
            self.cur.expect(',')?;
            let b = self.expr()?;
            self.cur.expect(')')?;
            return Ok(Node::Call2(func, Box::new(a), Box::new(b)));
        }
        Err(self
            .cur
            .error_at(start, format!("unknown identifier '{name}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::{Error, ParseDiagnostics};

    fn eval(src: &str, t: f64) -> f64 {
        parse_func(src).unwrap().eval(t).unwrap()
    }

    fn diag(src: &str) -> ParseDiagnostics {
        match parse_func(src) {
            Err(Error::Syntax(d)) => d,
            other => panic!("expected syntax error for {src:?}, got {other:?}"),
        }
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(eval("1 + 2 * 3", 0.0), 7.0);
        assert_eq!(eval("(1 + 2) * 3", 0.0), 9.0);
        assert_eq!(eval("-t^2", 3.0), -9.0);
        assert_eq!(eval("2^3^2", 0.0), 512.0);
        assert_eq!(eval("8 / 4 / 2", 0.0), 1.0);
        assert_eq!(eval("8 - 4 - 2", 0.0), 2.0);
        assert_eq!(eval("2 * -t", 3.0), -6.0);
        assert_eq!(eval("2^-1", 0.0), 0.5);
        assert_eq!(eval("+t", 4.0), 4.0);
        assert_eq!(eval("1.5e2 + .5 + 2E-1", 0.0), 150.7);
        assert_eq!(eval("  t\t*\n2 ", 1.5), 3.0);
    }

    #[test]
    fn literal_followed_by_e_constant() {
        // `2e` is not an exponent, so this is 2 * e
        assert!((eval("2*e", 0.0) - 2.0 * std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn syntax_errors_are_positioned() {
        let d = diag("t +");
        assert_eq!(d.position, 3);
        assert_eq!(diag("").position, 0);
        assert_eq!(diag("(t").message, "expected ')', found end of input");
        assert_eq!(diag("foo(t)").position, 0);
        assert_eq!(diag("1 + bar").position, 4);
        assert_eq!(diag("t t").position, 2);
        assert_eq!(diag("min(t)").message, "expected ',', found ')'");
        assert_eq!(diag("1e999").message, "number '1e999' is out of range");
        assert_eq!(diag("2 * * t").to_string(), "4: unexpected '*'");
    }

    #[test]
    fn deep_nesting_is_rejected() {
        let src = format!("{}t{}", "(".repeat(10_000), ")".repeat(10_000));
        assert!(matches!(parse_func(&src), Err(Error::Syntax(_))));
        let src = "-".repeat(10_000) + "t";
        assert!(matches!(parse_func(&src), Err(Error::Syntax(_))));
    }
}
