use std::sync::Arc;

use super::{BinOp, Expr, Func};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn syntax(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax { offset, message: message.into() }
    }

    fn skip_ws(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Returns the next token and its starting byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let bytes = self.src.as_bytes();
        let start = self.pos;
        let Some(&c) = bytes.get(start) else {
            return Ok((Tok::End, start));
        };
        if c.is_ascii_digit() || c == b'.' {
            let mut end = start;
            while end < bytes.len() && (bytes[end].is_ascii_digit() || bytes[end] == b'.') {
                end += 1;
            }
            // exponent only when followed by digits, so `2e` stays `2` then `e`
            if end < bytes.len() && (bytes[end] == b'e' || bytes[end] == b'E') {
                let mut k = end + 1;
                if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                    k += 1;
                }
                if k < bytes.len() && bytes[k].is_ascii_digit() {
                    while k < bytes.len() && bytes[k].is_ascii_digit() {
                        k += 1;
                    }
                    end = k;
                }
            }
            let text = &self.src[start..end];
            let value: f64 =
                text.parse().map_err(|_| self.syntax(start, format!("malformed number `{text}`")))?;
            self.pos = end;
            return Ok((Tok::Num(value), start));
        }
        if c.is_ascii_alphabetic() {
            let mut end = start + 1;
            while end < bytes.len() && (bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_') {
                end += 1;
            }
            self.pos = end;
            return Ok((Tok::Ident(self.src[start..end].to_string()), start));
        }
        if b"+-*/^(),".contains(&c) {
            self.pos += 1;
            return Ok((Tok::Op(c as char), start));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(self.syntax(start, format!("unexpected character `{ch}`")))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
    declared: Option<&'a [&'a str]>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, declared: Option<&'a [&'a str]>) -> Result<Self> {
        let mut lexer = Lexer { src, pos: 0 };
        let (tok, at) = lexer.next()?;
        Ok(Parser { lexer, tok, at, declared })
    }

    fn bump(&mut self) -> Result<()> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.at, message: message.into() }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.tok == Tok::Op(op) {
            self.bump()
        } else {
            Err(self.error(format!("expected `{op}`")))
        }
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Op('+') => BinOp::Add,
                Tok::Op('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Arc::new(lhs), Arc::new(rhs));
        }
    }

    // term := unary (('*'|'/') unary)*
    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.tok {
                Tok::Op('*') => BinOp::Mul,
                Tok::Op('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Arc::new(lhs), Arc::new(rhs));
        }
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Expr> {
        if self.tok == Tok::Op('-') {
            self.bump()?;
            let inner = self.unary()?;
            return Ok(Expr::Neg(Arc::new(inner)));
        }
        self.power()
    }

    // power := base ('^' unary)?    (right-associative through unary)
    fn power(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.tok == Tok::Op('^') {
            self.bump()?;
            let exponent = self.unary()?;
            return Ok(Expr::Binary(BinOp::Pow, Arc::new(base), Arc::new(exponent)));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        match self.tok.clone() {
            Tok::Num(v) => {
                self.bump()?;
                Ok(Expr::Num(v))
            }
            Tok::Op('(') => {
                self.bump()?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let at = self.at;
                self.bump()?;
                if self.tok == Tok::Op('(') {
                    self.bump()?;
                    self.call(&name, at)
                } else {
                    if let Some(declared) = self.declared {
                        if !declared.contains(&name.as_str()) {
                            return Err(Error::UnboundSymbol { name });
                        }
                    }
                    Ok(Expr::sym(&name))
                }
            }
            Tok::End => Err(self.error("unexpected end of input")),
            Tok::Op(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn call(&mut self, name: &str, at: usize) -> Result<Expr> {
        let e = match name {
            "besselj" => {
                let order = match self.tok {
                    Tok::Num(v) if v >= 0.0 && v.fract() == 0.0 && v <= u32::MAX as f64 => v as u32,
                    _ => return Err(Error::BesselOrder { offset: self.at }),
                };
                self.bump()?;
                self.expect(',')?;
                let arg = self.expr()?;
                Expr::BesselJ(order, Arc::new(arg))
            }
            "pow" => {
                let base = self.expr()?;
                self.expect(',')?;
                let exponent = self.expr()?;
                Expr::Binary(BinOp::Pow, Arc::new(base), Arc::new(exponent))
            }
            _ => {
                let func = Func::from_name(name)
                    .ok_or_else(|| Error::UnknownFunction { name: name.to_string(), offset: at })?;
                let arg = self.expr()?;
                Expr::Call(func, Arc::new(arg))
            }
        };
        self.expect(')')?;
        Ok(e)
    }
}

fn parse_impl(source: &str, declared: Option<&[&str]>) -> Result<Expr> {
    if source.trim().is_empty() {
        return Err(Error::Syntax { offset: 0, message: "empty expression".into() });
    }
    let mut p = Parser::new(source, declared)?;
    let e = p.expr()?;
    if p.tok != Tok::End {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses `source`, requiring every symbol to appear in `declared`.
pub fn parse(source: &str, declared: &[&str]) -> Result<Expr> {
    parse_impl(source, Some(declared))
}

/// Parses `source` accepting any symbol name.
pub fn parse_unchecked(source: &str) -> Result<Expr> {
    parse_impl(source, None)
}
