//! Textual grammar for fields, function fields and element expressions.
//!
//! ```text
//! field      := base step*
//! base       := "Q" | "Fp(" p ")" | "Fq(" p "," k [";" sym] ")" | "F" q
//! step       := "(zeta" n ")" | "(" sym ":" poly-in-x ")"
//! funcfield  := field "(" vars [ "|" (var ":" ("T"|"U"))* ] ")"
//! expr       := infix + - * / ^ over integers, variables and generator symbols
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::prime_power;
use crate::error::{Error, Result};
use crate::fields::{
    cyclotomic, finite_field, prime_field, rationals, ExtendOptions, Field, FieldElement, UniPoly,
};
use crate::funcfield::{FunctionField, FunctionFieldDescriptor, MultiPoly, RatFunc};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Int(s.parse().expect("digits")),
                line: l0,
                column: c0,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
        } else if "()+-*/^,;:|".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line: l0,
                column: c0,
            });
            i += 1;
            col += 1;
        } else {
            return Err(Error::Parse {
                line: l0,
                column: c0,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        let lines: Vec<&str> = text.split('\n').collect();
        let end = (lines.len(), lines.last().map_or(0, |l| l.chars().count()) + 1);
        Ok(Parser { toks, pos: 0, end })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn int(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Tok::Int(n)) => match n.to_u64() {
                Some(v) => {
                    self.pos += 1;
                    Ok(v)
                }
                None => self.err("integer too large"),
            },
            _ => self.err("expected an integer"),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Index of the matching `)` for the `(` at the current position.
    fn matching_paren(&self) -> Option<usize> {
        let mut depth = 0;
        for (k, t) in self.toks[self.pos..].iter().enumerate() {
            match t.tok {
                Tok::Sym('(') => depth += 1,
                Tok::Sym(')') => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(self.pos + k);
                    }
                }
                _ => {}
            }
        }
        None
    }
}

/// Expression syntax tree.
#[derive(Debug, Clone)]
enum Expr {
    Int(BigInt),
    Name(String, usize, usize),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Parser {
    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.power()?));
            } else if self.eat('/') {
                lhs = Expr::Bin('/', Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = self.int()? as i64;
            return Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let (line, column) = self.here();
        match self.next() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Ident(s)) => Ok(Expr::Name(s, line, column)),
            Some(Tok::Sym('(')) => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Sym('-')) => Ok(Expr::Neg(Box::new(self.atom()?))),
            _ => {
                self.pos -= 1;
                self.err("expected an expression")
            }
        }
    }
}

/// Arithmetic needed to evaluate an [`Expr`].
trait Target: Sized + Clone {
    fn int(&self, n: &BigInt) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Result<Self>;
    fn pow(&self, e: i64) -> Result<Self>;
}

impl Target for RatFunc {
    fn int(&self, n: &BigInt) -> Self {
        RatFunc::constant(self.ring(), self.ring().base().from_bigint(n))
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        RatFunc::div(self, o)
    }
    fn pow(&self, e: i64) -> Result<Self> {
        self.pow_i64(e)
    }
}

impl Target for FieldElement {
    fn int(&self, n: &BigInt) -> Self {
        self.field().from_bigint(n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.try_div(o)
    }
    fn pow(&self, e: i64) -> Result<Self> {
        self.pow_i64(e)
    }
}

impl Target for UniPoly {
    fn int(&self, n: &BigInt) -> Self {
        UniPoly::constant(self.field().from_bigint(n))
    }
    fn add(&self, o: &Self) -> Self {
        UniPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        UniPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UniPoly::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        match o.degree() {
            Some(0) => Ok(self.scale(&o.lc().inv()?)),
            None => Err(Error::DivisionByZero),
            _ => Err(Error::Semantic("division by a non-constant polynomial".into())),
        }
    }
    fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return Err(Error::Semantic("negative power of a polynomial".into()));
        }
        Ok(UniPoly::pow(self, e as u64))
    }
}

fn eval<T: Target>(
    e: &Expr,
    unit: &T,
    lookup: &dyn Fn(&str) -> Option<T>,
) -> Result<T> {
    Ok(match e {
        Expr::Int(n) => unit.int(n),
        Expr::Name(s, line, column) => lookup(s).ok_or_else(|| Error::Parse {
            line: *line,
            column: *column,
            message: format!("unknown name `{s}`"),
        })?,
        Expr::Neg(a) => unit.int(&BigInt::zero()).sub(&eval(a, unit, lookup)?),
        Expr::Bin(op, a, b) => {
            let (x, y) = (eval(a, unit, lookup)?, eval(b, unit, lookup)?);
            match op {
                '+' => x.add(&y),
                '-' => x.sub(&y),
                '*' => x.mul(&y),
                _ => x.div(&y)?,
            }
        }
        Expr::Pow(a, k) => eval(a, unit, lookup)?.pow(*k)?,
    })
}

impl Parser {
    fn base_field(&mut self) -> Result<Field> {
        let name = self.ident()?;
        match name.as_str() {
            "Q" => Ok(rationals()),
            "Fp" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(')')?;
                prime_field(p).map_err(|e| Error::Semantic(e.to_string()))
            }
            "Fq" => {
                self.expect('(')?;
                let p = self.int()?;
                self.expect(',')?;
                let k = self.int()?;
                let sym = if self.eat(';') { self.ident()? } else { "g".into() };
                self.expect(')')?;
                finite_field(p, k as u32, &sym).map_err(|e| Error::Semantic(e.to_string()))
            }
            s if s.starts_with('F') && s[1..].chars().all(|c| c.is_ascii_digit()) && s.len() > 1 => {
                let q: u64 = s[1..]
                    .parse()
                    .map_err(|_| Error::Semantic(format!("bad field size in `{s}`")))?;
                let (p, k) = prime_power(q)
                    .ok_or_else(|| Error::Semantic(format!("{q} is not a prime power")))?;
                finite_field(p, k, "g").map_err(|e| Error::Semantic(e.to_string()))
            }
            _ => {
                self.pos -= 1;
                self.err(format!("unknown base field `{name}`"))
            }
        }
    }

    /// Whether the parenthesized group at the cursor is a tower step.
    fn at_step(&self) -> bool {
        if self.peek() != Some(&Tok::Sym('(')) {
            return false;
        }
        match (self.peek_at(1), self.peek_at(2)) {
            (Some(Tok::Ident(s)), Some(Tok::Sym(')'))) => is_zeta(s).is_some(),
            (Some(Tok::Ident(_)), Some(Tok::Sym(':'))) => true,
            _ => false,
        }
    }

    fn step(&mut self, field: &Field, opts: &ExtendOptions) -> Result<Field> {
        self.expect('(')?;
        let sym = self.ident()?;
        if let Some(n) = is_zeta(&sym) {
            self.expect(')')?;
            if field.characteristic() != 0 || !field.steps().is_empty() {
                return Err(Error::Semantic(format!(
                    "(zeta{n}) may only extend Q directly"
                )));
            }
            return cyclotomic(n).map_err(|e| Error::Semantic(e.to_string()));
        }
        self.expect(':')?;
        let e = self.expr()?;
        self.expect(')')?;
        let x = UniPoly::x(field);
        let f = field.clone();
        let poly = eval(&e, &x, &|name: &str| {
            if name == "x" {
                Some(UniPoly::x(&f))
            } else {
                f.generator_by_symbol(name).map(UniPoly::constant)
            }
        })?;
        field
            .extend(&poly, &sym, opts)
            .map_err(|e| Error::Semantic(e.to_string()))
    }

    fn field(&mut self, opts: &ExtendOptions) -> Result<Field> {
        let mut f = self.base_field()?;
        while self.at_step() {
            f = self.step(&f, opts)?;
        }
        Ok(f)
    }

    fn var_list(&mut self, base: &Field) -> Result<FunctionField> {
        self.expect('(')?;
        let mut vars = vec![self.ident()?];
        while self.eat(',') {
            vars.push(self.ident()?);
        }
        let mut t = Vec::new();
        let mut u = Vec::new();
        if self.eat('|') {
            while !self.eat(')') {
                let v = self.ident()?;
                self.expect(':')?;
                let kind = self.ident()?;
                if !vars.contains(&v) {
                    self.pos -= 3;
                    return self.err(format!("`{v}` is not a listed variable"));
                }
                match kind.as_str() {
                    "T" => t.push(v),
                    "U" => u.push(v),
                    _ => {
                        self.pos -= 1;
                        return self.err("variable kind must be T or U");
                    }
                }
                self.eat(',');
            }
            let missing: Vec<&String> = vars.iter().filter(|v| !t.contains(v) && !u.contains(v)).collect();
            if !missing.is_empty() {
                return Err(Error::Semantic(format!("variables without a kind: {missing:?}")));
            }
            // keep the listed order inside each group
            t.sort_by_key(|v| vars.iter().position(|w| w == v));
            u.sort_by_key(|v| vars.iter().position(|w| w == v));
        } else {
            self.expect(')')?;
            t.push(vars[0].clone());
            u.extend(vars[1..].iter().cloned());
        }
        let t: Vec<&str> = t.iter().map(|s| s.as_str()).collect();
        let u: Vec<&str> = u.iter().map(|s| s.as_str()).collect();
        FunctionFieldDescriptor::new(base, &t, &u).map_err(|e| Error::Semantic(e.to_string()))
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

fn is_zeta(s: &str) -> Option<u64> {
    s.strip_prefix("zeta").and_then(|n| n.parse().ok())
}

/// Parses a field descriptor such as `Fp(7)`, `Fq(3,4;g)`, `Q(zeta5)` or
/// `Q(zeta5)(r5:x^5-2)`.
pub fn parse_field(text: &str) -> Result<Field> {
    parse_field_with(text, &ExtendOptions::default())
}

pub fn parse_field_with(text: &str, opts: &ExtendOptions) -> Result<Field> {
    let mut p = Parser::new(text)?;
    let f = p.field(opts)?;
    p.finish()?;
    Ok(f)
}

/// Parses a function field such as `F7(t,u)` or `Fq(7,1)(t,u | t:T u:U)`.
/// Without an explicit partition the first variable is a T-variable and the
/// rest are U-variables.
pub fn parse_function_field(text: &str) -> Result<FunctionField> {
    let mut p = Parser::new(text)?;
    let f = p.field(&ExtendOptions::default())?;
    if p.peek() != Some(&Tok::Sym('(')) || p.matching_paren().is_none() {
        return p.err("expected a variable list");
    }
    let ff = p.var_list(&f)?;
    p.finish()?;
    Ok(ff)
}

/// Parses either a plain field or a function field.
pub enum ParsedField {
    Field(Field),
    Function(FunctionField),
}

pub fn parse_any_field(text: &str) -> Result<ParsedField> {
    let mut p = Parser::new(text)?;
    let f = p.field(&ExtendOptions::default())?;
    if p.at_end() {
        return Ok(ParsedField::Field(f));
    }
    let ff = p.var_list(&f)?;
    p.finish()?;
    Ok(ParsedField::Function(ff))
}

fn ratfunc_lookup(ring: &FunctionField) -> impl Fn(&str) -> Option<RatFunc> + '_ {
    move |name: &str| {
        if let Some(i) = ring.var_index(name) {
            return Some(RatFunc::var(ring, i));
        }
        ring.base()
            .generator_by_symbol(name)
            .map(|g| RatFunc::constant(ring, g))
    }
}

/// Parses one rational-function expression.
pub fn parse_ratfunc(ring: &FunctionField, text: &str) -> Result<RatFunc> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    eval(&e, &RatFunc::one(ring), &ratfunc_lookup(ring))
}

/// Parses a comma-separated list of rational functions.
pub fn parse_ratfunc_list(ring: &FunctionField, text: &str) -> Result<Vec<RatFunc>> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    if p.at_end() {
        return Ok(out);
    }
    let lookup = ratfunc_lookup(ring);
    loop {
        let e = p.expr()?;
        out.push(eval(&e, &RatFunc::one(ring), &lookup)?);
        if !p.eat(',') {
            break;
        }
    }
    p.finish()?;
    Ok(out)
}

/// Parses a polynomial expression.
pub fn parse_poly(ring: &FunctionField, text: &str) -> Result<MultiPoly> {
    let f = parse_ratfunc(ring, text)?;
    if !f.is_polynomial() {
        return Err(Error::Semantic(format!("{f} is not a polynomial")));
    }
    let c = f.den().lc().inv()?;
    Ok(f.num().scale(&c))
}

/// Parses a constant of `field`, written in its generator symbols.
pub fn parse_element(field: &Field, text: &str) -> Result<FieldElement> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.finish()?;
    eval(&e, &field.one(), &|name: &str| field.generator_by_symbol(name))
}

/// Parses a comma-separated list of constants.
pub fn parse_element_list(field: &Field, text: &str) -> Result<Vec<FieldElement>> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    if p.at_end() {
        return Ok(out);
    }
    loop {
        let e = p.expr()?;
        out.push(eval(&e, &field.one(), &|name: &str| field.generator_by_symbol(name))?);
        if !p.eat(',') {
            break;
        }
    }
    p.finish()?;
    Ok(out)
}
