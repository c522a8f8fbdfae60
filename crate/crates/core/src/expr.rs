//! The expression language: lexer, recursive-descent parser, printer and
//! evaluator.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := "~"* atom ("^" nat)?
//! atom   := literal | call | "(" expr ")"
//! call   := fn "(" expr ("," expr)* ")"     fn ∈ strong weak tensor cart union
//! ```
//!
//! `~` binds tighter than `^`, so `~K2^2` is `(~K2)^2`. `+`, `-` and `*`
//! are the ring operations of the evaluation mode.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::products::{cartesian_graph, strong_product, tensor_product, weak_product};
use crate::ring::{nonunique_factorization_witness, RingElement, View};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Tokens that would have been accepted at this position.
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(", "))
    }
}

/// Graph-valued literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Named(Family),
    Witness63,
    /// `n`, meaning `n · [K1]`.
    Integer(u64),
    /// `@path`: a graph or ring element read from a file.
    File(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Strong,
    Weak,
    Tensor,
    Cart,
    Union,
}

impl Func {
    const ALL: [(Func, &'static str); 5] = [
        (Func::Strong, "strong"),
        (Func::Weak, "weak"),
        (Func::Tensor, "tensor"),
        (Func::Cart, "cart"),
        (Func::Union, "union"),
    ];

    pub fn name(self) -> &'static str {
        Self::ALL.iter().find(|(f, _)| *f == self).expect("listed").1
    }

    fn from_name(s: &str) -> Option<Func> {
        Self::ALL.iter().find(|(_, n)| *n == s).map(|(f, _)| *f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Literal(Literal),
    Complement(Box<Expr>),
    Power(Box<Expr>, u32),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    /// Letters with an optional directly attached number, such as `K5`.
    Word(String, Option<u64>),
    Nat(u64),
    File(String),
    Plus,
    Minus,
    Star,
    Caret,
    Tilde,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w, Some(n)) => format!("'{w}{n}'"),
            Tok::Word(w, None) => format!("'{w}'"),
            Tok::Nat(n) => format!("'{n}'"),
            Tok::File(f) => format!("'@{f}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Tilde => "'~'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> std::result::Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, column, message: String| ParseError {
        line,
        column,
        message,
        expected: Vec::new(),
    };
    let number = |s: &str, line, column| {
        s.parse::<u64>()
            .map_err(|_| err(line, column, format!("number {s} is too large")))
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let digits_start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num = if i > digits_start {
                let s: String = chars[digits_start..i].iter().collect();
                Some(number(&s, l0, c0 + (digits_start - start))?)
            } else {
                None
            };
            Tok::Word(word, num)
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Nat(number(&s, l0, c0)?)
        } else if c == '@' {
            i += 1;
            while i < chars.len() && is_path_char(chars[i]) {
                i += 1;
            }
            if i == start + 1 {
                return Err(err(l0, c0, "'@' must be followed by a file name".into()));
            }
            Tok::File(chars[start + 1..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '~' => Tok::Tilde,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                other => return Err(err(l0, c0, format!("unexpected character {other:?}"))),
            }
        };
        col += i - start;
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column: col,
    });
    Ok(out)
}

fn is_path_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '/' | '-')
}

const ATOM_START: &[&str] = &["literal", "function call", "'('", "'~'"];

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, expected: &[&str]) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            message: format!("unexpected {}", here.tok.describe()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn fail_at(&self, at: &Spanned, message: String) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            message,
            expected: Vec::new(),
        }
    }

    fn expect(&mut self, tok: Tok) -> std::result::Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.fail(&[tok.describe().as_str()]))
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.factor()?;
            lhs = Expr::Binary(BinOp::Mul, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut tildes = 0;
        while *self.peek() == Tok::Tilde {
            self.bump();
            tildes += 1;
        }
        let mut e = self.atom()?;
        for _ in 0..tildes {
            e = Expr::Complement(Box::new(e));
        }
        if *self.peek() == Tok::Caret {
            self.bump();
            let at = self.toks[self.pos].clone();
            let Tok::Nat(k) = at.tok else {
                return Err(self.fail(&["exponent"]));
            };
            self.bump();
            let k = u32::try_from(k).map_err(|_| self.fail_at(&at, format!("exponent {k} is too large")))?;
            e = Expr::Power(Box::new(e), k);
        }
        Ok(e)
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        let at = self.toks[self.pos].clone();
        match at.tok.clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Nat(n) => {
                self.bump();
                Ok(Expr::Literal(Literal::Integer(n)))
            }
            Tok::File(f) => {
                self.bump();
                Ok(Expr::Literal(Literal::File(f)))
            }
            Tok::Word(w, num) => {
                self.bump();
                self.word(&at, &w, num)
            }
            _ => Err(self.fail(ATOM_START)),
        }
    }

    fn word(&mut self, at: &Spanned, w: &str, num: Option<u64>) -> std::result::Result<Expr, ParseError> {
        let size = |n: u64| {
            usize::try_from(n).map_err(|_| ParseError {
                line: at.line,
                column: at.column,
                message: format!("size {n} is too large"),
                expected: Vec::new(),
            })
        };
        let named = |f: Family| Ok(Expr::Literal(Literal::Named(f)));
        match (w, num) {
            ("K", Some(n)) => named(Family::Complete(size(n)?)),
            ("P", Some(n)) => named(Family::Points(size(n)?)),
            ("C", Some(n)) => named(Family::Cycle(size(n)?)),
            ("S", Some(n)) => named(Family::Star(size(n)?)),
            ("W", Some(n)) => named(Family::Wheel(size(n)?)),
            ("L", Some(n)) => named(Family::Linear(size(n)?)),
            ("B", Some(n)) => named(Family::Bouquet(size(n)?)),
            ("Sph", Some(n)) => named(Family::CrossPolytope(size(n)?)),
            ("witness", Some(63)) => Ok(Expr::Literal(Literal::Witness63)),
            ("Oct", None) => named(Family::Octahedron),
            ("Kite", None) => named(Family::Kite),
            ("Windmill", None) => named(Family::Windmill),
            ("Kb", None) => {
                self.expect(Tok::LParen)?;
                let n = self.nat()?;
                self.expect(Tok::Comma)?;
                let m = self.nat()?;
                self.expect(Tok::RParen)?;
                named(Family::CompleteBipartite(size(n)?, size(m)?))
            }
            (name, None) if Func::from_name(name).is_some() => {
                let f = Func::from_name(name).expect("checked");
                self.expect(Tok::LParen)?;
                let mut args = vec![self.expr()?];
                loop {
                    match self.peek() {
                        Tok::Comma => {
                            self.bump();
                            args.push(self.expr()?);
                        }
                        Tok::RParen => {
                            self.bump();
                            return Ok(Expr::Call(f, args));
                        }
                        _ => return Err(self.fail(&["','", "')'"])),
                    }
                }
            }
            ("K" | "P" | "C" | "S" | "W" | "L" | "B" | "Sph", None) => {
                Err(self.fail_at(at, format!("'{w}' needs a size directly attached, as in {w}4")))
            }
            _ => Err(self.fail_at(at, format!("unknown name {}", at.tok.describe()))),
        }
    }

    fn nat(&mut self) -> std::result::Result<u64, ParseError> {
        match *self.peek() {
            Tok::Nat(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.fail(&["number"])),
        }
    }
}

pub fn parse(text: &str) -> std::result::Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.fail(&["'+'", "'-'", "'*'", "'^'", "end of input"]));
    }
    Ok(e)
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Integer(n) => write!(f, "{n}"),
            Literal::File(p) => write!(f, "@{p}"),
            Literal::Witness63 => write!(f, "witness63"),
            Literal::Named(fam) => match *fam {
                Family::Complete(n) => write!(f, "K{n}"),
                Family::Points(n) => write!(f, "P{n}"),
                Family::Cycle(n) => write!(f, "C{n}"),
                Family::Star(n) => write!(f, "S{n}"),
                Family::Wheel(n) => write!(f, "W{n}"),
                Family::Linear(n) => write!(f, "L{n}"),
                Family::Bouquet(n) => write!(f, "B{n}"),
                Family::CrossPolytope(d) => write!(f, "Sph{d}"),
                Family::CompleteBipartite(n, m) => write!(f, "Kb({n},{m})"),
                Family::Octahedron => write!(f, "Oct"),
                Family::Kite => write!(f, "Kite"),
                Family::Windmill => write!(f, "Windmill"),
            },
        }
    }
}

/// Binding strength of the syntactic position an expression fills.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Product,
    /// Operand of `^`: atoms and complements only.
    Base,
    /// Operand of `~`: the same, since `~` already binds tighter than `^`.
    Complemented,
}

impl Expr {
    fn level(&self) -> Level {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => Level::Sum,
            Expr::Binary(BinOp::Mul, ..) => Level::Product,
            Expr::Power(..) => Level::Product,
            Expr::Complement(_) | Expr::Literal(_) | Expr::Call(..) => Level::Complemented,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, need: Level) -> fmt::Result {
        // A power is a factor: fine as an operand of `*`, not of `^` or `~`.
        let fits = match self {
            Expr::Power(..) => need <= Level::Product,
            _ => self.level() >= need,
        };
        if !fits {
            write!(f, "(")?;
            self.write_at(f, Level::Sum)?;
            return write!(f, ")");
        }
        match self {
            Expr::Literal(l) => write!(f, "{l}"),
            Expr::Complement(e) => {
                write!(f, "~")?;
                e.write_at(f, Level::Complemented)
            }
            Expr::Power(e, k) => {
                e.write_at(f, Level::Base)?;
                write!(f, "^{k}")
            }
            Expr::Binary(op, a, b) => {
                let (sym, left, right) = match op {
                    BinOp::Add => (" + ", Level::Sum, Level::Product),
                    BinOp::Sub => (" - ", Level::Sum, Level::Product),
                    BinOp::Mul => ("*", Level::Product, Level::Base),
                };
                a.write_at(f, left)?;
                write!(f, "{sym}")?;
                // The right operand of `*` may itself be a power.
                if *op == BinOp::Mul && matches!(**b, Expr::Power(..)) {
                    b.write_at(f, Level::Product)
                } else {
                    b.write_at(f, right)
                }
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    a.write_at(f, Level::Sum)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, Level::Sum)
    }
}

/// Result of evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Graph(Graph),
    Element(RingElement),
}

impl Value {
    /// Ring element in `view`; graphs are decomposed into additive primes.
    pub fn to_element(&self, view: View) -> Result<RingElement> {
        match self {
            Value::Graph(g) => RingElement::from_graph(g, view),
            Value::Element(e) if e.view() == view => Ok(e.clone()),
            Value::Element(e) => Err(Error::ViewMismatch(format!(
                "a {} element cannot be used in {view} mode",
                e.view()
            ))),
        }
    }

    /// The graph represented by this value; fails for elements with a
    /// negative coefficient.
    pub fn to_graph(&self) -> Result<Graph> {
        match self {
            Value::Graph(g) => Ok(g.clone()),
            Value::Element(e) => e.to_graph(),
        }
    }

    /// Materializes elements with no negative coefficient as graphs.
    pub fn normalized(self) -> Value {
        match self {
            Value::Element(e) if e.is_graph() => Value::Graph(e.to_graph().expect("positive element")),
            other => other,
        }
    }
}

/// Evaluation settings.
#[derive(Clone, Debug)]
pub struct Evaluator {
    pub mode: View,
    pub budgets: Budgets,
    /// Directory that relative `@file` paths resolve against.
    pub base_dir: PathBuf,
}

impl Evaluator {
    pub fn new(mode: View) -> Self {
        Evaluator {
            mode,
            budgets: Budgets::default(),
            base_dir: PathBuf::from("."),
        }
    }

    pub fn with_budgets(mut self, budgets: Budgets) -> Self {
        self.budgets = budgets;
        self
    }

    pub fn with_base_dir(mut self, dir: impl AsRef<Path>) -> Self {
        self.base_dir = dir.as_ref().to_path_buf();
        self
    }

    /// Evaluates bottom-up; positive results are returned as graphs.
    pub fn eval(&self, e: &Expr) -> Result<Value> {
        Ok(self.value(e)?.normalized())
    }

    pub fn eval_str(&self, text: &str) -> Result<Value> {
        self.eval(&parse(text)?)
    }

    pub fn eval_graph(&self, text: &str) -> Result<Graph> {
        self.eval_str(text)?.to_graph()
    }

    fn value(&self, e: &Expr) -> Result<Value> {
        let view = self.mode;
        Ok(match e {
            Expr::Literal(Literal::Named(f)) => Value::Graph(Graph::named(*f)?),
            Expr::Literal(Literal::Witness63) => Value::Graph(nonunique_factorization_witness().product),
            Expr::Literal(Literal::Integer(n)) => {
                let n = i64::try_from(*n).map_err(|_| Error::Invalid(format!("integer {n} is too large")))?;
                Value::Element(RingElement::integer(n, view))
            }
            Expr::Literal(Literal::File(p)) => self.load(p)?,
            Expr::Complement(inner) => Value::Graph(self.value(inner)?.to_graph()?.complement()),
            Expr::Power(base, k) => {
                let b = self.value(base)?.to_element(view)?;
                Value::Element(b.pow(*k, self.budgets.product)?)
            }
            Expr::Binary(op, a, b) => {
                let x = self.value(a)?.to_element(view)?;
                let y = self.value(b)?.to_element(view)?;
                Value::Element(match op {
                    BinOp::Add => x.add(&y)?,
                    BinOp::Sub => x.sub(&y)?,
                    BinOp::Mul => x.mul(&y, self.budgets.product)?,
                })
            }
            Expr::Call(func, args) => {
                if args.len() < 2 {
                    return Err(Error::Invalid(format!("{} needs at least two arguments", func.name())));
                }
                let mut acc = self.value(&args[0])?.to_graph()?;
                for a in &args[1..] {
                    let g = self.value(a)?.to_graph()?;
                    acc = self.call(*func, &acc, &g)?;
                }
                Value::Graph(acc)
            }
        })
    }

    fn call(&self, func: Func, a: &Graph, b: &Graph) -> Result<Graph> {
        if func != Func::Union && func != Func::Cart && a.order() * b.order() > self.budgets.product {
            return Err(Error::budget("product vertices", self.budgets.product));
        }
        Ok(match func {
            Func::Strong => strong_product(a, b),
            Func::Weak => weak_product(a, b),
            Func::Tensor => tensor_product(a, b),
            Func::Union => a.disjoint_union(b),
            Func::Cart => {
                let g = cartesian_graph(a, b, self.budgets.simplices)?;
                if g.order() > self.budgets.product {
                    return Err(Error::budget("product vertices", self.budgets.product));
                }
                g
            }
        })
    }

    /// Graph JSON, ring element JSON, or the plain edge-list format.
    fn load(&self, path: &str) -> Result<Value> {
        let full = self.base_dir.join(path);
        let text = std::fs::read_to_string(&full)?;
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(&text)?;
            if v.get("terms").is_some() {
                return Ok(Value::Element(RingElement::from_json(&text)?));
            }
            return Ok(Value::Graph(Graph::from_json(&text)?));
        }
        Ok(Value::Graph(Graph::from_edge_list(&text)?))
    }
}
