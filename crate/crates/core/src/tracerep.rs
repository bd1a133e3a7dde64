//! Trace notation for Boolean functions on GF(2^m).
//!
//! [`parse`] evaluates expressions such as `tr(x^7+x^13)+1` to truth tables.
//! [`to_trace_form`] goes the other way: the Mattson–Solomon polynomial of a
//! function is grouped by cyclotomic coset, giving one coefficient per coset
//! leader. Because `tr(x^a) = tr(x^{2a})`, forms are keyed by coset leader
//! and compared as maps, never as raw exponent lists.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::boolfn::BooleanFunction;
use crate::error::{Error, Result};
use crate::gf2m::{coset_leader, coset_of, cyclotomic_cosets, Element, FieldContext};

/// Canonical trace representation
/// `constant + [x ≠ 0]·nonzero_indicator + Σ_l tr_{s_l}(α^{k_l} x^l)`,
/// where `l` runs over coset leaders and `s_l` is the coset size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TraceForm {
    m: u32,
    pub constant: bool,
    /// The monomial `x^{2^m - 1}`, which is 1 exactly on nonzero points.
    /// Present iff the function has odd weight.
    pub nonzero_indicator: bool,
    /// Coset leader -> discrete log of its (nonzero) coefficient.
    terms: BTreeMap<u32, u32>,
}

impl TraceForm {
    pub fn zero(m: u32) -> Self {
        TraceForm {
            m,
            constant: false,
            nonzero_indicator: false,
            terms: BTreeMap::new(),
        }
    }

    /// `constant + Σ tr(x^e)` over the given exponents. Exponents in the same
    /// coset cancel in pairs, as the traces do.
    pub fn binary(m: u32, constant: bool, exponents: &[u64]) -> Self {
        let mut tf = Self::zero(m);
        tf.constant = constant;
        for &e in exponents {
            let leader = coset_leader(m, e);
            if leader == 0 {
                tf.constant ^= m % 2 == 1;
                continue;
            }
            // tr(x^e) over a short coset is (m/s)·tr_s(x^e)
            let size = coset_of(m, leader as u64).size();
            if size != m && (m / size).is_multiple_of(2) {
                continue;
            }
            if tf.terms.remove(&leader).is_none() {
                tf.terms.insert(leader, 0);
            }
        }
        tf
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Leader -> coefficient log, ascending by leader.
    pub fn terms(&self) -> &BTreeMap<u32, u32> {
        &self.terms
    }

    pub fn leaders(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().copied()
    }

    /// All coefficients are 1 and every coset is full-length.
    pub fn is_binary(&self) -> bool {
        self.terms
            .iter()
            .all(|(&l, &k)| k == 0 && coset_of(self.m, l as u64).size() == self.m)
    }

    /// Maximum binary weight over the monomials present.
    pub fn algebraic_degree(&self) -> u32 {
        let top = if self.nonzero_indicator { self.m } else { 0 };
        self.leaders()
            .map(u32::count_ones)
            .max()
            .unwrap_or(0)
            .max(top)
    }

    pub fn evaluate(&self, ctx: &FieldContext) -> Result<BooleanFunction> {
        check_dimension(self.m, ctx)?;
        let mut f = BooleanFunction::constant(self.m, self.constant);
        if self.nonzero_indicator {
            f = &f ^ &BooleanFunction::from_fn(self.m, |x| x != 0);
        }
        for (&leader, &k) in &self.terms {
            let size = coset_of(self.m, leader as u64).size();
            let c = ctx.antilog(k as u64);
            let term = eval_subfield_trace(ctx, size, c, leader as u64)?;
            f = &f ^ &term;
        }
        Ok(f)
    }
}

fn check_dimension(m: u32, ctx: &FieldContext) -> Result<()> {
    if m != ctx.m() {
        return Err(Error::DimensionMismatch {
            left: m,
            right: ctx.m(),
        });
    }
    Ok(())
}

/// `x -> Σ_{k<s} (c·x^e)^{2^k}`, which must be F_2-valued.
fn eval_subfield_trace(ctx: &FieldContext, s: u32, c: Element, e: u64) -> Result<BooleanFunction> {
    let m = ctx.m();
    let use_absolute = (m / s) % 2 == 1 && m.is_multiple_of(s);
    let mut bad = None;
    let f = BooleanFunction::from_fn(m, |x| {
        let y = ctx.mul(c, ctx.pow(x, e));
        if use_absolute {
            return ctx.trace(y) == 1;
        }
        let mut acc = 0;
        let mut z = y;
        for _ in 0..s {
            acc ^= z;
            z = ctx.mul(z, z);
        }
        if acc > 1 && bad.is_none() {
            bad = Some(x);
        }
        acc == 1
    });
    match bad {
        Some(_) => Err(Error::NotBooleanConsistent { exponent: e as u32 }),
        None => Ok(f),
    }
}

impl fmt::Display for TraceForm {
    /// Canonical text: `1+` for the constant, then `tr(x+x^3+...)` for the
    /// binary full-length terms, then the remaining terms one by one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.constant {
            parts.push("1".to_string());
        }
        if self.nonzero_indicator {
            parts.push(format!("x^{}", (1u64 << self.m) - 1));
        }
        let mut binary = Vec::new();
        let mut other = Vec::new();
        for (&l, &k) in &self.terms {
            let size = coset_of(self.m, l as u64).size();
            if k == 0 && size == self.m {
                binary.push(monomial(l));
            } else {
                let inner = if k == 0 {
                    monomial(l)
                } else {
                    format!("α^{k}·{}", monomial(l))
                };
                if size == self.m {
                    other.push(format!("tr({inner})"));
                } else {
                    other.push(format!("tr_{size}({inner})"));
                }
            }
        }
        if !binary.is_empty() {
            parts.push(format!("tr({})", binary.join("+")));
        }
        parts.extend(other);
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

fn monomial(e: u32) -> String {
    if e == 1 {
        "x".into()
    } else {
        format!("x^{e}")
    }
}

/// Canonical text form, see [`TraceForm`]'s `Display`.
pub fn format(tf: &TraceForm) -> String {
    tf.to_string()
}

struct TermJson(u32, u32);

impl Serialize for TermJson {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("leader", &self.0)?;
        if self.1 == 0 {
            map.serialize_entry("coeff", "1")?;
        } else {
            map.serialize_entry("coeff_log", &self.1)?;
        }
        map.end()
    }
}

impl Serialize for TraceForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self.terms.iter().map(|(&l, &k)| TermJson(l, k)).collect();
        let mut s = serializer.serialize_struct("TraceForm", 6)?;
        s.serialize_field("constant", &(self.constant as u8))?;
        s.serialize_field("is_binary", &self.is_binary())?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("nonzero_indicator", &self.nonzero_indicator)?;
        s.serialize_field("terms", &terms)?;
        s.serialize_field("text", &self.to_string())?;
        s.end()
    }
}

/// Mattson–Solomon coefficients `c_0 .. c_{2^m - 1}` with
/// `f(x) = Σ_i c_i x^i` at every point, including `x = 0`.
///
/// For `1 <= i < 2^m - 1`, `c_i = Σ_{x≠0} f(x) x^{-i}`; `c_0 = f(0)`, and the
/// top coefficient absorbs the difference so that nonzero points are
/// unaffected.
pub fn mattson_solomon(f: &BooleanFunction, ctx: &FieldContext) -> Result<Vec<Element>> {
    check_dimension(f.m(), ctx)?;
    let n = ctx.group_order();
    let logs: Vec<u64> = f
        .support()
        .filter(|&x| x != 0)
        .map(|x| ctx.log(x).expect("nonzero") as u64)
        .collect();
    let mut coeffs = vec![0 as Element; ctx.size()];
    let f0 = f.bit(0) as Element;
    coeffs[0] = f0;
    for (i, c) in coeffs.iter_mut().enumerate().take(n as usize).skip(1) {
        *c = ms_coefficient(ctx, &logs, i as u64);
    }
    let parity = (logs.len() % 2) as Element;
    coeffs[n as usize] = parity ^ f0;
    Ok(coeffs)
}

fn ms_coefficient(ctx: &FieldContext, support_logs: &[u64], i: u64) -> Element {
    let n = ctx.group_order();
    let neg = (n - i % n) % n;
    support_logs
        .iter()
        .fold(0, |acc, &l| acc ^ ctx.antilog(l * neg))
}

/// Canonical [`TraceForm`] of `f`.
pub fn to_trace_form(f: &BooleanFunction, ctx: &FieldContext) -> Result<TraceForm> {
    check_dimension(f.m(), ctx)?;
    let m = f.m();
    let logs: Vec<u64> = f
        .support()
        .filter(|&x| x != 0)
        .map(|x| ctx.log(x).expect("nonzero") as u64)
        .collect();
    let mut tf = TraceForm::zero(m);
    tf.constant = f.get(0);
    tf.nonzero_indicator = (logs.len() % 2 == 1) ^ tf.constant;
    for coset in cyclotomic_cosets(m).into_iter().skip(1) {
        let c = ms_coefficient(ctx, &logs, coset.leader as u64);
        if c == 0 {
            continue;
        }
        // the coefficient must lie in GF(2^s): c^{2^s} = c
        if ctx.pow(c, 1u64 << coset.size()) != c {
            return Err(Error::NotBooleanConsistent {
                exponent: coset.leader,
            });
        }
        tf.terms.insert(coset.leader, ctx.log(c).expect("nonzero"));
    }
    Ok(tf)
}

// ---------------------------------------------------------------------------
// Expression parser

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Plus,
    Star,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Minus,
    Underscore,
    Num(u64),
    Ident(Ident),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ident {
    Tr,
    X,
    Alpha,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '-' => Tok::Minus,
            '_' => Tok::Underscore,
            'α' => Tok::Ident(Ident::Alpha),
            c if c.is_ascii_digit() => {
                let mut j = i;
                let mut value: u64 = 0;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    let d = chars[j].1 as u64 - '0' as u64;
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d))
                        .ok_or(Error::ExponentOutOfRange { pos })?;
                    j += 1;
                }
                out.push((pos, Tok::Num(value)));
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_alphabetic() {
                    j += 1;
                }
                let word: String = chars[i..j].iter().map(|&(_, c)| c).collect();
                let ident = match word.as_str() {
                    "tr" | "Tr" => Ident::Tr,
                    "x" | "X" => Ident::X,
                    "a" | "alpha" => Ident::Alpha,
                    _ => {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("unknown identifier {word:?}"),
                        })
                    }
                };
                out.push((pos, Tok::Ident(ident)));
                i = j;
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

/// One `c·x^e` summand inside a trace, or a bare constant when `x_exp` is
/// `None`.
#[derive(Debug, Clone, Copy)]
struct Item {
    coeff_log: u64,
    x_exp: Option<u64>,
    constant: bool,
}

enum Term {
    Constant(bool),
    Trace {
        subfield: Option<u32>,
        items: Vec<Item>,
    },
    NonzeroIndicator,
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    i: usize,
    end: usize,
    m: u32,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.i).map(|&(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|&(p, _)| p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, t: Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    /// `^ n`, `^ {n}`; a leading minus is an out-of-range exponent.
    fn exponent(&mut self) -> Result<u64> {
        self.expect(Tok::Caret, "'^'")?;
        let braced = self.eat(Tok::LBrace);
        if self.peek() == Some(Tok::Minus) {
            return Err(Error::ExponentOutOfRange { pos: self.pos() });
        }
        let value = match self.peek() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                n
            }
            _ => return self.err("expected exponent"),
        };
        if braced {
            self.expect(Tok::RBrace, "'}'")?;
        }
        Ok(value)
    }

    fn expr(&mut self) -> Result<Vec<Term>> {
        let mut terms = vec![self.term()?];
        while self.eat(Tok::Plus) {
            terms.push(self.term()?);
        }
        if self.i != self.toks.len() {
            return self.err("unexpected trailing input");
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek() {
            Some(Tok::Num(n @ (0 | 1))) => {
                self.i += 1;
                Ok(Term::Constant(n == 1))
            }
            Some(Tok::Ident(Ident::Tr)) => {
                self.i += 1;
                let subfield = if self.eat(Tok::Underscore) {
                    match self.peek() {
                        Some(Tok::Num(s)) if s >= 1 && (self.m as u64).is_multiple_of(s) => {
                            self.i += 1;
                            Some(s as u32)
                        }
                        _ => return self.err("subfield degree must divide m"),
                    }
                } else {
                    None
                };
                self.expect(Tok::LParen, "'('")?;
                let mut items = vec![self.item()?];
                while self.eat(Tok::Plus) {
                    items.push(self.item()?);
                }
                self.expect(Tok::RParen, "')'")?;
                Ok(Term::Trace { subfield, items })
            }
            Some(Tok::Ident(Ident::X)) => {
                let pos = self.pos();
                self.i += 1;
                let e = self.exponent()?;
                let n = (1u64 << self.m) - 1;
                if e == 0 {
                    Ok(Term::Constant(true))
                } else if e % n == 0 {
                    Ok(Term::NonzeroIndicator)
                } else {
                    Err(Error::Parse {
                        pos,
                        msg: "a monomial outside a trace must be x^0 or x^(2^m-1)".into(),
                    })
                }
            }
            _ => self.err("expected '0', '1', 'tr(' or 'x^'"),
        }
    }

    fn item(&mut self) -> Result<Item> {
        match self.peek() {
            Some(Tok::Num(n @ (0 | 1))) => {
                self.i += 1;
                Ok(Item {
                    coeff_log: 0,
                    x_exp: None,
                    constant: n == 1,
                })
            }
            Some(Tok::Ident(Ident::Alpha)) => {
                self.i += 1;
                let k = if self.peek() == Some(Tok::Caret) {
                    self.exponent()?
                } else {
                    1
                };
                if self.eat(Tok::Star) || self.peek() == Some(Tok::Ident(Ident::X)) {
                    let mut item = self.monomial()?;
                    item.coeff_log = k;
                    Ok(item)
                } else {
                    // bare α^k
                    Ok(Item {
                        coeff_log: k,
                        x_exp: Some(0),
                        constant: true,
                    })
                }
            }
            Some(Tok::Ident(Ident::X)) => self.monomial(),
            _ => self.err("expected 'x', '1' or a coefficient inside tr(...)"),
        }
    }

    fn monomial(&mut self) -> Result<Item> {
        if !self.eat(Tok::Ident(Ident::X)) {
            return self.err("expected 'x'");
        }
        let e = if self.peek() == Some(Tok::Caret) {
            self.exponent()?
        } else {
            1
        };
        Ok(Item {
            coeff_log: 0,
            x_exp: Some(e),
            constant: true,
        })
    }
}

/// Evaluates a trace expression at every point of `ctx`.
///
/// Grammar: `+`-separated terms, each `0`, `1`, `x^(2^m-1)`, or
/// `tr(...)` / `tr_s(...)` over `+`-separated items `1`, `x`, `x^e`,
/// `α^k·x^e` (also written `a^k*x^e`).
pub fn parse(expr: &str, ctx: &FieldContext) -> Result<BooleanFunction> {
    let toks = tokenize(expr)?;
    let m = ctx.m();
    let mut parser = Parser {
        toks: &toks,
        i: 0,
        end: expr.len(),
        m,
    };
    let terms = parser.expr()?;
    let mut f = BooleanFunction::zero(m);
    for term in terms {
        match term {
            Term::Constant(c) => {
                if c {
                    f = !&f;
                }
            }
            Term::NonzeroIndicator => {
                f = &f ^ &BooleanFunction::from_fn(m, |x| x != 0);
            }
            Term::Trace { subfield, items } => {
                let s = subfield.unwrap_or(m);
                for item in items {
                    let part = match item.x_exp {
                        None if !item.constant => BooleanFunction::zero(m),
                        None => BooleanFunction::constant(m, s % 2 == 1),
                        Some(e) => {
                            let c = ctx.antilog(item.coeff_log);
                            eval_subfield_trace(ctx, s, c, e).map_err(|_| Error::Parse {
                                pos: 0,
                                msg: format!("tr_{s} term with exponent {e} is not Boolean-valued"),
                            })?
                        }
                    };
                    f = &f ^ &part;
                }
            }
        }
    }
    Ok(f)
}
