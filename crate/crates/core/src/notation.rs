//! Text formats: Salamon notation for algebras, form literals and vector
//! literals.
//!
//! Salamon notation lists `d e_k` for each generator:
//!
//! ```text
//! algebra := "(" entry ("," entry)* ")"
//! entry   := "0" | "0^" uint | sign? term (("+" | "-") term)*
//! term    := [coeff "."] digit digit          distinct digits 1-9
//! coeff   := uint | uint "/" uint | "[" expr "]"
//! ```
//!
//! so `2.54` is `2 e5∧e4`. `0^k` abbreviates `k` zero entries. A bracketed
//! `expr` is a linear combination of named parameters and rationals, e.g.
//! `[l+m]`, resolved against the supplied bindings.
//!
//! Form literals are sums of `[coeff "*"] e<digits>` (or `e{i,j,...}` for
//! indices above 9); vector literals use `E<digit>` the same way.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Vector, MAX_DIM};
use crate::rational::{fmt_q, Q};

pub type Bindings = BTreeMap<String, Q>;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    /// Next char without skipping whitespace.
    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    /// A run of ASCII digits (whitespace allowed before, not inside).
    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek_raw().is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self
            .peek_raw()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        Some(&self.src[start..self.pos])
    }

    fn uint(&mut self) -> Result<BigInt> {
        let d = self.digits().ok_or_else(|| self.error("expected a number"))?;
        Ok(d.parse().expect("digits"))
    }

    /// `uint` or `uint/uint`.
    fn unsigned_rational(&mut self) -> Result<Q> {
        let n = self.uint()?;
        if self.peek() == Some('/') {
            self.bump();
            let d = self.uint()?;
            if d.is_zero() {
                return Err(self.error("zero denominator"));
            }
            return Ok(Q::new(n, d));
        }
        Ok(Q::from_integer(n))
    }

    /// `"[" expr "]"` with the opening bracket already consumed.
    fn bracket_expr(&mut self, params: &Bindings) -> Result<Q> {
        let mut total = Q::zero();
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -Q::one()
            } else if self.eat('+') || first {
                Q::one()
            } else {
                break;
            };
            first = false;
            let value = if let Some(name) = self.ident() {
                param(params, name)?
            } else {
                let c = self.unsigned_rational()?;
                if self.eat('*') {
                    let name = self.ident().ok_or_else(|| self.error("expected a parameter name"))?;
                    c * param(params, name)?
                } else {
                    c
                }
            };
            total += sign * value;
        }
        self.expect(']')?;
        Ok(total)
    }

    /// Optional leading coefficient of a form or vector term, followed by an
    /// optional `*`.
    fn term_coeff(&mut self, params: &Bindings) -> Result<Q> {
        let c = if self.eat('[') {
            self.bracket_expr(params)?
        } else if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.unsigned_rational()?
        } else {
            return Ok(Q::one());
        };
        self.eat('*');
        Ok(c)
    }
}

fn param(params: &Bindings, name: &str) -> Result<Q> {
    params
        .get(name)
        .cloned()
        .ok_or_else(|| Error::UnboundParameter(name.to_string()))
}

/// Differentials `d e_1, ..., d e_n` read from Salamon notation.
pub fn parse_salamon(text: &str, params: &Bindings) -> Result<Vec<KForm>> {
    let mut cur = Cursor::new(text);
    cur.expect('(')?;
    // (coefficient, ordered pair, position) per entry
    let mut entries: Vec<Vec<(Q, [usize; 2], usize)>> = Vec::new();
    loop {
        parse_entry(&mut cur, params, &mut entries)?;
        if cur.eat(',') {
            continue;
        }
        cur.expect(')')?;
        break;
    }
    if !cur.at_end() {
        return Err(cur.error("trailing input after `)`"));
    }
    let dim = entries.len();
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    entries
        .into_iter()
        .map(|terms| {
            let mut f = KForm::zero(dim, 2);
            for (c, [i, j], _) in terms {
                for idx in [i, j] {
                    if idx > dim {
                        return Err(Error::IndexOutOfRange { index: idx, dim });
                    }
                }
                let e = KForm::basis(dim, &[i, j])?;
                f = &f + &e.scale(&c);
            }
            Ok(f)
        })
        .collect()
}

type Entry = Vec<(Q, [usize; 2], usize)>;

fn parse_entry(cur: &mut Cursor<'_>, params: &Bindings, out: &mut Vec<Entry>) -> Result<()> {
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let sign = if cur.eat('-') {
            -Q::one()
        } else if cur.eat('+') || first {
            Q::one()
        } else {
            break;
        };
        let start = {
            cur.skip_ws();
            cur.pos
        };
        let (coeff, pair) = if cur.eat('[') {
            let c = cur.bracket_expr(params)?;
            cur.expect('.')?;
            (c, pair_digits(cur)?)
        } else {
            let d = cur.digits().ok_or_else(|| cur.error("expected a term"))?;
            match cur.peek() {
                Some('.') => {
                    cur.bump();
                    (Q::from_integer(d.parse().expect("digits")), pair_digits(cur)?)
                }
                Some('/') => {
                    cur.bump();
                    let den = cur.uint()?;
                    if den.is_zero() {
                        return Err(cur.error("zero denominator"));
                    }
                    cur.expect('.')?;
                    (Q::new(d.parse().expect("digits"), den), pair_digits(cur)?)
                }
                Some('^') if first && d == "0" => {
                    cur.bump();
                    let k = cur.uint()?;
                    let k: usize = k
                        .try_into()
                        .ok()
                        .filter(|&k| (1..=MAX_DIM).contains(&k))
                        .ok_or_else(|| cur.error("bad repeat count"))?;
                    out.extend(std::iter::repeat_with(Vec::new).take(k));
                    return Ok(());
                }
                _ if d == "0" && first => {
                    if matches!(cur.peek(), Some('+') | Some('-')) {
                        return Err(cur.error("`0` must stand alone"));
                    }
                    out.push(Vec::new());
                    return Ok(());
                }
                _ => (Q::one(), pair_from_str(d, start)?),
            }
        };
        first = false;
        terms.push((sign * coeff, pair, start));
    }
    if first {
        return Err(cur.error("empty entry"));
    }
    out.push(terms);
    Ok(())
}

fn pair_digits(cur: &mut Cursor<'_>) -> Result<[usize; 2]> {
    let start = {
        cur.skip_ws();
        cur.pos
    };
    let d = cur.digits().ok_or_else(|| cur.error("expected two index digits"))?;
    pair_from_str(d, start)
}

fn pair_from_str(d: &str, start: usize) -> Result<[usize; 2]> {
    let b = d.as_bytes();
    if b.len() != 2 || b.contains(&b'0') {
        return Err(Error::Syntax {
            pos: start,
            msg: format!("expected two index digits 1-9, found `{d}`"),
        });
    }
    let (i, j) = ((b[0] - b'0') as usize, (b[1] - b'0') as usize);
    if i == j {
        return Err(Error::RepeatedIndex(i));
    }
    Ok([i, j])
}

/// Renders differentials in Salamon notation. Each term is oriented so its
/// coefficient is positive (`51` rather than `-15`). Returns `None` above
/// dimension 9.
pub fn print_salamon(diffs: &[KForm]) -> Option<String> {
    if diffs.len() > 9 {
        return None;
    }
    let entries: Vec<String> = diffs
        .iter()
        .map(|f| {
            if f.is_zero() {
                return "0".to_string();
            }
            let mut s = String::new();
            for (k, (m, c)) in f.terms().enumerate() {
                let idx = m.indices();
                let (neg, abs) = (c.is_negative(), c.abs());
                let (a, b) = if neg { (idx[1], idx[0]) } else { (idx[0], idx[1]) };
                if k > 0 {
                    s.push('+');
                }
                if !abs.is_one() {
                    s.push_str(&fmt_q(&abs));
                    s.push('.');
                }
                s.push_str(&format!("{a}{b}"));
            }
            s
        })
        .collect();
    Some(format!("({})", entries.join(",")))
}

/// Parses a form literal. `degree` is required when the literal is `0`.
pub fn parse_form(text: &str, dim: usize, degree: Option<usize>, params: &Bindings) -> Result<KForm> {
    let mut cur = Cursor::new(text);
    let mut terms: Vec<(Q, Vec<usize>)> = Vec::new();
    let mut first = true;
    loop {
        if cur.at_end() && !first {
            break;
        }
        let sign = if cur.eat('-') {
            -Q::one()
        } else if cur.eat('+') || first {
            Q::one()
        } else {
            return Err(cur.error("expected `+` or `-`"));
        };
        first = false;
        let before = cur.pos;
        let c = sign * cur.term_coeff(params)?;
        if cur.peek() != Some('e') {
            if cur.pos == before {
                return Err(cur.error("expected a basis monomial `e...`"));
            }
            // a bare number is a 0-form term
            terms.push((c, Vec::new()));
            continue;
        }
        cur.bump();
        let word = index_word(&mut cur)?;
        terms.push((c, word));
    }
    if terms.iter().all(|(c, w)| w.is_empty() && c.is_zero()) && degree != Some(0) {
        terms.clear();
    }
    let deg = match (terms.first(), degree) {
        (Some((_, w)), Some(d)) if w.len() != d => {
            return Err(Error::WrongDegree {
                expected: d,
                got: w.len(),
            });
        }
        (Some((_, w)), _) => w.len(),
        (None, Some(d)) => d,
        (None, None) => {
            return Err(Error::Syntax {
                pos: 0,
                msg: "cannot infer the degree of `0`".into(),
            });
        }
    };
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    KForm::from_words(dim, deg, &terms)
}

fn index_word(cur: &mut Cursor<'_>) -> Result<Vec<usize>> {
    if cur.peek_raw() == Some('{') {
        cur.bump();
        let mut word = Vec::new();
        loop {
            let n = cur.uint()?;
            word.push(n.try_into().map_err(|_| cur.error("index too large"))?);
            if cur.eat(',') {
                continue;
            }
            cur.expect('}')?;
            return Ok(word);
        }
    }
    let start = cur.pos;
    let mut word = Vec::new();
    while let Some(c) = cur.peek_raw().filter(|c| c.is_ascii_digit()) {
        word.push(c.to_digit(10).unwrap() as usize);
        cur.pos += 1;
    }
    if word.is_empty() {
        // `e` alone is not a monomial; a bare 0-form would be written as a number
        return Err(Error::Syntax {
            pos: start,
            msg: "expected index digits after `e`".into(),
        });
    }
    Ok(word)
}

/// Parses `E4`, `E1 - 1/2*E3`, `E{10}` or `0`.
pub fn parse_vector(text: &str, dim: usize, params: &Bindings) -> Result<Vector> {
    let mut cur = Cursor::new(text);
    let mut v = Vector::zero(dim);
    let mut first = true;
    loop {
        if cur.at_end() && !first {
            break;
        }
        let sign = if cur.eat('-') {
            -Q::one()
        } else if cur.eat('+') || first {
            Q::one()
        } else {
            return Err(cur.error("expected `+` or `-`"));
        };
        let c = sign * cur.term_coeff(params)?;
        if cur.peek() != Some('E') {
            if first && c.is_zero() && cur.at_end() {
                return Ok(v);
            }
            return Err(cur.error("expected a frame vector `E...`"));
        }
        first = false;
        cur.bump();
        let word = index_word(&mut cur)?;
        let i = match word.as_slice() {
            [i] => *i,
            // `E12` would be ambiguous; vectors take a single index
            _ => return Err(cur.error("a frame vector takes one index")),
        };
        let e = Vector::basis(dim, i)?;
        v = v.add(&e.scale(&c))?;
    }
    Ok(v)
}
