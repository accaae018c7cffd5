//! On-disk structure documents and the small expression grammar used by
//! command-line arguments.
//!
//! Documents are JSON with one-based indices. Every coefficient is a list
//! of monomial terms; rationals are written in lowest terms with a positive
//! denominator and no redundant `/1`, and the parser enforces exactly that
//! form so documents round-trip byte for byte.

use crate::courant::SplitSection;
use crate::dull::DullStructure;
use crate::exterior::{Form, MultiVec};
use crate::proto::ProtoData;
use crate::ring::{int, Poly, Rational};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::Path;
use std::str::FromStr;

/// One monomial of a coefficient: per-coordinate exponents and a rational
/// coefficient in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

/// A structure constant indexed by three frame indices. Brackets require
/// `i < j`; the trivector tables require `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Vec<PolyTerm>,
}

/// An anchor coefficient: frame index and coordinate index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorEntry {
    pub i: usize,
    pub alpha: usize,
    pub value: Vec<PolyTerm>,
}

/// The serialized form of one verification input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub base_dim: usize,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bracket: Vec<CoeffEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anchor: Vec<AnchorEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dual_bracket: Vec<CoeffEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dual_anchor: Vec<AnchorEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tau: Vec<CoeffEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub phi: Vec<CoeffEntry>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<InputDocument> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }

    pub fn load(path: &Path) -> Result<InputDocument> {
        let text = std::fs::read_to_string(path)?;
        InputDocument::from_json(&text)
    }

    /// Validates every index and coefficient and builds the structure data.
    pub fn to_proto(&self) -> Result<ProtoData> {
        let n = self.rank;
        let m = self.base_dim;
        if n == 0 {
            return Err(Error::InvalidDocument("rank must be at least 1".into()));
        }
        if n > 31 {
            return Err(Error::InvalidDocument(format!(
                "rank {n} exceeds the supported maximum of 31"
            )));
        }

        let mut a = DullStructure::zero(n, m);
        let mut star = DullStructure::zero(n, m);
        self.read_bracket(&self.bracket, "bracket", &mut a)?;
        self.read_bracket(&self.dual_bracket, "dual_bracket", &mut star)?;
        self.read_anchor(&self.anchor, "anchor", &mut a)?;
        self.read_anchor(&self.dual_anchor, "dual_anchor", &mut star)?;
        let tau = self.read_trivector::<crate::exterior::VecSide>(&self.tau, "tau")?;
        let phi = self.read_trivector::<crate::exterior::FormSide>(&self.phi, "phi")?;
        ProtoData::new(a, star, tau, phi)
    }

    fn read_bracket(
        &self,
        entries: &[CoeffEntry],
        field: &str,
        target: &mut DullStructure,
    ) -> Result<()> {
        let mut seen = BTreeSet::new();
        for e in entries {
            if !(1 <= e.i && e.i < e.j && e.j <= self.rank) {
                return Err(Error::InvalidDocument(format!(
                    "{field}: need 1 <= i < j <= {}, got i={}, j={}",
                    self.rank, e.i, e.j
                )));
            }
            if !(1 <= e.k && e.k <= self.rank) {
                return Err(Error::InvalidDocument(format!(
                    "{field}: output index k={} out of range",
                    e.k
                )));
            }
            if !seen.insert((e.i, e.j, e.k)) {
                return Err(Error::InvalidDocument(format!(
                    "{field}: duplicate entry ({}, {}, {})",
                    e.i, e.j, e.k
                )));
            }
            let p = self.read_poly(&e.value, field)?;
            target.set_bracket(e.i - 1, e.j - 1, e.k - 1, p);
        }
        Ok(())
    }

    fn read_anchor(
        &self,
        entries: &[AnchorEntry],
        field: &str,
        target: &mut DullStructure,
    ) -> Result<()> {
        let mut seen = BTreeSet::new();
        for e in entries {
            if !(1 <= e.i && e.i <= self.rank) {
                return Err(Error::InvalidDocument(format!(
                    "{field}: section index i={} out of range",
                    e.i
                )));
            }
            if !(1 <= e.alpha && e.alpha <= self.base_dim) {
                return Err(Error::InvalidDocument(format!(
                    "{field}: coordinate index alpha={} out of range",
                    e.alpha
                )));
            }
            if !seen.insert((e.i, e.alpha)) {
                return Err(Error::InvalidDocument(format!(
                    "{field}: duplicate entry ({}, {})",
                    e.i, e.alpha
                )));
            }
            let p = self.read_poly(&e.value, field)?;
            target.set_anchor(e.i - 1, e.alpha - 1, p);
        }
        Ok(())
    }

    fn read_trivector<S: crate::exterior::Side>(
        &self,
        entries: &[CoeffEntry],
        field: &str,
    ) -> Result<crate::exterior::Exterior<S>> {
        let mut seen = BTreeSet::new();
        let mut out = crate::exterior::Exterior::<S>::zero(self.rank, self.base_dim);
        for e in entries {
            if !(1 <= e.i && e.i < e.j && e.j < e.k && e.k <= self.rank) {
                return Err(Error::InvalidDocument(format!(
                    "{field}: need 1 <= i < j < k <= {}, got ({}, {}, {})",
                    self.rank, e.i, e.j, e.k
                )));
            }
            if !seen.insert((e.i, e.j, e.k)) {
                return Err(Error::InvalidDocument(format!(
                    "{field}: duplicate entry ({}, {}, {})",
                    e.i, e.j, e.k
                )));
            }
            let mask = (1u32 << (e.i - 1)) | (1u32 << (e.j - 1)) | (1u32 << (e.k - 1));
            let p = self.read_poly(&e.value, field)?;
            out = out.add(&crate::exterior::Exterior::term(
                self.rank,
                self.base_dim,
                mask,
                p,
            ));
        }
        Ok(out)
    }

    fn read_poly(&self, terms: &[PolyTerm], field: &str) -> Result<Poly> {
        if terms.is_empty() {
            return Err(Error::InvalidDocument(format!(
                "{field}: empty coefficient; omit the entry instead"
            )));
        }
        let mut seen = BTreeSet::new();
        let mut p = Poly::zero(self.base_dim);
        for t in terms {
            if t.exponents.len() != self.base_dim {
                return Err(Error::InvalidDocument(format!(
                    "{field}: exponent vector length {} does not match base_dim {}",
                    t.exponents.len(),
                    self.base_dim
                )));
            }
            if !seen.insert(t.exponents.clone()) {
                return Err(Error::InvalidDocument(format!(
                    "{field}: duplicate monomial {:?}",
                    t.exponents
                )));
            }
            let c = parse_rational_strict(&t.coeff)?;
            p += &Poly::monomial(self.base_dim, t.exponents.clone(), c);
        }
        Ok(p)
    }

    /// Serializes structure data back into a document with entries in a
    /// fixed sorted order, so emission is deterministic.
    pub fn from_proto(p: &ProtoData) -> InputDocument {
        let n = p.rank();
        let m = p.vars();
        let bracket_of = |s: &DullStructure| {
            let mut out = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in 0..n {
                        let c = s.bracket_coeff(i, j, k);
                        if !c.is_zero() {
                            out.push(CoeffEntry {
                                i: i + 1,
                                j: j + 1,
                                k: k + 1,
                                value: poly_terms(c),
                            });
                        }
                    }
                }
            }
            out
        };
        let anchor_of = |s: &DullStructure| {
            let mut out = Vec::new();
            for i in 0..n {
                for alpha in 0..m {
                    let c = s.anchor_coeff(i, alpha);
                    if !c.is_zero() {
                        out.push(AnchorEntry {
                            i: i + 1,
                            alpha: alpha + 1,
                            value: poly_terms(c),
                        });
                    }
                }
            }
            out
        };
        let trivector_of = |terms: Vec<(u32, Poly)>| {
            let mut out = Vec::new();
            for (mask, c) in terms {
                let mut idx = Vec::new();
                for b in 0..n {
                    if mask & (1 << b) != 0 {
                        idx.push(b + 1);
                    }
                }
                out.push(CoeffEntry {
                    i: idx[0],
                    j: idx[1],
                    k: idx[2],
                    value: poly_terms(&c),
                });
            }
            out
        };
        InputDocument {
            base_dim: m,
            rank: n,
            bracket: bracket_of(p.a()),
            anchor: anchor_of(p.a()),
            dual_bracket: bracket_of(p.star()),
            dual_anchor: anchor_of(p.star()),
            tau: trivector_of(p.tau().terms().map(|(k, v)| (k, v.clone())).collect()),
            phi: trivector_of(p.phi().terms().map(|(k, v)| (k, v.clone())).collect()),
        }
    }
}

fn poly_terms(p: &Poly) -> Vec<PolyTerm> {
    p.terms()
        .map(|(e, c)| PolyTerm {
            exponents: e.clone(),
            coeff: c.to_string(),
        })
        .collect()
}

fn canonical_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

/// Parses a rational in canonical form only: lowest terms, positive
/// denominator, no `/1`, no leading zeros, no `-0`.
pub fn parse_rational_strict(s: &str) -> Result<Rational> {
    let reject = |msg: &str| Err(Error::NonCanonicalRational(format!("{s:?}: {msg}")));
    let (num_str, den_str) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let bare = num_str.strip_prefix('-').unwrap_or(num_str);
    if !canonical_digits(bare) {
        return reject("numerator is not a canonical integer");
    }
    if num_str.starts_with('-') && bare == "0" {
        return reject("negative zero");
    }
    let num = BigInt::from_str(num_str).expect("digits parse");
    let den = match den_str {
        None => BigInt::from(1),
        Some(d) => {
            if !canonical_digits(d) {
                return reject("denominator is not a canonical integer");
            }
            if d == "0" {
                return reject("zero denominator");
            }
            if d == "1" {
                return reject("redundant /1");
            }
            let den = BigInt::from_str(d).expect("digits parse");
            if num.gcd(&den) != BigInt::from(1) {
                return reject("not in lowest terms");
            }
            den
        }
    };
    Ok(Rational::new_raw(num, den))
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
    context: &'static str,
}

#[derive(Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Coord(usize),
    VecGen(usize),
    FormGen(usize),
    Plus,
    Minus,
    Star,
    Caret,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, context: &'static str) -> Self {
        Lexer {
            text: text.as_bytes(),
            pos: 0,
            context,
        }
    }

    fn error<T>(&self, message: String) -> Result<T> {
        Err(Error::Parse {
            context: self.context,
            message,
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn read_uint(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(format!("expected digits at byte {}", start));
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
        s.parse::<usize>().map_err(|_| Error::Parse {
            context: self.context,
            message: format!("integer {s} too large"),
        })
    }

    fn next(&mut self) -> Result<Option<Tok>> {
        self.skip_ws();
        if self.pos >= self.text.len() {
            return Ok(None);
        }
        let b = self.text[self.pos];
        let tok = match b {
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            // the Display impls join factors with a middle dot
            0xc2 if self.text.get(self.pos + 1) == Some(&0xb7) => {
                self.pos += 2;
                Tok::Star
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'q' => {
                self.pos += 1;
                Tok::Coord(self.read_uint()?)
            }
            b'e' => {
                self.pos += 1;
                if self.pos < self.text.len() && self.text[self.pos] == b'^' {
                    self.pos += 1;
                    Tok::FormGen(self.read_uint()?)
                } else {
                    Tok::VecGen(self.read_uint()?)
                }
            }
            b'0'..=b'9' => {
                let num = self.read_uint()?;
                self.skip_ws();
                if self.pos < self.text.len() && self.text[self.pos] == b'/' {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.read_uint()?;
                    if den == 0 {
                        return self.error("zero denominator".into());
                    }
                    Tok::Num(Rational::new(BigInt::from(num), BigInt::from(den)))
                } else {
                    Tok::Num(Rational::from_integer(BigInt::from(num)))
                }
            }
            other => {
                return self.error(format!("unexpected character {:?}", other as char));
            }
        };
        Ok(Some(tok))
    }

    fn peek(&mut self) -> Result<Option<Tok>> {
        let save = self.pos;
        let tok = self.next()?;
        self.pos = save;
        Ok(tok)
    }
}

/// One summand: a polynomial coefficient and at most one frame generator.
struct Term {
    coeff: Poly,
    gen: Option<(bool, usize)>, // (is_form, zero-based index)
}

fn set_gen(
    lx: &Lexer<'_>,
    gen: &mut Option<(bool, usize)>,
    rank: usize,
    is_form: bool,
    idx: usize,
) -> Result<()> {
    if idx == 0 || idx > rank {
        return lx.error(format!("generator index {idx} out of range (rank {rank})"));
    }
    if gen.is_some() {
        return lx.error("more than one generator in a product".into());
    }
    *gen = Some((is_form, idx - 1));
    Ok(())
}

fn parse_term(lx: &mut Lexer<'_>, rank: usize, vars: usize) -> Result<Term> {
    let mut coeff = Poly::one(vars);
    let mut gen: Option<(bool, usize)> = None;
    loop {
        let tok = match lx.next()? {
            Some(t) => t,
            None => return lx.error("expected a factor".into()),
        };
        match tok {
            Tok::Num(c) => coeff = coeff.scale(&c),
            Tok::Coord(idx) => {
                if idx == 0 || idx > vars {
                    return lx.error(format!("coordinate q{idx} out of range (base has {vars})"));
                }
                let mut pow = 1;
                if let Some(Tok::Caret) = lx.peek()? {
                    lx.next()?;
                    match lx.next()? {
                        Some(Tok::Num(p)) if p.is_integer() => {
                            pow = p.to_integer().try_into().map_err(|_| Error::Parse {
                                context: lx.context,
                                message: "exponent out of range".into(),
                            })?;
                        }
                        _ => return lx.error("expected an integer exponent after ^".into()),
                    }
                }
                let mut exps = vec![0u32; vars];
                exps[idx - 1] = pow;
                coeff = &coeff * &Poly::monomial(vars, exps, int(1));
            }
            Tok::VecGen(idx) => set_gen(lx, &mut gen, rank, false, idx)?,
            Tok::FormGen(idx) => set_gen(lx, &mut gen, rank, true, idx)?,
            other => {
                return lx.error(format!("unexpected token {other:?} in a product"));
            }
        }
        match lx.peek()? {
            Some(Tok::Star) => {
                lx.next()?;
            }
            _ => break,
        }
    }
    Ok(Term { coeff, gen })
}

fn parse_sum(
    lx: &mut Lexer<'_>,
    rank: usize,
    vars: usize,
    mut sink: impl FnMut(&mut Lexer<'_>, Term) -> Result<()>,
) -> Result<()> {
    let mut negate = false;
    match lx.peek()? {
        Some(Tok::Minus) => {
            lx.next()?;
            negate = true;
        }
        Some(Tok::Plus) => {
            lx.next()?;
        }
        _ => {}
    }
    loop {
        let mut term = parse_term(lx, rank, vars)?;
        if negate {
            term.coeff = term.coeff.scale(&int(-1));
        }
        sink(lx, term)?;
        match lx.next()? {
            None => return Ok(()),
            Some(Tok::Plus) => negate = false,
            Some(Tok::Minus) => negate = true,
            Some(other) => {
                return lx.error(format!("expected + or - between terms, found {other:?}"));
            }
        }
    }
}

/// Parses expressions like `q1`, `2*q1*q2`, `1/2*q1^2 + 3 - q2`.
pub fn parse_poly(text: &str, vars: usize) -> Result<Poly> {
    let mut lx = Lexer::new(text, "polynomial expression");
    let mut out = Poly::zero(vars);
    parse_sum(&mut lx, 0, vars, |lx, term| {
        if term.gen.is_some() {
            return lx.error("generators are not allowed in a polynomial".into());
        }
        out += &term.coeff;
        Ok(())
    })?;
    Ok(out)
}

/// Parses expressions like `e1`, `e^2`, `1/2*q1*e2 - e^3`. Every summand
/// must carry exactly one generator unless it is literally zero.
pub fn parse_section(text: &str, rank: usize, vars: usize) -> Result<SplitSection> {
    let mut lx = Lexer::new(text, "section expression");
    let mut vec = MultiVec::zero(rank, vars);
    let mut form = Form::zero(rank, vars);
    parse_sum(&mut lx, rank, vars, |lx, term| {
        match term.gen {
            Some((false, idx)) => {
                vec = vec.add(&MultiVec::term(rank, vars, 1 << idx, term.coeff));
            }
            Some((true, idx)) => {
                form = form.add(&Form::term(rank, vars, 1 << idx, term.coeff));
            }
            None => {
                if !term.coeff.is_zero() {
                    return lx.error("summand without a generator".into());
                }
            }
        }
        Ok(())
    })?;
    Ok(SplitSection::new(vec, form))
}
