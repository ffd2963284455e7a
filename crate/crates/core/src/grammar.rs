//! Text and JSON syntax for elements, plus the two configuration file
//! formats.
//!
//! Abelian elements are `0` or whitespace-separated signed monomials like
//! `a0^2 b0^-1 c3` (`a`/`b`/`c` for the three generator kinds, exponents
//! defaulting to 1). Words are whitespace-separated tokens `u<i>`,
//! `v<i>[<abelian>]`, ..., `z<i>[<abelian>]`, each optionally suffixed
//! `^-1`, with `e` for the empty word. Group elements read
//! `( <word> ; <abelian> )`. Parsing normalizes: words are freely reduced,
//! coset labels and tails canonicalized, so render-parse round-trips are
//! exact.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::abelian::{
    AbelianElement, GeneratorId, GeneratorKind, Group, PsiTable, PsiTableError, PsiValue,
    QuotientSpec,
};
use crate::freewords::{Family, ReducedWord, Sign, SignedLetter};
use crate::orders::{OrderConfig, OrderConfigError, SignTriple};

/// Parse failure with the byte position and what was expected there.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: expected {expected}, found {found}")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid stage table: {0}")]
    Psi(#[from] PsiTableError),
    #[error("invalid order configuration: {0}")]
    Order(#[from] OrderConfigError),
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char, expected: &str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn error(&self, expected: &str) -> ParseError {
        let found = match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        ParseError { position: self.pos, expected: expected.to_string(), found }
    }

    fn at_end(&self) -> bool {
        self.peek().is_none()
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("a digit"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn index(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let digits = self.digits()?;
        digits.parse::<u32>().map_err(|_| ParseError {
            position: start,
            expected: "an index fitting in 32 bits".to_string(),
            found: digits.to_string(),
        })
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let negative = self.eat('-');
        let digits = self.digits()?;
        let mut n = BigInt::from_str(digits).expect("digits parse as an integer");
        if negative {
            n = -n;
        }
        Ok(n)
    }
}

fn parse_abelian_expr(
    sc: &mut Scanner<'_>,
    terminators: &[char],
) -> Result<AbelianElement, ParseError> {
    let at_boundary = |sc: &Scanner<'_>| match sc.peek() {
        None => true,
        Some(c) => terminators.contains(&c),
    };
    sc.skip_ws();
    if sc.eat('0') {
        sc.skip_ws();
        if at_boundary(sc) {
            return Ok(AbelianElement::zero());
        }
        return Err(sc.error("nothing after the zero element"));
    }
    let mut terms: Vec<(GeneratorId, BigInt)> = Vec::new();
    loop {
        sc.skip_ws();
        if at_boundary(sc) {
            break;
        }
        let kind = match sc.peek() {
            Some('a') => GeneratorKind::Alpha,
            Some('b') => GeneratorKind::Beta,
            Some('c') => GeneratorKind::Gamma,
            _ => return Err(sc.error("a generator 'a', 'b' or 'c'")),
        };
        sc.bump();
        let index = sc.index()?;
        let coeff = if sc.eat('^') { sc.integer()? } else { BigInt::one() };
        terms.push((GeneratorId { index, kind }, coeff));
    }
    if terms.is_empty() {
        return Err(sc.error("'0' or at least one monomial"));
    }
    Ok(AbelianElement::from_terms(terms))
}

fn parse_word_expr(
    group: &Group,
    sc: &mut Scanner<'_>,
    terminators: &[char],
) -> Result<ReducedWord, ParseError> {
    let at_boundary = |sc: &Scanner<'_>| match sc.peek() {
        None => true,
        Some(c) => terminators.contains(&c),
    };
    let mut letters: Vec<SignedLetter> = Vec::new();
    loop {
        sc.skip_ws();
        if at_boundary(sc) {
            break;
        }
        if sc.eat('e') {
            continue;
        }
        let family = match sc.peek().and_then(Family::from_symbol) {
            Some(f) => f,
            None => return Err(sc.error("a letter 'u'..'z' or 'e'")),
        };
        sc.bump();
        let index = sc.index()?;
        let coset = if family == Family::U {
            if sc.peek() == Some('[') {
                return Err(sc.error("no coset label on a 'u' letter"));
            }
            AbelianElement::zero()
        } else {
            sc.expect('[', "'[' with the coset label")?;
            let label = parse_abelian_expr(sc, &[']'])?;
            sc.expect(']', "']'")?;
            label
        };
        let sign = if sc.eat('^') {
            sc.expect('-', "'-1'")?;
            sc.expect('1', "'-1'")?;
            Sign::Neg
        } else {
            Sign::Pos
        };
        letters.push(SignedLetter { letter: group.letter(family, index, coset), sign });
    }
    Ok(ReducedWord::reduce(letters))
}

/// Parses an abelian element, canonicalized in the base quotient.
pub fn parse_abelian(group: &Group, text: &str) -> Result<AbelianElement, ParseError> {
    let mut sc = Scanner::new(text);
    let e = parse_abelian_expr(&mut sc, &[])?;
    sc.skip_ws();
    if !sc.at_end() {
        return Err(sc.error("end of input"));
    }
    Ok(group.normalize(&e, QuotientSpec::R))
}

/// Parses a word; coset labels are canonicalized and the result reduced.
pub fn parse_word(group: &Group, text: &str) -> Result<ReducedWord, ParseError> {
    let mut sc = Scanner::new(text);
    let w = parse_word_expr(group, &mut sc, &[])?;
    sc.skip_ws();
    if !sc.at_end() {
        return Err(sc.error("end of input"));
    }
    Ok(w)
}

/// Parses a group element `( <word> ; <abelian> )` into normal form.
pub fn parse_element(group: &Group, text: &str) -> Result<crate::GroupElement, ParseError> {
    let mut sc = Scanner::new(text);
    sc.skip_ws();
    sc.expect('(', "'('")?;
    let word = parse_word_expr(group, &mut sc, &[';'])?;
    sc.expect(';', "';'")?;
    let tail = parse_abelian_expr(&mut sc, &[')'])?;
    sc.expect(')', "')'")?;
    sc.skip_ws();
    if !sc.at_end() {
        return Err(sc.error("end of input"));
    }
    Ok(group.element(word, tail))
}

pub fn render_abelian(e: &AbelianElement) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    e.terms()
        .iter()
        .map(|(g, c)| {
            if c.is_one() {
                g.to_string()
            } else {
                format!("{g}^{c}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_letter_token(sl: &SignedLetter) -> String {
    let mut out = format!("{}{}", sl.letter.family().symbol(), sl.letter.index());
    if sl.letter.family() != Family::U {
        out.push('[');
        out.push_str(&render_abelian(sl.letter.coset()));
        out.push(']');
    }
    if sl.sign == Sign::Neg {
        out.push_str("^-1");
    }
    out
}

pub fn render_word(w: &ReducedWord) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    w.letters()
        .iter()
        .map(render_letter_token)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_element(r: &crate::GroupElement) -> String {
    format!("( {} ; {} )", render_word(&r.word), render_abelian(&r.tail))
}

/// JSON mirror of a group element: word as a token array, tail as a map
/// from generator names to decimal coefficient strings.
pub fn element_to_json(r: &crate::GroupElement) -> Value {
    let tokens: Vec<Value> = r
        .word
        .letters()
        .iter()
        .map(|sl| Value::String(render_letter_token(sl)))
        .collect();
    let tail: serde_json::Map<String, Value> = r
        .tail
        .terms()
        .iter()
        .map(|(g, c)| (g.to_string(), Value::String(c.to_string())))
        .collect();
    json!({ "word": tokens, "tail": tail })
}

pub fn element_from_json(group: &Group, value: &Value) -> Result<crate::GroupElement, LoadError> {
    let obj = value
        .as_object()
        .ok_or_else(|| LoadError::Shape("element must be a JSON object".into()))?;
    let tokens = obj
        .get("word")
        .and_then(Value::as_array)
        .ok_or_else(|| LoadError::Shape("missing \"word\" array".into()))?;
    let mut text = String::new();
    for t in tokens {
        let s = t
            .as_str()
            .ok_or_else(|| LoadError::Shape("word tokens must be strings".into()))?;
        text.push_str(s);
        text.push(' ');
    }
    if text.is_empty() {
        text.push('e');
    }
    let word = parse_word(group, text.trim())?;

    let tail_obj = obj
        .get("tail")
        .and_then(Value::as_object)
        .ok_or_else(|| LoadError::Shape("missing \"tail\" object".into()))?;
    let mut tail_text = String::new();
    for (k, v) in tail_obj {
        let c = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(LoadError::Shape("tail values must be integers".into())),
        };
        tail_text.push_str(&format!("{k}^{c} "));
    }
    let tail = if tail_text.is_empty() {
        AbelianElement::zero()
    } else {
        parse_abelian(group, tail_text.trim())?
    };
    Ok(group.element(word, tail))
}

#[derive(Deserialize)]
struct PsiFileEntry {
    i: u32,
    t: u32,
    value: u8,
}

#[derive(Deserialize)]
struct PsiFile {
    entries: Vec<PsiFileEntry>,
}

/// Loads a stage table from its JSON file format; duplicate indices,
/// zero stages and values other than 0/1 are load-time errors.
pub fn load_psi(text: &str) -> Result<PsiTable, LoadError> {
    let file: PsiFile = serde_json::from_str(text)?;
    let mut entries = Vec::with_capacity(file.entries.len());
    for e in file.entries {
        let value = match e.value {
            0 => PsiValue::Zero,
            1 => PsiValue::One,
            other => {
                return Err(LoadError::Shape(format!(
                    "value for index {} must be 0 or 1, got {other}",
                    e.i
                )))
            }
        };
        entries.push((e.i, e.t, value));
    }
    Ok(PsiTable::from_entries(entries)?)
}

pub fn psi_to_json(psi: &PsiTable) -> Value {
    let entries: Vec<Value> = psi
        .iter()
        .map(|(i, e)| json!({ "i": i, "t": e.stage, "value": e.value.as_u8() }))
        .collect();
    json!({ "entries": entries })
}

#[derive(Deserialize)]
struct OrderFile {
    default: [i8; 3],
    #[serde(default)]
    overrides: BTreeMap<String, [i8; 3]>,
}

/// Loads an order configuration from its JSON file format. Sign coupling
/// against a stage table is a separate check (`OrderConfig::validate_against`),
/// performed by callers that know the table.
pub fn load_order_config(text: &str) -> Result<OrderConfig, LoadError> {
    let file: OrderFile = serde_json::from_str(text)?;
    let mut overrides: Vec<(u32, SignTriple)> = Vec::with_capacity(file.overrides.len());
    for (k, v) in file.overrides {
        let index: u32 = k
            .parse()
            .map_err(|_| LoadError::Shape(format!("override key {k:?} is not an index")))?;
        overrides.push((index, v));
    }
    Ok(OrderConfig::new(file.default, overrides)?)
}

pub fn order_config_to_json(cfg: &OrderConfig) -> Value {
    let overrides: serde_json::Map<String, Value> = cfg
        .overrides()
        .iter()
        .map(|(i, t)| (i.to_string(), json!([t[0], t[1], t[2]])))
        .collect();
    let d = cfg.default_signs();
    json!({ "default": [d[0], d[1], d[2]], "overrides": overrides })
}
