//! Text grammar for forms: terms `c*x<i>^e*x<j>...` joined by `+`/`-`.
//! Whitespace is ignored, `−` is accepted as a minus sign and variables are
//! numbered from 1.

use super::form::Form;
use super::monomial::Monomial;
use crate::algebra::Field;
use crate::error::{Error, Result};

pub const MAX_VARS: usize = 64;

struct RawTerm<E> {
    coeff: E,
    exps: Vec<(usize, u16)>,
    column: usize,
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        let chars = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Lexer {
            chars,
            pos: 0,
            line,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.chars.last().map_or(1, |&(i, _)| i + 1))
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('−') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }
}

fn parse_terms<F: Field>(f: &F, src: &str, line: usize) -> Result<Vec<RawTerm<F::Elem>>> {
    let mut lx = Lexer::new(src, line);
    if lx.peek().is_none() {
        return Err(lx.error("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut first = true;
    while lx.peek().is_some() {
        let column = lx.column();
        let negative = match lx.sign() {
            Some(n) => n,
            None if first => false,
            None => return Err(lx.error("expected `+` or `-`")),
        };
        first = false;
        let mut coeff = f.one();
        let mut exps: Vec<(usize, u16)> = Vec::new();
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let col = lx.column();
                    let mut lit = lx.digits().expect("digit present");
                    if lx.peek() == Some('/') {
                        lx.pos += 1;
                        let den = lx.digits().ok_or_else(|| lx.error("expected a denominator"))?;
                        lit = format!("{lit}/{den}");
                    }
                    let c = f.parse_elem(&lit).map_err(|e| Error::Parse {
                        line,
                        column: col,
                        message: e.to_string(),
                    })?;
                    coeff = f.mul(&coeff, &c);
                }
                Some('x') | Some('X') => {
                    lx.pos += 1;
                    let col = lx.column();
                    let idx: usize = lx
                        .digits()
                        .ok_or_else(|| lx.error("expected a variable index after `x`"))?
                        .parse()
                        .map_err(|_| lx.error("variable index too large"))?;
                    if idx == 0 || idx > MAX_VARS {
                        return Err(Error::Parse {
                            line,
                            column: col,
                            message: format!("variable index must be in 1..={MAX_VARS}"),
                        });
                    }
                    let mut e = 1u16;
                    if lx.peek() == Some('^') {
                        lx.pos += 1;
                        e = lx
                            .digits()
                            .ok_or_else(|| lx.error("expected an exponent"))?
                            .parse()
                            .map_err(|_| lx.error("exponent too large"))?;
                    }
                    exps.push((idx - 1, e));
                }
                Some(c) => return Err(lx.error(format!("unexpected `{c}`"))),
                None => return Err(lx.error("unexpected end of input")),
            }
            if lx.peek() == Some('*') {
                lx.pos += 1;
                continue;
            }
            break;
        }
        if negative {
            coeff = f.neg(&coeff);
        }
        terms.push(RawTerm {
            coeff,
            exps,
            column,
        });
    }
    Ok(terms)
}

fn max_var<E>(terms: &[RawTerm<E>]) -> usize {
    terms
        .iter()
        .flat_map(|t| t.exps.iter().map(|&(i, _)| i + 1))
        .max()
        .unwrap_or(0)
}

fn assemble<F: Field>(f: &F, terms: Vec<RawTerm<F::Elem>>, nvars: usize, line: usize) -> Result<Form<F::Elem>> {
    let mut degree = None;
    let mut out: Option<Form<F::Elem>> = None;
    for t in terms {
        let mut e = vec![0u16; nvars];
        for (i, k) in t.exps {
            if i >= nvars {
                return Err(Error::Parse {
                    line,
                    column: t.column,
                    message: format!("variable x{} exceeds the declared {nvars} variables", i + 1),
                });
            }
            e[i] += k;
        }
        let m = Monomial::new(e);
        let d = m.degree();
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => {
                return Err(Error::Parse {
                    line,
                    column: t.column,
                    message: format!("term of degree {d} in a form of degree {d0}; forms must be homogeneous"),
                })
            }
            _ => {}
        }
        out.get_or_insert_with(|| Form::zero(nvars, d)).add_term(f, m, t.coeff);
    }
    Ok(out.unwrap_or_else(|| Form::zero(nvars, 0)))
}

/// Parses one form; the ring has as many variables as the largest index used.
pub fn parse_form<F: Field>(f: &F, src: &str) -> Result<Form<F::Elem>> {
    let terms = parse_terms(f, src, 1)?;
    let n = max_var(&terms);
    assemble(f, terms, n, 1)
}

/// Parses one form in a ring with exactly `nvars` variables.
pub fn parse_form_in<F: Field>(f: &F, src: &str, nvars: usize) -> Result<Form<F::Elem>> {
    let terms = parse_terms(f, src, 1)?;
    assemble(f, terms, nvars, 1)
}

/// Parses one form per line, skipping blank lines and `#` comments. All forms
/// share a ring whose size is `nvars` or, if absent, the largest index used.
pub fn parse_forms_in<F: Field>(f: &F, src: &str, nvars: Option<usize>) -> Result<Vec<Form<F::Elem>>> {
    let mut parsed = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        if text.trim().is_empty() {
            continue;
        }
        parsed.push((k + 1, parse_terms(f, text, k + 1)?));
    }
    let n = nvars.unwrap_or_else(|| parsed.iter().map(|(_, t)| max_var(t)).max().unwrap_or(0));
    parsed
        .into_iter()
        .map(|(line, terms)| assemble(f, terms, n, line))
        .collect()
}

pub fn parse_forms<F: Field>(f: &F, src: &str) -> Result<Vec<Form<F::Elem>>> {
    parse_forms_in(f, src, None)
}
