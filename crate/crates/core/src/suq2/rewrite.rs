//! Normal forms of words in `α, α*, γ, γ*` by string rewriting.
//!
//! Rules, each rewriting an adjacent pair:
//!
//! ```text
//! γ α  → q⁻¹ α γ       γ* α  → q⁻¹ α γ*
//! γ α* → q α* γ        γ* α* → q α* γ*
//! α* α → 1 − γ γ*      α α*  → 1 − q² γ γ*
//! γ* γ → γ γ*
//! ```
//!
//! Irreducible words are exactly `α^{(k)} γ^m γ*^n`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::{check_q, Mono, SUq2Element};
use crate::bialgebra::Element;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, parse_scalar, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    AStar,
    G,
    GStar,
}

impl Letter {
    pub fn symbol(self) -> &'static str {
        match self {
            Letter::A => "a",
            Letter::AStar => "a*",
            Letter::G => "g",
            Letter::GStar => "g*",
        }
    }
}

pub type Word = Vec<Letter>;

/// Which redex to contract first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

fn rule(q: &BigRational, x: Letter, y: Letter) -> Option<Vec<(ExactScalar, Word)>> {
    use Letter::*;
    let qs = ExactScalar::real(q.clone());
    let one = ExactScalar::one();
    Some(match (x, y) {
        (G, A) => vec![(qs.powi(-1), vec![A, G])],
        (GStar, A) => vec![(qs.powi(-1), vec![A, GStar])],
        (G, AStar) => vec![(qs, vec![AStar, G])],
        (GStar, AStar) => vec![(qs, vec![AStar, GStar])],
        (AStar, A) => vec![(one, vec![]), (-ExactScalar::one(), vec![G, GStar])],
        (A, AStar) => vec![(one, vec![]), (-qs.powi(2), vec![G, GStar])],
        (GStar, G) => vec![(one, vec![G, GStar])],
        _ => return None,
    })
}

fn find_redex(q: &BigRational, w: &[Letter], strategy: Strategy) -> Option<(usize, Vec<(ExactScalar, Word)>)> {
    let hit = |i: usize| rule(q, w[i], w[i + 1]).map(|r| (i, r));
    let n = w.len().saturating_sub(1);
    match strategy {
        Strategy::Leftmost => (0..n).find_map(hit),
        Strategy::Rightmost => (0..n).rev().find_map(hit),
    }
}

fn to_mono(w: &[Letter]) -> Mono {
    let mut mono = Mono::ONE;
    for l in w {
        match l {
            Letter::A => mono.k += 1,
            Letter::AStar => mono.k -= 1,
            Letter::G => mono.m += 1,
            Letter::GStar => mono.n += 1,
        }
    }
    mono
}

/// Rewrites a linear combination of words to the PBW basis.
pub fn rewrite(q: &BigRational, terms: &[(ExactScalar, Word)], strategy: Strategy) -> Element<Mono> {
    let mut pending: BTreeMap<Word, ExactScalar> = BTreeMap::new();
    for (c, w) in terms {
        *pending.entry(w.clone()).or_insert_with(ExactScalar::zero) += c;
    }
    let mut out = Element::zero();
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        match find_redex(q, &w, strategy) {
            None => out.add_term(to_mono(&w), c),
            Some((i, replacements)) => {
                for (d, middle) in replacements {
                    let mut next = w[..i].to_vec();
                    next.extend(middle);
                    next.extend_from_slice(&w[i + 2..]);
                    *pending.entry(next).or_insert_with(ExactScalar::zero) += &(&c * &d);
                }
            }
        }
    }
    out
}

/// Parses text such as `2 a g* - (1/2+i) a* a + 1`.
///
/// Letters are `a`, `a*`, `g`, `g*` (or `α`, `α*`, `γ`, `γ*`); coefficients are
/// rationals or parenthesized complex rationals; terms are joined by `+`/`-`.
pub fn parse_word(text: &str) -> Result<Vec<(ExactScalar, Word)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut terms = Vec::new();
    let mut coeff = ExactScalar::one();
    let mut word = Word::new();
    let mut nonempty = false;
    let mut i = 0;
    let bad = |msg: String| Error::Parse(format!("{msg} in {text:?}"));
    while i < chars.len() {
        let ch = chars[i];
        match ch {
            c if c.is_whitespace() || c == '·' => i += 1,
            '+' | '-' => {
                if nonempty {
                    terms.push((coeff, std::mem::take(&mut word)));
                    coeff = ExactScalar::one();
                    nonempty = false;
                } else if !terms.is_empty() || coeff != ExactScalar::one() {
                    return Err(bad(format!("dangling sign at offset {i}")));
                }
                if ch == '-' {
                    coeff = -coeff;
                }
                i += 1;
            }
            '(' => {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ')')
                    .ok_or_else(|| bad("unclosed parenthesis".into()))?;
                let inner: String = chars[i..=i + close].iter().collect();
                coeff = &coeff * &parse_scalar(&inner)?;
                nonempty = true;
                i += close + 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                if i < chars.len() && (chars[i] == '.' || chars[i] == 'e' || chars[i] == 'E') {
                    return Err(bad("floating-point coefficient".into()));
                }
                let lit: String = chars[start..i].iter().collect();
                coeff = &coeff * &ExactScalar::real(parse_rational(&lit)?);
                nonempty = true;
            }
            'a' | 'α' | 'g' | 'γ' => {
                let starred = chars.get(i + 1) == Some(&'*');
                let letter = match (ch, starred) {
                    ('a' | 'α', false) => Letter::A,
                    ('a' | 'α', true) => Letter::AStar,
                    (_, false) => Letter::G,
                    (_, true) => Letter::GStar,
                };
                word.push(letter);
                nonempty = true;
                i += if starred { 2 } else { 1 };
            }
            other => return Err(bad(format!("unexpected character {other:?}"))),
        }
    }
    if !nonempty {
        return Err(bad("empty term".into()));
    }
    terms.push((coeff, word));
    Ok(terms)
}

/// Normal form of a textual word combination at parameter `q`.
pub fn normal_form(text: &str, q: &BigRational) -> Result<SUq2Element> {
    check_q(q)?;
    let terms = parse_word(text)?;
    Ok(SUq2Element::new(q.clone(), rewrite(q, &terms, Strategy::Leftmost)))
}
