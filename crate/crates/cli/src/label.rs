//! Isogeny-class labels `g.q.tok_tok_...`.
//!
//! Token `i` encodes `a_i` in base 26 with letters `a = 0 .. z = 25`; a
//! leading `a` on a token of two or more letters marks a negative value. The
//! polynomial is `t^2g + a_1 t^(2g-1) + ... + a_g t^g + ...`, the remaining
//! coefficients following from the functional equation. The `negated`
//! convention flips the sign of every `a_i`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;
use weil_core::weil_poly::PrimePower;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("label {0:?} must have the form g.q.tokens")]
    Shape(String),
    #[error("bad dimension {0:?}")]
    Dimension(String),
    #[error("bad field size {0:?}")]
    FieldSize(String),
    #[error("bad coefficient token {0:?}")]
    Token(String),
    #[error("expected {expected} coefficient tokens, found {found}")]
    TokenCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelConvention {
    #[default]
    Lmfdb,
    Negated,
}

impl FromStr for LabelConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lmfdb" => Ok(Self::Lmfdb),
            "negated" => Ok(Self::Negated),
            _ => Err(format!("unknown label convention {s:?} (lmfdb, negated)")),
        }
    }
}

impl fmt::Display for LabelConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Lmfdb => "lmfdb",
            Self::Negated => "negated",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub g: usize,
    pub q: PrimePower,
    /// `a_1, ..., a_g` as coefficients of the polynomial.
    pub a: Vec<BigInt>,
}

fn decode_token(tok: &str) -> Result<BigInt, LabelError> {
    let bad = || LabelError::Token(tok.to_string());
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_lowercase()) {
        return Err(bad());
    }
    let (negative, digits) = match tok.strip_prefix('a') {
        Some(rest) if !rest.is_empty() => (true, rest),
        _ => (false, tok),
    };
    if negative && digits.starts_with('a') {
        return Err(bad());
    }
    let value = digits
        .bytes()
        .fold(BigInt::zero(), |acc, b| acc * 26 + u32::from(b - b'a'));
    Ok(if negative { -value } else { value })
}

fn encode_token(x: &BigInt) -> String {
    let mut n = x.abs();
    let mut letters = Vec::new();
    loop {
        let d = (&n % 26u32).to_u8().expect("digit below 26");
        letters.push(b'a' + d);
        n /= 26u32;
        if n.is_zero() {
            break;
        }
    }
    if x.is_negative() {
        letters.push(b'a');
    }
    letters.reverse();
    String::from_utf8(letters).expect("ascii letters")
}

impl Label {
    pub fn parse(s: &str, convention: LabelConvention) -> Result<Self, LabelError> {
        let mut parts = s.trim().splitn(3, '.');
        let (Some(g), Some(q), Some(toks)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(LabelError::Shape(s.to_string()));
        };
        let g: usize = g.parse().ok().filter(|&g| g >= 1).ok_or_else(|| LabelError::Dimension(g.to_string()))?;
        let q: PrimePower = q.parse().map_err(|_| LabelError::FieldSize(q.to_string()))?;
        let mut a = toks.split('_').map(decode_token).collect::<Result<Vec<_>, _>>()?;
        if a.len() != g {
            return Err(LabelError::TokenCount { expected: g, found: a.len() });
        }
        if convention == LabelConvention::Negated {
            a.iter_mut().for_each(|x| *x = -&*x);
        }
        Ok(Self { g, q, a })
    }

    /// Label of a polynomial given lowest degree first.
    pub fn from_coeffs(coeffs: &[BigInt], q: PrimePower) -> Self {
        let g = (coeffs.len() - 1) / 2;
        let a = (1..=g).map(|i| coeffs[2 * g - i].clone()).collect();
        Self { g, q, a }
    }

    /// Coefficients lowest degree first.
    pub fn coeffs(&self) -> Vec<BigInt> {
        let g = self.g;
        let qb = self.q.big();
        let mut c = vec![BigInt::zero(); 2 * g + 1];
        c[2 * g] = BigInt::from(1);
        for (i, a) in self.a.iter().enumerate() {
            c[2 * g - (i + 1)] = a.clone();
        }
        for j in 0..g {
            c[j] = qb.pow((g - j) as u32) * &c[2 * g - j];
        }
        c
    }

    pub fn format(&self, convention: LabelConvention) -> String {
        let toks: Vec<String> = self
            .a
            .iter()
            .map(|x| match convention {
                LabelConvention::Lmfdb => encode_token(x),
                LabelConvention::Negated => encode_token(&-x),
            })
            .collect();
        format!("{}.{}.{}", self.g, self.q.big(), toks.join("_"))
    }
}
