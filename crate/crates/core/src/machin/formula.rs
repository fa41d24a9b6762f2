use std::fmt;
use std::str::FromStr;

use crate::bigfixed::{BigInt, MulPolicy};
use crate::error::{Error, Result};

/// One term cᵢ·arctan(1/nᵢ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArctanTerm {
    pub coeff: i64,
    pub recip_arg: u64,
}

impl ArctanTerm {
    pub fn new(coeff: i64, recip_arg: u64) -> Result<Self> {
        if coeff == 0 {
            return Err(Error::InvalidFormula("zero coefficient".into()));
        }
        if recip_arg < 2 {
            return Err(Error::InvalidFormula(format!("atan(1/{recip_arg}) needs a reciprocal argument >= 2")));
        }
        Ok(ArctanTerm { coeff, recip_arg })
    }
}

/// A claimed identity π/4 = Σ cᵢ·arctan(1/nᵢ). Nothing is assumed about
/// its truth; see [`formula_validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachinFormula {
    name: String,
    terms: Vec<ArctanTerm>,
}

const BUILTIN: &[(&str, &[(i64, u64)])] = &[
    ("machin", &[(4, 5), (-1, 239)]),
    ("euler", &[(1, 2), (1, 3)]),
    ("gauss3", &[(12, 18), (8, 57), (-5, 239)]),
];

impl MachinFormula {
    pub fn new(name: impl Into<String>, terms: Vec<ArctanTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidFormula("formula has no terms".into()));
        }
        Ok(MachinFormula { name: name.into(), terms })
    }

    /// `machin`, `euler` or `gauss3`.
    pub fn builtin(name: &str) -> Option<Self> {
        BUILTIN.iter().find(|(n, _)| *n == name).map(|(n, terms)| MachinFormula {
            name: n.to_string(),
            terms: terms.iter().map(|&(coeff, recip_arg)| ArctanTerm { coeff, recip_arg }).collect(),
        })
    }

    pub fn builtin_names() -> impl Iterator<Item = &'static str> {
        BUILTIN.iter().map(|(n, _)| *n)
    }

    /// A registry name, or else formula text.
    pub fn from_name_or_expr(s: &str) -> Result<Self> {
        match Self::builtin(s.trim()) {
            Some(f) => Ok(f),
            None => s.parse(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &[ArctanTerm] {
        &self.terms
    }

    /// Σ cᵢ·arctan(1/nᵢ) in machine floats.
    pub fn approx_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff as f64 * (1.0 / t.recip_arg as f64).atan()).sum()
    }
}

impl fmt::Display for MachinFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let c = t.coeff;
            match (i, c < 0) {
                (0, false) => write!(f, "{c}")?,
                (0, true) => write!(f, "-{}", c.unsigned_abs())?,
                (_, false) => write!(f, " + {c}")?,
                (_, true) => write!(f, " - {}", c.unsigned_abs())?,
            }
            write!(f, "*atan(1/{})", t.recip_arg)?;
        }
        Ok(())
    }
}

/// Parses text such as `4*atan(1/5) - 1*atan(1/239)`. Whitespace is
/// ignored; a missing coefficient means 1.
impl FromStr for MachinFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::InvalidFormula(format!("{why} in `{s}`"));
        let mut rest = text.as_str();
        let mut terms = Vec::new();
        while !rest.is_empty() {
            let mut negative = false;
            let mut signs = 0;
            while let Some(c) = rest.chars().next().filter(|c| *c == '+' || *c == '-') {
                negative ^= c == '-';
                signs += 1;
                rest = &rest[1..];
            }
            if signs == 0 && !terms.is_empty() {
                return Err(bad("expected `+` or `-` between terms"));
            }
            if signs > 1 {
                return Err(bad("repeated sign"));
            }
            let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
            let magnitude: i64 = if digits == 0 {
                1
            } else {
                let m = rest[..digits].parse().map_err(|_| bad("coefficient out of range"))?;
                rest = rest[digits..].strip_prefix('*').ok_or_else(|| bad("expected `*` after coefficient"))?;
                m
            };
            rest = rest.strip_prefix("atan(1/").ok_or_else(|| bad("expected `atan(1/n)`"))?;
            let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
            let n: u64 = rest[..digits].parse().map_err(|_| bad("expected an integer reciprocal argument"))?;
            rest = rest[digits..].strip_prefix(')').ok_or_else(|| bad("expected `)`"))?;
            let coeff = if negative { -magnitude } else { magnitude };
            terms.push(ArctanTerm::new(coeff, n)?);
        }
        MachinFormula::new(text, terms)
    }
}

// Gaussian integer x + iy.
#[derive(Clone)]
struct Gaussian {
    re: BigInt,
    im: BigInt,
}

impl Gaussian {
    fn one() -> Self {
        Gaussian { re: BigInt::from_i64(1), im: BigInt::zero() }
    }

    fn mul(&self, other: &Gaussian) -> Gaussian {
        let p = MulPolicy::Auto;
        Gaussian {
            re: &self.re.mul(&other.re, p) - &self.im.mul(&other.im, p),
            im: &self.re.mul(&other.im, p) + &self.im.mul(&other.re, p),
        }
    }

    fn conj(&self) -> Gaussian {
        Gaussian { re: self.re.clone(), im: -&self.im }
    }

    fn pow(&self, mut e: u64) -> Gaussian {
        let mut base = self.clone();
        let mut acc = Gaussian::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// True iff π/4 = Σ cᵢ·arctan(1/nᵢ) exactly.
///
/// arg(n + i) = arctan(1/n), so the identity holds modulo 2π exactly when
/// Π (nᵢ + i)^cᵢ is a positive real multiple of 1 + i. Negative powers are
/// moved to the other side as conjugates to stay within Gaussian integers.
/// A float check that the sum lies within 0.1 of π/4 rules out the aliases
/// π/4 + 2πm.
pub fn formula_validate(f: &MachinFormula) -> bool {
    if f.terms.is_empty() || f.terms.iter().any(|t| t.coeff == 0 || t.recip_arg < 2) {
        return false;
    }
    let mut prod = Gaussian::one();
    for t in &f.terms {
        let z = Gaussian { re: BigInt::from_natural(t.recip_arg.into()), im: BigInt::from_i64(1) };
        let factor = if t.coeff > 0 { z } else { z.conj() };
        prod = prod.mul(&factor.pow(t.coeff.unsigned_abs()));
    }
    let on_diagonal = prod.re.is_positive() && prod.re == prod.im;
    on_diagonal && (f.approx_sum() - std::f64::consts::FRAC_PI_4).abs() < 0.1
}
