//! Integer Laurent polynomials in `v`, with `u = v^2`.
//!
//! Storage is dense between the lowest and highest nonzero exponent.
//! Coefficients are `i64` with checked arithmetic; an overflow panics rather
//! than wrapping.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Coeff = i64;

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "RawPoly")]
pub struct LaurentPoly {
    offset: i32,
    coeffs: Vec<Coeff>,
}

#[derive(Deserialize)]
struct RawPoly {
    offset: i32,
    coeffs: Vec<Coeff>,
}

impl From<RawPoly> for LaurentPoly {
    fn from(raw: RawPoly) -> Self {
        LaurentPoly::new(raw.offset, raw.coeffs)
    }
}

fn add_c(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("Laurent coefficient overflow")
}

fn mul_c(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("Laurent coefficient overflow")
}

impl LaurentPoly {
    /// `sum_i coeffs[i] v^(offset + i)`, trimmed.
    pub fn new(offset: i32, coeffs: Vec<Coeff>) -> Self {
        let mut p = LaurentPoly { offset, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.offset = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.offset += lead as i32;
        }
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: Coeff) -> Self {
        LaurentPoly::new(0, vec![c])
    }

    /// `c v^exp`.
    pub fn monomial(c: Coeff, exp: i32) -> Self {
        LaurentPoly::new(exp, vec![c])
    }

    /// `v^k`.
    pub fn v_pow(k: i32) -> Self {
        LaurentPoly::monomial(1, k)
    }

    /// `u^k = v^(2k)`.
    pub fn u_pow(k: i32) -> Self {
        LaurentPoly::monomial(1, 2 * k)
    }

    /// Polynomial in `u` from ascending coefficients.
    pub fn from_u_coeffs(cs: &[Coeff]) -> Self {
        let mut coeffs = vec![0; (2 * cs.len()).saturating_sub(1)];
        for (i, &c) in cs.iter().enumerate() {
            coeffs[2 * i] = c;
        }
        LaurentPoly::new(0, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.offset == 0 && self.coeffs == [1]
    }

    pub fn offset(&self) -> i32 {
        self.offset
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.offset)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.offset + self.coeffs.len() as i32 - 1)
    }

    /// Coefficient of `v^exp`.
    pub fn coeff(&self, exp: i32) -> Coeff {
        let i = exp - self.offset;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, Coeff)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(i, &c)| (self.offset + i as i32, c))
    }

    /// The ring involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        match self.max_exp() {
            None => LaurentPoly::zero(),
            Some(top) => {
                let mut coeffs = self.coeffs.clone();
                coeffs.reverse();
                LaurentPoly { offset: -top, coeffs }
            }
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { offset: self.offset + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: Coeff) -> Self {
        LaurentPoly::new(self.offset, self.coeffs.iter().map(|&x| mul_c(x, c)).collect())
    }

    /// `(part with exponents < 0, part with exponents >= 0)`.
    pub fn split_strict_neg(&self) -> (Self, Self) {
        let mut neg = Vec::new();
        let mut rest = Vec::new();
        for (e, c) in self.terms() {
            if e < 0 {
                neg.push((e, c));
            } else {
                rest.push((e, c));
            }
        }
        (LaurentPoly::from_terms(neg), LaurentPoly::from_terms(rest))
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, Coeff)>>(terms: I) -> Self {
        let terms: Vec<(i32, Coeff)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return LaurentPoly::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![0; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = add_c(*slot, c);
        }
        LaurentPoly::new(lo, coeffs)
    }

    /// True when every exponent is even and nonnegative, i.e. this is a polynomial in `u`.
    pub fn is_u_poly(&self) -> bool {
        self.terms().all(|(e, _)| e >= 0 && e % 2 == 0)
    }

    /// Ascending coefficients in `u`, if this is a polynomial in `u`.
    pub fn u_coeffs(&self) -> Option<Vec<Coeff>> {
        if !self.is_u_poly() {
            return None;
        }
        let Some(top) = self.max_exp() else {
            return Some(Vec::new());
        };
        Some((0..=top / 2).map(|k| self.coeff(2 * k)).collect())
    }

    /// `p(u) -> p(-u)` for a polynomial in `u`.
    pub fn sub_minus_u(&self) -> Result<Self> {
        if !self.is_u_poly() {
            return Err(Error::Domain(format!("{self} is not a polynomial in u")));
        }
        Ok(LaurentPoly::from_terms(
            self.terms().map(|(e, c)| (e, if (e / 2) % 2 == 0 { c } else { -c })),
        ))
    }

    /// Coefficientwise reduction mod 2 (representatives 0 and 1).
    pub fn mod2(&self) -> Self {
        LaurentPoly::new(self.offset, self.coeffs.iter().map(|c| c.rem_euclid(2)).collect())
    }

    /// Value at `v = 1` (equivalently `u = 1`).
    pub fn eval_at_one(&self) -> Coeff {
        self.coeffs.iter().fold(0, |acc, &c| add_c(acc, c))
    }

    /// `v^(2n) -> v^n`; `None` if an odd exponent occurs.
    pub fn halve_exponents(&self) -> Option<Self> {
        if self.terms().any(|(e, _)| e % 2 != 0) {
            return None;
        }
        Some(LaurentPoly::from_terms(self.terms().map(|(e, c)| (e / 2, c))))
    }

    /// `v^n -> v^(2n)`.
    pub fn double_exponents(&self) -> Self {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (2 * e, c)))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in `Z[v, v^-1]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        let mut rem: Vec<Coeff> = self.coeffs.clone();
        let dc = &d.coeffs;
        let dn = dc.len();
        if rem.len() < dn {
            return None;
        }
        let lead = *dc.last().unwrap();
        let qn = rem.len() - dn + 1;
        let mut q = vec![0; qn];
        for i in (0..qn).rev() {
            let top = rem[i + dn - 1];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            q[i] = f;
            for (j, &c) in dc.iter().enumerate() {
                rem[i + j] = add_c(rem[i + j], -mul_c(f, c));
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(LaurentPoly::new(self.offset - d.offset, q))
    }

    /// Parses the human form produced by `Display`, e.g. `1-u+u^2`, `v^-1-v`, `2v^3`.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut c: Coeff = if i > start {
                s[start..i].parse().map_err(|_| Error::Parse(format!("bad coefficient in {s}")))?
            } else {
                1
            };
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            let mut exp = 0;
            if i < bytes.len() && (bytes[i] == b'u' || bytes[i] == b'v') {
                let scale = if bytes[i] == b'u' { 2 } else { 1 };
                i += 1;
                let mut k = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    k = s[es..i]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {s}")))?;
                }
                exp = scale * k;
            } else if i == start {
                return Err(Error::Parse(format!("unexpected character in {s}")));
            }
            c *= sign;
            terms.push((exp, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending powers with explicit signs; written in `u` when every exponent is
    /// even and nonnegative, otherwise in `v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let in_u = self.is_u_poly();
        let (var, div) = if in_u { ('u', 2) } else { ('v', 1) };
        for (n, (e, c)) in self.terms().enumerate() {
            let k = e / div;
            if c < 0 {
                write!(f, "-")?;
            } else if n > 0 {
                write!(f, "+")?;
            }
            let a = c.unsigned_abs();
            if k == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if a != 1 {
                write!(f, "{a}")?;
            }
            if k == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn add_into(a: &LaurentPoly, b: &LaurentPoly, sign: Coeff) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return b.scale(sign);
    }
    let lo = a.offset.min(b.offset);
    let hi = a.max_exp().unwrap().max(b.max_exp().unwrap());
    let mut coeffs = vec![0; (hi - lo + 1) as usize];
    for (i, &c) in a.coeffs.iter().enumerate() {
        coeffs[(a.offset - lo) as usize + i] = c;
    }
    for (i, &c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.offset - lo) as usize + i];
        *slot = add_c(*slot, mul_c(sign, c));
    }
    LaurentPoly::new(lo, coeffs)
}

fn mul_polys(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let mut coeffs = vec![0; a.coeffs.len() + b.coeffs.len() - 1];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            coeffs[i + j] = add_c(coeffs[i + j], mul_c(x, y));
        }
    }
    LaurentPoly::new(a.offset + b.offset, coeffs)
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| add_into(a, b, 1));
binop!(Sub, sub, |a, b| add_into(a, b, -1));
binop!(Mul, mul, mul_polys);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = add_into(self, rhs, 1);
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self = add_into(self, &rhs, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = add_into(self, rhs, -1);
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self = add_into(self, &rhs, -1);
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

/// Shorthand for `LaurentPoly::parse(s).unwrap()`; meant for constants in code and tests.
pub fn lp(s: &str) -> LaurentPoly {
    LaurentPoly::parse(s).unwrap_or_else(|e| panic!("{e}"))
}

/// A quotient of Laurent polynomials, compared by cross-multiplication.
#[derive(Clone)]
pub struct RatFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        let mut r = RatFn { num, den };
        r.reduce();
        Ok(r)
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFn { num: p, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        RatFn::from_poly(LaurentPoly::zero())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// Cancels integer content, powers of `v`, and common factors `1+u`.
    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        let g = gcd(content(&self.num), content(&self.den));
        let sign = if self.den.coeffs.last().copied().unwrap_or(1) < 0 { -1 } else { 1 };
        let g = g * sign;
        if g != 1 {
            self.num = LaurentPoly::new(self.num.offset, self.num.coeffs.iter().map(|c| c / g).collect());
            self.den = LaurentPoly::new(self.den.offset, self.den.coeffs.iter().map(|c| c / g).collect());
        }
        let shift = self.den.offset;
        self.num = self.num.shift(-shift);
        self.den = self.den.shift(-shift);
        let one_plus_u = LaurentPoly::from_u_coeffs(&[1, 1]);
        loop {
            match (self.num.div_exact(&one_plus_u), self.den.div_exact(&one_plus_u)) {
                (Some(n), Some(d)) => {
                    self.num = n;
                    self.den = d;
                }
                _ => break,
            }
        }
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        let (num, den) = if self.den == other.den {
            (&self.num + &other.num, self.den.clone())
        } else {
            (&self.num * &other.den + &other.num * &self.den, &self.den * &other.den)
        };
        let mut r = RatFn { num, den };
        r.reduce();
        r
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        let mut r = RatFn { num: &self.num * &other.num, den: &self.den * &other.den };
        r.reduce();
        r
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RatFn {
        self.mul(&RatFn::from_poly(p.clone()))
    }

    pub fn div_poly(&self, p: &LaurentPoly) -> Result<RatFn> {
        RatFn::new(self.num.clone(), &self.den * p)
    }

    pub fn pow(&self, k: u32) -> RatFn {
        (0..k).fold(RatFn::from_poly(LaurentPoly::one()), |acc, _| acc.mul(self))
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &RatFn) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn content(p: &LaurentPoly) -> Coeff {
    p.coeffs.iter().fold(0, |g, &c| gcd(g, c))
}

fn gcd(a: Coeff, b: Coeff) -> Coeff {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bar_examples() {
        assert_eq!(lp("1").bar(), lp("1"));
        assert_eq!(lp("v-v^-1").bar(), lp("v^-1-v"));
        assert_eq!(lp("1+u").bar(), lp("1+v^-2"));
    }

    #[test]
    fn split_examples() {
        assert_eq!(lp("v-v^-1").split_strict_neg(), (lp("-v^-1"), lp("v")));
        assert_eq!(lp("1").split_strict_neg(), (LaurentPoly::zero(), lp("1")));
        assert_eq!(lp("v^-3+2+v^2").split_strict_neg(), (lp("v^-3"), lp("2+v^2")));
    }

    #[test]
    fn minus_u_examples() {
        assert_eq!(lp("1+u").sub_minus_u().unwrap(), lp("1-u"));
        assert_eq!(lp("1+u+u^2").sub_minus_u().unwrap(), lp("1-u+u^2"));
        assert!(lp("v").sub_minus_u().is_err());
    }

    #[test]
    fn mod2_examples() {
        assert_eq!(lp("1+2u").mod2(), lp("1"));
        assert_eq!(lp("u^2-u-1").mod2(), lp("u^2+u+1"));
        assert_eq!(lp("1-u+u^2").mod2(), lp("1+u+u^2"));
    }

    #[test]
    fn display_forms() {
        assert_eq!(lp("1-u+u^2").to_string(), "1-u+u^2");
        assert_eq!(lp("v^-1-v").to_string(), "v^-1-v");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(lp("2v^3").to_string(), "2v^3");
        assert_eq!(lp("-3u^2").to_string(), "-3u^2");
    }

    #[test]
    fn exact_division() {
        let d = lp("v+v^-1");
        let p = lp("v^3+v^-3");
        let q = p.div_exact(&d).unwrap();
        assert_eq!(&q * &d, p);
        assert!(lp("1").div_exact(&d).is_none());
    }

    #[test]
    fn json_round_trip_trims() {
        let p: LaurentPoly = serde_json::from_str(r#"{"offset":-2,"coeffs":[0,1,0,-1,0]}"#).unwrap();
        assert_eq!(p, lp("v^-1-v"));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"offset":-1,"coeffs":[1,0,-1]}"#);
    }

    #[test]
    fn ratfn_equality() {
        let lam = RatFn::new(lp("u-1"), lp("u+1")).unwrap();
        let a = lam.mul_poly(&lp("u+1"));
        assert_eq!(a, RatFn::from_poly(lp("u-1")));
        assert_eq!(a.den(), &LaurentPoly::one());
    }
}
