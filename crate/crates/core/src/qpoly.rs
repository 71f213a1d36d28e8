//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored ascending and always trimmed, so the zero
//! polynomial is the empty vector and every other polynomial has a nonzero
//! leading coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cosets::cyclotomic_coset;
use crate::error::{out_of_range, Error, Result};
use crate::ffield::{Elem, Extension, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Poly {
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    /// Coefficients given as prime-field integers, constant term first.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c x^e`.
    pub fn monomial(field: &Field, c: Elem, e: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; e + 1];
        coeffs[e] = c;
        Poly::new(field, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(field: &Field, n: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; n + 1];
        coeffs[0] = field.neg(Elem::ONE);
        coeffs[n] = field.add(coeffs[n], Elem::ONE);
        Poly::new(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `x^s`.
    pub fn shift(&self, s: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; s];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).expect("leading coefficient is nonzero");
        self.scale(inv)
    }

    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_field(divisor);
        let Some(db) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let f = &self.field;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let lead_inv = f.inv(divisor.leading())?;
        let mut quot = vec![Elem::ZERO; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[i - db] = c;
            let base = i - db;
            for (j, &g) in divisor.coeffs.iter().enumerate() {
                rem[base + j] = f.sub(rem[base + j], f.mul(c, g));
            }
        }
        rem.truncate(db);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// True iff `divisor | self`.
    pub fn is_divisible_by(&self, divisor: &Poly) -> Result<bool> {
        Ok(self.rem(divisor)?.is_zero())
    }

    /// Reduction modulo `x^n - 1` by folding exponents.
    pub fn reduce_cyclic(&self, n: usize) -> Poly {
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = f.add(out[i % n], c);
        }
        Poly::new(f, out)
    }

    /// Word reversal `x^{n-1} c(x^{-1})` of a length-n vector.
    pub fn reverse_word(&self, n: usize) -> Poly {
        assert!(self.coeffs.len() <= n, "word longer than n");
        let mut out = vec![Elem::ZERO; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[n - 1 - i] = c;
        }
        Poly::new(&self.field, out)
    }

    /// Reciprocal `x^l f(1/x)` with `l = deg f`.
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Ok(Poly::new(&self.field, coeffs))
    }

    /// `f` and its reciprocal agree after monic normalisation.
    pub fn is_self_reciprocal(&self) -> bool {
        match self.reciprocal() {
            Ok(r) => r.monic() == self.monic(),
            Err(_) => false,
        }
    }

    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.assert_same_field(other);
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn lcm(&self, other: &Poly) -> Result<Poly> {
        let g = self.gcd(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.field));
        }
        let (q, _) = (self * other).divmod(&g)?;
        Ok(q.monic())
    }

    /// Canonical text with integer coefficients; `None` if some coefficient
    /// lies outside the prime field.
    fn write_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if (c.0 as u64) < self.field.p() as u64 {
                c.0.to_string()
            } else {
                format!("(a^{})", self.field.log(c).expect("nonzero"))
            };
            match (e, coef.as_str()) {
                (0, _) => write!(f, "{coef}")?,
                (1, "1") => write!(f, "x")?,
                (1, _) => write!(f, "{coef}x")?,
                (_, "1") => write!(f, "x^{e}")?,
                _ => write!(f, "{coef}x^{e}")?,
            }
        }
        Ok(())
    }

    /// Parses text such as `"x^3 - x + 1"` or `"1 + x^2 + x^5"` with
    /// integer coefficients in the prime field.
    pub fn parse(field: &Field, text: &str) -> Result<Poly> {
        let digits = parse_terms(text)?;
        let p = field.p() as i64;
        let max = digits.iter().map(|&(e, _)| e).max().unwrap_or(0);
        let mut coeffs = vec![0i64; max + 1];
        for (e, c) in digits {
            coeffs[e] = (coeffs[e] + c).rem_euclid(p);
        }
        Ok(Poly::from_ints(field, &coeffs))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = &self.field;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f, (0..len).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = &self.field;
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f, (0..len).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_same_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}

/// Minimal polynomial of `alpha^i` over GF(q): the product of `x - alpha^j`
/// over the q-cyclotomic coset of `i` modulo `n = q^m - 1`.
pub fn minimal_polynomial(ext: &Extension, i: u64) -> Result<Poly> {
    let n = ext.n();
    if i >= n {
        return Err(out_of_range("i", i, 0, n as i128 - 1));
    }
    let f = ext.field();
    let coset = cyclotomic_coset(i, ext.q(), ext.m())?;
    let mut acc = Poly::one(f);
    for &j in coset.members() {
        let root = f.exp(j as i64);
        let lin = Poly::new(f, vec![f.neg(root), Elem::ONE]);
        acc = &acc * &lin;
    }
    debug_assert!(acc.coeffs().iter().all(|&c| f.in_subfield(c, ext.q()).unwrap_or(false)));
    Ok(acc)
}

/// Parses `text` into `(exponent, signed coefficient)` terms.
fn parse_terms(text: &str) -> Result<Vec<(usize, i64)>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace('−', "-");
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut terms = Vec::new();
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = 1i64;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if pos != 0 {
            return Err(Error::Parse(format!("expected '+' or '-' at offset {pos}")));
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            pos += 1;
        }
        let term = &s[start..pos];
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        let (coef, exp) = parse_term(term)?;
        terms.push((exp, sign * coef));
    }
    Ok(terms)
}

fn parse_term(term: &str) -> Result<(i64, usize)> {
    let bad = || Error::Parse(format!("malformed term {term:?}"));
    match term.find('x') {
        None => Ok((term.parse().map_err(|_| bad())?, 0)),
        Some(ix) => {
            let coef_txt = term[..ix].trim_end_matches('*');
            let coef = if coef_txt.is_empty() { 1 } else { coef_txt.parse().map_err(|_| bad())? };
            let rest = &term[ix + 1..];
            let exp = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse().map_err(|_| bad())?
            } else {
                return Err(bad());
            };
            Ok((coef, exp))
        }
    }
}

/// Parses a polynomial over GF(p) into ascending digits in `[0, p)`.
pub fn parse_digits(p: u32, text: &str) -> Result<Vec<u32>> {
    let terms = parse_terms(text)?;
    let max = terms.iter().map(|&(e, _)| e).max().unwrap_or(0);
    let mut coeffs = vec![0i64; max + 1];
    for (e, c) in terms {
        coeffs[e] = (coeffs[e] + c).rem_euclid(p as i64);
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs.into_iter().map(|c| c as u32).collect())
}

/// Renders ascending digits in the canonical descending text form.
pub fn format_digits(digits: &[u32]) -> String {
    let mut parts = Vec::new();
    for (e, &c) in digits.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        parts.push(match (e, c) {
            (0, _) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, _) => format!("{c}x"),
            (_, 1) => format!("x^{e}"),
            _ => format!("{c}x^{e}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, k: u32) -> Field {
        Field::new(p, k, None).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = gf(2, 1);
        let x1 = Poly::from_ints(&f2, &[1, 1]);
        assert_eq!(&x1 * &x1, Poly::from_ints(&f2, &[1, 0, 1]));

        let f3 = gf(3, 1);
        let num = Poly::from_ints(&f3, &[-1, 0, 0, 1]);
        let den = Poly::from_ints(&f3, &[-1, 1]);
        let (q, r) = num.divmod(&den).unwrap();
        assert_eq!(q, Poly::from_ints(&f3, &[1, 1, 1]));
        assert!(r.is_zero());

        let a = Poly::from_ints(&f3, &[1, 2, 1]);
        let b = Poly::from_ints(&f3, &[2, 1, 2]);
        assert!((&a + &b).is_zero());
        assert_eq!(a.divmod(&Poly::zero(&f3)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn gcd_lcm_examples() {
        let f3 = gf(3, 1);
        let a = Poly::from_ints(&f3, &[-1, 0, 1]);
        let b = Poly::from_ints(&f3, &[-1, 1]);
        assert_eq!(a.gcd(&b).unwrap(), b);
        let f = Poly::from_ints(&f3, &[2, 0, 2]);
        assert_eq!(f.lcm(&f).unwrap(), f.monic());
        assert_eq!(Poly::zero(&f3).gcd(&Poly::zero(&f3)).unwrap_err(), Error::ZeroPolynomial);

        let ext = Extension::canonical(2, 4).unwrap();
        let m1 = minimal_polynomial(&ext, 1).unwrap();
        let m2 = minimal_polynomial(&ext, 2).unwrap();
        assert_eq!(m1, m2);
        assert_eq!(m1.lcm(&m2).unwrap(), m1);
    }

    #[test]
    fn reciprocal_examples() {
        let f3 = gf(3, 1);
        let a = Poly::from_ints(&f3, &[1, 2, 1]);
        assert_eq!(a.reciprocal().unwrap(), a);
        assert!(a.is_self_reciprocal());
        let f2 = gf(2, 1);
        let b = Poly::from_ints(&f2, &[0, 1, 1]);
        assert_eq!(b.reciprocal().unwrap(), Poly::from_ints(&f2, &[1, 1]));
        assert!(!b.is_self_reciprocal());
        assert_eq!(Poly::zero(&f2).reciprocal().unwrap_err(), Error::ZeroPolynomial);
        // x - 1 reverses to 1 - x, an associate
        assert!(Poly::from_ints(&f3, &[-1, 1]).is_self_reciprocal());
    }

    #[test]
    fn minimal_polynomial_examples() {
        let ext = Extension::canonical(2, 4).unwrap();
        assert_eq!(minimal_polynomial(&ext, 0).unwrap(), Poly::from_ints(ext.field(), &[-1, 1]));
        assert_eq!(minimal_polynomial(&ext, 5).unwrap().degree(), Some(2));
        assert!(minimal_polynomial(&ext, 15).is_err());

        let ext = Extension::with_modulus(2, 5, &[1, 0, 1, 0, 0, 1]).unwrap();
        let m1 = minimal_polynomial(&ext, 1).unwrap();
        assert_eq!(m1.to_string(), "x^5 + x^2 + 1");
    }

    #[test]
    fn text_round_trip() {
        let f3 = gf(3, 1);
        let p = Poly::parse(&f3, "x^3 - x + 1").unwrap();
        assert_eq!(p.to_string(), "x^3 + 2x + 1");
        let q = Poly::parse(&f3, "1 + 2*x + x^3").unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_digits(2, "x^5+x^2+1").unwrap(), vec![1, 0, 1, 0, 0, 1]);
        assert_eq!(format_digits(&[1, 2, 0, 1]), "x^3 + 2x + 1");
        assert!(Poly::parse(&f3, "x^^2").is_err());
        assert!(Poly::parse(&f3, "").is_err());
        assert!(Poly::parse(&f3, "x +").is_err());
        assert_eq!(Poly::zero(&f3).to_string(), "0");
    }

    #[test]
    fn cyclic_helpers() {
        let f2 = gf(2, 1);
        let p = Poly::from_ints(&f2, &[1, 0, 0, 0, 0, 1, 1]);
        assert_eq!(p.reduce_cyclic(5), Poly::from_ints(&f2, &[0, 1]));
        let w = Poly::from_ints(&f2, &[1, 1]);
        assert_eq!(w.reverse_word(5), Poly::from_ints(&f2, &[0, 0, 0, 1, 1]));
        assert_eq!(Poly::x_n_minus_one(&f2, 3), Poly::from_ints(&f2, &[1, 0, 0, 1]));
    }
}
