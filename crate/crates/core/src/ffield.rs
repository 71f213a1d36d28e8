//! Arithmetic in GF(p^k).
//!
//! Elements are packed integers: the polynomial-basis digit vector
//! `(d_0, .., d_{k-1})` is stored as `d_0 + d_1 p + .. + d_{k-1} p^{k-1}`,
//! so the prime subfield is exactly the packed values `0..p`.
//!
//! Fields up to [`TABLE_LIMIT`] elements carry exp/log tables plus a Zech
//! table (odd characteristic), which makes both `add` and `mul` O(1). Larger
//! fields fall back to digit arithmetic.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{is_prime, prime_factors, prime_power};
use crate::error::{Error, Result};

/// Fields with at most this many elements get log tables.
pub const TABLE_LIMIT: u64 = 1 << 24;
const MAX_ORDER: u64 = 1 << 32;
const NO_ZECH: u32 = u32::MAX;

/// A raw element of some [`Field`]; meaningless without its field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[d] = log(1 + alpha^d)`, `NO_ZECH` when that sum is zero.
    zech: Vec<u32>,
}

struct FieldData {
    p: u32,
    k: u32,
    order: u64,
    modulus: Vec<u32>,
    alpha: Elem,
    pow_p: Vec<u64>,
    tables: Option<LogTables>,
}

/// GF(p^k) with a fixed modulus and a designated primitive element alpha.
///
/// Cloning is cheap and the descriptor is immutable, so it can be shared
/// freely between threads.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldData>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p(), self.k(), crate::qpoly::format_digits(&self.inner.modulus))
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.modulus == other.inner.modulus
                && self.inner.alpha == other.inner.alpha)
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^k). Without a modulus the canonical primitive modulus is
    /// used. A supplied modulus only needs to be irreducible; when its root is
    /// not primitive, alpha is the first primitive element in packed order.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        check_params(p, k)?;
        let modulus = match modulus {
            Some(m) => {
                validate_modulus(p, k, m)?;
                m.to_vec()
            }
            None => canonical_modulus(p, k)?,
        };
        Field::from_irreducible(p, k, modulus, false)
    }

    /// Builds GF(p^k) requiring that the residue class of x is primitive,
    /// i.e. `modulus` is the minimal polynomial of alpha.
    pub fn with_primitive_modulus(p: u32, k: u32, modulus: &[u32]) -> Result<Field> {
        check_params(p, k)?;
        validate_modulus(p, k, modulus)?;
        Field::from_irreducible(p, k, modulus.to_vec(), true)
    }

    fn from_irreducible(p: u32, k: u32, modulus: Vec<u32>, strict: bool) -> Result<Field> {
        let order = (p as u64).pow(k);
        let pow_p: Vec<u64> = (0..=k).map(|i| (p as u64).pow(i)).collect();
        let mut data = FieldData { p, k, order, modulus, alpha: Elem::ONE, pow_p, tables: None };
        let x = x_residue(&data);
        let alpha = if data.is_primitive_slow(x) {
            x
        } else if strict {
            return Err(Error::NotPrimitive);
        } else {
            (1..order as u32)
                .map(Elem)
                .find(|&a| data.is_primitive_slow(a))
                .expect("the multiplicative group of a finite field is cyclic")
        };
        data.alpha = alpha;
        if order <= TABLE_LIMIT {
            data.tables = Some(data.build_tables());
        }
        Ok(Field { inner: Arc::new(data) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    /// Number of elements, p^k.
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    /// Monic modulus as ascending digits (length k + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn alpha(&self) -> Elem {
        self.inner.alpha
    }

    pub fn has_tables(&self) -> bool {
        self.inner.tables.is_some()
    }

    /// Embeds an integer of the prime field.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p() as i64) as u32)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() > self.k() as usize {
            return Err(Error::Precondition(format!("more than {} digits", self.k())));
        }
        let mut v = 0u64;
        for (i, &d) in digits.iter().enumerate() {
            if d >= self.p() {
                return Err(Error::DigitOutOfRange { digit: d, p: self.p() });
            }
            v += d as u64 * self.inner.pow_p[i];
        }
        Ok(Elem(v as u32))
    }

    /// Polynomial-basis digits, constant term first, always length k.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        self.inner.digits(a.0)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.inner.add(a, b)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        self.inner.neg(a)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.inner.add(a, self.inner.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.inner.mul(a, b)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n1 = self.order() - 1;
        Ok(match &self.inner.tables {
            Some(t) => Elem(t.exp[((n1 - t.log[a.0 as usize] as u64) % n1) as usize]),
            None => self.inner.pow_slow(a, n1 - 1),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a signed exponent; negative exponents need `a != 0`.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        if e < 0 {
            return self.pow(self.inv(a)?, e.checked_neg().unwrap_or(i64::MAX));
        }
        let e = e as u64;
        if a.is_zero() {
            return Ok(if e == 0 { Elem::ONE } else { Elem::ZERO });
        }
        let n1 = self.order() - 1;
        Ok(match &self.inner.tables {
            Some(t) => {
                let l = (t.log[a.0 as usize] as u128 * e as u128 % n1 as u128) as usize;
                Elem(t.exp[l])
            }
            None => self.inner.pow_slow(a, e % n1),
        })
    }

    /// `alpha^i`, with `i` reduced modulo p^k - 1.
    pub fn exp(&self, i: i64) -> Elem {
        let n1 = (self.order() - 1) as i64;
        let i = i.rem_euclid(n1) as u64;
        match &self.inner.tables {
            Some(t) => Elem(t.exp[i as usize]),
            None => self.inner.pow_slow(self.alpha(), i),
        }
    }

    /// Discrete logarithm to base alpha, in `[0, p^k - 2]`.
    pub fn log(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::Precondition("logarithm of zero".into()));
        }
        Ok(match &self.inner.tables {
            Some(t) => t.log[a.0 as usize] as u64,
            None => self.inner.log_bsgs(a),
        })
    }

    /// The Frobenius map x -> x^p.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p() as i64).expect("non-negative exponent")
    }

    /// Returns `e` with `q = p^e`, checking that GF(q) is a subfield.
    pub fn subfield_degree(&self, q: u64) -> Result<u32> {
        match prime_power(q) {
            Some((p, e)) if p == self.p() as u64 && self.k().is_multiple_of(e) => Ok(e),
            _ => Err(Error::NotSubfield { q, order: self.order() }),
        }
    }

    /// True iff `a^q = a`, i.e. `a` lies in GF(q).
    pub fn in_subfield(&self, a: Elem, q: u64) -> Result<bool> {
        let e = self.subfield_degree(q)?;
        if e == 1 {
            return Ok((a.0 as u64) < self.p() as u64);
        }
        let mut b = a;
        for _ in 0..e {
            b = self.frobenius(b);
        }
        Ok(b == a)
    }

    /// All elements of GF(q), in increasing packed order (zero first).
    pub fn subfield_elements(&self, q: u64) -> Result<Vec<Elem>> {
        let e = self.subfield_degree(q)?;
        if e == 1 {
            return Ok((0..self.p()).map(Elem).collect());
        }
        let step = ((self.order() - 1) / (q - 1)) as i64;
        let mut v: Vec<Elem> =
            std::iter::once(Elem::ZERO).chain((0..(q - 1) as i64).map(|t| self.exp(t * step))).collect();
        v.sort_unstable();
        Ok(v)
    }

    /// Wraps a raw element for checked arithmetic.
    pub fn element(&self, a: Elem) -> FieldElement {
        FieldElement { field: self.clone(), value: a }
    }
}

fn check_params(p: u32, k: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    match (p as u64).checked_pow(k) {
        Some(order) if order <= MAX_ORDER => Ok(()),
        _ => Err(Error::FieldTooLarge { p, k }),
    }
}

fn validate_modulus(p: u32, k: u32, modulus: &[u32]) -> Result<()> {
    if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
        return Err(Error::NotMonic { expected: k });
    }
    if let Some(&d) = modulus.iter().find(|&&d| d >= p) {
        return Err(Error::DigitOutOfRange { digit: d, p });
    }
    if !primepoly::is_irreducible(p as u64, modulus) {
        return Err(Error::Reducible { p });
    }
    Ok(())
}

/// The lexicographically smallest monic primitive polynomial of degree k
/// over GF(p), comparing coefficient vectors from the constant term upward.
pub fn canonical_modulus(p: u32, k: u32) -> Result<Vec<u32>> {
    check_params(p, k)?;
    let rest_count = (p as u64).pow(k - 1);
    for f0 in 1..p {
        // the norm of a primitive root, (-1)^k f_0, generates GF(p)*
        let norm = if k.is_multiple_of(2) { f0 } else { p - f0 };
        if !generates_prime_field(norm as u64, p as u64) {
            continue;
        }
        for t in 0..rest_count {
            // f_1 is the most significant digit of t, so t order is lex order
            let mut f = vec![0u32; k as usize + 1];
            f[0] = f0;
            let mut rest = t;
            for i in (1..k as usize).rev() {
                f[i] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            f[k as usize] = 1;
            if primepoly::is_primitive(p as u64, &f) {
                return Ok(f);
            }
        }
    }
    Err(Error::NoPrimitivePolynomial { p, k })
}

fn generates_prime_field(g: u64, p: u64) -> bool {
    if p == 2 {
        return g == 1;
    }
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    !g.is_multiple_of(p) && prime_factors(p - 1).into_iter().all(|r| pow(g, (p - 1) / r) != 1)
}

fn x_residue(data: &FieldData) -> Elem {
    if data.k == 1 {
        Elem((data.p - data.modulus[0]) % data.p)
    } else {
        Elem(data.p)
    }
}

impl FieldData {
    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        while a != 0 || b != 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }

    fn neg_digits(&self, a: u32) -> u32 {
        let p = self.p as u64;
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while a != 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out as u32
    }

    fn mul_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let k = self.k as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut t = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                t[i + j] = (t[i + j] + x as u64 * y as u64) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = t[i];
            if c == 0 {
                continue;
            }
            t[i] = 0;
            for j in 0..k {
                let sub = c * self.modulus[j] as u64 % p;
                t[i - k + j] = (t[i - k + j] + p - sub) % p;
            }
        }
        let mut v = 0u64;
        for i in (0..k).rev() {
            v = v * p + t[i];
        }
        v as u32
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a.0;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_digits(acc, base);
            }
            base = self.mul_digits(base, base);
            e >>= 1;
        }
        Elem(acc)
    }

    fn is_primitive_slow(&self, a: Elem) -> bool {
        if a.is_zero() {
            return false;
        }
        let n1 = self.order - 1;
        if self.pow_slow(a, n1) != Elem::ONE {
            return false;
        }
        prime_factors(n1).into_iter().all(|r| self.pow_slow(a, n1 / r) != Elem::ONE)
    }

    fn build_tables(&self) -> LogTables {
        let n1 = (self.order - 1) as usize;
        let mut exp = vec![0u32; n1];
        let mut log = vec![0u32; self.order as usize];
        let mut e = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = e;
            log[e as usize] = i as u32;
            e = self.mul_digits(e, self.alpha.0);
        }
        let zech = if self.p == 2 {
            Vec::new()
        } else {
            exp.iter()
                .map(|&v| match self.add_digits(1, v) {
                    0 => NO_ZECH,
                    s => log[s as usize],
                })
                .collect()
        };
        LogTables { exp, log, zech }
    }

    #[inline]
    fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let n1 = t.exp.len();
                let la = t.log[a.0 as usize] as usize;
                let lb = t.log[b.0 as usize] as usize;
                let d = if lb >= la { lb - la } else { lb + n1 - la };
                match t.zech[d] {
                    NO_ZECH => Elem::ZERO,
                    z => {
                        let s = la + z as usize;
                        Elem(t.exp[if s >= n1 { s - n1 } else { s }])
                    }
                }
            }
            None => Elem(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        match &self.tables {
            Some(t) => {
                let n1 = t.exp.len();
                let s = t.log[a.0 as usize] as usize + n1 / 2;
                Elem(t.exp[if s >= n1 { s - n1 } else { s }])
            }
            None => Elem(self.neg_digits(a.0)),
        }
    }

    #[inline]
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n1 = t.exp.len();
                let s = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                Elem(t.exp[if s >= n1 { s - n1 } else { s }])
            }
            None => Elem(self.mul_digits(a.0, b.0)),
        }
    }

    /// Baby-step giant-step; only used when no tables exist.
    fn log_bsgs(&self, a: Elem) -> u64 {
        let n1 = self.order - 1;
        let m = (n1 as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::with_capacity(m as usize);
        let mut e = 1u32;
        for j in 0..m {
            baby.entry(e).or_insert(j);
            e = self.mul_digits(e, self.alpha.0);
        }
        // giant step factor alpha^{-m}
        let factor = self.pow_slow(self.alpha, (n1 - m % n1) % n1).0;
        let mut gamma = a.0;
        for i in 0..m {
            if let Some(&j) = baby.get(&gamma) {
                return (i * m + j) % n1;
            }
            gamma = self.mul_digits(gamma, factor);
        }
        unreachable!("alpha generates the multiplicative group")
    }
}

/// An element bundled with its field, for checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field.log(self.value) {
            Err(_) => write!(f, "0"),
            Ok(i) => write!(f, "a^{i}"),
        }
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same(rhs)?;
        Ok(self.wrap(self.field.add(self.value, rhs.value)))
    }

    pub fn checked_sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same(rhs)?;
        Ok(self.wrap(self.field.sub(self.value, rhs.value)))
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same(rhs)?;
        Ok(self.wrap(self.field.mul(self.value, rhs.value)))
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same(rhs)?;
        Ok(self.wrap(self.field.div(self.value, rhs.value)?))
    }

    pub fn negated(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        Ok(self.wrap(self.field.pow(self.value, e)?))
    }
}

/// GF(q) inside GF(q^m): the pair every code construction works over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    field: Field,
    q: u64,
    m: u32,
    n: u64,
}

impl Extension {
    /// Wraps `field` as GF(q^m) over GF(q).
    pub fn new(field: Field, q: u64) -> Result<Extension> {
        let e = field.subfield_degree(q)?;
        let m = field.k() / e;
        let n = field.order() - 1;
        Ok(Extension { field, q, m, n })
    }

    /// GF(q^m) with the canonical modulus over the prime field.
    pub fn canonical(q: u64, m: u32) -> Result<Extension> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrime(q))?;
        let k = e.checked_mul(m).ok_or(Error::FieldTooLarge { p: p as u32, k: u32::MAX })?;
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        Extension::new(Field::new(p as u32, k, None)?, q)
    }

    /// GF(q^m) where `modulus` (over the prime field) is the minimal
    /// polynomial of alpha.
    pub fn with_modulus(q: u64, m: u32, modulus: &[u32]) -> Result<Extension> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrime(q))?;
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        Extension::new(Field::with_primitive_modulus(p as u32, e * m, modulus)?, q)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Code length q^m - 1.
    pub fn n(&self) -> u64 {
        self.n
    }
}

/// Polynomials over a prime field as ascending `u64` digit vectors; only
/// used to validate moduli before a field exists.
mod primepoly {
    use crate::arith::prime_factors;

    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
        let df = f.len() - 1;
        let lead_inv = inv_mod(f[df], p);
        a = trim(a);
        while a.len() > df {
            let top = a.len() - 1;
            let c = a[top] * lead_inv % p;
            for (x, &fj) in a[top - df..].iter_mut().zip(f) {
                *x = (*x + p - c * fj % p) % p;
            }
            a = trim(a);
        }
        a
    }

    fn mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut t = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                t[i + j] = (t[i + j] + x * y) % p;
            }
        }
        rem(t, f, p)
    }

    fn powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(vec![1], f, p);
        let mut b = rem(base.to_vec(), f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a), trim(b));
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn to_u64(f: &[u32]) -> Vec<u64> {
        f.iter().map(|&d| d as u64).collect()
    }

    /// Ben-Or: f is irreducible iff gcd(x^{p^j} - x, f) = 1 for j <= k/2.
    pub fn is_irreducible(p: u64, f: &[u32]) -> bool {
        let f = to_u64(f);
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut h = rem(x.clone(), &f, p);
        for _ in 1..=k / 2 {
            h = powmod(&h, p, &f, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f.clone(), diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// Irreducible and the residue of x has order p^k - 1.
    pub fn is_primitive(p: u64, f: &[u32]) -> bool {
        if !is_irreducible(p, f) {
            return false;
        }
        let fu = to_u64(f);
        let k = (fu.len() - 1) as u32;
        let n1 = p.pow(k) - 1;
        let x = vec![0, 1];
        if powmod(&x, n1, &fu, p) != vec![1] {
            return false;
        }
        prime_factors(n1).into_iter().all(|r| powmod(&x, n1 / r, &fu, p) != vec![1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, k: u32, m: &[u32]) -> Field {
        Field::with_primitive_modulus(p, k, m).unwrap()
    }

    #[test]
    fn gf32_alpha_satisfies_modulus() {
        // x^5 + x^2 + 1
        let f = gf(2, 5, &[1, 0, 1, 0, 0, 1]);
        let a = f.alpha();
        let lhs = f.pow(a, 5).unwrap();
        let rhs = f.add(f.pow(a, 2).unwrap(), Elem::ONE);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn gf27_alpha_cubed() {
        // x^3 - x + 1 = x^3 + 2x + 1
        let f = gf(3, 3, &[1, 2, 0, 1]);
        let a = f.alpha();
        assert_eq!(f.pow(a, 3).unwrap(), f.sub(a, Elem::ONE));
        // alpha * alpha^2 = alpha - 1, i.e. digits (2, 1, 0)
        let a2 = f.mul(a, a);
        assert_eq!(f.digits(f.mul(a, a2)), vec![2, 1, 0]);
    }

    #[test]
    fn gf2_prime_field() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.alpha(), Elem::ONE);
        assert_eq!(f.modulus(), &[1, 1]);
    }

    #[test]
    fn canonical_moduli_are_lexicographic() {
        // constant term first: (1,0,0,1) = x^4 + x^3 + 1 precedes (1,1,0,0)
        assert_eq!(canonical_modulus(2, 4).unwrap(), vec![1, 0, 0, 1, 1]);
        assert_eq!(canonical_modulus(2, 5).unwrap(), vec![1, 0, 0, 1, 0, 1]);
        // x - 2 over GF(3): 2 is a primitive root mod 3
        assert_eq!(canonical_modulus(3, 1).unwrap(), vec![1, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 2, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Field::new(2, 0, None).unwrap_err(), Error::ZeroDegree);
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert_eq!(Field::new(2, 4, Some(&[1, 0, 1, 0, 1])).unwrap_err(), Error::Reducible { p: 2 });
        assert_eq!(Field::new(2, 3, Some(&[1, 1, 0, 0])).unwrap_err(), Error::NotMonic { expected: 3 });
        // x^4 + x^3 + x^2 + x + 1 is irreducible, root has order 5
        assert_eq!(Field::with_primitive_modulus(2, 4, &[1, 1, 1, 1, 1]).unwrap_err(), Error::NotPrimitive);
        let f = Field::new(2, 4, Some(&[1, 1, 1, 1, 1])).unwrap();
        assert_ne!(f.alpha(), Elem(2));
        assert_eq!(f.alpha(), Elem(3), "x + 1 is the first primitive element");
        assert!(matches!(Field::new(2, 33, None), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn arithmetic_basics() {
        let f = Field::new(2, 4, None).unwrap();
        let a3 = f.exp(3);
        let a5 = f.exp(5);
        assert_eq!(f.mul(a3, a5), f.exp(8));
        assert_eq!(f.log(f.alpha()).unwrap(), 1);
        assert_eq!(f.log(Elem::ONE).unwrap(), 0);
        assert_eq!(f.exp(15), Elem::ONE);
        assert!(f.log(Elem::ZERO).is_err());
        assert_eq!(f.div(a3, Elem::ZERO), Err(Error::DivisionByZero));
        let g = Field::new(5, 2, None).unwrap();
        for v in 0..25 {
            let x = Elem(v);
            let four_x = f_scale(&g, x, 4);
            assert_eq!(g.add(x, four_x), Elem::ZERO);
        }
    }

    fn f_scale(f: &Field, x: Elem, c: u32) -> Elem {
        (0..c).fold(Elem::ZERO, |acc, _| f.add(acc, x))
    }

    #[test]
    fn checked_elements() {
        let f = Field::new(3, 2, None).unwrap();
        let g = Field::new(3, 3, None).unwrap();
        let a = f.element(f.alpha());
        let b = g.element(g.alpha());
        assert_eq!(a.checked_add(&b).unwrap_err(), Error::FieldMismatch);
        let zero = f.element(Elem::ZERO);
        assert_eq!(a.checked_div(&zero).unwrap_err(), Error::DivisionByZero);
        let inv = a.inverse().unwrap();
        assert_eq!(a.checked_mul(&inv).unwrap().value(), Elem::ONE);
        assert_eq!(a.pow(-1).unwrap(), inv);
        assert_eq!(a.negated().checked_add(&a).unwrap().value(), Elem::ZERO);
        assert_eq!(a.to_string(), "a^1");
    }

    #[test]
    fn subfield_membership() {
        let f = Field::new(2, 5, None).unwrap();
        for v in 0..32 {
            assert_eq!(f.in_subfield(Elem(v), 2).unwrap(), v < 2);
        }
        let g = Field::new(3, 4, None).unwrap();
        let a = g.exp((81 - 1) / (9 - 1));
        assert!(g.in_subfield(a, 9).unwrap());
        assert!(!g.in_subfield(g.alpha(), 9).unwrap());
        assert!(g.in_subfield(g.alpha(), 81).unwrap());
        assert!(g.in_subfield(Elem(1), 8).is_err());
        assert!(g.in_subfield(Elem(1), 27).is_err());
        assert_eq!(g.subfield_elements(9).unwrap().len(), 9);
    }

    #[test]
    fn untabled_field_matches_tabled_logic() {
        // 3^16 > 2^24 forces the digit path
        let f = Field::new(3, 16, None).unwrap();
        assert!(!f.has_tables());
        let a = f.alpha();
        let b = f.exp(12345);
        let c = f.mul(a, b);
        assert_eq!(f.log(c).unwrap(), 12346);
        assert_eq!(f.mul(c, f.inv(c).unwrap()), Elem::ONE);
        assert_eq!(f.add(b, f.neg(b)), Elem::ZERO);
        assert_eq!(f.exp((f.order() - 1) as i64), Elem::ONE);
    }
}
