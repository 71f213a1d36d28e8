//! Code symbols as small integers. `Alphabet` indexes the elements of GF(q)
//! inside the big field; `PackedWord` stores words over GF(2) or GF(3) as
//! bit planes so that row additions run a machine word at a time.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ffield::{Elem, Field};
use crate::qpoly::Poly;

/// The subfield GF(q) with symbol indices `0..q`, zero at index 0 and one at
/// index 1. For prime `q` the index of an element is its integer value.
#[derive(Clone, Debug)]
pub struct Alphabet {
    q: usize,
    elems: Vec<Elem>,
    index: HashMap<Elem, u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
}

impl Alphabet {
    pub fn new(field: &Field, q: u64) -> Result<Alphabet> {
        if q > 256 {
            return Err(Error::Precondition(format!("alphabet of size {q} exceeds 256 symbols")));
        }
        let mut elems = field.subfield_elements(q)?;
        // zero stays first; move one to index 1
        let one = elems.iter().position(|&e| e == Elem::ONE).expect("subfield contains one");
        elems[1..=one].rotate_right(1);
        let q = q as usize;
        let index: HashMap<Elem, u8> = elems.iter().enumerate().map(|(i, &e)| (e, i as u8)).collect();
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = index[&field.add(elems[a], elems[b])];
                mul[a * q + b] = index[&field.mul(elems[a], elems[b])];
            }
        }
        let neg = (0..q).map(|a| index[&field.neg(elems[a])]).collect();
        Ok(Alphabet { q, elems, index, add, mul, neg })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn elem(&self, s: u8) -> Elem {
        self.elems[s as usize]
    }

    pub fn symbol(&self, e: Elem) -> Result<u8> {
        self.index.get(&e).copied().ok_or(Error::NotInAlphabet { q: self.q as u64 })
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Coefficients of `f` as symbols, padded with zeros to `len`.
    pub fn word(&self, f: &Poly, len: usize) -> Result<Vec<u8>> {
        if f.coeffs().len() > len {
            return Err(Error::Precondition(format!("degree {} does not fit length {len}", f.coeffs().len() - 1)));
        }
        let mut out = vec![0u8; len];
        for (slot, &c) in out.iter_mut().zip(f.coeffs()) {
            *slot = self.symbol(c)?;
        }
        Ok(out)
    }

    pub fn poly(&self, field: &Field, word: &[u8]) -> Poly {
        Poly::new(field, word.iter().map(|&s| self.elem(s)).collect())
    }
}

/// A word over GF(2) or GF(3). Symbol 1 sets a bit in `lo`, symbol 2 sets a
/// bit in `hi`; bits at positions `>= len` are always clear.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PackedWord {
    p: u8,
    len: usize,
    lo: Vec<u64>,
    hi: Vec<u64>,
}

#[inline]
fn add3(x1: u64, x2: u64, y1: u64, y2: u64) -> (u64, u64) {
    let t = (x1 | y2) ^ (x2 | y1);
    ((x2 | y2) ^ t, (x1 | y1) ^ t)
}

impl PackedWord {
    pub fn supports(p: u64) -> bool {
        p == 2 || p == 3
    }

    pub fn zero(p: u8, len: usize) -> PackedWord {
        assert!(p == 2 || p == 3, "packed words hold GF(2) or GF(3) symbols");
        let words = len.div_ceil(64);
        PackedWord { p, len, lo: vec![0; words], hi: if p == 3 { vec![0; words] } else { Vec::new() } }
    }

    pub fn from_symbols(p: u8, symbols: &[u8]) -> PackedWord {
        let mut w = PackedWord::zero(p, symbols.len());
        for (i, &s) in symbols.iter().enumerate() {
            w.set(i, s);
        }
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn get(&self, i: usize) -> u8 {
        let (w, b) = (i / 64, i % 64);
        if self.lo[w] >> b & 1 == 1 {
            1
        } else if self.p == 3 && self.hi[w] >> b & 1 == 1 {
            2
        } else {
            0
        }
    }

    pub fn set(&mut self, i: usize, s: u8) {
        assert!(i < self.len && s < self.p);
        let (w, b) = (i / 64, i % 64);
        self.lo[w] &= !(1 << b);
        if self.p == 3 {
            self.hi[w] &= !(1 << b);
        }
        match s {
            1 => self.lo[w] |= 1 << b,
            2 => self.hi[w] |= 1 << b,
            _ => {}
        }
    }

    pub fn symbols(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.lo.iter().chain(&self.hi).all(|&w| w == 0)
    }

    pub fn weight(&self) -> u32 {
        if self.p == 2 {
            self.lo.iter().map(|w| w.count_ones()).sum()
        } else {
            self.lo.iter().zip(&self.hi).map(|(a, b)| (a | b).count_ones()).sum()
        }
    }

    /// Sum of the symbols modulo `p`, i.e. the word evaluated at `x = 1`.
    pub fn sum(&self) -> u8 {
        let ones: u32 = self.lo.iter().map(|w| w.count_ones()).sum();
        let twos: u32 = self.hi.iter().map(|w| w.count_ones()).sum();
        ((ones + 2 * twos) % self.p as u32) as u8
    }

    /// Highest index holding a nonzero symbol.
    pub fn degree(&self) -> Option<usize> {
        for w in (0..self.lo.len()).rev() {
            let v = self.lo[w] | self.hi.get(w).copied().unwrap_or(0);
            if v != 0 {
                return Some(w * 64 + 63 - v.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn add_assign(&mut self, other: &PackedWord) {
        self.add_shifted(other, 0, 1);
    }

    /// `self += other` for words of equal length, without any scanning.
    #[inline]
    pub fn add_words(&mut self, other: &PackedWord) {
        debug_assert_eq!(self.len, other.len);
        if self.p == 2 {
            for (a, b) in self.lo.iter_mut().zip(&other.lo) {
                *a ^= b;
            }
        } else {
            for j in 0..self.lo.len() {
                let (z1, z2) = add3(self.lo[j], self.hi[j], other.lo[j], other.hi[j]);
                self.lo[j] = z1;
                self.hi[j] = z2;
            }
        }
    }

    /// `self += scale * x^shift * other`, dropping nothing: the shifted word
    /// must fit in `self`.
    pub fn add_shifted(&mut self, other: &PackedWord, shift: usize, scale: u8) {
        debug_assert_eq!(self.p, other.p);
        let scale = scale % self.p;
        if scale == 0 {
            return;
        }
        let top = match other.degree() {
            Some(d) => d,
            None => return,
        };
        assert!(top + shift < self.len, "shifted word does not fit");
        let (off, bits) = (shift / 64, shift % 64);
        let src_words = top / 64 + 1;
        let piece = |plane: &[u64], j: usize| -> u64 {
            let cur = if j < src_words { plane[j] } else { 0 };
            if bits == 0 {
                cur
            } else {
                let prev = if j > 0 { plane[j - 1] } else { 0 };
                (cur << bits) | (prev >> (64 - bits))
            }
        };
        let span = if bits == 0 { src_words } else { src_words + 1 };
        for j in 0..span {
            let d = j + off;
            if d >= self.lo.len() {
                break;
            }
            if self.p == 2 {
                self.lo[d] ^= piece(&other.lo, j);
            } else {
                let (mut y1, mut y2) = (piece(&other.lo, j), piece(&other.hi, j));
                if scale == 2 {
                    std::mem::swap(&mut y1, &mut y2);
                }
                let (z1, z2) = add3(self.lo[d], self.hi[d], y1, y2);
                self.lo[d] = z1;
                self.hi[d] = z2;
            }
        }
    }

    pub fn negated(&self) -> PackedWord {
        let mut out = self.clone();
        if self.p == 3 {
            std::mem::swap(&mut out.lo, &mut out.hi);
        }
        out
    }

    /// `c_{len-1-i}` at position `i`.
    pub fn reversed(&self) -> PackedWord {
        let mut out = PackedWord::zero(self.p, self.len);
        for i in 0..self.len {
            let s = self.get(i);
            if s != 0 {
                out.set(self.len - 1 - i, s);
            }
        }
        out
    }

    /// Product of two words as polynomials, in a word of length `len`.
    pub fn mul_poly(&self, other: &PackedWord, len: usize) -> PackedWord {
        let mut out = PackedWord::zero(self.p, len);
        for i in 0..self.len {
            let s = self.get(i);
            if s != 0 {
                out.add_shifted(other, i, s);
            }
        }
        out
    }

    /// Remainder modulo a monic `divisor`.
    pub fn rem_monic(&self, divisor: &PackedWord) -> PackedWord {
        let dd = divisor.degree().expect("nonzero divisor");
        assert_eq!(divisor.get(dd), 1, "divisor must be monic");
        let mut r = self.clone();
        while let Some(top) = r.degree() {
            if top < dd {
                break;
            }
            let c = r.get(top);
            r.add_shifted(divisor, top - dd, self.p - c);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ternary_addition_table() {
        for x in 0..3u8 {
            for y in 0..3u8 {
                let mut a = PackedWord::from_symbols(3, &[x]);
                a.add_assign(&PackedWord::from_symbols(3, &[y]));
                assert_eq!(a.get(0), (x + y) % 3);
            }
        }
    }

    #[test]
    fn shifted_add_crosses_words() {
        let g = PackedWord::from_symbols(3, &[1, 2, 0, 1]);
        let mut c = PackedWord::zero(3, 130);
        c.add_shifted(&g, 62, 2);
        assert_eq!(c.get(62), 2);
        assert_eq!(c.get(63), 1);
        assert_eq!(c.get(64), 0);
        assert_eq!(c.get(65), 2);
        assert_eq!(c.weight(), 3);
        assert_eq!(c.degree(), Some(65));
        assert_eq!(c.sum(), 2);
    }

    #[test]
    fn division_leaves_remainder() {
        // (x^2 + 1) = (x + 1)^2 - 2x over GF(3): remainder mod x + 1 is 2
        let f = PackedWord::from_symbols(3, &[1, 0, 1]);
        let d = PackedWord::from_symbols(3, &[1, 1, 0]);
        let r = f.rem_monic(&d);
        assert_eq!(r.symbols(), vec![2, 0, 0]);
        let prod = d.mul_poly(&d, 3);
        assert_eq!(prod.symbols(), vec![1, 2, 1]);
        assert!(prod.rem_monic(&d).is_zero());
    }

    #[test]
    fn binary_reverse_and_weight() {
        let w = PackedWord::from_symbols(2, &[1, 1, 0, 0, 1]);
        assert_eq!(w.reversed().symbols(), vec![1, 0, 0, 1, 1]);
        assert_eq!(w.weight(), 3);
        assert_eq!(w.negated(), w);
    }

    #[test]
    fn alphabet_over_gf4() {
        let f = Field::new(2, 4, None).unwrap();
        let a = Alphabet::new(&f, 4).unwrap();
        assert_eq!(a.elem(0), Elem::ZERO);
        assert_eq!(a.elem(1), Elem::ONE);
        for x in 0..4u8 {
            assert_eq!(a.add(x, x), 0);
            assert_eq!(a.mul(1, x), x);
            assert_eq!(a.add(x, a.neg(x)), 0);
        }
        let prime = Alphabet::new(&Field::new(3, 2, None).unwrap(), 3).unwrap();
        assert_eq!(prime.mul(2, 2), 1);
        assert_eq!(prime.symbol(Elem(2)).unwrap(), 2);
    }
}
