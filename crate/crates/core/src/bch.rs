//! The generators `g+`, `g-`, `g~ = lcm(g+, g-)` and `g_bar = (x - 1) g~`
//! and the cyclic codes they generate.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::cosets::{coset_leader, cyclotomic_coset};
use crate::error::{out_of_range, Error, Result};
use crate::ffield::{Elem, Extension};
use crate::qpoly::{minimal_polynomial, Poly};
use crate::symbols::{Alphabet, PackedWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Zeros `alpha^1 .. alpha^{delta-1}`.
    Plus,
    /// Zeros `alpha^{n-delta+1} .. alpha^{n-1}`.
    Minus,
    /// Union of the plus and minus zeros.
    Tilde,
    /// The tilde zeros together with 1.
    Overline,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Plus, Variant::Minus, Variant::Tilde, Variant::Overline];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Plus => "plus",
            Variant::Minus => "minus",
            Variant::Tilde => "tilde",
            Variant::Overline => "overline",
        }
    }

    /// Largest admissible designed distance for length `n`.
    pub fn max_delta(self, n: u64) -> u64 {
        match self {
            Variant::Plus | Variant::Minus => n,
            Variant::Tilde | Variant::Overline => (n + 2) / 2,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s.to_ascii_lowercase().as_str() {
            "plus" | "+" => Ok(Variant::Plus),
            "minus" | "-" => Ok(Variant::Minus),
            "tilde" => Ok(Variant::Tilde),
            "overline" | "bar" => Ok(Variant::Overline),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

fn check_delta(n: u64, delta: u64, variant: Variant) -> Result<()> {
    let max = variant.max_delta(n);
    if delta < 2 || delta > max {
        return Err(out_of_range("delta", delta, 2, max));
    }
    Ok(())
}

/// Leaders of the cosets a generator picks up when the designed distance
/// grows from `delta - 1` to `delta` (or all of them for `delta = 2`).
fn new_leaders(q: u64, n: u64, delta: u64, variant: Variant) -> Vec<u64> {
    let i = delta - 1;
    let mut out = Vec::new();
    if delta == 2 && variant == Variant::Overline {
        out.push(0);
    }
    if matches!(variant, Variant::Plus | Variant::Tilde | Variant::Overline) {
        out.push(coset_leader(i, q, n));
    }
    if matches!(variant, Variant::Minus | Variant::Tilde | Variant::Overline) {
        out.push(coset_leader(n - i, q, n));
    }
    out
}

/// Sorted coset leaders of the zero set of the generator.
pub fn zero_leaders(q: u64, m: u32, delta: u64, variant: Variant) -> Result<Vec<u64>> {
    let n = crate::cosets::modulus_n(q, m)?;
    check_delta(n, delta, variant)?;
    let set: BTreeSet<u64> = (2..=delta).flat_map(|d| new_leaders(q, n, d, variant)).collect();
    Ok(set.into_iter().collect())
}

/// One constructed code.
#[derive(Clone, Debug)]
pub struct BchCode {
    ext: Extension,
    delta: u64,
    variant: Variant,
    generator: Poly,
    leaders: Vec<u64>,
}

impl BchCode {
    pub fn new(ext: &Extension, delta: u64, variant: Variant) -> Result<BchCode> {
        let leaders = zero_leaders(ext.q(), ext.m(), delta, variant)?;
        let mut generator = Poly::one(ext.field());
        for &l in &leaders {
            generator = &generator * &minimal_polynomial(ext, l)?;
        }
        Ok(BchCode { ext: ext.clone(), delta, variant, generator, leaders })
    }

    /// Builds the codes for every designed distance in `2..=max_delta`,
    /// extending one generator instead of starting over for each.
    pub fn nested(ext: &Extension, variant: Variant, max_delta: u64) -> Result<Vec<BchCode>> {
        let n = ext.n();
        check_delta(n, max_delta, variant)?;
        let mut out = Vec::with_capacity(max_delta as usize);
        let mut generator = Poly::one(ext.field());
        let mut leaders = BTreeSet::new();
        for delta in 2..=max_delta {
            for l in new_leaders(ext.q(), n, delta, variant) {
                if leaders.insert(l) {
                    generator = &generator * &minimal_polynomial(ext, l)?;
                }
            }
            out.push(BchCode {
                ext: ext.clone(),
                delta,
                variant,
                generator: generator.clone(),
                leaders: leaders.iter().copied().collect(),
            });
        }
        Ok(out)
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn q(&self) -> u64 {
        self.ext.q()
    }

    pub fn m(&self) -> u32 {
        self.ext.m()
    }

    pub fn n(&self) -> usize {
        self.ext.n() as usize
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn generator(&self) -> &Poly {
        &self.generator
    }

    pub fn degree(&self) -> usize {
        self.generator.degree().expect("generators are nonzero")
    }

    /// `k = n - deg g`.
    pub fn dimension(&self) -> usize {
        self.n() - self.degree()
    }

    pub fn zero_leaders(&self) -> &[u64] {
        &self.leaders
    }

    /// Exponents `i` with `g(alpha^i) = 0`, sorted.
    pub fn zero_set(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self
            .leaders
            .iter()
            .flat_map(|&l| cyclotomic_coset(l, self.q(), self.m()).expect("leader in range").members().to_vec())
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_zero(&self, i: u64) -> bool {
        let l = coset_leader(i, self.q(), self.ext.n());
        self.leaders.binary_search(&l).is_ok()
    }

    fn check_word(&self, c: &Poly) -> Result<()> {
        if c.field() != self.ext.field() {
            return Err(Error::FieldMismatch);
        }
        if c.coeffs().len() > self.n() {
            return Err(Error::Precondition(format!("degree must be below n = {}", self.n())));
        }
        for &a in c.coeffs() {
            if !self.ext.field().in_subfield(a, self.q())? {
                return Err(Error::NotInAlphabet { q: self.q() });
            }
        }
        Ok(())
    }

    pub fn membership(&self, c: &Poly) -> Result<bool> {
        self.check_word(c)?;
        c.is_divisible_by(&self.generator)
    }

    /// Non-systematic encoding `u(x) g(x)`.
    pub fn encode(&self, msg: &Poly) -> Result<Poly> {
        self.check_word(msg)?;
        if msg.coeffs().len() > self.dimension() {
            return Err(Error::Precondition(format!("message degree must be below k = {}", self.dimension())));
        }
        Ok((msg * &self.generator).reduce_cyclic(self.n()))
    }

    pub fn is_reversible(&self) -> bool {
        self.generator.is_self_reciprocal()
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.ext.field(), self.q())
    }

    /// The generator as a symbol word of length `deg g + 1`.
    pub fn generator_symbols(&self) -> Result<Vec<u8>> {
        self.alphabet()?.word(&self.generator, self.degree() + 1)
    }

    /// Bit-packed generator of length `n` (`n + 1` for the zero code, whose
    /// generator is `x^n - 1`), when `q` is 2 or 3.
    pub fn packed_generator(&self) -> Option<PackedWord> {
        if !PackedWord::supports(self.q()) {
            return None;
        }
        let mut w = PackedWord::zero(self.q() as u8, self.n().max(self.degree() + 1));
        for (i, &c) in self.generator.coeffs().iter().enumerate() {
            if c != Elem::ZERO {
                w.set(i, c.0 as u8);
            }
        }
        Some(w)
    }

    pub fn report(&self) -> CodeReport {
        CodeReport {
            q: self.q(),
            m: self.m(),
            n: self.n() as u64,
            delta: self.delta,
            variant: self.variant,
            generator: self.generator.to_string(),
            k: self.dimension() as u64,
            self_reciprocal: self.is_reversible(),
        }
    }
}

/// Serializable summary of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub q: u64,
    pub m: u32,
    pub n: u64,
    pub delta: u64,
    pub variant: Variant,
    pub generator: String,
    pub k: u64,
    pub self_reciprocal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CodeKey {
    q: u64,
    m: u32,
    delta: u64,
    variant: Variant,
    modulus: Vec<u32>,
}

/// Process-wide cache of constructed codes.
#[derive(Default)]
pub struct CodeRegistry {
    codes: RwLock<HashMap<CodeKey, Arc<BchCode>>>,
}

impl CodeRegistry {
    pub fn new() -> CodeRegistry {
        CodeRegistry::default()
    }

    pub fn global() -> &'static CodeRegistry {
        static REGISTRY: OnceLock<CodeRegistry> = OnceLock::new();
        REGISTRY.get_or_init(CodeRegistry::new)
    }

    pub fn get_or_build(&self, ext: &Extension, delta: u64, variant: Variant) -> Result<Arc<BchCode>> {
        let key = CodeKey { q: ext.q(), m: ext.m(), delta, variant, modulus: ext.field().modulus().to_vec() };
        if let Some(code) = self.codes.read().expect("registry lock").get(&key) {
            return Ok(code.clone());
        }
        let code = Arc::new(BchCode::new(ext, delta, variant)?);
        let mut map = self.codes.write().expect("registry lock");
        Ok(map.entry(key).or_insert(code).clone())
    }

    pub fn len(&self) -> usize {
        self.codes.read().expect("registry lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ternary() -> Extension {
        Extension::with_modulus(3, 3, &[1, 2, 0, 1]).unwrap()
    }

    #[test]
    fn ternary_example_generator() {
        let code = BchCode::new(&ternary(), 4, Variant::Overline).unwrap();
        assert_eq!(code.generator().to_string(), "x^13 + x^12 + 2x^11 + 2x^10 + x^8 + 2x^5 + x^3 + x^2 + 2x + 2");
        assert_eq!(code.dimension(), 13);
        assert!(code.is_reversible());
    }

    #[test]
    fn plus_code_has_degree_m() {
        for (q, m) in [(2, 4), (3, 3), (4, 2), (2, 6)] {
            let ext = Extension::canonical(q, m).unwrap();
            let code = BchCode::new(&ext, 2, Variant::Plus).unwrap();
            assert_eq!(code.degree(), m as usize);
        }
    }

    #[test]
    fn binary_overline_dimensions() {
        let ext = Extension::canonical(2, 4).unwrap();
        assert_eq!(BchCode::new(&ext, 3, Variant::Overline).unwrap().dimension(), 6);
        assert_eq!(BchCode::new(&ext, 5, Variant::Overline).unwrap().dimension(), 2);
        assert!(BchCode::new(&ext, 20, Variant::Overline).is_err());
        assert!(BchCode::new(&ext, 1, Variant::Plus).is_err());
    }

    #[test]
    fn membership_and_encoding() {
        let ext = Extension::canonical(2, 4).unwrap();
        let f = ext.field().clone();
        let code = BchCode::new(&ext, 3, Variant::Overline).unwrap();
        let g = code.generator().clone();
        assert!(code.membership(&g).unwrap());
        assert!(!code.membership(&Poly::one(&f)).unwrap());
        assert!(code.membership(&g.shift(1).reduce_cyclic(15)).unwrap());
        assert!(code.encode(&Poly::zero(&f)).unwrap().is_zero());
        assert_eq!(code.encode(&Poly::one(&f)).unwrap(), g);
        assert!(code.encode(&Poly::monomial(&f, Elem::ONE, 6)).is_err());

        let small = BchCode::new(&ext, 5, Variant::Overline).unwrap();
        let mut weights = Vec::new();
        for bits in 0..4i64 {
            let msg = Poly::from_ints(&f, &[bits & 1, bits >> 1]);
            weights.push(small.encode(&msg).unwrap().weight());
        }
        weights.sort_unstable();
        assert_eq!(weights, vec![0, 10, 10, 10]);
    }

    #[test]
    fn reversibility() {
        let ext = Extension::canonical(2, 4).unwrap();
        assert!(!BchCode::new(&ext, 3, Variant::Plus).unwrap().is_reversible());
        for delta in 2..=8 {
            assert!(BchCode::new(&ext, delta, Variant::Tilde).unwrap().is_reversible());
        }
    }

    #[test]
    fn nested_matches_direct() {
        let ext = Extension::canonical(3, 3).unwrap();
        for variant in Variant::ALL {
            let max = variant.max_delta(26).min(14);
            for code in BchCode::nested(&ext, variant, max).unwrap() {
                let direct = BchCode::new(&ext, code.delta(), variant).unwrap();
                assert_eq!(code.generator(), direct.generator());
                assert_eq!(code.zero_leaders(), direct.zero_leaders());
            }
        }
    }

    #[test]
    fn registry_caches() {
        let reg = CodeRegistry::new();
        let ext = Extension::canonical(2, 5).unwrap();
        let a = reg.get_or_build(&ext, 3, Variant::Overline).unwrap();
        let b = reg.get_or_build(&ext, 3, Variant::Overline).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(reg.len(), 1);
    }

    #[test]
    fn report_round_trips() {
        let code = BchCode::new(&ternary(), 4, Variant::Overline).unwrap();
        let json = serde_json::to_string(&code.report()).unwrap();
        let back: CodeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, code.report());
        assert!(json.contains("\"variant\":\"overline\""));
    }
}
