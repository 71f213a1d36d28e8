//! Minimum-distance certificates: exhaustive search, reversible-codeword
//! lifting, subgroup-supported and subspace-supported witnesses, and a
//! low-weight message search on the systematic generator.

use std::collections::BTreeSet;
use std::fmt;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::bch::{BchCode, CodeReport, Variant};
use crate::error::{out_of_range, Error, Result};
use crate::ffield::{Elem, Extension, Field};
use crate::qpoly::Poly;
use crate::symbols::{Alphabet, PackedWord};

/// Default number of codewords an exhaustive search may visit.
pub const DEFAULT_DISTANCE_BUDGET: u128 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Exact,
    UpperWitness,
    LowerBoundOnly,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::Exact => "exact",
            CertificateKind::UpperWitness => "upper-witness",
            CertificateKind::LowerBoundOnly => "lower-bound-only",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceCertificate {
    pub kind: CertificateKind,
    pub d_lower: u64,
    pub d_upper: Option<u64>,
    pub witness: Option<Poly>,
    pub method: String,
}

/// Serializable certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub code: CodeReport,
    pub kind: CertificateKind,
    pub d_lower: u64,
    pub d_upper: Option<u64>,
    pub method: String,
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

impl DistanceCertificate {
    pub fn lower_only(d_lower: u64, method: &str) -> DistanceCertificate {
        DistanceCertificate {
            kind: CertificateKind::LowerBoundOnly,
            d_lower,
            d_upper: None,
            witness: None,
            method: method.into(),
        }
    }

    /// Certificate from a verified codeword, exact when it meets the floor.
    fn from_witness(d_lower: u64, witness: Poly, method: &str) -> DistanceCertificate {
        let w = witness.weight() as u64;
        let d_lower = d_lower.min(w);
        DistanceCertificate {
            kind: if w == d_lower { CertificateKind::Exact } else { CertificateKind::UpperWitness },
            d_lower,
            d_upper: Some(w),
            witness: Some(witness),
            method: method.into(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == CertificateKind::Exact
    }

    /// The exact distance, when known.
    pub fn exact(&self) -> Option<u64> {
        self.is_exact().then_some(self.d_lower)
    }

    /// Re-checks the witness against `code`: membership, weight and the
    /// consistency of the bounds.
    pub fn verify(&self, code: &BchCode) -> Result<bool> {
        if let Some(up) = self.d_upper {
            if self.d_lower > up {
                return Ok(false);
            }
        }
        if self.is_exact() && self.d_upper != Some(self.d_lower) {
            return Ok(false);
        }
        match (&self.witness, self.d_upper) {
            (Some(w), Some(up)) => Ok(!w.is_zero() && w.weight() as u64 == up && code.membership(w)?),
            (None, _) => Ok(self.kind == CertificateKind::LowerBoundOnly || self.d_upper.is_some()),
            (Some(_), None) => Ok(false),
        }
    }

    pub fn report(&self, code: &BchCode, elapsed_ms: u64) -> CertificateReport {
        CertificateReport {
            code: code.report(),
            kind: self.kind,
            d_lower: self.d_lower,
            d_upper: self.d_upper,
            method: self.method.clone(),
            witness: self.witness.as_ref().map(|w| w.to_string()),
            elapsed_ms,
        }
    }
}

/// The BCH floor: `2 delta` for the overline code (its zeros include
/// `2 delta - 1` consecutive powers of alpha), `delta` otherwise.
pub fn designed_floor(code: &BchCode) -> u64 {
    match code.variant() {
        Variant::Overline => 2 * code.delta(),
        _ => code.delta(),
    }
}

/// GF(p)-basis rows of the code: `beta_t x^i g` for `i < k`.
enum Rows {
    Packed(Vec<PackedWord>),
    Generic { alphabet: Alphabet, rows: Vec<Vec<u8>> },
}

struct Enumerator {
    p: u64,
    n: usize,
    rows: Rows,
}

impl Enumerator {
    fn new(code: &BchCode) -> Result<Enumerator> {
        let n = code.n();
        let k = code.dimension();
        let field = code.extension().field();
        let p = field.p() as u64;
        if let Some(g) = code.packed_generator() {
            let deg = code.degree();
            let rows = (0..k)
                .map(|i| {
                    let mut r = PackedWord::zero(p as u8, n);
                    r.add_shifted(&g, i, 1);
                    debug_assert!(r.degree() == Some(deg + i));
                    r
                })
                .collect();
            return Ok(Enumerator { p, n, rows: Rows::Packed(rows) });
        }
        let alphabet = code.alphabet()?;
        let q = code.q();
        let e = (q as f64).log(p as f64).round() as u32;
        let gamma = field.exp(((field.order() - 1) / (q - 1)) as i64);
        let basis: Vec<u8> =
            (0..e).map(|t| alphabet.symbol(field.pow(gamma, t as i64).expect("nonnegative"))).collect::<Result<_>>()?;
        let g = code.generator_symbols()?;
        let mut rows = Vec::with_capacity(k * e as usize);
        for i in 0..k {
            for &b in &basis {
                let mut r = vec![0u8; n];
                for (j, &c) in g.iter().enumerate() {
                    r[i + j] = alphabet.mul(b, c);
                }
                rows.push(r);
            }
        }
        Ok(Enumerator { p, n, rows: Rows::Generic { alphabet, rows } })
    }

    fn len(&self) -> usize {
        match &self.rows {
            Rows::Packed(r) => r.len(),
            Rows::Generic { rows, .. } => rows.len(),
        }
    }

    /// Digits of the Gray codeword number `t`: `g_i = t_i - t_{i+1} mod p`.
    fn gray_digits(&self, t: u128) -> Vec<u64> {
        let p = self.p as u128;
        let mut digits = Vec::with_capacity(self.len());
        let mut rest = t;
        for _ in 0..self.len() {
            digits.push((rest % p) as u64);
            rest /= p;
        }
        (0..digits.len())
            .map(|i| {
                let next = digits.get(i + 1).copied().unwrap_or(0);
                (digits[i] + self.p - next) % self.p
            })
            .collect()
    }

    fn symbols_of(&self, t: u128) -> Vec<u8> {
        let gray = self.gray_digits(t);
        match &self.rows {
            Rows::Packed(rows) => {
                let mut w = PackedWord::zero(self.p as u8, self.n);
                for (row, &d) in rows.iter().zip(&gray) {
                    w.add_shifted(row, 0, d as u8);
                }
                w.symbols()
            }
            Rows::Generic { alphabet, rows } => {
                let mut w = vec![0u8; self.n];
                for (row, &d) in rows.iter().zip(&gray) {
                    for _ in 0..d {
                        for (a, &b) in w.iter_mut().zip(row) {
                            *a = alphabet.add(*a, b);
                        }
                    }
                }
                w
            }
        }
    }

    /// Minimum `(weight, t)` over the nonzero codewords numbered `lo..hi`.
    fn scan(&self, lo: u128, hi: u128) -> Option<(u32, u128)> {
        let start = lo.max(1);
        if start >= hi {
            return None;
        }
        let trailing = |mut v: u128| -> usize {
            if self.p == 2 {
                return v.trailing_zeros() as usize;
            }
            let mut z = 0;
            while v.is_multiple_of(self.p as u128) {
                v /= self.p as u128;
                z += 1;
            }
            z
        };
        let mut best: Option<(u32, u128)> = None;
        match &self.rows {
            Rows::Packed(rows) => {
                let mut w = PackedWord::from_symbols(self.p as u8, &self.symbols_of(start));
                let mut consider = |w: &PackedWord, t: u128| {
                    let wt = w.weight();
                    if best.is_none_or(|(b, _)| wt < b) {
                        best = Some((wt, t));
                    }
                };
                consider(&w, start);
                for t in start..hi - 1 {
                    w.add_words(&rows[trailing(t + 1)]);
                    consider(&w, t + 1);
                }
            }
            Rows::Generic { alphabet, rows } => {
                let mut w = self.symbols_of(start);
                let weight = |w: &[u8]| w.iter().filter(|&&s| s != 0).count() as u32;
                best = Some((weight(&w), start));
                for t in start..hi - 1 {
                    let row = &rows[trailing(t + 1)];
                    for (a, &b) in w.iter_mut().zip(row) {
                        *a = alphabet.add(*a, b);
                    }
                    let wt = weight(&w);
                    if best.is_none_or(|(b, _)| wt < b) {
                        best = Some((wt, t + 1));
                    }
                }
            }
        }
        best
    }

    fn to_poly(&self, code: &BchCode, symbols: &[u8]) -> Result<Poly> {
        let field = code.extension().field();
        Ok(match &self.rows {
            Rows::Packed(_) => Poly::new(field, symbols.iter().map(|&s| Elem(s as u32)).collect()),
            Rows::Generic { alphabet, .. } => alphabet.poly(field, symbols),
        })
    }
}

fn worker_count() -> usize {
    thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Enumerates every nonzero codeword when `q^k <= budget`; otherwise
/// returns a lower-bound-only certificate carrying the BCH floor.
pub fn exact_min_distance(code: &BchCode, budget: u128) -> Result<DistanceCertificate> {
    let floor = designed_floor(code);
    let total = match (code.q() as u128).checked_pow(code.dimension() as u32) {
        Some(t) if t <= budget => t,
        _ => return Ok(DistanceCertificate::lower_only(floor, "bch-floor")),
    };
    if total <= 1 {
        return Err(Error::Precondition("the code has no nonzero codeword".into()));
    }
    let en = Enumerator::new(code)?;
    let workers = worker_count();
    let chunks = if total < 1 << 16 { 1 } else { (workers * 4) as u128 };
    let step = total.div_ceil(chunks);
    let ranges: Vec<(u128, u128)> =
        (0..chunks).map(|c| (c * step, ((c + 1) * step).min(total))).filter(|(a, b)| a < b).collect();
    let results: Vec<Option<(u32, u128)>> = if ranges.len() == 1 || workers == 1 {
        ranges.iter().map(|&(a, b)| en.scan(a, b)).collect()
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = ranges
                .chunks(ranges.len().div_ceil(workers))
                .map(|part| {
                    let en = &en;
                    s.spawn(move || part.iter().map(|&(a, b)| en.scan(a, b)).collect::<Vec<_>>())
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("search worker panicked")).collect()
        })
    };
    let (weight, t) = results.into_iter().flatten().min().expect("a nonzero codeword exists");
    let witness = en.to_poly(code, &en.symbols_of(t))?;
    debug_assert_eq!(witness.weight() as u32, weight);
    Ok(DistanceCertificate {
        kind: CertificateKind::Exact,
        d_lower: weight as u64,
        d_upper: Some(weight as u64),
        witness: Some(witness),
        method: "exhaustive".into(),
    })
}

/// `(x - 1) c(x)` for a reversible `c` in the plus code with `c(1) != 0`,
/// certified against the overline code of the same designed distance.
pub fn lift_reversible(c: &Poly, plus: &BchCode) -> Result<DistanceCertificate> {
    if plus.variant() != Variant::Plus {
        return Err(Error::Precondition("lifting starts from the plus code".into()));
    }
    let n = plus.n();
    if c.is_zero() || !plus.membership(c)? {
        return Err(Error::NotACodeword);
    }
    if !plus.membership(&c.reverse_word(n))? {
        return Err(Error::NotReversible);
    }
    let field = c.field();
    if c.eval(Elem::ONE) == Elem::ZERO {
        return Err(Error::VanishesAtOne);
    }
    let x_minus_one = Poly::new(field, vec![field.neg(Elem::ONE), Elem::ONE]);
    let lifted = (&x_minus_one * c).reduce_cyclic(n);
    let overline = BchCode::new(plus.extension(), plus.delta(), Variant::Overline)?;
    if !overline.membership(&lifted)? {
        return Err(Error::Precondition("lifted word left the overline code".into()));
    }
    let floor = 2 * plus.delta();
    let mut cert = DistanceCertificate::from_witness(floor, lifted, "reversible-lift");
    if c.weight() as u64 == plus.delta() && cert.d_upper == Some(floor) {
        cert.kind = CertificateKind::Exact;
    }
    Ok(cert)
}

/// Row-reduces `rows` over GF(p) in place and returns a basis of the right
/// nullspace, each vector with its free coordinate set to 1.
fn nullspace_mod_p(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let inv = |a: u64| -> u64 {
        let mut r = 1u64;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pr);
        let iv = inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = *v * iv % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                let pivot = rows[rank].clone();
                for (x, &y) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[r][f]) % p;
            }
            v
        })
        .collect()
}

/// A weight-`delta` reversible codeword of the plus code supported on the
/// exponents `n i / delta`, with `c(1) != 0`. The coefficients come from the
/// nullspace of the zero conditions at `alpha^1 .. alpha^{delta-1}`; the
/// first surviving coefficient vector in lexicographic symbol order wins.
pub fn subgroup_witness(ext: &Extension, delta: u64) -> Result<Poly> {
    let n = ext.n();
    if delta < 2 || delta > n {
        return Err(out_of_range("delta", delta, 2, n));
    }
    if !n.is_multiple_of(delta) {
        return Err(Error::NotDivisible { delta, n });
    }
    let field = ext.field();
    let p = field.p() as u64;
    let k = field.k() as usize;
    let alphabet = Alphabet::new(field, ext.q())?;
    let q = ext.q();
    let e = (q as f64).log(p as f64).round() as usize;
    let gamma = field.exp(((field.order() - 1) / (q - 1)) as i64);
    let basis: Vec<Elem> = (0..e).map(|t| field.pow(gamma, t as i64).expect("nonnegative")).collect();
    let step = n / delta;
    let d = delta as usize;
    // unknown b_{i,t} sits in column i * e + t, meaning a_i = sum_t b_{i,t} beta_t
    let cols = d * e;
    let mut rows = Vec::with_capacity((d - 1) * k);
    for j in 1..delta {
        let mut eq = vec![vec![0u64; cols]; k];
        for i in 0..d {
            let z = field.exp((j * i as u64 * step) as i64);
            for (t, &b) in basis.iter().enumerate() {
                for (row, &digit) in eq.iter_mut().zip(field.digits(field.mul(z, b)).iter()) {
                    row[i * e + t] = digit as u64;
                }
            }
        }
        rows.extend(eq);
    }
    let null = nullspace_mod_p(rows, cols, p);
    if null.len() > 24 {
        return Err(Error::BudgetExceeded { needed: (p as u128).pow(null.len() as u32), budget: 1 << 24 });
    }
    let plus = BchCode::new(ext, delta, Variant::Plus)?;
    let mut best: Option<(Vec<u8>, Poly)> = None;
    let combos = (p as u128).pow(null.len() as u32);
    for t in 1..combos {
        let mut coords = vec![0u64; cols];
        let mut rest = t;
        for v in &null {
            let c = (rest % p as u128) as u64;
            rest /= p as u128;
            for (x, &y) in coords.iter_mut().zip(v) {
                *x = (*x + c * y) % p;
            }
        }
        let mut a = Vec::with_capacity(d);
        for i in 0..d {
            let mut s = Elem::ZERO;
            for (t, &b) in basis.iter().enumerate() {
                s = field.add(s, field.mul(field.from_int(coords[i * e + t] as i64), b));
            }
            a.push(alphabet.symbol(s)?);
        }
        if best.as_ref().is_some_and(|(b, _)| *b <= a) {
            continue;
        }
        let mut coeffs = vec![Elem::ZERO; n as usize];
        for (i, &s) in a.iter().enumerate() {
            coeffs[i * step as usize] = alphabet.elem(s);
        }
        let c = Poly::new(field, coeffs);
        if c.eval(Elem::ONE) == Elem::ZERO {
            continue;
        }
        if !plus.membership(&c)? || !plus.membership(&c.reverse_word(n as usize))? {
            continue;
        }
        best = Some((a, c));
    }
    best.map(|(_, c)| c).ok_or_else(|| {
        Error::NoWitness(format!("no subgroup-supported coefficient vector survives for delta = {delta}"))
    })
}

/// Subgroup witness lifted into the overline code.
pub fn subgroup_certificate(ext: &Extension, delta: u64) -> Result<DistanceCertificate> {
    let c = subgroup_witness(ext, delta)?;
    let plus = BchCode::new(ext, delta, Variant::Plus)?;
    let mut cert = lift_reversible(&c, &plus)?;
    cert.method = "subgroup-lift".into();
    Ok(cert)
}

/// Four GF(2)-subspaces of GF(2^m), each listed with 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceQuadruple {
    pub h: [Vec<Elem>; 4],
}

/// Outcome of the checks on a quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrupleCheck {
    pub subspaces: bool,
    pub h1_h2_trivial: bool,
    pub h3_h4_trivial: bool,
    pub inverses_match: bool,
}

impl QuadrupleCheck {
    pub fn all(&self) -> bool {
        self.subspaces && self.h1_h2_trivial && self.h3_h4_trivial && self.inverses_match
    }
}

fn is_subspace(field: &Field, h: &[Elem], r: u32) -> bool {
    let set: BTreeSet<Elem> = h.iter().copied().collect();
    set.len() == 1 << r
        && set.contains(&Elem::ZERO)
        && set.iter().all(|&a| set.iter().all(|&b| set.contains(&field.add(a, b))))
}

impl SubspaceQuadruple {
    /// Builds a quadruple from exponent lists; `None` stands for 0.
    pub fn from_exponents(field: &Field, h: [&[Option<u64>]; 4]) -> SubspaceQuadruple {
        let conv = |v: &[Option<u64>]| -> Vec<Elem> {
            v.iter().map(|e| e.map_or(Elem::ZERO, |e| field.exp(e as i64))).collect()
        };
        SubspaceQuadruple { h: [conv(h[0]), conv(h[1]), conv(h[2]), conv(h[3])] }
    }

    pub fn dimension(&self) -> u32 {
        self.h[0].len().trailing_zeros()
    }

    pub fn check(&self, field: &Field) -> Result<QuadrupleCheck> {
        if field.p() != 2 {
            return Err(Error::Precondition("subspace quadruples live in characteristic 2".into()));
        }
        let r = self.dimension();
        let sets: Vec<BTreeSet<Elem>> = self.h.iter().map(|h| h.iter().copied().collect()).collect();
        let trivial = |a: &BTreeSet<Elem>, b: &BTreeSet<Elem>| a.intersection(b).count() == 1;
        let nonzero = |a: &BTreeSet<Elem>, b: &BTreeSet<Elem>| -> BTreeSet<Elem> {
            a.union(b).copied().filter(|e| !e.is_zero()).collect()
        };
        let inverted: BTreeSet<Elem> =
            nonzero(&sets[0], &sets[1]).into_iter().map(|e| field.inv(e).expect("nonzero")).collect();
        Ok(QuadrupleCheck {
            subspaces: self.h.iter().all(|h| is_subspace(field, h, r)),
            h1_h2_trivial: trivial(&sets[0], &sets[1]),
            h3_h4_trivial: trivial(&sets[2], &sets[3]),
            inverses_match: inverted == nonzero(&sets[2], &sets[3]),
        })
    }

    /// The binary word with a 1 at `x^j` for every `alpha^j` in
    /// `(H1 ∪ H2) \ {0}`.
    pub fn codeword(&self, field: &Field) -> Result<Poly> {
        let n = (field.order() - 1) as usize;
        let mut coeffs = vec![Elem::ZERO; n];
        for &e in self.h[0].iter().chain(&self.h[1]) {
            if !e.is_zero() {
                coeffs[field.log(e)? as usize] = Elem::ONE;
            }
        }
        Ok(Poly::new(field, coeffs))
    }
}

/// All r-dimensional subspaces of GF(2^m), each sorted, in the order of
/// their sorted lists of exponents.
fn subspaces(field: &Field, r: u32) -> Vec<Vec<Elem>> {
    let m = field.k();
    let mut out = Vec::new();
    // reduced row echelon bases: pivot columns chosen, other entries free
    let mut pivots = Vec::new();
    fn choose(m: u32, r: u32, start: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == r {
            out.push(cur.clone());
            return;
        }
        for c in start..m {
            cur.push(c);
            choose(m, r, c + 1, cur, out);
            cur.pop();
        }
    }
    choose(m, r, 0, &mut Vec::new(), &mut pivots);
    for piv in pivots {
        // free positions in each row: columns above its pivot that are not pivots
        let free: Vec<Vec<u32>> = piv.iter().map(|&pc| (pc + 1..m).filter(|c| !piv.contains(c)).collect()).collect();
        let total_free: u32 = free.iter().map(|f| f.len() as u32).sum();
        for bits in 0u64..(1u64 << total_free) {
            let mut used = 0;
            let basis: Vec<u32> = piv
                .iter()
                .zip(&free)
                .map(|(&pc, fr)| {
                    let mut v = 1u32 << pc;
                    for &c in fr {
                        if bits >> used & 1 == 1 {
                            v |= 1 << c;
                        }
                        used += 1;
                    }
                    v
                })
                .collect();
            let mut span: Vec<Elem> = (0u32..1 << r)
                .map(|mask| Elem((0..r as usize).filter(|&i| mask >> i & 1 == 1).fold(0u32, |acc, i| acc ^ basis[i])))
                .collect();
            span.sort_unstable();
            out.push(span);
        }
    }
    let key = |h: &Vec<Elem>| -> Vec<u64> {
        let mut e: Vec<u64> = h.iter().filter(|e| !e.is_zero()).map(|&e| field.log(e).expect("nonzero")).collect();
        e.sort_unstable();
        e
    };
    out.sort_by_cached_key(key);
    out
}

/// Subspaces of dimension `r` inside `pool ∪ {0}` that contain `first`.
fn subspaces_within(field: &Field, pool: &BTreeSet<Elem>, first: Elem, r: u32) -> Vec<BTreeSet<Elem>> {
    fn grow(
        field: &Field,
        pool: &BTreeSet<Elem>,
        span: BTreeSet<Elem>,
        r: u32,
        min_next: Elem,
        out: &mut Vec<BTreeSet<Elem>>,
    ) {
        if span.len() == 1 << r {
            out.push(span);
            return;
        }
        for &v in pool.range(min_next..) {
            if span.contains(&v) {
                continue;
            }
            let shifted: Vec<Elem> = span.iter().map(|&s| field.add(s, v)).collect();
            if shifted.iter().all(|s| pool.contains(s)) {
                let mut next = span.clone();
                next.extend(shifted);
                grow(field, pool, next, r, v, out);
            }
        }
    }
    let mut out = Vec::new();
    let start: BTreeSet<Elem> = [Elem::ZERO, first].into_iter().collect();
    let mut with_zero = pool.clone();
    with_zero.insert(Elem::ZERO);
    grow(field, &with_zero, start, r, Elem(1), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Searches for a quadruple of r-dimensional subspaces and returns it with
/// its weight-`2(2^r - 1)` codeword, which lies in the overline code with
/// `delta = 2^r - 1`.
pub fn subspace_quadruple_witness(ext: &Extension, r: u32) -> Result<Option<(SubspaceQuadruple, Poly)>> {
    let field = ext.field();
    if ext.q() != 2 {
        return Err(Error::Precondition("subspace quadruples need q = 2".into()));
    }
    let m = ext.m();
    if r < 1 || 2 * r > m {
        return Err(out_of_range("r", r, 1, m / 2));
    }
    let all = subspaces(field, r);
    let sets: Vec<BTreeSet<Elem>> = all.iter().map(|h| h.iter().copied().collect()).collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if sets[i].intersection(&sets[j]).count() != 1 {
                continue;
            }
            let inverted: BTreeSet<Elem> =
                sets[i].union(&sets[j]).filter(|e| !e.is_zero()).map(|&e| field.inv(e).expect("nonzero")).collect();
            let first = *inverted.iter().next().expect("nonempty");
            for h3 in subspaces_within(field, &inverted, first, r) {
                let mut rest: BTreeSet<Elem> = inverted.difference(&h3).copied().collect();
                rest.insert(Elem::ZERO);
                if !is_subspace(field, &rest.iter().copied().collect::<Vec<_>>(), r) {
                    continue;
                }
                let quad = SubspaceQuadruple {
                    h: [all[i].clone(), all[j].clone(), h3.into_iter().collect(), rest.into_iter().collect()],
                };
                debug_assert!(quad.check(field)?.all());
                let word = quad.codeword(field)?;
                return Ok(Some((quad, word)));
            }
        }
    }
    Ok(None)
}

/// Exact certificate from a subspace quadruple, or `None` when the search
/// finds none.
pub fn subspace_certificate(ext: &Extension, r: u32) -> Result<Option<DistanceCertificate>> {
    let Some((_, word)) = subspace_quadruple_witness(ext, r)? else { return Ok(None) };
    let delta = (1u64 << r) - 1;
    if delta < 2 {
        return Ok(None);
    }
    let code = BchCode::new(ext, delta, Variant::Overline)?;
    if !code.membership(&word)? {
        return Err(Error::Precondition("subspace word is not in the overline code".into()));
    }
    Ok(Some(DistanceCertificate::from_witness(2 * delta, word, "subspace-quadruple")))
}

/// Depth-first walk over sparse messages, tracking the lightest word seen.
struct SparseWalk<'a> {
    rows: &'a [Vec<u8>],
    alphabet: &'a Alphabet,
    budget: u128,
    visited: u128,
    best: Option<(u32, Vec<u8>)>,
}

impl SparseWalk<'_> {
    /// Returns false once the budget runs out.
    fn run(&mut self, start: usize, left: usize, word: &mut Vec<u8>) -> bool {
        if left == 0 {
            return true;
        }
        let a = self.alphabet;
        for i in start..self.rows.len() {
            for s in 1..a.q() as u8 {
                self.visited += 1;
                if self.visited > self.budget {
                    return false;
                }
                let saved = word.clone();
                for (x, &b) in word.iter_mut().zip(&self.rows[i]) {
                    *x = a.add(*x, a.mul(s, b));
                }
                let wt = word.iter().filter(|&&x| x != 0).count() as u32;
                if self.best.as_ref().is_none_or(|(b, _)| wt < *b) {
                    self.best = Some((wt, word.clone()));
                }
                let ok = self.run(i + 1, left - 1, word);
                *word = saved;
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Smallest-weight codeword among messages of weight at most `max_weight`
/// in systematic form: row `i` is `x^{deg g + i} - (x^{deg g + i} mod g)`.
/// The result is an upper witness; it is exact when it meets the floor.
pub fn sparse_message_search(code: &BchCode, max_weight: usize, budget: u128) -> Result<DistanceCertificate> {
    let field = code.extension().field();
    let n = code.n();
    let k = code.dimension();
    let deg = code.degree();
    let alphabet = code.alphabet()?;
    let g = code.generator();
    let rows: Vec<Vec<u8>> = (0..k)
        .map(|i| {
            let mono = Poly::monomial(field, Elem::ONE, deg + i);
            let r = mono.rem(g).expect("nonzero generator");
            alphabet.word(&(&mono - &r), n)
        })
        .collect::<Result<_>>()?;
    let mut walk = SparseWalk { rows: &rows, alphabet: &alphabet, budget, visited: 0, best: None };
    walk.run(0, max_weight, &mut vec![0u8; n]);
    let best = walk.best;
    let (_, w) = best.ok_or_else(|| Error::NoWitness("empty message space".into()))?;
    let witness = alphabet.poly(field, &w);
    debug_assert!(code.membership(&witness)?);
    Ok(DistanceCertificate::from_witness(designed_floor(code), witness, "sparse-message"))
}

/// Best certificate available for `code`: exhaustive search within the
/// budget, else the witness constructions, keeping the smallest witness.
pub fn best_certificate(code: &BchCode, budget: u128) -> Result<DistanceCertificate> {
    let exhaustive = exact_min_distance(code, budget)?;
    if exhaustive.is_exact() || code.variant() != Variant::Overline {
        return Ok(exhaustive);
    }
    let ext = code.extension();
    let delta = code.delta();
    let mut candidates = Vec::new();
    if ext.n().is_multiple_of(delta) {
        if let Ok(c) = subgroup_certificate(ext, delta) {
            candidates.push(c);
        }
    }
    if code.q() == 2 && (delta + 1).is_power_of_two() {
        let r = (delta + 1).trailing_zeros();
        if 2 * r <= code.m() {
            if let Some(c) = subspace_certificate(ext, r)? {
                candidates.push(c);
            }
        }
    }
    if candidates.iter().all(|c| !c.is_exact()) {
        // each visited message costs a pass over n symbols
        let sparse_budget = (budget / code.n() as u128).max(1);
        if let Ok(c) = sparse_message_search(code, 3, sparse_budget) {
            candidates.push(c);
        }
    }
    Ok(candidates.into_iter().min_by_key(|c| (!c.is_exact(), c.d_upper.unwrap_or(u64::MAX))).unwrap_or(exhaustive))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeStatus {
    Confirmed,
    Refuted,
    Inconclusive,
}

/// Families of overline codes predicted to have minimum distance exactly
/// `2 delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum Conjecture {
    /// `delta = q^lambda - 1` with `1 <= lambda <= m/2`.
    PowerMinusOne { lambda: u32 },
    /// `q = 3`, `delta = 4`, odd `m >= 3`.
    TernaryFour,
}

impl Conjecture {
    pub fn delta(self, q: u64, m: u32) -> Result<u64> {
        match self {
            Conjecture::PowerMinusOne { lambda } => {
                if lambda < 1 || 2 * lambda > m {
                    return Err(out_of_range("lambda", lambda, 1, m / 2));
                }
                Ok(q.pow(lambda) - 1)
            }
            Conjecture::TernaryFour => {
                if q != 3 || m < 3 || m.is_multiple_of(2) {
                    return Err(Error::Precondition("the ternary family needs q = 3 and odd m >= 3".into()));
                }
                Ok(4)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture: Conjecture,
    pub q: u64,
    pub m: u32,
    pub delta: u64,
    pub status: ProbeStatus,
    pub certificate: CertificateReport,
}

/// Tests one instance of a conjectured family against the best certificate
/// within `budget`.
pub fn conjecture_probe(conjecture: Conjecture, q: u64, m: u32, budget: u128) -> Result<ConjectureReport> {
    let delta = conjecture.delta(q, m)?;
    if delta < 2 {
        return Err(Error::Precondition("delta = q^lambda - 1 must be at least 2".into()));
    }
    let ext = Extension::canonical(q, m)?;
    let code = BchCode::new(&ext, delta, Variant::Overline)?;
    let start = std::time::Instant::now();
    let cert = best_certificate(&code, budget)?;
    let status = match (cert.exact(), cert.d_upper) {
        (Some(d), _) if d == 2 * delta => ProbeStatus::Confirmed,
        (Some(_), _) => ProbeStatus::Refuted,
        (None, Some(u)) if u == 2 * delta => ProbeStatus::Confirmed,
        _ => ProbeStatus::Inconclusive,
    };
    Ok(ConjectureReport {
        conjecture,
        q,
        m,
        delta,
        status,
        certificate: cert.report(&code, start.elapsed().as_millis() as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn overline(q: u64, m: u32, delta: u64) -> BchCode {
        BchCode::new(&Extension::canonical(q, m).unwrap(), delta, Variant::Overline).unwrap()
    }

    #[test]
    fn exhaustive_small_codes() {
        let c = exact_min_distance(&overline(2, 4, 3), DEFAULT_DISTANCE_BUDGET).unwrap();
        assert_eq!(c.exact(), Some(6));
        assert!(c.verify(&overline(2, 4, 3)).unwrap());
        let c = exact_min_distance(&overline(2, 5, 5), DEFAULT_DISTANCE_BUDGET).unwrap();
        assert_eq!(c.exact(), Some(10));
        let c = exact_min_distance(&overline(2, 6, 13), DEFAULT_DISTANCE_BUDGET).unwrap();
        assert_eq!(c.exact(), Some(42));
    }

    #[test]
    fn over_budget_gives_floor() {
        let code = overline(2, 6, 3);
        let c = exact_min_distance(&code, 1 << 10).unwrap();
        assert_eq!(c.kind, CertificateKind::LowerBoundOnly);
        assert_eq!(c.d_lower, 6);
        assert!(c.verify(&code).unwrap());
    }

    #[test]
    fn generic_alphabet_search_agrees() {
        // GF(4) symbols take the generic path
        let code = overline(4, 2, 3);
        let c = exact_min_distance(&code, DEFAULT_DISTANCE_BUDGET).unwrap();
        assert!(c.verify(&code).unwrap());
        assert!(c.d_lower >= 6);
    }

    #[test]
    fn subgroup_examples() {
        let ext = Extension::canonical(2, 4).unwrap();
        let w = subgroup_witness(&ext, 3).unwrap();
        assert_eq!(w.weight(), 3);
        let exps: Vec<usize> = (0..15).filter(|&i| w.coeff(i) != Elem::ZERO).collect();
        assert_eq!(exps, vec![0, 5, 10]);
        let cert = subgroup_certificate(&ext, 3).unwrap();
        assert_eq!(cert.exact(), Some(6));
        let ternary = Extension::with_modulus(3, 3, &[1, 2, 0, 1]).unwrap();
        assert!(matches!(subgroup_witness(&ternary, 4), Err(Error::NotDivisible { .. })));
        let cert = subgroup_certificate(&Extension::canonical(2, 6).unwrap(), 9).unwrap();
        assert_eq!(cert.exact(), Some(18));
    }

    #[test]
    fn lift_rejects_bad_inputs() {
        let ext = Extension::canonical(2, 4).unwrap();
        let plus = BchCode::new(&ext, 3, Variant::Plus).unwrap();
        let g = plus.generator().clone();
        assert!(matches!(lift_reversible(&g, &plus), Err(Error::NotReversible)));
        let f = ext.field();
        assert!(matches!(lift_reversible(&Poly::one(f), &plus), Err(Error::NotACodeword)));
    }

    #[test]
    fn quadruple_rejects_equal_halves() {
        let ext = Extension::with_modulus(2, 5, &[1, 0, 1, 0, 0, 1]).unwrap();
        let f = ext.field();
        let h1: &[Option<u64>] = &[None, Some(1), Some(2), Some(19)];
        let q = SubspaceQuadruple::from_exponents(f, [h1, h1, h1, h1]);
        let check = q.check(f).unwrap();
        assert!(check.subspaces);
        assert!(!check.h1_h2_trivial);
    }

    #[test]
    fn quadruple_search_small() {
        let ext = Extension::canonical(2, 4).unwrap();
        if let Some(cert) = subspace_certificate(&ext, 2).unwrap() {
            assert_eq!(cert.exact(), Some(6));
        }
        assert_eq!(subspaces(ext.field(), 2).len(), 35);
    }

    #[test]
    fn sparse_search_finds_floor_for_63_38() {
        let code = overline(2, 6, 5);
        assert_eq!(code.dimension(), 38);
        let cert = sparse_message_search(&code, 3, 1 << 20).unwrap();
        assert_eq!(cert.exact(), Some(10));
        assert!(cert.verify(&code).unwrap());
    }

    #[test]
    fn conjecture_probes() {
        let r = conjecture_probe(Conjecture::TernaryFour, 3, 3, DEFAULT_DISTANCE_BUDGET).unwrap();
        assert_eq!(r.status, ProbeStatus::Confirmed);
        assert_eq!(r.certificate.d_upper, Some(8));
        let r = conjecture_probe(Conjecture::PowerMinusOne { lambda: 2 }, 2, 4, DEFAULT_DISTANCE_BUDGET).unwrap();
        assert_eq!(r.status, ProbeStatus::Confirmed);
        let r = conjecture_probe(Conjecture::PowerMinusOne { lambda: 3 }, 2, 6, 1 << 16).unwrap();
        assert_eq!(r.status, ProbeStatus::Confirmed);
        assert_eq!(r.certificate.d_upper, Some(14));
    }
}
