//! Integer-side combinatorics modulo `n = q^m - 1`: q-ary expansions and
//! their runs, q-cyclotomic cosets, negation pairs between cosets, and the
//! run-count recursion `l_r(s)`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

/// Default number of sequences the run-count oracle may enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 20;

/// `q^m - 1`, checking `q >= 2`, `m >= 1` and overflow.
pub fn modulus_n(q: u64, m: u32) -> Result<u64> {
    if q < 2 {
        return Err(out_of_range("q", q, 2, u64::MAX));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    q.checked_pow(m).map(|v| v - 1).ok_or_else(|| Error::Precondition(format!("{q}^{m} overflows 64 bits")))
}

/// The q-ary digits of an integer in `[0, q^m - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    q: u64,
    /// `digits[i]` is the coefficient of `q^i`.
    digits: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunMode {
    Straight,
    Circular,
}

impl Expansion {
    pub fn new(s: u64, q: u64, m: u32) -> Result<Expansion> {
        let n = modulus_n(q, m)?;
        if s > n {
            return Err(out_of_range("s", s, 0, n));
        }
        let mut digits = Vec::with_capacity(m as usize);
        let mut rest = s;
        for _ in 0..m {
            digits.push((rest % q) as u32);
            rest /= q;
        }
        Ok(Expansion { q, digits })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn m(&self) -> u32 {
        self.digits.len() as u32
    }

    /// Digits with `s_0` first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Digits in the written order `(s_{m-1}, .., s_0)`.
    pub fn digits_msb_first(&self) -> Vec<u32> {
        self.digits.iter().rev().copied().collect()
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0, |acc, &d| acc * self.q + d as u64)
    }

    /// Number of nonzero digits.
    pub fn weight(&self) -> usize {
        self.digits.iter().filter(|&&d| d != 0).count()
    }

    /// Digit sum.
    pub fn q_weight(&self) -> u64 {
        self.digits.iter().map(|&d| d as u64).sum()
    }

    /// Positions `i` with `s_i != 0`, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.digits.len()).filter(|&i| self.digits[i] != 0).collect()
    }

    /// Longest run of `symbol`; circular runs may wrap from `s_0` to `s_{m-1}`.
    pub fn longest_run(&self, symbol: u32, mode: RunMode) -> usize {
        longest_run_digits(&self.digits, symbol, mode)
    }
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits_msb_first().iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn expand(s: u64, q: u64, m: u32) -> Result<Expansion> {
    Expansion::new(s, q, m)
}

pub fn run_scan(seq: &Expansion, symbol: u32, mode: RunMode) -> usize {
    seq.longest_run(symbol, mode)
}

/// Longest run of `symbol` in a digit slice.
pub fn longest_run_digits(digits: &[u32], symbol: u32, mode: RunMode) -> usize {
    let len = digits.len();
    if digits.iter().all(|&d| d == symbol) {
        return len;
    }
    let mut best = 0;
    let mut cur = 0;
    for &d in digits {
        cur = if d == symbol { cur + 1 } else { 0 };
        best = best.max(cur);
    }
    if mode == RunMode::Circular {
        let head = digits.iter().take_while(|&&d| d == symbol).count();
        let tail = digits.iter().rev().take_while(|&&d| d == symbol).count();
        best = best.max(head + tail);
    }
    best
}

/// A q-cyclotomic coset modulo `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCoset {
    n: u64,
    members: Vec<u64>,
}

impl CyclotomicCoset {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Sorted members.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn leader(&self) -> u64 {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

fn orbit(i: u64, q: u64, n: u64) -> Vec<u64> {
    let start = i % n;
    let mut out = vec![start];
    let mut x = mulmod(start, q, n);
    while x != start {
        out.push(x);
        x = mulmod(x, q, n);
    }
    out
}

#[inline]
fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    (a as u128 * b as u128 % n as u128) as u64
}

/// `C_i = { i q^j mod n }`.
pub fn cyclotomic_coset(i: u64, q: u64, m: u32) -> Result<CyclotomicCoset> {
    let n = modulus_n(q, m)?;
    if i >= n {
        return Err(out_of_range("i", i, 0, n as i128 - 1));
    }
    let mut members = orbit(i, q, n);
    members.sort_unstable();
    Ok(CyclotomicCoset { n, members })
}

/// `cl(i)`: smallest element of the coset of `i` modulo `n`.
pub fn coset_leader(i: u64, q: u64, n: u64) -> u64 {
    let start = i % n;
    let mut best = start;
    let mut x = mulmod(start, q, n);
    while x != start {
        best = best.min(x);
        x = mulmod(x, q, n);
    }
    best
}

/// Coset leader of every residue modulo `n`.
#[derive(Clone, Debug)]
pub struct LeaderTable {
    q: u64,
    n: u64,
    leaders: Vec<u64>,
}

impl LeaderTable {
    pub fn new(q: u64, m: u32) -> Result<LeaderTable> {
        let n = modulus_n(q, m)?;
        let len = usize::try_from(n).map_err(|_| Error::Precondition("n too large".into()))?;
        let mut leaders = vec![u64::MAX; len];
        for i in 0..n {
            if leaders[i as usize] != u64::MAX {
                continue;
            }
            let orb = orbit(i, q, n);
            let lead = *orb.iter().min().expect("orbit is nonempty");
            for x in orb {
                leaders[x as usize] = lead;
            }
        }
        Ok(LeaderTable { q, n, leaders })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn leader(&self, i: u64) -> u64 {
        self.leaders[(i % self.n) as usize]
    }
}

/// `-j ∈ C_i`, i.e. `q^l i + j ≡ 0 (mod n)` for some `l`.
pub fn negation_in_coset(i: u64, j: u64, q: u64, m: u32) -> Result<bool> {
    let n = modulus_n(q, m)?;
    for (name, v) in [("i", i), ("j", j)] {
        if v == 0 || v >= n {
            return Err(out_of_range(name, v, 1, n as i128 - 1));
        }
    }
    Ok(coset_leader(i, q, n) == coset_leader(n - j, q, n))
}

/// Largest `l` (and largest `i, j`) covered by the negation-pair results:
/// `q^{(m+1)/2}` for odd `m`, `2 q^{m/2}` for even `m`, capped at `n - 1`.
pub fn negation_range(q: u64, m: u32) -> Result<u64> {
    let n = modulus_n(q, m)?;
    let top = if m % 2 == 1 { q.pow(m.div_ceil(2)) } else { 2 * q.pow(m / 2) };
    Ok(top.min(n - 1))
}

/// Result of counting `|{(cl(i), cl(j)) : -j ∈ C_i, 1 <= i, j <= l}|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeaderPairCount {
    pub q: u64,
    pub m: u32,
    pub l: u64,
    pub closed: Option<u64>,
    pub enumerated: u64,
}

impl LeaderPairCount {
    /// Closed form absent or equal to the enumeration.
    pub fn is_consistent(&self) -> bool {
        self.closed.is_none_or(|c| c == self.enumerated)
    }
}

/// Piecewise closed count of distinct leader pairs. `None` outside the
/// ranges where it is stated (for `q = 2`, `m` even it needs `m >= 4`, and
/// `m >= 6` for its last two pieces).
pub fn leader_pair_count_closed(l: u64, q: u64, m: u32) -> Option<u64> {
    if l == 0 || m < 2 {
        return None;
    }
    let n = modulus_n(q, m).ok()?;
    if l > n - 1 {
        return None;
    }
    if m % 2 == 1 {
        let t = q.checked_pow(m.div_ceil(2))?;
        return if l + q <= t {
            Some(0)
        } else if l + 2 <= t {
            // l = t - q + h with 1 <= h <= q - 2
            Some(2 * (l + q - t))
        } else if l <= t {
            Some(2 * (q - 1))
        } else {
            None
        };
    }
    let h = q.checked_pow(m / 2)?;
    if q > 2 {
        if l + 2 <= h {
            Some(0)
        } else if l + 3 <= 2 * h {
            Some(1)
        } else if l + 2 == 2 * h {
            Some(2)
        } else if l <= 2 * h {
            Some(4)
        } else {
            None
        }
    } else if m < 4 {
        None
    } else if l + 2 <= h {
        Some(0)
    } else if l + 4 <= 2 * h {
        Some(1)
    } else if m < 6 {
        None
    } else if l + 2 <= 2 * h {
        Some(3)
    } else if l <= 2 * h {
        Some(5)
    } else {
        None
    }
}

/// Direct enumeration of distinct leader pairs for every `l` in `1..=top`;
/// entry `l - 1` holds the count for `l`.
pub fn leader_pair_counts_enumerated(top: u64, q: u64, m: u32) -> Result<Vec<u64>> {
    let n = modulus_n(q, m)?;
    if top >= n {
        return Err(out_of_range("l", top, 1, n as i128 - 1));
    }
    let lead: Vec<u64> = (0..=top).map(|i| coset_leader(i, q, n)).collect();
    let neg_lead: Vec<u64> = (0..=top).map(|j| if j == 0 { u64::MAX } else { coset_leader(n - j, q, n) }).collect();
    let mut by_lead: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut by_neg: HashMap<u64, Vec<u64>> = HashMap::new();
    let mut pairs: HashSet<(u64, u64)> = HashSet::new();
    let mut out = Vec::with_capacity(top as usize);
    for l in 1..=top {
        let li = l as usize;
        by_lead.entry(lead[li]).or_default().push(l);
        by_neg.entry(neg_lead[li]).or_default().push(l);
        // new i = l against all j <= l
        if let Some(js) = by_neg.get(&lead[li]) {
            for &j in js {
                pairs.insert((lead[li], lead[j as usize]));
            }
        }
        // new j = l against all i <= l
        if let Some(is) = by_lead.get(&neg_lead[li]) {
            for &i in is {
                pairs.insert((lead[i as usize], lead[li]));
            }
        }
        out.push(pairs.len() as u64);
    }
    Ok(out)
}

pub fn leader_pair_count(l: u64, q: u64, m: u32) -> Result<LeaderPairCount> {
    if l == 0 {
        return Err(out_of_range("l", 0, 1, u64::MAX));
    }
    let enumerated = *leader_pair_counts_enumerated(l, q, m)?.last().expect("l >= 1");
    Ok(LeaderPairCount { q, m, l, closed: leader_pair_count_closed(l, q, m), enumerated })
}

/// The digit-pattern families that negation pairs `(i, j)` fall into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternFamily {
    /// m odd: `i` has q-1 at positions 1..=(m-1)/2 and `u` at 0; `j` has
    /// q-1-u at (m-1)/2 and q-1 below.
    OddSplit,
    /// `OddSplit` with `i` and `j` exchanged.
    OddSplitSwapped,
    /// m even, q > 2: `i = j` = 1 at m/2, q-1 at m/2-1..=1, q-2 at 0.
    EvenCarry,
    /// m even, q > 2: `i` = q-1 at m/2-1..=1, q-2 at 0; `j` = 1 at m/2, q-1 below.
    EvenTailLead,
    /// `EvenTailLead` with `i` and `j` exchanged.
    EvenLeadTail,
    /// m even: `i = j` = q-1 at positions 0..m/2.
    EvenHalf,
    /// q = 2, m even: `i` = ones at 0..=m/2-2, `j` = ones at 0..=m/2.
    BinaryShortLong,
    /// `BinaryShortLong` with `i` and `j` exchanged.
    BinaryLongShort,
    /// q = 2, m even: `i` = 1 at m/2, 0 at m/2-1, ones below; `j` = ones at
    /// m/2..=2, 0 at 1, 1 at 0.
    BinaryGapHigh,
    /// `BinaryGapHigh` with `i` and `j` exchanged.
    BinaryGapLow,
}

/// A family plus its free digit `u` where the family has one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternForm {
    pub family: PatternFamily,
    pub u: Option<u32>,
}

impl PatternForm {
    /// The `(i, j)` instance this form denotes at `(q, m)`, if it is a valid
    /// pair of positive integers there.
    pub fn render(&self, q: u64, m: u32) -> Option<(u64, u64)> {
        use PatternFamily::*;
        let num = |spec: &[(u32, u64)]| -> u64 { spec.iter().map(|&(pos, d)| d * q.pow(pos)).sum() };
        let run = |lo: u32, hi: u32, d: u64| -> Vec<(u32, u64)> { (lo..=hi).map(|p| (p, d)).collect() };
        let h = m / 2;
        let (i, j) = match self.family {
            OddSplit | OddSplitSwapped => {
                if m.is_multiple_of(2) {
                    return None;
                }
                let u = self.u? as u64;
                if u >= q {
                    return None;
                }
                let hh = (m - 1) / 2;
                let mut a = if hh >= 1 { run(1, hh, q - 1) } else { Vec::new() };
                a.push((0, u));
                let mut b = vec![(hh, q - 1 - u)];
                if hh >= 1 {
                    b.extend(run(0, hh - 1, q - 1));
                }
                let (a, b) = (num(&a), num(&b));
                if self.family == OddSplit {
                    (a, b)
                } else {
                    (b, a)
                }
            }
            EvenCarry | EvenTailLead | EvenLeadTail => {
                if m % 2 == 1 || q == 2 {
                    return None;
                }
                let mut carry = vec![(h, 1), (0, q - 2)];
                let mut tail = vec![(0, q - 2)];
                if h >= 2 {
                    carry.extend(run(1, h - 1, q - 1));
                    tail.extend(run(1, h - 1, q - 1));
                }
                let mut lead = vec![(h, 1)];
                lead.extend(run(0, h - 1, q - 1));
                let (carry, tail, lead) = (num(&carry), num(&tail), num(&lead));
                match self.family {
                    EvenCarry => (carry, carry),
                    EvenTailLead => (tail, lead),
                    _ => (lead, tail),
                }
            }
            EvenHalf => {
                if m % 2 == 1 {
                    return None;
                }
                let v = num(&run(0, h - 1, q - 1));
                (v, v)
            }
            BinaryShortLong | BinaryLongShort | BinaryGapHigh | BinaryGapLow => {
                if m % 2 == 1 || q != 2 || h < 2 {
                    return None;
                }
                let (a, b) = match self.family {
                    BinaryShortLong | BinaryLongShort => (num(&run(0, h - 2, 1)), num(&run(0, h, 1))),
                    _ => {
                        let mut a = vec![(h, 1)];
                        a.extend(run(0, h - 2, 1));
                        let mut b = run(2, h, 1);
                        b.push((0, 1));
                        (num(&a), num(&b))
                    }
                };
                match self.family {
                    BinaryShortLong | BinaryGapHigh => (a, b),
                    _ => (b, a),
                }
            }
        };
        (i > 0 && j > 0).then_some((i, j))
    }

    /// Every form that applies at `(q, m)`, in catalogue order.
    pub fn catalogue(q: u64, m: u32) -> Vec<PatternForm> {
        use PatternFamily::*;
        let plain = |family| PatternForm { family, u: None };
        let forms: Vec<PatternForm> = if m % 2 == 1 {
            (0..q as u32)
                .flat_map(|u| {
                    [PatternForm { family: OddSplit, u: Some(u) }, PatternForm { family: OddSplitSwapped, u: Some(u) }]
                })
                .collect()
        } else if q > 2 {
            vec![plain(EvenCarry), plain(EvenTailLead), plain(EvenLeadTail), plain(EvenHalf)]
        } else {
            vec![
                plain(BinaryShortLong),
                plain(BinaryLongShort),
                plain(EvenHalf),
                plain(BinaryGapHigh),
                plain(BinaryGapLow),
            ]
        };
        forms.into_iter().filter(|f| f.render(q, m).is_some()).collect()
    }
}

impl fmt::Display for PatternForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.u {
            Some(u) => write!(f, "{:?}(u={u})", self.family),
            None => write!(f, "{:?}", self.family),
        }
    }
}

fn strip_q(mut v: u64, q: u64) -> u64 {
    while v.is_multiple_of(q) {
        v /= q;
    }
    v
}

/// Matches a negation pair against the catalogued families. Patterns are
/// compared after removing factors of `q`: a family instance multiplied by a
/// power of `q` (without wraparound) is the same pattern shifted left.
/// Returns `Ok(None)` for a pair outside every family.
pub fn classify_negation_pair(i: u64, j: u64, q: u64, m: u32) -> Result<Option<PatternForm>> {
    let top = negation_range(q, m)?;
    for (name, v) in [("i", i), ("j", j)] {
        if v == 0 || v > top {
            return Err(out_of_range(name, v, 1, top));
        }
    }
    if !negation_in_coset(i, j, q, m)? {
        return Err(Error::Precondition(format!("-{j} is not in C_{i}")));
    }
    let key = (strip_q(i, q), strip_q(j, q));
    Ok(PatternForm::catalogue(q, m).into_iter().find(|form| {
        let (a, b) = form.render(q, m).expect("catalogue only holds renderable forms");
        (strip_q(a, q), strip_q(b, q)) == key
    }))
}

/// `l_r(s)`: length-s sequences over `q` symbols containing a straight run
/// of at least `r` zeros, via the recursion
/// `l_r(s) = q l_r(s-1) + (q-1)(q^{s-r-1} - l_r(s-r-1))`.
pub fn run_count_l(r: u32, s: u32, q: u64) -> u128 {
    assert!(r >= 1, "run length must be positive");
    let q = q as u128;
    let mut table = vec![0u128; s as usize + 1];
    for t in 0..=s {
        table[t as usize] = if t < r {
            0
        } else if t == r {
            1
        } else {
            let back = (t - r - 1) as usize;
            q * table[t as usize - 1] + (q - 1) * (q.pow(t - r - 1) - table[back])
        };
    }
    table[s as usize]
}

/// Counts the same quantity as [`run_count_l`] by listing all `q^s`
/// sequences.
pub fn run_count_oracle(r: u32, s: u32, q: u64, budget: u128) -> Result<u128> {
    let total = (q as u128).checked_pow(s).ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let mut digits = vec![0u32; s as usize];
    let mut count = 0u128;
    for _ in 0..total {
        if longest_run_digits(&digits, 0, RunMode::Straight) >= r as usize {
            count += 1;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if (*d as u64) < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_examples() {
        let z = expand(0, 3, 4).unwrap();
        assert_eq!(z.weight(), 0);
        assert!(z.support().is_empty());
        let full = expand(80, 3, 4).unwrap();
        assert_eq!(full.digits(), &[2, 2, 2, 2]);
        assert_eq!(full.weight(), 4);
        let five = expand(5, 2, 4).unwrap();
        assert_eq!(five.digits_msb_first(), vec![0, 1, 0, 1]);
        assert_eq!(five.support(), vec![0, 2]);
        assert_eq!(five.q_weight(), 2);
        assert_eq!(five.value(), 5);
        assert_eq!(five.to_string(), "(0,1,0,1)");
        assert!(expand(16, 2, 4).is_err());
    }

    #[test]
    fn run_examples() {
        let zero = expand(0, 2, 4).unwrap();
        assert_eq!(run_scan(&zero, 0, RunMode::Straight), 4);
        assert_eq!(run_scan(&zero, 0, RunMode::Circular), 4);
        // written (1,0,0,1): the zeros sit in the middle
        let nine = expand(9, 2, 4).unwrap();
        assert_eq!(run_scan(&nine, 0, RunMode::Circular), 2);
        // written (0,1,1,0): zeros at both ends glue together
        let six = expand(6, 2, 4).unwrap();
        assert_eq!(run_scan(&six, 0, RunMode::Circular), 2);
        assert_eq!(run_scan(&six, 0, RunMode::Straight), 1);
        let five = expand(5, 2, 4).unwrap();
        assert_eq!(run_scan(&five, 0, RunMode::Straight), 1);
    }

    #[test]
    fn coset_examples() {
        let c0 = cyclotomic_coset(0, 2, 4).unwrap();
        assert_eq!(c0.members(), &[0]);
        let c5 = cyclotomic_coset(5, 2, 4).unwrap();
        assert_eq!(c5.members(), &[5, 10]);
        for i in 1..=8 {
            assert_eq!(cyclotomic_coset(i, 2, 5).unwrap().len(), 5);
        }
        assert!(cyclotomic_coset(15, 2, 4).is_err());
        let table = LeaderTable::new(2, 4).unwrap();
        assert_eq!(table.leader(12), 3);
    }

    #[test]
    fn negation_examples() {
        assert!(negation_in_coset(4, 4, 3, 2).unwrap());
        assert!(negation_in_coset(3, 3, 2, 4).unwrap());
        assert!(!negation_in_coset(1, 1, 2, 5).unwrap());
        assert!(negation_in_coset(0, 1, 2, 5).is_err());
    }

    #[test]
    fn leader_pair_examples() {
        let c = leader_pair_count(3, 2, 5).unwrap();
        assert_eq!((c.closed, c.enumerated), (Some(0), 0));
        let c = leader_pair_count(7, 2, 6).unwrap();
        assert_eq!((c.closed, c.enumerated), (Some(1), 1));
        let c = leader_pair_count(2, 3, 2).unwrap();
        assert_eq!((c.closed, c.enumerated), (Some(1), 1));
        assert_eq!(leader_pair_count_closed(6, 2, 4), None);
    }

    #[test]
    fn classification_examples() {
        use PatternFamily::*;
        assert_eq!(classify_negation_pair(7, 7, 2, 6).unwrap().unwrap().family, EvenHalf);
        assert_eq!(classify_negation_pair(3, 3, 2, 4).unwrap().unwrap().family, EvenHalf);
        assert_eq!(classify_negation_pair(11, 13, 2, 6).unwrap().unwrap().family, BinaryGapHigh);
        // (0,2,1) with (0,1,2) over GF(3): u = 1
        let f = classify_negation_pair(7, 5, 3, 3).unwrap().unwrap();
        assert_eq!(f, PatternForm { family: OddSplit, u: Some(1) });
        assert!(classify_negation_pair(1, 1, 2, 5).is_err());
    }

    #[test]
    fn run_count_examples() {
        assert_eq!(run_count_l(2, 2, 5), 1);
        assert_eq!(run_count_l(2, 3, 2), 3);
        assert_eq!(run_count_l(2, 4, 2), 8);
        assert_eq!(run_count_oracle(1, 1, 2, DEFAULT_ENUMERATION_BUDGET).unwrap(), 1);
        assert_eq!(run_count_oracle(2, 3, 3, DEFAULT_ENUMERATION_BUDGET).unwrap(), 5);
        assert_eq!(run_count_oracle(3, 2, 2, DEFAULT_ENUMERATION_BUDGET).unwrap(), 0);
        assert!(matches!(run_count_oracle(2, 21, 2, DEFAULT_ENUMERATION_BUDGET), Err(Error::BudgetExceeded { .. })));
    }
}
