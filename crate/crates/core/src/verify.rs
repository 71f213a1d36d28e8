//! Parameter sweeps that compare closed forms with enumeration and
//! construction. Each sweep returns one serializable row per case.

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bch::{BchCode, Variant};
use crate::cosets::{
    classify_negation_pair, coset_leader, leader_pair_count_closed, leader_pair_counts_enumerated, longest_run_digits,
    modulus_n, negation_range, run_count_l, PatternForm, RunMode,
};
use crate::error::{Error, Result};
use crate::ffield::{Elem, Extension};
use crate::qpoly::Poly;
use crate::symbols::PackedWord;
use crate::theory::{degree_formula, dimension_bounds, dimension_case, dimension_report};

/// Maps `f` over `items` on scoped worker threads, keeping input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(items.len().max(1));
    if workers <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    thread::scope(|s| {
        let f = &f;
        let handles: Vec<_> =
            items.chunks(chunk).map(|part| s.spawn(move || part.iter().map(f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeaderPairRow {
    pub q: u64,
    pub m: u32,
    pub l: u64,
    pub closed: Option<u64>,
    pub enumerated: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// A negation pair that no catalogued family covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnclassifiedPair {
    pub q: u64,
    pub m: u32,
    pub i: u64,
    pub j: u64,
    pub i_digits: String,
    pub j_digits: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CosetSweep {
    pub rows: Vec<LeaderPairRow>,
    pub pairs_classified: u64,
    pub unclassified: Vec<UnclassifiedPair>,
    /// Family instances that are not negation pairs.
    pub spurious_forms: Vec<String>,
}

impl CosetSweep {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.matches) && self.unclassified.is_empty() && self.spurious_forms.is_empty()
    }
}

/// Leader-pair counts for `l` up to the negation range, plus the pattern
/// classification of every negation pair in that range.
pub fn coset_sweep_one(q: u64, m: u32) -> Result<CosetSweep> {
    let n = modulus_n(q, m)?;
    let top = negation_range(q, m)?;
    let counts = leader_pair_counts_enumerated(top, q, m)?;
    let rows = counts
        .iter()
        .enumerate()
        .map(|(idx, &enumerated)| {
            let l = idx as u64 + 1;
            let closed = leader_pair_count_closed(l, q, m);
            LeaderPairRow { q, m, l, closed, enumerated, matches: closed.is_none_or(|c| c == enumerated) }
        })
        .collect();
    let mut out = CosetSweep { rows, ..Default::default() };
    let neg: Vec<u64> = (1..=top).map(|j| coset_leader(n - j, q, n)).collect();
    for i in 1..=top {
        let li = coset_leader(i, q, n);
        for j in 1..=top {
            if neg[j as usize - 1] != li {
                continue;
            }
            match classify_negation_pair(i, j, q, m)? {
                Some(_) => out.pairs_classified += 1,
                None => out.unclassified.push(UnclassifiedPair {
                    q,
                    m,
                    i,
                    j,
                    i_digits: crate::cosets::expand(i, q, m)?.to_string(),
                    j_digits: crate::cosets::expand(j, q, m)?.to_string(),
                }),
            }
        }
    }
    for form in PatternForm::catalogue(q, m) {
        let (i, j) = form.render(q, m).expect("catalogue entries render");
        let fits = i < n && j < n;
        if !fits || coset_leader(i, q, n) != coset_leader(n - j, q, n) {
            out.spurious_forms.push(format!("q={q} m={m} {form} -> ({i}, {j})"));
        }
    }
    Ok(out)
}

pub fn coset_sweep(qs: &[u64], ms: &[u32]) -> Result<CosetSweep> {
    let grid: Vec<(u64, u32)> = qs.iter().flat_map(|&q| ms.iter().map(move |&m| (q, m))).collect();
    let parts = par_map(&grid, |&(q, m)| coset_sweep_one(q, m));
    let mut out = CosetSweep::default();
    for part in parts {
        let part = part?;
        out.rows.extend(part.rows);
        out.pairs_classified += part.pairs_classified;
        out.unclassified.extend(part.unclassified);
        out.spurious_forms.extend(part.spurious_forms);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRow {
    pub r: u32,
    pub s: u32,
    pub q: u64,
    pub recursion: u128,
    pub oracle: u128,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// For every `r`, the number of length-`s` sequences whose longest straight
/// zero run is at least `r`; index 0 is unused.
pub fn run_count_oracle_all(s: u32, q: u64, budget: u128) -> Result<Vec<u128>> {
    let total = (q as u128).checked_pow(s).unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let mut hist = vec![0u128; s as usize + 1];
    let mut digits = vec![0u32; s as usize];
    for _ in 0..total {
        hist[longest_run_digits(&digits, 0, RunMode::Straight)] += 1;
        for d in digits.iter_mut() {
            *d += 1;
            if (*d as u64) < q {
                break;
            }
            *d = 0;
        }
    }
    // at_least[r] = sum of hist[r..]
    let mut at_least = vec![0u128; s as usize + 2];
    for r in (0..=s as usize).rev() {
        at_least[r] = at_least[r + 1] + hist[r];
    }
    at_least.truncate(s as usize + 1);
    Ok(at_least)
}

/// Recursion against enumeration for `1 <= r <= s <= max_s`.
pub fn run_sweep(qs: &[u64], max_s: u32, budget: u128) -> Result<Vec<RunRow>> {
    let grid: Vec<(u64, u32)> = qs.iter().flat_map(|&q| (1..=max_s).map(move |s| (q, s))).collect();
    let parts = par_map(&grid, |&(q, s)| -> Result<Vec<RunRow>> {
        let oracle = run_count_oracle_all(s, q, budget)?;
        Ok((1..=s)
            .map(|r| {
                let recursion = run_count_l(r, s, q);
                RunRow { r, s, q, recursion, oracle: oracle[r as usize], matches: recursion == oracle[r as usize] }
            })
            .collect())
    });
    let mut rows = Vec::new();
    for p in parts {
        rows.extend(p?);
    }
    rows.sort_by_key(|r| (r.q, r.s, r.r));
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub q: u64,
    pub m: u32,
    pub delta: u64,
    pub case: Option<String>,
    pub epsilon: Option<u8>,
    pub k_closed: Option<i64>,
    pub k_constructed: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Largest `delta` covered by the dimension formula at `(q, m)`, if any.
pub fn max_formula_delta(q: u64, m: u32) -> Option<u64> {
    let n = modulus_n(q, m).ok()?;
    let cap = (n + 2) / 2;
    (2..=cap).take_while(|&d| dimension_case(q, m, d).is_ok()).last()
}

/// Closed-form dimension against `n - deg g_bar` for every `delta` the
/// formula covers.
pub fn dimension_sweep_one(q: u64, m: u32) -> Result<Vec<DimensionRow>> {
    let Some(top) = max_formula_delta(q, m) else { return Ok(Vec::new()) };
    let ext = Extension::canonical(q, m)?;
    let codes = BchCode::nested(&ext, Variant::Overline, top)?;
    codes
        .iter()
        .map(|code| {
            let rep = dimension_report(q, m, code.delta())?.with_constructed(code.dimension() as u64);
            Ok(DimensionRow {
                q,
                m,
                delta: code.delta(),
                case: rep.case.clone(),
                epsilon: rep.epsilon,
                k_closed: rep.k_closed,
                k_constructed: code.dimension() as u64,
                matches: !rep.is_mismatch(),
            })
        })
        .collect()
}

pub fn dimension_sweep(qs: &[u64], ms: &[u32]) -> Result<Vec<DimensionRow>> {
    let grid: Vec<(u64, u32)> = qs.iter().flat_map(|&q| ms.iter().map(move |&m| (q, m))).collect();
    let mut rows = Vec::new();
    for part in par_map(&grid, |&(q, m)| dimension_sweep_one(q, m)) {
        rows.extend(part?);
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBoundsRow {
    pub q: u64,
    pub m: u32,
    pub lambda: u32,
    pub delta: u64,
    pub degree_formula: u128,
    pub degree_plus: u64,
    pub degree_minus: u64,
    pub lower: i128,
    pub upper: i128,
    pub k_constructed: u64,
    pub n_size: Option<u64>,
    pub n_prime_size: u128,
    pub degree_ok: bool,
    pub bounds_ok: bool,
}

/// Degree formula and dimension bounds for `delta = q^lambda`, all admissible
/// `lambda`.
pub fn degree_bounds_sweep(qs: &[u64], ms: &[u32]) -> Result<Vec<DegreeBoundsRow>> {
    let grid: Vec<(u64, u32, u32)> =
        qs.iter().flat_map(|&q| ms.iter().flat_map(move |&m| (m.div_ceil(2)..m).map(move |l| (q, m, l)))).collect();
    let rows = par_map(&grid, |&(q, m, lambda)| -> Result<DegreeBoundsRow> {
        let ext = Extension::canonical(q, m)?;
        let delta = q.pow(lambda);
        let plus = BchCode::new(&ext, delta, Variant::Plus)?;
        let minus = BchCode::new(&ext, delta, Variant::Minus)?;
        let bar = BchCode::new(&ext, delta, Variant::Overline)?;
        let formula = degree_formula(q, m, lambda)?;
        let b = dimension_bounds(q, m, lambda)?;
        let k = bar.dimension() as u64;
        Ok(DegreeBoundsRow {
            q,
            m,
            lambda,
            delta,
            degree_formula: formula,
            degree_plus: plus.degree() as u64,
            degree_minus: minus.degree() as u64,
            lower: b.lower,
            upper: b.upper,
            k_constructed: k,
            n_size: b.n_size,
            n_prime_size: b.n_prime_size,
            degree_ok: formula == plus.degree() as u128 && plus.degree() == minus.degree(),
            bounds_ok: b.brackets(k) && b.n_within_bounds() == Some(true),
        })
    });
    rows.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralRow {
    pub q: u64,
    pub m: u32,
    pub delta: u64,
    pub tilde_self_reciprocal: bool,
    pub overline_self_reciprocal: bool,
    pub overline_is_shifted_tilde: bool,
    pub plus_minus_degrees_equal: bool,
    pub samples: usize,
    pub overline_vanish_at_one: bool,
    pub tilde_reversal_closed: bool,
    pub overline_reversal_closed: bool,
}

impl StructuralRow {
    pub fn passed(&self) -> bool {
        self.tilde_self_reciprocal
            && self.overline_self_reciprocal
            && self.overline_is_shifted_tilde
            && self.plus_minus_degrees_equal
            && self.overline_vanish_at_one
            && self.tilde_reversal_closed
            && self.overline_reversal_closed
    }
}

/// Random codewords `u g` with `deg u < k`, as packed words.
fn random_codewords(g: &PackedWord, n: usize, k: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<PackedWord> {
    let p = g.p();
    (0..count)
        .map(|_| {
            let mut u = PackedWord::zero(p, k.max(1));
            for i in 0..k {
                u.set(i, rng.gen_range(0..p));
            }
            u.mul_poly(g, n)
        })
        .collect()
}

fn shrink(g: &PackedWord) -> PackedWord {
    let d = g.degree().expect("nonzero generator");
    PackedWord::from_symbols(g.p(), &g.symbols()[..=d])
}

/// Structural checks on the tilde and overline codes for `2 <= delta <=
/// max_delta`, drawing `samples` random codewords per code from a seeded
/// generator. Requires `q` in {2, 3}.
pub fn structural_sweep_one(q: u64, m: u32, max_delta: u64, samples: usize, seed: u64) -> Result<Vec<StructuralRow>> {
    if !PackedWord::supports(q) {
        return Err(Error::Precondition("structural sweep runs over GF(2) and GF(3)".into()));
    }
    let ext = Extension::canonical(q, m)?;
    let field = ext.field();
    let n = ext.n() as usize;
    let plus = BchCode::nested(&ext, Variant::Plus, max_delta)?;
    let minus = BchCode::nested(&ext, Variant::Minus, max_delta)?;
    let tilde = BchCode::nested(&ext, Variant::Tilde, max_delta)?;
    let bar = BchCode::nested(&ext, Variant::Overline, max_delta)?;
    let x_minus_one = Poly::new(field, vec![field.neg(Elem::ONE), Elem::ONE]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (q << 32) ^ m as u64);
    let mut rows = Vec::with_capacity(tilde.len());
    for idx in 0..tilde.len() {
        let (t, b) = (&tilde[idx], &bar[idx]);
        let check_reversal = |code: &BchCode, rng: &mut ChaCha8Rng| -> (bool, bool) {
            let g = code.packed_generator().expect("q is 2 or 3");
            let gs = shrink(&g);
            let words = random_codewords(&gs, n, code.dimension(), samples, rng);
            let closed = words.iter().all(|c| c.reversed().rem_monic(&gs).is_zero());
            let vanish = words.iter().all(|c| c.sum() == 0);
            (closed, vanish)
        };
        let (tilde_closed, _) = check_reversal(t, &mut rng);
        let (bar_closed, vanish) = check_reversal(b, &mut rng);
        rows.push(StructuralRow {
            q,
            m,
            delta: t.delta(),
            tilde_self_reciprocal: t.is_reversible(),
            overline_self_reciprocal: b.is_reversible(),
            overline_is_shifted_tilde: &x_minus_one * t.generator() == *b.generator(),
            plus_minus_degrees_equal: plus[idx].degree() == minus[idx].degree(),
            samples,
            overline_vanish_at_one: vanish,
            tilde_reversal_closed: tilde_closed,
            overline_reversal_closed: bar_closed,
        });
    }
    Ok(rows)
}

/// Runs [`structural_sweep_one`] over the `(q, m)` grid up to the largest
/// `delta` the dimension formula covers, or the largest admissible one when
/// the formula covers nothing.
pub fn structural_sweep(qs: &[u64], ms: &[u32], samples: usize, seed: u64) -> Result<Vec<StructuralRow>> {
    let grid: Vec<(u64, u32)> = qs.iter().flat_map(|&q| ms.iter().map(move |&m| (q, m))).collect();
    let mut rows = Vec::new();
    for part in par_map(&grid, |&(q, m)| {
        let top = match max_formula_delta(q, m) {
            Some(t) => t,
            None => (modulus_n(q, m)? + 2) / 2,
        };
        structural_sweep_one(q, m, top, samples, seed)
    }) {
        rows.extend(part?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let c = coset_sweep(&[2, 3], &[3, 4]).unwrap();
        assert!(c.passed(), "{:?}", c.unclassified);
        let r = run_sweep(&[2, 3], 6, 1 << 20).unwrap();
        assert!(r.iter().all(|r| r.matches));
        let d = dimension_sweep(&[2], &[4, 5, 6]).unwrap();
        assert!(d.iter().all(|r| r.matches));
        let b = degree_bounds_sweep(&[2, 3], &[2, 3, 4]).unwrap();
        assert!(b.iter().all(|r| r.degree_ok && r.bounds_ok));
        let s = structural_sweep(&[2, 3], &[3, 4], 20, 7).unwrap();
        assert!(s.iter().all(|r| r.passed()));
    }

    #[test]
    fn oracle_histogram_matches_single_counts() {
        let all = run_count_oracle_all(5, 3, 1 << 20).unwrap();
        for r in 1..=5 {
            assert_eq!(all[r as usize], crate::cosets::run_count_oracle(r, 5, 3, 1 << 20).unwrap());
        }
    }
}
