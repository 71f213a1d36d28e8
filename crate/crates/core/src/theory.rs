//! Closed forms for the dimension of the overline code, the degree of `g+`
//! when `delta = q^lambda`, dimension bounds in that regime, and the
//! sphere-packing test that pins the minimum distance at `2 delta`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::cosets::{modulus_n, run_count_l, LeaderTable};
use crate::error::{out_of_range, Error, Result};

/// Default largest `n` for which [`dimension_bounds`] enumerates `N`.
pub const DEFAULT_N_ENUMERATION_LIMIT: u64 = 1 << 20;

/// `(delta_q, delta_0)` with `delta - 1 = delta_q q + delta_0`.
pub fn delta_digits(q: u64, delta: u64) -> (u64, u64) {
    ((delta - 1) / q, (delta - 1) % q)
}

/// Which piece of the dimension formula applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimensionCase {
    /// m odd, `delta <= q^{(m+1)/2} - q`.
    OddLow,
    /// m odd, `q^{(m+1)/2} - q + 1 <= delta <= q^{(m+1)/2} + 1`.
    OddHigh,
    /// m even, q > 2; the index runs over the five ranges in order.
    Even(u8),
    /// m even, q = 2; the index runs over the five ranges in order.
    Binary(u8),
}

impl DimensionCase {
    pub fn label(self) -> String {
        match self {
            DimensionCase::OddLow => "odd-1".into(),
            DimensionCase::OddHigh => "odd-2".into(),
            DimensionCase::Even(i) => format!("even-{i}"),
            DimensionCase::Binary(i) => format!("binary-{i}"),
        }
    }
}

/// Dimension of the overline code: closed form, construction, or both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub q: u64,
    pub m: u32,
    pub delta: u64,
    pub delta_q: u64,
    pub delta_0: u64,
    /// Only defined for even `m`.
    pub epsilon: Option<u8>,
    pub case: Option<String>,
    pub k_closed: Option<i64>,
    pub k_constructed: Option<u64>,
}

impl DimensionReport {
    /// Both values present and unequal.
    pub fn is_mismatch(&self) -> bool {
        matches!((self.k_closed, self.k_constructed), (Some(a), Some(b)) if a != b as i64)
    }

    pub fn with_constructed(mut self, k: u64) -> DimensionReport {
        self.k_constructed = Some(k);
        self
    }
}

fn check_field_params(q: u64, m: u32) -> Result<u64> {
    if prime_power(q).is_none() {
        return Err(Error::NotPrime(q));
    }
    modulus_n(q, m)
}

/// Correction for the self-paired coset of size `m/2`: 1 once `delta - 1`
/// reaches `q^{m/2} + 1`.
pub fn epsilon(q: u64, m: u32, delta: u64) -> Option<u8> {
    if m % 2 == 1 {
        return None;
    }
    let h = q.checked_pow(m / 2)?;
    Some(if delta <= h + 1 { 0 } else { 1 })
}

/// The applicable piece of the dimension formula and twice the amount it
/// subtracts from `delta_q (q - 1) + delta_0`.
pub fn dimension_case(q: u64, m: u32, delta: u64) -> Result<(DimensionCase, u64)> {
    let n = check_field_params(q, m)?;
    let na = || Error::FormulaNotApplicable { q, m, delta };
    if m < 2 {
        return Err(na());
    }
    if delta < 2 || 2 * delta > n + 2 {
        return Err(out_of_range("delta", delta, 2, (n + 2) / 2));
    }
    if m % 2 == 1 {
        let t = q.pow(m.div_ceil(2));
        return if delta + q <= t {
            Ok((DimensionCase::OddLow, 0))
        } else if delta <= t + 1 {
            Ok((DimensionCase::OddHigh, 0))
        } else {
            Err(na())
        };
    }
    let h = q.pow(m / 2);
    if q > 2 {
        let (i, two_c) = if delta < h {
            (1, 0)
        } else if delta <= h + 1 {
            (2, 1)
        } else if delta + 2 <= 2 * h {
            (3, 2)
        } else if delta + 1 == 2 * h {
            (4, 3)
        } else if delta <= 2 * h + 1 {
            (5, 5)
        } else {
            return Err(na());
        };
        return Ok((DimensionCase::Even(i), two_c));
    }
    let (i, two_c, min_m) = if delta < h {
        (1, 0, 4)
    } else if delta <= h + 1 {
        (2, 1, 4)
    } else if delta + 3 <= 2 * h {
        (3, 2, 4)
    } else if delta < 2 * h {
        (4, 4, 6)
    } else if delta <= 2 * h + 1 {
        (5, 6, 6)
    } else {
        return Err(na());
    };
    if m < min_m {
        return Err(na());
    }
    Ok((DimensionCase::Binary(i), two_c))
}

/// The closed-form dimension of the overline code.
pub fn dimension_closed_form(q: u64, m: u32, delta: u64) -> Result<DimensionReport> {
    let (case, two_c) = dimension_case(q, m, delta)?;
    let (dq, d0) = delta_digits(q, delta);
    let qm = q.pow(m) as i128;
    let mm = m as i128;
    let k = match case {
        DimensionCase::OddHigh => qm - 2 - 2 * mm * (q.pow((m - 1) / 2) as i128 - 1) * (q as i128 - 1),
        _ => {
            let b = (dq * (q - 1) + d0) as i128;
            qm - 2 - mm * (2 * b - two_c as i128)
        }
    };
    Ok(DimensionReport {
        q,
        m,
        delta,
        delta_q: dq,
        delta_0: d0,
        epsilon: epsilon(q, m, delta),
        case: Some(case.label()),
        k_closed: Some(k as i64),
        k_constructed: None,
    })
}

/// Like [`dimension_closed_form`] but leaves the closed form empty when no
/// piece applies instead of failing.
pub fn dimension_report(q: u64, m: u32, delta: u64) -> Result<DimensionReport> {
    match dimension_closed_form(q, m, delta) {
        Ok(r) => Ok(r),
        Err(Error::FormulaNotApplicable { .. }) => {
            let (dq, d0) = delta_digits(q, delta);
            Ok(DimensionReport {
                q,
                m,
                delta,
                delta_q: dq,
                delta_0: d0,
                epsilon: epsilon(q, m, delta),
                case: None,
                k_closed: None,
                k_constructed: None,
            })
        }
        Err(e) => Err(e),
    }
}

fn check_lambda(q: u64, m: u32, lambda: u32) -> Result<u32> {
    check_field_params(q, m)?;
    if 2 * lambda < m || lambda + 1 > m {
        return Err(out_of_range("lambda", lambda, m.div_ceil(2), m as i128 - 1));
    }
    Ok(m - lambda)
}

/// `sum_{u=0}^{r-2} (r-u-1) (q^{m-r-u-2} - l_r(m-r-u-2))`.
fn run_sum(q: u64, m: u32, r: u32) -> u128 {
    (0..r.saturating_sub(1))
        .map(|u| {
            let s = m - r - u - 2;
            (r - u - 1) as u128 * ((q as u128).pow(s) - run_count_l(r, s, q))
        })
        .sum()
}

/// `deg g+` (equal to `deg g-`) for `delta = q^lambda`.
pub fn degree_formula(q: u64, m: u32, lambda: u32) -> Result<u128> {
    let r = check_lambda(q, m, lambda)?;
    let sq = (q as u128 - 1).pow(2);
    Ok(run_count_l(r, m, q) - 1 + sq * run_sum(q, m, r))
}

/// Dimension bounds for `delta = q^lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionBoundsReport {
    pub q: u64,
    pub m: u32,
    pub lambda: u32,
    pub r: u32,
    pub delta: u64,
    pub lower: i128,
    pub upper: i128,
    /// `|N|`, the nonzero common zeros of `g+` and `g-`, when enumerated.
    pub n_size: Option<u64>,
    /// `|N'| = l_r(m - r)`.
    pub n_prime_size: u128,
}

impl DimensionBoundsReport {
    pub fn brackets(&self, k: u64) -> bool {
        self.lower <= k as i128 && k as i128 <= self.upper
    }

    /// `2|N'| <= |N| <= m|N'|`, or `None` without an enumeration.
    pub fn n_within_bounds(&self) -> Option<bool> {
        self.n_size.map(|s| {
            let s = s as u128;
            2 * self.n_prime_size <= s && s <= self.m as u128 * self.n_prime_size
        })
    }
}

/// Counts `1 <= i <= n-1` with `g+(alpha^i) = g-(alpha^i) = 0`, from coset
/// leaders alone.
pub fn common_zero_count(q: u64, m: u32, delta: u64) -> Result<u64> {
    let table = LeaderTable::new(q, m)?;
    let n = table.n();
    let in_plus = |i: u64| {
        let l = table.leader(i);
        l >= 1 && l < delta
    };
    Ok((1..n).filter(|&i| in_plus(i) && in_plus(n - i)).count() as u64)
}

pub fn dimension_bounds(q: u64, m: u32, lambda: u32) -> Result<DimensionBoundsReport> {
    dimension_bounds_with_limit(q, m, lambda, DEFAULT_N_ENUMERATION_LIMIT)
}

pub fn dimension_bounds_with_limit(q: u64, m: u32, lambda: u32, limit: u64) -> Result<DimensionBoundsReport> {
    let r = check_lambda(q, m, lambda)?;
    let n = modulus_n(q, m)?;
    let qm = q.pow(m) as i128;
    let lm = run_count_l(r, m, q) as i128;
    let np = run_count_l(r, m - r, q);
    let tail = 2 * (q as i128 - 1).pow(2) * run_sum(q, m, r) as i128;
    let delta = q.pow(lambda);
    let n_size = if n <= limit { Some(common_zero_count(q, m, delta)?) } else { None };
    Ok(DimensionBoundsReport {
        q,
        m,
        lambda,
        r,
        delta,
        lower: qm - 2 * lm + 2 * np as i128 - tail,
        upper: qm - 2 * lm + m as i128 * np as i128 - tail,
        n_size,
        n_prime_size: np,
    })
}

/// Both sides of the sphere-packing comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePacking {
    /// `sum_{i=0}^{delta} C(n, i) (q-1)^i`.
    pub volume: BigUint,
    /// `q^{n-k}`.
    pub bound: BigUint,
}

impl SpherePacking {
    pub fn triggered(&self) -> bool {
        self.volume > self.bound
    }
}

pub fn sphere_packing(q: u64, m: u32, delta: u64, k: u64) -> Result<SpherePacking> {
    let n = check_field_params(q, m)?;
    if k > n {
        return Err(out_of_range("k", k, 0, n));
    }
    let mut volume = BigUint::from(1u32);
    let mut term = BigUint::from(1u32);
    for i in 1..=delta.min(n) {
        term = term * BigUint::from(n - i + 1) * BigUint::from(q - 1) / BigUint::from(i);
        volume += &term;
    }
    let bound = BigUint::from(q).pow((n - k) as u32);
    Ok(SpherePacking { volume, bound })
}

/// True when a ball of radius `delta` already outweighs `q^{n-k}`, forcing
/// `d <= 2 delta`.
pub fn sphere_packing_trigger(q: u64, m: u32, delta: u64, k: u64) -> Result<bool> {
    Ok(sphere_packing(q, m, delta, k)?.triggered())
}

/// The designed floor `2 delta` for the overline code.
pub fn bch_lower_bound(delta: u64) -> u64 {
    2 * delta
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(q: u64, m: u32, delta: u64) -> i64 {
        dimension_closed_form(q, m, delta).unwrap().k_closed.unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(k(2, 5, 3), 20);
        assert_eq!(k(3, 3, 4), 13);
        assert_eq!(k(2, 6, 5), 38);
        for (q, m) in [(3, 3), (3, 4), (5, 2), (7, 3)] {
            assert_eq!(k(q, m, 2), q.pow(m) as i64 - 2 - 2 * m as i64);
        }
        let r = dimension_closed_form(2, 6, 13).unwrap();
        assert_eq!(r.case.as_deref(), Some("binary-3"));
        assert_eq!(r.k_closed, Some(2));
    }

    #[test]
    fn closed_form_refuses_outside_ranges() {
        assert!(matches!(dimension_closed_form(2, 2, 2), Err(Error::FormulaNotApplicable { .. })));
        assert!(matches!(dimension_closed_form(2, 4, 7), Err(Error::FormulaNotApplicable { .. })));
        assert!(matches!(dimension_closed_form(2, 5, 10), Err(Error::FormulaNotApplicable { .. })));
        assert!(matches!(dimension_closed_form(2, 4, 20), Err(Error::OutOfRange { .. })));
        let r = dimension_report(2, 5, 10).unwrap();
        assert_eq!(r.k_closed, None);
        assert_eq!((r.delta_q, r.delta_0), (4, 1));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_formula(2, 4, 2).unwrap(), 8);
        assert_eq!(degree_formula(2, 4, 3).unwrap(), 14);
        assert_eq!(degree_formula(3, 2, 1).unwrap(), 4);
        assert!(degree_formula(2, 4, 1).is_err());
        assert!(degree_formula(2, 4, 4).is_err());
    }

    #[test]
    fn bounds_examples() {
        let b = dimension_bounds(2, 4, 2).unwrap();
        assert_eq!((b.lower, b.upper), (0, 2));
        assert_eq!(b.n_within_bounds(), Some(true));
        assert!(b.brackets(2));
    }

    #[test]
    fn sphere_packing_examples() {
        let s = sphere_packing(2, 5, 3, 20).unwrap();
        assert_eq!(s.volume, BigUint::from(4992u32));
        assert_eq!(s.bound, BigUint::from(2048u32));
        assert!(s.triggered());
        let s = sphere_packing(2, 6, 5, 38).unwrap();
        assert_eq!(s.volume, BigUint::from(7_666_240u32));
        assert!(!s.triggered());
        assert!(sphere_packing_trigger(2, 8, 5, k(2, 8, 5) as u64).unwrap());
    }

    #[test]
    fn lower_bound_is_twice_delta() {
        assert_eq!(bch_lower_bound(3), 6);
        assert_eq!(bch_lower_bound(2), 4);
        assert_eq!(bch_lower_bound(13), 26);
    }
}
