//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints its verdict even when it passes.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use revbch::bch::{BchCode, Variant};
use revbch::distance::{exact_min_distance, SubspaceQuadruple};
use revbch::ffield::Extension;
use revbch::tables::{table_one, table_one_row, table_two};
use revbch::verify::{coset_sweep, degree_bounds_sweep, dimension_sweep, run_sweep, structural_sweep};

const TABLE_TWO_BUDGET: u128 = 1 << 24;
const TABLE_TWO_TIME_LIMIT: Duration = Duration::from_secs(300);
const TERNARY_TIME_LIMIT: Duration = Duration::from_secs(120);
const RUN_ORACLE_BUDGET: u128 = 1 << 24;
const STRUCTURAL_SAMPLES: usize = 200;
const STRUCTURAL_SEED: u64 = 0x5eed;

/// Published generator of the ternary `[26, 13, 8]` example, as typeset.
const TERNARY_GENERATOR_TEX: &str = "x^{13} + x^{12} + 2x^{11} + 2x^{10} + x^8 + 2x^5 + x^3 + x^2 + 2x + 2.";

/// Dimension-formula mismatches that are known and understood: at
/// `(q, m, delta) = (3, 2, 5)` the overline zero set covers all of Z/8, so
/// `k = 0`, while the closed form gives 1. See the README.
const KNOWN_DIMENSION_DEFECTS: [(u64, u32, u64); 1] = [(3, 2, 5)];

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    /// A failure that matches a pinned, documented defect exactly.
    expected_failure: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: String) -> Verdict {
        Verdict { passed, expected_failure: false, detail }
    }
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let rows = table_two(TABLE_TWO_BUDGET).expect("table two");
    let elapsed = start.elapsed();
    let mut notes = Vec::new();
    let mut ok = true;
    for r in &rows {
        let p = r.published;
        let c = &r.certificate;
        if !r.k_matches() {
            ok = false;
            notes.push(format!("[{},{}] k={}", p.n, p.k, r.k));
        }
        match r.d_matches() {
            Some(true) => {}
            Some(false) => {
                ok = false;
                notes.push(format!("[{},{}] d in [{}, {:?}] vs {}", p.n, p.k, c.d_lower, c.d_upper, p.d));
            }
            None => notes.push(format!("[{},{}] d={} not certified: [{}, {:?}]", p.n, p.k, p.d, c.d_lower, c.d_upper)),
        }
        // rows small enough for exhaustive search must be settled by it
        if 2f64.powi(p.k as i32) <= TABLE_TWO_BUDGET as f64 && c.method != "exhaustive" {
            ok = false;
            notes.push(format!("[{},{}] not exhaustive", p.n, p.k));
        }
    }
    let methods: Vec<String> =
        rows.iter().map(|r| format!("[{},{},{}]:{}", r.published.n, r.k, r.d_text(), r.certificate.method)).collect();
    ok &= elapsed <= TABLE_TWO_TIME_LIMIT;
    Verdict::new(ok, format!("{} in {:.1?}; {}", methods.join(" "), elapsed, notes.join("; ")))
}

fn criterion_2() -> Verdict {
    let start = Instant::now();
    let ext = Extension::with_modulus(3, 3, &[1, 2, 0, 1]).expect("x^3 - x + 1");
    let code = BchCode::new(&ext, 4, Variant::Overline).expect("code");
    let expected: String = TERNARY_GENERATOR_TEX.chars().filter(|c| !matches!(c, '{' | '}' | '.')).collect();
    let generator = code.generator().to_string();
    let cert = exact_min_distance(&code, 3u128.pow(13)).expect("search");
    let elapsed = start.elapsed();
    let ok =
        generator == expected && code.dimension() == 13 && cert.exact() == Some(8) && elapsed <= TERNARY_TIME_LIMIT;
    Verdict::new(ok, format!("g = {generator}; k = {}; d = {:?}; {:.1?}", code.dimension(), cert.exact(), elapsed))
}

fn criterion_3() -> Verdict {
    let ext = Extension::with_modulus(2, 5, &[1, 0, 1, 0, 0, 1]).expect("x^5 + x^2 + 1");
    let field = ext.field();
    let quad = SubspaceQuadruple::from_exponents(
        field,
        [
            &[None, Some(1), Some(2), Some(19)],
            &[None, Some(8), Some(12), Some(18)],
            &[None, Some(12), Some(13), Some(30)],
            &[None, Some(19), Some(23), Some(29)],
        ],
    );
    let check = quad.check(field).expect("binary field");
    let word = quad.codeword(field).expect("codeword");
    let code = BchCode::new(&ext, 3, Variant::Overline).expect("code");
    let member = code.membership(&word).expect("membership");
    let cert = exact_min_distance(&code, 1 << 20).expect("search");
    let ok = check.all() && member && word.weight() == 6 && cert.exact() == Some(6);
    Verdict::new(ok, format!("{check:?}; member = {member}; weight = {}; d = {:?}", word.weight(), cert.exact()))
}

fn criterion_4() -> Verdict {
    let rows = dimension_sweep(&[2, 3], &[2, 3, 4, 5, 6, 7, 8]).expect("sweep");
    let mismatches: Vec<(u64, u32, u64)> = rows.iter().filter(|r| !r.matches).map(|r| (r.q, r.m, r.delta)).collect();
    let detail: Vec<String> = rows
        .iter()
        .filter(|r| !r.matches)
        .map(|r| {
            format!("(q,m,delta)=({},{},{}) closed {:?} constructed {}", r.q, r.m, r.delta, r.k_closed, r.k_constructed)
        })
        .collect();
    let mut v = Verdict::new(
        mismatches.is_empty(),
        format!("{} triples, {} mismatches {}", rows.len(), mismatches.len(), detail.join("; ")),
    );
    v.expected_failure = mismatches == KNOWN_DIMENSION_DEFECTS;
    v
}

fn criterion_5() -> Verdict {
    let sweep = coset_sweep(&[2, 3, 4, 5], &[2, 3, 4, 5, 6, 7, 8]).expect("sweep");
    let bad = sweep.rows.iter().filter(|r| !r.matches).count();
    Verdict::new(
        sweep.passed(),
        format!(
            "{} counts ({} mismatched), {} pairs classified, {} unclassified, {} spurious",
            sweep.rows.len(),
            bad,
            sweep.pairs_classified,
            sweep.unclassified.len(),
            sweep.spurious_forms.len()
        ),
    )
}

fn criterion_6() -> Verdict {
    let rows = run_sweep(&[2, 3, 4], 12, RUN_ORACLE_BUDGET).expect("sweep");
    let bad = rows.iter().filter(|r| !r.matches).count();
    let expected = 3 * (12 * 13 / 2);
    Verdict::new(bad == 0 && rows.len() == expected, format!("{} (r, s, q) cases, {} mismatches", rows.len(), bad))
}

fn criterion_7() -> Verdict {
    let rows = degree_bounds_sweep(&[2, 3], &[2, 3, 4, 5, 6]).expect("sweep");
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !(r.degree_ok && r.bounds_ok))
        .map(|r| format!("({},{},lambda={})", r.q, r.m, r.lambda))
        .collect();
    Verdict::new(!rows.is_empty() && bad.is_empty(), format!("{} (q, m, lambda) cases; failing {:?}", rows.len(), bad))
}

fn criterion_8() -> Verdict {
    let rows = table_one().expect("table one");
    let not_triggered: Vec<(u32, u64)> = rows.iter().filter(|r| !r.triggered).map(|r| (r.m, r.delta)).collect();
    let flagged: Vec<(u32, u64)> = rows.iter().filter(|r| r.flagged).map(|r| (r.m, r.delta)).collect();
    let control = table_one_row(6, 5, false).expect("control");
    let ok = not_triggered.is_empty() && !control.triggered && !flagged.is_empty();
    Verdict::new(
        ok,
        format!(
            "{} pairs, untriggered {:?}; flagged (duplicate 17 read as 16) {:?}; control (6,5) triggered = {}",
            rows.len(),
            not_triggered,
            flagged,
            control.triggered
        ),
    )
}

fn criterion_9() -> Verdict {
    let rows = structural_sweep(&[2, 3], &[2, 3, 4, 5, 6, 7, 8], STRUCTURAL_SAMPLES, STRUCTURAL_SEED).expect("sweep");
    let bad: Vec<(u64, u32, u64)> = rows.iter().filter(|r| !r.passed()).map(|r| (r.q, r.m, r.delta)).collect();
    let codes = rows.len() * 2;
    Verdict::new(
        bad.is_empty() && rows.iter().all(|r| r.samples == STRUCTURAL_SAMPLES),
        format!(
            "{} delta values ({codes} tilde/overline codes), {STRUCTURAL_SAMPLES} samples each; failing {:?}",
            rows.len(),
            bad
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("table 2 reproduction", criterion_1),
        ("ternary [26,13,8] example", criterion_2),
        ("GF(32) subspace quadruple", criterion_3),
        ("dimension formula sweep", criterion_4),
        ("leader pairs and pattern families", criterion_5),
        ("run-count recursion", criterion_6),
        ("degree formula and dimension bounds", criterion_7),
        ("table 1 sphere-packing trigger", criterion_8),
        ("structural invariants", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let label = format!("criterion {}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str()) || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let v = run();
        let status = match (v.passed, v.expected_failure) {
            (true, _) => "PASS",
            (false, true) => "FAIL (pinned known defect)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!("{label} [{name}]: {status} ({:.1?}) {}", start.elapsed(), v.detail);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
