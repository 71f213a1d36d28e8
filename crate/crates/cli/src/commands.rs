use std::fmt::Write as _;

use revbch::arith::prime_power;
use revbch::bch::{BchCode, Variant};
use revbch::distance::{
    best_certificate, lift_reversible, subgroup_certificate, subspace_certificate, DistanceCertificate,
};
use revbch::ffield::Extension;
use revbch::qpoly::{format_digits, parse_digits, Poly};
use revbch::tables::{table_one_grouped, table_two, TableOneGroup, TableTwoRow};
use revbch::theory::{dimension_report, sphere_packing};
use revbch::verify::{coset_sweep, degree_bounds_sweep, dimension_sweep, run_sweep};
use serde::Serialize;
use serde_json::json;

use crate::output::{Format, RunLog, Sink};
use crate::{CliError, CodeArgs, Suite, TableArgs, VerifyArgs, WitnessArgs, WitnessKind};

fn extension(q: u64, m: u32, modulus: Option<&str>) -> Result<Extension, CliError> {
    match modulus {
        None => Ok(Extension::canonical(q, m)?),
        Some(text) => {
            let (p, _) = prime_power(q).ok_or(revbch::Error::NotPrime(q))?;
            let digits = parse_digits(p as u32, text)?;
            Ok(Extension::with_modulus(q, m, &digits)?)
        }
    }
}

fn or_na<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "n/a".to_string(), |v| v.to_string())
}

#[derive(Debug, Serialize)]
struct InfoReport {
    q: u64,
    m: u32,
    n: usize,
    delta: u64,
    variant: Variant,
    modulus: String,
    generator: String,
    degree: usize,
    k: usize,
    k_closed: Option<i64>,
    dimension_case: Option<String>,
    epsilon: Option<u8>,
    self_reciprocal: bool,
    bch_floor: u64,
    sphere_packing_triggered: bool,
    d_kind: String,
    d_lower: u64,
    d_upper: Option<u64>,
    d_method: String,
    witness: Option<String>,
}

pub fn info(args: &CodeArgs, budget: u128, sink: &mut Sink, log: &mut RunLog) -> Result<bool, CliError> {
    let ext = extension(args.q, args.m, args.modulus.as_deref())?;
    let code = BchCode::new(&ext, args.delta, args.variant)?;
    let (k_closed, case, epsilon) = if args.variant == Variant::Overline {
        let d = dimension_report(args.q, args.m, args.delta)?;
        (d.k_closed, d.case, d.epsilon)
    } else {
        (None, None, None)
    };
    let k = code.dimension();
    let cert = best_certificate(&code, budget)?;
    let report = InfoReport {
        q: args.q,
        m: args.m,
        n: code.n(),
        delta: args.delta,
        variant: args.variant,
        modulus: format_digits(ext.field().modulus()),
        generator: code.generator().to_string(),
        degree: code.degree(),
        k,
        k_closed,
        dimension_case: case,
        epsilon,
        self_reciprocal: code.generator().is_self_reciprocal(),
        bch_floor: revbch::distance::designed_floor(&code),
        sphere_packing_triggered: sphere_packing(args.q, args.m, args.delta, k as u64)?.triggered(),
        d_kind: kind_name(&cert),
        d_lower: cert.d_lower,
        d_upper: cert.d_upper,
        d_method: cert.method.clone(),
        witness: cert.witness.as_ref().map(|w| w.to_string()),
    };
    log.event(&serde_json::to_value(&report)?)?;
    sink.document(&report, || {
        let r = &report;
        let mut s = String::new();
        let _ = writeln!(s, "code        {} (q={}, m={}, delta={})", r.variant, r.q, r.m, r.delta);
        let _ = writeln!(s, "modulus     {}", r.modulus);
        let _ = writeln!(s, "generator   {}", r.generator);
        let _ = writeln!(s, "[n, k]      [{}, {}]", r.n, r.k);
        let _ = writeln!(s, "k closed    {} ({})", or_na(r.k_closed), or_na(r.dimension_case.clone()));
        let _ = writeln!(s, "epsilon     {}", or_na(r.epsilon));
        let _ = writeln!(s, "reversible  {}", r.self_reciprocal);
        let _ = writeln!(s, "bch floor   {}", r.bch_floor);
        let _ = writeln!(s, "sphere pack {}", r.sphere_packing_triggered);
        let d = match (r.d_kind.as_str(), r.d_upper) {
            ("exact", _) => format!("d = {}", r.d_lower),
            (_, Some(u)) => format!("{} <= d <= {}", r.d_lower, u),
            _ => format!("d >= {}", r.d_lower),
        };
        let _ = writeln!(s, "distance    {d} [{}]", r.d_method);
        s
    })?;
    Ok(true)
}

fn kind_name(cert: &DistanceCertificate) -> String {
    serde_json::to_value(cert.kind).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

#[derive(Debug, Serialize)]
struct TableOneCsv {
    m: u32,
    deltas: String,
    triggered: bool,
    note: String,
}

fn table_one_note(g: &TableOneGroup) -> String {
    if g.flagged {
        "published row lists 17 twice; this entry is read as 16".into()
    } else {
        String::new()
    }
}

#[derive(Debug, Serialize)]
struct TableTwoCsv {
    m: u32,
    n: u64,
    k: u64,
    d: String,
    delta: u64,
    best_cyclic: &'static str,
    optimal: &'static str,
}

fn table_two_diff(r: &TableTwoRow) -> Vec<String> {
    let p = &r.published;
    let mut out = Vec::new();
    if !r.k_matches() {
        out.push(format!("m={} delta={}: k computed {} published {}", p.m, p.delta, r.k, p.k));
    }
    match r.d_matches() {
        Some(true) => {}
        Some(false) => out.push(format!("m={} delta={}: d computed {} published {}", p.m, p.delta, r.d_text(), p.d)),
        None => out.push(format!(
            "m={} delta={}: published d={} not certified, bracket [{}, {}]",
            p.m,
            p.delta,
            p.d,
            r.certificate.d_lower,
            or_na(r.certificate.d_upper)
        )),
    }
    out
}

pub fn table(args: &TableArgs, budget: u128, sink: &mut Sink, log: &mut RunLog) -> Result<bool, CliError> {
    if args.paper == 1 {
        let groups = table_one_grouped()?;
        log.cases("table1", &groups)?;
        let notes: Vec<String> = groups
            .iter()
            .filter(|g| !g.all_triggered)
            .map(|g| format!("m={}: sphere-packing inequality fails for some delta in {:?}", g.m, g.deltas))
            .collect();
        match sink.format() {
            Format::Csv => {
                let rows: Vec<TableOneCsv> = groups
                    .iter()
                    .map(|g| TableOneCsv {
                        m: g.m,
                        deltas: g.deltas.iter().map(u64::to_string).collect::<Vec<_>>().join(";"),
                        triggered: g.all_triggered,
                        note: table_one_note(g),
                    })
                    .collect();
                sink.records(&rows, String::new)?;
            }
            _ => sink.records(&groups, || {
                let mut s = String::from(" m  delta       d = 2 delta\n");
                for g in &groups {
                    let deltas = g.deltas.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
                    let _ = writeln!(
                        s,
                        "{:>2}  {{{deltas}}}{:pad$}{}  {}",
                        g.m,
                        "",
                        g.all_triggered,
                        table_one_note(g),
                        pad = 11 - deltas.len().min(10)
                    );
                }
                s
            })?,
        }
        for n in &notes {
            eprintln!("diff: {n}");
        }
        return Ok(true);
    }
    let rows = table_two(budget)?;
    log.cases("table2", &rows)?;
    let notes: Vec<String> = rows.iter().flat_map(table_two_diff).collect();
    match sink.format() {
        Format::Json => sink.records(&rows, String::new)?,
        _ => {
            let flat: Vec<TableTwoCsv> = rows
                .iter()
                .map(|r| TableTwoCsv {
                    m: r.published.m,
                    n: r.published.n,
                    k: r.k,
                    d: r.d_text(),
                    delta: r.published.delta,
                    best_cyclic: r.published.best_cyclic,
                    optimal: r.published.optimal,
                })
                .collect();
            let text = || {
                let mut s = String::from(" m   n   k   d  delta  best cyclic  optimal  method\n");
                for (f, r) in flat.iter().zip(&rows) {
                    let _ = writeln!(
                        s,
                        "{:>2} {:>3} {:>3} {:>3} {:>6}  {:<11}  {:<7}  {}",
                        f.m, f.n, f.k, f.d, f.delta, f.best_cyclic, f.optimal, r.certificate.method
                    );
                }
                s
            };
            if sink.format() == Format::Csv {
                sink.records(&flat, String::new)?;
            } else {
                sink.records(&flat, text)?;
            }
        }
    }
    for n in &notes {
        eprintln!("diff: {n}");
    }
    Ok(true)
}

fn or_default<T: Copy>(given: &[T], default: &[T]) -> Vec<T> {
    if given.is_empty() {
        default.to_vec()
    } else {
        given.to_vec()
    }
}

#[derive(Debug, Serialize)]
struct DistanceRow {
    m: u32,
    n: u64,
    k: u64,
    delta: u64,
    published_d: u64,
    kind: String,
    d_lower: u64,
    d_upper: Option<u64>,
    method: String,
    #[serde(rename = "match")]
    matches: Option<bool>,
}

/// Emits rows, logs them as cases, and prints a summary; `bad` lists the
/// failing cases.
fn finish_suite<T: Serialize>(
    suite: &str,
    rows: &[T],
    bad: Vec<String>,
    sink: &mut Sink,
    log: &mut RunLog,
) -> Result<bool, CliError> {
    log.cases(suite, rows)?;
    let passed = bad.is_empty();
    let summary = format!("{suite}: {} cases, {} failures\n", rows.len(), bad.len());
    sink.records(rows, || {
        let mut s = summary.clone();
        for b in &bad {
            let _ = writeln!(s, "  FAIL {b}");
        }
        s
    })?;
    if sink.format() != Format::Text {
        eprint!("{summary}");
    }
    Ok(passed)
}

pub fn verify(args: &VerifyArgs, budget: u128, sink: &mut Sink, log: &mut RunLog) -> Result<bool, CliError> {
    let all_m: Vec<u32> = (2..=8).collect();
    match args.suite {
        Suite::Cosets => {
            let sweep = coset_sweep(&or_default(&args.q, &[2, 3, 4, 5]), &or_default(&args.m, &all_m))?;
            let mut bad: Vec<String> = sweep
                .rows
                .iter()
                .filter(|r| !r.matches)
                .map(|r| {
                    format!("q={} m={} l={}: closed {} enumerated {}", r.q, r.m, r.l, or_na(r.closed), r.enumerated)
                })
                .collect();
            for u in &sweep.unclassified {
                log.event(&json!({ "event": "unclassified", "pair": u }))?;
                bad.push(format!(
                    "q={} m={}: pair ({}, {}) = {} / {} unclassified",
                    u.q, u.m, u.i, u.j, u.i_digits, u.j_digits
                ));
            }
            bad.extend(sweep.spurious_forms.iter().map(|f| format!("spurious family instance {f}")));
            finish_suite("cosets", &sweep.rows, bad, sink, log)
        }
        Suite::Dimension => {
            let rows = dimension_sweep(&or_default(&args.q, &[2, 3]), &or_default(&args.m, &all_m))?;
            let bad = rows
                .iter()
                .filter(|r| !r.matches)
                .map(|r| {
                    format!(
                        "q={} m={} delta={}: closed {} constructed {}",
                        r.q,
                        r.m,
                        r.delta,
                        or_na(r.k_closed),
                        r.k_constructed
                    )
                })
                .collect();
            finish_suite("dimension", &rows, bad, sink, log)
        }
        Suite::Runs => {
            let rows = run_sweep(&or_default(&args.q, &[2, 3, 4]), args.max_s, budget)?;
            let bad = rows
                .iter()
                .filter(|r| !r.matches)
                .map(|r| format!("q={} s={} r={}: recursion {} oracle {}", r.q, r.s, r.r, r.recursion, r.oracle))
                .collect();
            finish_suite("runs", &rows, bad, sink, log)
        }
        Suite::Degree | Suite::Bounds => {
            let rows = degree_bounds_sweep(&or_default(&args.q, &[2, 3]), &or_default(&args.m, &[2, 3, 4, 5, 6]))?;
            let degree = args.suite == Suite::Degree;
            let bad = rows
                .iter()
                .filter(|r| if degree { !r.degree_ok } else { !r.bounds_ok })
                .map(|r| {
                    format!(
                        "q={} m={} lambda={}: formula {} plus {} minus {}, k {} in [{}, {}], |N| {} |N'| {}",
                        r.q,
                        r.m,
                        r.lambda,
                        r.degree_formula,
                        r.degree_plus,
                        r.degree_minus,
                        r.k_constructed,
                        r.lower,
                        r.upper,
                        or_na(r.n_size),
                        r.n_prime_size
                    )
                })
                .collect();
            finish_suite(if degree { "degree" } else { "bounds" }, &rows, bad, sink, log)
        }
        Suite::Distance => {
            let rows: Vec<DistanceRow> = table_two(budget)?
                .iter()
                .map(|r| DistanceRow {
                    m: r.published.m,
                    n: r.published.n,
                    k: r.k,
                    delta: r.published.delta,
                    published_d: r.published.d,
                    kind: serde_json::to_value(r.certificate.kind)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default(),
                    d_lower: r.certificate.d_lower,
                    d_upper: r.certificate.d_upper,
                    method: r.certificate.method.clone(),
                    matches: if r.k_matches() { r.d_matches() } else { Some(false) },
                })
                .collect();
            let bad = rows
                .iter()
                .filter(|r| r.matches == Some(false))
                .map(|r| {
                    format!(
                        "[{}, {}] delta={}: d in [{}, {}] vs {}",
                        r.n,
                        r.k,
                        r.delta,
                        r.d_lower,
                        or_na(r.d_upper),
                        r.published_d
                    )
                })
                .collect();
            finish_suite("distance", &rows, bad, sink, log)
        }
    }
}

#[derive(Debug, Serialize)]
struct WitnessCsv {
    q: u64,
    m: u32,
    n: usize,
    delta: u64,
    k: usize,
    kind: String,
    d_lower: u64,
    d_upper: Option<u64>,
    method: String,
    witness: Option<String>,
}

pub fn witness(args: &WitnessArgs, _budget: u128, sink: &mut Sink, log: &mut RunLog) -> Result<bool, CliError> {
    let ext = extension(args.q, args.m, args.modulus.as_deref())?;
    let need_delta =
        || args.delta.ok_or_else(|| CliError::Usage(format!("--kind {:?} needs --delta", args.kind).to_lowercase()));
    let start = std::time::Instant::now();
    let (cert, delta) = match args.kind {
        WitnessKind::Subgroup => {
            let delta = need_delta()?;
            (subgroup_certificate(&ext, delta)?, delta)
        }
        WitnessKind::Subspace => {
            if args.q != 2 {
                return Err(CliError::Usage("subspace witnesses need q = 2".into()));
            }
            let r = args.r.ok_or_else(|| CliError::Usage("--kind subspace needs --r".into()))?;
            if r == 0 || 2 * r > args.m {
                return Err(CliError::Usage(format!("--r must satisfy 1 <= r <= m/2, got r = {r}")));
            }
            let cert = subspace_certificate(&ext, r)?.ok_or_else(|| {
                revbch::Error::NoWitness(format!("no subspace quadruple with r = {r} in GF(2^{})", args.m))
            })?;
            (cert, (1u64 << r) - 1)
        }
        WitnessKind::Reversible => {
            let delta = need_delta()?;
            let text =
                args.codeword.as_deref().ok_or_else(|| CliError::Usage("--kind reversible needs --codeword".into()))?;
            let plus = BchCode::new(&ext, delta, Variant::Plus)?;
            let c = Poly::parse(ext.field(), text)?;
            (lift_reversible(&c, &plus)?, delta)
        }
    };
    let code = BchCode::new(&ext, delta, Variant::Overline)?;
    let verified = cert.verify(&code)?;
    let report = cert.report(&code, start.elapsed().as_millis() as u64);
    log.event(&json!({ "event": "certificate", "verified": verified, "certificate": report }))?;
    match sink.format() {
        Format::Csv => {
            let row = WitnessCsv {
                q: args.q,
                m: args.m,
                n: code.n(),
                delta,
                k: code.dimension(),
                kind: kind_name(&cert),
                d_lower: cert.d_lower,
                d_upper: cert.d_upper,
                method: cert.method.clone(),
                witness: report.witness.clone(),
            };
            sink.document(&row, String::new)?;
        }
        _ => sink.document(&report, || {
            let mut s = String::new();
            let _ = writeln!(s, "code      [{}, {}] overline, delta = {}", code.n(), code.dimension(), delta);
            let _ = writeln!(s, "method    {}", report.method);
            let _ = writeln!(s, "kind      {}", kind_name(&cert));
            let _ = writeln!(s, "bracket   {} <= d <= {}", report.d_lower, or_na(report.d_upper));
            let _ = writeln!(s, "witness   {}", or_na(report.witness.clone()));
            let _ = writeln!(s, "verified  {verified}");
            s
        })?,
    }
    Ok(verified)
}
