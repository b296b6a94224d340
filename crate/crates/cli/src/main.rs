//! Terminal front end for the sextic trinomial index classifier.
//!
//! Four commands: `classify` prints one field's report as JSON, optionally
//! with the polygon data and oracle cross-checks behind it; `scan` sweeps a
//! rectangle of (a, b) pairs into CSV, one row per reduced irreducible pair;
//! `polygon` renders a single phi-adic expansion with its Newton polygon and
//! residual polynomials; `examples` replays the six reference fields whose
//! indices run through 1, 2, 3, 4, 6, 12.
//!
//! Exit codes: 0 on success; 2 when the input itself is invalid (reducible F,
//! zero b, a modulus that says nothing about F); 3 when the answer exists but
//! the implementation honestly cannot certify it (uncatalogued configuration,
//! splitting type outside the exponent table, factorization budget exceeded);
//! 1 for everything else, including oracle disagreement.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use sextic_index::oracle::dedekind_divides;
use sextic_index::{
    corollary_fast_path, engstrom_exponent, index_of_field, is_index_divisor, is_phi_regular,
    ore_analyze, phi_expand, phi_index, principal_polygon, residual_polynomial,
    theorem1_is_maximal, Error, FpPoly, FqPoly, IndexReport, OracleVerdict, Trinomial,
    ValuationQuadruple, ZPoly,
};

#[derive(Parser)]
#[command(
    name = "sextic-index",
    version,
    about = "Index classification for fields defined by x^6 + a x^5 + b"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the field generated by a root of x^6 + a x^5 + b.
    Classify {
        #[arg(allow_negative_numbers = true)]
        a: BigInt,
        #[arg(allow_negative_numbers = true)]
        b: BigInt,
        /// Also print valuations, polygons, residuals and matched cases.
        #[arg(long)]
        explain: bool,
        /// Cross-check the result against the brute-force oracles.
        #[arg(long)]
        verify: bool,
    },
    /// Sweep a rectangle of (a, b) pairs and emit one CSV row per field.
    Scan {
        #[arg(allow_negative_numbers = true)]
        a_min: i64,
        #[arg(allow_negative_numbers = true)]
        a_max: i64,
        #[arg(allow_negative_numbers = true)]
        b_min: i64,
        #[arg(allow_negative_numbers = true)]
        b_max: i64,
        /// Run the oracle cross-checks on every row.
        #[arg(long)]
        verify: bool,
        /// Worker threads; the output is byte-identical for any value.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the CSV to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the phi-adic expansion and Newton polygon of F at p.
    Polygon {
        #[arg(allow_negative_numbers = true)]
        a: BigInt,
        #[arg(allow_negative_numbers = true)]
        b: BigInt,
        p: u64,
        /// Monic divisor of F mod p, for example "x", "x-3" or "x^2+x+1".
        phi: String,
    },
    /// Replay the six reference fields with indices 1, 2, 3, 4, 6, 12.
    Examples {
        /// Also run the oracle cross-checks on each field.
        #[arg(long)]
        verify: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidPrime(_)
            | Error::ZeroValue
            | Error::DegenerateInput
            | Error::NonMonicDivisor
            | Error::IrrelevantModulus(_)
            | Error::InvalidSide
            | Error::InvalidPolynomial(_)
            | Error::ReducibleInput { .. } => 2,
            Error::NonTerminating
            | Error::UncataloguedCase(_)
            | Error::Undetermined
            | Error::FragmentMiss { .. }
            | Error::IndeterminateCondition { .. }
            | Error::SelfCheckFailed(_)
            | Error::TooLarge(_) => 3,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::new(1, e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

/// Single write to stdout per command; a reader that hangs up early (head,
/// broken pipe) is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    use std::io::Write as _;
    match std::io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(e.into()),
    }
}

macro_rules! say {
    ($dst:expr) => {{
        let _ = writeln!($dst);
    }};
    ($dst:expr, $($arg:tt)*) => {{
        let _ = writeln!($dst, $($arg)*);
    }};
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify {
            a,
            b,
            explain,
            verify,
        } => cmd_classify(a, b, explain, verify),
        Command::Scan {
            a_min,
            a_max,
            b_min,
            b_max,
            verify,
            jobs,
            out,
        } => cmd_scan(a_min, a_max, b_min, b_max, verify, jobs, out),
        Command::Polygon { a, b, p, phi } => cmd_polygon(a, b, p, &phi),
        Command::Examples { verify } => cmd_examples(verify),
    }
}

fn cmd_classify(a: BigInt, b: BigInt, explain: bool, verify: bool) -> Result<(), Failure> {
    let t = Trinomial::new(a, b)?;
    let report = index_of_field(&t)?;
    let mut out = String::new();
    say!(out, "{}", serde_json::to_string_pretty(&report)?);
    if explain {
        write_explanation(&mut out, &report)?;
    }
    let mut disagreement = false;
    if verify {
        let verdicts = verify_field(&report)?;
        say!(out);
        say!(out, "# oracle cross-checks");
        for v in &verdicts {
            say!(out, "{v}");
            disagreement |= !v.agrees;
        }
    }
    emit(&out)?;
    if disagreement {
        return Err(Failure::new(1, "oracle disagreement"));
    }
    Ok(())
}

fn write_explanation(out: &mut String, report: &IndexReport) -> Result<(), Failure> {
    let t = &report.input;
    say!(out);
    say!(out, "# details");
    say!(out, "F = {}", t.polynomial());
    for p in [2u64, 3] {
        let q = ValuationQuadruple::at(t, p);
        say!(
            out,
            "valuations at {p}: nu(5a+6) = {}, nu(a+b+1) = {}, nu(5a-6) = {}, nu(-a+b+1) = {}",
            q.u,
            q.v,
            q.mu,
            q.tau
        );
    }
    let (maximal, violated) = theorem1_is_maximal(t)?;
    if maximal {
        say!(out, "maximality: Z[alpha] is the full ring of integers");
    } else {
        let ids: Vec<&str> = violated.iter().map(|c| c.label()).collect();
        say!(out, "maximality: violated conditions {}", ids.join(", "));
    }
    if report.matched_rules.is_empty() {
        say!(out, "matched rules: none");
    } else {
        say!(out, "matched rules: {}", report.matched_rules.join(", "));
    }
    for p in [2u64, 3, 5] {
        let outcome = ore_analyze(&t.polynomial(), p)?;
        say!(out);
        say!(
            out,
            "p = {p}: index bound {}, splitting {}",
            outcome.index_lower_bound,
            outcome.splitting
        );
        for phi in &outcome.diagnostics {
            say!(out, "  phi = {} (multiplicity {})", phi.phi, phi.multiplicity);
            if phi.polygon.is_empty() {
                say!(out, "    polygon: empty");
            } else {
                say!(out, "    polygon: {}", phi.polygon);
            }
            for sa in &phi.sides {
                say!(out, "    side {}: residual {}", sa.side, sa.residual);
                say!(out, "      = {}", factored(&sa.residual)?);
            }
            match &phi.blocked {
                None => say!(out, "    ind = {}, regular", phi.index_contribution),
                Some(reason) => {
                    say!(out, "    ind = {}, blocked: {reason}", phi.index_contribution)
                }
            }
        }
    }
    Ok(())
}

fn factored(r: &FqPoly) -> Result<String, Failure> {
    let (lead, factors) = r.factor()?;
    let mut out = String::new();
    let lead = lead.to_string();
    if lead != "1" {
        out.push_str(&lead);
    }
    for (g, e) in &factors {
        if !out.is_empty() {
            out.push(' ');
        }
        let _ = write!(out, "({g})");
        if *e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    Ok(out)
}

/// Local-at-p reading of the maximality conditions: 2-maximality fails on
/// 4 | b or outside the mod-4 families, 3-maximality on 9 | b or outside the
/// mod-9 families, 5-maximality on 25 | b or a repeated tame factor.
fn local_maximality_fails(t: &Trinomial, p: u64) -> bool {
    let (a, b) = (t.a(), t.b());
    let residue = |x: &BigInt, m: u64| -> u64 {
        x.mod_floor(&BigInt::from(m)).to_u64().expect("small residue")
    };
    match p {
        2 => {
            residue(b, 4) == 0
                || (residue(a, 2) == 0
                    && residue(b, 2) == 1
                    && ![(0, 1), (2, 3)].contains(&(residue(a, 4), residue(b, 4))))
        }
        3 => {
            const FAMILIES: [(u64, u64); 12] = [
                (0, 2),
                (0, 4),
                (0, 5),
                (0, 7),
                (3, 8),
                (3, 1),
                (3, 4),
                (3, 7),
                (6, 8),
                (6, 1),
                (6, 4),
                (6, 7),
            ];
            residue(b, 9) == 0
                || (residue(a, 3) == 0
                    && residue(b, 3) != 0
                    && !FAMILIES.contains(&(residue(a, 9), residue(b, 9))))
        }
        5 => {
            residue(b, 25) == 0
                || (residue(&(a * b), 5) != 0 && residue(&t.discriminant_factor(), 25) == 0)
        }
        _ => unreachable!("only 2, 3, 5 can divide the index"),
    }
}

fn verify_field(report: &IndexReport) -> Result<Vec<OracleVerdict>, Error> {
    let t = &report.input;
    let f = t.polynomial();
    let mut verdicts = Vec::new();
    for (p, nu) in [(2u64, report.nu2), (3, report.nu3), (5, report.nu5)] {
        let dedekind = dedekind_divides(&f, p)?;
        let outcome = ore_analyze(&f, p)?;
        verdicts.push(OracleVerdict::compare(
            format!("index bound at {p}"),
            outcome.index_lower_bound >= 1,
            dedekind,
        ));
        verdicts.push(OracleVerdict::compare(
            format!("local maximality at {p}"),
            local_maximality_fails(t, p),
            dedekind,
        ));
        if outcome.splitting.is_determined() {
            verdicts.push(OracleVerdict::compare(
                format!("exponent table at {p}"),
                u32::from(nu),
                engstrom_exponent(&outcome.splitting, p)?,
            ));
            verdicts.push(OracleVerdict::compare(
                format!("divisor census at {p}"),
                nu >= 1,
                is_index_divisor(&outcome.splitting, p)?,
            ));
        }
    }
    if let Some((value, rule)) = corollary_fast_path(t) {
        verdicts.push(OracleVerdict::compare(
            format!("fast path {rule}"),
            report.index,
            value,
        ));
    }
    if report.maximal_order_is_zalpha {
        verdicts.push(OracleVerdict::compare(
            "maximal order implies trivial index",
            report.index,
            1,
        ));
    }
    Ok(verdicts)
}

const CSV_HEADER: &str = "a,b,nu2,nu3,nu5,index,matched_rules,maximal_order_is_Zalpha,verify_status\n";

fn scan_row(a: i64, b: i64, verify: bool) -> Result<Option<(u32, String)>, Error> {
    let Ok(t) = Trinomial::from_i64(a, b) else {
        return Ok(None);
    };
    if !t.is_reduced() || !t.is_irreducible() {
        return Ok(None);
    }
    let report = index_of_field(&t)?;
    let rules = if report.matched_rules.is_empty() {
        "-".to_string()
    } else {
        report.matched_rules.join("+")
    };
    let status = if verify {
        match verify_field(&report)?.iter().find(|v| !v.agrees) {
            None => "agree".to_string(),
            Some(v) => format!("mismatch[{}]", v.context.replace(',', ";")),
        }
    } else {
        "-".to_string()
    };
    let line = format!(
        "{a},{b},{},{},{},{},{rules},{},{status}\n",
        report.nu2, report.nu3, report.nu5, report.index, report.maximal_order_is_zalpha
    );
    Ok(Some((report.index, line)))
}

fn cmd_scan(
    a_min: i64,
    a_max: i64,
    b_min: i64,
    b_max: i64,
    verify: bool,
    jobs: Option<usize>,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    if a_min > a_max || b_min > b_max {
        return Err(Failure::new(2, "empty scan range"));
    }
    let pairs: Vec<(i64, i64)> = (a_min..=a_max)
        .flat_map(|a| (b_min..=b_max).map(move |b| (a, b)))
        .collect();
    let compute = |&(a, b): &(i64, i64)| scan_row(a, b, verify);
    let rows: Result<Vec<Option<(u32, String)>>, Error> = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::new(1, e.to_string()))?
            .install(|| pairs.par_iter().map(compute).collect()),
        None => pairs.par_iter().map(compute).collect(),
    };
    let mut text = String::from(CSV_HEADER);
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
    for (index, line) in rows?.into_iter().flatten() {
        *counts.entry(index).or_default() += 1;
        text.push_str(&line);
    }
    for (index, n) in &counts {
        let _ = writeln!(text, "# index {index}: {n}");
    }
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => emit(&text)?,
    }
    Ok(())
}

fn cmd_polygon(a: BigInt, b: BigInt, p: u64, phi_text: &str) -> Result<(), Failure> {
    let t = Trinomial::new(a, b)?;
    let f = t.polynomial();
    let phi = parse_poly(phi_text).map_err(|m| Failure::new(2, m))?;
    let expansion = phi_expand(&f, &phi, p)?;
    if !FpPoly::from_zpoly(p, &phi).divides(&FpPoly::from_zpoly(p, &f)) {
        return Err(Error::IrrelevantModulus(format!(
            "{phi} does not divide F mod {p}, so it sees no prime above {p}"
        ))
        .into());
    }
    let mut out = String::new();
    say!(out, "F = {f}");
    say!(out, "phi = {phi}, p = {p}");
    say!(out, "digits of the phi-adic expansion, least significant first:");
    for (i, (digit, v)) in expansion
        .digits()
        .iter()
        .zip(expansion.valuations())
        .enumerate()
    {
        say!(out, "  a_{i} = {digit}   (nu_{p} = {v})");
    }
    let polygon = principal_polygon(&expansion)?;
    if polygon.is_empty() {
        say!(out, "principal polygon: empty (no side of negative slope)");
    } else {
        say!(out, "principal polygon: {polygon}");
        for side in polygon.sides() {
            let residual = residual_polynomial(&expansion, side)?;
            say!(out, "side {side}");
            say!(out, "  residual {residual} = {}", factored(&residual)?);
        }
    }
    let deg_phi = phi.degree().expect("phi is nonconstant") as u64;
    say!(out, "ind_phi = {}", phi_index(&polygon, deg_phi));
    say!(out, "phi-regular: {}", is_phi_regular(&f, &phi, p)?);
    emit(&out)
}

/// Parse an integer polynomial in x: terms like "x^2", "-3x", "+7", joined
/// without precedence. Accepts optional "*" between coefficient and x.
fn parse_poly(text: &str) -> Result<ZPoly, String> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err("empty polynomial".to_string());
    }
    let mut chunks: Vec<String> = Vec::new();
    for (i, c) in cleaned.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 {
            chunks.push(String::new());
        }
        if i == 0 {
            chunks.push(String::new());
        }
        chunks.last_mut().expect("chunk started").push(c);
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    for chunk in &chunks {
        let term = chunk.strip_prefix('+').unwrap_or(chunk);
        let (coeff, exp) = match term.find('x') {
            Some(pos) => {
                let head = term[..pos].trim_end_matches('*');
                let coeff = match head {
                    "" => BigInt::from(1),
                    "-" => BigInt::from(-1),
                    other => other
                        .parse::<BigInt>()
                        .map_err(|_| format!("cannot parse coefficient {other:?}"))?,
                };
                let tail = &term[pos + 1..];
                let exp = if tail.is_empty() {
                    1usize
                } else if let Some(e) = tail.strip_prefix('^') {
                    e.parse::<usize>()
                        .map_err(|_| format!("cannot parse exponent {e:?}"))?
                } else {
                    return Err(format!("unexpected trailing {tail:?} in term {term:?}"));
                };
                (coeff, exp)
            }
            None => (
                term.parse::<BigInt>()
                    .map_err(|_| format!("cannot parse term {term:?}"))?,
                0usize,
            ),
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::from(0));
        }
        coeffs[exp] += coeff;
    }
    Ok(ZPoly::new(coeffs))
}

const REFERENCE_FIELDS: [(i64, i64, u32); 6] = [
    (288, 154, 1),
    (18, 33, 2),
    (-42, -1258, 3),
    (144, 399, 4),
    (54, 377, 6),
    (360, 35, 12),
];

fn cmd_examples(verify: bool) -> Result<(), Failure> {
    let mut out = String::new();
    let mut mismatches = Vec::new();
    for (a, b, expected) in REFERENCE_FIELDS {
        let t = Trinomial::from_i64(a, b)?;
        let report = index_of_field(&t)?;
        let ok = report.index == expected;
        say!(
            out,
            "({a}, {b}): index {} expected {} ... {}",
            report.index,
            expected,
            if ok { "ok" } else { "FAIL" }
        );
        if !ok {
            mismatches.push(format!(
                "({a}, {b}): computed {} but expected {expected}",
                report.index
            ));
        }
        if verify {
            for v in verify_field(&report)? {
                say!(out, "  {v}");
                if !v.agrees {
                    mismatches.push(v.to_string());
                }
            }
        }
    }
    if mismatches.is_empty() {
        say!(out, "6/6 examples match");
        emit(&out)
    } else {
        emit(&out)?;
        Err(Failure::new(1, mismatches.join("; ")))
    }
}
