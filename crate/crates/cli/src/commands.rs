//! One function per subcommand.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;
use serde_json::{json, Value};
use stacklab::asympt::{report_for, SingularityReport, WORK_BITS};
use stacklab::contactmap::{contacts, decompose_heuristic, verify_decomposition, LatticeWalk};
use stacklab::decompose::{classify_intervals, primary_component, verify_localization};
use stacklab::diagram::{is_m_reduced, parse_diagram, Diagram};
use stacklab::enumerate::{count_by_arcs_with, count_class_with, enumerate_class_with, ClassKind, DiagramClass};
use stacklab::holonomic::{
    eval_recurrence, extend_by_recurrence, printed_z_prec, recurrence_for, PRecurrence, RecurrenceSource,
};
use stacklab::poly::Poly;
use stacklab::reduction::{expand, reduce};
use stacklab::series::{self, Series, Transcription};

use crate::limits::Limits;
use crate::suite;
use crate::table::{emit_table, Format, Table};
use crate::{CliError, Command, GfName, OutputArgs, Reading, EXIT_FAILED, EXIT_OK};

type Outcome = Result<i32, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

pub fn dispatch(cmd: Command, limits: &Limits, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Count { class, m, k, n, row, wide, workers, out: fmt } => {
            count(&class, &m, k, n, row, wide, workers, &fmt, limits, out)
        }
        Command::Enumerate { class, m, n, out: path } => enumerate(&class, m, n, &path, limits),
        Command::Reduce { m, input, out: path } => convert(m, &input, &path, true, err),
        Command::Expand { m, input, out: path } => convert(m, &input, &path, false, err),
        Command::Decompose { m, input } => decompose(m, &input, out, err),
        Command::Contactmap { walks, emit_diagrams } => contactmap(&walks, emit_diagrams.as_deref(), out, err),
        Command::Series { gf, m, i, order, reading, out: fmt } => {
            series_cmd(gf, m, i, order, reading, &fmt, limits, out)
        }
        Command::Recurrence { gf, m, printed, extend, out: fmt, .. } => {
            recurrence(gf, m, printed, extend, &fmt, limits, out)
        }
        Command::Asympt { gf, m, digits, terms, json } => asympt(gf, m, digits, terms, json, limits, out),
        Command::Verify { only, out: fmt, .. } => verify(&only, &fmt, out),
    }
}

fn class_from(name: &str, m: Option<usize>) -> Result<DiagramClass, CliError> {
    let kind = ClassKind::parse(name).map_err(|e| usage(e.to_string()))?;
    DiagramClass::new(kind, m).map_err(|e| usage(e.to_string()))
}

fn check_workers(workers: Option<usize>) -> Result<(), CliError> {
    if workers == Some(0) {
        return Err(usage("--workers must be positive"));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn count(
    name: &str,
    ms: &[usize],
    k: Option<usize>,
    n: usize,
    row: bool,
    wide: bool,
    workers: Option<usize>,
    fmt: &OutputArgs,
    limits: &Limits,
    out: &mut dyn Write,
) -> Outcome {
    check_workers(workers)?;
    let config = limits.enumeration(workers);
    let m_values: Vec<Option<usize>> = if ms.is_empty() { vec![None] } else { ms.iter().copied().map(Some).collect() };
    if m_values.len() > 1 && !row {
        return Err(usage("several values of --m need --row"));
    }
    let classes = m_values.iter().map(|&m| class_from(name, m)).collect::<Result<Vec<_>, _>>()?;
    if k.is_some() && classes[0].kind() != ClassKind::RnaSecondary {
        return Err(usage("--k applies to --class rna only"));
    }
    let count_one = |n: usize, class: &DiagramClass| -> Result<BigUint, CliError> {
        let r = match k {
            Some(k) => count_by_arcs_with(n, class, &config).map(|v| v.get(k).cloned().unwrap_or_default()),
            None => count_class_with(n, class, &config),
        };
        r.map_err(|e| usage(e.to_string()))
    };
    let m_json = |m: Option<usize>| m.map_or(Value::Null, |m| json!(m));
    let format = fmt.format();
    if !row {
        let c = count_one(n, &classes[0])?;
        match format {
            Format::Plain => writeln!(out, "{c}")?,
            _ => {
                let mut t = Table::new(["class", "m", "n", "count"]);
                t.push(vec![json!(classes[0].kind().name()), m_json(m_values[0]), json!(n), json!(c.to_string())]);
                if format == Format::Json {
                    serde_json::to_writer(&mut *out, &t.to_json()[0])?;
                    writeln!(out)?;
                } else {
                    emit_table(&t, format, out)?;
                }
            }
        }
        return Ok(EXIT_OK);
    }
    let table = if wide {
        let mut cols = vec!["class".to_string(), "m".to_string()];
        cols.extend((1..=n).map(|v| v.to_string()));
        let mut t = Table::new(cols);
        for (class, &m) in classes.iter().zip(&m_values) {
            let mut r = vec![json!(class.kind().name()), m_json(m)];
            for v in 1..=n {
                r.push(json!(count_one(v, class)?.to_string()));
            }
            t.push(r);
        }
        t
    } else {
        let mut t = Table::new(["class", "m", "n", "count"]);
        for (class, &m) in classes.iter().zip(&m_values) {
            for v in 1..=n {
                let c = count_one(v, class)?;
                t.push(vec![json!(class.kind().name()), m_json(m), json!(v), json!(c.to_string())]);
            }
        }
        t
    };
    emit_table(&table, format, out)?;
    Ok(EXIT_OK)
}

fn enumerate(name: &str, m: Option<usize>, n: usize, path: &Path, limits: &Limits) -> Outcome {
    let class = class_from(name, m)?;
    let all = enumerate_class_with(n, &class, &limits.enumeration(None)).map_err(|e| usage(e.to_string()))?;
    let mut text = String::new();
    for d in &all {
        text.push_str(&d.render());
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(EXIT_OK)
}

/// Diagram lines of a file with their 1-based line numbers; blank lines
/// and lines starting with `#` are skipped.
fn read_lines(path: &Path) -> Result<Vec<(usize, String)>, CliError> {
    let text = fs::read_to_string(path)?;
    Ok(text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim().to_string()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect())
}

fn check_m(m: usize) -> Result<(), CliError> {
    if m < 2 {
        return Err(usage(format!("--m must be at least 2, got {m}")));
    }
    Ok(())
}

/// Reduces or expands every line; conforming lines are written, the rest
/// are reported with their line numbers and make the exit code nonzero.
fn convert(m: usize, input: &Path, output: &Path, reducing: bool, err: &mut dyn Write) -> Outcome {
    check_m(m)?;
    let mut text = String::new();
    let mut bad = 0;
    for (line, src) in read_lines(input)? {
        let result = parse_diagram(&src)
            .map_err(|e| e.to_string())
            .and_then(|d| if reducing { reduce(&d, m) } else { expand(&d, m) }.map_err(|e| e.to_string()));
        match result {
            Ok(d) => {
                text.push_str(&d.render());
                text.push('\n');
            }
            Err(e) => {
                bad += 1;
                writeln!(err, "line {line}: {e}")?;
            }
        }
    }
    fs::write(output, text)?;
    Ok(if bad > 0 { EXIT_FAILED } else { EXIT_OK })
}

fn decompose_one(d: &Diagram, m: usize) -> Result<Value, String> {
    let dec = primary_component(d).map_err(|e| e.to_string())?;
    let types = classify_intervals(&dec);
    let intervals: Vec<Value> = dec
        .k_intervals()
        .iter()
        .zip(&types)
        .map(|(iv, t)| {
            json!({
                "lo": iv.lo,
                "hi": iv.hi,
                "jset": iv.jset(d.n()),
                "boundary": dec.boundary(iv),
                "type": format!("{t:?}"),
            })
        })
        .collect();
    Ok(json!({
        "diagram": d.render(),
        "component": dec.component,
        "component_arcs": dec.component_arcs,
        "intervals": intervals,
        "jsets": dec.jsets(),
        "m_reduced": is_m_reduced(d, m).map_err(|e| e.to_string())?,
        "locally_reduced": verify_localization(d, m).map_err(|e| e.to_string())?,
    }))
}

fn decompose(m: usize, input: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    check_m(m)?;
    let mut bad = 0;
    for (line, src) in read_lines(input)? {
        match parse_diagram(&src).map_err(|e| e.to_string()).and_then(|d| decompose_one(&d, m)) {
            Ok(v) => {
                serde_json::to_writer(&mut *out, &v)?;
                writeln!(out)?;
            }
            Err(e) => {
                bad += 1;
                writeln!(err, "line {line}: {e}")?;
            }
        }
    }
    Ok(if bad > 0 { EXIT_FAILED } else { EXIT_OK })
}

fn contactmap(walks: &Path, emit: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let mut diagrams = String::new();
    let mut bad = 0;
    for (line, src) in read_lines(walks)? {
        let walk: LatticeWalk = match src.parse() {
            Ok(w) => w,
            Err(e) => {
                bad += 1;
                writeln!(err, "line {line}: {e}")?;
                continue;
            }
        };
        let d = contacts(&walk);
        diagrams.push_str(&d.render());
        diagrams.push('\n');
        let parts = decompose_heuristic(&d);
        let verified = match &parts {
            Some(p) => verify_decomposition(&d, p).map_err(failed)?,
            None => false,
        };
        let v = json!({
            "walk": src,
            "diagram": d.render(),
            "contacts": d.arc_count(),
            "parts": parts,
            "verified": verified,
        });
        serde_json::to_writer(&mut *out, &v)?;
        writeln!(out)?;
    }
    if let Some(path) = emit {
        fs::write(path, diagrams)?;
    }
    Ok(if bad > 0 { EXIT_FAILED } else { EXIT_OK })
}

fn need_m(gf: GfName, m: Option<usize>) -> Result<usize, CliError> {
    let m = m.ok_or_else(|| usage(format!("--gf {gf:?} needs --m").to_lowercase()))?;
    check_m(m)?;
    Ok(m)
}

fn transcription(r: Reading) -> Transcription {
    match r {
        Reading::AsPrinted => Transcription::AsPrinted,
        Reading::Amended => Transcription::Amended,
    }
}

#[allow(clippy::too_many_arguments)]
fn series_cmd(
    gf: GfName,
    m: Option<usize>,
    i: Option<u8>,
    order: usize,
    reading: Reading,
    fmt: &OutputArgs,
    limits: &Limits,
    out: &mut dyn Write,
) -> Outcome {
    if order > limits.order {
        return Err(usage(format!("order {order} exceeds the limit {}", limits.order)));
    }
    let tr = transcription(reading);
    let s: Series = match gf {
        GfName::Z => series::series_z(order),
        GfName::Zm => series::series_zm(need_m(gf, m)?, order),
        GfName::Rm => series::series_rm(need_m(gf, m)?, order),
        GfName::Exrna => series::series_extended_rna(order),
        GfName::Ti => {
            let i = i.ok_or_else(|| usage("--gf ti needs --i"))?;
            series::series_t_with(need_m(gf, m)?, i, order, tr)
        }
        GfName::G => Ok(series::structural(need_m(gf, m)?, order, tr).map_err(failed)?.g),
        GfName::H => series::series_h(need_m(gf, m)?, order, tr),
        GfName::Schroeder => series::schroeder(order),
    }
    .map_err(failed)?;
    let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    match fmt.format() {
        Format::Json => {
            let v = json!({
                "gf": format!("{gf:?}").to_lowercase(),
                "m": m,
                "i": i,
                "order": order,
                "coefficients": coeffs,
            });
            serde_json::to_writer(&mut *out, &v)?;
            writeln!(out)?;
        }
        format => {
            let mut t = Table::new(["n", "coefficient"]);
            for (n, c) in coeffs.into_iter().enumerate() {
                t.push(vec![json!(n), json!(c)]);
            }
            emit_table(&t, format, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn poly_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn source_for(gf: GfName, m: Option<usize>) -> Result<RecurrenceSource, CliError> {
    Ok(match gf {
        GfName::Z => RecurrenceSource::Zigzag,
        GfName::Zm => RecurrenceSource::Reduced(need_m(gf, m)?),
        GfName::Rm => RecurrenceSource::RegularLinear(need_m(gf, m)?),
        GfName::Exrna => RecurrenceSource::ExtendedRna,
        other => return Err(usage(format!("no recurrence for --gf {other:?}").to_lowercase())),
    })
}

/// Recurrence coefficients as a table: one row per `p_i`, one column per
/// power of `n`.
fn recurrence_table(rec: &PRecurrence) -> Table {
    let width = rec.degree() + 1;
    let mut cols = vec!["shift".to_string()];
    cols.extend((0..width).map(|k| format!("n^{k}")));
    let mut t = Table::new(cols);
    for (i, p) in rec.p.iter().enumerate() {
        let mut r = vec![json!(i)];
        r.extend((0..width).map(|k| json!(p.coeff(k).to_string())));
        t.push(r);
    }
    t
}

fn recurrence(
    gf: GfName,
    m: Option<usize>,
    printed: bool,
    extend: Option<usize>,
    fmt: &OutputArgs,
    limits: &Limits,
    out: &mut dyn Write,
) -> Outcome {
    let source = source_for(gf, m)?;
    if extend.is_some_and(|n| n > 10 * limits.order) {
        return Err(usage("--extend exceeds ten times the series order limit"));
    }
    let (rec, ode, initial) = if printed {
        if source != RecurrenceSource::Zigzag {
            return Err(usage("--printed is available for --gf z only"));
        }
        let rec = printed_z_prec();
        let z = series::series_z(rec.order() + 1).map_err(failed)?;
        let init: Vec<String> = z.coeffs()[..rec.initial_len()].iter().map(|c| c.to_string()).collect();
        (rec, None, init)
    } else {
        let report = recurrence_for(source, 0).map_err(failed)?;
        let init = report.initial.iter().map(|c| c.to_string()).collect();
        (report.rec, Some(report.ode), init)
    };
    let terms: Option<Vec<String>> = match extend {
        None => None,
        Some(len) if printed => {
            let z = series::series_z(rec.initial_len()).map_err(failed)?;
            let seq = eval_recurrence(&rec, &z.coeffs()[..rec.initial_len()], len).map_err(failed)?;
            Some(seq.iter().map(|c| c.to_string()).collect())
        }
        Some(len) => Some(extend_by_recurrence(source, len).map_err(failed)?.iter().map(|c| c.to_string()).collect()),
    };
    let table = recurrence_table(&rec);
    match fmt.format() {
        Format::Json => {
            let v = json!({
                "source": format!("{source:?}"),
                "ode": ode.as_ref().map(|o| json!({
                    "q": o.q.iter().map(poly_strings).collect::<Vec<_>>(),
                    "inhomogeneous": poly_strings(&o.inh),
                })),
                "order": rec.order(),
                "degree": rec.degree(),
                "n0": rec.n0,
                "recurrence": table.to_json(),
                "initial": initial,
                "terms": terms,
            });
            serde_json::to_writer(&mut *out, &v)?;
            writeln!(out)?;
        }
        format => {
            if let Some(o) = &ode {
                writeln!(out, "# ODE of order {}: sum_k q_k(x) Y^(k) = inh(x), coefficients by power of x", o.order())?;
                for (k, q) in o.q.iter().enumerate() {
                    writeln!(out, "# q_{k}: {}", poly_strings(q).join(" "))?;
                }
                writeln!(out, "# inh: {}", poly_strings(&o.inh).join(" "))?;
            }
            writeln!(
                out,
                "# sum_i p_i(n) a(n+i) = 0 for n >= {}; order {}, degree {}",
                rec.n0,
                rec.order(),
                rec.degree()
            )?;
            emit_table(&table, format, out)?;
            writeln!(out, "# initial: {}", initial.join(" "))?;
            if let Some(t) = terms {
                writeln!(out, "# terms: {}", t.join(" "))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn asympt(
    gf: GfName,
    m: Option<usize>,
    digits: usize,
    terms: usize,
    json_out: bool,
    limits: &Limits,
    out: &mut dyn Write,
) -> Outcome {
    // Roughly 0.3 decimal digits per bit, with a margin for rounding.
    let max_digits = limits.digits.min((WORK_BITS as f64 * 0.30) as usize - 4);
    if digits == 0 || digits > max_digits {
        return Err(usage(format!("--digits must be in 1..={max_digits}")));
    }
    let source = source_for(gf, m)?;
    let rep: SingularityReport = report_for(source, terms).map_err(failed)?;
    // The extrapolated values are good to about ten digits.
    let ex_digits = digits.min(10);
    let extrap = |f: fn(&stacklab::asympt::Extrapolation) -> String| rep.extrapolation.as_ref().map(f);
    let omega_extrap = extrap(|e| e.omega.to_decimal(10));
    let gamma_extrap = extrap(|e| e.gamma.to_decimal(10));
    let cut = |s: Option<String>| {
        s.map(|s| {
            let dot = s.find('.').unwrap_or(s.len());
            s[..(dot + 1 + ex_digits).min(s.len())].to_string()
        })
    };
    let (omega_extrap, gamma_extrap) = (cut(omega_extrap), cut(gamma_extrap));
    if json_out {
        let v = json!({
            "rho": rep.rho.to_decimal(digits),
            "omega": rep.omega.to_decimal(digits),
            "gamma": rep.gamma.to_decimal(digits),
            "omega_extrap": omega_extrap,
            "gamma_extrap": gamma_extrap,
        });
        serde_json::to_writer(&mut *out, &v)?;
        writeln!(out)?;
    } else {
        writeln!(out, "rho          = {}", rep.rho.to_decimal(digits))?;
        writeln!(out, "omega        = {}", rep.omega.to_decimal(digits))?;
        writeln!(out, "gamma        = {}", rep.gamma.to_decimal(digits))?;
        writeln!(out, "Z(rho)       = {}", rep.z_at_rho.to_decimal(digits))?;
        writeln!(out, "exponent     = {}/{}", rep.exponent.0, rep.exponent.1)?;
        if let (Some(o), Some(g)) = (&omega_extrap, &gamma_extrap) {
            writeln!(out, "omega_extrap = {o}")?;
            writeln!(out, "gamma_extrap = {g}")?;
        }
    }
    if rep.diverged {
        return Err(failed("the implicit-function constants and the coefficient extrapolation disagree"));
    }
    Ok(EXIT_OK)
}

fn verify(only: &[u8], fmt: &OutputArgs, out: &mut dyn Write) -> Outcome {
    let selected: Vec<suite::Criterion> =
        suite::criteria().into_iter().filter(|c| only.is_empty() || only.contains(&c.id)).collect();
    if selected.is_empty() {
        return Err(usage("no check has the requested id"));
    }
    let outcomes: Vec<suite::Outcome> = selected.iter().map(suite::run_criterion).collect();
    let mut t = Table::new(["id", "check", "status", "tolerance", "seconds", "detail"]);
    for o in &outcomes {
        t.push(vec![
            json!(o.id),
            json!(o.name),
            json!(if o.passed { "pass" } else { "fail" }),
            json!(o.tolerance),
            json!(format!("{:.1}", o.elapsed.as_secs_f64())),
            json!(o.detail),
        ]);
    }
    emit_table(&t, fmt.format(), out)?;
    Ok(if outcomes.iter().all(|o| o.passed) { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use crate::{run_with, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
    use serde_json::Value;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("stacklab").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn temp_with(text: &str) -> (tempfile::TempDir, std::path::PathBuf) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("input.txt");
        std::fs::write(&path, text).unwrap();
        (dir, path)
    }

    #[test]
    fn count_prints_the_bare_number() {
        assert_eq!(run(&["count", "--class", "zigzag", "--n", "12"]), (EXIT_OK, "955999\n".into(), String::new()));
    }

    #[test]
    fn regular_linear_table_as_csv() {
        let (code, out, _) = run(&[
            "count",
            "--class",
            "regular-linear",
            "--m",
            "3,4,5,6",
            "--n",
            "12",
            "--row",
            "--wide",
            "--format",
            "csv",
        ]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0].split(',').count(), 14);
        assert_eq!(lines[1], "regular-linear,3,1,1,1,2,6,18,54,162,491,1509,4692,14729");
        assert_eq!(lines[4], "regular-linear,6,1,1,1,1,1,1,2,6,18,52,148,420");
    }

    #[test]
    fn zigzag_row_as_json() {
        let (code, out, _) = run(&["count", "--class", "zigzag", "--n", "12", "--row", "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[11], serde_json::json!({"class": "zigzag", "m": null, "n": 12, "count": "955999"}));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let base = ["count", "--class", "reduced-zigzag", "--m", "3", "--n", "11", "--row", "--format", "csv"];
        let one = run(&[&base[..], &["--workers", "1"]].concat());
        let four = run(&[&base[..], &["--workers", "4"]].concat());
        assert_eq!(one, four);
        assert_eq!(run(&[&base[..], &["--workers", "0"]].concat()).0, EXIT_USAGE);
    }

    #[test]
    fn usage_errors_exit_with_two() {
        assert_eq!(run(&["count", "--class", "zigzag"]).0, EXIT_USAGE);
        assert_eq!(run(&["count", "--class", "zigzag", "--n", "3", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(run(&["count", "--class", "regular-linear", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(run(&["count", "--class", "zigzag", "--n", "40"]).0, EXIT_USAGE);
        assert_eq!(run(&["series", "--gf", "zm", "--order", "5"]).0, EXIT_USAGE);
        assert_eq!(run(&["asympt", "--gf", "z", "--digits", "0"]).0, EXIT_USAGE);
        assert_eq!(run(&["verify", "--suite", "paper", "--only", "99"]).0, EXIT_USAGE);
    }

    #[test]
    fn reduce_and_expand_files() {
        let (dir, input) = temp_with("n=6; 1-3 3-6 1-6\nn=4; 1-2\n\n# comment\nn=3;\n");
        let reduced = dir.path().join("reduced.txt");
        let (code, _, err) =
            run(&["reduce", "--m", "2", "--in", input.to_str().unwrap(), "--out", reduced.to_str().unwrap()]);
        assert_eq!(code, EXIT_FAILED);
        assert!(err.starts_with("line 2: arc 1-2 is shorter than m = 2"), "{err}");
        assert_eq!(std::fs::read_to_string(&reduced).unwrap(), "n=5; 1-2 1-5 3-5\nn=2;\n");
        let back = dir.path().join("back.txt");
        let (code, _, _) =
            run(&["expand", "--m", "2", "--in", reduced.to_str().unwrap(), "--out", back.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(std::fs::read_to_string(&back).unwrap(), "n=6; 1-3 1-6 3-6\nn=3;\n");
    }

    #[test]
    fn enumerate_writes_diagram_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z3.txt");
        let (code, _, _) = run(&["enumerate", "--class", "zigzag", "--n", "3", "--out", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 6);
        assert!(text.lines().all(|l| l.starts_with("n=3;")));
    }

    #[test]
    fn decompose_reports_component_and_types() {
        let (_dir, input) = temp_with("n=17; 1-7 1-13 9-13 2-3 5-6 10-11 10-12 16-17\nn=3; 1-2 2-3\n");
        let (code, out, err) = run(&["decompose", "--m", "3", "--in", input.to_str().unwrap()]);
        assert_eq!(code, EXIT_FAILED);
        assert!(err.starts_with("line 2:"));
        let v: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
        assert_eq!(v["component"], serde_json::json!([1, 7, 9, 13]));
        assert_eq!(v["jsets"], serde_json::json!([[1, 7], [7, 9], [9, 13], [13, 17]]));
        assert_eq!(v["intervals"].as_array().unwrap().len(), 4);
        assert_eq!(v["m_reduced"], v["locally_reduced"]);
    }

    #[test]
    fn contactmap_splits_the_example_walk() {
        let (dir, input) = temp_with(&format!("{}\nRULD\n", stacklab::contactmap::EXAMPLE_WALK));
        let emitted = dir.path().join("maps.txt");
        let (code, out, err) =
            run(&["contactmap", "--walks", input.to_str().unwrap(), "--emit-diagrams", emitted.to_str().unwrap()]);
        assert_eq!(code, EXIT_FAILED);
        assert!(err.starts_with("line 2:"));
        let v: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
        assert_eq!(v["contacts"], 15);
        assert_eq!(v["verified"], true);
        assert!(std::fs::read_to_string(&emitted).unwrap().starts_with("n=24; 1-22"));
    }

    #[test]
    fn series_and_recurrence_output() {
        let (code, out, _) = run(&["series", "--gf", "z", "--order", "6", "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["coefficients"], serde_json::json!(["1", "1", "2", "6", "20", "70", "255"]));
        let (code, out, _) = run(&["series", "--gf", "schroeder", "--order", "4", "--format", "csv"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "n,coefficient\n0,1\n1,2\n2,6\n3,22\n4,90\n");
        let (code, out, _) = run(&["recurrence", "--gf", "z", "--paper", "--extend", "13", "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["order"], 6);
        assert_eq!(v["terms"][12], "955999");
        let (code, out, _) = run(&["recurrence", "--gf", "z", "--extend", "13", "--json"]);
        assert_eq!(code, EXIT_OK);
        let derived: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(derived["terms"], v["terms"]);
    }

    #[test]
    fn asympt_json_fields() {
        let (code, out, _) = run(&["asympt", "--gf", "rm", "--m", "4", "--digits", "7", "--json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["omega"], "3.2431591");
        for key in ["rho", "gamma", "omega_extrap", "gamma_extrap"] {
            assert!(v[key].is_string(), "{key}");
        }
    }

    #[test]
    fn verify_reports_a_table() {
        let (code, out, _) = run(&["verify", "--suite", "reference", "--only", "1,13", "--format", "csv"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 3);
        assert!(out.lines().nth(1).unwrap().starts_with("1,zigzag-table,pass,"));
    }
}
