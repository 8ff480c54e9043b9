use std::fmt::Write as _;

use serde::Serialize;

use caustics_core::coeff_engine::{
    beta_diagonal_closed, verify_alternating_identity, verify_composition_identity, verify_prop31,
    xi_from_modes, BetaTable, XiEngine,
};
use caustics_core::elliptic_geom::{
    caustic_drift, lambda_of_omega, orbit_closure, rotation_number, verify_theta_rotation,
    EllipseParams,
};
use caustics_core::exact_core::multiple_angle;
use caustics_core::exact_core::rational::decimal;
use caustics_core::exact_core::Rational;
use caustics_core::prime_select::{
    good_prime_record, smoothness_constants, symmetric_closure_order, TABLE_HEADER,
};
use caustics_core::rigidity_system::checks::chebyshev_expansion;
use caustics_core::rigidity_system::{example2_check, kernel_sum_vanishes, run_reduction, Parity};

use crate::args::{
    BilliardCommand, CoeffsCommand, ExamplesArgs, Format, IdentitiesArgs, PrimesCommand,
    RigidityCommand,
};
use crate::CliError;

/// Rendered result of one subcommand. `ok` is false when a verification
/// inside the run failed; the text still lists every check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    /// One line per violated invariant, naming the offending indices.
    pub failures: Vec<String>,
}

impl Report {
    fn passed(text: String) -> Self {
        Report {
            text,
            failures: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

const DIGITS: usize = 17;

fn approx(x: &Rational) -> String {
    decimal(x, DIGITS)
}

fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("plain data serializes"));
    out.push('\n');
}

fn tsv_header(out: &mut String, cols: &[&str]) {
    out.push_str(&cols.join("\t"));
    out.push('\n');
}

#[derive(Serialize)]
struct BetaEntry {
    j: u32,
    l: u32,
    value: String,
    decimal: String,
}

#[derive(Serialize)]
struct XiEntry {
    j: u32,
    l: i64,
    k: u64,
    value: String,
    decimal: String,
}

pub fn coeffs(cmd: &CoeffsCommand) -> Result<Report, CliError> {
    let mut out = String::new();
    match cmd {
        CoeffsCommand::Beta { jmax, output } => {
            let table = BetaTable::compute(*jmax);
            let mut failures = Vec::new();
            if output.format == Format::Tsv {
                tsv_header(&mut out, &["j", "l", "value", "decimal"]);
            }
            for ((j, l), v) in &table.entries {
                if j == l && *v != beta_diagonal_closed(*j) {
                    failures.push(format!("diagonal closed form violated at j={j}"));
                }
                match output.format {
                    Format::Tsv => writeln!(out, "{j}\t{l}\t{v}\t{}", approx(v)).expect("string"),
                    Format::Json => json_line(
                        &mut out,
                        &BetaEntry {
                            j: *j,
                            l: *l,
                            value: v.to_string(),
                            decimal: approx(v),
                        },
                    ),
                }
            }
            Ok(Report {
                text: out,
                failures,
            })
        }
        CoeffsCommand::Xi { jmax, kmax, output } => {
            let engine = XiEngine::new(*jmax);
            if output.format == Format::Tsv {
                tsv_header(&mut out, &["j", "l", "k", "value", "decimal"]);
            }
            let mut rows = Vec::new();
            for k in 1..=*kmax {
                let modes = engine.expand_mode(k)?;
                for j in 1..=*jmax {
                    for l in -(j as i64)..=j as i64 {
                        rows.push((j, l, k, xi_from_modes(&modes, j, l, *jmax)?));
                    }
                }
            }
            rows.sort_by_key(|r| (r.0, r.1, r.2));
            for (j, l, k, v) in rows {
                match output.format {
                    Format::Tsv => {
                        writeln!(out, "{j}\t{l}\t{k}\t{v}\t{}", approx(&v)).expect("string")
                    }
                    Format::Json => json_line(
                        &mut out,
                        &XiEntry {
                            j,
                            l,
                            k,
                            value: v.to_string(),
                            decimal: approx(&v),
                        },
                    ),
                }
            }
            Ok(Report::passed(out))
        }
    }
}

#[derive(Serialize)]
struct IdentityEntry {
    identity: &'static str,
    index: String,
    holds: bool,
}

pub fn identities(args: &IdentitiesArgs) -> Result<Report, CliError> {
    let all = !(args.alternating || args.composition || args.assembled || args.chebyshev);
    let mut results: Vec<IdentityEntry> = Vec::new();
    let mut push = |identity: &'static str, index: String, holds: bool| {
        results.push(IdentityEntry {
            identity,
            index,
            holds,
        });
    };
    if all || args.alternating {
        for j in 1..=args.jmax {
            push(
                "alternating",
                format!("j={j}"),
                verify_alternating_identity(j),
            );
        }
    }
    if all || args.composition {
        let kmax = args.kmax.unwrap_or(6).min(12);
        for j in 1..=args.jmax.min(8) {
            for k in 1..=kmax {
                push(
                    "composition",
                    format!("j={j},k={k}"),
                    verify_composition_identity(j, k),
                );
            }
        }
    }
    if all || args.assembled {
        for j in 1..=args.jmax.min(6) {
            push("assembled", format!("j={j}"), verify_prop31(j)?);
        }
    }
    if all || args.chebyshev {
        let kmax = args.kmax.unwrap_or(15).clamp(3, 31);
        for k in 1..=kmax {
            push(
                "chebyshev_expansion",
                format!("k={k}"),
                chebyshev_expansion(k) == multiple_angle(k),
            );
        }
        for k in (3..=kmax).step_by(2) {
            for p in (1..k).step_by(2) {
                let (exact, _) = kernel_sum_vanishes(k, p)?;
                push("shared_kernel", format!("k={k},p={p}"), exact);
            }
        }
    }
    let failures = results
        .iter()
        .filter(|r| !r.holds)
        .map(|r| format!("identity {} fails at {}", r.identity, r.index))
        .collect();
    let mut out = String::new();
    match args.output.format {
        Format::Tsv => {
            tsv_header(&mut out, &["identity", "index", "holds"]);
            for r in &results {
                writeln!(out, "{}\t{}\t{}", r.identity, r.index, r.holds).expect("string");
            }
        }
        Format::Json => results.iter().for_each(|r| json_line(&mut out, r)),
    }
    Ok(Report {
        text: out,
        failures,
    })
}

const DEFAULT_Q0: [u64; 10] = [3, 5, 7, 9, 11, 19, 29, 49, 99, 199];
const LONG_Q0: u64 = 499;

pub fn primes(cmd: &PrimesCommand) -> Result<Report, CliError> {
    let mut out = String::new();
    match cmd {
        PrimesCommand::Table {
            q0,
            allow_long,
            output,
        } => {
            let list: Vec<u64> = if q0.is_empty() {
                DEFAULT_Q0.to_vec()
            } else {
                q0.clone()
            };
            if let Some(q) = list.iter().find(|&&q| q >= LONG_Q0 && !allow_long) {
                return Err(CliError::Usage(format!(
                    "q0={q} is a long run; pass --allow-long"
                )));
            }
            if output.format == Format::Tsv {
                out.push_str(TABLE_HEADER);
                out.push('\n');
            }
            for q in list {
                let c = smoothness_constants(q)?;
                match output.format {
                    Format::Tsv => {
                        out.push_str(&c.tsv_row());
                        out.push('\n');
                    }
                    Format::Json => json_line(&mut out, &c),
                }
            }
            Ok(Report::passed(out))
        }
        PrimesCommand::Check { q0, q, output } => {
            let rec = good_prime_record(*q, *q0)?;
            let order = symmetric_closure_order(*q, &rec.generators_a)?;
            let mut failures = Vec::new();
            if order != rec.closure_size {
                failures.push(format!(
                    "closure size mismatch at q={q}: bfs {} vs order {order}",
                    rec.closure_size
                ));
            }
            if rec.sufficient_condition && !(rec.a_good && rec.b_good) {
                failures.push(format!(
                    "sufficient condition holds but q={q} is not good for q0={q0}"
                ));
            }
            match output.format {
                Format::Tsv => {
                    tsv_header(
                        &mut out,
                        &[
                            "q",
                            "q0",
                            "a_good",
                            "b_good",
                            "closure",
                            "b_closure",
                            "sufficient",
                        ],
                    );
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                        rec.q,
                        rec.q0,
                        rec.a_good,
                        rec.b_good,
                        rec.closure_size,
                        rec.b_closure_size,
                        rec.sufficient_condition
                    )
                    .expect("string");
                }
                Format::Json => json_line(&mut out, &rec),
            }
            Ok(Report {
                text: out,
                failures,
            })
        }
    }
}

/// Largest `q0` whose exact reduction finishes in seconds.
const QUICK_RIGIDITY_Q0: u64 = 5;

pub fn rigidity(cmd: &RigidityCommand) -> Result<Report, CliError> {
    let RigidityCommand::Certify {
        q0,
        mode,
        m,
        hmax,
        allow_long,
        output,
    } = cmd;
    let parity: Parity = mode.parse().map_err(|e| CliError::Usage(format!("{e}")))?;
    if *q0 > QUICK_RIGIDITY_Q0 && !allow_long {
        return Err(CliError::Usage(format!(
            "q0={q0} is a long run; pass --allow-long"
        )));
    }
    let cert = run_reduction(*q0, parity, *m, *hmax)?;
    let nonzero = cert.witness.as_ref().is_some_and(|w| w.second_pass_nonzero);
    let mut failures = Vec::new();
    if cert.h_final.is_none() {
        let last = cert.steps.last().map_or(0, |s| s.h);
        failures.push(format!("kernel still nonzero at h={last}"));
    } else if !nonzero {
        failures.push("terminal minor vanished on the second pass".to_string());
    }
    let mut out = String::new();
    match output.format {
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(&cert).expect("plain data serializes"));
            out.push('\n');
        }
        Format::Tsv => {
            tsv_header(
                &mut out,
                &["h", "rows", "variables", "kappa", "prime_step", "excluded"],
            );
            for s in &cert.steps {
                let excluded = if s.excluded.is_empty() {
                    "-".to_string()
                } else {
                    s.excluded.join(",")
                };
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    s.h, s.rows, s.variables, s.kappa, s.prime_step, excluded
                )
                .expect("string");
            }
            if let Some(w) = &cert.witness {
                writeln!(
                    out,
                    "# witness h={} rows={} columns={}",
                    w.h,
                    w.rows.join(","),
                    w.columns.join(",")
                )
                .expect("string");
                writeln!(
                    out,
                    "# determinant {} ~ {}",
                    w.determinant, w.determinant_numeric
                )
                .expect("string");
            }
        }
    }
    Ok(Report {
        text: out,
        failures,
    })
}

#[derive(Serialize)]
struct CheckEntry {
    check: &'static str,
    value: String,
    tolerance: String,
    pass: bool,
}

fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

pub fn billiard(cmd: &BilliardCommand) -> Result<Report, CliError> {
    let BilliardCommand::Verify {
        e,
        lambda,
        steps,
        output,
    } = cmd;
    let ell = EllipseParams::unit(*e)?;
    let lambda = lambda.unwrap_or(0.5 * ell.b());
    let mut checks = Vec::new();
    let mut add = |check: &'static str, value: f64, tol: f64| {
        let pass = value <= tol;
        checks.push(CheckEntry {
            check,
            value: sci(value),
            tolerance: sci(tol),
            pass,
        });
    };
    add(
        "caustic_invariance",
        caustic_drift(lambda, &ell, *steps)?,
        1e-10,
    );
    add(
        "theta_rotation",
        verify_theta_rotation(lambda, &ell, *steps)?,
        1e-9,
    );
    let mut round = 0.0_f64;
    for omega in [0.05, 1.0 / 7.0, 0.2, 0.3, 0.45] {
        round = round.max((rotation_number(lambda_of_omega(omega, &ell)?, &ell)? - omega).abs());
    }
    add("rotation_round_trip", round, 1e-10);
    add("closure_1_7", orbit_closure(7, &ell)?, 1e-8);
    let failures = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| {
            format!(
                "{} = {} exceeds {} at e={e}, lambda={lambda}",
                c.check, c.value, c.tolerance
            )
        })
        .collect();
    let mut out = String::new();
    match output.format {
        Format::Tsv => {
            tsv_header(&mut out, &["check", "value", "tolerance", "pass"]);
            for c in &checks {
                writeln!(out, "{}\t{}\t{}\t{}", c.check, c.value, c.tolerance, c.pass)
                    .expect("string");
            }
        }
        Format::Json => checks.iter().for_each(|c| json_line(&mut out, c)),
    }
    Ok(Report {
        text: out,
        failures,
    })
}

#[derive(Serialize)]
struct ExamplesEntry {
    determinant: String,
    determinant_decimal: String,
    nondegenerate: bool,
    doubling_chain_mod5: Vec<u64>,
    chain_covers_all: bool,
    doubling_chain_mod7: Vec<u64>,
}

pub fn examples(args: &ExamplesArgs) -> Result<Report, CliError> {
    let cert = example2_check()?;
    let entry = ExamplesEntry {
        determinant: cert.determinant.to_string(),
        determinant_decimal: sci(cert.determinant_numeric),
        nondegenerate: !cert.determinant.rep().is_zero(),
        doubling_chain_mod5: cert.chain.clone(),
        chain_covers_all: cert.chain_covers_all,
        doubling_chain_mod7: cert.chain_mod7.clone(),
    };
    let misses_mod7 = entry.doubling_chain_mod7.len() < 6;
    let mut failures = Vec::new();
    if !entry.nondegenerate {
        failures.push("worked 4x4 matrix is degenerate".to_string());
    }
    if !entry.chain_covers_all {
        failures.push("doubling modulo 5 misses a root".to_string());
    }
    if !misses_mod7 {
        failures.push("doubling modulo 7 reaches every root".to_string());
    }
    let mut out = String::new();
    match args.output.format {
        Format::Json => json_line(&mut out, &entry),
        Format::Tsv => {
            let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            tsv_header(&mut out, &["item", "value"]);
            writeln!(out, "determinant\t{}", entry.determinant).expect("string");
            writeln!(out, "determinant_decimal\t{}", entry.determinant_decimal).expect("string");
            writeln!(out, "nondegenerate\t{}", entry.nondegenerate).expect("string");
            writeln!(
                out,
                "doubling_chain_mod5\t{}",
                join(&entry.doubling_chain_mod5)
            )
            .expect("string");
            writeln!(out, "chain_covers_all\t{}", entry.chain_covers_all).expect("string");
            writeln!(
                out,
                "doubling_chain_mod7\t{}",
                join(&entry.doubling_chain_mod7)
            )
            .expect("string");
        }
    }
    Ok(Report {
        text: out,
        failures,
    })
}
