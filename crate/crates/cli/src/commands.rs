//! Subcommand dispatch. Each subcommand maps onto one library operation and
//! yields a report (or, for `export`, an operator document).

use std::process::ExitCode;
use std::time::Instant;

use chnlab::chn::{
    classical_chn_check, classical_newton_check, ChnInstance, ClassicalFlavor, ClassicalMatrix,
    Family,
};
use chnlab::ncalg::{relations_from, Flavor, MembershipMode};
use chnlab::tensor::operator_to_json;
use chnlab::ybkit::{
    antisymmetrizer_report, check_compatible, check_hecke, check_yang_baxter, compatibility_report,
    d_matrix_report, hecke_report, twist, CompatibilityFailure, HeckeData,
};
use chnlab::{Error, Scalar, TensorOp, VerificationReport};
use serde::Serialize;

use crate::operand::{declare_params, load, load_pair};
use crate::{
    Algebra, AntisymArgs, BridgeArgs, BuildCmd, CheckCmd, ChnArgs, ClassicalArgs, ClassicalKind,
    Cli, Command, DeriveCmd, Format, MembershipArgs, ModeArg, PairArgs, VariantArg, VerifyCmd,
    CLASSICAL_K_CAP, K_CAP,
};

enum Output {
    Report(VerificationReport),
    Document(serde_json::Value),
}

type CliResult<T> = Result<T, String>;

pub fn run(cli: &Cli) -> CliResult<ExitCode> {
    configure_threads()?;
    let params = declare_params(&cli.params)?;
    let output = match &cli.command {
        Command::Check(CheckCmd::Yb(a)) => {
            let r = load(&a.r, "--r", 2, a.n, &params)?;
            Output::Report(check_yang_baxter(&r))
        }
        Command::Check(CheckCmd::Hecke(a)) => {
            let r = load(&a.r, "--r", 2, a.n, &params)?;
            Output::Report(hecke_report(&r, &Scalar::q()))
        }
        Command::Check(CheckCmd::Compatible(a)) => {
            let (r, f) = load_pair(&a.r, &a.f, a.n, &params)?;
            Output::Report(compatibility_report(&r, &f))
        }
        Command::Derive(DeriveCmd::Dmat(a)) => {
            let f = load(&a.f, "--f", 2, a.n, &params)?;
            Output::Report(dmat(&f)?)
        }
        Command::Build(BuildCmd::Antisym(a)) => Output::Report(antisym(a, &params)?),
        Command::Twist(a) => Output::Report(twist_cmd(a, &params)?),
        Command::Verify(VerifyCmd::Classical(a)) => Output::Report(classical(a)?),
        Command::Verify(VerifyCmd::Chn(a)) => Output::Report(verify_chn(a, &params)?),
        Command::Verify(VerifyCmd::Bridge(a)) => Output::Report(verify_bridge(a, &params)?),
        Command::Export(a) => {
            let op = load(&a.r, "--r", 2, a.n, &params)
                .or_else(|_| load(&a.r, "--r", 1, a.n, &params))?;
            Output::Document(
                serde_json::to_value(operator_to_json(&op)).map_err(|e| e.to_string())?,
            )
        }
    };
    emit(cli, &output)?;
    Ok(match output {
        Output::Report(r) if !r.pass => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    })
}

/// `CHNLAB_THREADS` sizes the global worker pool; unset or 0 means automatic.
fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("CHNLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("CHNLAB_THREADS must be a non-negative integer, got '{raw}'"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| format!("CHNLAB_THREADS: {e}"))?;
    }
    Ok(())
}

fn emit(cli: &Cli, output: &Output) -> CliResult<()> {
    let text = match (output, cli.format) {
        (Output::Report(r), Format::Text) => r.summary(),
        (Output::Report(r), Format::Json) => pretty(r)?,
        (Output::Document(d), _) => pretty(d)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(v: &T) -> CliResult<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| e.to_string())
}

fn operator_value(op: &TensorOp) -> serde_json::Value {
    serde_json::to_value(operator_to_json(op)).expect("operator JSON is serializable")
}

fn failed(check: &str, start: Instant, why: impl Into<String>) -> VerificationReport {
    VerificationReport::exact(check, false)
        .with_diagnostic(why)
        .timed(start)
}

fn dmat(f: &TensorOp) -> CliResult<VerificationReport> {
    let start = Instant::now();
    match d_matrix_report(f) {
        Ok(r) => Ok(r),
        Err(e @ (Error::DMatrixSingular { .. } | Error::DMatrixInconsistent)) => {
            Ok(failed("d-matrix", start, e.to_string()))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn antisym(a: &AntisymArgs, params: &[String]) -> CliResult<VerificationReport> {
    let start = Instant::now();
    if a.k == 0 || a.k > K_CAP + 1 {
        return Err(format!("--k must lie in 1..={}", K_CAP + 1));
    }
    let r = load(&a.r, "--r", 2, a.n, params)?;
    let h = match check_hecke(&r) {
        Ok(h) => h,
        Err(rep) => {
            return Ok(
                VerificationReport::all(format!("antisymmetrizer k={}", a.k), vec![*rep])
                    .timed(start),
            )
        }
    };
    antisymmetrizer_report(&h, a.k)
        .map(|(_, rep)| rep)
        .map_err(|e| e.to_string())
}

fn twist_cmd(a: &PairArgs, params: &[String]) -> CliResult<VerificationReport> {
    let start = Instant::now();
    let (r, f) = load_pair(&a.r, &a.f, a.n, params)?;
    let twisted = twist(&r, &f).and_then(|rf| Ok((twist(&rf, &f)?, rf)));
    Ok(match twisted {
        Ok((rff, rf)) => VerificationReport::exact("twist", true)
            .with_result(
                serde_json::json!({ "RF": operator_value(&rf), "RFF": operator_value(&rff) }),
            )
            .timed(start),
        Err(Error::Singular) => failed("twist", start, "F is not invertible"),
        Err(e) => return Err(e.to_string()),
    })
}

fn classical(a: &ClassicalArgs) -> CliResult<VerificationReport> {
    if a.n == 0 {
        return Err("--n must be at least 1".into());
    }
    if a.bound < 1 {
        return Err("--bound must be at least 1".into());
    }
    let k_max = a.kmax.unwrap_or(a.n + 1);
    if k_max == 0 || k_max > CLASSICAL_K_CAP {
        return Err(format!("--kmax must lie in 1..={CLASSICAL_K_CAP}"));
    }
    let x = ClassicalMatrix::random(a.n, a.seed, a.bound);
    let mut rep = match a.flavor {
        ClassicalKind::Newton => classical_newton_check(&x, k_max),
        ClassicalKind::Wedge => classical_chn_check(&x, k_max, ClassicalFlavor::Wedge),
        ClassicalKind::Symmetric => classical_chn_check(&x, k_max, ClassicalFlavor::Symmetric),
    };
    rep.seed = Some(a.seed);
    let rows: Vec<Vec<String>> = x
        .rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    Ok(rep.with_result(serde_json::json!({ "matrix": rows })))
}

fn degree_bound(k: Option<usize>, n: usize) -> CliResult<usize> {
    let k = k.unwrap_or((n + 1).min(K_CAP));
    if k == 0 || k > K_CAP {
        return Err(format!("--k must lie in 1..={K_CAP}"));
    }
    Ok(k)
}

fn membership_mode(m: &MembershipArgs, n: usize, k: usize) -> CliResult<MembershipMode> {
    if m.trials == 0 {
        return Err("--trials must be at least 1".into());
    }
    let randomized = match m.mode {
        ModeArg::Exact => false,
        ModeArg::Randomized => true,
        ModeArg::Auto => n > 2 && k >= 3,
    };
    Ok(if randomized {
        MembershipMode::Randomized {
            seed: m.seed,
            trials: m.trials,
        }
    } else {
        MembershipMode::Exact
    })
}

/// Either a ready instance or the report explaining why the data is not a
/// compatible Hecke pair.
enum Prepared {
    Instance(Box<ChnInstance>),
    Rejected(VerificationReport),
}

fn prepare(
    r: &TensorOp,
    f: &TensorOp,
    flavor: Flavor,
    k_max: usize,
    check: &str,
    start: Instant,
) -> CliResult<Prepared> {
    let pair = match check_compatible(r, f) {
        Ok(p) => p,
        Err(CompatibilityFailure::Incompatible(rep)) => {
            return Ok(Prepared::Rejected(
                VerificationReport::all(check, vec![*rep]).timed(start),
            ))
        }
        Err(CompatibilityFailure::FNotInvertible) => {
            return Ok(Prepared::Rejected(failed(
                check,
                start,
                "F is not invertible",
            )))
        }
        Err(CompatibilityFailure::DMatrix(e)) => {
            return Ok(Prepared::Rejected(failed(check, start, e.to_string())))
        }
    };
    let hecke: HeckeData = match check_hecke(r) {
        Ok(h) => h,
        Err(rep) => {
            return Ok(Prepared::Rejected(
                VerificationReport::all(check, vec![*rep]).timed(start),
            ))
        }
    };
    let spec = relations_from(&pair, flavor).map_err(|e| e.to_string())?;
    let inst = ChnInstance::new(spec, hecke, k_max).map_err(|e| e.to_string())?;
    Ok(Prepared::Instance(Box::new(inst)))
}

/// Runs `check_k` for `k = 1..=k_max`, turning library failures into failing parts.
fn per_degree(
    k_max: usize,
    mut check_k: impl FnMut(usize) -> chnlab::Result<VerificationReport>,
) -> Vec<VerificationReport> {
    (1..=k_max)
        .map(|k| {
            let start = Instant::now();
            check_k(k).unwrap_or_else(|e| {
                let mut r = failed(&format!("k={k}"), start, e.to_string());
                r.degree = k;
                r
            })
        })
        .collect()
}

fn verify_chn(a: &ChnArgs, params: &[String]) -> CliResult<VerificationReport> {
    let start = Instant::now();
    let r = load(&a.r, "--r", 2, a.n, params)?;
    let n = r.n();
    let f_arg = match (a.algebra, &a.f) {
        (_, Some(f)) => f.clone(),
        (Algebra::Rtt, None) => format!("permutation:{n}"),
        (Algebra::Rlrl, None) => a.r.clone(),
        (Algebra::General, None) => return Err("--f is required for --algebra general".into()),
    };
    let f = load(&f_arg, "--f", 2, Some(n), params)?;
    let k_max = degree_bound(a.k, n)?;
    let (flavor, family) = match (a.algebra, a.variant) {
        (Algebra::Rtt, VariantArg::Overline) => (Flavor::Rtt, Family::RttOverline),
        (Algebra::Rtt, VariantArg::Underline) => (Flavor::Rtt, Family::RttUnderline),
        (Algebra::Rlrl, VariantArg::Overline) => (Flavor::Rlrl, Family::Rlrl),
        (Algebra::General, VariantArg::Overline) => (Flavor::General, Family::General),
        (_, VariantArg::Underline) => {
            return Err("--variant underline is only available for --algebra rtt".into())
        }
    };
    let check = format!("verify chn {}", family.name());
    let inst = match prepare(&r, &f, flavor, k_max, &check, start)? {
        Prepared::Instance(i) => i,
        Prepared::Rejected(rep) => return Ok(rep),
    };
    let modes: Vec<MembershipMode> = (1..=k_max)
        .map(|k| membership_mode(&a.membership, n, k))
        .collect::<CliResult<_>>()?;
    let parts = per_degree(k_max, |k| inst.verify(k, family, modes[k - 1]));
    Ok(VerificationReport::all(check, parts).timed(start))
}

fn verify_bridge(a: &BridgeArgs, params: &[String]) -> CliResult<VerificationReport> {
    let start = Instant::now();
    let (r, f) = load_pair(&a.r, &a.f, a.n, params)?;
    let n = r.n();
    if f != TensorOp::permutation(n) && f != r {
        return Err("the bridge needs --f equal to the permutation or to --r".into());
    }
    let k_max = degree_bound(a.k, n)?;
    let check = "verify bridge";
    let inst = match prepare(&r, &f, Flavor::General, k_max, check, start)? {
        Prepared::Instance(i) => i,
        Prepared::Rejected(rep) => return Ok(rep),
    };
    let modes: Vec<MembershipMode> = (1..=k_max)
        .map(|k| membership_mode(&a.membership, n, k))
        .collect::<CliResult<_>>()?;
    let parts = per_degree(k_max, |k| inst.consistency_bridge(k, modes[k - 1]));
    Ok(VerificationReport::all(check, parts).timed(start))
}
