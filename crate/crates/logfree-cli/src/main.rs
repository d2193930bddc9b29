//! Single-binary front end: fixture generation, experiment execution, and
//! CSV/JSON report emission for every module.
//!
//! Reports are deterministic for a fixed seed and embed the configuration,
//! the seed, and the artifact version.  Exit codes: 0 success, 1 invariant
//! violation, 2 usage error.

use clap::{Args, Parser, Subcommand};
use logfree::analytic::{sample_power_sum_instance, sos_turan, SelbergWeights};
use logfree::chebotarev::{
    error_report, quasi_grh_bound, AbelianFieldSpec, ClassSpec,
};
use logfree::coefficients::{
    rs_coeff_oracle, rs_coeff_prime_power, SatakeData,
};
use logfree::conductor::{pair_bound_witness, pair_bound, sample_character_pair};
use logfree::family::family_bound_report;
use logfree::local::{block_series, local_rs_series, sample_same_type_pair};
use logfree::symmetric::{count_partitions, enumerate_partitions, schur, Partition};
use logfree::verify;
use logfree::zeros::{count_zeros, eta_of_log_x, eta_of_log_x_grid, ZeroFreeRegionModel, ZeroTable};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "logfree", version, about = "Rankin-Selberg coefficient and zero-density toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate partitions of a total into boundedly many parts.
    Partitions(PartitionsArgs),
    /// Evaluate a Schur polynomial on an explicit complex multiset.
    Schur(SchurArgs),
    /// Compare the Schur-expansion Rankin-Selberg coefficient with the
    /// Euler-product oracle on a seeded draw.
    RsCoeffs(RsCoeffsArgs),
    /// Sample a same-type induction pair and check the block assembly of
    /// the ramified local factor.
    LocalFactor(LocalFactorArgs),
    /// Conductor bounds: a seeded character-pair instance and the
    /// tightness witness.
    Conductor(ConductorArgs),
    /// Selberg sieve weights for g(p) = 1/p and their main-term identity.
    Sieve(SieveArgs),
    /// Search a power-sum witness on a seeded instance.
    PowerSum(PowerSumArgs),
    /// Zero-table operations.
    Zeros(ZerosArgs),
    /// Closed-form eta(x) against the grid-search oracle.
    Eta(EtaArgs),
    /// Exact Chebotarev prime counting with GRH-shape error reports.
    Chebotarev(ChebotarevArgs),
    /// Family-size bound report.
    FamilyBound(FamilyBoundArgs),
    /// Run the full cross-module verification suite.
    VerifyAll(VerifyAllArgs),
}

#[derive(Args)]
struct PartitionsArgs {
    /// Maximum number of parts.
    #[arg(long)]
    max_len: usize,
    /// The partitioned total.
    #[arg(long)]
    total: i64,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct SchurArgs {
    /// Partition, comma separated, e.g. `2,1`.
    #[arg(long)]
    mu: String,
    /// Multiset entries `re:im`, comma separated, e.g. `1:0,0.5:-0.5`.
    #[arg(long)]
    x: String,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct RsCoeffsArgs {
    /// Dimension of both proxies.
    #[arg(long)]
    n: usize,
    /// Unramified prime.
    #[arg(long)]
    p: u64,
    /// Prime-power exponent.
    #[arg(long)]
    r: u32,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct LocalFactorArgs {
    #[arg(long)]
    seed: u64,
    /// Maximal total dimension of the sampled pair.
    #[arg(long, default_value_t = 4)]
    n_max: u32,
    /// Series depth.
    #[arg(long, default_value_t = logfree::local::DEFAULT_SERIES_DEPTH)]
    depth: usize,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct ConductorArgs {
    #[arg(long)]
    seed: u64,
    /// Witness dimension.
    #[arg(long, default_value_t = 3)]
    n: u32,
    /// Witness Artin exponent.
    #[arg(long, default_value_t = 2)]
    a: u32,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct SieveArgs {
    /// Sifting level z.
    #[arg(long, default_value_t = 10)]
    z: u64,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct PowerSumArgs {
    #[arg(long)]
    seed: u64,
    /// Number of points.
    #[arg(long, default_value_t = 6)]
    nu: usize,
    /// Search bound K (witness in [K, 2K]).
    #[arg(long, default_value_t = 10)]
    k: usize,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct ZerosArgs {
    #[command(subcommand)]
    action: ZerosAction,
}

#[derive(Subcommand)]
enum ZerosAction {
    /// Count zeros with beta >= sigma and |gamma| <= T.
    Count {
        /// Zeros file (format A or B); the bundled zeta table when absent.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        sigma: f64,
        #[arg(long = "T")]
        t: f64,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EtaArgs {
    /// log of the discriminant.
    #[arg(long)]
    log_d: f64,
    /// Field degree.
    #[arg(long)]
    n_l: u32,
    /// Zero-free-region constant.
    #[arg(long, default_value_t = 0.1)]
    c: f64,
    /// log x (the closed form depends on x only through its logarithm).
    #[arg(long)]
    log_x: f64,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct ChebotarevArgs {
    /// Cyclotomic conductor (use either --q or --d).
    #[arg(long, conflicts_with = "d")]
    q: Option<u64>,
    /// Quadratic fundamental discriminant.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<i64>,
    /// Frobenius class: a residue for cyclotomic fields, `split` or
    /// `inert` for quadratic ones.
    #[arg(long)]
    class: String,
    #[arg(long)]
    x: f64,
    /// CSV report path (columns x, pi_C, expected, E_C, grh_bound,
    /// quasi_grh_bound).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Number of geometrically spaced sweep rows up to x (1 = just x).
    #[arg(long, default_value_t = 1)]
    sweep: usize,
    /// Quasi-GRH parameters delta and T.
    #[arg(long, default_value_t = 0.25)]
    delta: f64,
    #[arg(long, default_value_t = 1e6)]
    t_quasi: f64,
}

#[derive(Args)]
struct FamilyBoundArgs {
    /// Discriminant of the base field.
    #[arg(long = "D")]
    d: f64,
    #[arg(long)]
    n: u32,
    /// Analytic conductor ceiling.
    #[arg(long = "Q")]
    q: f64,
    /// Norm of the fixed finite conductor.
    #[arg(long, default_value_t = 1.0)]
    norm_q: f64,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyAllArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    emit: Option<PathBuf>,
}

fn header(config: Value, seed: Option<u64>) -> Value {
    json!({
        "artifact": "logfree",
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "config": config,
    })
}

fn emit(report: &Value, path: &Option<PathBuf>) -> Result<(), String> {
    use std::io::Write;
    let text = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}") {
        // A closed pipe on the reading side is not our error.
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(e.to_string());
        }
    }
    if let Some(path) = path {
        std::fs::write(path, text + "\n").map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(',')
        .map(|part| {
            let (re, im) = part.split_once(':').unwrap_or((part, "0"));
            Ok(Complex64::new(
                re.trim().parse().map_err(|_| format!("bad number `{re}`"))?,
                im.trim().parse().map_err(|_| format!("bad number `{im}`"))?,
            ))
        })
        .collect()
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Partitions(args) => {
            let parts = enumerate_partitions(args.max_len, args.total);
            let listed: Vec<Vec<u32>> =
                parts.iter().map(|p| p.parts().to_vec()).collect();
            let report = json!({
                "meta": header(json!({"max_len": args.max_len, "total": args.total}), None),
                "count": parts.len(),
                "dp_count": count_partitions(args.max_len, args.total),
                "partitions": listed,
            });
            emit(&report, &args.emit)?;
            Ok(parts.len() as u64 == count_partitions(args.max_len, args.total))
        }
        Command::Schur(args) => {
            let mu_parts: Vec<u32> = args
                .mu
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| format!("bad part `{s}`")))
                .collect::<Result<_, _>>()?;
            let mu = Partition::new(mu_parts).map_err(|e| e.to_string())?;
            let values = parse_complex_list(&args.x)?;
            let v = schur(&mu, &values).map_err(|e| e.to_string())?;
            let report = json!({
                "meta": header(json!({"mu": args.mu, "x": args.x}), None),
                "value": [v.re, v.im],
            });
            emit(&report, &args.emit)?;
            Ok(true)
        }
        Command::RsCoeffs(args) => {
            let pi = SatakeData::sampled_unitary_with_central(args.n, 1, args.seed, args.seed);
            let pi0 =
                SatakeData::sampled_unitary_with_central(args.n, 1, args.seed ^ 0x9e37, args.seed);
            let cauchy =
                rs_coeff_prime_power(&pi, &pi0, args.p, args.r).map_err(|e| e.to_string())?;
            let oracle = rs_coeff_oracle(&pi, &pi0, args.p, args.r).map_err(|e| e.to_string())?;
            let diff = (cauchy - oracle).norm();
            let ok = diff <= 1e-9 * (1.0 + oracle.norm());
            let report = json!({
                "meta": header(
                    json!({"n": args.n, "p": args.p, "r": args.r}),
                    Some(args.seed),
                ),
                "cauchy": [cauchy.re, cauchy.im],
                "oracle": [oracle.re, oracle.im],
                "difference": diff,
                "within_tolerance": ok,
            });
            emit(&report, &args.emit)?;
            Ok(ok)
        }
        Command::LocalFactor(args) => {
            let (sigma, tau) = sample_same_type_pair(args.seed, &[2, 3, 5], args.n_max, false);
            let series = local_rs_series(&sigma, &tau, args.depth).map_err(|e| e.to_string())?;
            let n = sigma.total_dim();
            let mut blocks = Vec::new();
            for a in 0..sigma.classes.len() {
                for nu in 1..=n {
                    blocks.push(
                        block_series(&sigma, &tau, a, nu, args.depth)
                            .map_err(|e| e.to_string())?,
                    );
                }
            }
            let mut ok = true;
            let mut composed = Vec::new();
            for r in 0..=args.depth {
                let c = logfree::symmetric::product_series_coefficient(&blocks, r)
                    .map_err(|e| e.to_string())?;
                if (c - series[r]).norm() > 1e-9 * (1.0 + series[r].norm()) {
                    ok = false;
                }
                composed.push([c.re, c.im]);
            }
            let report = json!({
                "meta": header(
                    json!({"n_max": args.n_max, "depth": args.depth}),
                    Some(args.seed),
                ),
                "datum": serde_json::to_value(&sigma).map_err(|e| e.to_string())?,
                "series": series.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
                "block_composition": composed,
                "assembly_matches": ok,
            });
            emit(&report, &args.emit)?;
            Ok(ok)
        }
        Command::Conductor(args) => {
            let (sigma, tau) = sample_character_pair(args.seed, &[2, 3, 5, 7], 5, 6, true);
            let exact = logfree::conductor::tensor_conductor_exact(&sigma, &tau)
                .map_err(|e| e.to_string())?;
            let bound = pair_bound(&sigma.as_wd_rep(), &tau.as_wd_rep(), true);
            let (_, _, witness_exact) =
                pair_bound_witness(3, args.n, args.a).map_err(|e| e.to_string())?;
            let ok = exact as i64 <= *bound.numer() / *bound.denom()
                && witness_exact == u64::from((2 * args.n - 2) * args.a);
            let report = json!({
                "meta": header(json!({"n": args.n, "a": args.a}), Some(args.seed)),
                "instance": {
                    "prime": sigma.prime(),
                    "dims": [sigma.dim(), tau.dim()],
                    "artins": [sigma.artin(), tau.artin()],
                    "tensor_exact": exact,
                    "pair_bound": bound.to_string(),
                },
                "witness": {
                    "n": args.n,
                    "a": args.a,
                    "exact": witness_exact,
                    "expected": (2 * args.n - 2) * args.a,
                },
                "within_bounds": ok,
            });
            emit(&report, &args.emit)?;
            Ok(ok)
        }
        Command::Sieve(args) => {
            let w = SelbergWeights::new(|p| 1.0 / p as f64, args.z, 1, 1_000_000)
                .map_err(|e| e.to_string())?;
            let lhs = w.main_term_double_sum();
            let rhs = w.main_term_closed_form();
            let ok = w.conditions_hold() && (lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0);
            let rho: Vec<(u64, f64)> = w.support().collect();
            let report = json!({
                "meta": header(json!({"z": args.z, "density": "1/p"}), None),
                "rho": rho,
                "main_term_double_sum": lhs,
                "main_term_closed_form": rhs,
                "conditions_hold": w.conditions_hold(),
                "identity_holds": ok,
            });
            emit(&report, &args.emit)?;
            Ok(ok)
        }
        Command::PowerSum(args) => {
            let instance = sample_power_sum_instance(args.seed, args.nu, args.k)
                .map_err(|e| e.to_string())?;
            let witness = sos_turan(&instance);
            let report = json!({
                "meta": header(json!({"nu": args.nu, "K": args.k}), Some(args.seed)),
                "witness_k": witness.k,
                "value": witness.value,
                "threshold": witness.threshold,
                "certified": witness.certified,
            });
            emit(&report, &args.emit)?;
            Ok(witness.certified)
        }
        Command::Zeros(args) => match args.action {
            ZerosAction::Count { file, sigma, t, emit: emit_path } => {
                let table = match &file {
                    Some(path) => ZeroTable::load(path).map_err(|e| e.to_string())?,
                    None => ZeroTable::builtin_zeta(),
                };
                let count = count_zeros(&table, sigma, t);
                let report = json!({
                    "meta": header(
                        json!({"file": file.as_ref().map(|p| p.display().to_string()),
                               "sigma": sigma, "T": t}),
                        None,
                    ),
                    "provenance": table.provenance(),
                    "table_size": table.len(),
                    "count": count,
                });
                emit(&report, &emit_path)?;
                Ok(true)
            }
        },
        Command::Eta(args) => {
            let model = ZeroFreeRegionModel::classical(args.log_d, args.n_l, args.c);
            let closed = eta_of_log_x(&model, args.log_x);
            let grid = eta_of_log_x_grid(&model, args.log_x, 20_000);
            let ok = (closed - grid).abs() <= 1e-6 * grid.abs().max(1.0);
            let report = json!({
                "meta": header(
                    json!({"log_d": args.log_d, "n_l": args.n_l, "c": args.c,
                           "log_x": args.log_x}),
                    None,
                ),
                "eta_closed_form": closed,
                "eta_grid_search": grid,
                "agree": ok,
            });
            emit(&report, &args.emit)?;
            Ok(ok)
        }
        Command::Chebotarev(args) => {
            let (field, class) = match (args.q, args.d) {
                (Some(q), None) => {
                    let a: u64 =
                        args.class.parse().map_err(|_| "cyclotomic class is a residue")?;
                    (
                        AbelianFieldSpec::cyclotomic(q).map_err(|e| e.to_string())?,
                        ClassSpec::Residue(a),
                    )
                }
                (None, Some(d)) => {
                    let class = match args.class.as_str() {
                        "split" => ClassSpec::Split,
                        "inert" => ClassSpec::Inert,
                        other => return Err(format!("quadratic class is split|inert, got {other}")),
                    };
                    (AbelianFieldSpec::quadratic(d).map_err(|e| e.to_string())?, class)
                }
                _ => return Err("exactly one of --q or --d is required".into()),
            };
            let capacity = logfree::sieve::DEFAULT_CAPACITY;
            // Geometric sweep from 100 (or x, when only one row) up to x.
            let steps = args.sweep.max(1);
            let x_lo = if steps == 1 { args.x } else { 100f64.min(args.x) };
            let mut rows = Vec::with_capacity(steps);
            for i in 0..steps {
                let x = if steps == 1 {
                    args.x
                } else {
                    x_lo * (args.x / x_lo).powf(i as f64 / (steps - 1) as f64)
                };
                let rep = error_report(&field, &class, x, capacity).map_err(|e| e.to_string())?;
                let quasi = quasi_grh_bound(
                    args.delta,
                    args.t_quasi,
                    field.log_disc(),
                    field.degree() as u32,
                    field.group_order(),
                    x,
                    0.1,
                )
                .map_err(|e| e.to_string())?;
                rows.push((rep, quasi));
            }
            if let Some(path) = &args.report {
                let mut csv = String::from("x,pi_C,expected,E_C,grh_bound,quasi_grh_bound\n");
                for (rep, quasi) in &rows {
                    csv.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        rep.x, rep.pi_c, rep.expected, rep.error, rep.grh_bound, quasi.absolute
                    ));
                }
                std::fs::write(path, csv).map_err(|e| e.to_string())?;
            }
            let (rep, quasi) = rows.last().expect("at least one row");
            let report = json!({
                "meta": header(
                    json!({"q": args.q, "d": args.d, "class": args.class, "x": args.x,
                           "delta": args.delta, "t_quasi": args.t_quasi,
                           "sweep": steps}),
                    None,
                ),
                "report": serde_json::to_value(rep).map_err(|e| e.to_string())?,
                "quasi_grh": serde_json::to_value(quasi).map_err(|e| e.to_string())?,
            });
            emit(&report, &None)?;
            Ok(true)
        }
        Command::FamilyBound(args) => {
            let report = family_bound_report(args.d, args.n, args.q, args.norm_q, args.eps);
            let payload = json!({
                "meta": header(
                    json!({"D": args.d, "n": args.n, "Q": args.q,
                           "norm_q": args.norm_q, "eps": args.eps}),
                    None,
                ),
                "report": serde_json::to_value(&report).map_err(|e| e.to_string())?,
            });
            emit(&payload, &args.emit)?;
            Ok(true)
        }
        Command::VerifyAll(args) => {
            let report = verify::run_all(args.seed);
            for check in &report.checks {
                let status = if check.passed { "pass" } else { "FAIL" };
                eprintln!("[{status}] {}: {}", check.name, check.detail);
            }
            let payload = json!({
                "meta": header(json!({}), Some(args.seed)),
                "report": serde_json::to_value(&report).map_err(|e| e.to_string())?,
            });
            emit(&payload, &args.emit)?;
            Ok(report.all_passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
