//! `kolmo`: build and sample extremal splines, compute sharp inequality
//! constants, decide admissibility of derivative-norm vectors, compute
//! moduli of continuity, and verify the comparison theorems numerically.
//!
//! Exit codes: 0 on success (and "admissible"), 1 for "not admissible",
//! 2 for malformed input or infeasible parameters.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use kolmo_splines::{
    build_euler, build_rodov, dragomir_constant, favard_norm, favard_norm_spline, is_admissible,
    is_admissible_triple, kolmogorov_constant, modulus, verify_comparison_euler,
    verify_comparison_rodov, ClassSpec, ComparisonReport, EulerParams, HomTerm, NormVector,
    OrderBound, OrderVector, RodovParams, SineWave, SplineFn, Tolerances,
};

#[derive(Parser)]
#[command(
    name = "kolmo",
    version,
    about = "Extremal splines, sharp derivative-norm constants, and admissibility checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one period of a plateau spline as CSV with a JSON header.
    Spline(SplineArgs),
    /// Sharp constants: classical three-norm, four-norm, and Favard norms.
    Constant {
        #[command(subcommand)]
        which: ConstantCmd,
    },
    /// Decide whether derivative norms are realizable by one function.
    Admissible(AdmissibleArgs),
    /// Modulus of continuity of D^k on a constrained class.
    Modulus(ModulusArgs),
    /// Numeric verification reports.
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
}

#[derive(Args)]
struct SplineArgs {
    /// Flat width at the extreme plateaus.
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    /// Ramp width (must be positive).
    #[arg(long)]
    b: f64,
    /// Flat width at the zero plateaus.
    #[arg(long, default_value_t = 0.0)]
    c: f64,
    /// Primitive order.
    #[arg(long, default_value_t = 0)]
    s: usize,
    /// Amplitude multiplier.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Number of CSV sample rows over one period.
    #[arg(long, default_value_t = 500)]
    samples: usize,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum ConstantCmd {
    /// `||phi_{r-k}|| / ||phi_r||^{1-k/r}` for 0 < k < r.
    Kolmogorov {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// The four-norm first-derivative constant C_eta, eta in [0, 1].
    Dragomir {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// The Favard norm `||phi_r||` at unit frequency.
    Favard {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Args)]
struct AdmissibleArgs {
    /// Comma-separated derivative orders, e.g. 0,1,2 or 0,1,2,4.
    #[arg(long)]
    orders: String,
    /// Comma-separated norm values matching the orders.
    #[arg(long)]
    values: String,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ModulusArgs {
    /// Comma-separated orders of one of the supported patterns.
    #[arg(long)]
    orders: String,
    /// Constraint region: dragomir:<eta>, box:<order>=<bound>[,...], or
    /// hom:<order>^<theta>[,...]@<level>.
    #[arg(long, conflicts_with = "config")]
    spec: Option<String>,
    /// Path to a JSON file holding the full constraint record.
    #[arg(long)]
    config: Option<String>,
    /// Bound on the uniform norm of the function itself.
    #[arg(long)]
    delta: f64,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Grid verification of a comparison theorem.
    Comparison(ComparisonArgs),
}

#[derive(Args)]
struct ComparisonArgs {
    /// Which comparison spline: euler or rodov.
    #[arg(long)]
    case: String,
    /// Euler frequency (euler case).
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Euler order (euler case).
    #[arg(long, default_value_t = 3)]
    r: usize,
    /// Comparator amplitude.
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Order vector for the rodov case, e.g. 0,1,2,4.
    #[arg(long)]
    orders: Option<String>,
    /// Plateau widths of the rodov comparator.
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long, default_value_t = 0.0)]
    c: f64,
    /// The compared function is the comparator scaled by this factor.
    #[arg(long, default_value_t = 0.5)]
    scale: f64,
    /// Optional time shift applied to the compared function.
    #[arg(long, default_value_t = 0.0)]
    translate: f64,
    /// Compare a sine wave amplitude,frequency instead of a scaled copy.
    #[arg(long)]
    sine: Option<String>,
    /// Number of grid points over one period.
    #[arg(long, default_value_t = 2000)]
    grid: usize,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Serialize)]
struct ConstantOutput {
    value: f64,
    method: &'static str,
    tolerances: ToleranceEcho,
}

#[derive(Serialize)]
struct ToleranceEcho {
    tol_opt: f64,
    tol_check: f64,
}

#[derive(Serialize)]
struct SplineHeader<'a> {
    params: &'a RodovParams,
    period: f64,
    sup_norm: f64,
    norms: Vec<NamedNorm>,
}

#[derive(Serialize)]
struct NamedNorm {
    name: String,
    value: f64,
}

#[derive(Serialize)]
struct AdmissibleOutput<K: Serialize> {
    admissible: bool,
    kind: &'static str,
    decision: K,
}

#[derive(Serialize)]
struct ComparisonOutput<'a> {
    case: &'a str,
    report: ComparisonReport,
}

fn emit(out: &Option<String>, payload: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, payload).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn json_payload<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("bad order '{p}': {e}")))
        .collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad value '{p}': {e}")))
        .collect()
}

/// Grammar: `dragomir:<eta>`, `box:<order>=<bound>[,...]`,
/// `hom:<order>^<theta>[,...]@<level>`.
fn parse_spec(s: &str) -> Result<ClassSpec, String> {
    if let Some(eta) = s.strip_prefix("dragomir:") {
        let eta: f64 = eta.parse().map_err(|e| format!("bad eta: {e}"))?;
        return ClassSpec::dragomir(eta).map_err(|e| e.to_string());
    }
    if let Some(body) = s.strip_prefix("box:") {
        let mut bounds = Vec::new();
        for part in body.split(',') {
            let (order, bound) = part
                .split_once('=')
                .ok_or_else(|| format!("expected <order>=<bound>, got '{part}'"))?;
            bounds.push(OrderBound {
                order: order.trim().parse().map_err(|e| format!("bad order: {e}"))?,
                bound: bound.trim().parse().map_err(|e| format!("bad bound: {e}"))?,
            });
        }
        return Ok(ClassSpec::Box { bounds });
    }
    if let Some(body) = s.strip_prefix("hom:") {
        let (terms_str, level_str) = body
            .split_once('@')
            .ok_or_else(|| format!("expected ...@<level> in '{body}'"))?;
        let mut terms = Vec::new();
        for part in terms_str.split(',') {
            let (order, theta) = part
                .split_once('^')
                .ok_or_else(|| format!("expected <order>^<theta>, got '{part}'"))?;
            terms.push(HomTerm {
                order: order.trim().parse().map_err(|e| format!("bad order: {e}"))?,
                theta: theta.trim().parse().map_err(|e| format!("bad theta: {e}"))?,
            });
        }
        let level: f64 = level_str
            .trim()
            .parse()
            .map_err(|e| format!("bad level: {e}"))?;
        return Ok(ClassSpec::Homogeneous { terms, level });
    }
    Err(format!(
        "unknown spec '{s}'; use dragomir:<eta>, box:<order>=<bound>[,...], \
         or hom:<order>^<theta>[,...]@<level>"
    ))
}

fn run_spline(args: &SplineArgs) -> Result<(), String> {
    if args.samples == 0 {
        return Err("need at least one sample".into());
    }
    let params = RodovParams::new(args.a, args.b, args.c, args.s, args.alpha)
        .map_err(|e| e.to_string())?;
    let spline = build_rodov(&params).map_err(|e| e.to_string())?;

    let mut norms = Vec::new();
    for j in 1..=params.s.min(3) {
        if j == 3 && params.c != 0.0 {
            continue;
        }
        let value = match j {
            1 => params.b,
            2 => params.a * params.b + 0.5 * params.b * params.b,
            _ => {
                0.5 * params.a * params.a * params.b
                    + params.a * params.b * params.b
                    + params.b.powi(3) / 3.0
            }
        };
        norms.push(NamedNorm {
            name: format!("psi{j}"),
            value,
        });
    }
    let header = SplineHeader {
        params: &params,
        period: spline.period(),
        sup_norm: spline.sup_norm(),
        norms,
    };

    let mut payload = json_payload(&header);
    payload.push_str("t,value\n");
    let period = spline.period();
    for i in 0..args.samples {
        let t = period * i as f64 / args.samples as f64;
        let _ = writeln!(payload, "{:.16e},{:.16e}", t, spline.eval(t));
    }
    emit(&args.out, &payload)
}

fn run_constant(which: &ConstantCmd, tol: &Tolerances) -> Result<(), String> {
    let echo = ToleranceEcho {
        tol_opt: tol.tol_opt,
        tol_check: tol.tol_check,
    };
    let (value, method, out) = match which {
        ConstantCmd::Kolmogorov { k, r, out } => (
            kolmogorov_constant(*k, *r).map_err(|e| e.to_string())?,
            "favard-series-ratio",
            out,
        ),
        ConstantCmd::Dragomir { eta, out } => {
            let method = if *eta == 0.0 || *eta == 1.0 {
                "classical-reduction"
            } else {
                "constrained-golden-section"
            };
            (
                dragomir_constant(*eta, tol).map_err(|e| e.to_string())?,
                method,
                out,
            )
        }
        ConstantCmd::Favard { r, out } => {
            let series = favard_norm(*r);
            let spline = favard_norm_spline(*r);
            if (series - spline).abs() > 1e-9 * series {
                return Err(format!(
                    "internal cross-check failed: series {series} vs spline {spline}"
                ));
            }
            (series, "favard-series", out)
        }
    };
    emit(
        out,
        &json_payload(&ConstantOutput {
            value,
            method,
            tolerances: echo,
        }),
    )
}

fn run_admissible(args: &AdmissibleArgs) -> Result<bool, String> {
    let orders = parse_usize_list(&args.orders)?;
    let values = parse_f64_list(&args.values)?;
    if orders.len() != values.len() {
        return Err(format!(
            "{} orders but {} values",
            orders.len(),
            values.len()
        ));
    }
    let kk = OrderVector::new(&orders).map_err(|e| e.to_string())?;
    if orders.len() == 3 {
        let decision = is_admissible_triple(kk.k(), kk.r(), values[0], values[1], values[2])
            .map_err(|e| e.to_string())?;
        let admissible = decision.admissible;
        emit(
            &args.out,
            &json_payload(&AdmissibleOutput {
                admissible,
                kind: "triple",
                decision,
            }),
        )?;
        Ok(admissible)
    } else {
        let norms = NormVector::new(orders, values).map_err(|e| e.to_string())?;
        let decision = is_admissible(&kk, &norms).map_err(|e| e.to_string())?;
        let admissible = decision.admissible;
        emit(
            &args.out,
            &json_payload(&AdmissibleOutput {
                admissible,
                kind: "vector",
                decision,
            }),
        )?;
        Ok(admissible)
    }
}

fn run_modulus(args: &ModulusArgs, tol: &Tolerances) -> Result<(), String> {
    let orders = parse_usize_list(&args.orders)?;
    let kk = OrderVector::new(&orders).map_err(|e| e.to_string())?;
    let spec = match (&args.spec, &args.config) {
        (Some(s), None) => parse_spec(s)?,
        (None, Some(path)) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            serde_json::from_str(&text).map_err(|e| format!("bad spec record: {e}"))?
        }
        _ => return Err("provide exactly one of --spec or --config".into()),
    };
    let result = modulus(&kk, &spec, args.delta, tol).map_err(|e| e.to_string())?;
    emit(&args.out, &json_payload(&result))
}

fn run_comparison(args: &ComparisonArgs, tol: &Tolerances) -> Result<(), String> {
    let sine = match &args.sine {
        Some(s) => {
            let parts = parse_f64_list(s)?;
            if parts.len() != 2 {
                return Err("expected --sine amplitude,frequency".into());
            }
            Some(SineWave {
                amplitude: parts[0],
                frequency: parts[1],
            })
        }
        None => None,
    };
    let report = match args.case.as_str() {
        "euler" => {
            let euler = EulerParams::new(args.lambda, args.r, args.amplitude)
                .map_err(|e| e.to_string())?;
            match sine {
                Some(wave) => verify_comparison_euler(&wave, &euler, args.grid, tol),
                None => {
                    let psi = build_euler(&euler).map_err(|e| e.to_string())?;
                    let f = SplineFn::new(psi.scaled(args.scale).translate(args.translate));
                    verify_comparison_euler(&f, &euler, args.grid, tol)
                }
            }
            .map_err(|e| e.to_string())?
        }
        "rodov" => {
            let orders = parse_usize_list(
                args.orders
                    .as_deref()
                    .ok_or("the rodov case needs --orders")?,
            )?;
            let kk = OrderVector::new(&orders).map_err(|e| e.to_string())?;
            let psi_params = RodovParams::new(args.a, args.b, args.c, kk.r(), args.amplitude)
                .map_err(|e| e.to_string())?;
            match sine {
                Some(wave) => verify_comparison_rodov(&wave, &kk, &psi_params, args.grid, tol),
                None => {
                    let psi = build_rodov(&psi_params).map_err(|e| e.to_string())?;
                    let f = SplineFn::new(psi.scaled(args.scale).translate(args.translate));
                    verify_comparison_rodov(&f, &kk, &psi_params, args.grid, tol)
                }
            }
            .map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown case '{other}'; use euler or rodov")),
    };
    emit(
        &args.out,
        &json_payload(&ComparisonOutput {
            case: &args.case,
            report,
        }),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = Tolerances::from_env();
    let outcome: Result<bool, String> = match &cli.command {
        Command::Spline(args) => run_spline(args).map(|_| true),
        Command::Constant { which } => run_constant(which, &tol).map(|_| true),
        Command::Admissible(args) => run_admissible(args),
        Command::Modulus(args) => run_modulus(args, &tol).map(|_| true),
        Command::Verify {
            which: VerifyCmd::Comparison(args),
        } => run_comparison(args, &tol).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
