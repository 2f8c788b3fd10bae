//! bkdd: reports and verification sweeps for rank one Breuil-Kisin
//! modules with tame descent data. Results go to stdout, logs to
//! stderr; exit codes are 0 (success), 1 (verification failure),
//! 2 (invalid input).

mod model;
mod verify;

use bkdd::*;
use clap::{Args, Parser, Subcommand, ValueEnum};
use model::*;
use std::process::ExitCode;

type CliResult<T> = std::result::Result<T, String>;

#[derive(Parser)]
#[command(
    name = "bkdd",
    version,
    about = "rank one Breuil-Kisin modules with tame descent data: shapes, Ext groups, weights, Dieudonne patterns"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Ps,
    Cuspidal,
    Scalar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct InstanceArgs {
    /// The residue characteristic (an odd prime)
    #[arg(long)]
    p: u64,
    /// Inertial degree of K
    #[arg(long)]
    f: u32,
    /// Ramification degree of K
    #[arg(long)]
    e: u64,
    /// principal series, cuspidal, or scalar
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Exponent of eta at embedding 0
    #[arg(long)]
    k0: u64,
    /// Exponent of eta' at embedding 0 (derived for cuspidal/scalar)
    #[arg(long)]
    k0p: Option<u64>,
    /// Coefficient field degree over F_p (default f')
    #[arg(long)]
    m: Option<u32>,
    /// Unit constant E(0)/p for Dieudonne patterns (packed, default 1)
    #[arg(long, default_value_t = 1)]
    cbar: u64,
    /// Extra truncation levels on top of the quasi-isomorphism bound
    #[arg(long, default_value_t = 0)]
    trunc_extra: u64,
    /// Seed for randomized sweeps
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    f: Option<u32>,
    #[arg(long)]
    e: Option<u64>,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long)]
    k0: Option<u64>,
    #[arg(long)]
    k0p: Option<u64>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value_t = 0)]
    trunc_extra: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Self-test: flip one oracle matrix entry and expect a failure record
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Command {
    /// Full per-instance report: digits, shapes, dims, weights, patterns
    Report(InstanceArgs),
    /// Shapes, P_tau membership, refined shape data
    Shapes(InstanceArgs),
    /// Hom/Ext/height-one dimensions, formula and oracle
    Ext(InstanceArgs),
    /// ker-Ext dimensions, oracle and maximal-shape formula
    Kext(InstanceArgs),
    /// Serre weight parameters on P_tau
    Weights(InstanceArgs),
    /// The character of N(J), closed form and rank-one route
    Chars(InstanceArgs),
    /// Dieudonne F/V constants and the divisor pattern
    Dieudonne(InstanceArgs),
    /// Base-change invariants of the irreducible locus (cuspidal)
    Irred(InstanceArgs),
    /// Run the verification checks; exit 0 iff everything passes
    Verify(VerifyArgs),
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn build_instance(args: &InstanceArgs) -> CliResult<(TameType, Elt)> {
    let (tau, _) = build_type(args.p, args.f, args.e, args.kind, args.k0, args.k0p, args.m)?;
    let field = tau.params().field();
    if args.cbar == 0 || args.cbar >= field.size() {
        return Err(format!(
            "cbar must be a nonzero packed field element below {}",
            field.size()
        ));
    }
    let cbar = field.elt(args.cbar);
    Ok((tau, cbar))
}

fn build_type(
    p: u64,
    f: u32,
    e: u64,
    kind: KindArg,
    k0: u64,
    k0p: Option<u64>,
    m: Option<u32>,
) -> CliResult<(TameType, AmbientParams)> {
    if p == 2 {
        return Err("p must be odd".into());
    }
    let kind = match kind {
        // equal exponents: the type is scalar whatever the flag said
        KindArg::Ps if k0p == Some(k0) => TypeKind::ScalarPs,
        KindArg::Ps => TypeKind::PrincipalSeries,
        KindArg::Cuspidal => TypeKind::Cuspidal,
        KindArg::Scalar => TypeKind::ScalarPs,
    };
    let params = AmbientParams::new(p, f, e, kind, m).map_err(|e| e.to_string())?;
    let k0p = match (kind, k0p) {
        (_, Some(v)) => v,
        (TypeKind::Cuspidal, None) => {
            least_residue(mod_pow(p, f, params.e_kk) as i128 * k0 as i128, params.e_kk)
        }
        (TypeKind::ScalarPs, None) => k0,
        (TypeKind::PrincipalSeries, None) => {
            return Err("--k0p is required for principal series types".into())
        }
    };
    let tau = TameType::new(&params, k0, k0p).map_err(|e| e.to_string())?;
    Ok((tau, params))
}

fn emit_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report model serializes")
    );
}

fn emit_table(rows: &[ShapeReport], format: FormatArg, columns: &[&str]) {
    match format {
        FormatArg::Json => {
            let projected: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .iter()
                .map(|row| {
                    let full = serde_json::to_value(row).expect("row serializes");
                    let obj = full.as_object().expect("row is an object");
                    columns
                        .iter()
                        .filter_map(|&c| obj.get(c).map(|v| (c.to_string(), v.clone())))
                        .collect()
                })
                .collect();
            emit_json(&projected);
        }
        FormatArg::Csv => {
            println!("{}", columns.join(","));
            for row in rows {
                let full = serde_json::to_value(row).expect("row serializes");
                let obj = full.as_object().expect("row is an object");
                let cells: Vec<String> = columns
                    .iter()
                    .map(|&c| match obj.get(c) {
                        None | Some(serde_json::Value::Null) => String::new(),
                        Some(serde_json::Value::Array(xs)) => {
                            xs.iter().map(render_scalar).collect::<Vec<_>>().join("|")
                        }
                        Some(v) => render_scalar(v),
                    })
                    .collect();
                println!("{}", cells.join(","));
            }
        }
    }
}

fn render_scalar(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Report(args) => {
            let (tau, cbar) = build_instance(&args)?;
            let report = full_report(&tau, cbar, args.trunc_extra);
            match args.format {
                FormatArg::Json => emit_json(&report),
                FormatArg::Csv => emit_table(
                    &report.shapes,
                    FormatArg::Csv,
                    &[
                        "shape",
                        "in_p_tau",
                        "maximal_r",
                        "hom_dim_formula",
                        "hom_dim_oracle",
                        "ext1_dim_formula",
                        "ext1_dim_oracle",
                        "height1_dim_formula",
                        "height1_dim_oracle",
                        "hom_to_u_quotient_dim",
                        "kext_dim_oracle",
                        "kext_dim_maximal_formula",
                        "char_w_closed_form",
                        "char_w_rank_one",
                    ],
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Shapes(args) => table(
            &args,
            &[
                "shape",
                "in_p_tau",
                "transitions",
                "gamma_star",
                "maximal_r",
                "maximal_y",
                "refined_count",
                "pair_c",
                "pair_d",
            ],
        ),
        Command::Ext(args) => table(
            &args,
            &[
                "shape",
                "maximal_r",
                "hom_dim_formula",
                "hom_dim_oracle",
                "ext1_dim_formula",
                "ext1_dim_oracle",
                "height1_dim_formula",
                "height1_dim_oracle",
            ],
        ),
        Command::Kext(args) => table(
            &args,
            &[
                "shape",
                "hom_to_u_quotient_dim",
                "kext_dim_oracle",
                "kext_dim_maximal_formula",
            ],
        ),
        Command::Weights(args) => {
            let (tau, cbar) = build_instance(&args)?;
            let rows: Vec<ShapeReport> = p_tau(&tau)
                .iter()
                .map(|j| shape_report(&tau, j, cbar, args.trunc_extra))
                .collect();
            emit_table(
                &rows,
                args.format,
                &[
                    "shape",
                    "weight_s",
                    "weight_t",
                    "weight_twist_w",
                    "central_char_check",
                ],
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Chars(args) => table(
            &args,
            &[
                "shape",
                "char_w_closed_form",
                "char_w_rank_one",
                "char_unram",
            ],
        ),
        Command::Dieudonne(args) => {
            let (tau, _) = build_instance(&args)?;
            if tau.is_scalar() {
                return Err("dieudonne patterns are defined for non-scalar types".into());
            }
            table(
                &args,
                &[
                    "shape",
                    "divisor_x_zero",
                    "divisor_y_zero",
                    "dieudonne_f_consts",
                    "dieudonne_v_consts",
                ],
            )
        }
        Command::Irred(args) => {
            let (tau, _) = build_instance(&args)?;
            if !tau.params().kind.is_cuspidal() {
                return Err("irred requires a cuspidal type".into());
            }
            table(&args, &["shape", "base_change_x", "irred_dim_bound"])
        }
        Command::Verify(args) => {
            let trunc_extra = args.trunc_extra;
            let seed = args.seed.unwrap_or(0);
            let types = match (args.p, args.f, args.e, args.kind, args.k0) {
                (Some(p), Some(f), Some(e), Some(kind), Some(k0)) => {
                    vec![build_type(p, f, e, kind, k0, args.k0p, args.m)?.0]
                }
                (None, None, None, None, None) => verify::default_sweep_types(),
                _ => {
                    return Err(
                        "verify takes either a full instance (--p --f --e --kind --k0) or no instance flags"
                            .into(),
                    )
                }
            };
            let mut run = verify::verify_types(&types, trunc_extra, seed);
            if args.inject_fault {
                verify::inject_fault(&mut run);
            }
            eprintln!(
                "verify: {} checks over {} types, {} failures",
                run.checks,
                types.len(),
                run.failures
            );
            match args.format {
                FormatArg::Json => emit_json(&run.records),
                FormatArg::Csv => {
                    println!("check,instance,shape,ok,detail");
                    for r in &run.records {
                        println!(
                            "{},{},{},{},{}",
                            r.check,
                            r.instance,
                            r.shape.replace(',', ";"),
                            r.ok,
                            r.detail.replace(',', ";")
                        );
                    }
                }
            }
            Ok(if run.failures == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn table(args: &InstanceArgs, columns: &[&str]) -> CliResult<ExitCode> {
    let (tau, cbar) = build_instance(args)?;
    let rows: Vec<ShapeReport> = enumerate_shapes(&tau)
        .iter()
        .map(|j| shape_report(&tau, j, cbar, args.trunc_extra))
        .collect();
    emit_table(&rows, args.format, columns);
    Ok(ExitCode::SUCCESS)
}
