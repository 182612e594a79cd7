//! Command-line frontend: exact deformed-Cartan tables, dimension and
//! divisor polynomials, and the full verification sweep.
//!
//! All numeric output is exact integers; table output is deterministically
//! ordered. Exit status: 0 on success, 1 on verification failure, 2 on bad
//! arguments.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cartanqt::braid;
use cartanqt::cartan::{CartanData, FiniteType};
use cartanqt::deform::{self, CTildeTable, DeformedCartan};
use cartanqt::export::{BiPolyJson, CartanJson, QPolyJson, QTableJson, TableJson};
use cartanqt::invariants;
use cartanqt::poly::{BiLaurent, Exp};
use cartanqt::rmatrix::{self, DivisorSource, KRLabel};
use cartanqt::verify::{self, VerifyOptions, VerifyScope};
use cartanqt::weyl;

#[derive(Parser)]
#[command(name = "cartanqt", version, about = "Exact (q,t)-deformed Cartan matrix tables and identity checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct TypeArgs {
    /// Dynkin type: a family letter (with --rank) or a fused name like C3, G2.
    #[arg(long = "type", value_name = "TYPE")]
    type_name: String,
    /// Rank, when the type is given as a bare family letter.
    #[arg(long)]
    rank: Option<usize>,
}

impl TypeArgs {
    fn resolve(&self) -> Result<FiniteType, String> {
        let fused: Result<FiniteType, _> = self.type_name.parse();
        match (fused, self.rank) {
            (Ok(t), None) => Ok(t),
            (Ok(t), Some(r)) if t.rank() == r => Ok(t),
            (Ok(t), Some(r)) => Err(format!("type {t} conflicts with --rank {r}")),
            (Err(_), Some(r)) => {
                let name = format!("{}{r}", self.type_name.trim());
                name.parse().map_err(|e| format!("{e}"))
            }
            (Err(_), None) => {
                Err(format!("`{}` needs --rank or a fused name like C3", self.type_name))
            }
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Pipeline {
    Invert,
    Braid,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    All,
    Tw0,
    Conjecture,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Cartan matrix, symmetrizer and type constants.
    Cartan {
        #[command(flatten)]
        type_args: TypeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Expand the inverse deformed Cartan matrix to a q-order.
    Ctilde {
        #[command(flatten)]
        type_args: TypeArgs,
        /// Truncation order (default 2rh'+2; env CARTANQT_ORDER overrides).
        #[arg(long)]
        order: Option<Exp>,
        /// Specialize t = 1.
        #[arg(long)]
        t1: bool,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        /// Computation route: direct series inversion or the braid-word expansion.
        #[arg(long, value_enum, default_value = "invert")]
        via: Pipeline,
    },
    /// Bigraded dimension of e_i Ibar_j via the braid-word expansion.
    Ibar {
        #[command(flatten)]
        type_args: TypeArgs,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        t1: bool,
        #[arg(long)]
        json: bool,
    },
    /// Graded dimension of e_j K^(i)_k.
    KernelDim {
        #[command(flatten)]
        type_args: TypeArgs,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        json: bool,
    },
    /// Graded dimension of the first extension group between generic kernels.
    Ext1 {
        #[command(flatten)]
        type_args: TypeArgs,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        json: bool,
    },
    /// Denominator divisor for a Kirillov-Reshetikhin pair.
    Divisor {
        #[command(flatten)]
        type_args: TypeArgs,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        l: i64,
        /// Spectral shift exponent of the first label.
        #[arg(long, default_value_t = 0)]
        p: Exp,
        /// Spectral shift exponent of the second label.
        #[arg(long, default_value_t = 0)]
        s: Exp,
        #[arg(long)]
        json: bool,
    },
    /// Weyl group utilities.
    Weyl {
        #[command(subcommand)]
        cmd: WeylCmd,
    },
    /// Run the exact identity checks; exit 1 on any failure.
    Verify {
        /// Restrict to one slice of the suite.
        #[arg(value_enum, default_value = "all")]
        scope: ScopeArg,
        /// Dynkin type, or `all` for the rank <= max-rank sweep.
        #[arg(long = "type", value_name = "TYPE", default_value = "all")]
        type_name: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, default_value_t = 4)]
        max_level: i64,
        #[arg(long)]
        order: Option<Exp>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum WeylCmd {
    /// Print a reduced word for the longest element and its length.
    W0 {
        #[command(flatten)]
        type_args: TypeArgs,
    },
}

fn order_from_env() -> Option<Exp> {
    std::env::var("CARTANQT_ORDER").ok().map(|raw| {
        raw.parse()
            .unwrap_or_else(|_| panic!("CARTANQT_ORDER must be an integer, got `{raw}`"))
    })
}

fn check_index(name: &str, value: usize, rank: usize) -> Result<usize, String> {
    if (1..=rank).contains(&value) {
        Ok(value - 1)
    } else {
        Err(format!("--{name} {value} out of range 1..={rank}"))
    }
}

fn check_level(name: &str, value: i64) -> Result<i64, String> {
    if value >= 1 {
        Ok(value)
    } else {
        Err(format!("--{name} must be at least 1"))
    }
}

fn build_table(dc: &DeformedCartan, order: Option<Exp>) -> CTildeTable {
    let cd = dc.cartan_data();
    let order = order
        .or_else(order_from_env)
        .unwrap_or_else(|| deform::default_order(cd))
        .max(0);
    deform::invert(dc, order)
}

/// Table for dimension/divisor commands: these read the full coefficient
/// window, so the order is floored at 2rh' regardless of any request.
fn window_table(cd: &CartanData, order: Option<Exp>) -> CTildeTable {
    let order = verify::effective_order(cd, order.or_else(order_from_env));
    deform::invert(&deform::build_cqt(cd), order)
}

fn print_poly(label: &str, value: &BiLaurent, json: bool) {
    if json {
        println!(
            "{}",
            serde_json::to_string(&QPolyJson::from_poly(value)).expect("serializable")
        );
    } else {
        println!("{label} = {value}");
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Cartan { type_args, json } => {
            let cd = CartanData::build(type_args.resolve()?);
            let summary = CartanJson::from_data(&cd);
            if json {
                println!("{}", serde_json::to_string(&summary).expect("serializable"));
            } else {
                println!("type {}  rank {}", summary.type_name, summary.rank);
                println!(
                    "d = ({})  r = {}  h = {}  h' = {}",
                    summary
                        .symmetrizer
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>()
                        .join(", "),
                    summary.lacing,
                    summary.coxeter,
                    summary.dual_coxeter
                );
                for row in &summary.cartan {
                    println!(
                        "[ {} ]",
                        row.iter()
                            .map(|c| format!("{c:>2}"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
            }
        }
        Cmd::Ctilde {
            type_args,
            order,
            t1,
            json,
            csv,
            via,
        } => {
            let cd = CartanData::build(type_args.resolve()?);
            let dc = deform::build_cqt(&cd);
            let tab = build_table(&dc, order);
            let series: Vec<Vec<BiLaurent>> = match via {
                Pipeline::Invert => (0..cd.rank())
                    .map(|i| (0..cd.rank()).map(|j| tab.entry_series(i, j)).collect())
                    .collect(),
                Pipeline::Braid => {
                    let word = weyl::longest_word(&cd);
                    braid::ctilde_braid_matrix(&dc, &word, tab.order())
                }
            };
            let type_name = cd.finite_type().to_string();
            if t1 {
                let spec: Vec<Vec<BiLaurent>> = series
                    .iter()
                    .map(|row| row.iter().map(|e| e.spec_t1()).collect())
                    .collect();
                let q = QTableJson {
                    type_name: type_name.clone(),
                    order: tab.order(),
                    entries: TableJson::from_series(&type_name, tab.order(), &spec)
                        .entries
                        .into_iter()
                        .map(|e| cartanqt::export::QEntryJson {
                            i: e.i,
                            j: e.j,
                            u: e.u,
                            c: e.c,
                        })
                        .collect(),
                };
                if json {
                    println!("{}", serde_json::to_string(&q).expect("serializable"));
                } else if csv {
                    print!("{}", q.to_csv());
                } else {
                    for (i, row) in spec.iter().enumerate() {
                        for (j, poly) in row.iter().enumerate() {
                            println!("C~[{},{}](q) = {}", i + 1, j + 1, poly);
                        }
                    }
                }
            } else {
                let full = TableJson::from_series(&type_name, tab.order(), &series);
                if json {
                    println!("{}", serde_json::to_string(&full).expect("serializable"));
                } else if csv {
                    print!("{}", full.to_csv());
                } else {
                    for (i, row) in series.iter().enumerate() {
                        for (j, poly) in row.iter().enumerate() {
                            println!("C~[{},{}](q,t) = {}", i + 1, j + 1, poly);
                        }
                    }
                }
            }
        }
        Cmd::Ibar {
            type_args,
            i,
            j,
            t1,
            json,
        } => {
            let cd = CartanData::build(type_args.resolve()?);
            let i = check_index("i", i, cd.rank())?;
            let j = check_index("j", j, cd.rank())?;
            let dc = deform::build_cqt(&cd);
            let word = weyl::longest_word(&cd);
            let dim = braid::ibar_dim_braid(&dc, &word, i, j);
            let value = if t1 { dim.spec_t1() } else { dim };
            let label = format!("dim e_{}Ibar_{}", i + 1, j + 1);
            if json {
                println!(
                    "{}",
                    serde_json::to_string(&BiPolyJson::from_poly(&value)).expect("serializable")
                );
            } else {
                println!("{label} = {value}");
            }
        }
        Cmd::KernelDim {
            type_args,
            i,
            k,
            j,
            json,
        } => {
            let cd = CartanData::build(type_args.resolve()?);
            let i = check_index("i", i, cd.rank())?;
            let j = check_index("j", j, cd.rank())?;
            let k = check_level("k", k)?;
            let tab = window_table(&cd, None);
            let dim = invariants::kernel_dim(&tab, i, k, j);
            print_poly(
                &format!("dim e_{}K^({})_{k}", j + 1, i + 1),
                &dim.value,
                json,
            );
        }
        Cmd::Ext1 {
            type_args,
            i,
            k,
            j,
            l,
            json,
        } => {
            let cd = CartanData::build(type_args.resolve()?);
            let i = check_index("i", i, cd.rank())?;
            let j = check_index("j", j, cd.rank())?;
            let k = check_level("k", k)?;
            let l = check_level("l", l)?;
            let tab = window_table(&cd, None);
            let ext = invariants::ext1_dim(&tab, i, k, j, l);
            print_poly(
                &format!("dim ext1(K^({})_{k}, K^({})_{l})", i + 1, j + 1),
                &ext.value,
                json,
            );
        }
        Cmd::Divisor {
            type_args,
            i,
            k,
            j,
            l,
            p,
            s,
            json,
        } => {
            let cd = CartanData::build(type_args.resolve()?);
            let i = check_index("i", i, cd.rank())?;
            let j = check_index("j", j, cd.rank())?;
            let k = check_level("k", k)?;
            let l = check_level("l", l)?;
            let tab = window_table(&cd, None);
            let (div, source) = rmatrix::divisor_kr(
                &tab,
                KRLabel::with_shift(i, k, p),
                KRLabel::with_shift(j, l, s),
            );
            if json {
                let body = serde_json::json!({
                    "type": cd.finite_type().to_string(),
                    "i": i + 1, "k": k, "j": j + 1, "l": l, "p": p, "s": s,
                    "source": source.label(),
                    "divisor": QPolyJson::from_poly(&div.to_poly()),
                });
                println!("{body}");
            } else {
                let note = match source {
                    DivisorSource::Conjectural => "  [conjectural - no independent oracle]",
                    DivisorSource::KnownList => "  [published list]",
                    DivisorSource::Formula => "",
                };
                println!("Div d = {div}{note}");
            }
        }
        Cmd::Weyl { cmd } => match cmd {
            WeylCmd::W0 { type_args } => {
                let cd = CartanData::build(type_args.resolve()?);
                let word = weyl::longest_word(&cd);
                let letters: Vec<String> =
                    word.letters().iter().map(|&i| (i + 1).to_string()).collect();
                println!("w0 = ({})", letters.join(" "));
                println!("length = {}", word.len());
            }
        },
        Cmd::Verify {
            scope,
            type_name,
            rank,
            max_rank,
            max_level,
            order,
            json,
        } => {
            let types: Vec<FiniteType> = if type_name.eq_ignore_ascii_case("all") {
                FiniteType::all_up_to_rank(max_rank)
            } else {
                vec![TypeArgs { type_name, rank }.resolve()?]
            };
            let scope = match scope {
                ScopeArg::All => VerifyScope::Full,
                ScopeArg::Tw0 => VerifyScope::Tw0,
                ScopeArg::Conjecture => VerifyScope::Conjecture,
            };
            let opts = VerifyOptions {
                order: order.or_else(order_from_env),
                max_level: check_level("max-level", max_level)?,
            };
            let report = verify::run_verify(&types, scope, &opts);
            if json {
                println!("{}", serde_json::to_string(&report).expect("serializable"));
            } else {
                println!("checks: {}", report.checks);
                for failure in &report.failures {
                    println!("FAIL {failure}");
                }
                if report.is_ok() {
                    println!("all checks passed");
                }
            }
            if !report.is_ok() {
                if !json {
                    eprintln!(
                        "verification failed: {} of {} checks",
                        report.failures.len(),
                        report.checks
                    );
                }
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
