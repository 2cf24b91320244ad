use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use tgwa_cli::commands::{self, Common};
use tgwa_cli::report::ExitClass;
use tgwa_core::simplicity::SimplicityCaps;

/// Exact computation in twisted generalized Weyl algebras: normal forms,
/// zero tests in the quotient, and certified structural decisions.
#[derive(Parser)]
#[command(name = "tgwa", version, about)]
struct Cli {
    /// Write the machine-readable report to this path ("-" for stdout)
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<String>,

    /// Cap on Σ|g_i| for reduced-monomial enumeration in zero tests
    #[arg(long, global = true, value_name = "N")]
    zero_cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DatumArg {
    /// Path to a datum JSON file
    datum: String,
}

#[derive(Args)]
struct ElementArg {
    #[command(flatten)]
    datum: DatumArg,
    /// Element expression over the generators X1..Xn, Y1..Yn and the ring
    /// variables
    #[arg(long)]
    element: String,
}

#[derive(Args)]
struct BinaryArg {
    #[command(flatten)]
    datum: DatumArg,
    #[arg(long)]
    lhs: String,
    #[arg(long)]
    rhs: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check every datum invariant and report violations
    Validate(DatumArg),
    /// Verify the consistency conditions that embed the base ring
    Consistency(DatumArg),
    /// Reduce an element expression to its canonical form
    Reduce(ElementArg),
    /// Multiply two elements
    Mul(BinaryArg),
    /// Commutator [lhs, rhs]
    Commutator(BinaryArg),
    /// Decide whether an element is zero in the quotient algebra
    ZeroTest(ElementArg),
    /// Degree-zero pairing of two elements
    Gamma(BinaryArg),
    /// Kernel of the grading action
    Kernel {
        #[command(flatten)]
        datum: DatumArg,
        /// Search radius for the generic-family box scan
        #[arg(long, default_value_t = 4)]
        r#box: u32,
    },
    /// Minimal recurrence lengths and the generalized Cartan matrix
    Finitistic {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 32)]
        bound: u32,
    },
    /// Whether all off-diagonal Cartan entries vanish
    LieType {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 32)]
        bound: u32,
    },
    /// Invariant-ideal analysis of the base ring
    ZnSimple(DatumArg),
    /// Whether the center is contained in the base ring
    Center {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 4)]
        deg_cap: u32,
        #[arg(long, default_value_t = 2)]
        coeff_cap: u32,
        #[arg(long, default_value_t = 4)]
        r#box: u32,
    },
    /// Whether the centralizer of the base ring is commutative
    Centralizer {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 3)]
        m_cap: u32,
        #[arg(long, default_value_t = 4)]
        r#box: u32,
    },
    /// Full simplicity decision with certificates and witnesses
    Simplicity {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 25)]
        d_bound: u32,
        #[arg(long, default_value_t = 4)]
        deg_cap: u32,
        #[arg(long, default_value_t = 2)]
        coeff_cap: u32,
        #[arg(long, default_value_t = 4)]
        r#box: u32,
        #[arg(long, default_value_t = 32)]
        finitistic_bound: u32,
        #[arg(long, default_value_t = 4)]
        weyl_pair_degree: u32,
    },
    /// Equality of two elements in the quotient algebra
    VerifyRelation(BinaryArg),
    /// Nested-bracket certificate for the monoid condition
    WeylPair {
        #[command(flatten)]
        datum: DatumArg,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Build the datum attached to a symmetric generalized Cartan matrix
    CartanBuild {
        /// Path to a JSON integer matrix
        gcm: String,
        #[arg(long)]
        q: String,
        /// Output path for the generated datum JSON
        #[arg(long)]
        out: Option<String>,
    },
    /// Coxeter components and the component kernel basis
    CartanKernel {
        /// Path to a JSON integer matrix
        gcm: String,
    },
    /// List the bundled example data, or write it to a directory
    Examples {
        #[arg(long)]
        dir: Option<String>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap renders help/version through errors too
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            std::process::exit(if is_help { 0 } else { 1 });
        }
    };
    let common = Common {
        json_path: cli.json.clone(),
        zero_cap: cli.zero_cap,
    };
    let started = Instant::now();
    let out = match &cli.command {
        Command::Validate(a) => commands::cmd_validate(&a.datum, &common),
        Command::Consistency(a) => commands::cmd_consistency(&a.datum, &common),
        Command::Reduce(a) => commands::cmd_reduce(&a.datum.datum, &a.element, &common),
        Command::Mul(a) => commands::cmd_mul(&a.datum.datum, &a.lhs, &a.rhs, &common),
        Command::Commutator(a) => {
            commands::cmd_commutator(&a.datum.datum, &a.lhs, &a.rhs, &common)
        }
        Command::ZeroTest(a) => commands::cmd_zero_test(&a.datum.datum, &a.element, &common),
        Command::Gamma(a) => commands::cmd_gamma(&a.datum.datum, &a.lhs, &a.rhs, &common),
        Command::Kernel { datum, r#box } => commands::cmd_kernel(&datum.datum, *r#box, &common),
        Command::Finitistic { datum, bound } => {
            commands::cmd_finitistic(&datum.datum, *bound, &common)
        }
        Command::LieType { datum, bound } => commands::cmd_lie_type(&datum.datum, *bound, &common),
        Command::ZnSimple(a) => commands::cmd_zn_simple(&a.datum, &common),
        Command::Center {
            datum,
            deg_cap,
            coeff_cap,
            r#box,
        } => commands::cmd_center(&datum.datum, *deg_cap, *coeff_cap, *r#box, &common),
        Command::Centralizer { datum, m_cap, r#box } => {
            commands::cmd_centralizer(&datum.datum, *m_cap, *r#box, &common)
        }
        Command::Simplicity {
            datum,
            d_bound,
            deg_cap,
            coeff_cap,
            r#box,
            finitistic_bound,
            weyl_pair_degree,
        } => {
            let caps = SimplicityCaps {
                d_bound: *d_bound,
                deg_cap: *deg_cap,
                coeff_cap: *coeff_cap,
                box_radius: *r#box,
                finitistic_bound: *finitistic_bound,
                weyl_pair_degree: *weyl_pair_degree,
            };
            commands::cmd_simplicity(&datum.datum, caps, &common)
        }
        Command::VerifyRelation(a) => {
            commands::cmd_verify_relation(&a.datum.datum, &a.lhs, &a.rhs, &common)
        }
        Command::WeylPair { datum, max_degree } => {
            commands::cmd_weyl_pair(&datum.datum, *max_degree, &common)
        }
        Command::CartanBuild { gcm, q, out } => {
            commands::cmd_cartan_build(gcm, q, out.as_deref())
        }
        Command::CartanKernel { gcm } => commands::cmd_cartan_kernel(gcm),
        Command::Examples { dir } => commands::cmd_examples(dir.as_deref()),
    };
    println!("{}", out.human);
    if let Some(path) = &common.json_path {
        let rendered = serde_json::to_string_pretty(&out.report).expect("report is serializable");
        if path == "-" {
            println!("{}", rendered);
        } else if let Err(e) = std::fs::write(path, rendered.as_bytes()) {
            eprintln!("error writing report to {}: {}", path, e);
            std::process::exit(ExitClass::Usage.code());
        }
    }
    eprintln!("elapsed: {:.1} ms", started.elapsed().as_secs_f64() * 1e3);
    std::process::exit(out.exit.code());
}
