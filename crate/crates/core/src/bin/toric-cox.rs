use std::process::ExitCode;

use clap::{Parser, Subcommand};

use toric_cox::bondal::enumerate_strata;
use toric_cox::error::{Error, ErrorKind, Result};
use toric_cox::input::ToricInput;
use toric_cox::report::{self, Context, Report, ThetaFlags};
use toric_cox::svg::plot_strata;

#[derive(Parser)]
#[command(name = "toric-cox", version, about = "Exact Cox-category combinatorics of toric varieties")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Deterministic output; always on.
    #[arg(long, global = true)]
    seedless: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetry group of the ray configuration.
    Symmetry { input: String },
    /// Bondal-Thomsen collection and what is built from it.
    Theta {
        input: String,
        #[arg(long)]
        strata: bool,
        #[arg(long)]
        orbits: bool,
        #[arg(long)]
        sod: bool,
        #[arg(long)]
        hom: bool,
        #[arg(long)]
        order: bool,
    },
    /// Maximal chambers of the secondary fan and the group action on them.
    Gkz { input: String },
    /// Equivariant simplicial refinement of the chamber fans.
    Refine { input: String },
    /// Complex attached to a sublattice: `zero`, `identity`, or columns like `[[1,1]]`.
    Hhl {
        input: String,
        #[arg(long, default_value = "zero")]
        phi: String,
    },
    /// SVG of a two-dimensional stratification.
    Plot { input: String, out: String },
    /// Every section that applies.
    ReportAll { input: String },
}

fn context(arg: &str) -> Result<Context> {
    Context::new(ToricInput::load(arg)?)
}

fn run(cli: &Cli) -> Result<Option<Report>> {
    let report = match &cli.command {
        Command::Symmetry { input } => {
            let ctx = context(input)?;
            let mut r = Report::empty(&ctx)?;
            r.symmetry = Some(report::symmetry_section(&ctx)?);
            r
        }
        Command::Theta { input, strata, orbits, sod, hom, order } => {
            let ctx = context(input)?;
            let mut r = Report::empty(&ctx)?;
            let flags = ThetaFlags { strata: *strata, orbits: *orbits, sod: *sod, hom: *hom, order: *order };
            r.theta = Some(report::theta_section(&ctx, flags)?);
            r
        }
        Command::Gkz { input } => {
            let ctx = context(input)?;
            let mut r = Report::empty(&ctx)?;
            r.gkz = Some(report::gkz_section(&ctx)?);
            r
        }
        Command::Refine { input } => {
            let ctx = context(input)?;
            let mut r = Report::empty(&ctx)?;
            r.refine = Some(report::refine_section(&ctx)?);
            r
        }
        Command::Hhl { input, phi } => {
            let ctx = context(input)?;
            let phi = report::parse_phi(phi, ctx.rays.dim())?;
            let mut r = Report::empty(&ctx)?;
            r.hhl = Some(vec![report::hhl_section(&ctx, &phi)?]);
            r
        }
        Command::Plot { input, out } => {
            let ctx = context(input)?;
            let theta = enumerate_strata(&ctx.rays, &ctx.cg)?;
            let svg = plot_strata(&ctx.rays, &theta, |s| ctx.class_name(&theta.strata[s].theta_class))?;
            std::fs::write(out, svg).map_err(|e| Error::Precondition(format!("cannot write {out}: {e}")))?;
            return Ok(None);
        }
        Command::ReportAll { input } => report::report_all(&context(input)?)?,
    };
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(r)) => {
            if cli.json {
                print!("{}", r.to_json());
            } else {
                print!("{}", r.render_text());
            }
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Precondition => 3,
                ErrorKind::Internal => 4,
            })
        }
    }
}
