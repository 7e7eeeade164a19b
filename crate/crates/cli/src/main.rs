use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use confcoh::configcoh::Space;
use confcoh::{GroupId, SpaceId};

mod render;
mod verify;

#[derive(Parser)]
#[command(name = "confcoh", version, about = "Cohomology of configuration spaces of two points in projective space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceArg {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "F", alias = "f")]
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Coefficients {
    #[value(name = "z", alias = "Z")]
    Z,
    Twisted,
    #[value(name = "f2", alias = "F2")]
    F2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Uct,
    Bockstein,
    Duality,
    Clss,
    Sq1,
    Stiefel,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology (or homology) groups of B(P^m,2) or F(P^m,2), degree by degree.
    Groups {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
        #[arg(long, value_enum, default_value = "z")]
        coefficients: Coefficients,
        /// Homology instead of cohomology.
        #[arg(long)]
        homology: bool,
    },
    /// Torsion of H^i(B(P^m,2)) for m = 2, 4, 6, 8 and 2 <= i <= 14.
    Table1 {
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Run verification suites; exit 0 when every check passes, 1 otherwise.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Inclusive range such as 2..10.
        #[arg(long, default_value = "2..10")]
        m_range: String,
        #[arg(long, default_value_t = 12)]
        max_m: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
        /// Only print failing checks and the summary.
        #[arg(long)]
        quiet: bool,
    },
    /// Mod-2 Hilbert series of the presented cohomology ring.
    Hilbert {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// Sq1-homology ranks next to the ranks predicted by the integral table.
    Sq1 {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: OutputFormat,
    },
    /// E2 chart of the Cartan-Leray spectral sequence as JSON.
    Chart {
        #[arg(long)]
        group: GroupId,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        m: u32,
    },
}

impl SpaceArg {
    fn with_m(self, m: u32) -> SpaceId {
        match self {
            SpaceArg::B => SpaceId { space: Space::UnorderedB, m },
            SpaceArg::F => SpaceId { space: Space::OrderedF, m },
        }
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Groups { space, m, format, coefficients, homology } => {
            render::groups(space.with_m(m), format, coefficients, homology)
        }
        Command::Table1 { format } => Ok(render::table1(format)),
        Command::Hilbert { space, m, format } => render::hilbert(space.with_m(m), format),
        Command::Sq1 { space, m, format } => render::sq1(space.with_m(m), format),
        Command::Chart { group, m } => Ok(render::chart(group, m)),
        Command::Verify { suite, m_range, max_m, format, quiet } => {
            let (lo, hi) = match verify::parse_range(&m_range) {
                Ok(r) => r,
                Err(e) => return usage(&e),
            };
            if hi > max_m {
                return usage(&format!("m-range upper end {hi} exceeds --max-m {max_m}"));
            }
            let report = verify::run(suite, lo, hi);
            print!("{}", render::report(&report, format, quiet));
            return if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match out {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => usage(&e),
    }
}
