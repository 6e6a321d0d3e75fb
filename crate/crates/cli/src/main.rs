mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::Failure;

#[derive(Parser)]
#[command(name = "tricolor", version, about = "3-colouring plane graphs with no 5-cycles, 7-cycles or adjacent triangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report class membership with witnesses.
    Check { file: PathBuf },
    /// Run the structure detectors on one face.
    Analyze {
        file: PathBuf,
        /// Face boundary labels, space or comma separated. Defaults to the
        /// file's `# face` line.
        #[arg(long)]
        face: Option<String>,
    },
    /// Apply one surgery and print the parts and the transfer map.
    Reduce(commands::ReduceArgs),
    /// 3-colour the whole graph.
    Color {
        file: PathBuf,
        /// Also write the colouring in col1 format.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = commands::CANDIDATES)]
        candidates: PathBuf,
    },
    /// Extend a colouring of a face boundary.
    Extend {
        file: PathBuf,
        #[arg(long)]
        face: Option<String>,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = commands::CANDIDATES)]
        candidates: PathBuf,
    },
    /// Check that a colouring is total and proper.
    Verify {
        file: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Generate a random graph in the class.
    Gen(commands::GenArgs),
    /// Write the curated and small corpora with their manifest.
    Corpus { dir: PathBuf },
    /// Run the property audit over generated batches.
    Audit(commands::AuditArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file } => commands::check(&file),
        Command::Analyze { file, face } => commands::analyze(&file, face.as_deref()),
        Command::Reduce(args) => commands::reduce(&args),
        Command::Color { file, out, candidates } => commands::color(&file, out.as_deref(), &candidates),
        Command::Extend { file, face, coloring, out, candidates } => {
            commands::extend(&file, face.as_deref(), &coloring, out.as_deref(), &candidates)
        }
        Command::Verify { file, coloring } => commands::verify(&file, &coloring),
        Command::Gen(args) => commands::gen(&args),
        Command::Corpus { dir } => commands::corpus(&dir),
        Command::Audit(args) => commands::audit(&args),
    };
    match result {
        Ok(code) => code.into(),
        Err(Failure { report, message }) => {
            eprintln!("error: {message}");
            if let Some(r) = report {
                r.emit();
            }
            report::INVALID.into()
        }
    }
}
