//! The `factree` command line: map factorizations of the long cycle to
//! labelled trees and back, verify chord-diagram conditions, enumerate,
//! count, and render.
//!
//! [`run`] is the whole program, parameterized over its streams so tests
//! can drive it directly.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use factree::{
    brute_force_minimal_transitive, enumerate_factorizations, factorization_code, from_tree,
    hurwitz_minimal_formula, infer_n, leaf_count_table, parse_transposition_line,
    refined_distribution_table, to_tree, ChordDiagram, Factorization, LabeledTree, Partition,
    TranspositionTuple, DEFAULT_EVALUATION_BUDGET,
};
use std::io::{Read, Write};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "factree",
    version,
    about = "Factorizations of the long cycle and their labelled trees",
    long_about = "Maps minimal transposition factorizations of the cycle (1 2 ... n) to \
                  labelled trees and back, checks the chord-diagram conditions, and \
                  reproduces the counting identities relating the two families.\n\n\
                  Factorizations are written as one line of factors, e.g. \
                  `(2 3)(1 3)`, optionally prefixed by `n=<count>`.  Trees are written \
                  as an `n=<count>` header followed by one `u v` edge per line; blank \
                  lines and lines starting with `#` are ignored."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map a factorization to its labelled tree (with the shared distribution).
    Map(IoArgs),
    /// Recover the unique factorization mapping to a labelled tree.
    Invert(IoArgs),
    /// Check the chord-diagram conditions of a transposition tuple.
    Verify(IoArgs),
    /// List the factorizations of the long cycle, in lexicographic order.
    Enumerate {
        /// Number of points.
        #[arg(long)]
        n: usize,
        /// Keep only factorizations with this many consecutive-pair factors.
        #[arg(long, value_name = "K")]
        filter_consecutive: Option<usize>,
        /// Write to this file instead of standard output.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Print the table of tree counts by leaf number, cross-checked against
    /// factorization counts by consecutive pairs where enumerable.
    Table {
        /// Largest row to print.
        #[arg(long, value_name = "N")]
        max: usize,
        /// Emit comma-separated values instead of aligned text.
        #[arg(long)]
        csv: bool,
        /// Write to this file instead of standard output.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Print, per difference distribution, how many factorizations and how
    /// many trees attain it.
    Refine {
        /// Number of points.
        #[arg(long)]
        n: usize,
        /// Write to this file instead of standard output.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Count minimal transitive factorizations of a cycle type by formula.
    Hurwitz {
        /// The cycle type, e.g. `2,2,1`.
        #[arg(long, value_name = "PARTS")]
        alpha: String,
        /// Also count by exhaustive search and compare.
        #[arg(long)]
        brute_force: bool,
        /// Evaluation budget for the exhaustive search.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_EVALUATION_BUDGET)]
        max_evals: u64,
        /// Write to this file instead of standard output.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Print the sequence coding a factorization (the code of its tree).
    Code(IoArgs),
    /// Draw the chord diagram (svg) or the tree (dot).
    Render {
        #[arg(long, value_enum)]
        format: RenderFormat,
        /// Read a tree instead of a factorization.
        #[arg(long)]
        tree: bool,
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Args)]
struct IoArgs {
    /// Read from this file instead of standard input.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Dot,
    Svg,
}

enum Failure {
    /// Invalid input or a failed check: `error: <reason>`, exit status 1.
    Invalid(String),
    /// Flag combinations the interface does not support: exit status 2.
    Usage(String),
    /// The input was a well-formed tuple that fails the diagram conditions;
    /// the report has already been printed, exit status 1.
    Reported,
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Invalid(e.to_string())
    }
}

/// Runs the command line against explicit streams and returns the exit
/// status: 0 on success, 1 when input is invalid or a verification fails,
/// 2 on usage errors.
pub fn run(
    args: impl IntoIterator<Item = String>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
        }
    };
    match execute(cli.command, stdin, stdout) {
        Ok(()) => 0,
        Err(Failure::Reported) => 1,
        Err(Failure::Invalid(reason)) => {
            let _ = writeln!(stderr, "error: {reason}");
            1
        }
        Err(Failure::Usage(reason)) => {
            let _ = writeln!(stderr, "error: {reason}");
            2
        }
    }
}

fn execute(command: Command, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Map(io) => {
            let f: Factorization = read_source(&io.input, stdin)?.parse()?;
            let tree = to_tree(&f);
            with_sink(&io.output, stdout, |out| {
                write!(out, "{tree}")?;
                writeln!(out, "# delta = epsilon = {}", f.difference_distribution())
            })
        }
        Command::Invert(io) => {
            let tree: LabeledTree = read_source(&io.input, stdin)?.parse()?;
            let f = from_tree(&tree);
            with_sink(&io.output, stdout, |out| writeln!(out, "{f}"))
        }
        Command::Verify(io) => {
            let text = read_source(&io.input, stdin)?;
            let (explicit_n, factors) = parse_transposition_line(&text)?;
            let n = infer_n(explicit_n, &factors)?;
            let diagram = ChordDiagram::new(n, factors.iter().map(|f| (f.s(), f.t())))?;
            let report = diagram.check_conditions();
            let tuple = TranspositionTuple::new(n, factors)?;
            let (joins, cuts) = tuple.join_cut_profile();
            with_sink(&io.output, stdout, |out| {
                writeln!(out, "{report}")?;
                writeln!(out, "joins: {joins}")?;
                writeln!(out, "cuts: {cuts}")
            })?;
            if report.all_hold() {
                Ok(())
            } else {
                Err(Failure::Reported)
            }
        }
        Command::Enumerate { n, filter_consecutive, output } => {
            let factorizations = enumerate_factorizations(n)?;
            with_sink(&output, stdout, |out| {
                for f in factorizations {
                    if let Some(k) = filter_consecutive {
                        if f.consecutive_pair_count() != k {
                            continue;
                        }
                    }
                    writeln!(out, "{f}")?;
                }
                Ok(())
            })
        }
        Command::Table { max, csv, output } => {
            let table = leaf_count_table(max)?;
            let rendered = if csv { table.render_csv() } else { table.render_text() };
            with_sink(&output, stdout, |out| write!(out, "{rendered}"))
        }
        Command::Refine { n, output } => {
            let table = refined_distribution_table(n)?;
            with_sink(&output, stdout, |out| {
                for (vector, (factorizations, trees)) in &table {
                    let key: Vec<String> = vector.iter().map(|c| c.to_string()).collect();
                    writeln!(out, "{}: {factorizations} {trees}", key.join(","))?;
                }
                Ok(())
            })
        }
        Command::Hurwitz { alpha, brute_force, max_evals, output } => {
            let alpha: Partition = alpha.parse()?;
            let formula = hurwitz_minimal_formula(&alpha);
            let brute = if brute_force {
                Some(brute_force_minimal_transitive(&alpha, max_evals)?)
            } else {
                None
            };
            with_sink(&output, stdout, |out| {
                writeln!(out, "formula: {formula}")?;
                if let Some(count) = brute {
                    writeln!(out, "brute-force: {count}")?;
                }
                Ok(())
            })?;
            if let Some(count) = brute {
                if count.to_string() != formula.to_string() {
                    return Err(Failure::Invalid(format!(
                        "formula {formula} and exhaustive count {count} disagree"
                    )));
                }
            }
            Ok(())
        }
        Command::Code(io) => {
            let f: Factorization = read_source(&io.input, stdin)?.parse()?;
            let code = factorization_code(&f)?;
            with_sink(&io.output, stdout, |out| {
                let entries: Vec<String> = code.iter().map(|e| e.to_string()).collect();
                writeln!(out, "{}", entries.join(" "))
            })
        }
        Command::Render { format, tree, io } => {
            let rendered = match (format, tree) {
                (RenderFormat::Svg, true) => {
                    return Err(Failure::Usage(
                        "trees render as dot only; drop --tree or use --format dot".to_string(),
                    ));
                }
                (RenderFormat::Svg, false) => {
                    let f: Factorization = read_source(&io.input, stdin)?.parse()?;
                    ChordDiagram::from_factorization(&f).to_svg()
                }
                (RenderFormat::Dot, true) => {
                    let t: LabeledTree = read_source(&io.input, stdin)?.parse()?;
                    t.to_dot()
                }
                (RenderFormat::Dot, false) => {
                    let f: Factorization = read_source(&io.input, stdin)?.parse()?;
                    to_tree(&f).to_dot()
                }
            };
            with_sink(&io.output, stdout, |out| write!(out, "{rendered}"))
        }
    }
}

fn read_source(input: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, Failure> {
    match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Invalid(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
    }
}

fn with_sink(
    output: &Option<PathBuf>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), Failure> {
    match output {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))?;
            body(&mut file).map_err(|e| Failure::Invalid(format!("write failed: {e}")))?;
            file.flush()
                .map_err(|e| Failure::Invalid(format!("write failed: {e}")))
        }
        None => body(stdout).map_err(|e| Failure::Invalid(format!("write failed: {e}"))),
    }
}
