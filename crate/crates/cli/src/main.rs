use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use latgal::aggregation::AggTable;
use latgal::decomposition::{birkhoff_subdirect, subdirect_decompose_aggregation};
use latgal::fca::{self, ManyValuedContext};
use latgal::lattice::DEFAULT_MAX_ELEMENTS;
use latgal::{build, io, Error, FiniteLattice, LatticeMap, Result};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "latgal", version, about = "Finite lattices, Galois connections and aggregation functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (each command has its own default)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Upper bound on lattice and table sizes
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ELEMENTS)]
    max_elements: usize,
    /// Upper bound on the number of enumerated concepts
    #[arg(long, global = true, default_value_t = fca::DEFAULT_MAX_CONCEPTS)]
    max_concepts: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice files
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Aggregation specs
    #[command(subcommand)]
    Agg(AggCmd),
    /// Formal concept analysis
    #[command(subcommand)]
    Fca(FcaCmd),
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Check that the file describes a lattice
    Validate { file: PathBuf },
    /// Print join and meet tables
    Show { file: PathBuf },
    /// Hasse diagram in DOT
    Dot { file: PathBuf },
}

#[derive(Subcommand)]
enum AggCmd {
    /// Build the aggregation and print its unary components
    Build { spec: PathBuf },
    /// Evaluate at a tuple of labels
    Eval { spec: PathBuf, args: Vec<String> },
    /// Print the full value table
    Table { spec: PathBuf },
    /// Recover unary components from a spec or from a table
    Decompose {
        spec: Option<PathBuf>,
        #[arg(long, requires = "lattice", conflicts_with = "spec")]
        table: Option<PathBuf>,
        #[arg(long)]
        lattice: Option<PathBuf>,
    },
    /// Factor matrices over the Birkhoff embedding of the host
    Subdirect { spec: PathBuf },
}

#[derive(Subcommand)]
enum FcaCmd {
    /// List all concepts
    Concepts { context: PathBuf, family: PathBuf },
    /// Concept lattice as DOT
    Lattice { context: PathBuf, family: PathBuf },
    /// Classical concepts of a binary context
    Crisp { context: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|out| emit(&cli, &out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let report = json!({"error": err.kind(), "message": err.to_string()});
            eprintln!("{report}");
            ExitCode::from(if err.is_input_error() { 2 } else { 1 })
        }
    }
}

fn emit(cli: &Cli, out: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, out).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(out.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn format(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let name = f.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        Err(Error::Parse(format!("format `{name}` is not available for this command")))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn color() -> bool {
    match std::env::var("LATGAL_COLOR") {
        Ok(v) => v != "0",
        Err(_) => std::io::stdout().is_terminal(),
    }
}

fn load_lattice(cli: &Cli, path: &Path) -> Result<Arc<FiniteLattice>> {
    let l = io::load_lattice(path)?;
    check_size(cli, l.len())?;
    Ok(Arc::new(l))
}

fn check_size(cli: &Cli, size: usize) -> Result<()> {
    if size > cli.max_elements {
        return Err(Error::SizeLimit {
            size: size as u128,
            limit: cli.max_elements,
        });
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Lattice(cmd) => lattice(cli, cmd),
        Command::Agg(cmd) => agg(cli, cmd),
        Command::Fca(cmd) => fca_cmd(cli, cmd),
    }
}

fn lattice(cli: &Cli, cmd: &LatticeCmd) -> Result<String> {
    match cmd {
        LatticeCmd::Validate { file } => {
            format(cli, Format::Table, &[Format::Table, Format::Json])?;
            let l = load_lattice(cli, file)?;
            Ok(match cli.format {
                Some(Format::Json) => pretty(&json!({
                    "ok": true,
                    "elements": l.len(),
                    "distributive": l.is_distributive(),
                })),
                _ => "OK\n".to_string(),
            })
        }
        LatticeCmd::Show { file } => {
            let f = format(cli, Format::Table, &[Format::Table, Format::Json])?;
            let l = load_lattice(cli, file)?;
            let labels = l.labels();
            let grid = |op: &dyn Fn(latgal::ElementRef, latgal::ElementRef) -> latgal::ElementRef| -> Vec<Vec<String>> {
                l.elements()
                    .map(|x| l.elements().map(|y| l.label(op(x, y)).into_owned()).collect())
                    .collect()
            };
            let join = grid(&|x, y| l.join(x, y));
            let meet = grid(&|x, y| l.meet(x, y));
            Ok(match f {
                Format::Json => pretty(&json!({"elements": labels, "join": join, "meet": meet})),
                _ => {
                    let c = color();
                    format!(
                        "{}\n{}",
                        render_grid("join", &labels, &labels, &join, c),
                        render_grid("meet", &labels, &labels, &meet, c)
                    )
                }
            })
        }
        LatticeCmd::Dot { file } => {
            format(cli, Format::Dot, &[Format::Dot])?;
            let l = load_lattice(cli, file)?;
            let name = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(l.to_dot(&name))
        }
    }
}

fn render_grid(corner: &str, rows: &[String], cols: &[String], cells: &[Vec<String>], color: bool) -> String {
    let width = rows
        .iter()
        .chain(cols)
        .chain(cells.iter().flatten())
        .map(|s| s.chars().count())
        .chain([corner.chars().count()])
        .max()
        .unwrap_or(1);
    let paint = |s: &str| {
        let padded = format!("{s:>width$}");
        if color {
            format!("\x1b[1m{padded}\x1b[0m")
        } else {
            padded
        }
    };
    let mut out = paint(corner);
    for c in cols {
        out.push(' ');
        out.push_str(&paint(c));
    }
    out.push('\n');
    for (r, row) in rows.iter().zip(cells) {
        out.push_str(&paint(r));
        for v in row {
            out.push_str(&format!(" {v:>width$}"));
        }
        out.push('\n');
    }
    out
}

fn maps_json(maps: &[LatticeMap]) -> Value {
    Value::Array(maps.iter().map(LatticeMap::to_json).collect())
}

fn agg(cli: &Cli, cmd: &AggCmd) -> Result<String> {
    match cmd {
        AggCmd::Build { spec } => {
            format(cli, Format::Json, &[Format::Json])?;
            let f = build(io::load_agg_spec(spec)?)?;
            Ok(pretty(&json!({
                "arity": f.arity(),
                "components": maps_json(&f.components()),
            })))
        }
        AggCmd::Eval { spec, args } => {
            format(cli, Format::Table, &[Format::Table, Format::Json])?;
            let f = build(io::load_agg_spec(spec)?)?;
            let value = f.evaluate_labels(args)?;
            Ok(match cli.format {
                Some(Format::Json) => pretty(&json!({"args": args, "value": value})),
                _ => format!("{value}\n"),
            })
        }
        AggCmd::Table { spec } => {
            let fmt = format(cli, Format::Csv, &[Format::Csv, Format::Table, Format::Json])?;
            let f = build(io::load_agg_spec(spec)?)?;
            let table = f.full_table_with_limit(cli.max_elements)?;
            Ok(render_table(&table, fmt))
        }
        AggCmd::Decompose { spec, table, lattice } => {
            format(cli, Format::Json, &[Format::Json])?;
            let components = match (spec, table, lattice) {
                (Some(spec), None, _) => build(io::load_agg_spec(spec)?)?.components(),
                (None, Some(table), Some(lattice)) => {
                    let l = load_lattice(cli, lattice)?;
                    let text = std::fs::read_to_string(table)
                        .map_err(|e| Error::Io(format!("{}: {e}", table.display())))?;
                    let t = AggTable::from_csv(l, &text)?;
                    check_size(cli, t.values().len())?;
                    t.decompose()?
                }
                _ => return Err(Error::Parse("give a spec, or --table with --lattice".into())),
            };
            Ok(pretty(&maps_json(&components)))
        }
        AggCmd::Subdirect { spec } => {
            format(cli, Format::Json, &[Format::Json])?;
            let f = build(io::load_agg_spec(spec)?)?;
            let e = birkhoff_subdirect(f.host())?;
            Ok(pretty(&subdirect_decompose_aggregation(&f, &e)?.to_json()))
        }
    }
}

fn render_table(table: &AggTable, fmt: Format) -> String {
    let l = table.host();
    match fmt {
        Format::Table if table.arity() == 2 => {
            let labels = l.labels();
            let cells: Vec<Vec<String>> = l
                .elements()
                .map(|x| l.elements().map(|y| l.label(table.get(&[x, y])).into_owned()).collect())
                .collect();
            render_grid("x\\y", &labels, &labels, &cells, color())
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .tuples()
                .map(|t| {
                    json!({
                        "args": t.iter().map(|&e| l.label(e).into_owned()).collect::<Vec<_>>(),
                        "value": l.label(table.get(&t)).into_owned(),
                    })
                })
                .collect();
            pretty(&Value::Array(rows))
        }
        _ => table.to_csv(),
    }
}

fn load_ctx_family(context: &Path, family: &Path) -> Result<(ManyValuedContext, fca::ValueMapFamily)> {
    Ok((fca::load_context(context)?, io::load_family(family)?))
}

fn fca_cmd(cli: &Cli, cmd: &FcaCmd) -> Result<String> {
    match cmd {
        FcaCmd::Concepts { context, family } => {
            format(cli, Format::Json, &[Format::Json])?;
            let (ctx, fam) = load_ctx_family(context, family)?;
            let cs = fca::concepts_with_limit(&ctx, &fam, cli.max_concepts)?;
            Ok(pretty(&fca::concepts_to_json(&ctx, fam.lattice(), &cs)))
        }
        FcaCmd::Lattice { context, family } => {
            format(cli, Format::Dot, &[Format::Dot])?;
            let (ctx, fam) = load_ctx_family(context, family)?;
            let cs = fca::concepts_with_limit(&ctx, &fam, cli.max_concepts)?;
            let cl = fca::concept_lattice(fam.lattice(), cs)?;
            Ok(cl.to_dot("concepts"))
        }
        FcaCmd::Crisp { context } => {
            format(cli, Format::Json, &[Format::Json])?;
            let ctx = fca::load_context(context)?;
            let cs = fca::crisp_concepts(&ctx)?;
            Ok(pretty(&Value::Array(
                cs.into_iter()
                    .map(|c| json!({"extent": c.extent, "intent": c.intent}))
                    .collect(),
            )))
        }
    }
}
