use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use qgraph_cospec::cospec::{scan, verify_paper_tables, Mode};
use qgraph_cospec::enumerate::{enumerate_connected, EnumerateError, DEFAULT_MAX_EDGES};
use qgraph_cospec::graphs::{parse_graph6, to_dot, to_graph6, ClassKey, Graph};
use qgraph_cospec::spectral::{charpoly_psi, eigenvalues};
use qgraph_cospec::Exec;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_INTERNAL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PAIRS: u8 = 3;

/// Dirichlet cospectrality of equilateral quantum graphs.
#[derive(Parser, Debug)]
#[command(name = "qgcospec", version)]
struct Cli {
    /// Worker threads; 0 or unset uses all available cores.
    #[arg(long, global = true, env = "QGCOSPEC_WORKERS")]
    workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Reuse reports stored under this directory, keyed by a digest of the
    /// command line.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
enum Command {
    /// List connected graphs with a given number of edges.
    Enumerate {
        #[arg(long)]
        edges: usize,
        /// Keep one class only, as `g,delta`.
        #[arg(long, value_parser = parse_class)]
        class: Option<(usize, usize)>,
        #[arg(long, value_enum, default_value_t = Format::Graph6)]
        format: Format,
    },
    /// Print ψ(z) for each input graph.
    Charpoly {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// First eigenvalues at zero potential.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 1.0)]
        length: f64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for cospectral pairs.
    Scan {
        #[arg(long, default_value_t = 1)]
        min_edges: usize,
        #[arg(long, default_value_t = 7)]
        max_edges: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Set)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exit with status 3 if any pair is found.
        #[arg(long)]
        expect_none: bool,
    },
    /// Compare computed ψ with the printed tables for g = 4..7.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug, Serialize)]
struct GraphInput {
    /// A graph in graph6.
    #[arg(long, conflicts_with = "input")]
    graph6: Option<String>,
    /// A file with one graph6 string per line; `-` reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum Format {
    Json,
    Csv,
    Graph6,
    Dot,
    Text,
}

#[derive(Copy, Clone, Debug, ValueEnum, Serialize)]
enum ModeArg {
    Set,
    Multiset,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Set => Mode::Set,
            ModeArg::Multiset => Mode::Multiset,
        }
    }
}

fn parse_class(s: &str) -> Result<(usize, usize), String> {
    let (g, d) = s.split_once(',').ok_or("expected g,delta")?;
    let g = g.trim().parse().map_err(|_| format!("bad edge count '{g}'"))?;
    let d = d.trim().parse().map_err(|_| format!("bad delta '{d}'"))?;
    Ok((g, d))
}

enum Failure {
    Usage(String),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

struct Output {
    text: String,
    status: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let exec = match cli.workers {
        Some(1) => Exec::sequential(),
        Some(0) | None => Exec::parallel(None),
        Some(n) => Exec::parallel(Some(n)),
    };
    let cache = cli.cache_dir.as_ref().map(|dir| cache_path(dir, &cli.command));
    let output = match cache.as_ref().filter(|p| p.exists()) {
        Some(path) => read_cached(path)?,
        None => {
            let output = dispatch(&cli.command, &exec)?;
            if let Some(path) = &cache {
                write_cached(path, &output)?;
            }
            output
        }
    };
    emit(cli.out.as_deref(), &output.text)?;
    Ok(output.status)
}

fn dispatch(command: &Command, exec: &Exec) -> Result<Output, Failure> {
    let ok = |text| Ok(Output { text, status: 0 });
    match command {
        Command::Enumerate {
            edges,
            class,
            format,
        } => ok(cmd_enumerate(*edges, *class, *format, exec)?),
        Command::Charpoly { input, format } => ok(cmd_charpoly(input, *format)?),
        Command::Spectrum {
            input,
            length,
            count,
            format,
        } => ok(cmd_spectrum(input, *length, *count, *format)?),
        Command::Scan {
            min_edges,
            max_edges,
            mode,
            format,
            expect_none,
        } => cmd_scan(*min_edges, *max_edges, (*mode).into(), *format, *expect_none, exec),
        Command::VerifyPaper { format } => ok(cmd_verify_paper(*format, exec)?),
    }
}

fn limit_error(e: EnumerateError) -> Failure {
    usage(e.to_string())
}

fn cmd_enumerate(
    edges: usize,
    class: Option<(usize, usize)>,
    format: Format,
    exec: &Exec,
) -> Result<String, Failure> {
    if edges == 0 || edges > DEFAULT_MAX_EDGES {
        return Err(usage(format!("--edges must be in 1..={DEFAULT_MAX_EDGES}")));
    }
    if let Some((g, _)) = class {
        if g != edges {
            return Err(usage(format!("--class edge count {g} differs from --edges {edges}")));
        }
    }
    let run = enumerate_connected(edges, exec).map_err(limit_error)?;
    let keep = class.map(|(g, delta)| ClassKey { g, delta });
    let graphs: Vec<_> = run
        .graphs
        .iter()
        .filter(|e| keep.is_none_or(|k| e.class == k))
        .collect();
    #[derive(Serialize)]
    struct Row {
        graph6: String,
        p: usize,
        g: usize,
        delta: usize,
        pendant: usize,
    }
    let rows: Vec<Row> = graphs
        .iter()
        .map(|e| Row {
            graph6: e.code.to_string(),
            p: e.graph.p(),
            g: e.graph.g(),
            delta: e.class.delta,
            pendant: e.graph.pendant_vertices().len(),
        })
        .collect();
    Ok(match format {
        Format::Graph6 => rows.iter().map(|r| format!("{}\n", r.graph6)).collect(),
        Format::Text => rows
            .iter()
            .map(|r| format!("{} p={} g={} delta={}\n", r.graph6, r.p, r.g, r.delta))
            .collect(),
        Format::Dot => graphs
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let name = format!("G_{}_{}_{}", e.class.g, e.class.delta, i + 1);
                to_dot(&e.graph, &name)
            })
            .collect(),
        Format::Json => json(&rows)?,
        Format::Csv => csv_rows(&rows)?,
    })
}

fn read_graphs(input: &GraphInput) -> Result<Vec<Graph>, Failure> {
    if let Some(text) = &input.graph6 {
        return parse_graph6(text)
            .map(|g| vec![g])
            .map_err(|e| usage(format!("--graph6: {e}")));
    }
    let Some(path) = &input.input else {
        return Err(usage("one of --graph6 or --input is required"));
    };
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading stdin")?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    let mut graphs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let g = parse_graph6(line)
            .map_err(|e| usage(format!("{}:{}: {e}", path.display(), n + 1)))?;
        graphs.push(g);
    }
    if graphs.is_empty() {
        return Err(usage(format!("{}: no graphs", path.display())));
    }
    Ok(graphs)
}

fn cmd_charpoly(input: &GraphInput, format: Format) -> Result<String, Failure> {
    let graphs = read_graphs(input)?;
    #[derive(Serialize)]
    struct Row {
        graph6: String,
        g: usize,
        delta: usize,
        psi: String,
    }
    let mut rows = Vec::new();
    for g in &graphs {
        let psi = charpoly_psi(g).map_err(|e| Failure::Internal(e.into()))?;
        rows.push(Row {
            graph6: to_graph6(g),
            g: g.g(),
            delta: g.class_key().delta,
            psi: psi.to_string(),
        });
    }
    Ok(match format {
        Format::Text if input.graph6.is_some() => format!("{}\n", rows[0].psi),
        Format::Text => rows.iter().map(|r| format!("{}\t{}\n", r.graph6, r.psi)).collect(),
        Format::Json => json(&rows)?,
        Format::Csv => csv_rows(&rows)?,
        Format::Graph6 | Format::Dot => {
            return Err(usage("charpoly supports text, json and csv"));
        }
    })
}

fn cmd_spectrum(
    input: &GraphInput,
    length: f64,
    count: usize,
    format: Format,
) -> Result<String, Failure> {
    if !(length.is_finite() && length > 0.0) {
        return Err(usage("--length must be positive"));
    }
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let graphs = read_graphs(input)?;
    let [graph] = graphs.as_slice() else {
        return Err(usage("spectrum takes exactly one graph"));
    };
    let rep = eigenvalues(graph, length, count).map_err(|e| Failure::Internal(e.into()))?;
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&rep.to_json(15)).context("json")?;
            s.push('\n');
            s
        }
        Format::Csv => rep.to_csv(15),
        Format::Text => {
            let mut out = String::new();
            let mut n = 0;
            for e in &rep.eigenvalues {
                if n >= count {
                    break;
                }
                let families: Vec<String> = e.branches.iter().map(|b| b.family()).collect();
                for _ in 0..e.multiplicity.min(count - n) {
                    n += 1;
                    out.push_str(&format!("{n}\t{:.12}\t{}\n", e.lambda, families.join(",")));
                }
            }
            out
        }
        Format::Graph6 | Format::Dot => {
            return Err(usage("spectrum supports text, json and csv"));
        }
    })
}

fn cmd_scan(
    min_edges: usize,
    max_edges: usize,
    mode: Mode,
    format: Format,
    expect_none: bool,
    exec: &Exec,
) -> Result<Output, Failure> {
    if min_edges == 0 || min_edges > max_edges {
        return Err(usage(format!("invalid edge range {min_edges}..={max_edges}")));
    }
    if max_edges > DEFAULT_MAX_EDGES {
        return Err(usage(format!("--max-edges is limited to {DEFAULT_MAX_EDGES}")));
    }
    let report = scan(min_edges, max_edges, mode, exec).map_err(|e| Failure::Internal(e.into()))?;
    let text = match format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Csv => report.to_csv(),
        Format::Text => {
            let mut out = format!(
                "mode {} edges {}..={}: {} cospectral pairs\n",
                report.mode,
                min_edges,
                max_edges,
                report.pairs.len()
            );
            for p in &report.pairs {
                out.push_str(&format!(
                    "({},{}) {} {} shared {} psi {} | {}\n",
                    p.g, p.delta, p.a, p.b, p.signature, p.psi_a, p.psi_b
                ));
            }
            out
        }
        Format::Graph6 => report
            .pairs
            .iter()
            .map(|p| format!("{}\n{}\n", p.a, p.b))
            .collect(),
        Format::Dot => return Err(usage("scan supports text, json, csv and graph6")),
    };
    let status = if expect_none && !report.pairs.is_empty() {
        EXIT_PAIRS
    } else {
        0
    };
    Ok(Output { text, status })
}

fn cmd_verify_paper(format: Format, exec: &Exec) -> Result<String, Failure> {
    let report = verify_paper_tables(exec).map_err(|e| Failure::Internal(e.into()))?;
    Ok(match format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
        Format::Graph6 | Format::Dot => {
            return Err(usage("verify-paper supports text, json and csv"));
        }
    })
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).context("json")?;
    s.push('\n');
    Ok(s)
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).context("csv")?;
    }
    let bytes = w.into_inner().map_err(|e| anyhow::anyhow!("csv: {e}"))?;
    Ok(String::from_utf8(bytes).context("csv")?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).context("writing stdout")?;
            stdout.flush().context("writing stdout")?;
        }
    }
    Ok(())
}

fn cache_path(dir: &Path, command: &Command) -> PathBuf {
    let key = serde_json::to_string(command).expect("command serializes");
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION"));
    h.update(key);
    dir.join(format!("{}.out", hex::encode(h.finalize())))
}

fn read_cached(path: &Path) -> Result<Output, Failure> {
    let raw = std::fs::read_to_string(path)
        .with_context(|| format!("reading cache {}", path.display()))?;
    let (status, text) = raw
        .split_once('\n')
        .and_then(|(s, t)| Some((s.parse().ok()?, t.to_string())))
        .ok_or_else(|| anyhow::anyhow!("corrupt cache entry {}", path.display()))?;
    Ok(Output { text, status })
}

fn write_cached(path: &Path, output: &Output) -> Result<(), Failure> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, format!("{}\n{}", output.status, output.text))
        .with_context(|| format!("writing cache {}", path.display()))?;
    Ok(())
}
