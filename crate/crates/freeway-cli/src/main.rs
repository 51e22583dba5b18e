//! Command-line surface over the gadget builders, searches and reports.
//!
//! Exit codes: 0 success or pass, 1 usage or input error, 2 verification
//! failure, 3 "not found / not decodable" for search and decode verbs.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use freeway::bits::BitString;
use freeway::bridge::{
    bridge, bridge_chain, complete_graph, cycle_graph, dead_end, drive_through, path_graph,
};
use freeway::codec::{decode_bridge_bits, decode_girth_bits, fingerprint};
use freeway::girth::{girth_chain, pentagon, pentagon_tower, TowerLayout};
use freeway::graph::{Graph, RoleKind, VertexId};
use freeway::rigidity::{augmentation_sweep, RigidityError};
use freeway::search::{find_embedding, girth, highways, short_cycle};
use freeway::theorems::{bridge_theorem_report, girth_theorem_report, triangle_merge};
use freeway::{io as gio, Format};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_VERIFICATION: u8 = 2;
const EXIT_NOT_FOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "freeway", version, about = "Graph gadget construction and verification workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a single gadget and emit it.
    Gadget(GadgetArgs),
    /// Build one member of a bit-indexed gadget family.
    Family(FamilyArgs),
    /// Search a host graph for a pattern embedding.
    Find(FindArgs),
    /// Compute the girth, or search for a short cycle witness.
    Girth(GirthArgs),
    /// Decompose a host into its maximal highways.
    Highways(HighwaysArgs),
    /// Recover the encoded bits from a chain.
    Decode(DecodeArgs),
    /// Compute the structural fingerprint of a chain.
    Fingerprint(FingerprintArgs),
    /// Run an exhaustive augmentation sweep against a gadget.
    Rigidity(RigidityArgs),
    /// Merge two girth chains and report the forced triangle, if any.
    MergeDemo(MergeDemoArgs),
    /// Run a full family verification report.
    Demo(DemoArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetKind {
    Complete,
    Path,
    Cycle,
    Bridge,
    DeadEnd,
    DriveThrough,
    Pentagon,
    Tower,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Dot,
    Edgelist,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Format {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Dot => Format::Dot,
            OutputFormat::Edgelist => Format::EdgeList,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Json,
    Edgelist,
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(long, value_enum)]
    kind: GadgetKind,
    /// Size parameter for complete/path/cycle graphs.
    #[arg(long)]
    m: Option<usize>,
    /// Bridge parameter for bridge, dead-end and drive-through.
    #[arg(long)]
    n: Option<usize>,
    /// Side length parameter for pentagon and tower.
    #[arg(long)]
    k: Option<usize>,
    /// Number of glued levels for the tower.
    #[arg(long, default_value_t = 0)]
    levels: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Relabel the result by a pseudorandom permutation with this seed.
    #[arg(long, conflicts_with = "layout_out")]
    seed: Option<u64>,
    /// Write the gadget here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the tower layout sidecar (tower only).
    #[arg(long)]
    layout_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyType {
    Bridge,
    Girth,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long = "type", value_enum)]
    family: FamilyType,
    /// Bridge parameter (bridge family).
    #[arg(long)]
    n: Option<usize>,
    /// Side length parameter (girth family).
    #[arg(long)]
    k: Option<usize>,
    /// Tower levels (girth family).
    #[arg(long, default_value_t = 4)]
    levels: usize,
    /// The member's index: a binary string such as 0110 (may be empty).
    #[arg(long, default_value = "")]
    bits: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[arg(long, conflicts_with = "layout_out")]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the role-name-to-id layout sidecar.
    #[arg(long)]
    layout_out: Option<PathBuf>,
}

#[derive(Args)]
struct FindArgs {
    /// Built-in pattern kind; alternative to --pattern-file.
    #[arg(long, value_enum, conflicts_with = "pattern_file")]
    pattern: Option<GadgetKind>,
    /// Read the pattern from a graph file instead.
    #[arg(long)]
    pattern_file: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    levels: usize,
    /// Host graph file; "-" reads standard input.
    #[arg(long)]
    host: PathBuf,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    /// Require an induced embedding (non-induced is the default notion).
    #[arg(long)]
    induced: bool,
    /// Pins as comma-separated pattern:host id pairs, e.g. 0:3,1:5.
    #[arg(long, default_value = "")]
    pins: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GirthArgs {
    #[arg(long)]
    host: PathBuf,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    /// Search for a witness cycle of at most this length instead.
    #[arg(long)]
    at_most: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HighwaysArgs {
    #[arg(long)]
    host: PathBuf,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecodeType {
    Bridge,
    Girth,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long = "type", value_enum, default_value_t = DecodeType::Bridge)]
    decode_type: DecodeType,
    #[arg(long)]
    host: PathBuf,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    /// Bridge parameter (bridge decoding).
    #[arg(long)]
    n: Option<usize>,
    /// Layout sidecar written by `family --type girth` (girth decoding).
    #[arg(long)]
    layout: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FingerprintArgs {
    #[arg(long)]
    host: PathBuf,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RigidityGadget {
    DeadEnd,
    DriveThrough,
    Chain,
}

#[derive(Args)]
struct RigidityArgs {
    /// Built-in gadget with its designated exempt set.
    #[arg(long, value_enum, conflicts_with_all = ["host", "exempt"])]
    gadget: Option<RigidityGadget>,
    #[arg(long)]
    n: usize,
    /// Chain member bits (chain gadget only).
    #[arg(long, default_value = "")]
    bits: String,
    /// Arbitrary host graph file.
    #[arg(long)]
    host: Option<PathBuf>,
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    /// Exempt vertex ids, comma separated (with --host).
    #[arg(long, default_value = "")]
    exempt: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MergeDemoArgs {
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 4)]
    levels: usize,
    #[arg(long)]
    bits_a: String,
    #[arg(long)]
    bits_b: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long = "type", value_enum)]
    family: FamilyType,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 4)]
    levels: usize,
    /// Bit-string length L; all 2^L members are built and verified.
    #[arg(long)]
    length: usize,
    /// Worker threads for member verification (results merge in fixed order).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn read_graph(path: &Path, format: Option<InputFormat>) -> Result<Graph> {
    let text = read_input(path)?;
    let format = match format {
        Some(InputFormat::Json) => Format::Json,
        Some(InputFormat::Edgelist) => Format::EdgeList,
        None => {
            // Sniff: JSON documents start with '{'.
            if text.trim_start().starts_with('{') {
                Format::Json
            } else {
                Format::EdgeList
            }
        }
    };
    gio::parse(&text, format).map_err(|e| anyhow!("parsing {}: {e}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serialization");
    text.push('\n');
    text
}

fn parse_bits(text: &str) -> Result<BitString> {
    text.parse::<BitString>()
        .map_err(|e| anyhow!("invalid --bits: {e}"))
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("missing required argument {flag}"))
}

fn build_gadget(
    kind: GadgetKind,
    m: Option<usize>,
    n: Option<usize>,
    k: Option<usize>,
    levels: usize,
) -> Result<(Graph, Option<TowerLayout>)> {
    let graph = match kind {
        GadgetKind::Complete => (complete_graph(require(m, "--m")?)?, None),
        GadgetKind::Path => (path_graph(require(m, "--m")?)?, None),
        GadgetKind::Cycle => (cycle_graph(require(m, "--m")?)?, None),
        GadgetKind::Bridge => (bridge(require(n, "--n")?)?, None),
        GadgetKind::DeadEnd => (dead_end(require(n, "--n")?)?, None),
        GadgetKind::DriveThrough => (drive_through(require(n, "--n")?)?, None),
        GadgetKind::Pentagon => (pentagon(require(k, "--k")?)?, None),
        GadgetKind::Tower => {
            let (g, layout) = pentagon_tower(require(k, "--k")?, levels)?;
            (g, Some(layout))
        }
    };
    Ok(graph)
}

fn parse_pins(text: &str) -> Result<Vec<(VertexId, VertexId)>> {
    let mut pins = Vec::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (p, h) = part
            .split_once(':')
            .ok_or_else(|| anyhow!("pin {part:?} is not of the form pattern:host"))?;
        let p: usize = p.trim().parse().context("pin pattern id")?;
        let h: usize = h.trim().parse().context("pin host id")?;
        pins.push((VertexId(p), VertexId(h)));
    }
    Ok(pins)
}

fn parse_exempt(text: &str) -> Result<Vec<VertexId>> {
    text.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map(VertexId)
                .map_err(|_| anyhow!("invalid exempt vertex id {p:?}"))
        })
        .collect()
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gadget(args) => {
            let (graph, layout) = build_gadget(args.kind, args.m, args.n, args.k, args.levels)?;
            let graph = match args.seed {
                Some(seed) => graph.relabel(seed),
                None => graph,
            };
            if let (Some(path), Some(layout)) = (&args.layout_out, &layout) {
                write_output(Some(path), &json_line(layout))?;
            }
            write_output(args.out.as_deref(), &gio::serialize(&graph, args.format.into()))?;
            Ok(EXIT_OK)
        }
        Command::Family(args) => {
            let bits = parse_bits(&args.bits)?;
            match args.family {
                FamilyType::Bridge => {
                    let n = require(args.n, "--n")?;
                    let (graph, layout) = bridge_chain(n, &bits)?;
                    if let Some(path) = &args.layout_out {
                        write_output(Some(path), &json_line(&layout))?;
                    }
                    let graph = match args.seed {
                        Some(seed) => graph.relabel(seed),
                        None => graph,
                    };
                    write_output(args.out.as_deref(), &gio::serialize(&graph, args.format.into()))?;
                }
                FamilyType::Girth => {
                    let k = require(args.k, "--k")?;
                    let (graph, layout) = girth_chain(k, args.levels, &bits)?;
                    if let Some(path) = &args.layout_out {
                        write_output(Some(path), &json_line(&layout))?;
                    }
                    let graph = match args.seed {
                        Some(seed) => graph.relabel(seed),
                        None => graph,
                    };
                    write_output(args.out.as_deref(), &gio::serialize(&graph, args.format.into()))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Find(args) => {
            let pattern = match (&args.pattern, &args.pattern_file) {
                (Some(kind), None) => {
                    build_gadget(*kind, args.m, args.n, args.k, args.levels)?.0
                }
                (None, Some(path)) => read_graph(path, args.input_format)?,
                _ => bail!("exactly one of --pattern and --pattern-file is required"),
            };
            let host = read_graph(&args.host, args.input_format)?;
            let pins = parse_pins(&args.pins)?;
            match find_embedding(&pattern, &host, args.induced, &pins)
                .map_err(|e| anyhow!("{e}"))?
            {
                Some(embedding) => {
                    write_output(args.out.as_deref(), &json_line(&embedding))?;
                    Ok(EXIT_OK)
                }
                None => {
                    write_output(args.out.as_deref(), "free\n")?;
                    Ok(EXIT_NOT_FOUND)
                }
            }
        }
        Command::Girth(args) => {
            let host = read_graph(&args.host, args.input_format)?;
            match args.at_most {
                Some(bound) => match short_cycle(&host, bound).map_err(|e| anyhow!("{e}"))? {
                    Some(cycle) => {
                        write_output(args.out.as_deref(), &json_line(&cycle))?;
                        Ok(EXIT_OK)
                    }
                    None => {
                        write_output(args.out.as_deref(), "none\n")?;
                        Ok(EXIT_NOT_FOUND)
                    }
                },
                None => {
                    let text = match girth(&host) {
                        Some(g) => format!("{g}\n"),
                        None => "acyclic\n".to_string(),
                    };
                    write_output(args.out.as_deref(), &text)?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Highways(args) => {
            let host = read_graph(&args.host, args.input_format)?;
            write_output(args.out.as_deref(), &json_line(&highways(&host)))?;
            Ok(EXIT_OK)
        }
        Command::Decode(args) => {
            let host = read_graph(&args.host, args.input_format)?;
            let decoded = match args.decode_type {
                DecodeType::Bridge => decode_bridge_bits(&host, require(args.n, "--n")?),
                DecodeType::Girth => {
                    let layout_path = require(args.layout, "--layout")?;
                    let layout: TowerLayout =
                        serde_json::from_str(&read_input(&layout_path)?)
                            .context("parsing layout sidecar")?;
                    decode_girth_bits(&host, &layout)
                }
            };
            match decoded {
                Ok(bits) => {
                    write_output(args.out.as_deref(), &format!("{bits}\n"))?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    eprintln!("not decodable: {e}");
                    Ok(EXIT_NOT_FOUND)
                }
            }
        }
        Command::Fingerprint(args) => {
            let host = read_graph(&args.host, args.input_format)?;
            match fingerprint(&host, args.n) {
                Ok(print) => {
                    write_output(args.out.as_deref(), &json_line(&print))?;
                    Ok(EXIT_OK)
                }
                Err(e) => {
                    eprintln!("not decodable: {e}");
                    Ok(EXIT_NOT_FOUND)
                }
            }
        }
        Command::Rigidity(args) => {
            let (graph, exempt, label) = match args.gadget {
                Some(RigidityGadget::DeadEnd) => {
                    let g = dead_end(args.n)?;
                    let tip = g
                        .find_by_role(RoleKind::PathP, &[args.n as u32 + 1])
                        .expect("dead ends have a path tip");
                    (g, vec![tip], format!("dead_end({})", args.n))
                }
                Some(RigidityGadget::DriveThrough) => {
                    let g = drive_through(args.n)?;
                    let l = g.find_by_role(RoleKind::ExitLeft, &[]).expect("left exit");
                    let r = g.find_by_role(RoleKind::ExitRight, &[]).expect("right exit");
                    (g, vec![l, r], format!("drive_through({})", args.n))
                }
                Some(RigidityGadget::Chain) => {
                    let bits = parse_bits(&args.bits)?;
                    let (g, layout) = bridge_chain(args.n, &bits)?;
                    (
                        g,
                        vec![layout.last_right_exit()],
                        format!("bridge_chain({},\"{bits}\")", args.n),
                    )
                }
                None => {
                    let host_path = require(args.host.as_deref(), "--host")?;
                    let g = read_graph(host_path, args.input_format)?;
                    let exempt = parse_exempt(&args.exempt)?;
                    (g, exempt, host_path.display().to_string())
                }
            };
            match augmentation_sweep(&graph, args.n, &exempt, label) {
                Ok(report) => {
                    let code = if report.pass { EXIT_OK } else { EXIT_VERIFICATION };
                    write_output(args.out.as_deref(), &json_line(&report))?;
                    Ok(code)
                }
                Err(RigidityError::NotFree { witness }) => {
                    eprintln!("input is not bridge-free; witness: {}", json_line(&witness));
                    Ok(EXIT_INPUT)
                }
                Err(e) => Err(anyhow!("{e}")),
            }
        }
        Command::MergeDemo(args) => {
            let a = parse_bits(&args.bits_a)?;
            let b = parse_bits(&args.bits_b)?;
            let outcome = triangle_merge(args.k, args.levels, &a, &b)?;
            match &outcome.witness {
                Some(witness) => write_output(args.out.as_deref(), &json_line(witness))?,
                None => write_output(args.out.as_deref(), "none\n")?,
            }
            Ok(EXIT_OK)
        }
        Command::Demo(args) => {
            let (text, pass) = match args.family {
                FamilyType::Bridge => {
                    let n = require(args.n, "--n")?;
                    let report = bridge_theorem_report(n, args.length, args.jobs)?;
                    (json_line(&report), report.pass)
                }
                FamilyType::Girth => {
                    let k = require(args.k, "--k")?;
                    let report = girth_theorem_report(k, args.levels, args.length, args.jobs)?;
                    (json_line(&report), report.pass)
                }
            };
            write_output(args.out.as_deref(), &text)?;
            Ok(if pass { EXIT_OK } else { EXIT_VERIFICATION })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not errors; anything else is usage.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
