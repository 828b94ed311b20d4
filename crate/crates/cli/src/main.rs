use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vsg_core::group::{abelianization, count_homs, tietze_simplify, wirtinger, FiniteGroupTable};
use vsg_core::links::{bracket_with, enumerate_replacements, f_poly, link_of, linking_numbers};
use vsg_core::moves::{
    apply_move_with_inverse, enumerate_moves_with, normalize_forbidden, search_equivalent, EnumerateOptions,
    Forbidden, Level, MoveSet, MoveSite, Outcome, SearchBudget,
};
use vsg_core::quandle::{count_colorings_with, gcd_valence, FiniteVQS, DEFAULT_COLORING_BUDGET};
use vsg_core::realize::{extract_code, realize_variant, render_svg, PlanarDiagram};
use vsg_core::yamada::{normalize, yamada_with, YamadaOptions};
use vsg_core::VsgCode;

#[derive(Parser)]
#[command(name = "vsg", version, about = "Virtual spatial graph codes, moves and invariants")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Worker threads for parallel computations.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a code against every structural rule.
    Validate { code: PathBuf },
    /// Realize a code as a planar diagram with virtual crossings.
    Realize {
        code: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Pick another gadget placement.
        #[arg(long, default_value_t = 0)]
        variant: u64,
    },
    /// Read the code back from a planar diagram.
    Gauss { diagram: PathBuf },
    /// Yamada polynomial R, or its normalization.
    Yamada {
        code: PathBuf,
        #[arg(long)]
        normalized: bool,
        #[arg(long, default_value_t = 14)]
        max_crossings: usize,
    },
    /// Group presentation and derived invariants.
    Group {
        code: PathBuf,
        #[arg(long)]
        simplify: bool,
        #[arg(long)]
        abelianize: bool,
        /// Group table file or builtin name (trivial, Z<n>, S<n>); repeatable.
        #[arg(long)]
        homs: Vec<String>,
    },
    /// Count colorings by a finite virtual quandle structure.
    Quandle {
        code: PathBuf,
        /// Structure file or shipped name.
        #[arg(long)]
        structure: String,
        #[arg(long, default_value_t = DEFAULT_COLORING_BUDGET)]
        max_nodes: u64,
    },
    /// The links of every vertex replacement choice.
    Tg {
        code: PathBuf,
        #[arg(long)]
        linking: bool,
        #[arg(long)]
        bracket: bool,
        #[arg(long, default_value_t = 14)]
        max_crossings: usize,
    },
    /// List or apply move sites.
    Moves {
        #[command(subcommand)]
        action: MovesAction,
    },
    /// Remove what the forbidden moves can remove.
    Normalize {
        code: PathBuf,
        #[arg(long, value_parser = ["viii", "pliable"])]
        forbidden: String,
    },
    /// Look for a move sequence between two codes.
    Search {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        max_crossings: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_states: usize,
        #[command(flatten)]
        moves: MoveOpts,
    },
}

#[derive(Subcommand)]
enum MovesAction {
    List {
        code: PathBuf,
        #[command(flatten)]
        moves: MoveOpts,
        /// Crossing bound for insertions.
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        /// Reductions and rewrites only.
        #[arg(long)]
        no_insertions: bool,
    },
    Apply {
        code: PathBuf,
        /// Site as inline JSON or a file path.
        #[arg(long)]
        site: String,
        #[command(flatten)]
        moves: MoveOpts,
    },
}

#[derive(Args)]
struct MoveOpts {
    /// Allow the pliable move (VI).
    #[arg(long)]
    pliable: bool,
    /// Forbidden moves to allow, e.g. vi*,vii*,viii*.
    #[arg(long, value_delimiter = ',')]
    allow: Vec<String>,
}

impl MoveOpts {
    fn moveset(&self) -> anyhow::Result<MoveSet> {
        let base = if self.pliable { MoveSet::pliable() } else { MoveSet::rigid() };
        let forbidden = self
            .allow
            .iter()
            .map(|s| Forbidden::from_str(s).map_err(|e| anyhow!(invalid(format!("--allow {s}: {e}")))))
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(base.with_forbidden(forbidden))
    }
}

/// Exit status 3: the search ran out of budget without an answer.
#[derive(Debug)]
struct Exhausted;

impl std::fmt::Display for Exhausted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "search exhausted its budget without deciding")
    }
}

impl std::error::Error for Exhausted {}

fn invalid(msg: String) -> vsg_core::Error {
    vsg_core::Error::Parse(msg)
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| anyhow!(invalid(format!("{}: {e}", path.display()))))
}

fn read_code(path: &Path) -> anyhow::Result<VsgCode> {
    let code = VsgCode::from_json(&read(path)?).with_context(|| path.display().to_string())?;
    let report = code.validate();
    if !report.ok {
        return Err(anyhow!(vsg_core::Error::Invalid(report))).with_context(|| path.display().to_string());
    }
    Ok(code)
}

fn code_value(code: &VsgCode) -> Value {
    serde_json::from_str(&code.to_canonical_json()).expect("canonical JSON parses")
}

fn load_group(arg: &str) -> anyhow::Result<FiniteGroupTable> {
    if let Some(g) = FiniteGroupTable::builtin(arg) {
        return Ok(g);
    }
    Ok(FiniteGroupTable::from_json(&read(Path::new(arg))?)?)
}

fn load_structure(arg: &str) -> anyhow::Result<FiniteVQS> {
    if let Some(s) = FiniteVQS::builtin(arg) {
        return Ok(s);
    }
    Ok(FiniteVQS::from_json(&read(Path::new(arg))?)?)
}

fn load_site(arg: &str) -> anyhow::Result<MoveSite> {
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read(Path::new(arg))? };
    Ok(MoveSite::from_json(&text)?)
}

/// Output text and whether the command succeeded.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn pick(format: Format, value: Value, text: String) -> Self {
        let text = match format {
            Format::Json => value.to_string(),
            Format::Text => text,
        };
        Output { text, ok: true }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Output> {
    let format = cli.format;
    Ok(match &cli.command {
        Command::Validate { code } => {
            let parsed = VsgCode::from_json(&read(code)?)?;
            let report = parsed.validate();
            let mut out = Output::pick(format, serde_json::to_value(&report)?, report.to_string());
            out.ok = report.ok;
            out
        }
        Command::Realize {
            code,
            svg,
            out,
            variant,
        } => {
            let d = realize_variant(&read_code(code)?, *variant)?;
            if let Some(p) = svg {
                fs::write(p, render_svg(&d)).with_context(|| p.display().to_string())?;
            }
            let summary = json!({
                "gadgets": d.gadgets.len(),
                "classical": d.classical_count(),
                "virtual": d.virtual_count(),
            });
            match out {
                Some(p) => {
                    fs::write(p, d.to_json() + "\n").with_context(|| p.display().to_string())?;
                    let text = format!("classical {}\nvirtual {}", d.classical_count(), d.virtual_count());
                    Output::pick(format, summary, text)
                }
                None => Output {
                    text: d.to_json(),
                    ok: true,
                },
            }
        }
        Command::Gauss { diagram } => {
            let code = extract_code(&PlanarDiagram::from_json(&read(diagram)?)?)?;
            Output {
                text: code.to_canonical_json(),
                ok: true,
            }
        }
        Command::Yamada {
            code,
            normalized,
            max_crossings,
        } => {
            let code = read_code(code)?;
            let r = yamada_with(
                &code,
                YamadaOptions {
                    max_crossings: *max_crossings,
                },
            )?;
            if *normalized {
                let n = normalize(&r)?;
                Output::pick(format, json!({"yamada": r.to_string(), "normalized": n.to_string()}), n.to_string())
            } else {
                Output::pick(format, json!({"yamada": r.to_string()}), r.to_string())
            }
        }
        Command::Group {
            code,
            simplify,
            abelianize,
            homs,
        } => {
            let mut p = wirtinger(&read_code(code)?)?;
            if *simplify {
                p = tietze_simplify(&p);
            }
            let mut value = json!({
                "generators": p.generators,
                "relators": p.relators.iter().map(|r| p.word_text(r)).collect::<Vec<_>>(),
            });
            let mut text = p.to_text().trim_end().to_string();
            if *abelianize {
                let ab = abelianization(&p);
                value["abelianization"] = serde_json::to_value(&ab)?;
                text += &format!("\nabelianization: {ab}");
            }
            if !homs.is_empty() {
                let mut counts = serde_json::Map::new();
                for arg in homs {
                    let g = load_group(arg)?;
                    let n = count_homs(&p, &g)?;
                    text += &format!("\nhoms {}: {n}", g.name);
                    counts.insert(g.name.clone(), json!(n));
                }
                value["homs"] = Value::Object(counts);
            }
            Output::pick(format, value, text)
        }
        Command::Quandle {
            code,
            structure,
            max_nodes,
        } => {
            let code = read_code(code)?;
            let s = load_structure(structure)?;
            let d = realize_variant(&code, 0)?;
            let n = count_colorings_with(&d, &s, *max_nodes)?;
            let value = json!({
                "structure": s.name,
                "valence_gcd": gcd_valence(&code)?,
                "colorings": n,
            });
            Output::pick(format, value, n.to_string())
        }
        Command::Tg {
            code,
            linking,
            bracket,
            max_crossings,
        } => {
            let code = read_code(code)?;
            let choices = enumerate_replacements(&code)?;
            let mut rows = Vec::new();
            let mut header = vec!["choice", "components", "crossings"];
            if *linking {
                header.push("linking");
            }
            if *bracket {
                header.extend(["bracket", "f"]);
            }
            let mut lines = vec![header.join("\t")];
            for (i, c) in choices.iter().enumerate() {
                let link = link_of(&code, c)?.canonical();
                let mut row = json!({
                    "choice": i,
                    "replacements": c,
                    "link": link,
                });
                let mut line = vec![i.to_string(), link.components.len().to_string(), link.crossing_count().to_string()];
                if *linking {
                    let lk = linking_numbers(&link);
                    line.push(lk.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(","));
                    row["linking"] = serde_json::to_value(&lk)?;
                }
                if *bracket {
                    let b = bracket_with(&link, *max_crossings)?;
                    let f = f_poly(&link)?;
                    line.push(b.to_string());
                    line.push(f.to_string());
                    row["bracket"] = json!(b.to_string());
                    row["f"] = json!(f.to_string());
                }
                lines.push(line.join("\t"));
                rows.push(row);
            }
            Output::pick(format, json!({"count": choices.len(), "links": rows}), lines.join("\n"))
        }
        Command::Moves { action } => match action {
            MovesAction::List {
                code,
                moves,
                max_crossings,
                no_insertions,
            } => {
                let code = read_code(code)?;
                let sites = enumerate_moves_with(
                    &code,
                    &moves.moveset()?,
                    EnumerateOptions {
                        max_crossings: *max_crossings,
                        insertions: !no_insertions,
                    },
                );
                let text = sites.iter().map(|s| s.to_json()).collect::<Vec<_>>().join("\n");
                Output::pick(format, serde_json::to_value(&sites)?, text)
            }
            MovesAction::Apply { code, site, moves } => {
                let code = read_code(code)?;
                let site = load_site(site)?;
                let (next, inverse) = apply_move_with_inverse(&code, &site, &moves.moveset()?)?;
                let value = json!({"code": code_value(&next), "inverse": serde_json::to_value(&inverse)?});
                Output::pick(format, value, next.to_canonical_json())
            }
        },
        Command::Normalize { code, forbidden } => {
            let level = if forbidden == "viii" { Level::RigidViii } else { Level::PliableAll };
            let out = normalize_forbidden(&read_code(code)?, level)?;
            Output {
                text: out.to_canonical_json(),
                ok: true,
            }
        }
        Command::Search {
            a,
            b,
            max_crossings,
            max_states,
            moves,
        } => {
            let (a, b) = (read_code(a)?, read_code(b)?);
            let budget = SearchBudget {
                max_crossings: *max_crossings,
                max_states: *max_states,
            };
            let verdict = search_equivalent(&a, &b, budget, &moves.moveset()?)?;
            let text = match &verdict.witness {
                Some(w) => {
                    let mut lines = vec![format!("equivalent in {} moves", w.len())];
                    lines.extend(w.iter().map(|s| s.to_json()));
                    lines.join("\n")
                }
                None => format!("exhausted after {} states", verdict.stats.states_visited),
            };
            let out = Output::pick(format, serde_json::to_value(&verdict)?, text);
            if verdict.outcome == Outcome::Exhausted {
                println!("{}", out.text);
                return Err(anyhow!(Exhausted));
            }
            out
        }
    })
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Exhausted>().is_some() {
        return 3;
    }
    match e.downcast_ref::<vsg_core::Error>() {
        Some(vsg_core::Error::Budget { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    // usage errors exit 1 like any other invalid input; 2 means budget
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
