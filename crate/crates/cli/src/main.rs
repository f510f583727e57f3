use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use glc_core::graph::{deserialize, serialize, to_dot, Graph};
use glc_core::moves::{find_matches_with, apply, Direction, MatchOptions, MoveKind};
use glc_core::predicates::{is_lambda_graph, is_planar_in_disk};
use glc_core::reduce::{reduce, run_demo, DemoSpec, Manifest, Strategy};
use glc_core::term::{encode, parse, FanoutPolicy, Term};

#[derive(Parser)]
#[command(name = "glc", version, about = "Graphic lambda calculus rewriting engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fanout {
    Right,
    Left,
    Balanced,
}

impl From<Fanout> for FanoutPolicy {
    fn from(f: Fanout) -> Self {
        match f {
            Fanout::Right => FanoutPolicy::RightComb,
            Fanout::Left => FanoutPolicy::LeftComb,
            Fanout::Balanced => FanoutPolicy::Balanced,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encode a term as a graph.
    Encode {
        term: String,
        /// Accept ε-operations `@{g}` and dilations `~{g}`.
        #[arg(long)]
        lambda_scale: bool,
        #[arg(long, value_enum, default_value = "right")]
        fanout: Fanout,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduce a graph file or a term.
    Reduce {
        input: String,
        /// Comma-separated move kinds in priority order. `prune` stands for
        /// every pruning move, `fanout` for global fan-out.
        #[arg(long)]
        moves: Option<String>,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Rewrite FanOut trees to right combs at the end.
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check global predicates. Without flags, checks both.
    Check {
        input: String,
        #[arg(long)]
        lambda_graph: bool,
        #[arg(long)]
        planar: bool,
    },
    /// Export a graph as DOT.
    Show {
        input: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Replay propositions from the demo manifest.
    Demo {
        #[arg(long, conflicts_with = "name")]
        all: bool,
        #[arg(long)]
        name: Option<String>,
        /// Use this manifest instead of the built-in one.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// List the matches of one move kind or apply a single match.
    Step {
        input: String,
        /// `<kind>:<match-index>`
        #[arg(long, conflicts_with = "list")]
        apply: Option<String>,
        #[arg(long)]
        list: Option<String>,
        /// Use the reverse direction of the move.
        #[arg(long)]
        reverse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Failures that map to exit code 1; everything else is a usage error.
#[derive(Debug)]
struct CheckFailed;

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("check failed")
    }
}

impl std::error::Error for CheckFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<CheckFailed>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn has_scale_ops(t: &Term) -> bool {
    match t {
        Term::Var(_) => false,
        Term::Lam(_, b) => has_scale_ops(b),
        Term::App(f, a) => has_scale_ops(f) || has_scale_ops(a),
        Term::Eps(..) | Term::Dil(..) => true,
    }
}

/// A graph file if `input` names one, otherwise a term to encode.
fn load(input: &str) -> Result<Graph> {
    if Path::new(input).is_file() {
        let text = fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
        return deserialize(&text).with_context(|| format!("parsing {input}"));
    }
    let t = parse(input).with_context(|| format!("`{input}` is neither a file nor a term"))?;
    Ok(encode(&t, FanoutPolicy::default()))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_moves(list: &str) -> Result<Vec<MoveKind>> {
    let mut kinds = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match name {
            "prune" => {
                kinds.extend(MoveKind::PRUNE_LOCAL);
                kinds.push(MoveKind::PruneGlobal);
            }
            "prune-local" => kinds.extend(MoveKind::PRUNE_LOCAL),
            "fanout" => kinds.push(MoveKind::FanOutGlobal),
            other => kinds.push(other.parse().map_err(|e: String| anyhow!(e))?),
        }
    }
    if kinds.is_empty() {
        bail!("empty move list");
    }
    Ok(kinds)
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Encode {
            term,
            lambda_scale,
            fanout,
            output,
        } => {
            let t = parse(&term)?;
            if has_scale_ops(&t) && !lambda_scale {
                bail!("term uses ε-operations; pass --lambda-scale");
            }
            emit(&serialize(&encode(&t, fanout.into())), output.as_deref())
        }
        Command::Reduce {
            input,
            moves,
            budget,
            normalize,
            trace,
            output,
        } => {
            let g = load(&input)?;
            let mut s = match moves {
                Some(m) => Strategy::new(&parse_moves(&m)?, budget),
                None => Strategy {
                    budget,
                    ..Strategy::default()
                },
            };
            s.normalize_after = normalize;
            let (h, t) = reduce(&g, &s);
            if let Some(p) = trace {
                fs::write(&p, t.to_text()).with_context(|| format!("writing {}", p.display()))?;
            }
            eprintln!(
                "{} steps{}",
                t.len(),
                if t.budget_exhausted { ", budget exhausted" } else { "" }
            );
            emit(&serialize(&h), output.as_deref())
        }
        Command::Check {
            input,
            lambda_graph,
            planar,
        } => {
            let g = load(&input)?;
            let (lambda_graph, planar) = if lambda_graph || planar {
                (lambda_graph, planar)
            } else {
                (true, true)
            };
            let mut ok = true;
            match g.validate() {
                Ok(()) => println!("valid: yes"),
                Err(v) => {
                    ok = false;
                    println!("valid: no ({} violations)", v.len());
                }
            }
            if lambda_graph {
                match is_lambda_graph(&g) {
                    Ok(()) => println!("lambda-graph: yes"),
                    Err(w) => {
                        ok = false;
                        println!("lambda-graph: no ({w})");
                    }
                }
            }
            if planar {
                let (yes, faces) = is_planar_in_disk(&g);
                ok &= yes;
                println!(
                    "planar-disk: {} (genus {}, leaves on one face: {})",
                    if yes { "yes" } else { "no" },
                    faces.genus,
                    if faces.leaves_on_one_face { "yes" } else { "no" }
                );
            }
            if ok {
                Ok(())
            } else {
                Err(CheckFailed.into())
            }
        }
        Command::Show { input, dot } => emit(&to_dot(&load(&input)?), dot.as_deref()),
        Command::Demo {
            all,
            name,
            manifest,
        } => {
            let m = match manifest {
                Some(p) => {
                    let text = fs::read_to_string(&p)
                        .with_context(|| format!("reading {}", p.display()))?;
                    Manifest::parse(&text).with_context(|| format!("parsing {}", p.display()))?
                }
                None => Manifest::default_manifest(),
            };
            let specs: Vec<&DemoSpec> = match (all, name) {
                (_, Some(n)) => {
                    let s = m.by_name(&n);
                    if s.is_empty() {
                        bail!("unknown demo `{n}` (known: {})", m.names().join(", "));
                    }
                    s
                }
                (true, None) => m.demos.iter().collect(),
                (false, None) => bail!("pass --all or --name <demo>"),
            };
            let mut ok = true;
            for spec in specs {
                let out = run_demo(spec)?;
                ok &= out.ok();
                let tag = if spec.derived { " (derived)" } else { "" };
                println!("{}: {out}{tag}", spec.label());
            }
            if ok {
                Ok(())
            } else {
                Err(CheckFailed.into())
            }
        }
        Command::Step {
            input,
            apply: target,
            list,
            reverse,
            output,
        } => {
            let g = load(&input)?;
            let dir = if reverse {
                Direction::Reverse
            } else {
                Direction::Forward
            };
            let opts = MatchOptions { reverse_beta: true };
            if let Some(kind) = list {
                let kind: MoveKind = kind.parse().map_err(|e: String| anyhow!(e))?;
                for (i, m) in find_matches_with(&g, kind, dir, &opts).iter().enumerate() {
                    println!("{i} {m}");
                }
                return Ok(());
            }
            let Some(target) = target else {
                bail!("pass --list <kind> or --apply <kind>:<index>");
            };
            let (kind, idx) = target
                .rsplit_once(':')
                .ok_or_else(|| anyhow!("expected <kind>:<index>, got `{target}`"))?;
            let kind: MoveKind = kind.parse().map_err(|e: String| anyhow!(e))?;
            let idx: usize = idx.parse().with_context(|| format!("bad index `{idx}`"))?;
            let matches = find_matches_with(&g, kind, dir, &opts);
            let m = matches
                .get(idx)
                .ok_or_else(|| anyhow!("{kind} has {} matches, no index {idx}", matches.len()))?;
            let h = apply(&g, m)?;
            emit(&serialize(&h), output.as_deref())
        }
    }
}
