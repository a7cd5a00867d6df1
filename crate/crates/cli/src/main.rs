use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use hqviz_core::bench;
use hqviz_core::config::Config;
use hqviz_core::hierarchy::{ingest, Format, Hierarchy};
use hqviz_core::layout::{layout, LayoutKind};
use hqviz_core::navigation::{focus_window, ViewWindow};
use hqviz_core::par::Execution;
use hqviz_core::scene::{serialize_scene, SceneBuilder};
use hqviz_core::style::TagSet;
use hqviz_core::svg::render_svg;
use hqviz_core::NodeId;

#[derive(Parser)]
#[command(name = "hqviz", version, about = "Lay out, render and benchmark quantitative hierarchies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render one view of a hierarchy to SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        /// folded, json or csv; inferred from the extension when omitted.
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        kind: Option<LayoutKind>,
        /// Node to zoom to, as `;`-separated names below the root.
        #[arg(long)]
        focus: Option<String>,
        /// Tag a node (same syntax as --focus); repeatable.
        #[arg(long = "tag")]
        tags: Vec<String>,
        #[arg(long)]
        out: PathBuf,
        /// Also write the binary scene buffer.
        #[arg(long)]
        scene: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print node, leaf and level counts.
    Stats {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        json: bool,
    },
    /// Time layout and per-frame work on a seeded synthetic tree.
    Bench {
        #[arg(long, default_value_t = 50_000)]
        nodes: usize,
        #[arg(long, default_value_t = 15)]
        levels: usize,
        #[arg(long, default_value = "icicle")]
        kind: LayoutKind,
        #[arg(long, default_value_t = 30)]
        iters: usize,
        /// Run the frame work on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        json: bool,
    },
}

fn read_hierarchy(path: &Path, format: Option<Format>) -> Result<Hierarchy> {
    let format = match format {
        Some(f) => f,
        None => path
            .extension()
            .and_then(|e| e.to_str())
            .and_then(Format::from_extension)
            .with_context(|| format!("cannot infer the format of {}; pass --format", path.display()))?,
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    ingest(&text, format).with_context(|| format!("parsing {}", path.display()))
}

fn resolve(h: &Hierarchy, path: &str) -> Result<NodeId> {
    let names: Vec<&str> = path.split(';').filter(|s| !s.is_empty()).collect();
    match h.find_path(&names) {
        Some(id) => Ok(id),
        None => bail!("no node at path {path:?}"),
    }
}

#[allow(clippy::too_many_arguments)]
fn render(
    input: &Path,
    format: Option<Format>,
    kind: Option<LayoutKind>,
    focus: Option<&str>,
    tags: &[String],
    out: &Path,
    scene_out: Option<&Path>,
    config: Option<&Path>,
) -> Result<()> {
    let cfg = match config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let kind = kind.or(cfg.kind).unwrap_or(LayoutKind::Icicle);
    let h = read_hierarchy(input, format)?;
    let l = layout(&h, kind, &cfg.layout_params(kind))?;
    let window = match focus {
        Some(p) => focus_window(&l, resolve(&h, p)?, &cfg.nav())?,
        None => ViewWindow::full(kind),
    };
    let tags = tags.iter().map(|t| resolve(&h, t)).collect::<Result<TagSet>>()?;
    let scene = SceneBuilder::new(&h, &l, &cfg, cfg.viewport)?.build(&window, &tags, Execution::default())?;
    fs::write(out, render_svg(&scene)).with_context(|| format!("writing {}", out.display()))?;
    if let Some(p) = scene_out {
        fs::write(p, serialize_scene(&scene)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Render {
            input,
            format,
            kind,
            focus,
            tags,
            out,
            scene,
            config,
        } => render(
            &input,
            format,
            kind,
            focus.as_deref(),
            &tags,
            &out,
            scene.as_deref(),
            config.as_deref(),
        ),
        Command::Stats { input, format, json } => {
            let s = read_hierarchy(&input, format)?.stats();
            if json {
                let v = serde_json::json!({
                    "nodes": s.node_count,
                    "leaves": s.leaf_count,
                    "levels": s.depth_levels,
                });
                println!("{v}");
            } else {
                println!("nodes   {}\nleaves  {}\nlevels  {}", s.node_count, s.leaf_count, s.depth_levels);
            }
            Ok(())
        }
        Command::Bench {
            nodes,
            levels,
            kind,
            iters,
            sequential,
            json,
        } => {
            let exec = if sequential { Execution::Sequential } else { Execution::default() };
            let r = bench::run(nodes, levels, kind, iters, exec)?;
            if json {
                println!("{}", serde_json::to_string(&r)?);
            } else {
                println!("{} nodes, {} levels, {kind}, {} iterations", r.nodes, r.levels, r.iterations);
                for (name, s) in [
                    ("layout", r.layout_ms),
                    ("transform", r.transform_ms),
                    ("scene", r.scene_ms),
                    ("frame", r.frame_ms),
                ] {
                    println!("{name:<10} median {:8.3} ms  p95 {:8.3} ms", s.median, s.p95);
                }
            }
            Ok(())
        }
    }
}
