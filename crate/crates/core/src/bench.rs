//! Stage timings on a seeded synthetic workload.
//!
//! Layout is timed once per iteration over the whole tree; each iteration
//! then zooms to a seeded random focus and times the per-frame work: the
//! window transform with clipping, and the scene build.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::hierarchy::{generate_synthetic, GenerateError, Hierarchy, NodeId};
use crate::layout::{layout, Layout, LayoutError, LayoutKind, NodeGeom};
use crate::navigation::{clip_and_project, focus_window, transform_of, ViewWindow};
use crate::par::Execution;
use crate::scene::{SceneBuilder, SceneError};
use crate::style::TagSet;

pub const BENCH_SEED: u64 = 0x5eed;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error("iterations must be at least 1")]
    NoIterations,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stat {
    pub median: f64,
    pub p95: f64,
}

impl Stat {
    /// Median and nearest-rank 95th percentile.
    pub fn of(samples: &[f64]) -> Stat {
        let mut v = samples.to_vec();
        v.sort_by(f64::total_cmp);
        let n = v.len();
        if n == 0 {
            return Stat { median: 0.0, p95: 0.0 };
        }
        let median = if n % 2 == 1 {
            v[n / 2]
        } else {
            0.5 * (v[n / 2 - 1] + v[n / 2])
        };
        let rank = ((0.95 * n as f64).ceil() as usize).clamp(1, n);
        Stat {
            median,
            p95: v[rank - 1],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub kind: LayoutKind,
    pub nodes: usize,
    pub levels: usize,
    pub iterations: usize,
    pub parallel: bool,
    pub layout_ms: Stat,
    pub transform_ms: Stat,
    pub scene_ms: Stat,
    /// Transform plus scene build, per iteration.
    pub frame_ms: Stat,
}

/// The deterministic inputs of a benchmark run.
#[derive(Clone, Debug, PartialEq)]
pub struct Workload {
    pub hierarchy: Hierarchy,
    pub focuses: Vec<NodeId>,
}

/// Seeded tree plus one focus per iteration, drawn among nodes wide enough
/// to be focused.
pub fn workload(nodes: usize, levels: usize, kind: LayoutKind, iterations: usize) -> Result<Workload, BenchError> {
    let hierarchy = generate_synthetic(nodes, levels, BENCH_SEED)?;
    let l = layout(&hierarchy, kind, &Config::default().layout_params(kind))?;
    let min = Config::default().navigation.min_window;
    let candidates: Vec<NodeId> = hierarchy
        .ids()
        .filter(|id| match l.geom(*id) {
            NodeGeom::Rect(g) => g.rect.w.max(g.rect.h) >= min,
            g => g.measure() >= min,
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(BENCH_SEED ^ kind.code() as u64);
    let focuses = (0..iterations)
        .map(|_| candidates[rng.gen_range(0..candidates.len())])
        .collect();
    Ok(Workload { hierarchy, focuses })
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

pub fn run(nodes: usize, levels: usize, kind: LayoutKind, iterations: usize, exec: Execution) -> Result<BenchReport, BenchError> {
    if iterations == 0 {
        return Err(BenchError::NoIterations);
    }
    let cfg = Config::default();
    let params = cfg.layout_params(kind);
    let w = workload(nodes, levels, kind, iterations)?;
    let h = &w.hierarchy;

    let mut layout_ms = Vec::with_capacity(iterations);
    let mut l: Option<Layout> = None;
    for _ in 0..iterations {
        let t = Instant::now();
        let out = layout(h, kind, &params)?;
        layout_ms.push(ms(t));
        l = Some(out);
    }
    let l = l.expect("at least one iteration");
    let builder = SceneBuilder::new(h, &l, &cfg, cfg.viewport)?;
    let tags = TagSet::new();
    let nav = cfg.nav();

    let (mut transform_ms, mut scene_ms, mut frame_ms) = (Vec::new(), Vec::new(), Vec::new());
    for focus in &w.focuses {
        let window = focus_window(&l, *focus, &nav).unwrap_or(ViewWindow::full(kind));
        let t = Instant::now();
        let tr = transform_of(&window, kind);
        let proj = clip_and_project(&l, &window, exec);
        let dt = ms(t);
        std::hint::black_box((tr, proj));
        let t = Instant::now();
        let scene = builder.build(&window, &tags, exec)?;
        let ds = ms(t);
        std::hint::black_box(scene);
        transform_ms.push(dt);
        scene_ms.push(ds);
        frame_ms.push(dt + ds);
    }
    Ok(BenchReport {
        kind,
        nodes,
        levels,
        iterations,
        parallel: exec == Execution::Parallel && cfg!(feature = "parallel"),
        layout_ms: Stat::of(&layout_ms),
        transform_ms: Stat::of(&transform_ms),
        scene_ms: Stat::of(&scene_ms),
        frame_ms: Stat::of(&frame_ms),
    })
}
