//! Zoom-in-place navigation.
//!
//! Layout geometry never changes; navigation only picks a [`ViewWindow`]
//! (the visible part of the layout) and derives the affine
//! [`ViewTransform`] that stretches it over the viewport. Icicles zoom along
//! x only, radial charts along the angle only, treemaps uniformly in both
//! axes.
//!
//! Window units: icicle `[0, 1]`, sundown `[0, π]`, sunburst `[0, 2π]`
//! radians, treemap a rectangle inside the unit square. Treemap windows are
//! always square in those units, which is the viewport's own aspect.

use thiserror::Error;

use crate::hierarchy::{Hierarchy, NodeId, QueryError};
use crate::layout::{Bands, Layout, LayoutKind, NodeGeom, Rect, Span};
use crate::par::{self, Execution};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NavError {
    #[error("node {0} has zero extent and cannot be focused")]
    ZeroExtent(NodeId),
    #[error("node {child} is not a child of {parent}")]
    NotAChild { parent: NodeId, child: NodeId },
    #[error("already at the root")]
    AlreadyAtRoot,
    #[error(transparent)]
    Query(#[from] QueryError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NavConfig {
    /// Smallest window as a fraction of the full extent; its reciprocal is
    /// the maximum magnification.
    pub min_window: f64,
}

impl Default for NavConfig {
    fn default() -> Self {
        NavConfig { min_window: 1e-6 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ViewWindow {
    Interval(Span),
    Rect(Rect),
}

impl ViewWindow {
    pub fn full(kind: LayoutKind) -> Self {
        match kind {
            LayoutKind::Treemap => ViewWindow::Rect(Rect::UNIT),
            k => ViewWindow::Interval(Span::new(0.0, k.full_extent())),
        }
    }

    /// Window width along the quantitative axis.
    pub fn width(&self) -> f64 {
        match self {
            ViewWindow::Interval(s) => s.width(),
            ViewWindow::Rect(r) => r.w,
        }
    }

    pub fn is_valid(&self, kind: LayoutKind) -> bool {
        match (self, kind) {
            (ViewWindow::Rect(r), LayoutKind::Treemap) => {
                r.w > 0.0 && r.h > 0.0 && Rect::UNIT.contains_rect(*r, 1e-12)
            }
            (ViewWindow::Interval(s), k) if k != LayoutKind::Treemap => {
                s.lo < s.hi && s.lo >= 0.0 && s.hi <= k.full_extent()
            }
            _ => false,
        }
    }
}

/// Ratio of full extent to visible extent.
pub fn magnification(window: &ViewWindow, kind: LayoutKind) -> f64 {
    kind.full_extent() / window.width()
}

/// Affine map from layout space to viewport space, stored relative to the
/// window origin so the window edges land exactly on the viewport edges.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ViewTransform {
    /// `x' = (x - origin)·scale` on the quantitative axis.
    Axis { scale: f64, origin: f64 },
    /// `(x, y)' = ((x, y) - (ox, oy))·scale`.
    Uniform { scale: f64, ox: f64, oy: f64 },
}

impl ViewTransform {
    pub const IDENTITY_AXIS: ViewTransform = ViewTransform::Axis {
        scale: 1.0,
        origin: 0.0,
    };

    pub fn apply(&self, x: f64) -> f64 {
        match *self {
            ViewTransform::Axis { scale, origin } => (x - origin) * scale,
            ViewTransform::Uniform { scale, ox, .. } => (x - ox) * scale,
        }
    }

    pub fn invert(&self, x: f64) -> f64 {
        match *self {
            ViewTransform::Axis { scale, origin } => x / scale + origin,
            ViewTransform::Uniform { scale, ox, .. } => x / scale + ox,
        }
    }

    pub fn apply_point(&self, (x, y): (f64, f64)) -> (f64, f64) {
        match *self {
            ViewTransform::Axis { .. } => (self.apply(x), y),
            ViewTransform::Uniform { scale, ox, oy } => ((x - ox) * scale, (y - oy) * scale),
        }
    }

    pub fn invert_point(&self, (x, y): (f64, f64)) -> (f64, f64) {
        match *self {
            ViewTransform::Axis { .. } => (self.invert(x), y),
            ViewTransform::Uniform { scale, ox, oy } => (x / scale + ox, y / scale + oy),
        }
    }

    /// The viewport-to-layout map.
    pub fn inverse(&self) -> ViewTransform {
        match *self {
            ViewTransform::Axis { scale, origin } => ViewTransform::Axis {
                scale: 1.0 / scale,
                origin: -origin * scale,
            },
            ViewTransform::Uniform { scale, ox, oy } => ViewTransform::Uniform {
                scale: 1.0 / scale,
                ox: -ox * scale,
                oy: -oy * scale,
            },
        }
    }

    pub fn scale(&self) -> f64 {
        match *self {
            ViewTransform::Axis { scale, .. } | ViewTransform::Uniform { scale, .. } => scale,
        }
    }

    pub fn project_span(&self, s: Span) -> Span {
        Span::new(self.apply(s.lo), self.apply(s.hi))
    }

    pub fn project_rect(&self, r: Rect) -> Rect {
        let (x, y) = self.apply_point((r.x, r.y));
        let s = self.scale();
        Rect::new(x, y, r.w * s, r.h * s)
    }

    /// Transition frame at `u ∈ [0, 1]`: eased with a cubic in-out curve,
    /// scale interpolated in log space, window origin linearly.
    pub fn interpolate(from: &ViewTransform, to: &ViewTransform, u: f64) -> ViewTransform {
        let e = ease_in_out_cubic(u.clamp(0.0, 1.0));
        if e == 0.0 {
            return *from;
        }
        if e == 1.0 {
            return *to;
        }
        let lerp = |a: f64, b: f64| a + (b - a) * e;
        let log_lerp = |a: f64, b: f64| (a.ln() + (b.ln() - a.ln()) * e).exp();
        match (*from, *to) {
            (
                ViewTransform::Axis { scale: s0, origin: o0 },
                ViewTransform::Axis { scale: s1, origin: o1 },
            ) => ViewTransform::Axis {
                scale: log_lerp(s0, s1),
                origin: lerp(o0, o1),
            },
            (
                ViewTransform::Uniform { scale: s0, ox: x0, oy: y0 },
                ViewTransform::Uniform { scale: s1, ox: x1, oy: y1 },
            ) => ViewTransform::Uniform {
                scale: log_lerp(s0, s1),
                ox: lerp(x0, x1),
                oy: lerp(y0, y1),
            },
            _ => *to,
        }
    }
}

pub fn ease_in_out_cubic(u: f64) -> f64 {
    if u < 0.5 {
        4.0 * u * u * u
    } else {
        let v = -2.0 * u + 2.0;
        1.0 - v * v * v / 2.0
    }
}

/// Maps the window onto the whole viewport extent: `[lo, hi] → [0, E]` on
/// the quantitative axis, or the window square onto the unit square.
pub fn transform_of(window: &ViewWindow, kind: LayoutKind) -> ViewTransform {
    match *window {
        ViewWindow::Interval(s) => ViewTransform::Axis {
            scale: kind.full_extent() / s.width(),
            origin: s.lo,
        },
        ViewWindow::Rect(r) => ViewTransform::Uniform {
            scale: 1.0 / r.w,
            ox: r.x,
            oy: r.y,
        },
    }
}

fn clamp_interval(lo: f64, width: f64, extent: f64) -> Span {
    let width = width.min(extent);
    let lo = lo.clamp(0.0, extent - width);
    // keep hi inside the extent even after rounding
    Span::new(lo, (lo + width).min(extent))
}

fn clamp_square(x: f64, y: f64, side: f64) -> Rect {
    let side = side.min(1.0);
    let x = x.clamp(0.0, 1.0 - side);
    let y = y.clamp(0.0, 1.0 - side);
    Rect::new(x, y, side.min(1.0 - x), side.min(1.0 - y))
}

/// Window that makes `focus` fill the viewport. Treemap windows are the
/// smallest square containing the focus rectangle, centred on it where the
/// unit square allows.
pub fn focus_window(layout: &Layout, focus: NodeId, cfg: &NavConfig) -> Result<ViewWindow, NavError> {
    let geom = layout
        .geoms
        .get(focus.index())
        .ok_or(QueryError::InvalidNode(focus))?;
    let extent = layout.kind.full_extent();
    match geom {
        NodeGeom::Linear(_) | NodeGeom::Angular(_) => {
            let s = layout.extent(focus).expect("interval geometry");
            if s.width() <= 0.0 {
                return Err(NavError::ZeroExtent(focus));
            }
            let min_w = cfg.min_window * extent;
            if s.width() >= min_w {
                Ok(ViewWindow::Interval(s))
            } else {
                Ok(ViewWindow::Interval(clamp_interval(s.mid() - 0.5 * min_w, min_w, extent)))
            }
        }
        NodeGeom::Rect(g) => {
            let r = g.rect;
            if r.w <= 0.0 || r.h <= 0.0 {
                return Err(NavError::ZeroExtent(focus));
            }
            let side = r.w.max(r.h).max(cfg.min_window);
            let (cx, cy) = r.center();
            Ok(ViewWindow::Rect(clamp_square(cx - 0.5 * side, cy - 0.5 * side, side)))
        }
    }
}

/// Translates the window by `(dx, dy)` layout units, clamped to the full
/// extent; `dy` is ignored for interval windows.
pub fn pan(window: &ViewWindow, kind: LayoutKind, dx: f64, dy: f64) -> ViewWindow {
    match *window {
        ViewWindow::Interval(s) => {
            if dx == 0.0 {
                return *window;
            }
            ViewWindow::Interval(clamp_interval(s.lo + dx, s.width(), kind.full_extent()))
        }
        ViewWindow::Rect(r) => {
            if dx == 0.0 && dy == 0.0 {
                return *window;
            }
            ViewWindow::Rect(clamp_square(r.x + dx, r.y + dy, r.w))
        }
    }
}

/// Zooms by `factor` (> 1 zooms in) keeping the layout point under `anchor`
/// fixed. `anchor` is in viewport coordinates: `[0, E]` on the quantitative
/// axis for interval windows, the unit square for treemaps.
pub fn zoom_about(
    window: &ViewWindow,
    kind: LayoutKind,
    factor: f64,
    anchor: (f64, f64),
    cfg: &NavConfig,
) -> ViewWindow {
    if factor == 1.0 || !(factor > 0.0 && factor.is_finite()) {
        return *window;
    }
    let t = transform_of(window, kind);
    match *window {
        ViewWindow::Interval(s) => {
            let e = kind.full_extent();
            let p = t.invert(anchor.0);
            let w = (s.width() / factor).clamp(cfg.min_window * e, e);
            let lo = p - anchor.0 * w / e;
            ViewWindow::Interval(clamp_interval(lo, w, e))
        }
        ViewWindow::Rect(r) => {
            let (px, py) = t.invert_point(anchor);
            let side = (r.w / factor).clamp(cfg.min_window, 1.0);
            ViewWindow::Rect(clamp_square(px - anchor.0 * side, py - anchor.1 * side, side))
        }
    }
}

pub fn drill_down(
    h: &Hierarchy,
    layout: &Layout,
    current_focus: NodeId,
    child: NodeId,
    cfg: &NavConfig,
) -> Result<ViewWindow, NavError> {
    h.get(current_focus)?;
    if h.get(child)?.parent != Some(current_focus) {
        return Err(NavError::NotAChild {
            parent: current_focus,
            child,
        });
    }
    focus_window(layout, child, cfg)
}

pub fn roll_up(
    h: &Hierarchy,
    layout: &Layout,
    current_focus: NodeId,
    cfg: &NavConfig,
) -> Result<ViewWindow, NavError> {
    let parent = h.get(current_focus)?.parent.ok_or(NavError::AlreadyAtRoot)?;
    focus_window(layout, parent, cfg)
}

/// Deepest node whose extent covers the window. For treemaps: the deepest
/// node at least as large as the window that overlaps it most.
pub fn focus_of_window(h: &Hierarchy, layout: &Layout, window: &ViewWindow) -> NodeId {
    let mut cur = h.root();
    loop {
        let next = match *window {
            ViewWindow::Interval(w) => h
                .children(cur)
                .iter()
                .copied()
                .find(|c| layout.extent(*c).is_some_and(|s| s.contains_span(w))),
            ViewWindow::Rect(w) => {
                let side = w.w * (1.0 - 1e-9);
                h.children(cur)
                    .iter()
                    .filter_map(|c| match layout.geom(*c) {
                        NodeGeom::Rect(g) if g.rect.w.max(g.rect.h) >= side => {
                            let o = overlap(g.rect, w).area();
                            (o > 0.0).then_some((*c, o))
                        }
                        _ => None,
                    })
                    .fold(None::<(NodeId, f64)>, |best, (c, o)| match best {
                        Some((_, bo)) if bo >= o => best,
                        _ => Some((c, o)),
                    })
                    .map(|(c, _)| c)
            }
        };
        match next {
            Some(c) => cur = c,
            None => return cur,
        }
    }
}

/// Sides of the viewport a node is cut by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClipEdges(pub u8);

impl ClipEdges {
    pub const LEFT: u8 = 1;
    pub const RIGHT: u8 = 2;
    pub const TOP: u8 = 4;
    pub const BOTTOM: u8 = 8;

    pub fn left(self) -> bool {
        self.0 & Self::LEFT != 0
    }
    pub fn right(self) -> bool {
        self.0 & Self::RIGHT != 0
    }
    pub fn top(self) -> bool {
        self.0 & Self::TOP != 0
    }
    pub fn bottom(self) -> bool {
        self.0 & Self::BOTTOM != 0
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Visibility {
    Full,
    Partial(ClipEdges),
    Offscreen,
}

impl Visibility {
    pub fn is_visible(self) -> bool {
        self != Visibility::Offscreen
    }

    pub fn edges(self) -> ClipEdges {
        match self {
            Visibility::Partial(e) => e,
            _ => ClipEdges::default(),
        }
    }
}

/// Node geometry in viewport units after the window transform.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProjectedGeom {
    /// Quantitative-axis interval in `[0, E]`; the depth band is untouched.
    Interval { visible: Span, full: Span, depth: u32 },
    /// Rectangle in unit-viewport coordinates.
    Rect { visible: Rect, full: Rect, depth: u32 },
}

impl ProjectedGeom {
    pub fn depth(&self) -> u32 {
        match *self {
            ProjectedGeom::Interval { depth, .. } | ProjectedGeom::Rect { depth, .. } => depth,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projected {
    pub geom: ProjectedGeom,
    pub visibility: Visibility,
}

fn overlap(a: Rect, b: Rect) -> Rect {
    let x0 = a.x.max(b.x);
    let y0 = a.y.max(b.y);
    let x1 = a.right().min(b.right());
    let y1 = a.bottom().min(b.bottom());
    Rect::new(x0, y0, (x1 - x0).max(0.0), (y1 - y0).max(0.0))
}

/// Projects every node through `transform_of(window)` and clips it to the
/// viewport. Clipping decisions are made in layout space against the window,
/// so a node is on screen exactly when its extent overlaps the window with
/// positive length (or area).
pub fn clip_and_project(layout: &Layout, window: &ViewWindow, exec: Execution) -> Vec<Projected> {
    let t = transform_of(window, layout.kind);
    match *window {
        ViewWindow::Interval(w) => {
            let e = layout.kind.full_extent();
            par::map(exec, &layout.geoms, |g| {
                let (s, depth) = match g {
                    NodeGeom::Linear(g) => (g.span, g.layer),
                    NodeGeom::Angular(g) => (g.arc(), g.ring),
                    NodeGeom::Rect(g) => (Span::new(g.rect.x, g.rect.right()), g.depth),
                };
                let full = t.project_span(s);
                if !(s.hi > s.lo && s.lo < w.hi && s.hi > w.lo) {
                    return Projected {
                        geom: ProjectedGeom::Interval {
                            visible: Span::new(full.lo, full.lo),
                            full,
                            depth,
                        },
                        visibility: Visibility::Offscreen,
                    };
                }
                let mut edges = 0;
                let lo = if s.lo < w.lo {
                    edges |= ClipEdges::LEFT;
                    0.0
                } else {
                    full.lo.max(0.0)
                };
                let hi = if s.hi > w.hi {
                    edges |= ClipEdges::RIGHT;
                    e
                } else {
                    full.hi.min(e)
                };
                Projected {
                    geom: ProjectedGeom::Interval {
                        visible: Span::new(lo, hi),
                        full,
                        depth,
                    },
                    visibility: if edges == 0 {
                        Visibility::Full
                    } else {
                        Visibility::Partial(ClipEdges(edges))
                    },
                }
            })
        }
        ViewWindow::Rect(w) => par::map(exec, &layout.geoms, |g| {
            let (r, depth) = match g {
                NodeGeom::Rect(g) => (g.rect, g.depth),
                other => (Rect::default(), other.depth()),
            };
            let full = t.project_rect(r);
            let o = overlap(r, w);
            if !(r.w > 0.0 && r.h > 0.0 && o.w > 0.0 && o.h > 0.0) {
                return Projected {
                    geom: ProjectedGeom::Rect {
                        visible: Rect::new(full.x, full.y, 0.0, 0.0),
                        full,
                        depth,
                    },
                    visibility: Visibility::Offscreen,
                };
            }
            let mut edges = 0;
            if r.x < w.x {
                edges |= ClipEdges::LEFT;
            }
            if r.right() > w.right() {
                edges |= ClipEdges::RIGHT;
            }
            if r.y < w.y {
                edges |= ClipEdges::TOP;
            }
            if r.bottom() > w.bottom() {
                edges |= ClipEdges::BOTTOM;
            }
            let vis = t.project_rect(o);
            let visible = Rect::new(
                vis.x.clamp(0.0, 1.0),
                vis.y.clamp(0.0, 1.0),
                vis.w.min(1.0 - vis.x.clamp(0.0, 1.0)),
                vis.h.min(1.0 - vis.y.clamp(0.0, 1.0)),
            );
            Projected {
                geom: ProjectedGeom::Rect {
                    visible,
                    full,
                    depth,
                },
                visibility: if edges == 0 {
                    Visibility::Full
                } else {
                    Visibility::Partial(ClipEdges(edges))
                },
            }
        }),
    }
}

/// Overview geometry: identical quantitative extents, with the depth
/// dimension (layers, rings) compressed by `compress`; treemaps shrink
/// uniformly into a thumbnail.
pub fn overview_layout(layout: &Layout, compress: f64) -> Layout {
    let bands = match layout.bands {
        Bands::Layers { thickness } => Bands::Layers {
            thickness: thickness * compress,
        },
        Bands::Rings { inner, thickness } => Bands::Rings {
            inner: inner * compress,
            thickness: thickness * compress,
        },
        Bands::Nested { aspect, scale } => Bands::Nested {
            aspect,
            scale: scale * compress,
        },
    };
    let geoms = match layout.bands {
        Bands::Nested { .. } => layout
            .geoms
            .iter()
            .map(|g| match *g {
                NodeGeom::Rect(mut r) => {
                    let s = |x: Rect| Rect::new(x.x * compress, x.y * compress, x.w * compress, x.h * compress);
                    r.rect = s(r.rect);
                    r.inner = s(r.inner);
                    NodeGeom::Rect(r)
                }
                other => other,
            })
            .collect(),
        _ => layout.geoms.clone(),
    };
    Layout {
        kind: layout.kind,
        geoms,
        bands,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Breadcrumbs {
    pub trail: Vec<NodeId>,
}

pub fn breadcrumbs(h: &Hierarchy, focus: NodeId) -> Result<Breadcrumbs, QueryError> {
    Ok(Breadcrumbs {
        trail: h.path_to_root(focus)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::{ingest, Format};
    use crate::layout::{layout, LayoutParams};
    use std::f64::consts::PI;

    fn icicle_fixture() -> (Hierarchy, Layout) {
        // root [0,1], a [0,0.25], b [0.25,0.5], c [0.5,1]
        let h = ingest("r;a 1\nr;b 1\nr;c 2", Format::FoldedStacks).unwrap();
        let l = layout(&h, LayoutKind::Icicle, &LayoutParams::default()).unwrap();
        (h, l)
    }

    #[test]
    fn root_focus_is_identity() {
        let (h, l) = icicle_fixture();
        let w = focus_window(&l, h.root(), &NavConfig::default()).unwrap();
        assert_eq!(w, ViewWindow::full(LayoutKind::Icicle));
        assert_eq!(
            transform_of(&w, LayoutKind::Icicle),
            ViewTransform::IDENTITY_AXIS
        );
        let proj = clip_and_project(&l, &w, Execution::Sequential);
        assert!(proj.iter().all(|p| p.visibility == Visibility::Full));
    }

    #[test]
    fn icicle_focus_and_transform() {
        let (h, l) = icicle_fixture();
        let b = h.find_path(&["b"]).unwrap();
        let w = focus_window(&l, b, &NavConfig::default()).unwrap();
        assert_eq!(w, ViewWindow::Interval(Span::new(0.25, 0.5)));
        let t = transform_of(&w, LayoutKind::Icicle);
        assert!((t.apply(0.3) - 0.2).abs() < 1e-15);
        assert!((t.apply(0.4) - 0.6).abs() < 1e-15);
        assert_eq!(magnification(&w, LayoutKind::Icicle), 4.0);
    }

    #[test]
    fn clipped_left_node() {
        let mut l = icicle_fixture().1;
        // a synthetic node spanning [0, 0.3]
        l.geoms[1] = NodeGeom::Linear(crate::layout::LinearGeom {
            span: Span::new(0.0, 0.3),
            layer: 1,
        });
        let w = ViewWindow::Interval(Span::new(0.25, 0.5));
        let p = clip_and_project(&l, &w, Execution::Sequential)[1];
        let ProjectedGeom::Interval { visible, .. } = p.geom else {
            panic!()
        };
        assert_eq!(visible.lo, 0.0);
        assert!((visible.hi - 0.2).abs() < 1e-15);
        assert_eq!(p.visibility, Visibility::Partial(ClipEdges(ClipEdges::LEFT)));
    }

    #[test]
    fn siblings_of_focus_are_offscreen() {
        let (h, l) = icicle_fixture();
        let b = h.find_path(&["b"]).unwrap();
        let w = focus_window(&l, b, &NavConfig::default()).unwrap();
        let p = clip_and_project(&l, &w, Execution::Sequential);
        assert_eq!(p[h.find_path(&["a"]).unwrap().index()].visibility, Visibility::Offscreen);
        assert_eq!(p[h.find_path(&["c"]).unwrap().index()].visibility, Visibility::Offscreen);
        assert_eq!(p[b.index()].visibility, Visibility::Full);
        assert_eq!(
            p[0].visibility,
            Visibility::Partial(ClipEdges(ClipEdges::LEFT | ClipEdges::RIGHT))
        );
    }

    #[test]
    fn sundown_magnification() {
        let h = ingest("r;a 1\nr;b 5", Format::FoldedStacks).unwrap();
        let l = layout(&h, LayoutKind::Sundown, &LayoutParams::default()).unwrap();
        let a = h.find_path(&["a"]).unwrap();
        let w = focus_window(&l, a, &NavConfig::default()).unwrap();
        assert!((magnification(&w, LayoutKind::Sundown) - 6.0).abs() < 1e-12);
        let t = transform_of(&w, LayoutKind::Sundown);
        // the focus midpoint lands at the top of the semicircle
        let ViewWindow::Interval(s) = w else { panic!() };
        assert!((t.apply(s.mid()) - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn pan_rules() {
        let k = LayoutKind::Icicle;
        let w = ViewWindow::Interval(Span::new(0.25, 0.5));
        assert_eq!(pan(&w, k, 0.0, 0.0), w);
        let p = pan(&w, k, 0.1, 0.0);
        let ViewWindow::Interval(s) = p else { panic!() };
        assert!((s.lo - 0.35).abs() < 1e-15 && (s.hi - 0.6).abs() < 1e-15);
        let edge = ViewWindow::Interval(Span::new(0.8, 1.0));
        assert_eq!(pan(&edge, k, 0.5, 0.0), edge);
        let tw = ViewWindow::Rect(Rect::new(0.5, 0.5, 0.25, 0.25));
        assert_eq!(
            pan(&tw, LayoutKind::Treemap, 1.0, -1.0),
            ViewWindow::Rect(Rect::new(0.75, 0.0, 0.25, 0.25))
        );
    }

    #[test]
    fn zoom_about_centre() {
        let k = LayoutKind::Icicle;
        let cfg = NavConfig::default();
        let full = ViewWindow::full(k);
        assert_eq!(zoom_about(&full, k, 1.0, (0.5, 0.0), &cfg), full);
        assert_eq!(
            zoom_about(&full, k, 4.0, (0.5, 0.0), &cfg),
            ViewWindow::Interval(Span::new(0.375, 0.625))
        );
        // zooming out past the full extent clamps
        assert_eq!(zoom_about(&full, k, 0.25, (0.5, 0.0), &cfg), full);
        // zooming in past the limit stops at min_window
        let tiny = zoom_about(&full, k, 1e9, (0.5, 0.0), &cfg);
        assert!((magnification(&tiny, k) - 1e6).abs() < 1e-3);
    }

    #[test]
    fn drill_and_roll() {
        let (h, l) = icicle_fixture();
        let cfg = NavConfig::default();
        let b = h.find_path(&["b"]).unwrap();
        let before = focus_window(&l, h.root(), &cfg).unwrap();
        let down = drill_down(&h, &l, h.root(), b, &cfg).unwrap();
        assert_eq!(down, ViewWindow::Interval(Span::new(0.25, 0.5)));
        assert_eq!(roll_up(&h, &l, b, &cfg).unwrap(), before);
        assert_eq!(roll_up(&h, &l, h.root(), &cfg), Err(NavError::AlreadyAtRoot));
        let a = h.find_path(&["a"]).unwrap();
        assert_eq!(
            drill_down(&h, &l, b, a, &cfg),
            Err(NavError::NotAChild { parent: b, child: a })
        );
    }

    #[test]
    fn zero_extent_focus() {
        let h = ingest(
            r#"{"name":"r","children":[{"name":"a","value":1},{"name":"z"}]}"#,
            Format::NestedJson,
        )
        .unwrap();
        let cfg = NavConfig::default();
        for kind in LayoutKind::ALL {
            let l = layout(&h, kind, &LayoutParams::default()).unwrap();
            let z = h.find_path(&["z"]).unwrap();
            assert_eq!(focus_window(&l, z, &cfg), Err(NavError::ZeroExtent(z)));
            assert_eq!(drill_down(&h, &l, h.root(), z, &cfg), Err(NavError::ZeroExtent(z)));
        }
    }

    #[test]
    fn treemap_focus_is_square_and_contains_node() {
        let h = ingest("r;a 1\nr;b 3\nr;c 2", Format::FoldedStacks).unwrap();
        let l = layout(&h, LayoutKind::Treemap, &LayoutParams::default()).unwrap();
        for id in h.ids() {
            let ViewWindow::Rect(w) = focus_window(&l, id, &NavConfig::default()).unwrap() else {
                panic!()
            };
            let NodeGeom::Rect(g) = l.geom(id) else { panic!() };
            assert!((w.w - w.h).abs() < 1e-15);
            assert!(w.contains_rect(g.rect, 1e-12));
            assert!(Rect::UNIT.contains_rect(w, 1e-12));
        }
    }

    #[test]
    fn transform_interpolation() {
        let a = ViewTransform::IDENTITY_AXIS;
        let b = ViewTransform::Axis {
            scale: 16.0,
            origin: 0.25,
        };
        assert_eq!(ViewTransform::interpolate(&a, &b, 0.0), a);
        assert_eq!(ViewTransform::interpolate(&a, &b, 1.0), b);
        assert_eq!(ViewTransform::interpolate(&a, &a, 0.3), a);
        let mid = ViewTransform::interpolate(&a, &b, 0.5);
        assert!((mid.scale() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn overview_keeps_extents() {
        let (_, l) = icicle_fixture();
        let o = overview_layout(&l, 0.2);
        assert_eq!(o.geoms, l.geoms);
        let Bands::Layers { thickness } = o.bands else { panic!() };
        assert!((thickness - 0.1).abs() < 1e-15);
    }

    #[test]
    fn breadcrumb_trail() {
        let h = ingest("r;a;b;c;d 1", Format::FoldedStacks).unwrap();
        let d = h.find_path(&["a", "b", "c", "d"]).unwrap();
        let bc = breadcrumbs(&h, d).unwrap();
        assert_eq!(bc.trail.len(), 5);
        assert_eq!(bc.trail[0], h.root());
        assert_eq!(breadcrumbs(&h, h.root()).unwrap().trail, vec![h.root()]);
    }
}
