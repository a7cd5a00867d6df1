//! Renderer-facing scene: styled, clipped primitives in screen pixels,
//! label placements, the scale, and a one-level overview.

mod wire;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::Config;
use crate::hierarchy::{Hierarchy, NodeId};
use crate::label::{place_labels, LabelPlacement, LabelRequest, LabelShape};
use crate::layout::{radial_point, Bands, Layout, LayoutKind};
use crate::navigation::{
    breadcrumbs, clip_and_project, focus_of_window, magnification, overview_layout, ClipEdges, Projected,
    ProjectedGeom, ViewWindow, Visibility,
};
use crate::par::{self, Execution};
use crate::style::{tag_dots, Palette, Rgb, TagSet};

pub use wire::{deserialize_scene, serialize_scene, WireError, HEADER_LEN, MAGIC, PRIMITIVE_STRIDE, WIRE_VERSION};

/// Viewport size in CSS pixels.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Viewport {
    pub width: f64,
    pub height: f64,
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport {
            width: 1200.0,
            height: 800.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PanelConfig {
    /// Height of the overview strip as a fraction of the viewport height.
    pub overview_fraction: f64,
    /// Preferred on-screen length of the linear and radial scale swatch
    /// (px). Treemap swatches are sized to the scale strip instead.
    pub scale_target_px: f64,
}

impl Default for PanelConfig {
    fn default() -> Self {
        PanelConfig {
            overview_fraction: 0.15,
            scale_target_px: 96.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct PxRect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl PxRect {
    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        PxRect { x, y, w, h }
    }
}

const GAP: f64 = 6.0;
const SCALE_STRIP: f64 = 24.0;

/// Screen regions: overview strip on top (thumbnail plus breadcrumb strip
/// for treemaps), detail view below, scale strip at the bottom.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Panels {
    pub viewport: Viewport,
    pub overview: PxRect,
    pub detail: PxRect,
    pub scale: PxRect,
    pub crumbs: Option<PxRect>,
    /// Overview size relative to the detail view in the compressed dimension.
    pub compress: f64,
}

impl Panels {
    pub fn new(kind: LayoutKind, vp: Viewport, cfg: &PanelConfig) -> Panels {
        let (w, h) = (vp.width, vp.height);
        let ov_h = h * cfg.overview_fraction;
        let detail = PxRect::new(0.0, ov_h + GAP, w, (h - ov_h - 2.0 * GAP - SCALE_STRIP).max(1.0));
        let scale = PxRect::new(0.0, h - SCALE_STRIP, w, SCALE_STRIP);
        match kind {
            LayoutKind::Icicle => Panels {
                viewport: vp,
                overview: PxRect::new(0.0, 0.0, w, ov_h),
                detail,
                scale,
                crumbs: None,
                compress: ov_h / detail.h,
            },
            LayoutKind::Sundown | LayoutKind::Sunburst => {
                let r = radial_radius(kind, detail);
                let ov_r = if kind == LayoutKind::Sundown { ov_h } else { 0.5 * ov_h };
                Panels {
                    viewport: vp,
                    overview: PxRect::new(0.0, 0.0, w, ov_h),
                    detail,
                    scale,
                    crumbs: None,
                    compress: ov_r / r,
                }
            }
            LayoutKind::Treemap => {
                let c = ov_h / detail.h;
                let thumb_w = w * c;
                Panels {
                    viewport: vp,
                    overview: PxRect::new(0.0, 0.0, thumb_w, ov_h),
                    detail,
                    scale,
                    crumbs: Some(PxRect::new(thumb_w + GAP, 0.0, (w - thumb_w - GAP).max(0.0), ov_h)),
                    compress: c,
                }
            }
        }
    }

    /// Width / height of the detail view, the aspect a treemap layout
    /// should be computed for.
    pub fn detail_aspect(&self) -> f64 {
        self.detail.w / self.detail.h
    }

    fn detail_frame(&self, kind: LayoutKind) -> Frame {
        let d = self.detail;
        match kind {
            LayoutKind::Icicle => Frame::Linear {
                x: d.x,
                y: d.y,
                w: d.w,
                h_unit: d.h,
            },
            LayoutKind::Sundown => Frame::Radial {
                cx: d.x + 0.5 * d.w,
                cy: d.y + d.h,
                r_unit: radial_radius(kind, d),
            },
            LayoutKind::Sunburst => Frame::Radial {
                cx: d.x + 0.5 * d.w,
                cy: d.y + 0.5 * d.h,
                r_unit: radial_radius(kind, d),
            },
            LayoutKind::Treemap => Frame::Nested {
                x: d.x,
                y: d.y,
                w_unit: d.w,
                h_unit: d.h,
            },
        }
    }

    /// Frame for the compressed overview layout; its units equal the
    /// detail frame's, only the origin moves.
    fn overview_frame(&self, kind: LayoutKind) -> Frame {
        let o = self.overview;
        match self.detail_frame(kind) {
            Frame::Linear { w, h_unit, .. } => Frame::Linear {
                x: o.x,
                y: o.y,
                w,
                h_unit,
            },
            Frame::Radial { r_unit, .. } => Frame::Radial {
                cx: o.x + 0.5 * o.w,
                cy: if kind == LayoutKind::Sundown { o.y + o.h } else { o.y + 0.5 * o.h },
                r_unit,
            },
            Frame::Nested { w_unit, h_unit, .. } => Frame::Nested {
                x: o.x,
                y: o.y,
                w_unit,
                h_unit,
            },
        }
    }
}

fn radial_radius(kind: LayoutKind, d: PxRect) -> f64 {
    if kind == LayoutKind::Sundown {
        (0.5 * d.w).min(d.h)
    } else {
        0.5 * d.w.min(d.h)
    }
}

/// Maps viewport units to pixels.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Frame {
    Linear { x: f64, y: f64, w: f64, h_unit: f64 },
    Radial { cx: f64, cy: f64, r_unit: f64 },
    Nested { x: f64, y: f64, w_unit: f64, h_unit: f64 },
}

impl Frame {
    /// Length in px of the whole quantitative axis at magnification 1.
    fn axis_px(&self, kind: LayoutKind) -> f64 {
        match *self {
            Frame::Linear { w, .. } => w,
            Frame::Radial { r_unit, .. } => r_unit * kind.full_extent(),
            Frame::Nested { w_unit, h_unit, .. } => w_unit * h_unit,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    /// Visible rectangle and the unclipped one, in px.
    Rect { visible: [f32; 4], full: [f32; 4] },
    /// Annular sector: centre and radii in px, visible and full angles in
    /// viewport radians (`[0, π]` sundown, `[0, 2π]` sunburst).
    Sector {
        cx: f32,
        cy: f32,
        r0: f32,
        r1: f32,
        a0: f32,
        a1: f32,
        full_a0: f32,
        full_a1: f32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Primitive {
    pub node: NodeId,
    pub shape: Shape,
    pub fill: Rgb,
    pub outline: bool,
    pub partial: bool,
    pub clip: ClipEdges,
}

/// `tick_value / root_total == tick_extent / full_extent`. Extents are px
/// lengths (icicle), px arc lengths at the outer radius (radial) or px²
/// (treemap), with `full_extent` the whole tree's projected extent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleSpec {
    pub magnification: f64,
    pub tick_value: f64,
    pub tick_extent: f64,
    pub full_extent: f64,
}

/// Largest 1, 2 or 5 × 10^k not above `x`.
fn nice_floor(x: f64) -> f64 {
    if !(x > 0.0 && x.is_finite()) {
        return 0.0;
    }
    let p = 10f64.powf(x.log10().floor());
    let m = x / p;
    let step = if m >= 5.0 {
        5.0
    } else if m >= 2.0 {
        2.0
    } else {
        1.0
    };
    step * p
}

pub fn scale_spec(root_total: f64, magnification: f64, axis_px: f64, target: f64) -> ScaleSpec {
    let full_extent = axis_px * magnification;
    let tick_value = nice_floor(target / full_extent * root_total);
    ScaleSpec {
        magnification,
        tick_value,
        tick_extent: tick_value / root_total * full_extent,
        full_extent,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Crumb {
    pub node: NodeId,
    pub text: String,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TagDot {
    pub node: NodeId,
    pub x: f32,
    pub y: f32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scene {
    pub kind: LayoutKind,
    pub viewport: (f32, f32),
    /// Render order: depth ascending, then sibling order.
    pub primitives: Vec<Primitive>,
    pub labels: Vec<LabelPlacement>,
    pub scale: ScaleSpec,
    pub breadcrumbs: Option<Vec<Crumb>>,
    /// Current window drawn on the overview (`node` is the root).
    pub handles: Option<Primitive>,
    pub tag_dots: Vec<TagDot>,
    pub overview: Option<Box<Scene>>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SceneError {
    #[error("layout has {layout} nodes but the hierarchy has {hierarchy}")]
    Mismatch { layout: usize, hierarchy: usize },
    #[error("window {0:?} is not valid for a {1} layout")]
    InvalidWindow(ViewWindow, LayoutKind),
    #[error("viewport {0}x{1} is empty")]
    EmptyViewport(f64, f64),
}

fn primitive(kind: LayoutKind, frame: &Frame, bands: &Bands, node: NodeId, p: &Projected) -> Primitive {
    let clip = p.visibility.edges();
    let shape = match (p.geom, *frame) {
        (ProjectedGeom::Interval { visible, full, depth }, Frame::Linear { x, y, w, h_unit }) => {
            let band = bands.layer(depth);
            let (y0, hh) = (y + band.lo * h_unit, band.width() * h_unit);
            Shape::Rect {
                visible: [
                    (x + visible.lo * w) as f32,
                    y0 as f32,
                    (visible.width() * w) as f32,
                    hh as f32,
                ],
                full: [(x + full.lo * w) as f32, y0 as f32, (full.width() * w) as f32, hh as f32],
            }
        }
        (ProjectedGeom::Interval { visible, full, depth }, Frame::Radial { cx, cy, r_unit }) => {
            let band = bands.layer(depth);
            Shape::Sector {
                cx: cx as f32,
                cy: cy as f32,
                r0: (band.lo * r_unit) as f32,
                r1: (band.hi * r_unit) as f32,
                a0: visible.lo as f32,
                a1: visible.hi as f32,
                full_a0: full.lo as f32,
                full_a1: full.hi as f32,
            }
        }
        (ProjectedGeom::Rect { visible, full, .. }, Frame::Nested { x, y, w_unit, h_unit }) => {
            let px = |r: crate::layout::Rect| {
                [
                    (x + r.x * w_unit) as f32,
                    (y + r.y * h_unit) as f32,
                    (r.w * w_unit) as f32,
                    (r.h * h_unit) as f32,
                ]
            };
            Shape::Rect {
                visible: px(visible),
                full: px(full),
            }
        }
        _ => unreachable!("projection does not match the {kind} frame"),
    };
    Primitive {
        node,
        shape,
        fill: Rgb::default(),
        outline: false,
        partial: matches!(p.visibility, Visibility::Partial(_)),
        clip,
    }
}

fn label_shape(prim: &Primitive, kind: LayoutKind, depth: u32) -> LabelShape {
    match prim.shape {
        Shape::Rect { visible: [x, y, w, h], .. } => LabelShape::Box {
            x: x as f64,
            y: y as f64,
            w: w as f64,
            h: h as f64,
            group: if kind == LayoutKind::Treemap { 0 } else { depth },
        },
        Shape::Sector {
            cx, cy, r0, r1, a0, a1, ..
        } => LabelShape::Sector {
            cx: cx as f64,
            cy: cy as f64,
            r0: r0 as f64,
            r1: r1 as f64,
            a0: a0 as f64,
            a1: a1 as f64,
            ring: depth,
            sunburst: kind == LayoutKind::Sunburst,
        },
    }
}

/// Builds scenes for one (hierarchy, layout, config, viewport). The
/// overview is window independent and built once.
pub struct SceneBuilder<'a> {
    h: &'a Hierarchy,
    layout: &'a Layout,
    config: Config,
    panels: Panels,
    palette: Palette,
    overview_layout: Layout,
    overview: Scene,
}

impl<'a> SceneBuilder<'a> {
    pub fn new(h: &'a Hierarchy, layout: &'a Layout, config: &Config, viewport: Viewport) -> Result<Self, SceneError> {
        if layout.len() != h.len() {
            return Err(SceneError::Mismatch {
                layout: layout.len(),
                hierarchy: h.len(),
            });
        }
        if !(viewport.width > 0.0 && viewport.height > 0.0) {
            return Err(SceneError::EmptyViewport(viewport.width, viewport.height));
        }
        let kind = layout.kind;
        let panels = Panels::new(kind, viewport, &config.panels);
        let palette = Palette::new(h, &config.style);
        let overview_layout = overview_layout(layout, panels.compress);
        let mut b = SceneBuilder {
            h,
            layout,
            config: config.clone(),
            panels,
            palette,
            overview_layout,
            overview: empty_scene(kind, viewport),
        };
        b.overview = b.build_overview(Execution::default());
        Ok(b)
    }

    /// Treemap swatches are squares that must fit the scale strip.
    fn scale_target(&self) -> f64 {
        if self.layout.kind == LayoutKind::Treemap {
            (SCALE_STRIP - 4.0).powi(2)
        } else {
            self.config.panels.scale_target_px
        }
    }

    pub fn panels(&self) -> &Panels {
        &self.panels
    }

    pub fn overview_layout(&self) -> &Layout {
        &self.overview_layout
    }

    fn primitives(&self, layout: &Layout, frame: &Frame, proj: &[Projected], tags: &TagSet, exec: Execution) -> Vec<Primitive> {
        let kind = layout.kind;
        let order = self.h.level_order();
        let prims = par::map(exec, order, |id| {
            let p = &proj[id.index()];
            if !p.visibility.is_visible() {
                return None;
            }
            let mut prim = primitive(kind, frame, &layout.bands, *id, p);
            let st = self.palette.style(*id, tags);
            prim.fill = st.fill;
            prim.outline = st.outline;
            Some(prim)
        });
        prims.into_iter().flatten().collect()
    }

    fn build_overview(&self, exec: Execution) -> Scene {
        let kind = self.layout.kind;
        let frame = self.panels.overview_frame(kind);
        let proj = clip_and_project(&self.overview_layout, &ViewWindow::full(kind), exec);
        let primitives = self.primitives(&self.overview_layout, &frame, &proj, &TagSet::new(), exec);
        let mut s = empty_scene(kind, self.panels.viewport);
        s.primitives = primitives;
        s.scale = scale_spec(self.h.total(), 1.0, frame.axis_px(kind) * self.panels.compress_factor(kind), self.scale_target());
        s
    }

    pub fn build(&self, window: &ViewWindow, tags: &TagSet, exec: Execution) -> Result<Scene, SceneError> {
        let kind = self.layout.kind;
        if !window.is_valid(kind) {
            return Err(SceneError::InvalidWindow(*window, kind));
        }
        let frame = self.panels.detail_frame(kind);
        let proj = clip_and_project(self.layout, window, exec);
        let primitives = self.primitives(self.layout, &frame, &proj, tags, exec);

        // labels: every visible node for linear/radial, deepest visible for treemaps
        let mut has_visible_child = vec![false; self.h.len()];
        if kind == LayoutKind::Treemap {
            for prim in &primitives {
                if let Some(p) = self.h.parent(prim.node) {
                    has_visible_child[p.index()] = true;
                }
            }
        }
        let reqs: Vec<LabelRequest<'_>> = primitives
            .iter()
            .filter(|p| !has_visible_child[p.node.index()])
            .map(|p| LabelRequest {
                node: p.node,
                name: &self.h.node(p.node).name,
                shape: label_shape(p, kind, self.h.node(p.node).depth),
                clip: p.clip,
                dark_text: p.fill.contrast_text() == Rgb::BLACK,
            })
            .collect();
        let metrics = self.config.labels.metrics();
        let mut labels = place_labels(&reqs, &metrics, &self.config.labels);
        for l in &mut labels {
            // round to the wire precision so scenes survive a round trip
            l.anchor = (l.anchor.0 as f32 as f64, l.anchor.1 as f32 as f64);
        }

        let mag = magnification(window, kind);
        let scale = scale_spec(self.h.total(), mag, frame.axis_px(kind), self.scale_target());

        let ov_frame = self.panels.overview_frame(kind);
        let dots = tag_dots(tags, &self.overview_layout)
            .into_iter()
            .map(|(node, (x, y))| {
                let (x, y) = match ov_frame {
                    Frame::Linear { x: ox, y: oy, w, h_unit } => (ox + x * w, oy + y * h_unit),
                    Frame::Radial { cx, cy, r_unit } => (cx + x * r_unit, cy + y * r_unit),
                    Frame::Nested { x: ox, y: oy, w_unit, h_unit } => (ox + x * w_unit, oy + y * h_unit),
                };
                TagDot {
                    node,
                    x: x as f32,
                    y: y as f32,
                }
            })
            .collect();

        let handles = Some(self.handles(window, &ov_frame));
        let crumbs = if kind == LayoutKind::Treemap {
            let focus = focus_of_window(self.h, self.layout, window);
            let trail = breadcrumbs(self.h, focus).expect("focus is a valid node").trail;
            Some(
                trail
                    .into_iter()
                    .map(|n| Crumb {
                        node: n,
                        text: self.h.node(n).name.clone(),
                    })
                    .collect(),
            )
        } else {
            None
        };

        Ok(Scene {
            kind,
            viewport: (self.panels.viewport.width as f32, self.panels.viewport.height as f32),
            primitives,
            labels,
            scale,
            breadcrumbs: crumbs,
            handles,
            tag_dots: dots,
            overview: Some(Box::new(self.overview.clone())),
        })
    }

    /// The window outline on the overview.
    fn handles(&self, window: &ViewWindow, frame: &Frame) -> Primitive {
        let root = self.h.root();
        let shape = match (*window, *frame) {
            (ViewWindow::Interval(s), Frame::Linear { x, y, w, h_unit }) => {
                let hh = (self.panels.overview.h).min(h_unit);
                let r = [(x + s.lo * w) as f32, y as f32, (s.width() * w) as f32, hh as f32];
                Shape::Rect { visible: r, full: r }
            }
            (ViewWindow::Interval(s), Frame::Radial { cx, cy, r_unit }) => {
                let Bands::Rings { inner, .. } = self.overview_layout.bands else {
                    unreachable!()
                };
                Shape::Sector {
                    cx: cx as f32,
                    cy: cy as f32,
                    r0: (inner * r_unit) as f32,
                    r1: (self.panels.compress * r_unit) as f32,
                    a0: s.lo as f32,
                    a1: s.hi as f32,
                    full_a0: s.lo as f32,
                    full_a1: s.hi as f32,
                }
            }
            (ViewWindow::Rect(r), Frame::Nested { x, y, w_unit, h_unit }) => {
                let c = self.panels.compress;
                let v = [
                    (x + r.x * c * w_unit) as f32,
                    (y + r.y * c * h_unit) as f32,
                    (r.w * c * w_unit) as f32,
                    (r.h * c * h_unit) as f32,
                ];
                Shape::Rect { visible: v, full: v }
            }
            _ => unreachable!("window does not match the layout kind"),
        };
        Primitive {
            node: root,
            shape,
            fill: Rgb::default(),
            outline: true,
            partial: false,
            clip: ClipEdges::default(),
        }
    }
}

impl Panels {
    fn compress_factor(&self, kind: LayoutKind) -> f64 {
        match kind {
            // the overview strip keeps the full width; only depth shrinks
            LayoutKind::Icicle => 1.0,
            LayoutKind::Treemap => self.compress * self.compress,
            _ => self.compress,
        }
    }
}

fn empty_scene(kind: LayoutKind, vp: Viewport) -> Scene {
    Scene {
        kind,
        viewport: (vp.width as f32, vp.height as f32),
        primitives: Vec::new(),
        labels: Vec::new(),
        scale: ScaleSpec {
            magnification: 1.0,
            tick_value: 0.0,
            tick_extent: 0.0,
            full_extent: 0.0,
        },
        breadcrumbs: None,
        handles: None,
        tag_dots: Vec::new(),
        overview: None,
    }
}

/// One-shot scene build. Prefer [`SceneBuilder`] when rendering many
/// windows of the same layout.
pub fn build_scene(
    h: &Hierarchy,
    layout: &Layout,
    window: &ViewWindow,
    tags: &TagSet,
    config: &Config,
    viewport: Viewport,
) -> Result<Scene, SceneError> {
    SceneBuilder::new(h, layout, config, viewport)?.build(window, tags, Execution::default())
}

/// Node geometry centre in px for a primitive (used by tests and the SVG
/// writer).
pub fn primitive_centre(kind: LayoutKind, p: &Primitive) -> (f64, f64) {
    match p.shape {
        Shape::Rect { visible: [x, y, w, h], .. } => (x as f64 + 0.5 * w as f64, y as f64 + 0.5 * h as f64),
        Shape::Sector {
            cx, cy, r0, r1, a0, a1, ..
        } => {
            let (dx, dy) = radial_point(kind, 0.5 * (r0 as f64 + r1 as f64), 0.5 * (a0 as f64 + a1 as f64));
            (cx as f64 + dx, cy as f64 + dy)
        }
    }
}
