//! Full-extent geometry for every node under the four layout kinds.
//!
//! Geometry is normalized and window independent: spans live in `[0, 1]`,
//! arcs are stored as fractions of the chart's total angle, rectangles in
//! the unit square (x scaled by the viewport aspect). Every node gets a
//! record, including zero-valued ones which get zero extent.

mod treemap;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hierarchy::{Hierarchy, NodeId};

pub use treemap::{layout_treemap, squarify, worst_aspect, AspectError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutKind {
    Icicle,
    Sundown,
    Sunburst,
    Treemap,
}

impl LayoutKind {
    pub const ALL: [LayoutKind; 4] = [
        LayoutKind::Icicle,
        LayoutKind::Sundown,
        LayoutKind::Sunburst,
        LayoutKind::Treemap,
    ];

    /// Length of the quantitative axis: 1 for icicles, the swept angle for
    /// radial charts. Treemap windows are unit rectangles.
    pub fn full_extent(self) -> f64 {
        match self {
            LayoutKind::Icicle | LayoutKind::Treemap => 1.0,
            LayoutKind::Sundown => PI,
            LayoutKind::Sunburst => 2.0 * PI,
        }
    }

    pub fn is_radial(self) -> bool {
        matches!(self, LayoutKind::Sundown | LayoutKind::Sunburst)
    }

    pub fn code(self) -> u8 {
        match self {
            LayoutKind::Icicle => 0,
            LayoutKind::Sundown => 1,
            LayoutKind::Sunburst => 2,
            LayoutKind::Treemap => 3,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(code as usize).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            LayoutKind::Icicle => "icicle",
            LayoutKind::Sundown => "sundown",
            LayoutKind::Sunburst => "sunburst",
            LayoutKind::Treemap => "treemap",
        }
    }
}

impl fmt::Display for LayoutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LayoutKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LayoutKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown layout kind '{s}'"))
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Span {
    pub lo: f64,
    pub hi: f64,
}

impl Span {
    pub const UNIT: Span = Span { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Self {
        Span { lo, hi }
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains_span(self, other: Span) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Axis-aligned rectangle, origin top-left.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub const UNIT: Rect = Rect {
        x: 0.0,
        y: 0.0,
        w: 1.0,
        h: 1.0,
    };

    pub fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        Rect { x, y, w, h }
    }

    pub fn area(self) -> f64 {
        self.w * self.h
    }

    pub fn right(self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(self) -> f64 {
        self.y + self.h
    }

    pub fn center(self) -> (f64, f64) {
        (self.x + 0.5 * self.w, self.y + 0.5 * self.h)
    }

    /// Shrinks by `pad` on every side; collapses to a zero-size rect at the
    /// centre when the padding does not fit.
    pub fn inset(self, pad: f64) -> Rect {
        let w = self.w - 2.0 * pad;
        let h = self.h - 2.0 * pad;
        if w <= 0.0 || h <= 0.0 {
            let (cx, cy) = self.center();
            Rect::new(cx, cy, 0.0, 0.0)
        } else {
            Rect::new(self.x + pad, self.y + pad, w, h)
        }
    }

    pub fn contains_rect(self, o: Rect, eps: f64) -> bool {
        o.x >= self.x - eps
            && o.y >= self.y - eps
            && o.right() <= self.right() + eps
            && o.bottom() <= self.bottom() + eps
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearGeom {
    pub span: Span,
    pub layer: u32,
}

/// Arc stored as fractions of the chart's total angle so that the
/// normalized extent is bit-identical to the icicle span.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngularGeom {
    pub frac: Span,
    pub ring: u32,
    pub total_angle: f64,
}

impl AngularGeom {
    /// Arc in radians, `[θ0, θ1]`.
    pub fn arc(&self) -> Span {
        Span::new(self.frac.lo * self.total_angle, self.frac.hi * self.total_angle)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RectGeom {
    pub rect: Rect,
    /// Region left for the children once padding is taken off.
    pub inner: Rect,
    pub depth: u32,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NodeGeom {
    Linear(LinearGeom),
    Angular(AngularGeom),
    Rect(RectGeom),
}

impl NodeGeom {
    /// Extent along the quantitative axis as a fraction (linear/radial) or
    /// the rectangle area (treemap).
    pub fn measure(&self) -> f64 {
        match self {
            NodeGeom::Linear(g) => g.span.width(),
            NodeGeom::Angular(g) => g.frac.width(),
            NodeGeom::Rect(g) => g.rect.area(),
        }
    }

    pub fn depth(&self) -> u32 {
        match self {
            NodeGeom::Linear(g) => g.layer,
            NodeGeom::Angular(g) => g.ring,
            NodeGeom::Rect(g) => g.depth,
        }
    }
}

/// Parameters of the non-quantitative dimension.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bands {
    /// Layer `d` occupies `[d·thickness, (d+1)·thickness]` of the panel height.
    Layers { thickness: f64 },
    /// Ring `d` occupies `[inner + d·thickness, inner + (d+1)·thickness]` of
    /// the outer radius.
    Rings { inner: f64, thickness: f64 },
    /// Rectangles are in unit-square coordinates scaled by `scale`.
    Nested { aspect: f64, scale: f64 },
}

impl Bands {
    pub fn layer(&self, d: u32) -> Span {
        match *self {
            Bands::Layers { thickness } => {
                Span::new(d as f64 * thickness, (d as f64 + 1.0) * thickness)
            }
            Bands::Rings { inner, thickness } => Span::new(
                inner + d as f64 * thickness,
                inner + (d as f64 + 1.0) * thickness,
            ),
            Bands::Nested { .. } => Span::UNIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    pub kind: LayoutKind,
    pub geoms: Vec<NodeGeom>,
    pub bands: Bands,
}

impl Layout {
    pub fn geom(&self, id: NodeId) -> &NodeGeom {
        &self.geoms[id.index()]
    }

    pub fn len(&self) -> usize {
        self.geoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.geoms.is_empty()
    }

    /// Quantitative extent of a node along the zoom axis, in window units
    /// (fraction for icicle, radians for radial kinds). `None` for treemaps.
    pub fn extent(&self, id: NodeId) -> Option<Span> {
        match self.geom(id) {
            NodeGeom::Linear(g) => Some(g.span),
            NodeGeom::Angular(g) => Some(g.arc()),
            NodeGeom::Rect(_) => None,
        }
    }
}

/// Point at radius `r` (fraction of the outer radius) and layout angle
/// `theta`, relative to the chart centre with y pointing down. Sundown
/// angle 0 is 9 o'clock, sunburst angle 0 is 12 o'clock; both run clockwise.
pub fn radial_point(kind: LayoutKind, r: f64, theta: f64) -> (f64, f64) {
    match kind {
        LayoutKind::Sunburst => (r * theta.sin(), -r * theta.cos()),
        _ => (-r * theta.cos(), -r * theta.sin()),
    }
}

/// Centre of a node's full geometry in layout coordinates: `(x, y)` in the
/// unit panel for icicles and treemaps, centre-relative for radial kinds.
pub fn centroid(layout: &Layout, id: NodeId) -> (f64, f64) {
    match layout.geom(id) {
        NodeGeom::Linear(g) => (g.span.mid(), layout.bands.layer(g.layer).mid()),
        NodeGeom::Angular(g) => {
            radial_point(layout.kind, layout.bands.layer(g.ring).mid(), g.arc().mid())
        }
        NodeGeom::Rect(g) => g.rect.center(),
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LayoutError {
    #[error("root total value is {0}; nothing to lay out")]
    DegenerateRoot(f64),
    #[error("viewport aspect ratio must be positive and finite, got {0}")]
    BadAspect(f64),
    #[error("radial inner radius must be in [0, 1), got {0}")]
    BadInnerRadius(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayoutParams {
    /// Inner radius of ring 0 as a fraction of the outer radius.
    pub r_inner: f64,
    /// Treemap padding as a fraction of the root's shorter side.
    pub treemap_padding: f64,
    /// Treemap viewport width / height.
    pub aspect: f64,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            r_inner: 0.08,
            treemap_padding: 0.005,
            aspect: 1.5,
        }
    }
}

pub fn layout(h: &Hierarchy, kind: LayoutKind, params: &LayoutParams) -> Result<Layout, LayoutError> {
    match kind {
        LayoutKind::Icicle => layout_linear(h),
        LayoutKind::Sundown | LayoutKind::Sunburst => layout_radial(h, kind, params.r_inner),
        LayoutKind::Treemap => layout_treemap(h, params.aspect, params.treemap_padding),
    }
}

fn check_root(h: &Hierarchy) -> Result<(), LayoutError> {
    let t = h.total();
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(LayoutError::DegenerateRoot(t))
    }
}

/// Partitions the unit interval top-down. A node's self value takes the
/// leading part of its span; children follow in sibling order.
fn partition_spans(h: &Hierarchy) -> Vec<Span> {
    let mut spans = vec![Span::default(); h.len()];
    spans[0] = Span::UNIT;
    for (i, node) in h.nodes().iter().enumerate() {
        if node.children.is_empty() {
            continue;
        }
        let Span { lo: a, hi: b } = spans[i];
        let w = b - a;
        let total = node.total_value;
        if total <= 0.0 {
            for c in &node.children {
                spans[c.index()] = Span::new(a, a);
            }
            continue;
        }
        let mut acc = node.self_value;
        let mut lo = (a + w * (acc / total)).min(b);
        let last_positive = node
            .children
            .iter()
            .rposition(|c| h.node(*c).total_value > 0.0);
        for (k, c) in node.children.iter().enumerate() {
            let v = h.node(*c).total_value;
            acc += v;
            let hi = if Some(k) == last_positive {
                b
            } else if v > 0.0 {
                (a + w * (acc / total)).min(b)
            } else {
                lo
            };
            spans[c.index()] = Span::new(lo, hi);
            lo = hi;
        }
    }
    spans
}

pub fn layout_linear(h: &Hierarchy) -> Result<Layout, LayoutError> {
    check_root(h)?;
    let spans = partition_spans(h);
    let geoms = spans
        .into_iter()
        .zip(h.nodes())
        .map(|(span, n)| {
            NodeGeom::Linear(LinearGeom {
                span,
                layer: n.depth,
            })
        })
        .collect();
    Ok(Layout {
        kind: LayoutKind::Icicle,
        geoms,
        bands: Bands::Layers {
            thickness: 1.0 / h.depth_levels() as f64,
        },
    })
}

/// Sundown sweeps `[0, π]` from 9 o'clock clockwise over the top; sunburst
/// sweeps `[0, 2π]` clockwise from 12 o'clock.
pub fn layout_radial(h: &Hierarchy, kind: LayoutKind, r_inner: f64) -> Result<Layout, LayoutError> {
    assert!(kind.is_radial(), "layout_radial called with {kind}");
    check_root(h)?;
    if !(0.0..1.0).contains(&r_inner) {
        return Err(LayoutError::BadInnerRadius(r_inner));
    }
    let total_angle = kind.full_extent();
    let spans = partition_spans(h);
    let geoms = spans
        .into_iter()
        .zip(h.nodes())
        .map(|(frac, n)| {
            NodeGeom::Angular(AngularGeom {
                frac,
                ring: n.depth,
                total_angle,
            })
        })
        .collect();
    Ok(Layout {
        kind,
        geoms,
        bands: Bands::Rings {
            inner: r_inner,
            thickness: (1.0 - r_inner) / h.depth_levels() as f64,
        },
    })
}
