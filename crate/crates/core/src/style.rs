//! Structure-based colouring and tags.
//!
//! Every node gets a hue range carved out of `[0, 1]` by leaf count; the
//! midpoint picks a position on the cubehelix spectrum. Depth raises the
//! saturation level, which both darkens the colour and widens the helix
//! amplitude. Nothing here depends on the view window.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::hierarchy::{Hierarchy, NodeId};
use crate::layout::{centroid, Layout, Span};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HueBasis {
    /// Split by descendant leaf count.
    #[default]
    Leaves,
    /// Split by total value.
    Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CubehelixParams {
    pub start: f64,
    pub rotations: f64,
    pub hue_amount: f64,
    pub gamma: f64,
}

impl Default for CubehelixParams {
    fn default() -> Self {
        CubehelixParams {
            start: 0.5,
            rotations: -1.5,
            hue_amount: 1.2,
            gamma: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub const BLACK: Rgb = Rgb(0, 0, 0);
    pub const WHITE: Rgb = Rgb(255, 255, 255);

    /// WCAG relative luminance in `[0, 1]`.
    pub fn luminance(self) -> f64 {
        let lin = |c: u8| {
            let c = c as f64 / 255.0;
            if c <= 0.03928 {
                c / 12.92
            } else {
                ((c + 0.055) / 1.055).powf(2.4)
            }
        };
        0.2126 * lin(self.0) + 0.7152 * lin(self.1) + 0.0722 * lin(self.2)
    }

    /// Label colour readable on this fill.
    pub fn contrast_text(self) -> Rgb {
        if self.luminance() > 0.5 {
            Rgb::BLACK
        } else {
            Rgb::WHITE
        }
    }

    pub fn hex(self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }
}

/// Cubehelix colour at spectrum position `t` and lightness `lightness`.
pub fn cubehelix(t: f64, lightness: f64, p: &CubehelixParams) -> Rgb {
    let phi = 2.0 * std::f64::consts::PI * (p.start / 3.0 + 1.0 + p.rotations * t);
    let l = lightness.clamp(0.0, 1.0).powf(p.gamma);
    let a = p.hue_amount * l * (1.0 - l) / 2.0;
    let (s, c) = phi.sin_cos();
    let q = |x: f64| (x.clamp(0.0, 1.0) * 255.0).round() as u8;
    Rgb(
        q(l + a * (-0.14861 * c + 1.78277 * s)),
        q(l + a * (-0.29227 * c - 0.90649 * s)),
        q(l + a * (1.97294 * c)),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StyleConfig {
    pub cubehelix: CubehelixParams,
    /// Saturation level of the root.
    pub saturation_min: f64,
    /// Saturation level at the deepest layer.
    pub saturation_max: f64,
    /// Lightness at the lowest saturation.
    pub lightness_max: f64,
    /// Lightness at the highest saturation.
    pub lightness_min: f64,
    pub hue_basis: HueBasis,
}

impl Default for StyleConfig {
    fn default() -> Self {
        StyleConfig {
            cubehelix: CubehelixParams::default(),
            saturation_min: 0.35,
            saturation_max: 1.0,
            lightness_max: 0.75,
            lightness_min: 0.35,
            hue_basis: HueBasis::Leaves,
        }
    }
}

impl StyleConfig {
    pub fn saturation(&self, depth: u32, depth_max: u32) -> f64 {
        let f = if depth_max == 0 {
            0.0
        } else {
            depth as f64 / depth_max as f64
        };
        self.saturation_min + (self.saturation_max - self.saturation_min) * f
    }

    pub fn lightness(&self, saturation: f64) -> f64 {
        let range = self.saturation_max - self.saturation_min;
        let f = if range > 0.0 {
            (saturation - self.saturation_min) / range
        } else {
            0.0
        };
        self.lightness_max - (self.lightness_max - self.lightness_min) * f
    }
}

/// Hue range per node. Children split the parent range in sibling order
/// proportionally to the configured basis.
pub fn assign_hues(h: &Hierarchy, basis: HueBasis) -> Vec<Span> {
    let mut ranges = vec![Span::default(); h.len()];
    ranges[0] = Span::UNIT;
    let weight = |id: NodeId| {
        let n = h.node(id);
        match basis {
            HueBasis::Leaves => n.leaf_count as f64,
            HueBasis::Value => n.total_value,
        }
    };
    for (i, node) in h.nodes().iter().enumerate() {
        if node.children.is_empty() {
            continue;
        }
        let r = ranges[i];
        let total: f64 = node.children.iter().map(|c| weight(*c)).sum();
        let last_positive = node.children.iter().rposition(|c| weight(*c) > 0.0);
        let mut acc = 0.0;
        let mut lo = r.lo;
        for (k, c) in node.children.iter().enumerate() {
            let w = weight(*c);
            acc += w;
            let hi = if Some(k) == last_positive {
                r.hi
            } else if w > 0.0 {
                (r.lo + r.width() * acc / total).min(r.hi)
            } else {
                lo
            };
            ranges[c.index()] = Span::new(lo, hi);
            lo = hi;
        }
    }
    ranges
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TagSet {
    tagged: BTreeSet<NodeId>,
}

impl TagSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.tagged.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.tagged.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tagged.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.tagged.iter().copied()
    }

    /// Set with `id`'s membership flipped.
    #[must_use]
    pub fn toggled(&self, id: NodeId) -> TagSet {
        let mut t = self.clone();
        if !t.tagged.remove(&id) {
            t.tagged.insert(id);
        }
        t
    }
}

impl FromIterator<NodeId> for TagSet {
    fn from_iter<I: IntoIterator<Item = NodeId>>(iter: I) -> Self {
        TagSet {
            tagged: iter.into_iter().collect(),
        }
    }
}

pub fn toggle_tag(tags: &TagSet, id: NodeId) -> TagSet {
    tags.toggled(id)
}

/// Overview centroid of every tagged node, in tag order.
pub fn tag_dots(tags: &TagSet, overview: &Layout) -> Vec<(NodeId, (f64, f64))> {
    tags.iter()
        .filter(|id| id.index() < overview.len())
        .map(|id| (id, centroid(overview, id)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeStyle {
    pub fill: Rgb,
    pub saturation_level: f64,
    pub outline: bool,
}

/// Precomputed per-node fills; tags are applied per call.
#[derive(Clone, Debug, PartialEq)]
pub struct Palette {
    hues: Vec<Span>,
    fills: Vec<(Rgb, f64)>,
}

impl Palette {
    pub fn new(h: &Hierarchy, cfg: &StyleConfig) -> Self {
        let hues = assign_hues(h, cfg.hue_basis);
        let fills = h
            .nodes()
            .iter()
            .zip(&hues)
            .map(|(n, hue)| base_style(hue.mid(), n.depth, h.depth_max(), cfg))
            .collect();
        Palette { hues, fills }
    }

    pub fn hues(&self) -> &[Span] {
        &self.hues
    }

    pub fn style(&self, id: NodeId, tags: &TagSet) -> NodeStyle {
        let (fill, saturation_level) = self.fills[id.index()];
        NodeStyle {
            fill,
            saturation_level,
            outline: tags.contains(id),
        }
    }
}

fn base_style(hue: f64, depth: u32, depth_max: u32, cfg: &StyleConfig) -> (Rgb, f64) {
    let sat = cfg.saturation(depth, depth_max);
    let params = CubehelixParams {
        hue_amount: cfg.cubehelix.hue_amount * sat,
        ..cfg.cubehelix
    };
    (cubehelix(hue, cfg.lightness(sat), &params), sat)
}

/// Style of a single node from precomputed hue ranges.
pub fn style_of(h: &Hierarchy, hues: &[Span], n: NodeId, tags: &TagSet, cfg: &StyleConfig) -> NodeStyle {
    let (fill, saturation_level) = base_style(hues[n.index()].mid(), h.node(n).depth, h.depth_max(), cfg);
    NodeStyle {
        fill,
        saturation_level,
        outline: tags.contains(n),
    }
}
