//! Label-what-you-can placement.
//!
//! Candidates are visited by visible extent, largest first. A label sits at
//! the centre of the node's visible portion, is middle-truncated until it
//! fits, and carries chevrons on the sides where the node runs off screen.
//! Radial labels stay horizontal and must fit the chord of the visible arc.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::hierarchy::NodeId;
use crate::navigation::ClipEdges;

pub const ELLIPSIS: char = '…';
pub const CHEVRON_LEFT: char = '‹';
pub const CHEVRON_RIGHT: char = '›';

pub trait TextMetrics {
    fn width(&self, text: &str) -> f64;
    fn line_height(&self) -> f64;
}

/// Fixed advance per character.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Monospace {
    pub char_width: f64,
    pub line_height: f64,
}

impl Default for Monospace {
    fn default() -> Self {
        Monospace {
            char_width: 7.0,
            line_height: 12.0,
        }
    }
}

impl TextMetrics for Monospace {
    fn width(&self, text: &str) -> f64 {
        text.chars().count() as f64 * self.char_width
    }

    fn line_height(&self) -> f64 {
        self.line_height
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LabelConfig {
    /// Nodes narrower than this (px) get no label.
    pub min_extent_px: f64,
    /// Horizontal breathing room on each side of the text (px).
    pub padding_px: f64,
    /// Fewest characters kept around the ellipsis.
    pub min_chars: usize,
    /// Advance of the default monospace metrics (px).
    pub char_width_px: f64,
    pub line_height_px: f64,
}

impl LabelConfig {
    pub fn metrics(&self) -> Monospace {
        Monospace {
            char_width: self.char_width_px,
            line_height: self.line_height_px,
        }
    }
}

impl Default for LabelConfig {
    fn default() -> Self {
        LabelConfig {
            min_extent_px: 24.0,
            padding_px: 4.0,
            min_chars: 3,
            char_width_px: 7.0,
            line_height_px: 12.0,
        }
    }
}

/// Visible part of a node in screen pixels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LabelShape {
    /// Axis-aligned box; `group` keys the overlap test (layer index, or a
    /// single shared group for treemaps).
    Box { x: f64, y: f64, w: f64, h: f64, group: u32 },
    /// Annular sector with screen centre `(cx, cy)`, radii in px and the
    /// visible angle range in layout radians.
    Sector {
        cx: f64,
        cy: f64,
        r0: f64,
        r1: f64,
        a0: f64,
        a1: f64,
        ring: u32,
        sunburst: bool,
    },
}

impl LabelShape {
    /// Length available along the zoom axis, in px.
    pub fn extent(&self) -> f64 {
        match *self {
            LabelShape::Box { w, .. } => w,
            LabelShape::Sector { r0, r1, a0, a1, .. } => 0.5 * (r0 + r1) * (a1 - a0),
        }
    }

    pub fn anchor(&self) -> (f64, f64) {
        match *self {
            LabelShape::Box { x, y, w, h, .. } => (x + 0.5 * w, y + 0.5 * h),
            LabelShape::Sector {
                cx,
                cy,
                r0,
                r1,
                a0,
                a1,
                sunburst,
                ..
            } => {
                let r = 0.5 * (r0 + r1);
                let a = 0.5 * (a0 + a1);
                let (dx, dy) = if sunburst {
                    (r * a.sin(), -r * a.cos())
                } else {
                    (-r * a.cos(), -r * a.sin())
                };
                (cx + dx, cy + dy)
            }
        }
    }

    fn group(&self) -> u32 {
        match *self {
            LabelShape::Box { group, .. } => group,
            LabelShape::Sector { ring, .. } => ring,
        }
    }

    /// Widest text run that fits, and the available height.
    fn room(&self, pad: f64) -> (f64, f64) {
        match *self {
            LabelShape::Box { w, h, .. } => (w - 2.0 * pad, h),
            LabelShape::Sector { r0, r1, a0, a1, .. } => {
                let r = 0.5 * (r0 + r1);
                let chord = 2.0 * r * (0.5 * (a1 - a0).min(std::f64::consts::PI)).sin();
                (chord - 2.0 * pad, f64::INFINITY)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabelRequest<'a> {
    pub node: NodeId,
    pub name: &'a str,
    pub shape: LabelShape,
    pub clip: ClipEdges,
    pub dark_text: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabelPlacement {
    pub node: NodeId,
    pub anchor: (f64, f64),
    pub text: String,
    pub chevron_left: bool,
    pub chevron_right: bool,
    pub visible: bool,
    pub dark_text: bool,
}

impl LabelPlacement {
    /// Full rendered string including chevrons.
    pub fn display_text(&self) -> String {
        let mut s = String::new();
        if self.chevron_left {
            s.push(CHEVRON_LEFT);
        }
        s.push_str(&self.text);
        if self.chevron_right {
            s.push(CHEVRON_RIGHT);
        }
        s
    }
}

/// Middle-ellipsis truncation of `text` to at most `max_width`. Keeps at
/// least `min_chars` characters; `None` if even that does not fit.
pub fn fit_text(text: &str, max_width: f64, min_chars: usize, m: &dyn TextMetrics) -> Option<String> {
    if m.width(text) <= max_width {
        return Some(text.to_owned());
    }
    let chars: Vec<char> = text.chars().collect();
    let n = chars.len();
    if n <= min_chars {
        return None;
    }
    let build = |k: usize| -> String {
        let head = k.div_ceil(2);
        let tail = k / 2;
        let mut s: String = chars[..head].iter().collect();
        s.push(ELLIPSIS);
        s.extend(&chars[n - tail..]);
        s
    };
    // largest k in [min_chars, n - 1] that fits; width grows with k
    if m.width(&build(min_chars)) > max_width {
        return None;
    }
    let (mut lo, mut hi) = (min_chars, n - 1);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if m.width(&build(mid)) <= max_width {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Some(build(lo))
}

/// Screen box of a placed label: `(x0, y0, x1, y1)`.
pub fn label_box(p: &LabelPlacement, m: &dyn TextMetrics) -> (f64, f64, f64, f64) {
    let w = m.width(&p.display_text());
    let h = m.line_height();
    let (x, y) = p.anchor;
    (x - 0.5 * w, y - 0.5 * h, x + 0.5 * w, y + 0.5 * h)
}

const CELL: f64 = 64.0;

/// Spatial hash of placed label boxes, keyed by overlap group.
#[derive(Default)]
struct Occupancy {
    cells: HashMap<(u32, i64, i64), Vec<usize>>,
    boxes: Vec<(f64, f64, f64, f64)>,
}

impl Occupancy {
    fn cells_of(b: (f64, f64, f64, f64)) -> impl Iterator<Item = (i64, i64)> {
        let (x0, y0) = ((b.0 / CELL).floor() as i64, (b.1 / CELL).floor() as i64);
        let (x1, y1) = ((b.2 / CELL).floor() as i64, (b.3 / CELL).floor() as i64);
        (x0..=x1).flat_map(move |i| (y0..=y1).map(move |j| (i, j)))
    }

    fn collides(&self, group: u32, b: (f64, f64, f64, f64)) -> bool {
        Self::cells_of(b).any(|(i, j)| {
            self.cells.get(&(group, i, j)).is_some_and(|v| {
                v.iter().any(|&k| {
                    let o = self.boxes[k];
                    b.0 < o.2 && o.0 < b.2 && b.1 < o.3 && o.1 < b.3
                })
            })
        })
    }

    fn insert(&mut self, group: u32, b: (f64, f64, f64, f64)) {
        let k = self.boxes.len();
        self.boxes.push(b);
        for (i, j) in Self::cells_of(b) {
            self.cells.entry((group, i, j)).or_default().push(k);
        }
    }
}

/// Places labels for the given requests. Requests narrower than the minimum
/// extent are dropped; the rest come back in request order, each either
/// visible or not.
pub fn place_labels(reqs: &[LabelRequest<'_>], m: &dyn TextMetrics, cfg: &LabelConfig) -> Vec<LabelPlacement> {
    let mut order: Vec<usize> = (0..reqs.len())
        .filter(|&i| reqs[i].shape.extent() >= cfg.min_extent_px)
        .collect();
    // stable: ties keep request order
    order.sort_by(|&a, &b| reqs[b].shape.extent().total_cmp(&reqs[a].shape.extent()));

    let chevron_w = |c: char| m.width(c.encode_utf8(&mut [0; 4]));
    let mut occ = Occupancy::default();
    let mut placed: Vec<(usize, LabelPlacement)> = Vec::with_capacity(order.len());
    for i in order {
        let r = &reqs[i];
        let (left, right) = (r.clip.left(), r.clip.right());
        let (mut room, height) = r.shape.room(cfg.padding_px);
        if left {
            room -= chevron_w(CHEVRON_LEFT);
        }
        if right {
            room -= chevron_w(CHEVRON_RIGHT);
        }
        let mut p = LabelPlacement {
            node: r.node,
            anchor: r.shape.anchor(),
            text: String::new(),
            chevron_left: left,
            chevron_right: right,
            visible: false,
            dark_text: r.dark_text,
        };
        if height >= m.line_height() {
            if let Some(text) = fit_text(r.name, room, cfg.min_chars, m) {
                p.text = text;
                let b = label_box(&p, m);
                let group = r.shape.group();
                if !occ.collides(group, b) {
                    occ.insert(group, b);
                    p.visible = true;
                }
            }
        }
        if !p.visible {
            p.text.clear();
        }
        placed.push((i, p));
    }
    placed.sort_by_key(|(i, _)| *i);
    placed.into_iter().map(|(_, p)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boxed(x: f64, w: f64) -> LabelShape {
        LabelShape::Box {
            x,
            y: 0.0,
            w,
            h: 20.0,
            group: 1,
        }
    }

    fn req<'a>(name: &'a str, shape: LabelShape, clip: u8) -> LabelRequest<'a> {
        LabelRequest {
            node: NodeId(1),
            name,
            shape,
            clip: ClipEdges(clip),
            dark_text: true,
        }
    }

    #[test]
    fn fully_visible_centred() {
        let name = "abcdefghijk"; // 11 chars ≈ 77 px
        let out = place_labels(&[req(name, boxed(100.0, 200.0), 0)], &Monospace::default(), &LabelConfig::default());
        assert_eq!(out.len(), 1);
        let p = &out[0];
        assert!(p.visible);
        assert_eq!(p.text, name);
        assert_eq!(p.anchor, (200.0, 10.0));
        assert!(!p.chevron_left && !p.chevron_right);
    }

    #[test]
    fn clipped_left_gets_chevron() {
        let out = place_labels(
            &[req("label", boxed(0.0, 120.0), ClipEdges::LEFT)],
            &Monospace::default(),
            &LabelConfig::default(),
        );
        assert!(out[0].visible && out[0].chevron_left && !out[0].chevron_right);
        assert_eq!(out[0].anchor.0, 60.0);
        assert_eq!(out[0].display_text(), "‹label");
    }

    #[test]
    fn truncation_and_rejection() {
        let m = Monospace::default();
        assert_eq!(fit_text("abcdefghij", 42.0, 3, &m).as_deref(), Some("abc…ij"));
        assert_eq!(fit_text("abcdefghij", 28.0, 3, &m).as_deref(), Some("ab…j"));
        assert_eq!(fit_text("abcdefghij", 27.0, 3, &m), None);
        assert_eq!(fit_text("ab", 14.0, 3, &m).as_deref(), Some("ab"));
        // 30 px box: 22 px of room fits no 3-char truncation
        let out = place_labels(&[req("a long name", boxed(0.0, 30.0), 0)], &m, &LabelConfig::default());
        assert!(!out[0].visible);
        assert!(out[0].text.is_empty());
    }

    #[test]
    fn narrow_nodes_skipped() {
        let out = place_labels(&[req("x", boxed(0.0, 23.9), 0)], &Monospace::default(), &LabelConfig::default());
        assert!(out.is_empty());
    }

    #[test]
    fn radial_chord_test() {
        let m = Monospace::default();
        let sector = |a1: f64| LabelShape::Sector {
            cx: 0.0,
            cy: 0.0,
            r0: 90.0,
            r1: 110.0,
            a0: 0.0,
            a1,
            ring: 2,
            sunburst: true,
        };
        // chord at r = 100 over 0.5 rad ≈ 49.5 px, room ≈ 41.5 px
        let out = place_labels(&[req("abcde", sector(0.5), 0)], &m, &LabelConfig::default());
        assert!(out[0].visible);
        assert_eq!(out[0].text, "abcde");
        let out = place_labels(&[req("abcdefghijkl", sector(0.5), 0)], &m, &LabelConfig::default());
        assert_eq!(out[0].text, "ab…kl");
        let (x, y) = out[0].anchor;
        assert!(((x * x + y * y).sqrt() - 100.0).abs() < 1e-9);
    }

    #[test]
    fn overlap_is_per_group() {
        let m = Monospace::default();
        let a = boxed(0.0, 100.0);
        let b = boxed(20.0, 100.0);
        let out = place_labels(&[req("wwwww", a, 0), req("wwwww", b, 0)], &m, &LabelConfig::default());
        assert!(out[0].visible);
        assert!(!out[1].visible);
        let LabelShape::Box { x, y, w, h, .. } = b else { unreachable!() };
        let other = LabelShape::Box { x, y, w, h, group: 2 };
        let out = place_labels(&[req("wwwww", a, 0), req("wwwww", other, 0)], &m, &LabelConfig::default());
        assert!(out[0].visible && out[1].visible);
    }
}
