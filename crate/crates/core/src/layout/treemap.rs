//! Squarified treemap.
//!
//! Children are taken in sibling order (never sorted) and greedily packed
//! into rows along the shorter side of the free rectangle; an item joins the
//! current row only if that does not make the row's worst aspect ratio
//! worse. A node's self value is packed as the first item.

use thiserror::Error;

use super::{check_root, Bands, Layout, LayoutError, LayoutKind, NodeGeom, Rect, RectGeom};
use crate::hierarchy::Hierarchy;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AspectError {
    #[error("row must be non-empty")]
    EmptyRow,
    #[error("row values, side and total must be positive and finite")]
    NonPositive,
    #[error("row area {row} exceeds the region area {total}")]
    RowTooLarge { row: f64, total: f64 },
}

/// Worst aspect ratio of a row of areas laid against a side of length
/// `side`, inside a free region of area `total`.
pub fn worst_aspect(row_values: &[f64], side: f64, total: f64) -> Result<f64, AspectError> {
    if row_values.is_empty() {
        return Err(AspectError::EmptyRow);
    }
    let positive = |x: f64| x > 0.0 && x.is_finite();
    if !positive(side) || !positive(total) || !row_values.iter().all(|v| positive(*v)) {
        return Err(AspectError::NonPositive);
    }
    let sum: f64 = row_values.iter().sum();
    if sum > total * (1.0 + 1e-9) {
        return Err(AspectError::RowTooLarge { row: sum, total });
    }
    let (min, max) = row_values
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    Ok(row_worst(sum, min, max, side))
}

#[inline]
fn row_worst(sum: f64, min: f64, max: f64, side: f64) -> f64 {
    let s2 = side * side;
    let sum2 = sum * sum;
    (s2 * max / sum2).max(sum2 / (s2 * min))
}

/// Squarified packing of `weights` into `rect`; areas are proportional to
/// the weights and together fill the rectangle. Zero weights get a
/// zero-size rectangle at the corner where the previous item ended.
pub fn squarify(weights: &[f64], rect: Rect) -> Vec<Rect> {
    let mut out = vec![Rect::new(rect.x, rect.y, 0.0, 0.0); weights.len()];
    let total: f64 = weights.iter().sum();
    let area = rect.area();
    if total <= 0.0 || area <= 0.0 {
        return out;
    }
    let scale = area / total;
    let items: Vec<(usize, f64)> = weights
        .iter()
        .enumerate()
        .filter(|(_, w)| **w > 0.0)
        .map(|(i, w)| (i, w * scale))
        .collect();

    let mut free = rect;
    let mut i = 0;
    while i < items.len() {
        let side = free.w.min(free.h);
        let (mut sum, mut min, mut max) = (items[i].1, items[i].1, items[i].1);
        let mut worst = row_worst(sum, min, max, side);
        let mut j = i + 1;
        while j < items.len() {
            let a = items[j].1;
            let (s2, lo, hi) = (sum + a, min.min(a), max.max(a));
            let w2 = row_worst(s2, lo, hi, side);
            if w2 > worst {
                break;
            }
            (sum, min, max, worst) = (s2, lo, hi, w2);
            j += 1;
        }
        let last_row = j == items.len();
        free = place_row(&items[i..j], sum, free, last_row, &mut out);
        i = j;
    }

    // zero-weight items sit where their predecessor ended
    let mut corner = (rect.x, rect.y);
    for (k, w) in weights.iter().enumerate() {
        if *w > 0.0 {
            corner = (out[k].right(), out[k].bottom());
        } else {
            out[k] = Rect::new(corner.0, corner.1, 0.0, 0.0);
        }
    }
    out
}

fn place_row(row: &[(usize, f64)], sum: f64, free: Rect, last_row: bool, out: &mut [Rect]) -> Rect {
    if free.w >= free.h {
        // column against the left edge, items stacked downward
        let t = if last_row { free.w } else { (sum / free.h).min(free.w) };
        let mut y = free.y;
        for (k, &(idx, a)) in row.iter().enumerate() {
            let h = if k + 1 == row.len() {
                free.bottom() - y
            } else {
                (a / t).min(free.bottom() - y)
            };
            out[idx] = Rect::new(free.x, y, t, h);
            y += h;
        }
        Rect::new(free.x + t, free.y, free.w - t, free.h)
    } else {
        // strip along the top edge, items left to right
        let t = if last_row { free.h } else { (sum / free.w).min(free.h) };
        let mut x = free.x;
        for (k, &(idx, a)) in row.iter().enumerate() {
            let w = if k + 1 == row.len() {
                free.right() - x
            } else {
                (a / t).min(free.right() - x)
            };
            out[idx] = Rect::new(x, free.y, w, t);
            x += w;
        }
        Rect::new(free.x, free.y + t, free.w, free.h - t)
    }
}

/// Squarified treemap of the whole hierarchy in a viewport of the given
/// aspect (width / height). `padding` is a fraction of the shorter side by
/// which each parent insets its children. Output rectangles are normalized
/// to the unit square.
pub fn layout_treemap(h: &Hierarchy, aspect: f64, padding: f64) -> Result<Layout, LayoutError> {
    check_root(h)?;
    if !(aspect > 0.0 && aspect.is_finite()) {
        return Err(LayoutError::BadAspect(aspect));
    }
    let pad = padding.max(0.0) * aspect.min(1.0);
    let mut rects = vec![(Rect::default(), Rect::default()); h.len()];
    rects[0].0 = Rect::new(0.0, 0.0, aspect, 1.0);
    let mut weights = Vec::new();
    for (i, node) in h.nodes().iter().enumerate() {
        let rect = rects[i].0;
        if node.children.is_empty() {
            rects[i].1 = rect;
            continue;
        }
        let inner = rect.inset(pad);
        rects[i].1 = inner;
        weights.clear();
        weights.push(node.self_value);
        weights.extend(node.children.iter().map(|c| h.node(*c).total_value));
        let placed = squarify(&weights, inner);
        for (c, r) in node.children.iter().zip(&placed[1..]) {
            rects[c.index()].0 = *r;
        }
    }
    let norm = |r: Rect| Rect::new(r.x / aspect, r.y, r.w / aspect, r.h);
    let geoms = rects
        .into_iter()
        .zip(h.nodes())
        .map(|((rect, inner), n)| {
            NodeGeom::Rect(RectGeom {
                rect: norm(rect),
                inner: norm(inner),
                depth: n.depth,
            })
        })
        .collect();
    Ok(Layout {
        kind: LayoutKind::Treemap,
        geoms,
        bands: Bands::Nested { aspect, scale: 1.0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::{ingest, Format};

    fn aspect(r: &Rect) -> f64 {
        (r.w / r.h).max(r.h / r.w)
    }

    #[test]
    fn worst_aspect_examples() {
        assert_eq!(worst_aspect(&[4.0], 2.0, 10.0).unwrap(), 1.0);
        assert_eq!(worst_aspect(&[8.0], 2.0, 10.0).unwrap(), 2.0);
        assert_eq!(worst_aspect(&[], 2.0, 1.0), Err(AspectError::EmptyRow));
        assert_eq!(worst_aspect(&[1.0, 0.0], 2.0, 5.0), Err(AspectError::NonPositive));
        assert_eq!(worst_aspect(&[1.0], -2.0, 5.0), Err(AspectError::NonPositive));
        assert!(matches!(
            worst_aspect(&[3.0, 3.0], 1.0, 5.0),
            Err(AspectError::RowTooLarge { .. })
        ));
    }

    #[test]
    fn two_equal_values_in_unit_square() {
        let rs = squarify(&[1.0, 1.0], Rect::UNIT);
        assert_eq!(rs.len(), 2);
        for r in &rs {
            assert!((r.area() - 0.5).abs() < 1e-15);
            assert!((aspect(r) - 2.0).abs() < 1e-12);
        }
        assert!((rs[0].w - rs[1].w).abs() < 1e-15 && (rs[0].h - rs[1].h).abs() < 1e-15);
    }

    #[test]
    fn squarify_fills_rect() {
        let weights = [6.0, 6.0, 4.0, 3.0, 2.0, 2.0, 1.0];
        let rect = Rect::new(0.0, 0.0, 6.0, 4.0);
        let rs = squarify(&weights, rect);
        let sum: f64 = rs.iter().map(|r| r.area()).sum();
        assert!((sum - 24.0).abs() < 1e-12);
        for (r, w) in rs.iter().zip(weights) {
            assert!((r.area() - w).abs() < 1e-9, "{r:?} vs {w}");
            assert!(rect.contains_rect(*r, 1e-12));
        }
        // the classic example yields rows [6,6], [4,3], [2,2,1]
        assert!((rs[0].w - 3.0).abs() < 1e-12 && (rs[1].w - 3.0).abs() < 1e-12);
    }

    #[test]
    fn zero_weights() {
        let rs = squarify(&[0.0, 2.0, 0.0, 2.0], Rect::new(0.0, 0.0, 2.0, 2.0));
        assert_eq!(rs[0].area(), 0.0);
        assert_eq!(rs[2].area(), 0.0);
        assert!((rs[1].area() - 2.0).abs() < 1e-12);
        assert!(squarify(&[0.0, 0.0], Rect::UNIT).iter().all(|r| r.area() == 0.0));
    }

    #[test]
    fn single_child_fills_parent() {
        let h = ingest("r;a 3", Format::FoldedStacks).unwrap();
        let l = layout_treemap(&h, 1.5, 0.0).unwrap();
        let (NodeGeom::Rect(root), NodeGeom::Rect(a)) = (l.geoms[0], l.geoms[1]) else {
            panic!()
        };
        assert_eq!(root.rect, Rect::UNIT);
        assert_eq!(a.rect, root.inner);
    }

    #[test]
    fn padding_insets_children() {
        let h = ingest("r;a 3\nr;b 1", Format::FoldedStacks).unwrap();
        let l = layout_treemap(&h, 2.0, 0.01).unwrap();
        let NodeGeom::Rect(root) = l.geoms[0] else { panic!() };
        // 0.01 of the shorter (unit) side, x normalized by the aspect
        assert!((root.inner.x - 0.005).abs() < 1e-15);
        assert!((root.inner.y - 0.01).abs() < 1e-15);
        for g in &l.geoms[1..] {
            let NodeGeom::Rect(c) = g else { panic!() };
            assert!(root.inner.contains_rect(c.rect, 1e-15));
        }
    }
}
