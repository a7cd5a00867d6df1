//! Static SVG 1.1 export. Output is a pure function of the [`Scene`]:
//! fixed element order and two-decimal number formatting make it
//! byte-stable.

use std::fmt::Write as _;

use crate::layout::{radial_point, LayoutKind};
use crate::scene::{Primitive, Scene, Shape};

fn num(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0;
    if r == 0.0 || !r.is_finite() {
        return "0".into();
    }
    let s = format!("{r:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_owned()
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Path of an annular sector; arcs are split in halves so that no single
/// arc command spans more than π (full rings included).
fn sector_path(kind: LayoutKind, cx: f64, cy: f64, r0: f64, r1: f64, a0: f64, a1: f64) -> String {
    let am = 0.5 * (a0 + a1);
    let pt = |r: f64, a: f64| {
        let (x, y) = radial_point(kind, r, a);
        format!("{} {}", num(cx + x), num(cy + y))
    };
    let mut d = format!(
        "M{} A{r} {r} 0 0 1 {} A{r} {r} 0 0 1 {}",
        pt(r1, a0),
        pt(r1, am),
        pt(r1, a1),
        r = num(r1)
    );
    if r0 > 0.0 {
        let _ = write!(
            d,
            " L{} A{r} {r} 0 0 0 {} A{r} {r} 0 0 0 {}",
            pt(r0, a1),
            pt(r0, am),
            pt(r0, a0),
            r = num(r0)
        );
    } else {
        let _ = write!(d, " L{} {}", num(cx), num(cy));
    }
    d.push('Z');
    d
}

fn write_primitive(out: &mut String, kind: LayoutKind, p: &Primitive, fill: &str) {
    let stroke = if p.outline {
        r##" stroke="#000" stroke-width="2""##
    } else {
        r##" stroke="#fff" stroke-width="0.5""##
    };
    match p.shape {
        Shape::Rect { visible: [x, y, w, h], .. } => {
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{fill}"{stroke}/>"#,
                num(x as f64),
                num(y as f64),
                num(w as f64),
                num(h as f64)
            );
        }
        Shape::Sector {
            cx, cy, r0, r1, a0, a1, ..
        } => {
            let d = sector_path(kind, cx as f64, cy as f64, r0 as f64, r1 as f64, a0 as f64, a1 as f64);
            let _ = writeln!(out, r#"<path d="{d}" fill="{fill}"{stroke}/>"#);
        }
    }
}

fn format_value(v: f64) -> String {
    if v >= 1.0 && v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        format!("{v}")
    }
}

pub fn render_svg(s: &Scene) -> String {
    let (w, h) = (s.viewport.0 as f64, s.viewport.1 as f64);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}" font-family="monospace" font-size="11">"#,
        num(w),
        num(h)
    );
    let _ = writeln!(out, r##"<rect width="{}" height="{}" fill="#fff"/>"##, num(w), num(h));

    if let Some(ov) = &s.overview {
        out.push_str("<g class=\"overview\">\n");
        for p in &ov.primitives {
            write_primitive(&mut out, ov.kind, p, &p.fill.hex());
        }
        out.push_str("</g>\n");
    }
    if let Some(hd) = &s.handles {
        out.push_str("<g class=\"handles\">\n");
        let mut p = *hd;
        p.outline = true;
        write_primitive(&mut out, s.kind, &p, "none");
        out.push_str("</g>\n");
    }
    if !s.tag_dots.is_empty() {
        out.push_str("<g class=\"tag-dots\">\n");
        for d in &s.tag_dots {
            let _ = writeln!(
                out,
                r##"<circle cx="{}" cy="{}" r="3" fill="#e00" stroke="#fff"/>"##,
                num(d.x as f64),
                num(d.y as f64)
            );
        }
        out.push_str("</g>\n");
    }
    if let Some(crumbs) = &s.breadcrumbs {
        // the strip starts right of the overview thumbnail
        let x0 = s
            .overview
            .as_ref()
            .and_then(|o| o.primitives.first())
            .map_or(0.0, |p| match p.shape {
                Shape::Rect { full: [x, _, w, _], .. } => (x + w) as f64,
                Shape::Sector { cx, r1, .. } => (cx + r1) as f64,
            })
            + 8.0;
        let text = crumbs
            .iter()
            .map(|c| if c.text.is_empty() { "·".to_owned() } else { escape(&c.text) })
            .collect::<Vec<_>>()
            .join(" › ");
        let _ = writeln!(
            out,
            r#"<g class="breadcrumbs"><text x="{}" y="16">{text}</text></g>"#,
            num(x0)
        );
    }

    out.push_str("<g class=\"detail\">\n");
    for p in &s.primitives {
        write_primitive(&mut out, s.kind, p, &p.fill.hex());
    }
    out.push_str("</g>\n<g class=\"labels\" text-anchor=\"middle\" dominant-baseline=\"central\">\n");
    for l in s.labels.iter().filter(|l| l.visible) {
        let fill = if l.dark_text { "#000" } else { "#fff" };
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" fill="{fill}">{}</text>"#,
            num(l.anchor.0),
            num(l.anchor.1),
            escape(&l.display_text())
        );
    }
    out.push_str("</g>\n");

    let sc = &s.scale;
    let y = h - 12.0;
    out.push_str("<g class=\"scale\">\n");
    let swatch_end = if s.kind == LayoutKind::Treemap {
        let side = sc.tick_extent.max(0.0).sqrt();
        let _ = writeln!(
            out,
            r##"<rect x="8" y="{}" width="{}" height="{}" fill="#888"/>"##,
            num(y - 0.5 * side),
            num(side),
            num(side)
        );
        8.0 + side
    } else {
        let _ = writeln!(
            out,
            r##"<rect x="8" y="{}" width="{}" height="4" fill="#888"/>"##,
            num(y - 2.0),
            num(sc.tick_extent)
        );
        8.0 + sc.tick_extent
    };
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" dominant-baseline="central">{} ({}) ×{}</text>"#,
        num(swatch_end + 8.0),
        num(y),
        format_value(sc.tick_value),
        if s.kind == LayoutKind::Treemap { "area" } else { "length" },
        num(sc.magnification)
    );
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(1.256), "1.26");
        assert_eq!(num(-0.001), "0");
        assert_eq!(num(12.5), "12.5");
        assert_eq!(num(-3.1), "-3.1");
    }

    #[test]
    fn escaping() {
        assert_eq!(escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    }

    #[test]
    fn full_ring_path_has_no_degenerate_arc() {
        let d = sector_path(LayoutKind::Sunburst, 0.0, 0.0, 10.0, 20.0, 0.0, std::f64::consts::TAU);
        // start and end of the outer ring coincide but pass through the midpoint
        assert!(d.starts_with("M0 -20 A20 20 0 0 1 0 20 A20 20 0 0 1 0 -20"), "{d}");
    }
}
