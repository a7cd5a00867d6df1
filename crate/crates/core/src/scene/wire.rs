//! Flat little-endian scene encoding (layout documented in `docs/wire-format.md`).

use thiserror::Error;

use super::{Crumb, Primitive, ScaleSpec, Scene, Shape, TagDot};
use crate::hierarchy::NodeId;
use crate::label::LabelPlacement;
use crate::layout::LayoutKind;
use crate::navigation::ClipEdges;
use crate::style::Rgb;

pub const MAGIC: [u8; 4] = *b"HQVZ";
pub const WIRE_VERSION: u16 = 1;
pub const HEADER_LEN: usize = 64;
pub const PRIMITIVE_STRIDE: usize = 40;

const HAS_OVERVIEW: u8 = 1;
const HAS_CRUMBS: u8 = 2;
const HAS_HANDLES: u8 = 4;

const P_SECTOR: u8 = 1;
const P_OUTLINE: u8 = 2;
const P_PARTIAL: u8 = 4;

const L_VISIBLE: u8 = 1;
const L_CHEV_LEFT: u8 = 2;
const L_CHEV_RIGHT: u8 = 4;
const L_DARK: u8 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WireError {
    #[error("not a scene buffer (bad magic)")]
    BadMagic,
    #[error("unsupported scene version {found}; this build reads version {expected}")]
    Version { found: u16, expected: u16 },
    #[error("buffer truncated at byte {offset}: need {needed} more bytes")]
    Truncated { offset: usize, needed: usize },
    #[error("invalid UTF-8 in string at byte {offset}")]
    BadUtf8 { offset: usize },
    #[error("unknown layout kind code {0}")]
    BadKind(u8),
    #[error("an overview scene cannot contain another overview")]
    NestedOverview,
    #[error("{0} unexpected bytes after the scene")]
    Trailing(usize),
}

pub fn serialize_scene(s: &Scene) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + PRIMITIVE_STRIDE * s.primitives.len());
    write_scene(s, &mut out);
    out
}

fn write_scene(s: &Scene, out: &mut Vec<u8>) {
    let mut flags = 0;
    if s.overview.is_some() {
        flags |= HAS_OVERVIEW;
    }
    if s.breadcrumbs.is_some() {
        flags |= HAS_CRUMBS;
    }
    if s.handles.is_some() {
        flags |= HAS_HANDLES;
    }
    let crumbs = s.breadcrumbs.as_deref().unwrap_or(&[]);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&WIRE_VERSION.to_le_bytes());
    out.push(s.kind.code());
    out.push(flags);
    for n in [s.primitives.len(), s.labels.len(), s.tag_dots.len(), crumbs.len()] {
        out.extend_from_slice(&(n as u32).to_le_bytes());
    }
    out.extend_from_slice(&s.viewport.0.to_le_bytes());
    out.extend_from_slice(&s.viewport.1.to_le_bytes());
    for v in [s.scale.magnification, s.scale.tick_value, s.scale.tick_extent, s.scale.full_extent] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for p in &s.primitives {
        write_primitive(p, out);
    }
    if let Some(hd) = &s.handles {
        write_primitive(hd, out);
    }
    for d in &s.tag_dots {
        out.extend_from_slice(&d.node.0.to_le_bytes());
        out.extend_from_slice(&d.x.to_le_bytes());
        out.extend_from_slice(&d.y.to_le_bytes());
    }
    for c in crumbs {
        out.extend_from_slice(&c.node.0.to_le_bytes());
        write_str(&c.text, out);
    }
    for l in &s.labels {
        out.extend_from_slice(&l.node.0.to_le_bytes());
        out.extend_from_slice(&(l.anchor.0 as f32).to_le_bytes());
        out.extend_from_slice(&(l.anchor.1 as f32).to_le_bytes());
        let mut f = 0;
        for (on, bit) in [
            (l.visible, L_VISIBLE),
            (l.chevron_left, L_CHEV_LEFT),
            (l.chevron_right, L_CHEV_RIGHT),
            (l.dark_text, L_DARK),
        ] {
            if on {
                f |= bit;
            }
        }
        out.push(f);
        write_str(&l.text, out);
    }
    if let Some(ov) = &s.overview {
        write_scene(ov, out);
    }
}

fn write_str(s: &str, out: &mut Vec<u8>) {
    out.extend_from_slice(&(s.len() as u32).to_le_bytes());
    out.extend_from_slice(s.as_bytes());
}

fn write_primitive(p: &Primitive, out: &mut Vec<u8>) {
    let (geom, extra, mut flags) = match p.shape {
        Shape::Rect { visible, full } => (visible, full, 0),
        Shape::Sector {
            cx,
            cy,
            r0,
            r1,
            a0,
            a1,
            full_a0,
            full_a1,
        } => ([cx, cy, r0, r1], [a0, a1, full_a0, full_a1], P_SECTOR),
    };
    if p.outline {
        flags |= P_OUTLINE;
    }
    if p.partial {
        flags |= P_PARTIAL;
    }
    flags |= (p.clip.0 & 0x0f) << 4;
    out.extend_from_slice(&p.node.0.to_le_bytes());
    for v in geom {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&[p.fill.0, p.fill.1, p.fill.2, flags]);
    for v in extra {
        out.extend_from_slice(&v.to_le_bytes());
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], WireError> {
        let rest = self.buf.len() - self.pos;
        if rest < n {
            return Err(WireError::Truncated {
                offset: self.pos,
                needed: n - rest,
            });
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N], WireError> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }

    fn u8(&mut self) -> Result<u8, WireError> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, WireError> {
        Ok(u16::from_le_bytes(self.array()?))
    }

    fn u32(&mut self) -> Result<u32, WireError> {
        Ok(u32::from_le_bytes(self.array()?))
    }

    fn f32(&mut self) -> Result<f32, WireError> {
        Ok(f32::from_le_bytes(self.array()?))
    }

    fn f64(&mut self) -> Result<f64, WireError> {
        Ok(f64::from_le_bytes(self.array()?))
    }

    fn string(&mut self) -> Result<String, WireError> {
        let len = self.u32()? as usize;
        let offset = self.pos;
        let bytes = self.take(len)?;
        std::str::from_utf8(bytes)
            .map(str::to_owned)
            .map_err(|_| WireError::BadUtf8 { offset })
    }

    fn primitive(&mut self) -> Result<Primitive, WireError> {
        let node = NodeId(self.u32()?);
        let g = [self.f32()?, self.f32()?, self.f32()?, self.f32()?];
        let [r, gg, b, flags] = self.array::<4>()?;
        let e = [self.f32()?, self.f32()?, self.f32()?, self.f32()?];
        let shape = if flags & P_SECTOR != 0 {
            Shape::Sector {
                cx: g[0],
                cy: g[1],
                r0: g[2],
                r1: g[3],
                a0: e[0],
                a1: e[1],
                full_a0: e[2],
                full_a1: e[3],
            }
        } else {
            Shape::Rect { visible: g, full: e }
        };
        Ok(Primitive {
            node,
            shape,
            fill: Rgb(r, gg, b),
            outline: flags & P_OUTLINE != 0,
            partial: flags & P_PARTIAL != 0,
            clip: ClipEdges(flags >> 4),
        })
    }
}

pub fn deserialize_scene(buf: &[u8]) -> Result<Scene, WireError> {
    let mut r = Reader { buf, pos: 0 };
    let s = read_scene(&mut r, false)?;
    if r.pos != buf.len() {
        return Err(WireError::Trailing(buf.len() - r.pos));
    }
    Ok(s)
}

fn read_scene(r: &mut Reader<'_>, nested: bool) -> Result<Scene, WireError> {
    if r.array::<4>()? != MAGIC {
        return Err(WireError::BadMagic);
    }
    let version = r.u16()?;
    if version != WIRE_VERSION {
        return Err(WireError::Version {
            found: version,
            expected: WIRE_VERSION,
        });
    }
    let code = r.u8()?;
    let kind = LayoutKind::from_code(code).ok_or(WireError::BadKind(code))?;
    let flags = r.u8()?;
    if nested && flags & HAS_OVERVIEW != 0 {
        return Err(WireError::NestedOverview);
    }
    let (np, nl, nd, nc) = (r.u32()? as usize, r.u32()? as usize, r.u32()? as usize, r.u32()? as usize);
    let viewport = (r.f32()?, r.f32()?);
    let scale = ScaleSpec {
        magnification: r.f64()?,
        tick_value: r.f64()?,
        tick_extent: r.f64()?,
        full_extent: r.f64()?,
    };
    // reject absurd counts before allocating
    let min_len = np * PRIMITIVE_STRIDE + nd * 12 + nc * 8 + nl * 17;
    let rest = r.buf.len() - r.pos;
    if min_len > rest {
        return Err(WireError::Truncated {
            offset: r.pos,
            needed: min_len - rest,
        });
    }
    let primitives = (0..np).map(|_| r.primitive()).collect::<Result<Vec<_>, _>>()?;
    let handles = if flags & HAS_HANDLES != 0 {
        Some(r.primitive()?)
    } else {
        None
    };
    let tag_dots = (0..nd)
        .map(|_| {
            Ok(TagDot {
                node: NodeId(r.u32()?),
                x: r.f32()?,
                y: r.f32()?,
            })
        })
        .collect::<Result<Vec<_>, WireError>>()?;
    let crumbs = (0..nc)
        .map(|_| {
            Ok(Crumb {
                node: NodeId(r.u32()?),
                text: r.string()?,
            })
        })
        .collect::<Result<Vec<_>, WireError>>()?;
    let labels = (0..nl)
        .map(|_| {
            let node = NodeId(r.u32()?);
            let anchor = (r.f32()? as f64, r.f32()? as f64);
            let f = r.u8()?;
            Ok(LabelPlacement {
                node,
                anchor,
                text: r.string()?,
                chevron_left: f & L_CHEV_LEFT != 0,
                chevron_right: f & L_CHEV_RIGHT != 0,
                visible: f & L_VISIBLE != 0,
                dark_text: f & L_DARK != 0,
            })
        })
        .collect::<Result<Vec<_>, WireError>>()?;
    let overview = if flags & HAS_OVERVIEW != 0 {
        Some(Box::new(read_scene(r, true)?))
    } else {
        None
    };
    Ok(Scene {
        kind,
        viewport,
        primitives,
        labels,
        scale,
        breadcrumbs: (flags & HAS_CRUMBS != 0).then_some(crumbs),
        handles,
        tag_dots,
        overview,
    })
}
