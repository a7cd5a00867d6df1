//! Engine for exploring large quantitative hierarchies with space-filling
//! charts: icicle plots, sundown (semicircular) charts, sunburst charts and
//! squarified treemaps.
//!
//! The pipeline is `ingest -> layout -> (window, transform) -> scene`.
//! Layouts are computed once per hierarchy and never elide nodes; zooming
//! only changes the [`navigation::ViewTransform`], and a [`scene::Scene`] is
//! the flat, render-ordered hand-off to a renderer (the SVG exporter in
//! [`svg`] or an external GPU front end reading the binary wire format).

pub mod bench;
pub mod config;
pub mod hierarchy;
pub mod label;
pub mod layout;
pub mod navigation;
pub mod par;
pub mod scene;
pub mod style;
pub mod svg;
pub mod tasks;

pub use hierarchy::{Hierarchy, NodeId};
pub use layout::{Layout, LayoutKind};
