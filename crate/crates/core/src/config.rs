//! TOML configuration. Every section is optional; unknown keys are
//! rejected and every number is range-checked on load.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::label::LabelConfig;
use crate::layout::{LayoutKind, LayoutParams};
use crate::navigation::NavConfig;
use crate::scene::{PanelConfig, Panels, Viewport};
use crate::style::StyleConfig;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("{field} = {value} is out of range ({expected})")]
    Range {
        field: &'static str,
        value: f64,
        expected: &'static str,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LayoutSection {
    pub r_inner: f64,
    pub treemap_padding: f64,
}

impl Default for LayoutSection {
    fn default() -> Self {
        let p = LayoutParams::default();
        LayoutSection {
            r_inner: p.r_inner,
            treemap_padding: p.treemap_padding,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NavigationSection {
    pub min_window: f64,
    /// Duration of zoom transitions in the UI.
    pub animation_ms: f64,
}

impl Default for NavigationSection {
    fn default() -> Self {
        NavigationSection {
            min_window: NavConfig::default().min_window,
            animation_ms: 400.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub kind: Option<LayoutKind>,
    pub layout: LayoutSection,
    pub labels: LabelConfig,
    pub style: StyleConfig,
    pub navigation: NavigationSection,
    pub viewport: Viewport,
    pub panels: PanelConfig,
}

fn check(field: &'static str, value: f64, ok: bool, expected: &'static str) -> Result<(), ConfigError> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::Range { field, value, expected })
    }
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Config, ConfigError> {
        let c: Config = toml::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Config::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let l = &self.layout;
        check("layout.r_inner", l.r_inner, (0.0..0.9).contains(&l.r_inner), "0 <= r_inner < 0.9")?;
        check(
            "layout.treemap_padding",
            l.treemap_padding,
            (0.0..0.25).contains(&l.treemap_padding),
            "0 <= padding < 0.25",
        )?;
        let lb = &self.labels;
        check("labels.min_extent_px", lb.min_extent_px, lb.min_extent_px >= 0.0, ">= 0")?;
        check("labels.padding_px", lb.padding_px, lb.padding_px >= 0.0, ">= 0")?;
        check("labels.min_chars", lb.min_chars as f64, lb.min_chars >= 1, ">= 1")?;
        check("labels.char_width_px", lb.char_width_px, lb.char_width_px > 0.0, "> 0")?;
        check("labels.line_height_px", lb.line_height_px, lb.line_height_px > 0.0, "> 0")?;
        let s = &self.style;
        check("style.cubehelix.start", s.cubehelix.start, (0.0..=3.0).contains(&s.cubehelix.start), "0..=3")?;
        check("style.cubehelix.rotations", s.cubehelix.rotations, s.cubehelix.rotations.abs() <= 10.0, "-10..=10")?;
        check(
            "style.cubehelix.hue_amount",
            s.cubehelix.hue_amount,
            (0.0..=4.0).contains(&s.cubehelix.hue_amount),
            "0..=4",
        )?;
        check("style.cubehelix.gamma", s.cubehelix.gamma, s.cubehelix.gamma > 0.0, "> 0")?;
        check("style.saturation_min", s.saturation_min, (0.0..=1.0).contains(&s.saturation_min), "0..=1")?;
        check(
            "style.saturation_max",
            s.saturation_max,
            s.saturation_max > s.saturation_min && s.saturation_max <= 1.0,
            "saturation_min < saturation_max <= 1",
        )?;
        check("style.lightness_min", s.lightness_min, (0.0..=1.0).contains(&s.lightness_min), "0..=1")?;
        check(
            "style.lightness_max",
            s.lightness_max,
            s.lightness_max >= s.lightness_min && s.lightness_max <= 1.0,
            "lightness_min <= lightness_max <= 1",
        )?;
        let n = &self.navigation;
        check("navigation.min_window", n.min_window, n.min_window > 0.0 && n.min_window < 1.0, "0 < min_window < 1")?;
        check("navigation.animation_ms", n.animation_ms, (0.0..=10_000.0).contains(&n.animation_ms), "0..=10000")?;
        let v = &self.viewport;
        check("viewport.width", v.width, (64.0..=16384.0).contains(&v.width), "64..=16384")?;
        check("viewport.height", v.height, (64.0..=16384.0).contains(&v.height), "64..=16384")?;
        let p = &self.panels;
        check(
            "panels.overview_fraction",
            p.overview_fraction,
            (0.05..=0.4).contains(&p.overview_fraction),
            "0.05..=0.4",
        )?;
        check("panels.scale_target_px", p.scale_target_px, p.scale_target_px > 0.0, "> 0")?;
        Ok(())
    }

    pub fn nav(&self) -> NavConfig {
        NavConfig {
            min_window: self.navigation.min_window,
        }
    }

    /// Layout parameters for `kind`; the treemap aspect follows the detail
    /// panel of the configured viewport.
    pub fn layout_params(&self, kind: LayoutKind) -> LayoutParams {
        LayoutParams {
            r_inner: self.layout.r_inner,
            treemap_padding: self.layout.treemap_padding,
            aspect: Panels::new(kind, self.viewport, &self.panels).detail_aspect(),
        }
    }
}
