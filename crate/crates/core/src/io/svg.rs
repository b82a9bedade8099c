//! Deterministic SVG scenes: one `<path>` per item, coordinates with six
//! decimals, model y pointing up.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Style {
    pub stroke: String,
    pub width: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dash: Option<String>,
}

impl Style {
    pub fn solid(stroke: &str, width: f64) -> Self {
        Style {
            stroke: stroke.into(),
            width,
            dash: None,
        }
    }

    pub fn dashed(stroke: &str, width: f64) -> Self {
        Style {
            stroke: stroke.into(),
            width,
            dash: Some("4 3".into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneItem {
    pub points: Vec<[f64; 2]>,
    pub style: Style,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Model-space bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub items: Vec<SceneItem>,
    /// Fitted to the items (with a 5% margin) when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub viewport: Option<Viewport>,
    pub width: u32,
    pub height: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
}

pub const DEFAULT_WIDTH: u32 = 640;
pub const DEFAULT_HEIGHT: u32 = 480;
const PAD: f64 = 16.0;

/// Distinct stroke colors, cycled by item index.
pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

impl SceneSpec {
    pub fn new(items: Vec<SceneItem>) -> Self {
        SceneSpec {
            items,
            viewport: None,
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
            title: None,
        }
    }

    pub fn with_title(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    fn fitted_viewport(&self) -> Viewport {
        let mut vp = Viewport {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for p in self.items.iter().flat_map(|i| &i.points) {
            vp.min_x = vp.min_x.min(p[0]);
            vp.max_x = vp.max_x.max(p[0]);
            vp.min_y = vp.min_y.min(p[1]);
            vp.max_y = vp.max_y.max(p[1]);
        }
        let widen = |lo: &mut f64, hi: &mut f64| {
            let span = *hi - *lo;
            let margin = if span > 0.0 { 0.05 * span } else { 0.5 };
            *lo -= margin;
            *hi += margin;
        };
        widen(&mut vp.min_x, &mut vp.max_x);
        widen(&mut vp.min_y, &mut vp.max_y);
        vp
    }
}

fn validate(scene: &SceneSpec) -> Result<Viewport> {
    if scene.items.is_empty() {
        return Err(Error::InvalidInput("scene has no items".into()));
    }
    if scene.width == 0 || scene.height == 0 {
        return Err(Error::InvalidInput("scene size must be positive".into()));
    }
    for (i, item) in scene.items.iter().enumerate() {
        if item.points.is_empty() {
            return Err(Error::InvalidInput(format!("item {i} has no points")));
        }
        if item.points.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!("item {i} has a non-finite coordinate")));
        }
        if !(item.style.width.is_finite() && item.style.width > 0.0) {
            return Err(Error::InvalidInput(format!("item {i} has an invalid stroke width")));
        }
    }
    match scene.viewport {
        None => Ok(scene.fitted_viewport()),
        Some(vp) => {
            if !(vp.min_x < vp.max_x && vp.min_y < vp.max_y) {
                return Err(Error::InvalidInput("viewport is empty".into()));
            }
            let inside = scene
                .items
                .iter()
                .flat_map(|i| &i.points)
                .all(|p| p[0] >= vp.min_x && p[0] <= vp.max_x && p[1] >= vp.min_y && p[1] <= vp.max_y);
            if !inside {
                return Err(Error::InvalidInput("viewport does not contain all points".into()));
            }
            Ok(vp)
        }
    }
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
            _ => out.push(c),
        }
    }
    out
}

/// Clamp `-0.000000` to `0.000000` so output does not depend on signed zero.
fn fixed(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

pub fn export_svg(scene: &SceneSpec) -> Result<Vec<u8>> {
    let vp = validate(scene)?;
    let (w, h) = (scene.width as f64, scene.height as f64);
    let sx = (w - 2.0 * PAD) / (vp.max_x - vp.min_x);
    let sy = (h - 2.0 * PAD) / (vp.max_y - vp.min_y);
    let map = |p: &[f64; 2]| (PAD + (p[0] - vp.min_x) * sx, h - PAD - (p[1] - vp.min_y) * sy);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        scene.width, scene.height, scene.width, scene.height
    );
    if let Some(title) = &scene.title {
        let _ = writeln!(out, "<title>{}</title>", escape(title));
    }
    let _ = writeln!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>",
        scene.width, scene.height
    );
    for item in &scene.items {
        let mut d = String::new();
        for (k, p) in item.points.iter().enumerate() {
            let (x, y) = map(p);
            let _ = write!(d, "{}{} {}", if k == 0 { "M" } else { " L" }, fixed(x), fixed(y));
        }
        let _ = write!(
            out,
            "<path d=\"{d}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"",
            escape(&item.style.stroke),
            fixed(item.style.width)
        );
        if let Some(dash) = &item.style.dash {
            let _ = write!(out, " stroke-dasharray=\"{}\"", escape(dash));
        }
        match &item.label {
            Some(label) => {
                let _ = writeln!(out, "><title>{}</title></path>", escape(label));
            }
            None => out.push_str("/>\n"),
        }
    }
    out.push_str("</svg>\n");
    Ok(out.into_bytes())
}
