use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::geometry::{sphere_from_center_radius, Point4};
use crate::necklace::{EdgeLabel, Pearl, SemiNecklace, SpunNecklace};

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Semi,
    Spun,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub tau: f64,
    pub tau_table: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tau: 1e-6,
            tau_table: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PearlSpec {
    pub center: Vec<f64>,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub i: usize,
    pub j: usize,
    pub label: EdgeLabel,
}

/// A necklace document. Semi-necklaces give centers with three or four
/// coordinates (the fourth must be zero); spun necklaces give four and may
/// declare contact edges between pearls (zero-based indices).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NecklaceConfig {
    pub format_version: u32,
    pub name: String,
    pub mode: Mode,
    #[serde(default)]
    pub provenance: String,
    #[serde(default)]
    pub tolerances: Tolerances,
    pub pearls: Vec<PearlSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poles: Option<[[f64; 4]; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<EdgeSpec>,
}

fn field_error(field: String, message: impl Into<String>) -> Error {
    Error::Parse(ParseError {
        line: None,
        field,
        message: message.into(),
    })
}

pub fn parse_config(text: &str) -> Result<NecklaceConfig> {
    let cfg: NecklaceConfig = serde_json::from_str(text).map_err(|e| {
        Error::Parse(ParseError {
            line: Some(e.line()),
            field: "document".into(),
            message: e.to_string(),
        })
    })?;
    if cfg.format_version != CONFIG_VERSION {
        return Err(field_error(
            "format_version".into(),
            format!("unsupported version {}", cfg.format_version),
        ));
    }
    if cfg.pearls.is_empty() {
        return Err(Error::EmptyNecklace);
    }
    for (i, p) in cfg.pearls.iter().enumerate() {
        let ok = match cfg.mode {
            Mode::Semi => p.center.len() == 3 || (p.center.len() == 4 && p.center[3] == 0.0),
            Mode::Spun => p.center.len() == 4,
        };
        if !ok {
            return Err(field_error(
                format!("pearls[{i}].center"),
                format!("wrong arity {} for {:?} mode", p.center.len(), cfg.mode),
            ));
        }
        if p.center.iter().any(|x| !x.is_finite()) {
            return Err(field_error(format!("pearls[{i}].center"), "non-finite coordinate"));
        }
        if !(p.radius > 0.0) || !p.radius.is_finite() {
            return Err(field_error(
                format!("pearls[{i}].radius"),
                format!("radius must be positive, got {}", p.radius),
            ));
        }
        if cfg.mode == Mode::Semi && p.center[2] < 0.0 {
            return Err(field_error(format!("pearls[{i}].center"), "x3 must be non-negative"));
        }
    }
    for (k, e) in cfg.edges.iter().enumerate() {
        if e.i == e.j || e.i >= cfg.pearls.len() || e.j >= cfg.pearls.len() {
            return Err(field_error(format!("edges[{k}]"), format!("invalid pair ({}, {})", e.i, e.j)));
        }
    }
    if cfg.mode == Mode::Semi && !cfg.edges.is_empty() {
        return Err(field_error("edges".into(), "semi necklaces have implicit edges"));
    }
    for (name, t) in [("tolerances.tau", cfg.tolerances.tau), ("tolerances.tau_table", cfg.tolerances.tau_table)] {
        if !(t > 0.0) {
            return Err(field_error(name.into(), "tolerance must be positive"));
        }
    }
    Ok(cfg)
}

/// Canonical text of a configuration: pretty JSON with four-coordinate
/// centers.
pub fn emit_config(cfg: &NecklaceConfig) -> String {
    let mut c = cfg.clone();
    for p in &mut c.pearls {
        p.center.resize(4, 0.0);
    }
    let mut s = serde_json::to_string_pretty(&c).expect("config serializes");
    s.push('\n');
    s
}

impl NecklaceConfig {
    fn center(&self, i: usize) -> [f64; 4] {
        let c = &self.pearls[i].center;
        [c[0], c[1], c[2], c.get(3).copied().unwrap_or(0.0)]
    }

    pub fn semi_necklace(&self) -> Result<SemiNecklace> {
        if self.mode != Mode::Semi {
            return Err(field_error("mode".into(), "expected a semi necklace"));
        }
        let pearls = (0..self.pearls.len())
            .map(|i| Pearl {
                center: self.center(i),
                radius: self.pearls[i].radius,
            })
            .collect();
        let mut n = SemiNecklace::new(pearls)?;
        n.poles = self.poles;
        Ok(n)
    }

    /// Spun document for an explicit necklace.
    pub fn from_spun(name: &str, provenance: &str, tolerances: Tolerances, sn: &SpunNecklace) -> Self {
        NecklaceConfig {
            format_version: CONFIG_VERSION,
            name: name.into(),
            mode: Mode::Spun,
            provenance: provenance.into(),
            tolerances,
            pearls: (0..sn.len())
                .map(|i| {
                    let (c, r) = sn.center_radius(i);
                    PearlSpec {
                        center: c.to_vec(),
                        radius: r,
                    }
                })
                .collect(),
            poles: None,
            edges: sn.edges().into_iter().map(|(i, j, label)| EdgeSpec { i, j, label }).collect(),
        }
    }

    /// The necklace described: spun documents directly, semi documents by
    /// spinning.
    pub fn spun_necklace(&self) -> Result<SpunNecklace> {
        match self.mode {
            Mode::Semi => crate::necklace::spin_necklace(&self.semi_necklace()?),
            Mode::Spun => {
                let spheres = (0..self.pearls.len())
                    .map(|i| sphere_from_center_radius(&Point4::Finite(self.center(i)), self.pearls[i].radius))
                    .collect::<Result<Vec<_>>>()?;
                let edges: Vec<_> = self.edges.iter().map(|e| (e.i, e.j, e.label)).collect();
                SpunNecklace::from_parts(spheres, &edges)
            }
        }
    }
}
