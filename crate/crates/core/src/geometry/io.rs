//! Geometry file format.
//!
//! JSON object with fields `bounding_radius` (number), `loops` (array of
//! arrays of `[x, y]` pairs, closed implicitly — the first vertex is not
//! repeated) and `screens` (array of arrays of `[x, y]` pairs, open). Values
//! round-trip exactly: floats are emitted in shortest-roundtrip form and
//! saving a loaded file reproduces it byte for byte.

use super::{GeometryError, Point2, PolyChain, Scatterer, SNAP_REL};
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryIoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed geometry JSON at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid geometry: {0}")]
    Invalid(#[from] GeometryError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeometryFile {
    pub bounding_radius: f64,
    #[serde(default)]
    pub loops: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub screens: Vec<Vec<[f64; 2]>>,
}

impl GeometryFile {
    pub fn from_scatterer(k: &Scatterer) -> Self {
        let ring = |c: &PolyChain| -> Vec<[f64; 2]> {
            c.vertices().iter().map(|p| [p.x, p.y]).collect()
        };
        Self {
            bounding_radius: k.bounding_radius(),
            loops: k.loops().iter().map(ring).collect(),
            screens: k.screens().iter().map(ring).collect(),
        }
    }

    pub fn into_scatterer(self) -> Result<Scatterer, GeometryError> {
        let snap = SNAP_REL * self.bounding_radius.max(1e-300);
        let mk = |vs: Vec<[f64; 2]>, closed: bool| -> Result<PolyChain, GeometryError> {
            let pts: Vec<Point2> = vs.iter().map(|v| Point2::new(v[0], v[1])).collect();
            if closed {
                PolyChain::closed(pts, snap)
            } else {
                PolyChain::open(pts, snap)
            }
        };
        let loops = self
            .loops
            .into_iter()
            .map(|v| mk(v, true))
            .collect::<Result<Vec<_>, _>>()?;
        let screens = self
            .screens
            .into_iter()
            .map(|v| mk(v, false))
            .collect::<Result<Vec<_>, _>>()?;
        Scatterer::new(loops, screens, self.bounding_radius)
    }
}

pub fn parse_geometry(text: &str) -> Result<Scatterer, GeometryIoError> {
    let file: GeometryFile = serde_json::from_str(text).map_err(|e| GeometryIoError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(file.into_scatterer()?)
}

pub fn geometry_to_string(k: &Scatterer) -> String {
    let mut s = serde_json::to_string_pretty(&GeometryFile::from_scatterer(k))
        .expect("geometry serialization cannot fail");
    s.push('\n');
    s
}

pub fn load_geometry(path: &Path) -> Result<Scatterer, GeometryIoError> {
    let text = std::fs::read_to_string(path).map_err(|e| GeometryIoError::Read {
        path: path.display().to_string(),
        source: e,
    })?;
    parse_geometry(&text)
}

pub fn save_geometry(k: &Scatterer, path: &Path) -> Result<(), GeometryIoError> {
    std::fs::write(path, geometry_to_string(k)).map_err(|e| GeometryIoError::Write {
        path: path.display().to_string(),
        source: e,
    })
}
