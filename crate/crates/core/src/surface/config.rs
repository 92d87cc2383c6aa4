use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirichletTerm {
    pub u: f64,
    pub a: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoleEntry {
    pub sigma: f64,
    pub mult: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenEntry {
    pub lambda: f64,
    pub mult: u32,
}

/// Topology, scattering data and spectral constants of a cusped surface.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    pub genus: u32,
    pub cusps: u32,
    pub c1: f64,
    pub c2: f64,
    #[serde(default)]
    pub dirichlet: Vec<DirichletTerm>,
    #[serde(default)]
    pub d_quarter: u32,
    pub tr_phi_half: f64,
    #[serde(default)]
    pub poles: Vec<PoleEntry>,
    /// Small eigenvalues other than the constant eigenfunction at 0.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eigenvalues: Vec<EigenEntry>,
    /// Multiplicity of cusp forms at eigenvalue 1/4, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cusp_forms_quarter: Option<u32>,
}

impl SurfaceConfig {
    /// vol = 2 pi (2g - 2 + c).
    pub fn vol(&self) -> f64 {
        2.0 * PI * (2.0 * self.genus as f64 - 2.0 + self.cusps as f64)
    }

    /// Gamma(2) topology with a synthetic scattering coefficient set:
    /// c1 = -2 log g1 with g1 = 1.25, c2 = 0.1, three Dirichlet terms, and the
    /// residual pole at s = 1 that every cusped surface carries.
    pub fn reference_gamma2() -> Self {
        SurfaceConfig {
            genus: 0,
            cusps: 3,
            c1: -2.0 * 1.25f64.ln(),
            c2: 0.1,
            dirichlet: vec![
                DirichletTerm { u: 1.3, a: 0.25 },
                DirichletTerm { u: 1.7, a: -0.15 },
                DirichletTerm { u: 2.2, a: 0.05 },
            ],
            d_quarter: 0,
            tr_phi_half: -1.0,
            poles: vec![PoleEntry {
                sigma: 1.0,
                mult: 1,
            }],
            eigenvalues: Vec::new(),
            cusp_forms_quarter: Some(0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.vol() > 0.0) {
            return bad(format!(
                "2g - 2 + c must be positive (g={}, c={})",
                self.genus, self.cusps
            ));
        }
        if !self.c1.is_finite() || !self.c2.is_finite() || !self.tr_phi_half.is_finite() {
            return bad("non-finite scattering constant".into());
        }
        if self.cusps > 0 && self.c1 == 0.0 {
            return bad("c1 must be nonzero".into());
        }
        let mut prev = 1.0;
        for t in &self.dirichlet {
            if !(t.u > prev) || !t.a.is_finite() {
                return bad(format!(
                    "Dirichlet bases must be > 1 and strictly increasing (u = {})",
                    t.u
                ));
            }
            prev = t.u;
        }
        for p in &self.poles {
            if !(p.sigma > 0.5 && p.sigma <= 1.0) {
                return bad(format!("pole sigma = {} outside (1/2, 1]", p.sigma));
            }
            if p.mult == 0 || p.mult > self.cusps {
                return bad(format!("pole multiplicity {} outside 1..=c", p.mult));
            }
        }
        for e in &self.eigenvalues {
            if !(e.lambda > 0.0) || e.mult == 0 {
                return bad(format!("eigenvalue entry {e:?}"));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: SurfaceConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap_or_default()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }
}
