//! Named presets shared by the expression language (`@name`) and the
//! `--preset` flag.

use thiserror::Error;

use crate::exterior::DifferentialForm;
use crate::g2::{preset_cst, preset_phi0, preset_star_phi0, G2Structure};
use crate::symplectic::{preset_omega_std, SymplecticStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown preset `{0}` (known: phi0, star_phi0, cst, symplectic_std:n)")]
    Unknown(String),
    #[error("`{0}` is a form, not a structure")]
    NotAStructure(String),
}

/// A structure selected with `--preset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    G2(G2Structure),
    Symplectic(SymplecticStructure),
}

impl Structure {
    pub fn dim(&self) -> usize {
        match self {
            Structure::G2(_) => 7,
            Structure::Symplectic(s) => s.dim(),
        }
    }

    pub fn form(&self) -> &DifferentialForm {
        match self {
            Structure::G2(g) => g.phi(),
            Structure::Symplectic(s) => s.omega(),
        }
    }
}

pub const PRESET_NAMES: [&str; 4] = ["phi0", "star_phi0", "cst", "symplectic_std:n"];

fn symplectic_half_dim(name: &str) -> Option<usize> {
    let n: usize = name.strip_prefix("symplectic_std:")?.parse().ok()?;
    // seven pairs of variables is the polynomial engine's ceiling
    (1..=7).contains(&n).then_some(n)
}

pub fn structure(name: &str) -> Result<Structure, RegistryError> {
    match name {
        "phi0" => Ok(Structure::G2(preset_phi0())),
        "cst" => Ok(Structure::G2(preset_cst())),
        "star_phi0" => Err(RegistryError::NotAStructure(name.to_string())),
        _ => symplectic_half_dim(name)
            .map(|n| Structure::Symplectic(preset_omega_std(n).expect("n is at least 1")))
            .ok_or_else(|| RegistryError::Unknown(name.to_string())),
    }
}

pub fn form(name: &str) -> Result<DifferentialForm, RegistryError> {
    match name {
        "star_phi0" => Ok(preset_star_phi0()),
        _ => structure(name).map(|s| s.form().clone()),
    }
}
