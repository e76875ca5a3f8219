//! Reading documents from files (or stdin for `-`).

use std::io::Read;
use std::path::Path;

use coxsub::{Coloring, CoxeterSystem, Presentation, SimplicialComplex, TwoGroupHom};
use serde_json::Value;

use crate::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn value(text: &str, path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn context(path: &Path) -> impl Fn(coxsub::Error) -> CliError + '_ {
    move |e| {
        let wrapped = CliError::from(e);
        match wrapped {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            other => other,
        }
    }
}

pub fn complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    SimplicialComplex::from_json(&read(path)?).map_err(context(path))
}

/// A system document, or a flag complex read as its right-angled system.
pub fn system(path: &Path) -> Result<CoxeterSystem, CliError> {
    CoxeterSystem::load(&read(path)?).map_err(context(path))
}

pub fn coloring(path: &Path) -> Result<Coloring, CliError> {
    Coloring::from_json(&read(path)?).map_err(context(path))
}

/// A homomorphism document, or a colouring turned into one.
pub fn hom(path: &Path, sys: &CoxeterSystem) -> Result<TwoGroupHom, CliError> {
    let text = read(path)?;
    if value(&text, path)?.get("classes").is_some() {
        let c = Coloring::from_json(&text).map_err(context(path))?;
        Ok(TwoGroupHom::from_coloring(sys, &c)?)
    } else {
        TwoGroupHom::from_json(&text).map_err(context(path))
    }
}

/// A presentation document, or the Coxeter presentation of a system.
pub fn presentation(path: &Path) -> Result<(Presentation, Option<CoxeterSystem>), CliError> {
    let text = read(path)?;
    if value(&text, path)?.get("generators").is_some() {
        Ok((Presentation::from_json(&text).map_err(context(path))?, None))
    } else {
        let sys = CoxeterSystem::load(&text).map_err(context(path))?;
        Ok((sys.presentation(), Some(sys)))
    }
}
