//! Loading fixtures and files, and digesting them for the report.

use std::fs;
use std::path::Path;

use serde_json::Value;

use super::Source;
use crate::actions::Action;
use crate::boundary::{ChainSystem, ShiftMap};
use crate::budget::Budget;
use crate::core::WeightedPocset;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::io::{self, ActionFile, PocsetFile, ShiftMapFile};
use crate::report::InputDigest;
use crate::scalar::Rational;

type P = WeightedPocset<Rational>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn digest(src: &Source, canonical: &impl serde::Serialize) -> InputDigest {
    let label = match (&src.fixture, &src.file) {
        (Some(f), _) => format!("fixture:{}", f.to_ascii_uppercase()),
        (_, Some(p)) => p.display().to_string(),
        _ => String::new(),
    };
    InputDigest::of(
        label,
        &serde_json::to_string(canonical).expect("serializable"),
    )
}

fn unknown_fixture(name: &str, kind: &str) -> Error {
    Error::UnknownId(format!("{kind} fixture {name}"))
}

/// Action files are accepted wherever a pocset is expected.
fn is_action_file(value: &Value) -> bool {
    value.get("generators").is_some()
}

pub fn pocset(src: &Source) -> Result<(P, InputDigest)> {
    let p = match (&src.fixture, &src.file) {
        (Some(name), _) => {
            fixtures::pocset_by_name(name).ok_or_else(|| unknown_fixture(name, "pocset"))?
        }
        (_, Some(path)) => {
            let text = read(path)?;
            if is_action_file(&io::from_json(&text)?) {
                io::action_from_file::<Rational>(&io::from_json(&text)?)?
                    .pocset()
                    .clone()
            } else {
                io::parse_pocset(&text)?
            }
        }
        _ => return Err(Error::EmptyInput("input")),
    };
    let d = digest(src, &io::pocset_to_file(&p));
    Ok((p, d))
}

/// The pocset file as written, before validation.
pub fn pocset_file(src: &Source) -> Result<(PocsetFile, InputDigest)> {
    let f = match (&src.fixture, &src.file) {
        (Some(name), _) => io::pocset_to_file(
            &fixtures::pocset_by_name(name).ok_or_else(|| unknown_fixture(name, "pocset"))?,
        ),
        (_, Some(path)) => {
            let text = read(path)?;
            if is_action_file(&io::from_json(&text)?) {
                io::from_json::<ActionFile>(&text)?.pocset
            } else {
                io::from_json(&text)?
            }
        }
        _ => return Err(Error::EmptyInput("input")),
    };
    let d = digest(src, &f);
    Ok((f, d))
}

/// Pocset files act by their full automorphism group.
pub fn action(src: &Source, budget: &Budget) -> Result<(Action<Rational>, InputDigest)> {
    let a = match (&src.fixture, &src.file) {
        (Some(name), _) => {
            fixtures::action_by_name(name).ok_or_else(|| unknown_fixture(name, "action"))??
        }
        (_, Some(path)) => {
            let text = read(path)?;
            if is_action_file(&io::from_json(&text)?) {
                io::action_from_file(&io::from_json(&text)?)?
            } else {
                fixtures::automorphism_action(io::parse_pocset(&text)?, budget)?
            }
        }
        _ => return Err(Error::EmptyInput("input")),
    };
    let d = digest(src, &io::action_to_file(&a));
    Ok((a, d))
}

pub fn system(src: &Source) -> Result<(ChainSystem<Rational>, InputDigest)> {
    let s = match (&src.fixture, &src.file) {
        (Some(name), _) => {
            fixtures::system_by_name(name).ok_or_else(|| unknown_fixture(name, "system"))?
        }
        (_, Some(path)) => io::parse_system(&read(path)?)?,
        _ => return Err(Error::EmptyInput("input")),
    };
    let d = digest(src, &io::system_to_file(&s));
    Ok((s, d))
}

pub fn shift(
    src: &Source,
    s: &ChainSystem<Rational>,
    file: Option<&Path>,
) -> Result<(ShiftMap, InputDigest)> {
    let g = match (file, &src.fixture) {
        (Some(path), _) => {
            io::shift_from_file(s, s, &io::from_json::<ShiftMapFile>(&read(path)?)?)?
        }
        (None, Some(name)) => {
            fixtures::shift_by_name(name).ok_or_else(|| unknown_fixture(name, "shift"))?
        }
        (None, None) => return Err(Error::Invalid("--shift is required with --file".into())),
    };
    let label = file.map_or_else(|| "fixture shift".to_string(), |p| p.display().to_string());
    let canonical = serde_json::to_string(&io::shift_to_file(s, s, &g)).expect("serializable");
    Ok((g, InputDigest::of(label, &canonical)))
}

/// File text of a fixture. Windows dump as action files; `system:NAME` and
/// `shift:NAME` select the chain-system fixtures.
pub fn dump_fixture(name: &str) -> Option<String> {
    let lower = name.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix("system:") {
        return fixtures::system_by_name(rest).map(|s| io::to_json(&io::system_to_file(&s)));
    }
    if let Some(rest) = lower.strip_prefix("shift:") {
        let s = fixtures::system_by_name(rest)?;
        let g = fixtures::shift_by_name(rest)?;
        return Some(io::to_json(&io::shift_to_file(&s, &s, &g)));
    }
    match name.to_ascii_uppercase().as_str() {
        "LINE" => Some(io::to_json(&io::action_to_file(&fixtures::line_action()))),
        "F2BALL" => Some(io::to_json(&io::action_to_file(&fixtures::f2ball_action()))),
        upper => match fixtures::pocset_by_name(upper) {
            Some(p) => Some(io::to_json(&io::pocset_to_file(&p))),
            None => fixtures::system_by_name(upper).map(|s| io::to_json(&io::system_to_file(&s))),
        },
    }
}
