//! Built-in fixture files. A directory named by `K3ARITH_FIXTURE_DIR` may
//! override any of them by file name.

use std::path::Path;

use crate::error::{Error, Result};

pub const DRELL_YAN: &str = include_str!("../fixtures/drell_yan.json");
pub const FIBRATION_GENERATORS: &str = include_str!("../fixtures/fibration_generators.gram");
pub const FIBRES_A: &str = include_str!("../fixtures/fibres_a.gram");
pub const FIBRES_B: &str = include_str!("../fixtures/fibres_b.gram");
pub const FIBRES_C: &str = include_str!("../fixtures/fibres_c.gram");

/// Built-in fixtures by file name.
pub const BUILTIN: &[(&str, &str)] = &[
    ("drell_yan.json", DRELL_YAN),
    ("fibration_generators.gram", FIBRATION_GENERATORS),
    ("fibres_a.gram", FIBRES_A),
    ("fibres_b.gram", FIBRES_B),
    ("fibres_c.gram", FIBRES_C),
];

/// File names of the 24-class and 34-curve intersection matrices. They are
/// not shipped and must be supplied through the override directory.
pub const LAMBDA24: &str = "lambda24.gram";
pub const CURVES34: &str = "s34.gram";

/// Known extensions tried after the bare name.
const EXTENSIONS: &[&str] = &["", ".gram", ".json"];

/// Environment variable naming an override directory.
pub const FIXTURE_DIR_VAR: &str = "K3ARITH_FIXTURE_DIR";

/// Read a fixture: an explicit path, then the override directory, then the
/// built-in copy.
pub fn load(name: &str, dir: Option<&Path>) -> Result<String> {
    let direct = Path::new(name);
    if direct.components().count() > 1 && direct.exists() {
        return std::fs::read_to_string(direct).map_err(|e| Error::Fixture(format!("{name}: {e}")));
    }
    for ext in EXTENSIONS {
        let file = format!("{name}{ext}");
        if let Some(d) = dir {
            let path = d.join(&file);
            if path.exists() {
                return std::fs::read_to_string(&path)
                    .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())));
            }
        }
        if let Some((_, t)) = BUILTIN.iter().find(|(n, _)| *n == file) {
            return Ok(t.to_string());
        }
    }
    Err(Error::Fixture(format!("fixture {name} not found")))
}

/// The override directory from the environment, if set.
pub fn env_dir() -> Option<std::path::PathBuf> {
    std::env::var_os(FIXTURE_DIR_VAR).map(std::path::PathBuf::from)
}
