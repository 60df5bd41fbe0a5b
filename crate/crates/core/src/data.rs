//! Bundled group files and name-based lookup of quotient groups.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use thiserror::Error;

use crate::group::{GroupData, GroupError};

/// Overrides the directory searched for group files.
pub const DATA_DIR_ENV: &str = "HELP_ZC_DATA_DIR";

/// `(file stem, contents)` of the shipped tables.
pub const BUNDLED: &[(&str, &str)] = &[
    ("s5", include_str!("../data/s5.json")),
    ("2s5", include_str!("../data/2s5.json")),
    ("gl25", include_str!("../data/gl25.json")),
];

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Group {
        path: String,
        #[source]
        source: GroupError,
    },
    #[error("no group file named {0:?}")]
    Unknown(String),
}

/// The bundled group with the given file stem, parsed once per process.
pub fn bundled(stem: &str) -> Option<&'static GroupData> {
    static CACHE: OnceLock<BTreeMap<&'static str, GroupData>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            BUNDLED
                .iter()
                .map(|(k, s)| (*k, GroupData::load_str(s).expect("bundled data is valid")))
                .collect()
        })
        .get(stem)
}

pub fn load_file(path: &Path) -> Result<GroupData, DataError> {
    let bytes = std::fs::read(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    GroupData::load(&bytes).map_err(|source| DataError::Group {
        path: path.display().to_string(),
        source,
    })
}

/// Resolves `query` as a path, then as a stem in the data directory (when
/// the override is set), then as a bundled stem or group name.
pub fn resolve(query: &str) -> Result<GroupData, DataError> {
    let p = Path::new(query);
    if p.exists() {
        return load_file(p);
    }
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        let candidate = Path::new(&dir).join(format!("{query}.json"));
        if candidate.exists() {
            return load_file(&candidate);
        }
        return find_by_name(Path::new(&dir), query);
    }
    if let Some(g) = bundled(query) {
        return Ok(g.clone());
    }
    BUNDLED
        .iter()
        .filter_map(|(k, _)| bundled(k))
        .find(|g| g.name == query)
        .cloned()
        .ok_or_else(|| DataError::Unknown(query.to_string()))
}

fn find_by_name(dir: &Path, name: &str) -> Result<GroupData, DataError> {
    let entries = std::fs::read_dir(dir).map_err(|source| DataError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    for p in paths {
        // only files that parse are candidates; broken neighbours are not our concern
        if let Ok(g) = load_file(&p) {
            if g.name == name {
                return Ok(g);
            }
        }
    }
    Err(DataError::Unknown(name.to_string()))
}
