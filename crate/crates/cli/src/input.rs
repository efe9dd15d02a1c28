//! Matrix inputs: files on disk or built-in fixtures.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use pcm_core::inconsistency::RiTable;
use pcm_core::matrix::DEFAULT_RECIPROCITY_TOL;
use pcm_core::{fixtures, io, Pcm};

use crate::manifest::InputDigest;

pub struct Input {
    pub label: String,
    pub matrix: Pcm,
    pub digest: InputDigest,
}

pub fn load_file(path: &Path) -> Result<Input> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let matrix = io::read_matrix_file(path, DEFAULT_RECIPROCITY_TOL)
        .with_context(|| format!("in {}", path.display()))?;
    let label = path.display().to_string();
    Ok(Input {
        digest: InputDigest::of_bytes(label.clone(), &bytes),
        label,
        matrix,
    })
}

/// Looks up a fixture by name. Parametric fixtures take their parameter
/// after a colon, e.g. `round_robin_six:2`.
pub fn load_fixture(spec: &str) -> Result<Input> {
    let (name, param) = match spec.split_once(':') {
        Some((name, p)) => {
            let p: f64 = p
                .parse()
                .with_context(|| format!("fixture parameter {p:?} is not a number"))?;
            (name, Some(p))
        }
        None => (spec, None),
    };
    let matrix = match (name, param) {
        ("round_robin_six", Some(p)) => fixtures::round_robin_six(p)?,
        ("round_robin_seven", Some(p)) => fixtures::round_robin_seven(p)?,
        ("monotonicity_family", Some(b)) => fixtures::monotonicity_family(b)?,
        (_, Some(_)) => bail!("fixture {name:?} takes no parameter"),
        (_, None) => match fixtures::all_static().into_iter().find(|(n, _)| *n == name) {
            Some((_, m)) => m,
            None => bail!(
                "unknown fixture {name:?}; known: {}, round_robin_six:P, round_robin_seven:P, monotonicity_family:B",
                fixture_names().join(", ")
            ),
        },
    };
    let label = format!("fixture:{spec}");
    Ok(Input {
        digest: InputDigest::of_bytes(label.clone(), io::to_json_string(&matrix).as_bytes()),
        label,
        matrix,
    })
}

pub fn fixture_names() -> Vec<&'static str> {
    fixtures::all_static().into_iter().map(|(n, _)| n).collect()
}

pub fn load_all(files: &[PathBuf], fixtures: &[String]) -> Result<Vec<Input>> {
    let mut inputs = Vec::new();
    for f in files {
        inputs.push(load_file(f)?);
    }
    for f in fixtures {
        inputs.push(load_fixture(f)?);
    }
    if inputs.is_empty() {
        bail!("no input: give a matrix file or --fixture NAME");
    }
    Ok(inputs)
}

/// The pinned random index table, overlaid with the cache named by
/// `PCM_RI_CACHE` when that file exists. The cache's digest is returned so
/// it can be recorded in the manifest.
pub fn ri_table() -> Result<(RiTable, Option<InputDigest>)> {
    let pinned = RiTable::pinned();
    let Some(path) = std::env::var_os(crate::RI_CACHE_ENV) else {
        return Ok((pinned, None));
    };
    let path = PathBuf::from(path);
    if !path.exists() {
        return Ok((pinned, None));
    }
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading random index cache {}", path.display()))?;
    let cache = RiTable::from_cache_json(&text)
        .with_context(|| format!("in random index cache {}", path.display()))?;
    let digest = InputDigest::of_bytes(format!("ri_cache:{}", path.display()), text.as_bytes());
    Ok((pinned.overlay(cache), Some(digest)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_by_name() {
        for name in fixture_names() {
            assert_eq!(load_fixture(name).unwrap().label, format!("fixture:{name}"));
        }
        assert_eq!(load_fixture("round_robin_seven:2").unwrap().matrix.n(), 7);
        assert!(load_fixture("round_robin_six").is_err());
        assert!(load_fixture("round_robin_six:x").is_err());
        assert!(load_fixture("full_reversal:2").is_err());
    }

    #[test]
    fn fixture_digest_is_stable() {
        let a = load_fixture("inefficient_four").unwrap();
        let b = load_fixture("inefficient_four").unwrap();
        assert_eq!(a.digest, b.digest);
        assert_ne!(a.digest, load_fixture("full_reversal").unwrap().digest);
    }
}
