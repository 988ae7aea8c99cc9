//! On-disk cache of Chevalley structure constants.
//!
//! One JSON file per Lie type, named e.g. `B2.json`, holding the exact
//! rational constants as `[a, b, numerator, denominator]` rows. The cache
//! directory comes from `DYNR_FIXTURE_DIR`; without it nothing is cached.

use std::fs;
use std::path::{Path, PathBuf};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::algebra::{chevalley_constants, ChevalleyTable, SimpleLieAlgebra};
use super::roots::{build_root_system, LieType};
use crate::error::{Error, Result};

pub const FIXTURE_VERSION: u32 = 1;
pub const FIXTURE_ENV: &str = "DYNR_FIXTURE_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureFixture {
    pub version: u32,
    pub algebra: String,
    pub constants: Vec<[i64; 4]>,
}

impl StructureFixture {
    pub fn from_table(lie_type: LieType, table: &ChevalleyTable) -> Self {
        let mut constants: Vec<[i64; 4]> = table
            .iter()
            .map(|(&(a, b), n)| [a as i64, b as i64, *n.numer(), *n.denom()])
            .collect();
        constants.sort();
        StructureFixture {
            version: FIXTURE_VERSION,
            algebra: lie_type.to_string(),
            constants,
        }
    }

    pub fn to_table(&self) -> Result<ChevalleyTable> {
        self.constants
            .iter()
            .map(|&[a, b, num, den]| {
                if a < 0 || b < 0 || den == 0 {
                    return Err(Error::Fixture(format!("bad row [{a}, {b}, {num}, {den}]")));
                }
                Ok(((a as usize, b as usize), Rational64::new(num, den)))
            })
            .collect()
    }
}

pub fn fixture_path(dir: &Path, lie_type: LieType) -> PathBuf {
    dir.join(format!("{lie_type}.json"))
}

pub fn write_fixture(dir: &Path, fixture: &StructureFixture) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::Fixture(e.to_string()))?;
    let lie_type: LieType = fixture.algebra.parse()?;
    let path = fixture_path(dir, lie_type);
    let text = serde_json::to_string_pretty(fixture).map_err(|e| Error::Fixture(e.to_string()))?;
    fs::write(&path, text).map_err(|e| Error::Fixture(e.to_string()))?;
    Ok(path)
}

/// Reads a cached fixture; `Ok(None)` when absent or written by another version.
pub fn read_fixture(dir: &Path, lie_type: LieType) -> Result<Option<StructureFixture>> {
    let path = fixture_path(dir, lie_type);
    let Ok(text) = fs::read_to_string(&path) else {
        return Ok(None);
    };
    let fixture: StructureFixture =
        serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
    if fixture.version != FIXTURE_VERSION || fixture.algebra != lie_type.to_string() {
        return Ok(None);
    }
    Ok(Some(fixture))
}

/// Builds an algebra, going through the cache in `dir` when given.
pub fn load_or_build(lie_type: LieType, dir: Option<&Path>) -> Result<SimpleLieAlgebra> {
    let rs = build_root_system(lie_type.series, lie_type.rank)?;
    if let Some(dir) = dir {
        if let Some(fixture) = read_fixture(dir, lie_type)? {
            return SimpleLieAlgebra::from_chevalley(rs, fixture.to_table()?);
        }
        let table = chevalley_constants(&rs)?;
        write_fixture(dir, &StructureFixture::from_table(lie_type, &table))?;
        return SimpleLieAlgebra::from_chevalley(rs, table);
    }
    let table = chevalley_constants(&rs)?;
    SimpleLieAlgebra::from_chevalley(rs, table)
}

/// Cache directory from the environment, if set.
pub fn env_fixture_dir() -> Option<PathBuf> {
    std::env::var_os(FIXTURE_ENV).map(PathBuf::from)
}
