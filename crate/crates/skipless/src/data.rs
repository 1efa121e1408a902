//! Versioned table assets. The JSON files compiled into this crate are
//! the default source; setting `SKIPLESS_DATA_DIR` loads same-named
//! files from that directory instead.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use skipless_core::design::{BaseBlockTable, TableEntry, TableSet};

use crate::FormatError;

pub const DATA_DIR_ENV: &str = "SKIPLESS_DATA_DIR";

const SQS14_JSON: &str = include_str!("../data/sqs14.json");
const SQS26_JSON: &str = include_str!("../data/sqs26.json");
const SQS34_JSON: &str = include_str!("../data/sqs34.json");
const SQS38_JSON: &str = include_str!("../data/sqs38.json");

/// Explicit block-list asset (the order-14 system).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockListAsset {
    pub version: u32,
    pub name: String,
    pub v: u32,
    pub blocks: Vec<[u32; 4]>,
}

/// Base-block table asset with short-orbit annotations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableAsset {
    pub version: u32,
    pub name: String,
    pub group_order: u32,
    pub has_infinity: bool,
    pub base_blocks: Vec<[String; 4]>,
    pub short_orbits: BTreeMap<String, u32>,
}

impl TableAsset {
    pub fn to_table(&self) -> Result<BaseBlockTable, FormatError> {
        let mut blocks = Vec::with_capacity(self.base_blocks.len());
        for b in &self.base_blocks {
            let mut entries = [TableEntry::Infinity; 4];
            for (slot, s) in entries.iter_mut().zip(b) {
                *slot = if s == "inf" {
                    TableEntry::Infinity
                } else {
                    TableEntry::Residue(
                        s.parse().map_err(|_| FormatError::BadPoint(s.clone()))?,
                    )
                };
            }
            blocks.push(entries);
        }
        let short_orbits = self
            .short_orbits
            .iter()
            .map(|(k, v)| {
                k.parse::<usize>()
                    .map(|k| (k, *v))
                    .map_err(|_| FormatError::Inconsistent("short orbit key"))
            })
            .collect::<Result<BTreeMap<usize, u32>, _>>()?;
        Ok(BaseBlockTable::new(
            self.name.clone(),
            self.group_order,
            self.has_infinity,
            blocks,
            short_orbits,
        )?)
    }
}

fn load_json<T: serde::de::DeserializeOwned>(name: &str, embedded: &str) -> Result<T, FormatError> {
    if let Ok(dir) = std::env::var(DATA_DIR_ENV) {
        let path = Path::new(&dir).join(name);
        let text = std::fs::read_to_string(&path)
            .map_err(|_| FormatError::Inconsistent("table asset missing under SKIPLESS_DATA_DIR"))?;
        return Ok(serde_json::from_str(&text)?);
    }
    Ok(serde_json::from_str(embedded)?)
}

/// Loads the four table assets, honoring the data-dir override.
pub fn load_tables() -> Result<TableSet, FormatError> {
    let sqs14: BlockListAsset = load_json("sqs14.json", SQS14_JSON)?;
    let sqs26: TableAsset = load_json("sqs26.json", SQS26_JSON)?;
    let sqs34: TableAsset = load_json("sqs34.json", SQS34_JSON)?;
    let sqs38: TableAsset = load_json("sqs38.json", SQS38_JSON)?;
    Ok(TableSet {
        sqs14_blocks: sqs14.blocks,
        sqs26: sqs26.to_table()?,
        sqs34: sqs34.to_table()?,
        sqs38: sqs38.to_table()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use skipless_core::design::verify_sqs;

    #[test]
    fn assets_match_the_compiled_in_tables() {
        let loaded = load_tables().unwrap();
        let embedded = TableSet::embedded();
        assert_eq!(loaded.sqs14_blocks, embedded.sqs14_blocks);
        assert_eq!(loaded.sqs26, embedded.sqs26);
        assert_eq!(loaded.sqs34, embedded.sqs34);
        assert_eq!(loaded.sqs38, embedded.sqs38);
    }

    #[test]
    fn assets_develop_into_quadruple_systems() {
        let loaded = load_tables().unwrap();
        for v in [14u32, 26, 34, 38] {
            let design = loaded.design_for(v).unwrap();
            assert_eq!(design.block_count() as u64, design.expected_block_count());
            assert!(verify_sqs(&design).unwrap().is_sqs, "v={v}");
        }
    }
}
