use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CHECKPOINT_FORMAT: &str = "wildknot-frontier";
pub const CHECKPOINT_VERSION: u32 = 1;

/// Resumable dump of an orbit frontier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub format: String,
    pub version: u32,
    pub epsilon: f64,
    pub depth: usize,
    pub active: Vec<CheckpointEntry>,
    #[serde(default)]
    pub completed: Vec<CheckpointEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointEntry {
    pub word: Vec<usize>,
    pub sphere: [f64; 6],
}

impl Checkpoint {
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string(self).map_err(|e| Error::parse("checkpoint", e.to_string()))?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Checkpoint> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cp: Checkpoint =
            serde_json::from_str(&text).map_err(|e| Error::parse("checkpoint", e.to_string()))?;
        if cp.format != CHECKPOINT_FORMAT || cp.version != CHECKPOINT_VERSION {
            return Err(Error::parse(
                "checkpoint",
                format!("unsupported format {} v{}", cp.format, cp.version),
            ));
        }
        Ok(cp)
    }
}
