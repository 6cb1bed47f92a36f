//! Ascending parallel scan with optional checkpoints.
//!
//! The range is cut into segments of `interval` candidates. Each segment is
//! searched in parallel with `find_first`, so the hit reported is the least
//! one no matter how work is scheduled. A checkpoint is written after every
//! segment and once more when a witness is found.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FamilyKind;
use crate::error::{Error, Result};

pub const CHECKPOINT_VERSION: u32 = 1;
pub const DEFAULT_INTERVAL: u64 = 1 << 20;

/// On-disk search state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub kind: FamilyKind,
    pub g: usize,
    /// Decimal string; the multiplier (or tuple spacing) of the family.
    pub alpha: String,
    /// Every candidate `<= scanned_upto` has been ruled out.
    pub scanned_upto: u64,
    pub witnesses: Vec<u64>,
    pub version: u32,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        let cp: Checkpoint =
            serde_json::from_str(&text).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        if cp.version > CHECKPOINT_VERSION {
            return Err(Error::Checkpoint(format!("unsupported checkpoint version {}", cp.version)));
        }
        Ok(cp)
    }

    /// Writes to a sibling temporary file, then renames over `path`.
    pub fn store(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        let text = serde_json::to_string_pretty(self).expect("checkpoint serializes");
        fs::write(&tmp, text + "\n").map_err(|e| Error::Checkpoint(format!("{}: {e}", tmp.display())))?;
        fs::rename(&tmp, path).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
    }
}

/// How a search persists and whether it should stop early.
#[derive(Clone, Debug)]
pub struct SearchControl {
    pub checkpoint: Option<PathBuf>,
    /// Load `checkpoint` first if it exists.
    pub resume: bool,
    /// Candidates per segment.
    pub interval: u64,
    /// Stop (as if interrupted) after this many segments.
    pub stop_after_segments: Option<u64>,
}

impl Default for SearchControl {
    fn default() -> Self {
        SearchControl { checkpoint: None, resume: false, interval: DEFAULT_INTERVAL, stop_after_segments: None }
    }
}

impl SearchControl {
    pub fn with_checkpoint(path: impl Into<PathBuf>) -> Self {
        SearchControl { checkpoint: Some(path.into()), resume: true, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found { value: u64 },
    NotFound { scanned_upto: u64 },
    Interrupted { scanned_upto: u64 },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<u64> {
        match self {
            SearchOutcome::Found { value } => Some(*value),
            _ => None,
        }
    }
}

pub(crate) struct ScanSpec<'a> {
    pub kind: FamilyKind,
    pub g: usize,
    pub alpha: &'a str,
    pub first: u64,
    pub limit: u64,
}

/// Least `k` in `[first, limit]` with `pred(k)`.
pub(crate) fn scan<F>(spec: &ScanSpec<'_>, ctl: &SearchControl, pred: F) -> Result<SearchOutcome>
where
    F: Fn(u64) -> bool + Sync,
{
    let mut state = Checkpoint {
        kind: spec.kind,
        g: spec.g,
        alpha: spec.alpha.to_string(),
        scanned_upto: spec.first.saturating_sub(1),
        witnesses: Vec::new(),
        version: CHECKPOINT_VERSION,
    };
    if let (Some(path), true) = (&ctl.checkpoint, ctl.resume) {
        if path.exists() {
            let cp = Checkpoint::load(path)?;
            if (cp.kind, cp.g, cp.alpha.as_str()) != (spec.kind, spec.g, spec.alpha) {
                return Err(Error::Checkpoint(format!(
                    "{} belongs to a different search ({:?}, g={}, alpha={})",
                    path.display(),
                    cp.kind,
                    cp.g,
                    cp.alpha
                )));
            }
            if let Some(&w) = cp.witnesses.iter().min() {
                if w <= spec.limit {
                    return Ok(SearchOutcome::Found { value: w });
                }
            }
            state.scanned_upto = cp.scanned_upto.max(state.scanned_upto);
        }
    }
    let interval = ctl.interval.max(1);
    let mut segments = 0u64;
    while state.scanned_upto < spec.limit {
        if ctl.stop_after_segments.is_some_and(|n| segments >= n) {
            return Ok(SearchOutcome::Interrupted { scanned_upto: state.scanned_upto });
        }
        let lo = state.scanned_upto + 1;
        let hi = lo.saturating_add(interval - 1).min(spec.limit);
        let hit = (lo..=hi).into_par_iter().find_first(|&k| pred(k));
        segments += 1;
        match hit {
            Some(k) => {
                state.scanned_upto = k;
                state.witnesses.push(k);
                if let Some(path) = &ctl.checkpoint {
                    state.store(path)?;
                }
                return Ok(SearchOutcome::Found { value: k });
            }
            None => {
                state.scanned_upto = hi;
                if let Some(path) = &ctl.checkpoint {
                    state.store(path)?;
                }
            }
        }
    }
    Ok(SearchOutcome::NotFound { scanned_upto: state.scanned_upto })
}
