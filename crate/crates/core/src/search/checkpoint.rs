//! Resume file for the long S loops: plain text, one decimal integer per
//! line, the last line naming the highest fully processed S.

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

fn checkpoint_error(path: &Path, reason: impl ToString) -> Error {
    Error::Checkpoint {
        path: path.display().to_string(),
        reason: reason.to_string(),
    }
}

/// Last recorded S, or `None` when the file does not exist or is empty.
pub fn read_checkpoint(path: &Path) -> Result<Option<u64>> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(checkpoint_error(path, e)),
    };
    match text.lines().map(str::trim).rfind(|l| !l.is_empty()) {
        None => Ok(None),
        Some(line) => line
            .parse()
            .map(Some)
            .map_err(|_| checkpoint_error(path, format!("malformed line {line:?}"))),
    }
}

pub fn append_checkpoint(path: &Path, last_done: u64) -> Result<()> {
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| checkpoint_error(path, e))?;
    writeln!(file, "{last_done}").map_err(|e| checkpoint_error(path, e))
}
