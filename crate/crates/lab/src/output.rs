//! Artifact collection and all-or-nothing writes into an output directory.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::LabError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub file_name: String,
    pub bytes: Vec<u8>,
}

impl Artifact {
    pub fn new(file_name: impl Into<String>, bytes: impl Into<Vec<u8>>) -> Self {
        Self {
            file_name: file_name.into(),
            bytes: bytes.into(),
        }
    }

    pub fn text(&self) -> Option<&str> {
        std::str::from_utf8(&self.bytes).ok()
    }
}

fn io_error(path: &Path, source: std::io::Error) -> LabError {
    LabError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Writes every artifact into `dir`. Each file is staged under a temporary name
/// and renamed into place; on any failure, staged files and files already
/// renamed by this call are removed.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<PathBuf>, LabError> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let mut staged = Vec::new();
    let cleanup = |staged: &[(PathBuf, PathBuf)], renamed: usize| {
        for (i, (tmp, dst)) in staged.iter().enumerate() {
            let _ = fs::remove_file(if i < renamed { dst } else { tmp });
        }
    };
    for a in artifacts {
        let dst = dir.join(&a.file_name);
        let tmp = dir.join(format!(".{}.tmp-{}", a.file_name, std::process::id()));
        if let Err(e) = fs::write(&tmp, &a.bytes) {
            let _ = fs::remove_file(&tmp);
            cleanup(&staged, 0);
            return Err(io_error(&tmp, e));
        }
        staged.push((tmp, dst));
    }
    for i in 0..staged.len() {
        let (tmp, dst) = &staged[i];
        if let Err(e) = fs::rename(tmp, dst) {
            cleanup(&staged, i);
            return Err(io_error(dst, e));
        }
    }
    Ok(staged.into_iter().map(|(_, dst)| dst).collect())
}
