//! Output plumbing: atomic file writes (temp file + rename in the
//! destination directory) and stdout fallback.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};

/// Writes bytes to `path` atomically, or to stdout when no path is
/// given.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)
                .with_context(|| format!("creating temp file in {}", dir.display()))?;
            tmp.write_all(bytes)?;
            tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
            Ok(())
        }
    }
}
