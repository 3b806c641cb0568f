use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use fieldcdf_core::EmpiricalCdf;

use crate::error::{Error, Result};

/// Writes `path` through a temporary file in the same directory, so readers
/// never see a half-written file and failures leave nothing behind.
pub fn write_atomic<F>(path: &Path, body: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<&mut File>) -> std::io::Result<()>,
{
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::Builder::new()
        .prefix(".fieldcdf-")
        .tempfile_in(&parent)
        .map_err(|e| Error::io(path, e))?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        body(&mut w).map_err(|e| Error::io(path, e))?;
        w.flush().map_err(|e| Error::io(path, e))?;
    }
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Step function as `x,F` rows, one per distinct sample value.
pub fn write_cdf(cdf: &EmpiricalCdf, path: &Path) -> Result<()> {
    write_atomic(path, |w| {
        writeln!(w, "x,F")?;
        for (x, f) in cdf.jumps() {
            writeln!(w, "{x},{f}")?;
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_rows_are_jumps() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cdf.csv");
        let cdf = EmpiricalCdf::new(&[2.0, 1.0, 2.0, 4.0]).unwrap();
        write_cdf(&cdf, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "x,F\n1,0.25\n2,0.75\n4,1\n");
    }

    #[test]
    fn missing_parent_names_path() {
        let path = Path::new("/nonexistent-dir-for-test/out.csv");
        let err = write_atomic(path, |_| Ok(())).unwrap_err().to_string();
        assert!(err.contains("nonexistent-dir-for-test"), "{err}");
    }
}
