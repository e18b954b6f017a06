use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use lvfrac::Trajectory;
use serde::Serialize;
use tempfile::NamedTempFile;

use crate::config::RunConfig;

pub const TRAJECTORY_FILE: &str = "trajectory.csv";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const STABILITY_FILE: &str = "stability_report.json";

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(
    path: &Path,
    write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let tmp = NamedTempFile::new_in(dir)
        .with_context(|| format!("creating temporary file in {}", dir.display()))?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        write(&mut w).with_context(|| format!("writing {}", path.display()))?;
        w.flush()?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

/// `t,x,y,z` with one row per grid point, LF line endings.
pub fn write_trajectory(path: &Path, trajectory: &Trajectory) -> Result<()> {
    write_atomic(path, |w| {
        w.write_all(b"t,x,y,z\n")?;
        for (t, s) in trajectory.times().iter().zip(trajectory.states()) {
            writeln!(w, "{t:.16e},{:.16e},{:.16e},{:.16e}", s[0], s[1], s[2])?;
        }
        Ok(())
    })
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    write_atomic(path, |w| {
        serde_json::to_writer_pretty(&mut *w, value)?;
        w.write_all(b"\n")
    })
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub version: &'static str,
    pub config: &'a RunConfig,
    pub outputs: Vec<&'static str>,
    pub wall_clock_seconds: f64,
    pub diverged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divergence_step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divergence_time: Option<f64>,
}
