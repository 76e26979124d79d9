//! File loading and writing shared by the commands.

use std::io::Write;
use std::path::{Path, PathBuf};

use lattice_order::cloud::CloudJson;
use lattice_order::lattice::{gen_nominal_grid, NominalGridSpec};
use lattice_order::persistence::{DiagramJson, PersistenceDiagram};
use lattice_order::{Error, PointCloud, Result, Unit};
use serde::Serialize;

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

pub fn is_image(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("pgm") || e.eq_ignore_ascii_case("png"))
}

/// Fail early when an input file is missing.
pub fn require_input(path: &Path) -> Result<()> {
    if !path.exists() || path.is_dir() {
        return Err(Error::InvalidParameter(format!("input file {} does not exist", path.display())));
    }
    Ok(())
}

/// Fail early when an output file cannot be created in its directory.
pub fn require_output(path: &Path) -> Result<()> {
    let parent = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    if !parent.is_dir() {
        return Err(Error::InvalidParameter(format!(
            "output directory {} does not exist",
            parent.display()
        )));
    }
    Ok(())
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// Point cloud from JSON (unit stored in the file) or CSV (unit from `csv_unit`).
pub fn load_cloud(path: &Path, csv_unit: Unit) -> Result<PointCloud> {
    let bytes = read_file(path)?;
    if is_json(path) {
        let json: CloudJson = serde_json::from_slice(&bytes)?;
        PointCloud::from_json(json)
    } else {
        PointCloud::read_csv(bytes.as_slice(), csv_unit)
    }
}

/// Nominal centers: a grid spec JSON, a cloud JSON, or a CSV of pixel coordinates.
pub fn load_nominal(path: &Path) -> Result<PointCloud> {
    if !is_json(path) {
        return load_cloud(path, Unit::Pixels);
    }
    let bytes = read_file(path)?;
    let value: serde_json::Value = serde_json::from_slice(&bytes)?;
    if value.get("points").is_some() {
        return PointCloud::from_json(serde_json::from_value(value)?);
    }
    let spec: NominalGridSpec = serde_json::from_value(value)?;
    gen_nominal_grid(&spec)
}

pub fn load_diagram(path: &Path) -> Result<PersistenceDiagram> {
    let json: DiagramJson = serde_json::from_slice(&read_file(path)?)?;
    PersistenceDiagram::from_json(&json)
}

pub fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

pub fn cloud_bytes(cloud: &PointCloud, json: bool) -> Result<Vec<u8>> {
    if json {
        json_bytes(&cloud.to_json())
    } else {
        let mut buf = Vec::new();
        cloud.write_csv(&mut buf)?;
        Ok(buf)
    }
}

/// Write to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}

/// `*.json` files of a directory in lexicographic order.
pub fn json_files(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Err(Error::InvalidParameter(format!("{} is not a directory", dir.display())));
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && is_json(p))
        .collect();
    files.sort();
    Ok(files)
}
