//! GridField files: one CSV per time slice (`x,z,psi,v,rho`) plus a JSON
//! sidecar holding the grid spec and the slice file names.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::grid::{GridField, GridSpec, Slice};
use crate::error::{Error, Result};
use crate::output::{atomic_write, csv_bytes, json_bytes};

pub const SIDECAR: &str = "grid.json";
pub const CSV_HEADER: [&str; 5] = ["x", "z", "psi", "v", "rho"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSidecar {
    pub spec: GridSpec,
    pub slices: Vec<SliceEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceEntry {
    pub t: f64,
    pub file: String,
}

pub fn slice_file_name(it: usize) -> String {
    format!("slice_{it:04}.csv")
}

/// Write `field` into `dir`.
pub fn write_grid(dir: &Path, field: &GridField) -> Result<()> {
    fs::create_dir_all(dir)?;
    let s = &field.spec;
    let mut entries = Vec::with_capacity(s.nt);
    for (it, slice) in field.slices.iter().enumerate() {
        let rows = (0..s.nx).flat_map(|ix| {
            (0..s.nz).map(move |iz| {
                let k = ix * s.nz + iz;
                vec![s.x(ix), s.z(iz), slice.psi[k], slice.v[k], slice.rho[k]]
            })
        });
        let name = slice_file_name(it);
        atomic_write(&dir.join(&name), &csv_bytes(&CSV_HEADER, rows)?)?;
        entries.push(SliceEntry { t: s.t(it), file: name });
    }
    atomic_write(&dir.join(SIDECAR), &json_bytes(&GridSidecar { spec: *s, slices: entries })?)
}

/// Read a grid written by [`write_grid`].
pub fn read_grid(dir: &Path) -> Result<GridField> {
    let sidecar: GridSidecar = serde_json::from_slice(&fs::read(dir.join(SIDECAR))?)?;
    let spec = sidecar.spec;
    spec.validate()?;
    let n = spec.points_per_slice();
    let mut slices = Vec::with_capacity(sidecar.slices.len());
    for entry in &sidecar.slices {
        let mut rdr = csv::Reader::from_path(dir.join(&entry.file))?;
        let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
        if header != CSV_HEADER {
            return Err(Error::Format(format!("{}: unexpected header {:?}", entry.file, header)));
        }
        let mut slice = Slice::zeros(n);
        let mut count = 0;
        for rec in rdr.records() {
            let rec = rec?;
            if count >= n {
                return Err(Error::Format(format!("{}: more than {n} rows", entry.file)));
            }
            let parse = |i: usize| -> Result<f64> {
                rec.get(i)
                    .ok_or_else(|| Error::Format(format!("{}: short row", entry.file)))?
                    .trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Format(format!("{}: {e}", entry.file)))
            };
            slice.psi[count] = parse(2)?;
            slice.v[count] = parse(3)?;
            slice.rho[count] = parse(4)?;
            count += 1;
        }
        if count != n {
            return Err(Error::Format(format!("{}: expected {n} rows, got {count}", entry.file)));
        }
        slices.push(slice);
    }
    GridField::new(spec, slices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::field::{FieldValues, FnSolution};

    #[test]
    fn bit_exact_round_trip() {
        let spec = GridSpec { x0: -1.0, z0: 0.3, hx: 0.1, hz: 0.07, nx: 4, nz: 3, t0: 0.0, dt: 0.3, nt: 2 };
        let sol = FnSolution(|t: f64, x: f64, z: f64| FieldValues {
            psi: (t + x * z).sin() / 3.0,
            v: (x - t).exp() * 1e-7,
            rho: 1.0 / (1.0 + z * z + t),
        });
        let field = GridField::sample(spec, &sol).unwrap();
        let dir = tempfile::tempdir().unwrap();
        write_grid(dir.path(), &field).unwrap();
        let back = read_grid(dir.path()).unwrap();
        assert_eq!(back.spec, field.spec);
        for (a, b) in back.slices.iter().zip(&field.slices) {
            for (x, y) in a.psi.iter().chain(&a.v).chain(&a.rho).zip(b.psi.iter().chain(&b.v).chain(&b.rho)) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
        let text = std::fs::read_to_string(dir.path().join("slice_0000.csv")).unwrap();
        assert!(text.starts_with("x,z,psi,v,rho\n"));
    }

    #[test]
    fn wrong_header_is_rejected() {
        let spec = GridSpec { x0: 0.0, z0: 0.0, hx: 1.0, hz: 1.0, nx: 1, nz: 1, t0: 0.0, dt: 1.0, nt: 1 };
        let dir = tempfile::tempdir().unwrap();
        write_grid(dir.path(), &GridField::zeros(spec).unwrap()).unwrap();
        std::fs::write(dir.path().join("slice_0000.csv"), "a,b,c,d,e\n0,0,0,0,0\n").unwrap();
        assert!(matches!(read_grid(dir.path()), Err(Error::Format(_))));
    }
}
