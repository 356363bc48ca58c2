//! CSV and key=value file formats.
//!
//! All real values are written with 17 significant decimal digits so that
//! 64-bit floats round-trip exactly and reruns under fixed seeds produce
//! byte-identical files.

use crate::error::{Error, Result};
use crate::numeric::RealVector;
use crate::simulators::JointSample;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

/// 17-significant-digit decimal formatting (exact f64 round trip).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn parse_f64(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|e| Error::io(format!("bad numeric field '{s}': {e}")))
}

pub fn write_csv<P: AsRef<Path>>(path: P, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let file = File::create(path.as_ref())
        .map_err(|e| Error::io(format!("cannot create {}: {e}", path.as_ref().display())))?;
    let mut w = BufWriter::new(file);
    writeln!(w, "{}", header.join(","))?;
    for row in rows {
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a CSV with a header line; every field is kept as a string.
pub fn read_csv<P: AsRef<Path>>(path: P) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let file = File::open(path.as_ref())
        .map_err(|e| Error::io(format!("cannot open {}: {e}", path.as_ref().display())))?;
    let mut lines = BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::io("empty CSV file"))??
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut rows = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        rows.push(line.split(',').map(|s| s.trim().to_string()).collect());
    }
    Ok((header, rows))
}

/// Joint-sample dataset: `theta_0..theta_{dθ−1}, x_0..x_{dx−1}`.
pub fn write_joint_samples<P: AsRef<Path>>(path: P, samples: &[JointSample]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::invalid("refusing to write an empty dataset"));
    }
    let d_theta = samples[0].theta.dim();
    let d_x = samples[0].x.dim();
    let header: Vec<String> = (0..d_theta)
        .map(|i| format!("theta_{i}"))
        .chain((0..d_x).map(|i| format!("x_{i}")))
        .collect();
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let rows: Vec<Vec<String>> = samples
        .iter()
        .map(|s| {
            s.theta
                .iter()
                .chain(s.x.iter())
                .map(|&v| fmt_f64(v))
                .collect()
        })
        .collect();
    write_csv(path, &header_refs, &rows)
}

pub fn read_joint_samples<P: AsRef<Path>>(path: P, theta_dim: usize, x_dim: usize) -> Result<Vec<JointSample>> {
    let (header, rows) = read_csv(path)?;
    if header.len() != theta_dim + x_dim {
        return Err(Error::io(format!(
            "dataset has {} columns, expected {}",
            header.len(),
            theta_dim + x_dim
        )));
    }
    rows.iter()
        .map(|row| {
            let vals: Result<Vec<f64>> = row.iter().map(|s| parse_f64(s)).collect();
            let vals = vals?;
            Ok(JointSample {
                theta: RealVector::from_slice(&vals[..theta_dim])?,
                x: RealVector::from_slice(&vals[theta_dim..])?,
            })
        })
        .collect()
}

/// Sidecar metadata files: one `key=value` pair per line, `#` comments.
pub fn write_key_value<P: AsRef<Path>>(path: P, pairs: &[(String, String)]) -> Result<()> {
    let file = File::create(path.as_ref())
        .map_err(|e| Error::io(format!("cannot create {}: {e}", path.as_ref().display())))?;
    let mut w = BufWriter::new(file);
    for (k, v) in pairs {
        writeln!(w, "{k}={v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_key_value<P: AsRef<Path>>(path: P) -> Result<Vec<(String, String)>> {
    let file = File::open(path.as_ref())
        .map_err(|e| Error::io(format!("cannot open {}: {e}", path.as_ref().display())))?;
    let mut pairs = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (k, v) = trimmed
            .split_once('=')
            .ok_or_else(|| Error::io(format!("malformed key=value line: '{trimmed}'")))?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::RngStream;
    use crate::simulators::{sample_base_joint, BenchmarkTask, TaskKind};

    #[test]
    fn f64_round_trip_is_exact() {
        let values = [1.0 / 3.0, -2.7182818284590452e-15, 6.02214076e23, 0.1 + 0.2];
        for v in values {
            assert_eq!(parse_f64(&fmt_f64(v)).unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn joint_samples_round_trip() {
        let task = BenchmarkTask::new(TaskKind::TwoMoons);
        let samples = sample_base_joint(&task, 5, &mut RngStream::new(4, 0)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("base.csv");
        write_joint_samples(&path, &samples).unwrap();
        let back = read_joint_samples(&path, 2, 2).unwrap();
        assert_eq!(samples, back);
    }

    #[test]
    fn key_value_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("meta.txt");
        let pairs = vec![
            ("task".to_string(), "slcp".to_string()),
            ("seed".to_string(), "42".to_string()),
        ];
        write_key_value(&path, &pairs).unwrap();
        assert_eq!(read_key_value(&path).unwrap(), pairs);
    }
}
