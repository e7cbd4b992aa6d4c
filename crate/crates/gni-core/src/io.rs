//! Comma-separated matrix files and atomic writes.
//!
//! Data matrices are n x p decimal floats without a header; adjacency
//! matrices are p x p 0/1 integers validated on load. Floats are printed
//! with 17 significant digits so every file the tool writes re-reads to
//! bit-identical values. Lines end with LF.

use std::fs;
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::AdjacencyGraph;

/// Writes `contents` to a sibling temp file and renames it into place.
pub fn atomic_write(path: &Path, contents: &str) -> Result<()> {
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::InvalidArgument(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp_path = path.with_file_name(tmp_name);
    fs::write(&tmp_path, contents)?;
    fs::rename(&tmp_path, path)?;
    Ok(())
}

pub fn render_matrix(matrix: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for i in 0..matrix.nrows() {
        for j in 0..matrix.ncols() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format!("{:.16e}", matrix[(i, j)]));
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix(path: &Path, matrix: &DMatrix<f64>) -> Result<()> {
    atomic_write(path, &render_matrix(matrix))
}

pub fn read_matrix(path: &Path) -> Result<DMatrix<f64>> {
    let text = fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|field| {
                field.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line: idx + 1,
                    message: format!("cannot parse '{}' as a float", field.trim()),
                })
            })
            .collect::<Result<_>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!(
                        "row has {} fields, expected {}",
                        row.len(),
                        first.len()
                    ),
                });
            }
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::Parse {
                line: idx + 1,
                message: "non-finite value".into(),
            });
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "empty matrix file".into(),
        });
    }
    let n = rows.len();
    let p = rows[0].len();
    Ok(DMatrix::from_fn(n, p, |i, j| rows[i][j]))
}

pub fn render_adjacency(graph: &AdjacencyGraph) -> String {
    let p = graph.p();
    let entries = graph.to_entries();
    let mut out = String::new();
    for k in 0..p {
        for l in 0..p {
            if l > 0 {
                out.push(',');
            }
            out.push(if entries[k * p + l] == 1 { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

pub fn write_adjacency(path: &Path, graph: &AdjacencyGraph) -> Result<()> {
    atomic_write(path, &render_adjacency(graph))
}

/// Loads a 0/1 matrix and validates symmetry and the zero diagonal.
pub fn read_adjacency(path: &Path) -> Result<AdjacencyGraph> {
    let text = fs::read_to_string(path)?;
    let mut entries: Vec<u8> = Vec::new();
    let mut width: Option<usize> = None;
    let mut height = 0usize;
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        let row: Vec<u8> = line
            .split(',')
            .map(|field| match field.trim() {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                other => Err(Error::Parse {
                    line: idx + 1,
                    message: format!("adjacency entries must be 0 or 1, got '{other}'"),
                }),
            })
            .collect::<Result<_>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("row has {} fields, expected {w}", row.len()),
                })
            }
            _ => {}
        }
        entries.extend(row);
        height += 1;
    }
    let width = width.ok_or(Error::Parse {
        line: 1,
        message: "empty adjacency file".into(),
    })?;
    if width != height {
        return Err(Error::Parse {
            line: height,
            message: format!("adjacency matrix must be square, got {height}x{width}"),
        });
    }
    AdjacencyGraph::from_entries(width, &entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn matrix_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("matrix.csv");
        let mut rng = crate::seed::rng_from_seed(1);
        let m = DMatrix::from_fn(7, 4, |_, _| rng.random_range(-5.0..5.0) * 1e-3);
        write_matrix(&path, &m).unwrap();
        let back = read_matrix(&path).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn adjacency_round_trip_and_validation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("adj.csv");
        let g = crate::synth::gen_random_graph(9, 0.4, 3).unwrap();
        write_adjacency(&path, &g).unwrap();
        assert_eq!(read_adjacency(&path).unwrap(), g);

        // an asymmetric file must be rejected
        fs::write(&path, "0,1\n0,0\n").unwrap();
        assert!(read_adjacency(&path).is_err());
        // a non-square file must be rejected
        fs::write(&path, "0,1\n").unwrap();
        assert!(read_adjacency(&path).is_err());
    }

    #[test]
    fn ragged_matrix_rejected_with_line_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ragged.csv");
        fs::write(&path, "1.0,2.0\n3.0\n").unwrap();
        match read_matrix(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_matrix_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        fs::write(&path, "").unwrap();
        assert!(read_matrix(&path).is_err());
    }

    #[test]
    fn atomic_write_replaces_existing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.txt");
        atomic_write(&path, "first").unwrap();
        atomic_write(&path, "second").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "second");
        // no temp file left behind
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
