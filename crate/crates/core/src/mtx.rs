//! Matrix Market reading and writing.
//!
//! Writing always uses the coordinate complex format, with `symmetric`
//! storage (lower triangle) only when the matrix is exactly symmetric.
//! Values carry 17 significant digits, so a round trip is lossless.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::Scalar;

pub const SYMMETRIC_HEADER: &str = "%%MatrixMarket matrix coordinate complex symmetric";
pub const GENERAL_HEADER: &str = "%%MatrixMarket matrix coordinate complex general";

pub fn write_matrix_market<W: Write + ?Sized>(m: &DenseMatrix, out: &mut W) -> Result<()> {
    let symmetric = m.is_square() && m.is_symmetric();
    writeln!(out, "{}", if symmetric { SYMMETRIC_HEADER } else { GENERAL_HEADER })?;
    let entries: Vec<(usize, usize, Scalar)> = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !symmetric || j <= i)
        .map(|(i, j)| (i, j, m[(i, j)]))
        .filter(|(_, _, z)| z.re != 0.0 || z.im != 0.0)
        .collect();
    writeln!(out, "{} {} {}", m.rows(), m.cols(), entries.len())?;
    for (i, j, z) in entries {
        writeln!(out, "{} {} {:.16e} {:.16e}", i + 1, j + 1, z.re, z.im)?;
    }
    Ok(())
}

pub fn to_matrix_market_string(m: &DenseMatrix) -> String {
    let mut buf = Vec::new();
    write_matrix_market(m, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("output is ASCII")
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Field {
    Real,
    Integer,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
    SkewSymmetric,
}

/// Reads coordinate or array files with real, integer or complex fields and
/// general, symmetric, skew-symmetric or Hermitian storage.
pub fn read_matrix_market<R: BufRead>(input: R) -> Result<DenseMatrix> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty Matrix Market file".into()))??;
    let tokens: Vec<String> = header.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::Parse(format!("bad Matrix Market header `{header}`")));
    }
    let coordinate = match tokens[2].as_str() {
        "coordinate" => true,
        "array" => false,
        other => return Err(Error::Parse(format!("unsupported layout `{other}`"))),
    };
    let field = match tokens[3].as_str() {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "complex" => Field::Complex,
        other => return Err(Error::Parse(format!("unsupported field `{other}`"))),
    };
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        other => return Err(Error::Parse(format!("unsupported symmetry `{other}`"))),
    };

    let mut body = Vec::new();
    for line in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        body.push(t.to_string());
    }
    let mut body = body.into_iter();
    let size_line = body.next().ok_or_else(|| Error::Parse("missing size line".into()))?;
    let sizes = parse_usizes(&size_line)?;
    let (rows, cols) = match (coordinate, sizes.as_slice()) {
        (true, [r, c, _]) | (false, [r, c]) => (*r, *c),
        _ => return Err(Error::Parse(format!("bad size line `{size_line}`"))),
    };
    let mut m = DenseMatrix::zeros(rows, cols);
    let place = |i: usize, j: usize, z: Scalar, m: &mut DenseMatrix| -> Result<()> {
        if i >= rows || j >= cols {
            return Err(Error::Parse(format!("entry ({}, {}) outside {rows}x{cols}", i + 1, j + 1)));
        }
        m[(i, j)] = z;
        if i != j {
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => m[(j, i)] = z,
                Symmetry::Hermitian => m[(j, i)] = z.conj(),
                Symmetry::SkewSymmetric => m[(j, i)] = -z,
            }
        }
        Ok(())
    };

    if coordinate {
        let nnz = sizes[2];
        let mut count = 0;
        for line in body {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() < 2 {
                return Err(Error::Parse(format!("bad entry line `{line}`")));
            }
            let i = parse_index(parts[0])?;
            let j = parse_index(parts[1])?;
            let z = parse_value(&parts[2..], field, &line)?;
            place(i, j, z, &mut m)?;
            count += 1;
        }
        if count != nnz {
            return Err(Error::Parse(format!("expected {nnz} entries, found {count}")));
        }
    } else {
        // Column-major; symmetric storage lists the lower triangle only.
        let positions: Vec<(usize, usize)> = (0..cols)
            .flat_map(|j| (0..rows).map(move |i| (i, j)))
            .filter(|&(i, j)| match symmetry {
                Symmetry::General => true,
                Symmetry::SkewSymmetric => i > j,
                _ => i >= j,
            })
            .collect();
        let values: Vec<String> = body.collect();
        if values.len() != positions.len() {
            return Err(Error::Parse(format!("expected {} values, found {}", positions.len(), values.len())));
        }
        for ((i, j), line) in positions.into_iter().zip(values) {
            let parts: Vec<&str> = line.split_whitespace().collect();
            place(i, j, parse_value(&parts, field, &line)?, &mut m)?;
        }
    }
    Ok(m)
}

fn parse_usizes(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
        .collect()
}

fn parse_index(t: &str) -> Result<usize> {
    let i: usize = t.parse().map_err(|_| Error::Parse(format!("bad index `{t}`")))?;
    i.checked_sub(1).ok_or_else(|| Error::Parse("indices are 1-based".into()))
}

fn parse_value(parts: &[&str], field: Field, line: &str) -> Result<Scalar> {
    let num = |t: &str| t.parse::<f64>().map_err(|_| Error::Parse(format!("bad value in `{line}`")));
    match (field, parts) {
        (Field::Complex, [r, i, ..]) => Ok(Scalar::new(num(r)?, num(i)?)),
        (Field::Real | Field::Integer, [r, ..]) => Ok(Scalar::new(num(r)?, 0.0)),
        _ => Err(Error::Parse(format!("missing value in `{line}`"))),
    }
}
