//! MatrixMarket and plain-vector file formats.
//!
//! Sparse matrices use the `coordinate` variant with 1-based
//! `row col value` triples; dense matrices use the column-major `array`
//! variant. Vectors are a length line followed by one value per line.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{NonNegativeMatrix, Storage};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_header(line: &str) -> Result<(Layout, Symmetry)> {
    let tokens: Vec<String> = line.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(1, "expected '%%MatrixMarket matrix <layout> real general'"));
    }
    let layout = match tokens[2].as_str() {
        "coordinate" => Layout::Coordinate,
        "array" => Layout::Array,
        other => return Err(parse_err(1, format!("unsupported layout '{other}'"))),
    };
    if tokens[3] != "real" && tokens[3] != "double" && tokens[3] != "integer" {
        return Err(parse_err(1, format!("unsupported field '{}'", tokens[3])));
    }
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        other => return Err(parse_err(1, format!("unsupported symmetry '{other}'"))),
    };
    Ok((layout, symmetry))
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(line, format!("invalid number '{tok}'")))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, format!("invalid integer '{tok}'")))
}

/// Reads a dense matrix of any shape in either MatrixMarket layout.
pub fn read_dense<R: Read>(reader: R) -> Result<DMatrix<f64>> {
    let mut lines = BufReader::new(reader).lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::EmptyInput)?;
    let (layout, symmetry) = parse_header(&header?)?;

    let mut body = Vec::new();
    for (no, line) in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        body.push((no + 1, t.to_string()));
    }
    let mut body = body.into_iter();
    let (size_line, size) = body.next().ok_or_else(|| parse_err(2, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();

    match layout {
        Layout::Coordinate => {
            if dims.len() != 3 {
                return Err(parse_err(size_line, "expected 'rows cols nnz'"));
            }
            let rows = parse_usize(dims[0], size_line)?;
            let cols = parse_usize(dims[1], size_line)?;
            let nnz = parse_usize(dims[2], size_line)?;
            let mut m = DMatrix::zeros(rows, cols);
            let mut count = 0;
            for (no, entry) in body {
                let t: Vec<&str> = entry.split_whitespace().collect();
                if t.len() != 3 {
                    return Err(parse_err(no, "expected 'row col value'"));
                }
                let i = parse_usize(t[0], no)?;
                let j = parse_usize(t[1], no)?;
                let v = parse_f64(t[2], no)?;
                if i == 0 || i > rows || j == 0 || j > cols {
                    return Err(parse_err(no, format!("entry ({i}, {j}) outside {rows}x{cols}")));
                }
                m[(i - 1, j - 1)] += v;
                if symmetry == Symmetry::Symmetric && i != j {
                    m[(j - 1, i - 1)] += v;
                }
                count += 1;
            }
            if count != nnz {
                return Err(parse_err(size_line, format!("declared {nnz} entries, found {count}")));
            }
            Ok(m)
        }
        Layout::Array => {
            if dims.len() != 2 {
                return Err(parse_err(size_line, "expected 'rows cols'"));
            }
            let rows = parse_usize(dims[0], size_line)?;
            let cols = parse_usize(dims[1], size_line)?;
            let mut values = Vec::with_capacity(rows * cols);
            for (no, entry) in body {
                for tok in entry.split_whitespace() {
                    values.push(parse_f64(tok, no)?);
                }
            }
            match symmetry {
                Symmetry::General => {
                    if values.len() != rows * cols {
                        return Err(parse_err(
                            size_line,
                            format!("expected {} values, found {}", rows * cols, values.len()),
                        ));
                    }
                    Ok(DMatrix::from_column_slice(rows, cols, &values))
                }
                Symmetry::Symmetric => {
                    // lower triangle, column by column
                    let mut m = DMatrix::zeros(rows, cols);
                    let mut it = values.into_iter();
                    for j in 0..cols {
                        for i in j..rows {
                            let v = it.next().ok_or_else(|| parse_err(size_line, "too few values"))?;
                            m[(i, j)] = v;
                            m[(j, i)] = v;
                        }
                    }
                    Ok(m)
                }
            }
        }
    }
}

/// Reads a square non-negative matrix. Coordinate files with density
/// below the sparse threshold come back sparse.
pub fn read_matrix<R: Read>(reader: R) -> Result<NonNegativeMatrix> {
    let m = read_dense(reader)?;
    Ok(NonNegativeMatrix::from_dense(m)?.with_auto_storage())
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<NonNegativeMatrix> {
    read_matrix(File::open(path)?)
}

/// Writes sparse storage as `coordinate`, dense storage as `array`.
pub fn write_matrix<W: Write>(m: &NonNegativeMatrix, writer: W) -> Result<()> {
    match m.storage() {
        Storage::Dense(d) => write_dense(d, writer),
        Storage::Sparse(s) => {
            let mut w = BufWriter::new(writer);
            writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
            writeln!(w, "{} {} {}", s.n(), s.n(), s.nnz())?;
            for j in 0..s.n() {
                let (rows, vals) = s.column(j);
                for (&i, &v) in rows.iter().zip(vals) {
                    writeln!(w, "{} {} {}", i + 1, j + 1, v)?;
                }
            }
            w.flush()?;
            Ok(())
        }
    }
}

pub fn write_matrix_file(m: &NonNegativeMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_matrix(m, File::create(path)?)
}

/// Dense `array` layout, column-major, for matrices of any shape.
pub fn write_dense<W: Write>(m: &DMatrix<f64>, writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    writeln!(w, "%%MatrixMarket matrix array real general")?;
    writeln!(w, "{} {}", m.nrows(), m.ncols())?;
    for v in m.iter() {
        writeln!(w, "{v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_dense_file(m: &DMatrix<f64>, path: impl AsRef<Path>) -> Result<()> {
    write_dense(m, File::create(path)?)
}

pub fn read_vector<R: Read>(reader: R) -> Result<Vec<f64>> {
    let mut tokens = Vec::new();
    for (no, line) in BufReader::new(reader).lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') || t.starts_with('#') {
            continue;
        }
        tokens.push((no + 1, t.to_string()));
    }
    let mut it = tokens.into_iter();
    let (first, len) = it.next().ok_or(Error::EmptyInput)?;
    let len = parse_usize(&len, first)?;
    let values = it.map(|(no, t)| parse_f64(&t, no)).collect::<Result<Vec<_>>>()?;
    if values.len() != len {
        return Err(parse_err(
            first,
            format!("declared length {len}, found {}", values.len()),
        ));
    }
    Ok(values)
}

pub fn write_vector<W: Write>(v: &[f64], writer: W) -> Result<()> {
    let mut w = BufWriter::new(writer);
    writeln!(w, "{}", v.len())?;
    for x in v {
        writeln!(w, "{x}")?;
    }
    w.flush()?;
    Ok(())
}
