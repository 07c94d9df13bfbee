//! Complex-matrix file formats and heatmap emission.
//!
//! Text format: CSV with the header line `# qtfa-complex v1, rows, cols`
//! and cells `re+imi` (the imaginary part always carries an explicit sign).
//!
//! Binary format: 8-byte magic `QTFAC1\0\0`, two little-endian u32
//! dimensions, then row-major interleaved little-endian f64 pairs.
//!
//! Heatmaps: binary PPM (P6), magnitudes normalised by the per-file
//! maximum.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;

pub const MAGIC: &[u8; 8] = b"QTFAC1\0\0";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Bin,
}

impl MatrixFormat {
    pub fn extension(self) -> &'static str {
        match self {
            MatrixFormat::Csv => "csv",
            MatrixFormat::Bin => "bin",
        }
    }
}

/// A dense complex matrix with explicit dimensions.
#[derive(Debug, Clone)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(rows * cols, data.len());
        Matrix { rows, cols, data }
    }
}

fn format_cell(v: Complex64) -> String {
    format!("{:?}{:+?}i", v.re, v.im)
}

fn parse_cell(cell: &str, line: usize, field: usize) -> Result<Complex64> {
    let s = cell.trim();
    let inner = s
        .strip_suffix('i')
        .with_context(|| format!("line {line}, field {field}: cell '{s}' missing trailing 'i'"))?;
    // Split at the sign of the imaginary part: the last '+' or '-' that is
    // not an exponent sign and not the leading sign.
    let bytes = inner.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k] as char;
        if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
            split = Some(k);
            break;
        }
    }
    let k = split
        .with_context(|| format!("line {line}, field {field}: cell '{s}' has no imaginary part"))?;
    let re: f64 = inner[..k]
        .parse()
        .with_context(|| format!("line {line}, field {field}: bad real part '{}'", &inner[..k]))?;
    let im: f64 = inner[k..]
        .parse()
        .with_context(|| format!("line {line}, field {field}: bad imaginary part '{}'", &inner[k..]))?;
    Ok(Complex64::new(re, im))
}

pub fn write_csv(path: &Path, m: &Matrix) -> Result<()> {
    let mut out = String::new();
    out.push_str(&format!("# qtfa-complex v1, {}, {}\n", m.rows, m.cols));
    for r in 0..m.rows {
        let row: Vec<String> = (0..m.cols)
            .map(|c| format_cell(m.data[r * m.cols + c]))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())
}

pub fn read_csv(path: &Path) -> Result<Matrix> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read '{}'", path.display()))?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .with_context(|| format!("'{}' is empty", path.display()))?;
    let header = header.trim();
    let rest = header
        .strip_prefix("# qtfa-complex v1,")
        .with_context(|| format!("'{}': missing 'qtfa-complex v1' header", path.display()))?;
    let dims: Vec<&str> = rest.split(',').map(str::trim).collect();
    if dims.len() != 2 {
        bail!("'{}': header must carry two dimensions", path.display());
    }
    let rows: usize = dims[0].parse().context("bad row count in header")?;
    let cols: usize = dims[1].parse().context("bad column count in header")?;
    let mut data = Vec::with_capacity(rows * cols);
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != cols {
            bail!(
                "'{}' line {}: expected {} fields, found {}",
                path.display(),
                idx + 1,
                cols,
                fields.len()
            );
        }
        for (fi, cell) in fields.iter().enumerate() {
            data.push(parse_cell(cell, idx + 1, fi + 1)?);
        }
    }
    if data.len() != rows * cols {
        bail!(
            "'{}': expected {} cells, found {}",
            path.display(),
            rows * cols,
            data.len()
        );
    }
    Ok(Matrix::new(rows, cols, data))
}

pub fn write_bin(path: &Path, m: &Matrix) -> Result<()> {
    let mut buf = Vec::with_capacity(16 + m.data.len() * 16);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(m.rows as u32).to_le_bytes());
    buf.extend_from_slice(&(m.cols as u32).to_le_bytes());
    for v in &m.data {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    write_atomic(path, &buf)
}

pub fn read_bin(path: &Path) -> Result<Matrix> {
    let buf = fs::read(path).with_context(|| format!("cannot read '{}'", path.display()))?;
    if buf.len() < 16 || &buf[..8] != MAGIC {
        bail!("'{}': missing QTFAC1 magic header", path.display());
    }
    let rows = u32::from_le_bytes(buf[8..12].try_into().unwrap()) as usize;
    let cols = u32::from_le_bytes(buf[12..16].try_into().unwrap()) as usize;
    let expected = 16 + rows * cols * 16;
    if buf.len() != expected {
        bail!(
            "'{}': expected {} bytes for {}x{}, found {}",
            path.display(),
            expected,
            rows,
            cols,
            buf.len()
        );
    }
    let mut data = Vec::with_capacity(rows * cols);
    for k in 0..rows * cols {
        let off = 16 + k * 16;
        let re = f64::from_le_bytes(buf[off..off + 8].try_into().unwrap());
        let im = f64::from_le_bytes(buf[off + 8..off + 16].try_into().unwrap());
        data.push(Complex64::new(re, im));
    }
    Ok(Matrix::new(rows, cols, data))
}

/// Read either format, sniffing the magic bytes.
pub fn read_matrix(path: &Path) -> Result<Matrix> {
    let head = fs::read(path).with_context(|| format!("cannot read '{}'", path.display()))?;
    if head.len() >= 8 && &head[..8] == MAGIC {
        read_bin(path)
    } else {
        read_csv(path)
    }
}

pub fn write_matrix(path: &Path, m: &Matrix, format: MatrixFormat) -> Result<()> {
    match format {
        MatrixFormat::Csv => write_csv(path, m),
        MatrixFormat::Bin => write_bin(path, m),
    }
}

/// Grayscale P6 heatmap of cell magnitudes, normalised by the file maximum.
pub fn write_heatmap(path: &Path, m: &Matrix) -> Result<()> {
    let max = m.data.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
    let mut buf = format!("P6\n{} {}\n255\n", m.cols, m.rows).into_bytes();
    for v in &m.data {
        let level = if max > 0.0 {
            ((v.norm() / max) * 255.0).round() as u8
        } else {
            0
        };
        buf.extend_from_slice(&[level, level, level]);
    }
    write_atomic(path, &buf)
}

/// Write through a sibling temporary file and rename into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("cannot create '{}'", parent.display()))?;
        }
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)
            .with_context(|| format!("cannot create '{}'", tmp.display()))?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
        .with_context(|| format!("cannot move '{}' into place", path.display()))?;
    Ok(())
}
