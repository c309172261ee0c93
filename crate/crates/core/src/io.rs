//! `TGT1` binary tensor files.
//!
//! Layout (all little-endian):
//!
//! ```text
//! b"TGT1" | u32 order M | M × u32 dims | p × f64 values (column-major)
//! ```
//!
//! Matrices are stored as order-2 tensors. A collection of `n` samples with
//! dims `(p_1, …, p_M)` is stored as a single order-`M+1` tensor whose last
//! mode indexes the samples (each sample is a contiguous block).

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::tensor::{Matrix, Tensor};

pub const MAGIC: &[u8; 4] = b"TGT1";

pub fn write_tensor<W: Write>(mut w: W, t: &Tensor) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&(t.order() as u32).to_le_bytes())?;
    for &d in t.dims() {
        let d = u32::try_from(d).map_err(|_| Error::Format(format!("dimension {d} exceeds u32")))?;
        w.write_all(&d.to_le_bytes())?;
    }
    for x in t.data() {
        w.write_all(&x.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_tensor<R: Read>(mut r: R) -> Result<Tensor> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)
        .map_err(|_| Error::Format("file too short for TGT1 header".into()))?;
    if &magic != MAGIC {
        return Err(Error::Format(format!("bad magic {magic:?}")));
    }
    let order = read_u32(&mut r)? as usize;
    if order == 0 {
        return Err(Error::Format("tensor order must be at least 1".into()));
    }
    let dims = (0..order)
        .map(|_| read_u32(&mut r).map(|d| d as usize))
        .collect::<Result<Vec<_>>>()?;
    let len = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or_else(|| Error::Format("tensor size overflows".into()))?;
    let mut bytes = vec![0u8; len * 8];
    r.read_exact(&mut bytes)
        .map_err(|_| Error::Format(format!("expected {len} values after header")))?;
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(Error::Format("trailing bytes after tensor data".into()));
    }
    let data = bytes
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    Tensor::new(dims, data).map_err(|e| Error::Format(e.to_string()))
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)
        .map_err(|_| Error::Format("truncated header".into()))?;
    Ok(u32::from_le_bytes(buf))
}

pub fn save_tensor(path: impl AsRef<Path>, t: &Tensor) -> Result<()> {
    write_tensor(BufWriter::new(File::create(path)?), t)
}

pub fn load_tensor(path: impl AsRef<Path>) -> Result<Tensor> {
    read_tensor(BufReader::new(File::open(path)?))
}

pub fn save_matrix(path: impl AsRef<Path>, m: &Matrix) -> Result<()> {
    save_tensor(path, &Tensor::from_matrix(m))
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<Matrix> {
    let t = load_tensor(path)?;
    tensor_to_matrix(&t)
}

pub fn tensor_to_matrix(t: &Tensor) -> Result<Matrix> {
    match t.dims() {
        &[r, c] => Ok(Matrix::from_column_slice(r, c, t.data())),
        dims => Err(Error::Format(format!("expected an order-2 tensor, got dims {dims:?}"))),
    }
}

/// Stacks equally-shaped samples along a new trailing mode.
pub fn stack_samples(samples: &[Tensor]) -> Result<Tensor> {
    let first = samples
        .first()
        .ok_or_else(|| Error::InsufficientData("cannot stack zero samples".into()))?;
    let mut dims = first.dims().to_vec();
    let mut data = Vec::with_capacity(first.len() * samples.len());
    for s in samples {
        if s.dims() != first.dims() {
            return Err(Error::Dimension(format!(
                "sample dims {:?} differ from {:?}",
                s.dims(),
                first.dims()
            )));
        }
        data.extend_from_slice(s.data());
    }
    dims.push(samples.len());
    Tensor::new(dims, data)
}

/// Splits the trailing mode of a stacked tensor back into samples.
pub fn unstack_samples(stacked: &Tensor) -> Result<Vec<Tensor>> {
    let dims = stacked.dims();
    if dims.len() < 2 {
        return Err(Error::Format(
            "a sample file needs at least one data mode plus the sample mode".into(),
        ));
    }
    let (sample_dims, n) = (&dims[..dims.len() - 1], dims[dims.len() - 1]);
    let block: usize = sample_dims.iter().product();
    (0..n)
        .map(|i| Tensor::new(sample_dims.to_vec(), stacked.data()[i * block..(i + 1) * block].to_vec()))
        .collect()
}

pub fn save_samples(path: impl AsRef<Path>, samples: &[Tensor]) -> Result<()> {
    save_tensor(path, &stack_samples(samples)?)
}

pub fn load_samples(path: impl AsRef<Path>) -> Result<Vec<Tensor>> {
    unstack_samples(&load_tensor(path)?)
}

/// Row-major nested arrays, for JSON output of matrices.
pub fn matrix_rows(m: &Matrix) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

/// `#[serde(with = "crate::io::serde_matrix")]` helper: matrices as nested row arrays.
pub mod serde_matrix {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::matrix_rows;
    use crate::tensor::Matrix;

    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
        matrix_rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let rows = Vec::<Vec<f64>>::deserialize(d)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(Matrix::from_row_iterator(nrows, ncols, rows.into_iter().flatten()))
    }
}
