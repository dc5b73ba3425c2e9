//! Vectors and matrices over F_q.

use crate::error::{Error, Result};
use crate::field::Field;

/// A word of F_q^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqVector {
    field: Field,
    entries: Vec<u8>,
}

impl FqVector {
    pub fn new(field: &Field, entries: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&e| !field.contains(e)) {
            return Err(Error::ElementOutOfRange { value: bad as u16, q: field.q() });
        }
        Ok(Self { field: field.clone(), entries })
    }

    pub fn zeros(field: &Field, n: usize) -> Self {
        Self { field: field.clone(), entries: vec![0; n] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.entries
    }

    pub fn into_inner(self) -> Vec<u8> {
        self.entries
    }

    pub fn get(&self, i: usize) -> u8 {
        self.entries[i]
    }

    /// Hamming weight: the number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: other.len() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Self { field: f.clone(), entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Self { field: f.clone(), entries })
    }

    pub fn scale(&self, alpha: u8) -> Self {
        let f = &self.field;
        Self { field: f.clone(), entries: self.entries.iter().map(|&a| f.mul(alpha, a)).collect() }
    }

    /// self + alpha * other
    pub fn add_scaled(&self, alpha: u8, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = &self.field;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, f.mul(alpha, b)))
            .collect();
        Ok(Self { field: f.clone(), entries })
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self { field: self.field.clone(), entries })
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Self {
        Self { field: self.field.clone(), entries: self.entries[range].to_vec() }
    }
}

/// A dense r x n matrix over F_q, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl FqMatrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        if let Some(&bad) = data.iter().find(|&&e| !field.contains(e)) {
            return Err(Error::ElementOutOfRange { value: bad as u16, q: field.q() });
        }
        Ok(Self { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, got: bad.len() });
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let width = range.len();
        let mut data = Vec::with_capacity(self.rows * width);
        for i in 0..self.rows {
            data.extend_from_slice(&self.row(i)[range.clone()]);
        }
        Self { field: self.field.clone(), rows: self.rows, cols: width, data }
    }

    /// `(self | other)`.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: other.rows });
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Self { field: self.field.clone(), rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn swap_columns(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// The syndrome H x^T.
    pub fn mul_vec(&self, x: &FqVector) -> Result<FqVector> {
        if self.field != *x.field() {
            return Err(Error::FieldMismatch);
        }
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: x.len() });
        }
        let f = &self.field;
        let out = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x.as_slice())
                    .fold(0u8, |acc, (&h, &v)| f.add(acc, f.mul(h, v)))
            })
            .collect();
        Ok(FqVector { field: f.clone(), entries: out })
    }

    /// Row vector times matrix, x H.
    pub fn vec_mul(&self, x: &FqVector) -> Result<FqVector> {
        self.transpose().mul_vec(x)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn scale_row(&mut self, i: usize, alpha: u8) {
        let f = self.field.clone();
        for v in &mut self.data[i * self.cols..(i + 1) * self.cols] {
            *v = f.mul(alpha, *v);
        }
    }

    /// row[target] -= factor * row[source]
    fn eliminate(&mut self, target: usize, source: usize, factor: u8) {
        let f = self.field.clone();
        for j in 0..self.cols {
            let v = f.sub(self.get(target, j), f.mul(factor, self.get(source, j)));
            self.set(target, j, v);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = m.field.inv(m.get(rank, col)).expect("pivot is nonzero");
            m.scale_row(rank, inv);
            for i in rank + 1..m.rows {
                let factor = m.get(i, col);
                if factor != 0 {
                    m.eliminate(i, rank, factor);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Row-reduces to `(I_r | M)`, swapping columns when a pivot column is
    /// dependent on the previous ones. Returns the reduced matrix and the
    /// column swaps applied, in order.
    ///
    /// Fails with [`Error::RankDeficient`] when rank < rows.
    pub fn systematize(&self) -> Result<(FqMatrix, Vec<(usize, usize)>)> {
        let mut m = self.clone();
        let mut swaps = Vec::new();
        for i in 0..m.rows {
            let pivot = (i..m.rows).find(|&row| m.get(row, i) != 0);
            let pivot = match pivot {
                Some(row) => row,
                None => {
                    let found = (i + 1..m.cols)
                        .find_map(|col| (i..m.rows).find(|&row| m.get(row, col) != 0).map(|row| (row, col)));
                    let Some((row, col)) = found else {
                        return Err(Error::RankDeficient { rank: i, required: m.rows });
                    };
                    m.swap_columns(i, col);
                    swaps.push((i, col));
                    row
                }
            };
            m.swap_rows(i, pivot);
            let inv = m.field.inv(m.get(i, i)).expect("pivot is nonzero");
            m.scale_row(i, inv);
            for row in 0..m.rows {
                let factor = m.get(row, i);
                if row != i && factor != 0 {
                    m.eliminate(row, i, factor);
                }
            }
        }
        Ok((m, swaps))
    }

    /// Explicit r x r circulant with `C[i][j] = first_row[(j - i) mod r]`.
    pub fn circulant(first_row: &FqVector) -> Self {
        let r = first_row.len();
        let mut c = Self::zeros(first_row.field(), r, r);
        for i in 0..r {
            for j in 0..r {
                c.set(i, j, first_row.get((j + r - i) % r));
            }
        }
        c
    }
}

/// C x^T for the circulant C with the given first row, by index arithmetic.
pub fn circulant_mat_vec(first_row: &FqVector, x: &FqVector) -> Result<FqVector> {
    if first_row.field() != x.field() {
        return Err(Error::FieldMismatch);
    }
    let r = first_row.len();
    if x.len() != r {
        return Err(Error::DimensionMismatch { expected: r, got: x.len() });
    }
    let f = first_row.field();
    let c = first_row.as_slice();
    let v = x.as_slice();
    let out = (0..r)
        .map(|i| (0..r).fold(0u8, |acc, j| f.add(acc, f.mul(c[(j + r - i) % r], v[j]))))
        .collect();
    Ok(FqVector { field: f.clone(), entries: out })
}
