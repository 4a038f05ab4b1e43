//! Dense matrices over a finite field.
//!
//! Elimination pivots on the first nonzero entry in column order, so every
//! derived object (echelon form, kernel basis, solutions) is a deterministic
//! function of the input. Matrices with zero rows are ordinary values.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldDesc, FieldSpec, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrices are over different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("matrix is singular (rank {rank} of {size})")]
    SingularMatrix { rank: usize, size: usize },
    #[error("linear system has no solution")]
    NoSolution,
    #[error("rows have unequal lengths")]
    RaggedRows,
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct FMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: FMatrix,
    pub pivots: Vec<usize>,
}

/// A solution of `M x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<u32>,
    pub unique: bool,
}

impl FMatrix {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> FMatrix {
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> FMatrix {
        let mut m = FMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn new(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<u32>,
    ) -> Result<FMatrix, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &v in &data {
            field.check(v as u64)?;
        }
        Ok(FMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows<R: AsRef<[u32]>>(
        field: &FieldSpec,
        rows: &[R],
    ) -> Result<FMatrix, MatrixError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(MatrixError::RaggedRows);
        }
        let data = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        FMatrix::new(field, rows.len(), cols, data)
    }

    pub fn row_vector(field: &FieldSpec, row: &[u32]) -> Result<FMatrix, MatrixError> {
        FMatrix::new(field, 1, row.len(), row.to_vec())
    }

    pub fn column_vector(field: &FieldSpec, col: &[u32]) -> Result<FMatrix, MatrixError> {
        FMatrix::new(field, col.len(), 1, col.to_vec())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(self.field.contains(v as u64));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn same_field(&self, other: &FMatrix) -> Result<(), MatrixError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(MatrixError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// `[top; bottom]`. An operand with no rows is accepted whatever its width.
    pub fn stack(&self, bottom: &FMatrix) -> Result<FMatrix, MatrixError> {
        self.same_field(bottom)?;
        if bottom.rows == 0 {
            return Ok(self.clone());
        }
        if self.rows == 0 {
            return Ok(bottom.clone());
        }
        if self.cols != bottom.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                self.cols, bottom.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&bottom.data);
        Ok(FMatrix {
            field: self.field.clone(),
            rows: self.rows + bottom.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn submatrix_columns(&self, indices: &[usize]) -> Result<FMatrix, MatrixError> {
        if let Some(&bad) = indices.iter().find(|&&j| j >= self.cols) {
            return Err(MatrixError::DimensionMismatch(format!(
                "column {bad} out of range for {} columns",
                self.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for i in 0..self.rows {
            data.extend(indices.iter().map(|&j| self.get(i, j)));
        }
        Ok(FMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: indices.len(),
            data,
        })
    }

    pub fn select_rows(&self, indices: &[usize]) -> Result<FMatrix, MatrixError> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.rows) {
            return Err(MatrixError::DimensionMismatch(format!(
                "row {bad} out of range for {} rows",
                self.rows
            )));
        }
        let mut data = Vec::with_capacity(self.cols * indices.len());
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        Ok(FMatrix {
            field: self.field.clone(),
            rows: indices.len(),
            cols: self.cols,
            data,
        })
    }

    pub fn mul_mat(&self, other: &FMatrix) -> Result<FMatrix, MatrixError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = FMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    /// `M x` for a column vector given as a slice.
    pub fn mul_vec(&self, x: &[u32]) -> Result<Vec<u32>, MatrixError> {
        if x.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                x.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Echelon {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if factor != 0 {
                        m.sub_row_multiple(i, r, factor);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than a full reduction.
        let f = &self.field;
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for i in r + 1..m.rows {
                let v = m.get(i, c);
                if v != 0 {
                    m.sub_row_multiple(i, r, f.mul(v, inv));
                }
            }
            r += 1;
        }
        r
    }

    pub fn invert(&self) -> Result<FMatrix, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = FMatrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1;
        }
        let ech = aug.rref();
        let rank = ech.pivots.iter().take_while(|&&c| c < n).count();
        if rank < n {
            return Err(MatrixError::SingularMatrix { rank, size: n });
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        ech.reduced.submatrix_columns(&cols)
    }

    /// Canonical basis (as rows) of `{x : M x^T = 0}`, read off the reduced
    /// echelon form: one row per free column.
    pub fn null_space_basis(&self) -> FMatrix {
        let f = &self.field;
        let ech = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut basis = FMatrix::zeros(f, free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, 1);
            for (ri, &pc) in ech.pivots.iter().enumerate() {
                let v = ech.reduced.get(ri, fc);
                basis.set(bi, pc, f.neg(v));
            }
        }
        basis
    }

    /// Solves `M x = b`, reporting whether the solution is unique.
    pub fn solve(&self, b: &[u32]) -> Result<Solution, MatrixError> {
        if b.len() != self.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let rhs = FMatrix::column_vector(&self.field, b)?;
        let aug = self.hconcat(&rhs)?;
        let ech = aug.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return Err(MatrixError::NoSolution);
        }
        let mut x = vec![0; self.cols];
        for (ri, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.reduced.get(ri, self.cols);
        }
        Ok(Solution {
            x,
            unique: ech.pivots.len() == self.cols,
        })
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &FMatrix) -> Result<FMatrix, MatrixError> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "cannot join {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(FMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Same entries reinterpreted over `field`. Used to lift base-field
    /// matrices into an extension whose encoding embeds the prime field.
    pub(crate) fn with_field(&self, field: &FieldSpec) -> FMatrix {
        FMatrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, s: u32) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = self.field.mul(self.data[idx], s);
        }
    }

    /// row[i] -= factor * row[r]
    fn sub_row_multiple(&mut self, i: usize, r: usize, factor: u32) {
        for j in 0..self.cols {
            let v = self.data[r * self.cols + j];
            if v != 0 {
                let idx = i * self.cols + j;
                self.data[idx] = self.field.sub(self.data[idx], self.field.mul(factor, v));
            }
        }
    }
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.field, self.to_rows())
    }
}

impl fmt::Display for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// JSON literal: `{"field": {"p", "m"}, "rows": [[...]]}`. A matrix without
/// rows also records `"cols"` so its width survives a round trip.
#[derive(Serialize, Deserialize)]
struct MatrixLiteral {
    field: FieldDesc,
    rows: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cols: Option<usize>,
}

impl Serialize for FMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixLiteral {
            field: self.field.desc(),
            rows: self.to_rows(),
            cols: (self.rows == 0).then_some(self.cols),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let lit = MatrixLiteral::deserialize(d)?;
        let field = FieldSpec::try_from(lit.field).map_err(D::Error::custom)?;
        let mut m = FMatrix::from_rows(&field, &lit.rows).map_err(D::Error::custom)?;
        if m.rows == 0 {
            m.cols = lit.cols.unwrap_or(0);
        }
        Ok(m)
    }
}
