use itertools::Itertools;

use super::CosetError;
use crate::fmatrix::{FMatrix, MatrixError};
use crate::gf::FieldSpec;
use crate::limits;

/// Vandermonde parity check of a Reed-Solomon code: entry `(i, j)` is
/// `alpha^((i+1) j)` for `i < n`, `j < length`.
pub fn rs_parity_check(
    n: usize,
    length: usize,
    field: &FieldSpec,
    alpha: u32,
) -> Result<FMatrix, CosetError> {
    let max = field.order() - 1;
    if length as u64 > max as u64 {
        return Err(CosetError::LengthExceedsField { length, max });
    }
    if alpha == 0
        || field
            .multiplicative_order(alpha)
            .map_err(MatrixError::from)?
            != max as u64
    {
        return Err(CosetError::NotPrimitive(alpha));
    }
    let mut h = FMatrix::zeros(field, n, length);
    for i in 0..n {
        for j in 0..length {
            h.set(i, j, field.pow(alpha, ((i + 1) * j) as u64));
        }
    }
    Ok(h)
}

/// Outcome of an exhaustive MDS check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MdsCheck {
    pub is_mds: bool,
    /// First column subset (lexicographic) whose submatrix is singular.
    pub witness: Option<Vec<usize>>,
    pub subsets_checked: u64,
}

/// Checks that every choice of `rows` columns of `h` is linearly independent.
pub fn is_mds_parity_check(h: &FMatrix) -> Result<MdsCheck, CosetError> {
    let n = h.rows();
    let subsets = limits::binomial(h.cols(), n);
    let cap = limits::cap(limits::MDS_SUBSETS);
    if subsets > cap {
        return Err(CosetError::TooManySubsets { subsets, cap });
    }
    if h.cols() < n {
        return Ok(MdsCheck {
            is_mds: false,
            witness: None,
            subsets_checked: 0,
        });
    }
    let mut checked = 0;
    for cols in (0..h.cols()).combinations(n) {
        checked += 1;
        if h.submatrix_columns(&cols)?.rank() < n {
            return Ok(MdsCheck {
                is_mds: false,
                witness: Some(cols),
                subsets_checked: checked,
            });
        }
    }
    Ok(MdsCheck {
        is_mds: true,
        witness: None,
        subsets_checked: checked,
    })
}
