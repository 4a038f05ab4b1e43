use crate::coset::{CosetCode, CosetError};
use crate::fmatrix::FMatrix;

/// Coset code equivalent to a secure code built from an invertible `n x n`
/// source transform `T`: its parity check is the first `k` rows of `T^-1`.
pub fn cai_yeung_to_coset(t: &FMatrix, k: usize) -> Result<CosetCode, CosetError> {
    if k > t.rows() {
        return Err(CosetError::WrongLength {
            expected: t.rows(),
            got: k,
        });
    }
    let inv = t.invert()?;
    let rows: Vec<usize> = (0..k).collect();
    let h = inv.select_rows(&rows)?;
    CosetCode::new(if k == 0 {
        FMatrix::zeros(t.field(), 0, t.cols())
    } else {
        h
    })
}

/// Source encoding by transform: `T [s; r]`.
pub fn cai_yeung_encode(t: &FMatrix, secret: &[u32], r: &[u32]) -> Result<Vec<u32>, CosetError> {
    let x: Vec<u32> = secret.iter().chain(r).copied().collect();
    Ok(t.mul_vec(&x)?)
}
