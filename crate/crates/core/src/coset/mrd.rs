use super::CosetError;
use crate::fmatrix::{FMatrix, MatrixError};
use crate::gf::FieldSpec;

/// Moore-matrix parity check of an `[n, k]` Gabidulin code over GF(p^m).
///
/// The code locators are `1, x, ..., x^(n-1)` in the extension's polynomial
/// basis; row `i` raises each locator to the power `p^i`. The result has
/// `n - k` rows and lives over GF(p^m).
pub fn gabidulin_parity_check(
    n: usize,
    k: usize,
    base: &FieldSpec,
    m: u32,
) -> Result<FMatrix, CosetError> {
    if base.extension_degree() != 1 {
        return Err(CosetError::NonPrimeBase(base.to_string()));
    }
    if n as u64 > m as u64 {
        return Err(CosetError::ExtensionTooSmall { n, m });
    }
    if k > n {
        return Err(
            MatrixError::DimensionMismatch(format!("dimension {k} exceeds length {n}")).into(),
        );
    }
    let p = base.characteristic();
    let ext = FieldSpec::new(p as u64, m).map_err(MatrixError::from)?;
    let mut h = FMatrix::zeros(&ext, n - k, n);
    for j in 0..n {
        let locator = p.pow(j as u32);
        let mut entry = locator;
        for i in 0..n - k {
            h.set(i, j, entry);
            entry = ext.pow(entry, p as u64);
        }
    }
    Ok(h)
}

/// Whether `[H; B]` is invertible over the extension field, with `B` a
/// full-rank matrix over the prime base field lifted into the extension.
pub fn universal_secrecy_check(h_ext: &FMatrix, b: &FMatrix) -> Result<bool, CosetError> {
    let ext = h_ext.field();
    let base = b.field();
    if base.extension_degree() != 1 || base.characteristic() != ext.characteristic() {
        return Err(CosetError::NonPrimeBase(base.to_string()));
    }
    let n = h_ext.cols();
    if b.cols() != n || h_ext.rows() + b.rows() != n {
        return Err(MatrixError::DimensionMismatch(format!(
            "{}x{} parity check with {}x{} base matrix",
            h_ext.rows(),
            n,
            b.rows(),
            b.cols()
        ))
        .into());
    }
    let rank = b.rank();
    if rank != b.rows() {
        return Err(CosetError::BaseNotFullRank {
            rank,
            rows: b.rows(),
        });
    }
    let stacked = h_ext.stack(&b.with_field(ext))?;
    Ok(stacked.rank() == n)
}
