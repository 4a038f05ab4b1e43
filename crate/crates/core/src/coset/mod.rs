//! Coset coding at the source.
//!
//! A full-row-rank `k x n` parity-check matrix `H` partitions `F_q^n` into
//! `q^k` cosets of its kernel. The secret `S` selects the coset `{Y : H Y = S}`
//! and the encoder emits a uniformly random member of it. Decoding is the
//! syndrome `H Y`.

mod mds;
mod mrd;

pub use mds::{is_mds_parity_check, rs_parity_check, MdsCheck};
pub use mrd::{gabidulin_parity_check, universal_secrecy_check};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fmatrix::{FMatrix, MatrixError};
use crate::gf::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetError {
    #[error("parity-check matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("expected a vector of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("symbol {0} is outside the field")]
    SymbolOutOfRange(u32),
    #[error("code length {length} exceeds q-1 = {max}")]
    LengthExceedsField { length: usize, max: u32 },
    #[error("element {0} is not primitive")]
    NotPrimitive(u32),
    #[error("extension degree {m} is smaller than the code length {n}")]
    ExtensionTooSmall { n: usize, m: u32 },
    #[error("base field must be a prime field, got {0}")]
    NonPrimeBase(String),
    #[error("matrix B is not full rank over the base field (rank {rank} of {rows})")]
    BaseNotFullRank { rank: usize, rows: usize },
    #[error("{subsets} column subsets exceed the enumeration cap {cap}")]
    TooManySubsets { subsets: u64, cap: u64 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Ozarow-Wyner coset code defined by a parity-check matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetCode {
    h: FMatrix,
    /// Rows span `ker H`; coset members are `Y0 + r^T kernel`.
    kernel: FMatrix,
    /// `n x k` right inverse of `H`, giving the coset leader `Y0 = R S`.
    right_inverse: FMatrix,
}

impl CosetCode {
    pub fn new(h: FMatrix) -> Result<CosetCode, CosetError> {
        let ech = h.rref();
        if ech.pivots.len() != h.rows() {
            return Err(CosetError::RankDeficient {
                rank: ech.pivots.len(),
                rows: h.rows(),
            });
        }
        let field = h.field().clone();
        let k = h.rows();
        let mut right_inverse = FMatrix::zeros(&field, h.cols(), k);
        if k > 0 {
            let square = h.submatrix_columns(&ech.pivots)?.invert()?;
            for (i, &pc) in ech.pivots.iter().enumerate() {
                for j in 0..k {
                    right_inverse.set(pc, j, square.get(i, j));
                }
            }
        }
        let kernel = h.null_space_basis();
        Ok(CosetCode {
            h,
            kernel,
            right_inverse,
        })
    }

    pub fn parity_check(&self) -> &FMatrix {
        &self.h
    }

    pub fn field(&self) -> &FieldSpec {
        self.h.field()
    }

    /// Secret length.
    pub fn k(&self) -> usize {
        self.h.rows()
    }

    /// Block length.
    pub fn n(&self) -> usize {
        self.h.cols()
    }

    /// Number of random symbols drawn per codeword.
    pub fn randomness(&self) -> usize {
        self.kernel.rows()
    }

    pub fn kernel(&self) -> &FMatrix {
        &self.kernel
    }

    fn check_vector(&self, v: &[u32], expected: usize) -> Result<(), CosetError> {
        if v.len() != expected {
            return Err(CosetError::WrongLength {
                expected,
                got: v.len(),
            });
        }
        if let Some(&bad) = v.iter().find(|&&x| !self.field().contains(x as u64)) {
            return Err(CosetError::SymbolOutOfRange(bad));
        }
        Ok(())
    }

    /// The coset member selected by explicit kernel coefficients `r`.
    pub fn encode_with(&self, secret: &[u32], r: &[u32]) -> Result<Vec<u32>, CosetError> {
        self.check_vector(secret, self.k())?;
        self.check_vector(r, self.randomness())?;
        let f = self.field();
        let mut y = self.right_inverse.mul_vec(secret)?;
        for (i, &c) in r.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (yj, &kj) in y.iter_mut().zip(self.kernel.row(i)) {
                *yj = f.add(*yj, f.mul(c, kj));
            }
        }
        Ok(y)
    }

    /// Encodes with `n - k` uniform symbols drawn from a seeded generator.
    pub fn encode(&self, secret: &[u32], seed: u64) -> Result<Vec<u32>, CosetError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = self.field().order();
        let r: Vec<u32> = (0..self.randomness())
            .map(|_| rng.random_range(0..q))
            .collect();
        self.encode_with(secret, &r)
    }

    /// The syndrome `H y`.
    pub fn decode(&self, y: &[u32]) -> Result<Vec<u32>, CosetError> {
        self.check_vector(y, self.n())?;
        Ok(self.h.mul_vec(y)?)
    }

    /// Every member of the coset selected by `secret`, in kernel-coefficient order.
    pub fn coset(&self, secret: &[u32]) -> Result<Vec<Vec<u32>>, CosetError> {
        let q = self.field().order() as u64;
        let count = crate::limits::saturating_pow(q, self.randomness());
        let mut out = Vec::with_capacity(count as usize);
        let mut r = vec![0u32; self.randomness()];
        for idx in 0..count {
            let mut rest = idx;
            for slot in r.iter_mut() {
                *slot = (rest % q) as u32;
                rest /= q;
            }
            out.push(self.encode_with(secret, &r)?);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct CosetLiteral {
    #[serde(rename = "H")]
    h: FMatrix,
}

impl Serialize for CosetCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CosetLiteral { h: self.h.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CosetCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let lit = CosetLiteral::deserialize(d)?;
        CosetCode::new(lit.h).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, BTreeSet};

    fn code(p: u64, rows: &[&[u32]]) -> CosetCode {
        let f = FieldSpec::prime(p).unwrap();
        CosetCode::new(FMatrix::from_rows(&f, rows).unwrap()).unwrap()
    }

    #[test]
    fn repetition_code_table() {
        let c = code(2, &[&[1, 1]]);
        for (s, expected) in [(0u32, [[0u32, 0], [1, 1]]), (1, [[0, 1], [1, 0]])] {
            let mut counts: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
            for seed in 0..2000 {
                *counts.entry(c.encode(&[s], seed).unwrap()).or_default() += 1;
            }
            let words: BTreeSet<_> = counts.keys().cloned().collect();
            let want: BTreeSet<_> = expected.iter().map(|w| w.to_vec()).collect();
            assert_eq!(words, want);
            for &n in counts.values() {
                assert!((800..1200).contains(&n), "{counts:?}");
            }
        }
    }

    #[test]
    fn square_code_is_deterministic() {
        let c = code(7, &[&[1, 1], &[1, 2]]);
        let hinv = c.parity_check().invert().unwrap();
        for seed in 0..5 {
            let y = c.encode(&[3, 4], seed).unwrap();
            assert_eq!(y, hinv.mul_vec(&[3, 4]).unwrap());
        }
    }

    #[test]
    fn decode_examples() {
        let c = code(2, &[&[1, 1]]);
        assert_eq!(c.decode(&[0, 1]).unwrap(), vec![1]);
        assert_eq!(c.decode(&[0, 0]).unwrap(), vec![0]);
        let c = code(7, &[&[1, 1, 1], &[3, 2, 6]]);
        assert_eq!(c.decode(&[1, 0, 0]).unwrap(), vec![1, 3]);
    }

    #[test]
    fn errors() {
        let f = FieldSpec::prime(3).unwrap();
        let h = FMatrix::from_rows(&f, &[[1, 1], [2, 2]]).unwrap();
        assert_eq!(
            CosetCode::new(h).unwrap_err(),
            CosetError::RankDeficient { rank: 1, rows: 2 }
        );
        let c = code(3, &[&[1, 1]]);
        assert!(matches!(
            c.encode(&[1, 1], 0),
            Err(CosetError::WrongLength { .. })
        ));
        assert!(matches!(
            c.decode(&[3, 0]),
            Err(CosetError::SymbolOutOfRange(3))
        ));
    }

    fn all_vectors(q: u32, len: usize) -> Vec<Vec<u32>> {
        (0..q.pow(len as u32))
            .map(|mut idx| {
                (0..len)
                    .map(|_| {
                        let d = idx % q;
                        idx /= q;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn round_trip_and_uniform_cosets_exhaustive() {
        let cases: Vec<(u64, Vec<Vec<u32>>)> = vec![
            (2, vec![vec![1, 1]]),
            (2, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0]]),
            (3, vec![vec![1, 2, 0], vec![0, 1, 1]]),
            (5, vec![vec![1, 1, 1, 1]]),
            (7, vec![vec![1, 1, 1], vec![3, 2, 6]]),
        ];
        for (p, rows) in cases {
            let c = code(p, &rows.iter().map(|r| r.as_slice()).collect::<Vec<_>>());
            let q = p as u32;
            for s in all_vectors(q, c.k()) {
                let members = c.coset(&s).unwrap();
                let distinct: BTreeSet<_> = members.iter().cloned().collect();
                assert_eq!(distinct.len() as u32, q.pow(c.randomness() as u32));
                // the coset is exactly the syndrome class
                let class: BTreeSet<_> = all_vectors(q, c.n())
                    .into_iter()
                    .filter(|y| c.decode(y).unwrap() == s)
                    .collect();
                assert_eq!(distinct, class);
                for seed in 0..4 {
                    let y = c.encode(&s, seed).unwrap();
                    assert_eq!(c.decode(&y).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn json() {
        let c = code(7, &[&[1, 1, 1], &[3, 2, 6]]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"H":{"field":{"p":7,"m":1},"rows":[[1,1,1],[3,2,6]]}}"#
        );
        assert_eq!(serde_json::from_str::<CosetCode>(&s).unwrap(), c);
    }
}
