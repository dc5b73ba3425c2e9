//! Key generation: a public parity-check matrix H in systematic form, a
//! weight-ω secret s and its syndrome y = H s^T.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{circulant_mat_vec, FqMatrix, FqVector};
use crate::params::{validate_params, MatrixKind, SchemeParams};
use crate::stream::SeededStream;

/// Reseed-and-retry budget for rank-deficient random matrices.
pub const KEYGEN_ATTEMPTS: usize = 16;

/// The public matrix `H = (I_r | B)`; only the right block B is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParityCheck {
    /// B = M, dense r x k.
    Systematic(FqMatrix),
    /// B circulant, given by its first row of length r.
    DoubleCirculant(FqVector),
}

impl ParityCheck {
    pub fn kind(&self) -> MatrixKind {
        match self {
            ParityCheck::Systematic(_) => MatrixKind::RandomSystematic,
            ParityCheck::DoubleCirculant(_) => MatrixKind::DoubleCirculant,
        }
    }

    pub fn field(&self) -> &Field {
        match self {
            ParityCheck::Systematic(m) => m.field(),
            ParityCheck::DoubleCirculant(row) => row.field(),
        }
    }

    pub fn r(&self) -> usize {
        match self {
            ParityCheck::Systematic(m) => m.rows(),
            ParityCheck::DoubleCirculant(row) => row.len(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            ParityCheck::Systematic(m) => m.rows() + m.cols(),
            ParityCheck::DoubleCirculant(row) => 2 * row.len(),
        }
    }

    fn right_times(&self, tail: &FqVector) -> Result<FqVector> {
        match self {
            ParityCheck::Systematic(m) => m.mul_vec(tail),
            ParityCheck::DoubleCirculant(row) => circulant_mat_vec(row, tail),
        }
    }

    /// H x^T = x_head + B x_tail, never building H.
    pub fn syndrome(&self, x: &FqVector) -> Result<FqVector> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: x.len() });
        }
        let r = self.r();
        x.slice(0..r).add(&self.right_times(&x.slice(r..x.len()))?)
    }

    /// The full r x n matrix.
    pub fn dense(&self) -> FqMatrix {
        let right = match self {
            ParityCheck::Systematic(m) => m.clone(),
            ParityCheck::DoubleCirculant(row) => FqMatrix::circulant(row),
        };
        FqMatrix::identity(self.field(), self.r()).hconcat(&right).expect("same field and row count")
    }

    /// A uniformly random x with H x^T = y: pick the tail t at random and
    /// set the head to y - B t.
    pub fn random_preimage(&self, y: &FqVector, stream: &mut SeededStream) -> Result<FqVector> {
        if y.len() != self.r() {
            return Err(Error::DimensionMismatch { expected: self.r(), got: y.len() });
        }
        let f = self.field();
        let tail = FqVector::new(f, (0..self.n() - self.r()).map(|_| stream.element(f)).collect())?;
        let head = y.sub(&self.right_times(&tail)?)?;
        head.concat(&tail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey {
    pub params: SchemeParams,
    pub h: ParityCheck,
    pub y: FqVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey {
    pub s: FqVector,
}

impl PublicKey {
    pub fn field(&self) -> &Field {
        &self.params.field
    }

    /// Checks H s^T = y and wt(s) = ω.
    pub fn matches(&self, sk: &PrivateKey) -> Result<()> {
        if sk.s.len() != self.params.n {
            return Err(Error::KeyMismatch(format!("secret has length {}, n = {}", sk.s.len(), self.params.n)));
        }
        if sk.s.weight() != self.params.weight {
            return Err(Error::KeyMismatch(format!("secret weight {} != ω = {}", sk.s.weight(), self.params.weight)));
        }
        if self.h.syndrome(&sk.s)? != self.y {
            return Err(Error::KeyMismatch("H s^T != y".into()));
        }
        Ok(())
    }
}

/// A vector of weight exactly ω: the support is a Fisher-Yates prefix of
/// `0..n`, each support value uniform over F_q \ {0}.
pub fn sample_weight_omega(field: &Field, n: usize, weight: usize, stream: &mut SeededStream) -> FqVector {
    assert!(weight <= n && n <= 256);
    let mut positions: Vec<usize> = (0..n).collect();
    for i in 0..weight {
        let j = i + stream.below(n - i);
        positions.swap(i, j);
    }
    let mut entries = vec![0u8; n];
    for &pos in &positions[..weight] {
        entries[pos] = stream.nonzero_element(field);
    }
    FqVector::new(field, entries).expect("sampled elements are in range")
}

fn random_matrix(field: &Field, rows: usize, cols: usize, stream: &mut SeededStream) -> FqMatrix {
    let data = (0..rows * cols).map(|_| stream.element(field)).collect();
    FqMatrix::new(field, rows, cols, data).expect("sampled elements are in range")
}

/// Draws the public matrix for `p` from `stream`.
pub fn sample_parity_check(p: &SchemeParams, stream: &mut SeededStream) -> Result<ParityCheck> {
    let (f, r, n) = (&p.field, p.r(), p.n);
    match p.kind {
        MatrixKind::DoubleCirculant => {
            let row = FqVector::new(f, (0..r).map(|_| stream.element(f)).collect())?;
            Ok(ParityCheck::DoubleCirculant(row))
        }
        MatrixKind::RandomSystematic => {
            for _ in 0..KEYGEN_ATTEMPTS {
                match random_matrix(f, r, n, stream).systematize() {
                    Ok((reduced, _)) => return Ok(ParityCheck::Systematic(reduced.columns(r..n))),
                    Err(Error::RankDeficient { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::KeygenExhausted(KEYGEN_ATTEMPTS))
        }
    }
}

/// Deterministic key generation from `seed`.
pub fn keygen(p: &SchemeParams, seed: &[u8]) -> Result<(PublicKey, PrivateKey)> {
    validate_params(p)?;
    let mut stream = SeededStream::new(seed);
    let h = sample_parity_check(p, &mut stream)?;
    let s = sample_weight_omega(&p.field, p.n, p.weight, &mut stream);
    let y = h.syndrome(&s)?;
    Ok((PublicKey { params: p.clone(), h, y }, PrivateKey { s }))
}
