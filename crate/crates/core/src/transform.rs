//! The monomial map Π_{γ,Σ}: v ↦ (γ_{Σ(i)} v_{Σ(i)})_i, its inverse, and the
//! hash commitments built over it.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::FqVector;
use crate::stream::SeededStream;

/// Domain tag of the first commitment.
pub const C1_TAG: u8 = 0x01;
/// Domain tag of the second commitment.
pub const C2_TAG: u8 = 0x02;

/// A permutation Σ of `0..n` (stored as images) together with a scaling
/// vector γ whose entries are all nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transform {
    perm: Vec<u8>,
    gamma: FqVector,
}

impl Transform {
    pub fn new(perm: Vec<u8>, gamma: FqVector) -> Result<Self> {
        let n = perm.len();
        if gamma.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: gamma.len() });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            let p = p as usize;
            if p >= n || seen[p] {
                return Err(Error::InvalidParams("Σ is not a permutation".into()));
            }
            seen[p] = true;
        }
        if gamma.weight() != n {
            return Err(Error::InvalidParams("γ has a zero entry".into()));
        }
        Ok(Self { perm, gamma })
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Self {
            perm: (0..n).map(|i| i as u8).collect(),
            gamma: FqVector::new(field, vec![1; n]).expect("1 is in every field"),
        }
    }

    /// Σ from Fisher-Yates over the stream of `perm_seed`, γ by rejection
    /// sampling nonzero elements from the stream of `scale_seed`.
    pub fn derive(perm_seed: &[u8], scale_seed: &[u8], n: usize, field: &Field) -> Self {
        let perm = SeededStream::new(perm_seed).permutation(n);
        let mut gs = SeededStream::new(scale_seed);
        let gamma = FqVector::new(field, (0..n).map(|_| gs.nonzero_element(field)).collect())
            .expect("sampled elements are in range");
        Self { perm, gamma }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn permutation(&self) -> &[u8] {
        &self.perm
    }

    pub fn gamma(&self) -> &FqVector {
        &self.gamma
    }

    fn check(&self, v: &FqVector) -> Result<()> {
        if v.field() != self.gamma.field() {
            return Err(Error::FieldMismatch);
        }
        if v.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: v.len() });
        }
        Ok(())
    }

    /// output_i = γ_{Σ(i)} · v_{Σ(i)}
    pub fn apply(&self, v: &FqVector) -> Result<FqVector> {
        self.check(v)?;
        let f = v.field();
        let out = self
            .perm
            .iter()
            .map(|&p| f.mul(self.gamma.get(p as usize), v.get(p as usize)))
            .collect();
        FqVector::new(f, out)
    }

    /// result_{Σ(i)} = γ_{Σ(i)}^{-1} · w_i
    pub fn invert(&self, w: &FqVector) -> Result<FqVector> {
        self.check(w)?;
        let f = w.field();
        let mut out = vec![0u8; self.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            let p = p as usize;
            out[p] = f.mul(f.inv(self.gamma.get(p))?, w.get(i));
        }
        FqVector::new(f, out)
    }

    /// Σ images followed by γ, one byte each.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = self.perm.clone();
        out.extend_from_slice(self.gamma.as_slice());
        out
    }
}

/// A digest truncated to ℓ_h bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Commitment(pub Vec<u8>);

impl Commitment {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn bits(&self) -> usize {
        self.0.len() * 8
    }
}

fn digest(parts: &[&[u8]], hash_bits: usize) -> Commitment {
    assert!(hash_bits % 8 == 0 && (8..=256).contains(&hash_bits), "digest length {hash_bits}");
    let mut h = Sha256::new();
    for p in parts {
        h.update(p);
    }
    Commitment(h.finalize()[..hash_bits / 8].to_vec())
}

/// c1 = h(Σ, γ, H u^T)
pub fn commit_c1(t: &Transform, syndrome_of_u: &FqVector, hash_bits: usize) -> Commitment {
    digest(&[&[C1_TAG], t.permutation(), t.gamma().as_slice(), syndrome_of_u.as_slice()], hash_bits)
}

/// c2 = h(Π(u), Π(s))
pub fn commit_c2(image_u: &FqVector, image_s: &FqVector, hash_bits: usize) -> Result<Commitment> {
    if image_u.len() != image_s.len() {
        return Err(Error::DimensionMismatch { expected: image_u.len(), got: image_s.len() });
    }
    Ok(digest(&[&[C2_TAG], image_u.as_slice(), image_s.as_slice()], hash_bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn vec5(v: &[u8]) -> FqVector {
        FqVector::new(&f5(), v.to_vec()).unwrap()
    }

    fn hand_transform() -> Transform {
        // Σ(1)=2, Σ(2)=3, Σ(3)=1 in one-based notation
        Transform::new(vec![1, 2, 0], vec5(&[1, 2, 3])).unwrap()
    }

    #[test]
    fn apply_hand_example() {
        let t = hand_transform();
        assert_eq!(t.apply(&vec5(&[4, 1, 2])).unwrap(), vec5(&[2, 1, 4]));
        assert_eq!(t.invert(&vec5(&[2, 1, 4])).unwrap(), vec5(&[4, 1, 2]));
        assert!(t.apply(&vec5(&[0, 0, 0])).unwrap().is_zero());
    }

    #[test]
    fn identity_transform() {
        let f = f5();
        let t = Transform::identity(&f, 4);
        let v = vec5(&[1, 0, 3, 4]);
        assert_eq!(t.apply(&v).unwrap(), v);
        assert_eq!(t.invert(&v).unwrap(), v);
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        assert!(Transform::new(vec![0, 0, 1], vec5(&[1, 1, 1])).is_err());
        assert!(Transform::new(vec![0, 1, 3], vec5(&[1, 1, 1])).is_err());
        assert!(Transform::new(vec![0, 1, 2], vec5(&[1, 0, 1])).is_err());
        assert!(hand_transform().apply(&vec5(&[1, 2])).is_err());
    }

    #[test]
    fn derivation_is_deterministic_and_gamma_nonzero() {
        let f = Field::gf256();
        let a = Transform::derive(b"sigma", b"gamma", 128, &f);
        assert_eq!(a, Transform::derive(b"sigma", b"gamma", 128, &f));
        assert_ne!(a, Transform::derive(b"sigma2", b"gamma", 128, &f));
        let f13 = Field::with_order(13).unwrap();
        for i in 0..10_000u32 {
            let t = Transform::derive(&i.to_be_bytes(), &(i ^ 0xdead).to_be_bytes(), 8, &f13);
            assert_eq!(t.gamma().weight(), 8);
        }
    }

    #[test]
    fn derived_permutations_are_uniform() {
        // Monte-Carlo: each of the 24 permutations of 4 points with frequency 1/24
        let f = f5();
        let trials = 100_000u32;
        let mut counts = std::collections::HashMap::new();
        for i in 0..trials {
            let seed = i.to_be_bytes();
            let t = Transform::derive(&seed, b"g", 4, &f);
            *counts.entry(t.permutation().to_vec()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 24);
        for (perm, c) in counts {
            let freq = c as f64 / trials as f64;
            assert!((freq - 1.0 / 24.0).abs() < 0.005, "{perm:?}: {freq}");
        }
    }

    #[test]
    fn commitments() {
        let f = f5();
        let t = hand_transform();
        let syn = vec5(&[1, 2]);
        let c1 = commit_c1(&t, &syn, 128);
        assert_eq!(c1, commit_c1(&t, &syn, 128));
        assert_eq!(c1.as_bytes().len(), 16);
        assert_eq!(commit_c1(&t, &syn, 256).as_bytes().len(), 32);
        assert_ne!(c1, commit_c1(&t, &vec5(&[1, 3]), 128));
        let other = Transform::new(vec![1, 2, 0], vec5(&[1, 2, 4])).unwrap();
        assert_ne!(c1, commit_c1(&other, &syn, 128));

        let a = vec5(&[1, 2, 3]);
        let b = vec5(&[0, 2, 0]);
        let c2 = commit_c2(&a, &b, 128).unwrap();
        assert_eq!(c2, commit_c2(&a, &b, 128).unwrap());
        assert_eq!(c2.as_bytes().len(), 16);
        assert_ne!(c2, commit_c2(&b, &a, 128).unwrap());
        assert!(commit_c2(&a, &FqVector::zeros(&f, 2), 128).is_err());
    }

    #[test]
    fn commitments_are_domain_separated() {
        // identical byte payloads under both tags
        let f = f5();
        let t = Transform::new(vec![0, 1], FqVector::new(&f, vec![1, 2]).unwrap()).unwrap();
        let c1 = commit_c1(&t, &FqVector::zeros(&f, 0), 128);
        let c2 = commit_c2(&FqVector::new(&f, vec![0, 1]).unwrap(), &FqVector::new(&f, vec![1, 2]).unwrap(), 128).unwrap();
        assert_ne!(c1, c2);
    }
}
