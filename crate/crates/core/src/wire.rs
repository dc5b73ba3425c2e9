//! Canonical byte encodings of keys, transforms, transcripts and signatures.
//!
//! Every file starts with a fixed 27-byte header:
//!
//! ```text
//! "QSDI" | version 0x01 | object type | q n k ω δ ℓ_h ℓ_Σ ℓ_γ (u16 BE each)
//!        | matrix kind | field modulus (u16 BE) | κ (u16 BE)
//! ```
//!
//! Field elements take one byte each. A permutation is n bytes of 0-based
//! images; γ follows as n bytes.
//!
//! | object       | payload after the header                                   |
//! |--------------|------------------------------------------------------------|
//! | public key   | matrix block (r·k bytes, or r bytes of circulant row), y   |
//! | private key  | s (n bytes)                                                |
//! | transcript   | δ × (c1, c2, α, β, b, disclosure)                          |
//! | signature    | δ × (c1, c2), δ × β, δ × (tag, disclosure)                 |
//!
//! A b = 0 disclosure is the Σ seed then the γ seed; b = 1 is Π(s).

use thiserror::Error;

use crate::field::Field;
use crate::keys::{ParityCheck, PrivateKey, PublicKey};
use crate::linalg::{FqMatrix, FqVector};
use crate::params::{MatrixKind, SchemeParams};
use crate::protocol::{Disclosure, RoundTranscript};
use crate::signature::{Signature, SignatureRound};
use crate::transform::{Commitment, Transform};

pub const MAGIC: &[u8; 4] = b"QSDI";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 27;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectType {
    PublicKey = 1,
    PrivateKey = 2,
    Transcript = 3,
    Signature = 4,
}

impl ObjectType {
    fn from_byte(b: u8) -> Option<Self> {
        match b {
            1 => Some(ObjectType::PublicKey),
            2 => Some(ObjectType::PrivateKey),
            3 => Some(ObjectType::Transcript),
            4 => Some(ObjectType::Signature),
            _ => None,
        }
    }
}

/// Decoding failures. Each variant has a stable numeric [`WireError::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WireError {
    #[error("bad magic")]
    BadMagic,
    #[error("unsupported version {0}")]
    BadVersion(u8),
    #[error("unexpected object type {got}, expected {expected}")]
    WrongObjectType { expected: u8, got: u8 },
    #[error("unexpected end")]
    UnexpectedEnd,
    #[error("element out of range: {value} >= q = {q}")]
    ElementOutOfRange { value: u8, q: u16 },
    #[error("permutation is not a bijection")]
    NonBijectivePermutation,
    #[error("γ has a zero entry")]
    ZeroGammaEntry,
    #[error("invalid parameter block: {0}")]
    InvalidParams(String),
    #[error("challenge bit {0} is not 0 or 1")]
    BadChallengeBit(u8),
    #[error("unknown matrix kind {0}")]
    BadMatrixKind(u8),
    #[error("{0} trailing bytes")]
    TrailingBytes(usize),
    #[error("malformed cost report: {0}")]
    BadReport(String),
}

impl WireError {
    pub fn code(&self) -> u8 {
        match self {
            WireError::BadMagic => 1,
            WireError::BadVersion(_) => 2,
            WireError::WrongObjectType { .. } => 3,
            WireError::UnexpectedEnd => 4,
            WireError::ElementOutOfRange { .. } => 5,
            WireError::NonBijectivePermutation => 6,
            WireError::ZeroGammaEntry => 7,
            WireError::InvalidParams(_) => 8,
            WireError::BadChallengeBit(_) => 9,
            WireError::BadMatrixKind(_) => 10,
            WireError::TrailingBytes(_) => 11,
            WireError::BadReport(_) => 12,
        }
    }
}

type WireResult<T> = std::result::Result<T, WireError>;

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> WireResult<&'a [u8]> {
        if self.buf.len() < n {
            return Err(WireError::UnexpectedEnd);
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Ok(head)
    }

    fn u8(&mut self) -> WireResult<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> WireResult<u16> {
        let b = self.take(2)?;
        Ok(u16::from_be_bytes([b[0], b[1]]))
    }

    fn elements(&mut self, field: &Field, n: usize) -> WireResult<FqVector> {
        let raw = self.take(n)?;
        if let Some(&value) = raw.iter().find(|&&e| !field.contains(e)) {
            return Err(WireError::ElementOutOfRange { value, q: field.q() });
        }
        Ok(FqVector::new(field, raw.to_vec()).expect("range checked"))
    }

    fn commitment(&mut self, p: &SchemeParams) -> WireResult<Commitment> {
        Ok(Commitment(self.take(p.hash_bytes())?.to_vec()))
    }

    fn finish(self) -> WireResult<()> {
        match self.buf.len() {
            0 => Ok(()),
            extra => Err(WireError::TrailingBytes(extra)),
        }
    }
}

fn header(kind: ObjectType, p: &SchemeParams) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN);
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(kind as u8);
    for v in [p.field.q() as usize, p.n, p.k, p.weight, p.rounds, p.hash_bits, p.perm_seed_bits, p.scale_seed_bits] {
        out.extend_from_slice(&(v as u16).to_be_bytes());
    }
    out.push(p.kind.tag());
    out.extend_from_slice(&p.field.modulus().to_be_bytes());
    out.extend_from_slice(&(p.security_bits as u16).to_be_bytes());
    debug_assert_eq!(out.len(), HEADER_LEN);
    out
}

fn read_header<'a>(bytes: &'a [u8], expected: ObjectType) -> WireResult<(SchemeParams, Reader<'a>)> {
    let mut r = Reader { buf: bytes };
    if r.take(4)? != MAGIC {
        return Err(WireError::BadMagic);
    }
    let version = r.u8()?;
    if version != VERSION {
        return Err(WireError::BadVersion(version));
    }
    let object = r.u8()?;
    if ObjectType::from_byte(object) != Some(expected) {
        return Err(WireError::WrongObjectType { expected: expected as u8, got: object });
    }
    let mut fields = [0usize; 8];
    for f in fields.iter_mut() {
        *f = r.u16()? as usize;
    }
    let [q, n, k, weight, rounds, hash_bits, perm_seed_bits, scale_seed_bits] = fields;
    let kind_tag = r.u8()?;
    let kind = MatrixKind::from_tag(kind_tag).ok_or(WireError::BadMatrixKind(kind_tag))?;
    let modulus = r.u16()?;
    let security_bits = r.u16()? as u32;
    let field = Field::from_parts(q as u16, modulus).map_err(|e| WireError::InvalidParams(e.to_string()))?;
    let p = SchemeParams {
        field,
        n,
        k,
        weight,
        rounds,
        security_bits,
        hash_bits,
        perm_seed_bits,
        scale_seed_bits,
        kind,
    };
    p.check_structure().map_err(|e| WireError::InvalidParams(e.to_string()))?;
    Ok((p, r))
}

/// The parameter block of any encoded object.
pub fn decode_params(bytes: &[u8]) -> WireResult<SchemeParams> {
    let object = *bytes.get(5).ok_or(WireError::UnexpectedEnd)?;
    let kind = ObjectType::from_byte(object).ok_or(WireError::WrongObjectType { expected: 0, got: object })?;
    read_header(bytes, kind).map(|(p, _)| p)
}

pub fn encode_public_key(pk: &PublicKey) -> Vec<u8> {
    let mut out = header(ObjectType::PublicKey, &pk.params);
    match &pk.h {
        ParityCheck::Systematic(m) => out.extend_from_slice(m.as_slice()),
        ParityCheck::DoubleCirculant(row) => out.extend_from_slice(row.as_slice()),
    }
    out.extend_from_slice(pk.y.as_slice());
    out
}

/// Byte length of the matrix section of an encoded public key.
pub fn matrix_section_len(p: &SchemeParams) -> usize {
    match p.kind {
        MatrixKind::RandomSystematic => p.r() * p.k,
        MatrixKind::DoubleCirculant => p.r(),
    }
}

pub fn decode_public_key(bytes: &[u8]) -> WireResult<PublicKey> {
    let (params, mut r) = read_header(bytes, ObjectType::PublicKey)?;
    let f = params.field.clone();
    let h = match params.kind {
        MatrixKind::RandomSystematic => {
            let m = r.elements(&f, params.r() * params.k)?;
            ParityCheck::Systematic(FqMatrix::new(&f, params.r(), params.k, m.into_inner()).expect("sized"))
        }
        MatrixKind::DoubleCirculant => ParityCheck::DoubleCirculant(r.elements(&f, params.r())?),
    };
    let y = r.elements(&f, params.r())?;
    r.finish()?;
    Ok(PublicKey { params, h, y })
}

/// Private keys carry the parameter header so they can be checked against
/// the public key before use.
pub fn encode_private_key(params: &SchemeParams, sk: &PrivateKey) -> Vec<u8> {
    let mut out = header(ObjectType::PrivateKey, params);
    out.extend_from_slice(sk.s.as_slice());
    out
}

pub fn decode_private_key(bytes: &[u8]) -> WireResult<(SchemeParams, PrivateKey)> {
    let (params, mut r) = read_header(bytes, ObjectType::PrivateKey)?;
    let s = r.elements(&params.field, params.n)?;
    r.finish()?;
    Ok((params, PrivateKey { s }))
}

pub fn encode_transform(t: &Transform) -> Vec<u8> {
    t.to_bytes()
}

pub fn decode_transform(bytes: &[u8], field: &Field, n: usize) -> WireResult<Transform> {
    let mut r = Reader { buf: bytes };
    let perm = r.take(n)?.to_vec();
    let mut seen = vec![false; n];
    for &p in &perm {
        if p as usize >= n || std::mem::replace(&mut seen[p as usize], true) {
            return Err(WireError::NonBijectivePermutation);
        }
    }
    let gamma = r.elements(field, n)?;
    if gamma.weight() != n {
        return Err(WireError::ZeroGammaEntry);
    }
    r.finish()?;
    Ok(Transform::new(perm, gamma).expect("validated"))
}

/// (c1, c2) as sent in the first pass.
pub fn encode_commitments(c1: &Commitment, c2: &Commitment) -> Vec<u8> {
    [c1.as_bytes(), c2.as_bytes()].concat()
}

pub fn encode_alpha(alpha: u8) -> Vec<u8> {
    vec![alpha]
}

pub fn encode_beta(beta: &FqVector) -> Vec<u8> {
    beta.as_slice().to_vec()
}

pub fn encode_bit(b: u8) -> Vec<u8> {
    vec![b]
}

pub fn encode_disclosure(d: &Disclosure) -> Vec<u8> {
    match d {
        Disclosure::Seeds { perm_seed, scale_seed } => [perm_seed.as_slice(), scale_seed.as_slice()].concat(),
        Disclosure::ImageOfSecret(image) => image.as_slice().to_vec(),
    }
}

fn read_disclosure(r: &mut Reader<'_>, p: &SchemeParams, b: u8) -> WireResult<Disclosure> {
    match b {
        0 => Ok(Disclosure::Seeds {
            perm_seed: r.take(p.perm_seed_bytes())?.to_vec(),
            scale_seed: r.take(p.scale_seed_bytes())?.to_vec(),
        }),
        1 => Ok(Disclosure::ImageOfSecret(r.elements(&p.field, p.n)?)),
        other => Err(WireError::BadChallengeBit(other)),
    }
}

/// The five messages of a round, in protocol order.
pub fn encode_round(t: &RoundTranscript) -> Vec<u8> {
    let mut out = encode_commitments(&t.c1, &t.c2);
    out.extend(encode_alpha(t.alpha));
    out.extend(encode_beta(&t.beta));
    out.extend(encode_bit(t.b));
    out.extend(encode_disclosure(&t.disclosure));
    out
}

fn read_round(r: &mut Reader<'_>, p: &SchemeParams) -> WireResult<RoundTranscript> {
    let c1 = r.commitment(p)?;
    let c2 = r.commitment(p)?;
    let alpha = r.u8()?;
    if !p.field.contains(alpha) {
        return Err(WireError::ElementOutOfRange { value: alpha, q: p.field.q() });
    }
    let beta = r.elements(&p.field, p.n)?;
    let b = r.u8()?;
    let disclosure = read_disclosure(r, p, b)?;
    Ok(RoundTranscript { c1, c2, alpha, beta, b, disclosure })
}

/// A transcript file; the header's δ is the number of recorded rounds.
pub fn encode_transcript(params: &SchemeParams, rounds: &[RoundTranscript]) -> Vec<u8> {
    let p = params.clone().with_rounds(rounds.len());
    let mut out = header(ObjectType::Transcript, &p);
    for t in rounds {
        out.extend(encode_round(t));
    }
    out
}

pub fn decode_transcript(bytes: &[u8]) -> WireResult<(SchemeParams, Vec<RoundTranscript>)> {
    let (params, mut r) = read_header(bytes, ObjectType::Transcript)?;
    let rounds = (0..params.rounds).map(|_| read_round(&mut r, &params)).collect::<WireResult<Vec<_>>>()?;
    r.finish()?;
    Ok((params, rounds))
}

pub fn encode_signature(sig: &Signature) -> Vec<u8> {
    let mut out = header(ObjectType::Signature, &sig.params);
    for round in &sig.rounds {
        out.extend(encode_commitments(&round.c1, &round.c2));
    }
    for round in &sig.rounds {
        out.extend(encode_beta(&round.beta));
    }
    for round in &sig.rounds {
        out.push(round.disclosure.challenge_bit());
        out.extend(encode_disclosure(&round.disclosure));
    }
    out
}

pub fn decode_signature(bytes: &[u8]) -> WireResult<Signature> {
    let (params, mut r) = read_header(bytes, ObjectType::Signature)?;
    let delta = params.rounds;
    let mut commitments = Vec::with_capacity(delta);
    for _ in 0..delta {
        commitments.push((r.commitment(&params)?, r.commitment(&params)?));
    }
    let betas = (0..delta).map(|_| r.elements(&params.field, params.n)).collect::<WireResult<Vec<_>>>()?;
    let mut rounds = Vec::with_capacity(delta);
    for ((c1, c2), beta) in commitments.into_iter().zip(betas) {
        let tag = r.u8()?;
        let disclosure = read_disclosure(&mut r, &params, tag)?;
        rounds.push(SignatureRound { c1, c2, beta, disclosure });
    }
    r.finish()?;
    Ok(Signature { params, rounds })
}
