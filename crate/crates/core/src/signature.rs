//! Fiat-Shamir signatures over the identification protocol.
//!
//! The α challenges are derived from all commitments, the bit challenges
//! additionally from all β values, following the interactive message order:
//!
//! ```text
//! A   = SHA-256(0x10 || SHA-256(pk) || msg || c1_1 || c2_1 || ... || c1_δ || c2_δ)
//! α_i = i-th uniform element of F_q drawn from SeededStream(A)
//! B   = SHA-256(0x11 || A || β_1 || ... || β_δ)
//! b_i = bit i of B, most significant bit of byte 0 first
//! ```

use std::fmt;

use sha2::{Digest, Sha256};

use crate::adversary::min_rounds;
use crate::error::{Error, Result};
use crate::keys::{PrivateKey, PublicKey};
use crate::linalg::FqVector;
use crate::params::SchemeParams;
use crate::protocol::{verifier_check, Disclosure, ProverSession, Reject, RoundTranscript};
use crate::stream::SeededStream;
use crate::transform::Commitment;
use crate::wire::encode_public_key;

pub const ALPHA_TAG: u8 = 0x10;
pub const BIT_TAG: u8 = 0x11;
/// Bits available in B.
pub const MAX_SIGNATURE_ROUNDS: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureRound {
    pub c1: Commitment,
    pub c2: Commitment,
    pub beta: FqVector,
    pub disclosure: Disclosure,
}

/// δ round records; `params.rounds` is δ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub params: SchemeParams,
    pub rounds: Vec<SignatureRound>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureError {
    /// The signature was made under different scheme parameters.
    ParamsMismatch,
    /// Round count is zero, above 256, or disagrees with the header.
    RoundCount(usize),
    /// The disclosure in round `index` answers the wrong bit.
    DisclosureMismatch { index: usize },
    Round { index: usize, reason: Reject },
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::ParamsMismatch => write!(f, "signature parameters do not match the public key"),
            SignatureError::RoundCount(d) => write!(f, "invalid round count {d}"),
            SignatureError::DisclosureMismatch { index } => {
                write!(f, "round {index}: disclosure does not match the derived challenge bit")
            }
            SignatureError::Round { index, reason } => write!(f, "round {index}: {reason}"),
        }
    }
}

impl std::error::Error for SignatureError {}

/// Round count used when the caller gives none: enough rounds for a 2^-κ
/// forgery bound, with κ = 80 for PARAM-80 and 128 for PARAM-128.
pub fn default_signature_rounds(params: &SchemeParams) -> usize {
    let target = match params.named_set() {
        Some(set) if set.name == "param128" => 128,
        _ => 80,
    };
    min_rounds(params.field.q(), target)
}

fn alpha_digest(pk: &PublicKey, message: &[u8], commitments: &[(&Commitment, &Commitment)]) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update([ALPHA_TAG]);
    h.update(Sha256::digest(encode_public_key(pk)));
    h.update(message);
    for (c1, c2) in commitments {
        h.update(c1.as_bytes());
        h.update(c2.as_bytes());
    }
    h.finalize().into()
}

fn alphas(pk: &PublicKey, a: &[u8; 32], count: usize) -> Vec<u8> {
    let mut stream = SeededStream::new(a);
    (0..count).map(|_| stream.element(pk.field())).collect()
}

fn challenge_bits<'b>(a: &[u8; 32], betas: impl Iterator<Item = &'b FqVector>, count: usize) -> Vec<u8> {
    let mut h = Sha256::new();
    h.update([BIT_TAG]);
    h.update(a);
    for beta in betas {
        h.update(beta.as_slice());
    }
    let b = h.finalize();
    (0..count).map(|i| (b[i / 8] >> (7 - i % 8)) & 1).collect()
}

/// Signs `message` with `rounds` protocol rounds. Deterministic in
/// (keys, message, rng_seed).
pub fn sign(pk: &PublicKey, sk: &PrivateKey, message: &[u8], rng_seed: &[u8], rounds: usize) -> Result<Signature> {
    if rounds == 0 || rounds > MAX_SIGNATURE_ROUNDS {
        return Err(Error::TooManyRounds(rounds));
    }
    pk.matches(sk)?;
    let mut master = SeededStream::new(rng_seed);
    let mut sessions: Vec<ProverSession<'_>> = (0..rounds).map(|_| ProverSession::new(pk, sk)).collect();
    let commitments = sessions
        .iter_mut()
        .map(|s| s.commit(&master.bytes(32)))
        .collect::<Result<Vec<_>>>()?;

    let refs: Vec<_> = commitments.iter().map(|(a, b)| (a, b)).collect();
    let a = alpha_digest(pk, message, &refs);
    let betas = sessions
        .iter_mut()
        .zip(alphas(pk, &a, rounds))
        .map(|(s, alpha)| s.beta(alpha))
        .collect::<Result<Vec<_>>>()?;

    let bits = challenge_bits(&a, betas.iter(), rounds);
    let mut out = Vec::with_capacity(rounds);
    for (((session, (c1, c2)), beta), b) in sessions.iter_mut().zip(commitments).zip(betas).zip(bits) {
        let disclosure = session.respond(b)?;
        out.push(SignatureRound { c1, c2, beta, disclosure });
    }
    Ok(Signature { params: pk.params.clone().with_rounds(rounds), rounds: out })
}

pub fn verify_sig(pk: &PublicKey, message: &[u8], sig: &Signature) -> std::result::Result<(), SignatureError> {
    let delta = sig.rounds.len();
    if sig.params.clone().with_rounds(pk.params.rounds) != pk.params {
        return Err(SignatureError::ParamsMismatch);
    }
    if delta == 0 || delta > MAX_SIGNATURE_ROUNDS || delta != sig.params.rounds {
        return Err(SignatureError::RoundCount(delta));
    }
    let refs: Vec<_> = sig.rounds.iter().map(|r| (&r.c1, &r.c2)).collect();
    let a = alpha_digest(pk, message, &refs);
    let alphas = alphas(pk, &a, delta);
    let bits = challenge_bits(&a, sig.rounds.iter().map(|r| &r.beta), delta);
    for (index, ((round, alpha), b)) in sig.rounds.iter().zip(alphas).zip(bits).enumerate() {
        if round.disclosure.challenge_bit() != b {
            return Err(SignatureError::DisclosureMismatch { index });
        }
        let t = RoundTranscript {
            c1: round.c1.clone(),
            c2: round.c2.clone(),
            alpha,
            beta: round.beta.clone(),
            b,
            disclosure: round.disclosure.clone(),
        };
        verifier_check(pk, &t).map_err(|reason| SignatureError::Round { index, reason })?;
    }
    Ok(())
}
