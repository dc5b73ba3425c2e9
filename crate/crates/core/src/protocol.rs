//! The five-pass identification protocol.
//!
//! One round exchanges: commitments (c1, c2) → α ∈ F_q → β = Π(u + αs) →
//! b ∈ {0, 1} → disclosure. On b = 0 the prover opens the transform by
//! sending the two seeds it was derived from; on b = 1 it sends Π(s).

use std::fmt;

use crate::error::{Error, Result};
use crate::keys::{PrivateKey, PublicKey};
use crate::linalg::FqVector;
use crate::stream::SeededStream;
use crate::transform::{commit_c1, commit_c2, Commitment, Transform};

/// The prover's answer to the bit challenge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Disclosure {
    /// b = 0: the seeds of Σ and γ.
    Seeds { perm_seed: Vec<u8>, scale_seed: Vec<u8> },
    /// b = 1: Π(s).
    ImageOfSecret(FqVector),
}

impl Disclosure {
    pub fn challenge_bit(&self) -> u8 {
        match self {
            Disclosure::Seeds { .. } => 0,
            Disclosure::ImageOfSecret(_) => 1,
        }
    }
}

/// The five messages of one round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundTranscript {
    pub c1: Commitment,
    pub c2: Commitment,
    pub alpha: u8,
    pub beta: FqVector,
    pub b: u8,
    pub disclosure: Disclosure,
}

/// Why the verifier refused a round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reject {
    /// Line 7 recomputation of c1 failed.
    C1Mismatch,
    /// Line 8 recomputation of c2 failed.
    C2Mismatch,
    /// The disclosed Π(s) does not have weight ω.
    Weight { expected: usize, got: usize },
    /// The disclosure does not answer the issued bit.
    DisclosureMismatch,
    Malformed(&'static str),
}

impl fmt::Display for Reject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reject::C1Mismatch => write!(f, "c1 does not open"),
            Reject::C2Mismatch => write!(f, "c2 does not open"),
            Reject::Weight { expected, got } => write!(f, "disclosed weight {got}, expected {expected}"),
            Reject::DisclosureMismatch => write!(f, "disclosure does not match the challenge bit"),
            Reject::Malformed(what) => write!(f, "malformed transcript: {what}"),
        }
    }
}

pub type Verdict = std::result::Result<(), Reject>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ProverPhase {
    Fresh,
    Committed,
    AlphaReceived,
    Done,
}

impl ProverPhase {
    fn name(self) -> &'static str {
        match self {
            ProverPhase::Fresh => "fresh",
            ProverPhase::Committed => "committed",
            ProverPhase::AlphaReceived => "alpha-received",
            ProverPhase::Done => "done",
        }
    }
}

struct RoundState {
    perm_seed: Vec<u8>,
    scale_seed: Vec<u8>,
    image_u: FqVector,
    image_s: FqVector,
}

/// Prover side of one round at a time. Calling [`ProverSession::commit`]
/// after a finished round starts a new one with fresh ephemeral values.
pub struct ProverSession<'a> {
    pk: &'a PublicKey,
    secret: &'a FqVector,
    phase: ProverPhase,
    state: Option<RoundState>,
}

impl<'a> ProverSession<'a> {
    pub fn new(pk: &'a PublicKey, sk: &'a PrivateKey) -> Self {
        Self::with_secret(pk, &sk.s)
    }

    /// A session proving with an arbitrary vector in place of the secret,
    /// as used by the cheater and the simulator.
    pub fn with_secret(pk: &'a PublicKey, secret: &'a FqVector) -> Self {
        Self { pk, secret, phase: ProverPhase::Fresh, state: None }
    }

    fn expect(&self, op: &'static str, allowed: &[ProverPhase]) -> Result<()> {
        if allowed.contains(&self.phase) {
            Ok(())
        } else {
            Err(Error::OutOfPhase { op, phase: self.phase.name() })
        }
    }

    /// Draws u and the two transform seeds from `rng_seed` and returns
    /// (c1, c2).
    pub fn commit(&mut self, rng_seed: &[u8]) -> Result<(Commitment, Commitment)> {
        self.expect("commit", &[ProverPhase::Fresh, ProverPhase::Done])?;
        let p = &self.pk.params;
        if self.secret.len() != p.n || self.secret.field() != &p.field {
            return Err(Error::KeyMismatch("secret does not fit the public parameters".into()));
        }
        let f = &p.field;
        let mut stream = SeededStream::new(rng_seed);
        let u = FqVector::new(f, (0..p.n).map(|_| stream.element(f)).collect())?;
        let perm_seed = stream.bytes(p.perm_seed_bytes());
        let scale_seed = stream.bytes(p.scale_seed_bytes());
        let transform = Transform::derive(&perm_seed, &scale_seed, p.n, f);

        let c1 = commit_c1(&transform, &self.pk.h.syndrome(&u)?, p.hash_bits);
        let image_u = transform.apply(&u)?;
        let image_s = transform.apply(self.secret)?;
        let c2 = commit_c2(&image_u, &image_s, p.hash_bits)?;

        self.state = Some(RoundState { perm_seed, scale_seed, image_u, image_s });
        self.phase = ProverPhase::Committed;
        Ok((c1, c2))
    }

    /// β = Π(u) + α Π(s).
    pub fn beta(&mut self, alpha: u8) -> Result<FqVector> {
        self.expect("beta", &[ProverPhase::Committed])?;
        self.pk.field().element(alpha as u16)?;
        let st = self.state.as_ref().expect("committed round has state");
        let beta = st.image_u.add_scaled(alpha, &st.image_s)?;
        self.phase = ProverPhase::AlphaReceived;
        Ok(beta)
    }

    pub fn respond(&mut self, b: u8) -> Result<Disclosure> {
        self.expect("respond", &[ProverPhase::AlphaReceived])?;
        let st = self.state.take().expect("round has state");
        let d = match b {
            0 => Disclosure::Seeds { perm_seed: st.perm_seed, scale_seed: st.scale_seed },
            1 => Disclosure::ImageOfSecret(st.image_s),
            other => {
                self.state = Some(st);
                return Err(Error::OutOfRange(format!("challenge bit {other}")));
            }
        };
        self.phase = ProverPhase::Done;
        Ok(d)
    }

    /// Runs commit, beta and respond against a fixed challenge pair.
    pub fn answer(&mut self, rng_seed: &[u8], alpha: u8, b: u8) -> Result<RoundTranscript> {
        let (c1, c2) = self.commit(rng_seed)?;
        let beta = self.beta(alpha)?;
        let disclosure = self.respond(b)?;
        Ok(RoundTranscript { c1, c2, alpha, beta, b, disclosure })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VerifierPhase {
    AwaitCommitments,
    AwaitBeta,
    AwaitDisclosure,
    Done,
}

impl VerifierPhase {
    fn name(self) -> &'static str {
        match self {
            VerifierPhase::AwaitCommitments => "await-commitments",
            VerifierPhase::AwaitBeta => "await-beta",
            VerifierPhase::AwaitDisclosure => "await-disclosure",
            VerifierPhase::Done => "done",
        }
    }
}

/// Verifier side of one round; α is uniform over all of F_q, zero included.
pub struct VerifierSession<'a> {
    pk: &'a PublicKey,
    coins: SeededStream,
    phase: VerifierPhase,
    commitments: Option<(Commitment, Commitment)>,
    alpha: u8,
    beta: Option<FqVector>,
    b: u8,
    transcript: Option<RoundTranscript>,
}

impl<'a> VerifierSession<'a> {
    pub fn new(pk: &'a PublicKey, rng_seed: &[u8]) -> Self {
        Self {
            pk,
            coins: SeededStream::new(rng_seed),
            phase: VerifierPhase::AwaitCommitments,
            commitments: None,
            alpha: 0,
            beta: None,
            b: 0,
            transcript: None,
        }
    }

    fn expect(&self, op: &'static str, phase: VerifierPhase) -> Result<()> {
        if self.phase == phase {
            Ok(())
        } else {
            Err(Error::OutOfPhase { op, phase: self.phase.name() })
        }
    }

    pub fn receive_commitments(&mut self, c1: Commitment, c2: Commitment) -> Result<u8> {
        self.expect("receive_commitments", VerifierPhase::AwaitCommitments)?;
        self.commitments = Some((c1, c2));
        self.alpha = self.coins.element(self.pk.field());
        self.phase = VerifierPhase::AwaitBeta;
        Ok(self.alpha)
    }

    pub fn receive_beta(&mut self, beta: FqVector) -> Result<u8> {
        self.expect("receive_beta", VerifierPhase::AwaitBeta)?;
        self.beta = Some(beta);
        self.b = self.coins.below(2) as u8;
        self.phase = VerifierPhase::AwaitDisclosure;
        Ok(self.b)
    }

    pub fn receive_disclosure(&mut self, disclosure: Disclosure) -> Result<Verdict> {
        self.expect("receive_disclosure", VerifierPhase::AwaitDisclosure)?;
        let (c1, c2) = self.commitments.take().expect("commitments were received");
        let t = RoundTranscript {
            c1,
            c2,
            alpha: self.alpha,
            beta: self.beta.take().expect("beta was received"),
            b: self.b,
            disclosure,
        };
        let verdict = verifier_check(self.pk, &t);
        self.transcript = Some(t);
        self.phase = VerifierPhase::Done;
        Ok(verdict)
    }

    /// The completed round, once the disclosure was processed.
    pub fn transcript(&self) -> Option<&RoundTranscript> {
        self.transcript.as_ref()
    }
}

/// Checks one round transcript against the public key.
///
/// b = 0: c1 = h(Σ, γ, H Π^{-1}(β)^T - α y) with Σ, γ rebuilt from the
/// disclosed seeds. b = 1: wt(Π(s)) = ω and c2 = h(β - α Π(s), Π(s)).
pub fn verifier_check(pk: &PublicKey, t: &RoundTranscript) -> Verdict {
    let p = &pk.params;
    let f = &p.field;
    if t.c1.as_bytes().len() != p.hash_bytes() || t.c2.as_bytes().len() != p.hash_bytes() {
        return Err(Reject::Malformed("commitment length"));
    }
    if !f.contains(t.alpha) {
        return Err(Reject::Malformed("α outside F_q"));
    }
    if t.beta.len() != p.n || t.beta.field() != f {
        return Err(Reject::Malformed("β shape"));
    }
    if t.b > 1 {
        return Err(Reject::Malformed("challenge bit"));
    }
    if t.disclosure.challenge_bit() != t.b {
        return Err(Reject::DisclosureMismatch);
    }
    match &t.disclosure {
        Disclosure::Seeds { perm_seed, scale_seed } => {
            if perm_seed.len() != p.perm_seed_bytes() || scale_seed.len() != p.scale_seed_bytes() {
                return Err(Reject::Malformed("seed length"));
            }
            let transform = Transform::derive(perm_seed, scale_seed, p.n, f);
            let preimage = transform.invert(&t.beta).map_err(|_| Reject::Malformed("β shape"))?;
            let shifted = pk
                .h
                .syndrome(&preimage)
                .and_then(|hv| hv.add_scaled(f.neg(t.alpha), &pk.y))
                .map_err(|_| Reject::Malformed("public key shape"))?;
            if commit_c1(&transform, &shifted, p.hash_bits) != t.c1 {
                return Err(Reject::C1Mismatch);
            }
        }
        Disclosure::ImageOfSecret(image_s) => {
            if image_s.len() != p.n || image_s.field() != f {
                return Err(Reject::Malformed("Π(s) shape"));
            }
            if image_s.weight() != p.weight {
                return Err(Reject::Weight { expected: p.weight, got: image_s.weight() });
            }
            let image_u = t.beta.add_scaled(f.neg(t.alpha), image_s).expect("shapes checked");
            if commit_c2(&image_u, image_s, p.hash_bits).expect("shapes checked") != t.c2 {
                return Err(Reject::C2Mismatch);
            }
        }
    }
    Ok(())
}

/// Result of a multi-round identification.
#[derive(Debug, Clone)]
pub struct Identification {
    pub transcripts: Vec<RoundTranscript>,
    /// Index and reason of the first rejected round.
    pub rejected: Option<(usize, Reject)>,
}

impl Identification {
    pub fn accepted(&self) -> bool {
        self.rejected.is_none()
    }
}

/// δ sequential rounds between an honest verifier and a prover holding
/// `secret`; stops at the first rejection.
pub fn run_with_secret(pk: &PublicKey, secret: &FqVector, rounds: usize, rng_seed: &[u8]) -> Result<Identification> {
    if rounds == 0 {
        return Err(Error::InvalidParams("need at least one round".into()));
    }
    let mut master = SeededStream::new(rng_seed);
    let mut prover = ProverSession::with_secret(pk, secret);
    let mut transcripts = Vec::with_capacity(rounds);
    for round in 0..rounds {
        let prover_seed = master.bytes(32);
        let verifier_seed = master.bytes(32);
        let mut verifier = VerifierSession::new(pk, &verifier_seed);
        let (c1, c2) = prover.commit(&prover_seed)?;
        let alpha = verifier.receive_commitments(c1, c2)?;
        let beta = prover.beta(alpha)?;
        let b = verifier.receive_beta(beta)?;
        let disclosure = prover.respond(b)?;
        let verdict = verifier.receive_disclosure(disclosure)?;
        transcripts.push(verifier.transcript.take().expect("round completed"));
        if let Err(reason) = verdict {
            return Ok(Identification { transcripts, rejected: Some((round, reason)) });
        }
    }
    Ok(Identification { transcripts, rejected: None })
}

pub fn run_identification(pk: &PublicKey, sk: &PrivateKey, rounds: usize, rng_seed: &[u8]) -> Result<Identification> {
    run_with_secret(pk, &sk.s, rounds, rng_seed)
}
