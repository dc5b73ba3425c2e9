//! Soundness and zero-knowledge harnesses: the optimal cheating prover, the
//! transcript simulator, witness extraction from rewound transcripts, and
//! round-count arithmetic.

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::keys::{keygen, sample_weight_omega, PublicKey};
use crate::linalg::FqVector;
use crate::params::SchemeParams;
use crate::protocol::{verifier_check, Disclosure, ProverSession, RoundTranscript};
use crate::stream::SeededStream;
use crate::transform::Transform;

/// Per-round success probability (q + 1) / 2q of the best cheater.
pub fn cheating_bound(q: u16) -> f64 {
    (q as f64 + 1.0) / (2.0 * q as f64)
}

/// -log2 of [`cheating_bound`]: security bits gained per round.
pub fn per_round_exponent(q: u16) -> f64 {
    -cheating_bound(q).log2()
}

/// Smallest δ with ((q + 1) / 2q)^δ <= 2^-target_bits.
pub fn min_rounds(q: u16, target_bits: u32) -> usize {
    assert!(q >= 2 && target_bits >= 1);
    let per_round = per_round_exponent(q);
    let mut rounds = (target_bits as f64 / per_round).ceil() as usize;
    // guard the float division at exact boundaries
    while rounds > 1 && (rounds - 1) as f64 * per_round >= target_bits as f64 {
        rounds -= 1;
    }
    while (rounds as f64) * per_round < target_bits as f64 {
        rounds += 1;
    }
    rounds
}

/// A prover that does not know s. It commits honestly to a random
/// weight-ω vector s̃, which answers every (α, b = 1) challenge and, since
/// α = 0 drops y from the b = 0 check, also (0, 0): q + 1 of the 2q pairs.
pub struct CheatingProver<'a> {
    pk: &'a PublicKey,
    fake: FqVector,
    commit_seed: Vec<u8>,
}

pub fn cheat_round<'a>(pk: &'a PublicKey, rng_seed: &[u8]) -> CheatingProver<'a> {
    let p = &pk.params;
    let mut stream = SeededStream::new(rng_seed);
    let fake = sample_weight_omega(&p.field, p.n, p.weight, &mut stream);
    let commit_seed = stream.bytes(32);
    CheatingProver { pk, fake, commit_seed }
}

impl CheatingProver<'_> {
    pub fn fake_secret(&self) -> &FqVector {
        &self.fake
    }

    /// Plays the round against the challenge (α, b). The commitments do not
    /// depend on the challenge, so repeated calls model a rewound prover.
    pub fn play(&self, alpha: u8, b: u8) -> Result<RoundTranscript> {
        ProverSession::with_secret(self.pk, &self.fake).answer(&self.commit_seed, alpha, b)
    }

    /// All challenge pairs the cheater gets accepted on.
    pub fn success_set(&self) -> Result<Vec<(u8, u8)>> {
        let mut wins = Vec::new();
        for b in 0..2u8 {
            for alpha in self.pk.field().elements() {
                if verifier_check(self.pk, &self.play(alpha, b)?).is_ok() {
                    wins.push((alpha, b));
                }
            }
        }
        Ok(wins)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoundnessReport {
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    pub bound: f64,
}

fn trial_seed(seed: &[u8], index: u64) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(b"soundness-trial");
    h.update(seed);
    h.update(index.to_be_bytes());
    h.finalize().into()
}

/// Per-round success frequency of [`cheat_round`] against an honest
/// verifier drawing (α, b) uniformly. Each trial uses a fresh key pair.
/// Trials run in parallel; the count does not depend on scheduling.
pub fn soundness_monte_carlo(params: &SchemeParams, trials: u64, seed: &[u8]) -> Result<SoundnessReport> {
    let p = params.clone().with_rounds(1);
    let successes = (0..trials)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let mut stream = SeededStream::new(&trial_seed(seed, i));
            let (pk, _) = keygen(&p, &stream.bytes(32))?;
            let cheater = cheat_round(&pk, &stream.bytes(32));
            let alpha = stream.element(&p.field);
            let b = stream.below(2) as u8;
            Ok(verifier_check(&pk, &cheater.play(alpha, b)?).is_ok() as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(SoundnessReport {
        trials,
        successes,
        rate: successes as f64 / trials as f64,
        bound: cheating_bound(p.field.q()),
    })
}

/// An accepting transcript for challenge bit `target_b` produced without the
/// private key. For b = 1 the prover uses a random weight-ω vector; for
/// b = 0 a random solution of H x^T = y of unconstrained weight.
pub fn simulate_transcript(pk: &PublicKey, target_b: u8, rng_seed: &[u8]) -> Result<RoundTranscript> {
    let p = &pk.params;
    let mut stream = SeededStream::new(rng_seed);
    let fake = match target_b {
        0 => pk.h.random_preimage(&pk.y, &mut stream)?,
        1 => sample_weight_omega(&p.field, p.n, p.weight, &mut stream),
        other => return Err(Error::OutOfRange(format!("challenge bit {other}"))),
    };
    let alpha = stream.element(&p.field);
    let commit_seed = stream.bytes(32);
    ProverSession::with_secret(pk, &fake).answer(&commit_seed, alpha, target_b)
}

/// Recovers a qSD solution from a prover that answers both bits for two
/// distinct α under the same commitments.
///
/// `first` and `second` are the b = 1 answers; `opening` is a b = 0 answer's
/// seeds, valid for both α. Then z = (β - β') / (α - α') is the disclosed
/// Π(s), and Π^{-1}(z) satisfies H x^T = y with weight ω.
pub fn extract_witness(
    pk: &PublicKey,
    opening: &Disclosure,
    first: &RoundTranscript,
    second: &RoundTranscript,
) -> Result<FqVector> {
    let p = &pk.params;
    let f = &p.field;
    let fail = |msg: &str| Err(Error::Extraction(msg.into()));
    if first.c1 != second.c1 || first.c2 != second.c2 {
        return fail("commitments differ");
    }
    if first.alpha == second.alpha {
        return fail("α values coincide");
    }
    if first.b != 1 || second.b != 1 {
        return fail("both transcripts must answer b = 1");
    }
    for t in [first, second] {
        if verifier_check(pk, t).is_err() {
            return fail("transcript does not verify");
        }
        let as_b0 = RoundTranscript { b: 0, disclosure: opening.clone(), ..t.clone() };
        if verifier_check(pk, &as_b0).is_err() {
            return fail("opening does not verify for this α");
        }
    }
    let Disclosure::Seeds { perm_seed, scale_seed } = opening else {
        return fail("opening must disclose seeds");
    };
    let transform = Transform::derive(perm_seed, scale_seed, p.n, f);
    let scale = f.inv(f.sub(first.alpha, second.alpha))?;
    let z = first.beta.sub(&second.beta)?.scale(scale);
    transform.invert(&z)
}
