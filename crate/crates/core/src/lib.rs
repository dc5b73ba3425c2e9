//! A five-pass zero-knowledge identification scheme built on the q-ary
//! syndrome decoding problem.
//!
//! A prover holding a weight-ω vector `s` with `H s^T = y` convinces a
//! verifier of that knowledge. Each round lets a prover without `s` succeed
//! with probability at most (q + 1) / 2q. The crate also provides a
//! Fiat-Shamir signature built on the same rounds, a double-circulant
//! variant with compact public keys, bit-exact file formats and analytic
//! cost accounting.
//!
//! ```
//! use qsdi::{keygen, run_identification, SchemeParams};
//!
//! let params = SchemeParams::param80();
//! let (pk, sk) = keygen(&params, b"key seed").unwrap();
//! let outcome = run_identification(&pk, &sk, params.rounds, b"session").unwrap();
//! assert!(outcome.accepted());
//! ```

pub mod adversary;
pub mod cli;
pub mod cost;
pub mod error;
pub mod field;
pub mod keys;
pub mod linalg;
pub mod params;
pub mod protocol;
pub mod signature;
pub mod stream;
pub mod transform;
pub mod wire;

pub use error::{Error, Result};
pub use field::Field;
pub use keys::{keygen, PrivateKey, PublicKey};
pub use linalg::{FqMatrix, FqVector};
pub use params::{MatrixKind, SchemeParams};
pub use protocol::{run_identification, verifier_check, RoundTranscript};
pub use signature::{sign, verify_sig, Signature};
