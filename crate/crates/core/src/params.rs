//! Scheme parameters, the q-ary entropy function and the Gilbert-Varshamov
//! weight check.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Shape of the public parity-check matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// `H = (I_r | M)` with M dense r x k.
    RandomSystematic,
    /// `H = (I_r | C)` with C circulant r x r.
    DoubleCirculant,
}

impl MatrixKind {
    pub fn tag(self) -> u8 {
        match self {
            MatrixKind::RandomSystematic => 0,
            MatrixKind::DoubleCirculant => 1,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(MatrixKind::RandomSystematic),
            1 => Some(MatrixKind::DoubleCirculant),
            _ => None,
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::RandomSystematic => "random",
            MatrixKind::DoubleCirculant => "circulant",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeParams {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    /// Secret weight ω.
    pub weight: usize,
    /// Number of protocol rounds δ.
    pub rounds: usize,
    /// Claimed attack cost exponent κ (bits).
    pub security_bits: u32,
    /// Commitment digest length ℓ_h in bits.
    pub hash_bits: usize,
    /// ℓ_Σ in bits.
    pub perm_seed_bits: usize,
    /// ℓ_γ in bits.
    pub scale_seed_bits: usize,
    pub kind: MatrixKind,
}

/// A parameter set whose security figure comes from published ISD estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NamedSet {
    pub name: &'static str,
    pub q: u16,
    pub n: usize,
    pub k: usize,
    pub weight: usize,
    pub security_bits: u32,
}

pub const PARAM_80: NamedSet = NamedSet { name: "param80", q: 256, n: 128, k: 64, weight: 49, security_bits: 87 };
pub const PARAM_128: NamedSet = NamedSet { name: "param128", q: 256, n: 208, k: 104, weight: 78, security_bits: 128 };
pub const NAMED_SETS: [NamedSet; 2] = [PARAM_80, PARAM_128];

pub const DEFAULT_ROUNDS: usize = 16;
pub const DEFAULT_HASH_BITS: usize = 128;
pub const DEFAULT_SEED_BITS: usize = 128;

impl NamedSet {
    pub fn params(&self) -> SchemeParams {
        SchemeParams {
            field: Field::gf256(),
            n: self.n,
            k: self.k,
            weight: self.weight,
            rounds: DEFAULT_ROUNDS,
            security_bits: self.security_bits,
            hash_bits: DEFAULT_HASH_BITS,
            perm_seed_bits: DEFAULT_SEED_BITS,
            scale_seed_bits: DEFAULT_SEED_BITS,
            kind: MatrixKind::RandomSystematic,
        }
    }
}

impl SchemeParams {
    pub fn param80() -> Self {
        PARAM_80.params()
    }

    pub fn param128() -> Self {
        PARAM_128.params()
    }

    pub fn by_name(name: &str) -> Option<Self> {
        NAMED_SETS.iter().find(|s| s.name == name).map(NamedSet::params)
    }

    /// Custom parameters with the default round count, digest and seed sizes.
    /// `security_bits` is left at 0: nothing is claimed.
    pub fn custom(field: Field, n: usize, k: usize, weight: usize) -> Self {
        SchemeParams {
            field,
            n,
            k,
            weight,
            rounds: DEFAULT_ROUNDS,
            security_bits: 0,
            hash_bits: DEFAULT_HASH_BITS,
            perm_seed_bits: DEFAULT_SEED_BITS,
            scale_seed_bits: DEFAULT_SEED_BITS,
            kind: MatrixKind::RandomSystematic,
        }
    }

    pub fn with_kind(mut self, kind: MatrixKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn with_rounds(mut self, rounds: usize) -> Self {
        self.rounds = rounds;
        self
    }

    pub fn with_hash_bits(mut self, bits: usize) -> Self {
        self.hash_bits = bits;
        self
    }

    /// Redundancy r = n - k.
    pub fn r(&self) -> usize {
        self.n - self.k
    }

    /// N = ceil(log2 q).
    pub fn element_bits(&self) -> u32 {
        self.field.bits()
    }

    pub fn hash_bytes(&self) -> usize {
        self.hash_bits / 8
    }

    pub fn perm_seed_bytes(&self) -> usize {
        self.perm_seed_bits / 8
    }

    pub fn scale_seed_bytes(&self) -> usize {
        self.scale_seed_bits / 8
    }

    /// The named set with the same (q, n, k, ω), if any.
    pub fn named_set(&self) -> Option<&'static NamedSet> {
        NAMED_SETS.iter().find(|s| {
            s.q == self.field.q() && s.n == self.n && s.k == self.k && s.weight == self.weight
        })
    }

    /// Structural checks only; see [`validate_params`] for the full report.
    pub fn check_structure(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if !(0 < self.k && self.k < self.n) {
            return fail(format!("need 0 < k < n, got n = {}, k = {}", self.n, self.k));
        }
        if self.n > 256 {
            return fail(format!("n = {} exceeds 256", self.n));
        }
        if self.weight == 0 || self.weight > self.n {
            return fail(format!("need 0 < ω <= n, got ω = {}", self.weight));
        }
        if self.rounds == 0 {
            return fail("need at least one round".into());
        }
        if self.kind == MatrixKind::DoubleCirculant && self.n != 2 * self.k {
            return fail(format!("double-circulant needs n = 2k, got n = {}, k = {}", self.n, self.k));
        }
        if self.hash_bits == 0 || self.hash_bits % 8 != 0 || self.hash_bits > 256 {
            return fail(format!("digest length {} must be a multiple of 8 in 8..=256", self.hash_bits));
        }
        for (name, bits) in [("ℓ_Σ", self.perm_seed_bits), ("ℓ_γ", self.scale_seed_bits)] {
            if bits == 0 || bits % 8 != 0 || bits > 2048 {
                return fail(format!("{name} = {bits} must be a positive multiple of 8"));
            }
        }
        Ok(())
    }
}

/// H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x), with 0 log 0 = 0.
pub fn q_ary_entropy(x: f64, q: u16) -> Result<f64> {
    let q = q as f64;
    let top = (q - 1.0) / q;
    if !(0.0..=top + 1e-12).contains(&x) || q < 2.0 {
        return Err(Error::OutOfRange(format!("H_q argument {x} outside [0, {top}]")));
    }
    let xlogx = |t: f64| if t <= 0.0 { 0.0 } else { t * t.ln() };
    let ln_q = q.ln();
    Ok((x * (q - 1.0).ln() - xlogx(x) - xlogx(1.0 - x)) / ln_q)
}

/// The relative distance δ_GV in (0, (q-1)/q) with H_q(δ_GV) = 1 - R, by
/// bisection to 1e-9. H_q is increasing on that interval.
pub fn gv_relative_distance(rate: f64, q: u16) -> Result<f64> {
    if !(rate > 0.0 && rate < 1.0) {
        return Err(Error::OutOfRange(format!("rate {rate} outside (0, 1)")));
    }
    let target = 1.0 - rate;
    let (mut lo, mut hi) = (0.0f64, (q as f64 - 1.0) / q as f64);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if q_ary_entropy(mid, q)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Where the security exponent κ comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecurityClaim {
    /// Matches a named set; κ is the published ISD estimate.
    Published { set: &'static str, bits: u32 },
    /// κ was supplied by the caller and has not been checked by any estimator.
    Unverified { bits: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    /// n · δ_GV(k/n, q).
    pub gv_weight: f64,
    pub security: SecurityClaim,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn on_gv_bound(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// Allowed |ω - GV weight|.
pub const GV_TOLERANCE: f64 = 2.0;

pub fn validate_params(p: &SchemeParams) -> Result<ValidationReport> {
    p.check_structure()?;
    let gv_weight = p.n as f64 * gv_relative_distance(p.k as f64 / p.n as f64, p.field.q())?;
    let mut warnings = Vec::new();
    if (p.weight as f64 - gv_weight).abs() > GV_TOLERANCE {
        warnings.push(format!(
            "ω = {} is {:.2} away from the Gilbert-Varshamov weight {:.2}",
            p.weight,
            (p.weight as f64 - gv_weight).abs(),
            gv_weight
        ));
    }
    let security = match p.named_set() {
        Some(set) => {
            if p.security_bits != set.security_bits {
                warnings.push(format!(
                    "κ = {} differs from the published {} for {}",
                    p.security_bits, set.security_bits, set.name
                ));
            }
            SecurityClaim::Published { set: set.name, bits: set.security_bits }
        }
        None => SecurityClaim::Unverified { bits: p.security_bits },
    };
    Ok(ValidationReport { gv_weight, security, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_endpoints() {
        for q in [2u16, 3, 5, 256] {
            assert_eq!(q_ary_entropy(0.0, q).unwrap(), 0.0);
            let top = (q as f64 - 1.0) / q as f64;
            assert!((q_ary_entropy(top, q).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!(q_ary_entropy(-0.1, 5).is_err());
        assert!(q_ary_entropy(0.9, 5).is_err());
    }

    #[test]
    fn entropy_at_param80_weight() {
        // direct numeric evaluation: 0.50254
        let h = q_ary_entropy(49.0 / 128.0, 256).unwrap();
        assert!((h - 0.503).abs() <= 0.001, "{h}");
    }

    #[test]
    fn gv_distance_examples() {
        assert!(gv_relative_distance(0.999, 256).unwrap() < 0.01);
        let d2 = gv_relative_distance(0.5, 2).unwrap();
        assert!((d2 - 0.110).abs() < 0.001, "{d2}");
        let w = 128.0 * gv_relative_distance(0.5, 256).unwrap();
        assert!((w - 48.7).abs() < 0.05, "{w}");
        assert_eq!(w.round(), 49.0);
        assert!(gv_relative_distance(1.0, 2).is_err());
    }

    #[test]
    fn gv_inverts_entropy() {
        for q in [2u16, 3, 5, 13, 16, 256] {
            for i in 1..20 {
                let rate = i as f64 / 20.0;
                let d = gv_relative_distance(rate, q).unwrap();
                assert!((q_ary_entropy(d, q).unwrap() - (1.0 - rate)).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn named_sets_validate() {
        let r80 = validate_params(&SchemeParams::param80()).unwrap();
        assert!(r80.on_gv_bound());
        assert_eq!(r80.security, SecurityClaim::Published { set: "param80", bits: 87 });
        let r128 = validate_params(&SchemeParams::param128()).unwrap();
        assert!(r128.on_gv_bound(), "{:?}", r128.warnings);
        assert_eq!(r128.security, SecurityClaim::Published { set: "param128", bits: 128 });
    }

    #[test]
    fn heavy_secret_warns() {
        let p = SchemeParams::custom(Field::gf256(), 128, 64, 120);
        let report = validate_params(&p).unwrap();
        assert_eq!(report.warnings.len(), 1);
        assert_eq!(report.security, SecurityClaim::Unverified { bits: 0 });
    }

    #[test]
    fn structural_errors() {
        let f = Field::with_order(5).unwrap();
        assert!(validate_params(&SchemeParams::custom(f.clone(), 8, 8, 2)).is_err());
        assert!(validate_params(&SchemeParams::custom(f.clone(), 8, 4, 9)).is_err());
        assert!(validate_params(&SchemeParams::custom(f.clone(), 8, 4, 2).with_rounds(0)).is_err());
        assert!(validate_params(&SchemeParams::custom(f.clone(), 9, 4, 2).with_kind(MatrixKind::DoubleCirculant)).is_err());
        assert!(validate_params(&SchemeParams::custom(f.clone(), 8, 4, 2).with_hash_bits(12)).is_err());
        assert!(validate_params(&SchemeParams::custom(f, 8, 4, 2).with_kind(MatrixKind::DoubleCirculant)).is_ok());
    }
}
