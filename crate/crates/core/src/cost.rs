//! Analytic key-size, communication and computation costs, and their
//! comparison with measured wire sizes.
//!
//! ```text
//! public data    = k·k·N + n·N
//! communication  = δ(2ℓ_h + N + nN + 1 + (ℓ_Σ + ℓ_γ + nN)/2)
//! multiplications = δ(k + n + 2ω),  additions = δ(k + ω)
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::params::{MatrixKind, SchemeParams};
use crate::protocol::RoundTranscript;
use crate::wire::{encode_alpha, encode_beta, encode_bit, encode_commitments, encode_disclosure, WireError};

pub fn public_data_bits(p: &SchemeParams) -> u64 {
    let (k, n, bits) = (p.k as u64, p.n as u64, p.element_bits() as u64);
    k * k * bits + n * bits
}

/// (public key bits, private key bits) for the double-circulant variant:
/// the circulant first row and the secret.
pub fn circulant_key_bits(p: &SchemeParams) -> Result<(u64, u64)> {
    if p.kind != MatrixKind::DoubleCirculant {
        return Err(Error::KindMismatch);
    }
    let bits = p.element_bits() as u64;
    Ok((p.n as u64 / 2 * bits, p.n as u64 * bits))
}

/// Per-round average communication as an exact fraction over 2.
fn communication_halves(p: &SchemeParams) -> u64 {
    let nn = p.n as u64 * p.element_bits() as u64;
    let fixed = 2 * p.hash_bits as u64 + p.element_bits() as u64 + nn + 1;
    let disclosure = p.perm_seed_bits as u64 + p.scale_seed_bits as u64 + nn;
    p.rounds as u64 * (2 * fixed + disclosure)
}

/// Expected bits exchanged over δ rounds, rounded up.
pub fn communication_bits(p: &SchemeParams) -> u64 {
    communication_halves(p).div_ceil(2)
}

/// (multiplications, additions) over F_q.
pub fn computation_counts(p: &SchemeParams) -> (u64, u64) {
    let (k, n, w, d) = (p.k as u64, p.n as u64, p.weight as u64, p.rounds as u64);
    (d * (k + n + 2 * w), d * (k + w))
}

/// Expected signature size in bits: every round carries both commitments,
/// β and the averaged disclosure, but no challenges.
pub fn signature_bits(p: &SchemeParams) -> u64 {
    let nn = p.n as u64 * p.element_bits() as u64;
    let disclosure = p.perm_seed_bits as u64 + p.scale_seed_bits as u64 + nn;
    (p.rounds as u64 * (2 * (2 * p.hash_bits as u64 + nn) + disclosure)).div_ceil(2)
}

/// Figures printed in the published comparison table, where available.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PublishedFigures {
    pub public_data_bits: u64,
    pub communication_bits: u64,
    pub mult_log2: f64,
    pub add_log2: f64,
}

pub fn published_figures(p: &SchemeParams) -> Option<PublishedFigures> {
    match p.named_set()?.name {
        "param80" => Some(PublishedFigures {
            public_data_bits: 33792,
            communication_bits: 30848,
            mult_log2: 12.1,
            add_log2: 11.3,
        }),
        "param128" => Some(PublishedFigures {
            public_data_bits: 88192,
            communication_bits: 46224,
            mult_log2: 12.9,
            add_log2: 11.5,
        }),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostReport {
    pub q: u16,
    pub n: usize,
    pub k: usize,
    pub weight: usize,
    pub element_bits: u32,
    pub hash_bits: usize,
    pub perm_seed_bits: usize,
    pub scale_seed_bits: usize,
    pub rounds: usize,
    pub kind: MatrixKind,
    pub public_data_bits: u64,
    pub communication_bits: u64,
    pub mult_count: u64,
    pub add_count: u64,
    /// r·N, the syndrome y stored next to the matrix.
    pub syndrome_bits: u64,
    pub circulant_key_bits: Option<(u64, u64)>,
    pub published: Option<PublishedFigures>,
}

impl CostReport {
    pub fn new(p: &SchemeParams) -> Self {
        let (mult_count, add_count) = computation_counts(p);
        CostReport {
            q: p.field.q(),
            n: p.n,
            k: p.k,
            weight: p.weight,
            element_bits: p.element_bits(),
            hash_bits: p.hash_bits,
            perm_seed_bits: p.perm_seed_bits,
            scale_seed_bits: p.scale_seed_bits,
            rounds: p.rounds,
            kind: p.kind,
            public_data_bits: public_data_bits(p),
            communication_bits: communication_bits(p),
            mult_count,
            add_count,
            syndrome_bits: p.r() as u64 * p.element_bits() as u64,
            circulant_key_bits: circulant_key_bits(p).ok(),
            published: published_figures(p),
        }
    }

    /// Machine-readable `key=value` lines.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k}={v}");
        };
        kv("q", self.q.to_string());
        kv("n", self.n.to_string());
        kv("k", self.k.to_string());
        kv("w", self.weight.to_string());
        kv("element_bits", self.element_bits.to_string());
        kv("hash_bits", self.hash_bits.to_string());
        kv("perm_seed_bits", self.perm_seed_bits.to_string());
        kv("scale_seed_bits", self.scale_seed_bits.to_string());
        kv("rounds", self.rounds.to_string());
        kv("kind", self.kind.to_string());
        kv("public_data_bits", self.public_data_bits.to_string());
        kv("communication_bits", self.communication_bits.to_string());
        kv("mult_count", self.mult_count.to_string());
        kv("mult_log2", format!("{:.2}", (self.mult_count as f64).log2()));
        kv("add_count", self.add_count.to_string());
        kv("add_log2", format!("{:.2}", (self.add_count as f64).log2()));
        kv("syndrome_bits", self.syndrome_bits.to_string());
        if let Some((pk, sk)) = self.circulant_key_bits {
            kv("circulant_pk_bits", pk.to_string());
            kv("circulant_pk_with_syndrome_bits", (pk + self.syndrome_bits).to_string());
            kv("circulant_sk_bits", sk.to_string());
        }
        if let Some(p) = self.published {
            kv("published_public_data_bits", p.public_data_bits.to_string());
            kv("published_communication_bits", p.communication_bits.to_string());
            kv(
                "communication_deviation_bits",
                (self.communication_bits as i64 - p.communication_bits as i64).to_string(),
            );
            kv("published_mult_log2", format!("{:.1}", p.mult_log2));
            kv("published_add_log2", format!("{:.1}", p.add_log2));
        }
        out
    }

    /// Inverse of [`CostReport::to_key_values`]. Derived lines (`*_log2`,
    /// deviations) are ignored and recomputed.
    pub fn from_key_values(text: &str) -> std::result::Result<Self, WireError> {
        let bad = |m: String| WireError::BadReport(m);
        let mut map = BTreeMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (k, v) = line.split_once('=').ok_or_else(|| bad(format!("line without '=': {line}")))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        fn get<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> std::result::Result<T, WireError> {
            map.get(key)
                .ok_or_else(|| WireError::BadReport(format!("missing {key}")))?
                .parse()
                .map_err(|_| WireError::BadReport(format!("unparsable {key}")))
        }
        let opt = |key: &str| map.contains_key(key);
        let kind = match map.get("kind").map(String::as_str) {
            Some("random") => MatrixKind::RandomSystematic,
            Some("circulant") => MatrixKind::DoubleCirculant,
            other => return Err(bad(format!("kind {other:?}"))),
        };
        let circulant_key_bits = if opt("circulant_pk_bits") {
            Some((get(&map, "circulant_pk_bits")?, get(&map, "circulant_sk_bits")?))
        } else {
            None
        };
        let published = if opt("published_public_data_bits") {
            Some(PublishedFigures {
                public_data_bits: get(&map, "published_public_data_bits")?,
                communication_bits: get(&map, "published_communication_bits")?,
                mult_log2: get(&map, "published_mult_log2")?,
                add_log2: get(&map, "published_add_log2")?,
            })
        } else {
            None
        };
        Ok(CostReport {
            q: get(&map, "q")?,
            n: get(&map, "n")?,
            k: get(&map, "k")?,
            weight: get(&map, "w")?,
            element_bits: get(&map, "element_bits")?,
            hash_bits: get(&map, "hash_bits")?,
            perm_seed_bits: get(&map, "perm_seed_bits")?,
            scale_seed_bits: get(&map, "scale_seed_bits")?,
            rounds: get(&map, "rounds")?,
            kind,
            public_data_bits: get(&map, "public_data_bits")?,
            communication_bits: get(&map, "communication_bits")?,
            mult_count: get(&map, "mult_count")?,
            add_count: get(&map, "add_count")?,
            syndrome_bits: get(&map, "syndrome_bits")?,
            circulant_key_bits,
            published,
        })
    }

    /// Aligned human-readable table.
    pub fn render_table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("parameters".into(), format!("q={} n={} k={} w={} N={}", self.q, self.n, self.k, self.weight, self.element_bits)),
            ("rounds".into(), self.rounds.to_string()),
            ("matrix".into(), self.kind.to_string()),
        ];
        let note = |v: String| format!("  (published {v})");
        let pub_data = self.published.map(|p| note(p.public_data_bits.to_string())).unwrap_or_default();
        rows.push(("public data (bits)".into(), format!("{}{}", self.public_data_bits, pub_data)));
        if let Some((pk, sk)) = self.circulant_key_bits {
            rows.push(("circulant public key (bits)".into(), format!("{pk} matrix + {} syndrome", self.syndrome_bits)));
            rows.push(("circulant private key (bits)".into(), sk.to_string()));
        }
        let comm = match self.published {
            Some(p) if p.communication_bits != self.communication_bits => format!(
                "{}  (published {}, deviation {:+})",
                self.communication_bits,
                p.communication_bits,
                self.communication_bits as i64 - p.communication_bits as i64
            ),
            Some(p) => format!("{}{}", self.communication_bits, note(p.communication_bits.to_string())),
            None => self.communication_bits.to_string(),
        };
        rows.push(("communication (bits)".into(), comm));
        let log2 = |v: u64| (v as f64).log2();
        rows.push((
            "multiplications".into(),
            format!(
                "{} = 2^{:.2}{}",
                self.mult_count,
                log2(self.mult_count),
                self.published.map(|p| note(format!("2^{:.1}", p.mult_log2))).unwrap_or_default()
            ),
        ));
        rows.push((
            "additions".into(),
            format!(
                "{} = 2^{:.2}{}",
                self.add_count,
                log2(self.add_count),
                self.published.map(|p| note(format!("2^{:.1}", p.add_log2))).unwrap_or_default()
            ),
        ));
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }
}

/// Wire bits of each message of one round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundBits {
    pub commitments: u64,
    pub alpha: u64,
    pub beta: u64,
    pub bit: u64,
    pub disclosure: u64,
}

impl RoundBits {
    pub fn total(&self) -> u64 {
        self.commitments + self.alpha + self.beta + self.bit + self.disclosure
    }
}

pub fn measured_round_bits(t: &RoundTranscript) -> RoundBits {
    let bits = |v: Vec<u8>| v.len() as u64 * 8;
    RoundBits {
        commitments: bits(encode_commitments(&t.c1, &t.c2)),
        alpha: bits(encode_alpha(t.alpha)),
        beta: bits(encode_beta(&t.beta)),
        bit: bits(encode_bit(t.b)),
        disclosure: bits(encode_disclosure(&t.disclosure)),
    }
}

/// Analytic bits of the same messages, with the disclosure of the actual b.
pub fn analytic_round_bits(p: &SchemeParams, b: u8) -> RoundBits {
    let bits = p.element_bits() as u64;
    RoundBits {
        commitments: 2 * p.hash_bits as u64,
        alpha: bits,
        beta: p.n as u64 * bits,
        bit: 1,
        disclosure: if b == 0 {
            (p.perm_seed_bits + p.scale_seed_bits) as u64
        } else {
            p.n as u64 * bits
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn public_data_examples() {
        assert_eq!(public_data_bits(&SchemeParams::param80()), 33792);
        assert_eq!(public_data_bits(&SchemeParams::param128()), 88192);
        let p = SchemeParams::custom(Field::with_order(2).unwrap(), 2, 1, 1);
        assert_eq!(public_data_bits(&p), 3);
    }

    #[test]
    fn circulant_examples() {
        let p = SchemeParams::param80().with_kind(MatrixKind::DoubleCirculant);
        assert_eq!(circulant_key_bits(&p), Ok((512, 1024)));
        let tiny = SchemeParams::custom(Field::with_order(2).unwrap(), 4, 2, 1).with_kind(MatrixKind::DoubleCirculant);
        assert_eq!(circulant_key_bits(&tiny), Ok((2, 4)));
        assert_eq!(circulant_key_bits(&SchemeParams::param80()), Err(Error::KindMismatch));
        for n in (2..=64).step_by(2) {
            let p = SchemeParams::custom(Field::gf256(), n, n / 2, 1).with_kind(MatrixKind::DoubleCirculant);
            let (pk, sk) = circulant_key_bits(&p).unwrap();
            assert_eq!(2 * pk, sk);
        }
    }

    #[test]
    fn communication_examples() {
        assert_eq!(communication_bits(&SchemeParams::param128()), 46224);
        assert_eq!(communication_bits(&SchemeParams::param80()), 30864);
        // δ = 0 is not a valid parameter set, but the formula is linear in δ
        assert_eq!(communication_bits(&SchemeParams::param80().with_rounds(0)), 0);
    }

    #[test]
    fn odd_half_rounds_up() {
        // δ(ℓ_Σ + ℓ_γ + nN) odd: q = 2, n = 3, seeds 8 + 8, δ = 1 → 19 / 2
        let mut p = SchemeParams::custom(Field::with_order(2).unwrap(), 3, 1, 1).with_rounds(1).with_hash_bits(8);
        p.perm_seed_bits = 8;
        p.scale_seed_bits = 8;
        // 2·8 + 1 + 3 + 1 = 21, plus ceil(19 / 2) = 10
        assert_eq!(communication_bits(&p), 31);
    }

    #[test]
    fn computation_examples() {
        assert_eq!(computation_counts(&SchemeParams::param128()), (7488, 2912));
        assert_eq!(computation_counts(&SchemeParams::param80()), (4640, 1808));
        let mut p = SchemeParams::custom(Field::gf256(), 10, 1, 1).with_rounds(3);
        p.k = 0;
        p.weight = 0;
        assert_eq!(computation_counts(&p), (30, 0));
    }

    #[test]
    fn signature_size_matches_communication_minus_challenges() {
        let p = SchemeParams::param80();
        assert_eq!(signature_bits(&p), 30720);
        assert_eq!(signature_bits(&p), communication_bits(&p) - 16 * (8 + 1));
    }

    #[test]
    fn report_round_trip() {
        for p in [
            SchemeParams::param80(),
            SchemeParams::param128(),
            SchemeParams::param80().with_kind(MatrixKind::DoubleCirculant),
            SchemeParams::custom(Field::with_order(5).unwrap(), 12, 6, 3),
        ] {
            let r = CostReport::new(&p);
            assert_eq!(CostReport::from_key_values(&r.to_key_values()).unwrap(), r);
        }
        assert!(matches!(CostReport::from_key_values("q=5\n"), Err(WireError::BadReport(_))));
        assert!(matches!(CostReport::from_key_values("garbage"), Err(WireError::BadReport(_))));
    }

    #[test]
    fn report_mentions_deviation() {
        let r = CostReport::new(&SchemeParams::param80());
        let kv = r.to_key_values();
        assert!(kv.contains("public_data_bits=33792\n"));
        assert!(kv.contains("communication_bits=30864\n"));
        assert!(kv.contains("published_communication_bits=30848\n"));
        assert!(kv.contains("communication_deviation_bits=16\n"));
        assert!(r.render_table().contains("deviation +16"));
    }
}
