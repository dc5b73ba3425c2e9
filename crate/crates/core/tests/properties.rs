use proptest::prelude::*;

use qsdi::cost::{analytic_round_bits, measured_round_bits, signature_bits};
use qsdi::keys::keygen;
use qsdi::linalg::FqVector;
use qsdi::params::{MatrixKind, SchemeParams};
use qsdi::protocol::ProverSession;
use qsdi::signature::sign;
use qsdi::transform::Transform;
use qsdi::wire;
use qsdi::Field;

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![2u16, 3, 5, 7, 13, 16, 256]).prop_map(|q| Field::with_order(q).unwrap())
}

fn vector(f: Field, n: usize) -> impl Strategy<Value = FqVector> {
    let q = f.q();
    prop::collection::vec(0..q, n).prop_map(move |v| FqVector::new(&f, v.into_iter().map(|x| x as u8).collect()).unwrap())
}

fn small(q: u16) -> SchemeParams {
    SchemeParams::custom(Field::with_order(q).unwrap(), 16, 8, 4)
}

proptest! {
    #[test]
    fn transform_laws(
        (f, u, v, alpha, ps, ss) in field().prop_flat_map(|f| {
            let q = f.q();
            (1usize..48).prop_flat_map(move |n| {
                (Just(f.clone()), vector(f.clone(), n), vector(f.clone(), n), 0..q, any::<[u8; 16]>(), any::<[u8; 16]>())
            })
        })
    ) {
        let t = Transform::derive(&ps, &ss, u.len(), &f);
        let alpha = alpha as u8;
        let tu = t.apply(&u).unwrap();
        prop_assert_eq!(t.apply(&u.scale(alpha)).unwrap(), tu.scale(alpha));
        prop_assert_eq!(t.apply(&u.add(&v).unwrap()).unwrap(), tu.add(&t.apply(&v).unwrap()).unwrap());
        prop_assert_eq!(tu.weight(), u.weight());
        prop_assert_eq!(t.invert(&tu).unwrap(), u);
        prop_assert_eq!(wire::decode_transform(&wire::encode_transform(&t), &f, v.len()).unwrap(), t);
    }

    #[test]
    fn syndrome_is_linear(seed in any::<[u8; 8]>(), q in prop::sample::select(vec![3u16, 5, 256]), a in 0u16..3, circ in any::<bool>()) {
        let kind = if circ { MatrixKind::DoubleCirculant } else { MatrixKind::RandomSystematic };
        let p = small(q).with_kind(kind);
        let (pk, sk) = keygen(&p, &seed).unwrap();
        let f = pk.field().clone();
        let x = sk.s.clone();
        let y = FqVector::new(&f, seed.iter().cycle().take(16).map(|&b| (b as u16 % q) as u8).collect()).unwrap();
        let a = a as u8;
        let lhs = pk.h.syndrome(&x.scale(a).add(&y).unwrap()).unwrap();
        let rhs = pk.h.syndrome(&x).unwrap().scale(a).add(&pk.h.syndrome(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(pk.h.syndrome(&x).unwrap(), pk.y);
    }

    #[test]
    fn keys_and_transcripts_round_trip(seed in any::<[u8; 8]>(), q in prop::sample::select(vec![2u16, 7, 16, 256]), rounds in 1usize..6) {
        let p = small(q);
        let (pk, sk) = keygen(&p, &seed).unwrap();
        let pkb = wire::encode_public_key(&pk);
        prop_assert_eq!(wire::encode_public_key(&wire::decode_public_key(&pkb).unwrap()), pkb);
        let skb = wire::encode_private_key(&p, &sk);
        prop_assert_eq!(wire::decode_private_key(&skb).unwrap().1, sk.clone());

        let ts: Vec<_> = (0..rounds as u8)
            .map(|i| ProverSession::new(&pk, &sk).answer(&[i], (seed[i as usize] as u16 % q) as u8, seed[7] >> i & 1).unwrap())
            .collect();
        let bytes = wire::encode_transcript(&p, &ts);
        let (dp, dts) = wire::decode_transcript(&bytes).unwrap();
        prop_assert_eq!(dp.rounds, rounds);
        prop_assert_eq!(dts, ts);

        let sig = sign(&pk, &sk, &seed, b"r", rounds).unwrap();
        let sb = wire::encode_signature(&sig);
        prop_assert_eq!(wire::encode_signature(&wire::decode_signature(&sb).unwrap()), sb);
    }

    #[test]
    fn truncated_encodings_never_decode(seed in any::<[u8; 4]>(), cut in 1usize..200) {
        let (pk, sk) = keygen(&small(5), &seed).unwrap();
        let sig = wire::encode_signature(&sign(&pk, &sk, b"m", &seed, 4).unwrap());
        let pkb = wire::encode_public_key(&pk);
        prop_assert!(wire::decode_signature(&sig[..sig.len() - cut.min(sig.len())]).is_err());
        prop_assert!(wire::decode_public_key(&pkb[..pkb.len() - cut.min(pkb.len())]).is_err());
    }

    #[test]
    fn measured_bits_match_analytic_for_byte_fields(seed in any::<[u8; 8]>(), alpha in any::<u8>(), b in 0u8..2) {
        let (pk, sk) = keygen(&small(256), &seed).unwrap();
        let t = ProverSession::new(&pk, &sk).answer(&seed, alpha, b).unwrap();
        let m = measured_round_bits(&t);
        let a = analytic_round_bits(&pk.params, b);
        prop_assert_eq!(m.commitments, a.commitments);
        prop_assert_eq!(m.alpha, a.alpha);
        prop_assert_eq!(m.beta, a.beta);
        prop_assert_eq!(m.disclosure, a.disclosure);
        prop_assert_eq!((m.bit, a.bit), (8, 1));
    }
}

#[test]
fn average_signature_size_near_analytic() {
    let p = SchemeParams::param80().with_rounds(16);
    let (pk, sk) = keygen(&p, b"avg").unwrap();
    let total: usize = (0..100u32)
        .map(|i| {
            let sig = sign(&pk, &sk, &i.to_be_bytes(), &i.to_le_bytes(), 16).unwrap();
            (wire::encode_signature(&sig).len() - wire::HEADER_LEN) * 8
        })
        .sum();
    let mean = total as f64 / 100.0;
    let expected = signature_bits(&p) as f64;
    assert_eq!(expected, 30720.0);
    assert!((mean - expected).abs() / expected <= 0.03, "mean {mean} vs {expected}");
}
