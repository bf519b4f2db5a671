//! Property tests over seeded generator inputs: ring axioms, elimination
//! against independent formulas, torsion and class invariants, and wire
//! format round trips.

use binaryk::binary::diag;
use binaryk::gen;
use binaryk::payload::Payload;
use binaryk::ring::Ring;
use binaryk::suite::validate_payload;
use binaryk::torsion::{k1_class, torsion};
use proptest::prelude::*;

fn rings() -> Vec<Ring> {
    vec![
        Ring::fp(5).unwrap(),
        Ring::fp(7).unwrap(),
        Ring::fq(2, &[1, 1, 1]).unwrap(),
        Ring::Q,
        Ring::Z,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold(seed in any::<u64>(), ring_ix in 0usize..5) {
        let ring = rings()[ring_ix].clone();
        let mut rng = gen::case_rng(seed, 0xA0, 0);
        let a = gen::rand_elem(&ring, &mut rng);
        let b = gen::rand_elem(&ring, &mut rng);
        let c = gen::rand_elem(&ring, &mut rng);
        prop_assert_eq!(ring.add(&a, &b), ring.add(&b, &a));
        prop_assert_eq!(ring.add(&ring.add(&a, &b), &c), ring.add(&a, &ring.add(&b, &c)));
        prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
        prop_assert_eq!(
            ring.mul(&a, &ring.add(&b, &c)),
            ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
        );
        prop_assert_eq!(ring.add(&a, &ring.neg(&a)), ring.zero());
        prop_assert_eq!(ring.mul(&a, &ring.one()), a.clone());
        if ring.is_field() && !ring.is_zero(&a) {
            let inv = ring.inv(&a).unwrap();
            prop_assert_eq!(ring.mul(&a, &inv), ring.one());
        }
    }

    #[test]
    fn determinant_multiplies(seed in any::<u64>(), ring_ix in 0usize..5, n in 0usize..4) {
        let ring = rings()[ring_ix].clone();
        let mut rng = gen::case_rng(seed, 0xA1, n as u64);
        let a = gen::rand_matrix(&ring, n, n, &mut rng);
        let b = gen::rand_matrix(&ring, n, n, &mut rng);
        let lhs = a.mul(&b).unwrap().det().unwrap();
        let rhs = ring.mul(&a.det().unwrap(), &b.det().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_form_reconstructs(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let mut rng = gen::case_rng(seed, 0xA2, (rows * 7 + cols) as u64);
        let a = gen::rand_matrix(&Ring::Z, rows, cols, &mut rng);
        let snf = a.snf().unwrap();
        let lhs = snf.u.mul(&a).unwrap().mul(&snf.v).unwrap();
        prop_assert_eq!(lhs, snf.s.clone());
        let z = Ring::Z;
        let du = snf.u.det().unwrap();
        prop_assert!(du == z.one() || du == z.from_i64(-1));
    }

    #[test]
    fn acyclic_generators_have_unit_torsion_values(seed in any::<u64>(), ring_ix in 0usize..4) {
        // every generated acyclic complex has a well-defined nonzero torsion
        let ring = rings()[ring_ix].clone();
        if ring == Ring::Z {
            return Ok(());
        }
        let mut rng = gen::case_rng(seed, 0xA3, 0);
        let c = gen::rand_acyclic(&ring, 2, &mut rng);
        let t = torsion(&c).unwrap();
        prop_assert!(!ring.is_zero(t.value()));
        // diagonal classes vanish on the nose
        let class = k1_class(&diag(&c)).unwrap();
        prop_assert_eq!(class.value(), &ring.one());
    }

    #[test]
    fn class_is_multiplicative_over_generated_sequences(seed in any::<u64>()) {
        let ring = Ring::fp(5).unwrap();
        let mut rng = gen::case_rng(seed, 0xA4, 0);
        let ses = gen::rand_binary_ses(&ring, 2, &mut rng);
        prop_assert!(ses.validate().is_ok());
        let l = k1_class(&ses.left).unwrap();
        let m = k1_class(&ses.middle).unwrap();
        let r = k1_class(&ses.right).unwrap();
        prop_assert_eq!(m, l.mul(&r));
    }

    #[test]
    fn payloads_round_trip(seed in any::<u64>(), kind_ix in 0usize..4) {
        let kind = ["complex", "binary", "dses", "triple"][kind_ix];
        let ring = if kind == "triple" { "F4" } else { "F5" };
        let mut rng = gen::case_rng(seed, 0xA5, kind_ix as u64);
        let payload = gen::randgen_payload(kind, ring, 2, &mut rng).unwrap();
        let text = payload.to_json();
        let back = Payload::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert!(validate_payload(&back).is_ok());
    }
}
