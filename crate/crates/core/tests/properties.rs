mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rank74::certificates::{
    exp_rank_certificate, mesoscopic_certificate, rotation_map, transport_torus, verify_meso, verify_torus, z2_certificate,
    ExpRankWitness, MesoWitness, TorusWitness, Z2Bounds,
};
use rank74::cobordism::{canonicalize, close_up_tracked, equivalent_words, Generator, Letter, Word};
use rank74::rgraph::subword_embedding;

fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x7174), failure_persistence: None, ..Config::default() }
}

fn generator() -> impl Strategy<Value = Generator> {
    (any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(y, l, r)| Generator::new(if y { Letter::Y } else { Letter::X }, l, r))
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(generator(), 1..=max).prop_map(|g| Word::new(g).unwrap())
}

#[test]
fn flip_lemma() {
    assert_eq!(common::flip_lemma_violations(), Vec::<String>::new());
}

#[test]
fn strand_disconnection() {
    assert_eq!(common::strand_violations(), Vec::<String>::new());
}

#[test]
fn sampler_chi_square() {
    let p = common::sampler_chi_square_p(2024, 100);
    assert!(p > 0.01, "p = {p}");
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn subword_embedding_is_total(w in word(8), a in 0usize..8, b in 0usize..8) {
        let n = w.len();
        let (s, e) = (a % n + 1, b % n + 1);
        let (s, e) = (s.min(e), s.max(e));
        let emb = subword_embedding(&w, s, e).unwrap();
        prop_assert!(emb.is_monomorphism());
        prop_assert_eq!(emb.edge_map.len(), emb.sub.edges.len());
    }

    #[test]
    fn canonicalization_is_idempotent(w in word(10)) {
        let c = canonicalize(&w);
        prop_assert!(c.is_canonical());
        let rep = c.representative();
        prop_assert_eq!(canonicalize(&rep), c);
        prop_assert!(equivalent_words(&w, &rep));
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn torus_witness_round_trip(w in word(4)) {
        let base = close_up_tracked(&w).unwrap();
        let t = z2_certificate(&w, &Z2Bounds::default()).witness().cloned().expect("torus for short words");
        let back = TorusWitness::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert!(verify_torus(&back, &base.presentation));
        let n = w.len();
        for k in 1..n {
            let rw = w.rotate(k);
            let rot = close_up_tracked(&rw).unwrap();
            let f = rotation_map(&rw, n - k, &base, &rot).unwrap();
            let moved = transport_torus(&t, &base.presentation, &rw, &rot.presentation, &f).unwrap();
            prop_assert!(verify_torus(&moved, &rot.presentation), "{} rotated by {}", w, k);
        }
    }

    #[test]
    fn exp_rank_and_meso_round_trip(w in word(6)) {
        if let Some(x) = exp_rank_certificate(&w) {
            let back: ExpRankWitness = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
            prop_assert!(back.verify());
        }
        if let Some(m) = mesoscopic_certificate(&w) {
            let back: MesoWitness = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
            prop_assert!(verify_meso(&back));
        }
    }
}
