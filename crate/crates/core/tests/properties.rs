use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use brkit::recognize::oracle::{find_flag, flag_to_cert};
use brkit::recognize::{parse_cert, verify_cert, write_cert, Stats};
use brkit::space::{parse_matspace, write_matspace};
use brkit::verify::{random_invertible, sample_bounded_space};
use brkit::{CompressionModel, Field, ModelKind};

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![2u32, 3, 4, 5, 7]).prop_map(|q| Field::new(q).unwrap())
}

fn model(max_n: usize) -> impl Strategy<Value = CompressionModel> {
    (prop::bool::ANY, 2..=max_n)
        .prop_flat_map(|(alt, n)| (Just(alt), Just(n), 0..=n / 2))
        .prop_flat_map(|(alt, n, s)| (Just(alt), Just(n), Just(s), 0..=n - 2 * s))
        .prop_map(|(alt, n, s, t)| {
            let kind = if alt { ModelKind::Alt } else { ModelKind::Sym };
            CompressionModel::new(kind, n, s, t).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn congruence_preserves_upper_rank(f in field(), m in model(4), seed in any::<u64>()) {
        let s = m.space(f).unwrap();
        prop_assume!((f.q() as f64).powi(s.dim() as i32) <= 1e6);
        let p = random_invertible(f, m.n, &mut ChaCha8Rng::seed_from_u64(seed));
        let c = s.congruent(&p).unwrap();
        prop_assert_eq!(c.dim(), s.dim());
        let a = s.urk_exact(1 << 20).unwrap().value;
        let b = c.urk_exact(1 << 20).unwrap().value;
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, m.urk(f).unwrap().value);
    }

    #[test]
    fn sampled_spaces_carry_a_valid_truth(f in field(), m in model(6), frac in 0.0f64..=1.0, seed in any::<u64>()) {
        let d = ((m.space(f).unwrap().dim() as f64) * frac) as usize;
        let sample = sample_bounded_space(&m, d, f, seed).unwrap();
        prop_assert_eq!(sample.space.dim(), d);
        prop_assert!(verify_cert(&sample.space, &sample.truth));
    }

    #[test]
    fn oracle_flags_certify(f in field(), m in model(5), seed in any::<u64>()) {
        prop_assume!(!(m.kind == ModelKind::Sym && f.q() == 2));
        let dim = m.space(f).unwrap().dim();
        let sample = sample_bounded_space(&m, dim, f, seed).unwrap();
        let mut stats = Stats::default();
        let flag = find_flag(&sample.space, &m, 1 << 24, &mut stats).unwrap();
        let flag = flag.expect("a congruent copy of the model has a flag");
        prop_assert!(verify_cert(&sample.space, &flag_to_cert(&sample.space, &flag, m)));
    }

    #[test]
    fn text_formats_round_trip(f in field(), m in model(6), seed in any::<u64>()) {
        let sample = sample_bounded_space(&m, m.space(f).unwrap().dim() / 2, f, seed).unwrap();
        let back = parse_matspace(&write_matspace(&sample.space)).unwrap();
        prop_assert_eq!(back.coords(), sample.space.coords());
        prop_assert_eq!(back.kind(), sample.space.kind());
        let cert = parse_cert(&write_cert(&sample.truth)).unwrap();
        prop_assert_eq!(cert.model, sample.truth.model);
        prop_assert!(cert.p == sample.truth.p);
    }
}
