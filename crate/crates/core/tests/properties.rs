mod common;

use aued::bounds::{gbt, gbt_value};
use aued::catalog::known;
use aued::code::{asymmetric_distance, count_above, hamming_distance, is_t_ec_aued, Code, Word};
use aued::construct::{
    construction_one, debruijn_code, juxtapose, juxtapose_all, mirror_concatenate, trivial_code,
};
use aued::designs::{develop_circulant, packing_to_code, verify_resolvable, CirculantSeed, ResolvablePacking};
use aued::field::field_make;
use aued::search::{certify, max_code_size, min_length, shrink, SearchLimits, Verdict};
use aued::simulate::{decode, inject, random_symmetric, random_unidirectional, run_trials, Campaign, DecodeOutcome};
use common::{d_as, min_d_as, n_above, rows_of};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word_pair() -> impl Strategy<Value = (u16, Vec<u8>, Vec<u8>)> {
    (2u16..=9, 1usize..=12).prop_flat_map(|(q, n)| {
        let sym = 0..q as u8;
        (
            Just(q),
            prop::collection::vec(sym.clone(), n),
            prop::collection::vec(sym, n),
        )
    })
}

/// Distinct random words, as rows of a code.
fn code_rows() -> impl Strategy<Value = (u16, Vec<Vec<u8>>)> {
    (2u16..=5, 2usize..=8, 2usize..=10).prop_flat_map(|(q, n, a)| {
        let rows = prop::collection::hash_set(prop::collection::vec(0..q as u8, n), 2..=a);
        (Just(q), rows.prop_map(|s| s.into_iter().collect::<Vec<_>>()))
    })
    .prop_filter("need two distinct words", |(_, rows)| rows.len() >= 2)
}

fn complement(q: u16, x: &[u8]) -> Vec<u8> {
    x.iter().map(|&s| (q - 1) as u8 - s).collect()
}

proptest! {
    #[test]
    fn hamming_is_sum_of_directed_counts((q, x, y) in word_pair()) {
        let (wx, wy) = (Word::new(q, x.clone()).unwrap(), Word::new(q, y.clone()).unwrap());
        let h = hamming_distance(&wx, &wy).unwrap();
        prop_assert_eq!(h, count_above(&wx, &wy).unwrap() + count_above(&wy, &wx).unwrap());
        prop_assert_eq!(h, x.iter().zip(&y).filter(|(a, b)| a != b).count());
    }

    #[test]
    fn complement_swaps_direction((q, x, y) in word_pair()) {
        let cx = Word::new(q, complement(q, &x)).unwrap();
        let cy = Word::new(q, complement(q, &y)).unwrap();
        let (wx, wy) = (Word::new(q, x.clone()).unwrap(), Word::new(q, y.clone()).unwrap());
        prop_assert_eq!(count_above(&cx, &cy).unwrap(), count_above(&wy, &wx).unwrap());
        prop_assert_eq!(count_above(&wx, &wy).unwrap(), n_above(&x, &y));
    }

    #[test]
    fn asymmetric_distance_is_symmetric((q, x, y) in word_pair()) {
        let (wx, wy) = (Word::new(q, x.clone()).unwrap(), Word::new(q, y.clone()).unwrap());
        prop_assert_eq!(asymmetric_distance(&wx, &wy).unwrap(), asymmetric_distance(&wy, &wx).unwrap());
        prop_assert_eq!(asymmetric_distance(&wx, &wy).unwrap(), d_as(&x, &y));
    }

    #[test]
    fn equal_weight_binary_words_split_evenly(perm in Just((0..10usize).collect::<Vec<_>>()).prop_shuffle(), weight in 0usize..=10) {
        let mut x = vec![0u8; 10];
        for &i in &perm[..weight] { x[i] = 1; }
        let mut y = vec![0u8; 10];
        for &i in &perm[10 - weight..] { y[i] = 1; }
        let h = x.iter().zip(&y).filter(|(a, b)| a != b).count();
        prop_assert_eq!(n_above(&x, &y) * 2, h);
        prop_assert_eq!(n_above(&y, &x) * 2, h);
    }

    #[test]
    fn code_distance_matches_oracle((q, rows) in code_rows()) {
        let code = Code::from_rows(q, rows.clone()).unwrap();
        let d = min_d_as(&rows);
        prop_assert_eq!(code.min_asymmetric(), Some(d));
        for t in 0..=d + 1 {
            prop_assert_eq!(is_t_ec_aued(&code, t), d > t);
        }
        prop_assert_eq!(Code::from_text(&code.to_text()).unwrap(), code);
    }

    #[test]
    fn mirror_distance_is_input_hamming_distance((q, rows) in code_rows()) {
        let code = Code::from_rows(q, rows.clone()).unwrap();
        let mirror = mirror_concatenate(&code).unwrap();
        let min_h = (0..rows.len())
            .flat_map(|i| (i + 1..rows.len()).map(move |j| (i, j)))
            .map(|(i, j)| rows[i].iter().zip(&rows[j]).filter(|(a, b)| a != b).count())
            .min()
            .unwrap();
        prop_assert_eq!(min_d_as(&rows_of(&mirror)), min_h);
    }

    #[test]
    fn juxtaposition_adds_distances((q, rows) in code_rows(), seed in any::<u64>()) {
        let a = Code::from_rows(q, rows.clone()).unwrap();
        let b = mirror_concatenate(&a).unwrap();
        let mut pairing: Vec<usize> = (0..rows.len()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(pairing.as_mut_slice(), &mut rng);
        let j = juxtapose(&a, &b, Some(&pairing)).unwrap();
        prop_assert!(min_d_as(&rows_of(&j)) >= min_d_as(&rows) + min_d_as(&rows_of(&b)));
    }

    #[test]
    fn shrinking_never_lowers_distance((q, rows) in code_rows(), keep in 2usize..=10) {
        let code = Code::from_rows(q, rows.clone()).unwrap();
        let keep = keep.min(rows.len());
        let small = shrink(&code, keep).unwrap();
        prop_assert!(min_d_as(&rows_of(&small)) >= min_d_as(&rows));
    }

    #[test]
    fn gbt_is_nondecreasing_in_t(q in 2u64..=16, a in 2u64..=300, t in 1u64..=50) {
        prop_assert!(gbt_value(q, a, t).unwrap() <= gbt_value(q, a, t + 1).unwrap());
        prop_assert!(gbt_value(q, a, t).unwrap() <= gbt_value(q, a + 1, t).unwrap());
        prop_assert!(gbt_value(q, a, t).unwrap() >= 2 * t);
    }

    #[test]
    fn gbt_is_2t_when_q_covers_a(q in 2u64..=256, t in 1u64..=1000, frac in 0.0f64..=1.0) {
        let a = 2 + ((q - 2) as f64 * frac) as u64;
        prop_assert_eq!(gbt_value(q, a, t).unwrap(), 2 * t);
    }

    #[test]
    fn gbt_is_the_exact_ceiling(q in 2u64..=256, a in 2u64..=100_000, t in 1u64..=100_000) {
        let r = gbt(q, a, t).unwrap();
        let v = r.value as u128;
        prop_assert!((v - 1) * r.denominator < r.numerator);
        prop_assert!(r.numerator <= v * r.denominator);
    }

    #[test]
    fn gbt_subadditive_and_additive_pairs_juxtapose(a in 7u64..=12, t1 in 2u64..=12, t2 in 2u64..=12) {
        let g = |t| gbt_value(3, a, t).unwrap();
        prop_assert!(g(t1 + t2) <= g(t1) + g(t2));
        let (k1, k2) = (known(3, a, t1).unwrap(), known(3, a, t2).unwrap());
        if g(t1) + g(t2) == g(t1 + t2) && k1.n == g(t1) && k2.n == g(t2) {
            let c = juxtapose_all(&[
                k1.recipe.unwrap().build().unwrap(),
                k2.recipe.unwrap().build().unwrap(),
            ]).unwrap();
            let cert = certify(&c, (t1 + t2) as usize).unwrap();
            prop_assert_eq!(cert.verdict, Verdict::OptimalMeetsGbt);
        }
    }

    #[test]
    fn field_axioms_on_random_triples(idx in 0usize..20, a in any::<u8>(), b in any::<u8>(), c in any::<u8>()) {
        let orders = [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64, 81, 121, 125, 128, 256];
        let f = field_make(orders[idx]).unwrap();
        let q = orders[idx];
        let (a, b, c) = ((a as u32 % q) as u8, (b as u32 % q) as u8, (c as u32 % q) as u8);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        let p = f.characteristic();
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn debruijn_words_are_unordered(n in 1usize..=6, q in 2u64..=5) {
        let code = debruijn_code(n, q).unwrap();
        let rows = rows_of(&code);
        for x in &rows {
            for y in &rows {
                if x != y {
                    prop_assert!(n_above(x, y) > 0 && n_above(y, x) > 0);
                }
            }
        }
    }

    #[test]
    fn trivial_code_distance_is_exact(q in 2u64..=12, frac in 0.0f64..=1.0, t in 1u64..=6) {
        let a = 2 + ((q - 2) as f64 * frac) as u64;
        let code = trivial_code(q, a, t).unwrap();
        prop_assert_eq!(min_d_as(&rows_of(&code)), t as usize);
    }
}

/// A random resolvable set system: `classes` random partitions of `v`
/// points into `s` blocks of equal size.
fn random_packing() -> impl Strategy<Value = ResolvablePacking> {
    (2usize..=4, 2usize..=4, 1usize..=6, any::<u64>()).prop_map(|(s, k, classes, seed)| {
        let v = s * k;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let classes = (0..classes)
            .map(|_| {
                let mut pts: Vec<usize> = (0..v).collect();
                rand::seq::SliceRandom::shuffle(pts.as_mut_slice(), &mut rng);
                pts.chunks(k).map(<[usize]>::to_vec).collect()
            })
            .collect();
        ResolvablePacking::from_classes(v, classes).unwrap()
    })
}

fn random_seed() -> impl Strategy<Value = CirculantSeed> {
    (4usize..=11, 1usize..=3, any::<u64>()).prop_map(|(m, count, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let classes = (0..count)
            .map(|_| {
                let mut pts: Vec<usize> = (0..m).collect();
                rand::seq::SliceRandom::shuffle(pts.as_mut_slice(), &mut rng);
                let cut = 1 + (seed as usize % (m - 1));
                vec![pts[..cut].to_vec(), pts[cut..].to_vec()]
            })
            .collect();
        CirculantSeed::new(m, classes).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn packing_code_hamming_distance_bound(p in random_packing()) {
        let report = verify_resolvable(&p);
        // Two points sharing a block in every class would give repeated words.
        prop_assume!(report.lambda < report.classes);
        let code = packing_to_code(&p, None).unwrap();
        let rows = rows_of(&code);
        let min_h = (0..rows.len())
            .flat_map(|i| (i + 1..rows.len()).map(move |j| (i, j)))
            .map(|(i, j)| rows[i].iter().zip(&rows[j]).filter(|(a, b)| a != b).count())
            .min()
            .unwrap();
        prop_assert!(min_h + report.lambda >= report.classes);
    }

    #[test]
    fn circulant_rows_are_rotations(seed in random_seed()) {
        // Periodic seeds repeat rows and are rejected.
        let developed = develop_circulant(&seed);
        prop_assume!(developed.is_ok());
        let code = developed.unwrap();
        let m = seed.modulus();
        for block in 0..seed.base_classes().len() {
            let row0 = &code.word(0).symbols()[block * m..(block + 1) * m];
            for r in 0..m {
                let row = &code.word(r).symbols()[block * m..(block + 1) * m];
                for i in 0..m {
                    prop_assert_eq!(row[i], row0[(i + m - r) % m]);
                }
            }
        }
    }

    #[test]
    fn max_code_size_is_monotone(q in 2u16..=3, n in 1usize..=4, t in 1usize..=3) {
        let l = SearchLimits::default();
        let here = max_code_size(q, n, t, &l).unwrap().size;
        prop_assert!(max_code_size(q, n, t + 1, &l).unwrap().size <= here);
        prop_assert!(max_code_size(q, n + 1, t, &l).unwrap().size >= here);
    }

    #[test]
    fn min_length_respects_gbt(q in 2u16..=3, a in 2usize..=9, t in 1usize..=2) {
        let cert = min_length(q, a, t, 8, &SearchLimits::default(), None).unwrap();
        prop_assert!(cert.length as u64 >= gbt_value(q as u64, a as u64, t as u64).unwrap());
        prop_assert_eq!(cert.witness.size(), a);
        prop_assert!(cert.witness.size() < 2 || min_d_as(&rows_of(&cert.witness)) >= t);
    }

    #[test]
    fn decoder_corrects_symmetric_and_never_miscorrects(k in 2u64..=7, word in 0usize..13, weight in 1usize..=13, seed in any::<u64>()) {
        let code = construction_one(k).unwrap();
        let t = k as usize - 2;
        let idx = word % code.size();
        let sent = code.word(idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if t > 0 {
            let p = random_symmetric(&mut rng, sent.symbols(), code.q(), 1 + weight % t);
            let r = inject(sent, &p).unwrap();
            prop_assert_eq!(decode(&code, t, &r).unwrap(), DecodeOutcome::Corrected(idx));
        }
        let p = random_unidirectional(&mut rng, sent.symbols(), code.q(), weight);
        let r = inject(sent, &p).unwrap();
        match decode(&code, t, &r).unwrap() {
            DecodeOutcome::Corrected(i) => prop_assert_eq!(i, idx),
            DecodeOutcome::Detected => {}
            DecodeOutcome::Miscorrected(_) => prop_assert!(false, "decode never reports miscorrection"),
        }
    }

    #[test]
    fn trials_are_deterministic(seed in any::<u64>()) {
        let code = construction_one(5).unwrap();
        let camp = Campaign {
            symmetric_trials: 3000,
            unidirectional_trials: 5000,
            seed,
            symmetric_weights: None,
            unidirectional_weights: None,
        };
        let a = run_trials(&code, 3, &camp).unwrap();
        prop_assert_eq!(a, run_trials(&code, 3, &camp).unwrap());
        prop_assert_eq!(a.symmetric.corrected, 3000);
        prop_assert_eq!(a.total().miscorrected, 0);
    }
}
