use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qdesign::design::{
    classical_design_lambda, lambda_scale, qary_design_lambda, support_multiplicity, to_gdd, BlockFamily,
    SupportMode,
};
use qdesign::io::{parse_blocks, write_blocks};
use qdesign::profile::code_profile;
use qdesign::regularity::t_regular;
use qdesign::weights::{weight_distribution, Method};
use qdesign::zoo;
use qdesign::{Budget, Elem, FieldSpec, LinearCode, RankMode};

fn random_code(rng: &mut ChaCha8Rng, q: u32, n: usize, k: usize) -> Option<LinearCode> {
    let f = FieldSpec::shared(q).unwrap();
    let rows = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q) as Elem).collect()).collect();
    LinearCode::from_generator(f, rows, RankMode::Strict).ok()
}

#[test]
fn punctured_dual_is_shortened_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut seen = 0;
    while seen < 20 {
        let q = [2, 3, 4, 5, 7][rng.gen_range(0..5)];
        let n = rng.gen_range(3..9);
        let k = rng.gen_range(1..n);
        let Some(c) = random_code(&mut rng, q, n, k) else { continue };
        for m in 0..n {
            assert_eq!(c.puncture(m).unwrap().dual(), c.dual().shorten(m).unwrap(), "{c:?} at {m}");
            assert_eq!(c.shorten(m).unwrap().dual(), c.dual().puncture(m).unwrap(), "{c:?} at {m}");
        }
        seen += 1;
    }
}

#[test]
fn simplex_gdd_round_trip() {
    let c = zoo::simplex(3, 3).unwrap().code;
    let fam = BlockFamily::from_code(&c, 9, &Budget::default()).unwrap();
    let gdd = to_gdd(&fam, 2, 3).unwrap();
    assert_eq!((gdd.group_size, gdd.groups.len(), gdd.points()), (2, 13, 26));
    let mut back = gdd.to_vectors();
    let mut orig: Vec<Vec<Elem>> = fam.iter().map(|b| b.to_vec()).collect();
    back.sort();
    orig.sort();
    assert_eq!(back, orig);
    assert!(to_gdd(&fam, 2, 4).is_err());
}

#[test]
fn multiset_index_scales_by_q_minus_one() {
    let g = zoo::ternary_golay().unwrap().code;
    let fam = BlockFamily::from_code(&g, 5, &Budget::default()).unwrap();
    assert!(support_multiplicity(&fam).holds);
    let d = classical_design_lambda(&fam, 4, SupportMode::Distinct).unwrap();
    let m = classical_design_lambda(&fam, 4, SupportMode::Multiset).unwrap();
    assert_eq!((d.lambda, m.lambda), (Some(1), Some(2)));
}

#[test]
fn golay_and_hamming_are_regular() {
    let b = Budget::default();
    let g = zoo::ternary_golay().unwrap().code;
    assert!(t_regular(&g, 2, &b).unwrap().regular);
    let h = zoo::hamming(3, 2).unwrap().code;
    assert!(t_regular(&h, 1, &b).unwrap().regular);
    let rs = zoo::reed_solomon(8, 3).unwrap().code;
    let p = code_profile(&rs, false, &b).unwrap();
    let t = p.d.unwrap() / 2;
    let designs = p
        .weights
        .iter()
        .all(|&w| qary_design_lambda(&BlockFamily::from_code(&rs, w, &b).unwrap(), t).unwrap().holds());
    assert_eq!(t_regular(&rs, t, &b).unwrap().regular, designs);
}

#[test]
fn zoo_profiles_match_their_expectations() {
    let b = Budget::default();
    let entries = [
        zoo::simplex(2, 4),
        zoo::hamming(2, 3),
        zoo::reed_solomon(7, 3),
        zoo::drs(8, 3),
        zoo::ternary_golay(),
        zoo::rt6(),
        zoo::pless_symmetry(12),
        zoo::tf1(4),
        zoo::tf1_dual(4),
        zoo::tf3(4),
    ];
    for e in entries {
        let e = e.unwrap();
        let p = code_profile(&e.code, false, &b).unwrap();
        assert!(e.golden_check(&p).is_empty(), "{}: {:?}", e.id, e.golden_check(&p));
    }
}

#[test]
fn block_file_round_trip_preserves_design() {
    let c = zoo::rt6().unwrap().code;
    let fam = BlockFamily::from_code(&c, 6, &Budget::default()).unwrap();
    let back = parse_blocks(&write_blocks(&fam)).unwrap();
    assert_eq!(back.flat(), fam.flat());
    assert_eq!(qary_design_lambda(&back, 3).unwrap().lambda, Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn direct_and_macwilliams_agree(seed in any::<u64>(), qi in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = [2, 3, 4, 5][qi];
        let n = rng.gen_range(2..9);
        let k = rng.gen_range(1..=n);
        if let Some(c) = random_code(&mut rng, q, n, k) {
            let b = Budget::default();
            let a = weight_distribution(&c, Method::Direct, &b).unwrap();
            prop_assert_eq!(&weight_distribution(&c, Method::MacWilliams, &b).unwrap(), &a);
            prop_assert_eq!(&a.macwilliams(q).unwrap(), &weight_distribution(&c.dual(), Method::Direct, &b).unwrap());
        }
    }

    #[test]
    fn designs_restrict_to_lower_strengths(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = [3u32, 4][rng.gen_range(0..2)];
        let n = rng.gen_range(4..8);
        let k = rng.gen_range(1..4);
        if let Some(c) = random_code(&mut rng, q, n, k) {
            let b = Budget::default();
            let p = code_profile(&c, false, &b).unwrap();
            for &w in &p.weights {
                let fam = BlockFamily::from_code(&c, w, &b).unwrap();
                for t in 1..=w.min(3) {
                    let chk = qary_design_lambda(&fam, t).unwrap();
                    if let Some(l) = chk.lambda {
                        for i in 1..t {
                            let lower = qary_design_lambda(&fam, i).unwrap();
                            let want = lambda_scale(l, t, i, n, w, q);
                            prop_assert!(lower.holds());
                            prop_assert_eq!(num_rational::BigRational::from_integer(lower.lambda.unwrap().into()), want);
                        }
                    }
                }
            }
        }
    }
}
