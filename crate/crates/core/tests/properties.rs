use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use relpres_core::curvature::gauss_bonnet_report;
use relpres_core::diagram::HowieDiagram;
use relpres_core::fixtures;
use relpres_core::fuzz::britton_trial;
use relpres_core::kernel::{FpWord, Group, TLetter, TWord};
use relpres_core::motion::{frac, standard_motion, Q};
use relpres_core::random::{self, Rng8};
use relpres_core::surface::random_map_with;

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply b, then a
    b.iter().map(|&i| a[i]).collect()
}

fn invert(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j] = i;
    }
    out
}

fn cycle_type(a: &Perm) -> Vec<usize> {
    let mut seen = vec![false; a.len()];
    let mut out = Vec::new();
    for s in 0..a.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = a[i];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort();
    out
}

/// Left-regular action of `g`, twisted by `pi`.
fn regular(group: &Group, g: usize, pi: &Perm) -> Perm {
    let left: Perm = (0..group.order()).map(|x| group.mul(g, x)).collect();
    compose(pi, &compose(&left, &invert(pi)))
}

/// `g ↦ left multiplication`, `t ↦ tau`, plus the `t`-exponent sum.
fn image_t(group: &Group, w: &TWord, tau: &Perm) -> (Perm, i64) {
    let mut acc: Perm = (0..group.order()).collect();
    let id: Perm = acc.clone();
    let mut sum = 0;
    for l in &w.letters {
        let p = match *l {
            TLetter::Coeff { g } => regular(group, g, &id),
            TLetter::T { t } => {
                sum += t as i64;
                if t > 0 {
                    tau.clone()
                } else {
                    invert(tau)
                }
            }
        };
        acc = compose(&acc, &p);
    }
    (acc, sum)
}

/// Copy `i` acts through the regular action conjugated by `pis[i]`.
fn image_fp(group: &Group, w: &FpWord, pis: &[Perm]) -> Perm {
    w.syllables().iter().fold((0..group.order()).collect(), |acc, s| compose(&acc, &regular(group, s.elem, &pis[s.copy])))
}

fn perm(rng: &mut Rng8, n: usize) -> Perm {
    let mut p: Perm = (0..n).collect();
    p.shuffle(rng);
    p
}

fn tword(rng: &mut Rng8, group: &Group, len: usize) -> TWord {
    let letters = (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                TLetter::t(if rng.gen_bool(0.5) { 1 } else { -1 })
            } else {
                TLetter::coeff(rng.gen_range(0..group.order()))
            }
        })
        .collect();
    TWord::from_letters(letters)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fp_reduce_idempotent_and_faithful(seed in any::<u64>(), len in 0usize..14) {
        let mut rng = random::rng(seed);
        let group = random::small_group(&mut rng);
        let w = random::fp_word(&mut rng, &group, 0..3, len);
        let pis: Vec<Perm> = (0..3).map(|_| perm(&mut rng, group.order())).collect();
        let r = w.reduce(&group);
        prop_assert_eq!(r.reduce(&group), r.clone());
        prop_assert_eq!(image_fp(&group, &r, &pis), image_fp(&group, &w, &pis));
        prop_assert!(w.mul(&w.inverse(&group), &group).is_empty());
        for pair in r.syllables().windows(2) {
            prop_assert_ne!(pair[0].copy, pair[1].copy);
        }
    }

    #[test]
    fn tword_conjugation_preserves_class(seed in any::<u64>(), len in 1usize..10, xlen in 0usize..8) {
        let mut rng = random::rng(seed);
        let group = random::small_group(&mut rng);
        let w = tword(&mut rng, &group, len);
        let x = tword(&mut rng, &group, xlen);
        let tau = perm(&mut rng, group.order());
        let v = w.conjugate_by(&x, &group);
        prop_assert!(w.is_conjugate_to(&v, &group));
        prop_assert!(v.is_conjugate_to(&w, &group));
        let (pw, sw) = image_t(&group, &w, &tau);
        let (pv, sv) = image_t(&group, &v, &tau);
        prop_assert_eq!(sw, sv);
        prop_assert_eq!(cycle_type(&pw), cycle_type(&pv));
        prop_assert_eq!(image_t(&group, &w.reduce(&group), &tau), image_t(&group, &w, &tau));
        prop_assert_eq!(w.cyclic_form(&group).exponent_sum(), sw);
    }

    #[test]
    fn britton_matches_oracle(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let (_, verdict) = britton_trial(&mut rng);
        prop_assert_eq!(verdict, Ok(()));
    }

    #[test]
    fn gauss_bonnet_identity(seed in any::<u64>(), degrees in prop::collection::vec(1usize..=8, 1..8)) {
        let mut degrees = degrees;
        if degrees.iter().sum::<usize>() % 2 == 1 {
            degrees.push(1);
        }
        let mut rng = random::rng(seed);
        let map = random_map_with(&degrees, &mut rng).unwrap();
        let nu: Vec<BigRational> = (0..map.dart_count())
            .map(|_| BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=7))))
            .collect();
        let report = gauss_bonnet_report(&map, &nu).unwrap();
        prop_assert!(report.identity_holds());
        let v = map.vertices().len() as i64;
        prop_assert_eq!(report.chi, v - map.edge_count() as i64 + map.face_count() as i64);
    }

    #[test]
    fn corner_types_alternate(seed in any::<u64>(), degrees in prop::collection::vec(1usize..=6, 1..7)) {
        let mut degrees = degrees;
        if degrees.iter().sum::<usize>() % 2 == 1 {
            degrees.push(1);
        }
        let mut rng = random::rng(seed);
        let map = random_map_with(&degrees, &mut rng).unwrap();
        let forward: Vec<usize> = map.edges().iter().map(|&(a, b)| if rng.gen_bool(0.5) { a } else { b }).collect();
        let labels = vec![FpWord::identity(); map.dart_count()];
        let d = HowieDiagram::new(map, &forward, labels, vec![], vec![], fixtures::cyclic_presentation(3, 2)).unwrap();
        for v in 0..d.map.vertices().len() {
            prop_assert!(d.lemma4_holds(v), "vertex {}", v);
        }
    }

    #[test]
    fn rho_is_a_permutation(seed in any::<u64>(), degrees in prop::collection::vec(1usize..=8, 1..8)) {
        let mut degrees = degrees;
        if degrees.iter().sum::<usize>() % 2 == 1 {
            degrees.push(1);
        }
        let mut rng = random::rng(seed);
        let map = random_map_with(&degrees, &mut rng).unwrap();
        prop_assert!(map.rho_is_permutation());
        let corners: usize = map.vertices().iter().map(Vec::len).sum();
        prop_assert_eq!(corners, map.dart_count());
    }

    #[test]
    fn motion_shifts_cars_by_one_period(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        for (name, d) in fixtures::corpus() {
            let mm = standard_motion(&d).unwrap();
            let scale = 1000 * *mm.circle.numer();
            let den = *mm.circle.denom() * 1000;
            for _ in 0..50 {
                let t: Q = frac(rng.gen_range(0..scale), den);
                for (f, cars) in mm.faces.iter().enumerate() {
                    let n = d.map.face(f).len();
                    for j in 0..cars.len() {
                        let next = &cars[(j + 1) % cars.len()];
                        prop_assert_eq!(cars[j].at(t + mm.period, n, mm.circle), next.at(t, n, mm.circle), "{} face {} car {}", name, f, j);
                    }
                }
            }
        }
    }
}
