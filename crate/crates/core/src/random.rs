//! Seeded generators for groups, words and presentations.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::{FpWord, Group, Syllable, TLetter, TWord};
use crate::rewrite::{HLetter, HWord, PhiPresentation};

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// ℤ2, ℤ3 or S3.
pub fn small_group(rng: &mut Rng8) -> Group {
    match rng.gen_range(0..3) {
        0 => Group::cyclic(2),
        1 => Group::cyclic(3),
        _ => Group::symmetric3(),
    }
}

/// A unimodular word with an odd number `≤ max_t` of `t`-letters and random coefficients.
pub fn unimodular_word(rng: &mut Rng8, group: &Group, max_t: usize) -> TWord {
    let n = 2 * rng.gen_range(0..=(max_t.max(1) - 1) / 2) + 1;
    let mut signs: Vec<i8> = (0..n).map(|j| if j <= n / 2 { 1 } else { -1 }).collect();
    signs.shuffle(rng);
    let mut w = TWord::new();
    for e in signs {
        let g = rng.gen_range(0..group.order());
        if g != 0 {
            w.push(TLetter::coeff(g));
        }
        w.push(TLetter::t(e));
    }
    w
}

pub fn fp_word(rng: &mut Rng8, group: &Group, copies: std::ops::Range<usize>, len: usize) -> FpWord {
    let syl: Vec<Syllable> = (0..len)
        .map(|_| Syllable::new(rng.gen_range(copies.clone()), rng.gen_range(1..group.order())))
        .collect();
    FpWord(syl)
}

/// Random word over `H ∪ {t^{±1}}` with at most `max_len` letters.
pub fn hword(rng: &mut Rng8, p: &PhiPresentation, max_len: usize) -> HWord {
    let len = rng.gen_range(0..=max_len);
    let mut w = HWord::new();
    for _ in 0..len {
        if rng.gen_bool(0.4) {
            w.push_t(if rng.gen_bool(0.5) { 1 } else { -1 });
        } else {
            w.0.push(HLetter::Syl(Syllable::new(rng.gen_range(0..=p.s), rng.gen_range(1..p.group.order()))));
        }
    }
    w
}

/// A word trivial in `⟨H, t | p^t = p^φ⟩`: a conjugate of a digon relator, or of
/// a product of two, with at most `max_len` letters when possible.
pub fn trivial_hword(rng: &mut Rng8, p: &PhiPresentation, max_len: usize) -> HWord {
    let group = &p.group;
    let digon = |rng: &mut Rng8| -> HWord {
        if p.s == 0 {
            return HWord::new();
        }
        let q = fp_word(rng, group, 0..p.s, 1);
        p.digon_relator(&q)
    };
    let mut core = digon(rng);
    if rng.gen_bool(0.3) {
        core = core.concat(&digon(rng));
    }
    let room = max_len.saturating_sub(core.0.len()) / 2;
    let x = hword(rng, p, room);
    x.concat(&core).concat(&x.inverse(group))
}

/// A random presentation satisfying `a_i ∉ P`, `b_i ∉ P^φ`, over `group` with `s ≤ max_s` and `m ≤ max_m`.
pub fn presentation(rng: &mut Rng8, group: &Group, max_s: usize, max_m: usize, k: u32) -> PhiPresentation {
    loop {
        let s = rng.gen_range(0..=max_s);
        let m = rng.gen_range(0..=max_m);
        let len = |rng: &mut Rng8| rng.gen_range(1..=2);
        let c_len = rng.gen_range(0..=1);
        let c = fp_word(rng, group, 0..s + 1, c_len);
        let block = |rng: &mut Rng8| {
            let n = len(rng);
            fp_word(rng, group, 0..s + 1, n)
        };
        let a: Vec<FpWord> = (0..=m).map(|_| block(rng)).collect();
        let b: Vec<FpWord> = (0..=m).map(|_| block(rng)).collect();
        if let Ok(p) = PhiPresentation::new(group.clone(), s, k, c, a, b) {
            if p.a.iter().all(|a| !p.in_p(a)) && p.b.iter().all(|b| !p.in_p_phi(b)) {
                return p;
            }
        }
    }
}
