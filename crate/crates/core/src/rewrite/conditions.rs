//! Checks of the four structural conditions on a φ-presentation, and the
//! order bound for alternating products of `a_i` (or `b_i`) with `P`.

use serde::Serialize;
use thiserror::Error;

use super::presentation::PhiPresentation;
use crate::kernel::{FpWord, Group, Syllable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub detail: String,
}

impl Verdict {
    fn ok(detail: impl Into<String>) -> Self {
        Verdict { pass: true, detail: detail.into() }
    }
    fn fail(detail: impl Into<String>) -> Self {
        Verdict { pass: false, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub nonempty_product: Verdict,
    pub outside_subgroups: Verdict,
    pub free_factor: Verdict,
    pub copy_structure: Verdict,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.nonempty_product.pass && self.outside_subgroups.pass && self.free_factor.pass && self.copy_structure.pass
    }
}

/// Search limits for the free-factor check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeFactorBounds {
    pub max_blocks: usize,
    pub max_exponent: i64,
    pub sample: usize,
}

impl Default for FreeFactorBounds {
    fn default() -> Self {
        FreeFactorBounds { max_blocks: 4, max_exponent: 3, sample: 3 }
    }
}

pub fn verify_lemma1_conditions(p: &PhiPresentation) -> ConditionReport {
    verify_lemma1_conditions_with(p, FreeFactorBounds::default())
}

pub fn verify_lemma1_conditions_with(p: &PhiPresentation, bounds: FreeFactorBounds) -> ConditionReport {
    let group = &p.group;
    let multi_t = p.source.as_ref().map_or(true, |w| w.cyclic_form(group).t_count() > 1);
    let nonempty_product = if p.m() >= 0 {
        Verdict::ok(format!("m = {}", p.m()))
    } else if multi_t {
        Verdict::fail("m = -1 although the source word has several t-letters")
    } else {
        Verdict::ok("m = -1 with a single t-letter")
    };

    let mut bad = Vec::new();
    for (i, a) in p.a.iter().enumerate() {
        if p.in_p(a) {
            bad.push(format!("a_{i} ∈ P"));
        }
    }
    for (i, b) in p.b.iter().enumerate() {
        if p.in_p_phi(b) {
            bad.push(format!("b_{i} ∈ P^φ"));
        }
    }
    let outside_subgroups = if bad.is_empty() { Verdict::ok("all a_i ∉ P, b_i ∉ P^φ") } else { Verdict::fail(bad.join("; ")) };

    let mut counterexamples = Vec::new();
    for (i, a) in p.a.iter().enumerate() {
        if p.in_p(a) {
            continue;
        }
        if let Some(bad) = free_factor_counterexample(group, a, 0..p.s, bounds) {
            counterexamples.push(format!("a_{i}: {bad}"));
        }
    }
    for (i, b) in p.b.iter().enumerate() {
        if p.in_p_phi(b) {
            continue;
        }
        if let Some(bad) = free_factor_counterexample(group, b, 1..p.s + 1, bounds) {
            counterexamples.push(format!("b_{i}: {bad}"));
        }
    }
    let free_factor = if counterexamples.is_empty() {
        Verdict::ok(format!(
            "no unforced relation among ≤{} blocks with |n| ≤ {}",
            bounds.max_blocks, bounds.max_exponent
        ))
    } else {
        Verdict::fail(counterexamples.join("; "))
    };

    let mut structural = Vec::new();
    let words = std::iter::once(("c".to_string(), &p.c))
        .chain(p.a.iter().enumerate().map(|(i, w)| (format!("a_{i}"), w)))
        .chain(p.b.iter().enumerate().map(|(i, w)| (format!("b_{i}"), w)));
    for (name, w) in words {
        if let Err(e) = w.validate(group, p.s) {
            structural.push(format!("{name}: {e}"));
        }
    }
    let copy_structure = if structural.is_empty() {
        Verdict::ok(format!("H has {} copies, φ shifts copy i to i+1", p.s + 1))
    } else {
        Verdict::fail(structural.join("; "))
    };

    ConditionReport { nonempty_product, outside_subgroups, free_factor, copy_structure }
}

/// Representative of the coset `A·u` with leading and trailing `A`-runs stripped
/// and conjugated away: `u' = x_r⁻¹ x_0⁻¹ u` for `u = x_0 · core · x_r`.
pub fn coset_core(group: &Group, u: &FpWord, subgroup: &std::ops::Range<usize>) -> FpWord {
    let u = u.reduce(group);
    let syl = u.syllables();
    let lead = syl.iter().take_while(|s| subgroup.contains(&s.copy)).count();
    if lead == syl.len() {
        return FpWord::identity();
    }
    let trail = syl.iter().rev().take_while(|s| subgroup.contains(&s.copy)).count();
    let x0 = FpWord(syl[..lead].to_vec());
    let xr = FpWord(syl[syl.len() - trail..].to_vec());
    xr.inverse(group).mul(&x0.inverse(group), group).mul(&u, group)
}

/// Deterministic finite sample of nonidentity elements of the subgroup on `copies`.
pub fn subgroup_sample(group: &Group, copies: &std::ops::Range<usize>, size: usize) -> Vec<FpWord> {
    let mut out = Vec::new();
    if copies.is_empty() || group.order() < 2 {
        return out;
    }
    let copies: Vec<usize> = copies.clone().collect();
    'outer: for g in 1..group.order() {
        for &c in &copies {
            if out.len() >= size {
                break 'outer;
            }
            out.push(FpWord::single(c, g));
        }
    }
    if out.len() < size && copies.len() >= 2 {
        out.push(FpWord(vec![Syllable::new(copies[0], 1), Syllable::new(copies[1], 1)]));
    }
    out.truncate(size);
    out
}

#[derive(Clone)]
enum Token {
    Gen(i64),
    Sub(FpWord),
}

/// Formal reduction in `A * ⟨u'⟩` where `⟨u'⟩` has order `order` (`None` = infinite).
fn formally_trivial(group: &Group, tokens: &[Token], order: Option<usize>) -> bool {
    let mut stack: Vec<Token> = Vec::new();
    for tok in tokens {
        let mut cur = tok.clone();
        loop {
            if let Token::Gen(n) = cur {
                if order.map_or(n == 0, |o| n.rem_euclid(o as i64) == 0) {
                    break;
                }
            }
            if let Token::Sub(ref w) = cur {
                if w.is_empty() {
                    break;
                }
            }
            match (stack.pop(), &cur) {
                (Some(Token::Gen(m)), Token::Gen(n)) => cur = Token::Gen(m + n),
                (Some(Token::Sub(x)), Token::Sub(y)) => cur = Token::Sub(x.mul(y, group)),
                (Some(top), _) => {
                    stack.push(top);
                    stack.push(cur);
                    break;
                }
                (None, _) => {
                    stack.push(cur);
                    break;
                }
            }
        }
    }
    stack.is_empty()
}

pub fn free_factor_counterexample(
    group: &Group,
    u: &FpWord,
    subgroup: std::ops::Range<usize>,
    bounds: FreeFactorBounds,
) -> Option<String> {
    let core = coset_core(group, u, &subgroup);
    let order = core.element_order(group);
    let sample = subgroup_sample(group, &subgroup, bounds.sample);
    let powers: Vec<(i64, FpWord)> = (1..=bounds.max_exponent)
        .flat_map(|n| [n, -n])
        .map(|n| (n, core.pow(n, group)))
        .collect();
    let mut tokens = Vec::new();
    search(group, &core, order, &sample, &powers, bounds.max_blocks, FpWord::identity(), &mut tokens)
}

#[allow(clippy::too_many_arguments)]
fn search(
    group: &Group,
    core: &FpWord,
    order: Option<usize>,
    sample: &[FpWord],
    powers: &[(i64, FpWord)],
    blocks_left: usize,
    prefix: FpWord,
    tokens: &mut Vec<Token>,
) -> Option<String> {
    if blocks_left == 0 {
        return None;
    }
    for (n, pw) in powers {
        let with_power = prefix.mul(pw, group);
        tokens.push(Token::Gen(*n));
        // closing factor: identity or any sampled element
        let closers = std::iter::once(None).chain(sample.iter().map(Some));
        for closer in closers {
            let value = match closer {
                Some(q) => with_power.mul(q, group),
                None => with_power.clone(),
            };
            if value.is_empty() {
                if let Some(q) = closer {
                    tokens.push(Token::Sub(q.clone()));
                }
                let forced = formally_trivial(group, tokens, order);
                if closer.is_some() {
                    tokens.pop();
                }
                if !forced {
                    return Some(format!("relation with exponents {:?} over core {core}", exponents(tokens)));
                }
            }
        }
        for q in sample {
            tokens.push(Token::Sub(q.clone()));
            let next = with_power.mul(q, group);
            if let Some(found) = search(group, core, order, sample, powers, blocks_left - 1, next, tokens) {
                return Some(found);
            }
            tokens.pop();
        }
        tokens.pop();
    }
    None
}

fn exponents(tokens: &[Token]) -> Vec<i64> {
    tokens
        .iter()
        .filter_map(|t| match t {
            Token::Gen(n) => Some(*n),
            Token::Sub(_) => None,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorollaryError {
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("exponent list and element list differ in length")]
    LengthMismatch,
    #[error("empty product")]
    Empty,
    #[error("exponent n_{0} is zero")]
    ZeroExponent(usize),
    #[error("element p_{0} is the identity but is not the last one")]
    InteriorIdentity(usize),
    #[error("element p_{0} is not in P")]
    NotInP(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryResult {
    pub is_trivial: bool,
    pub bound: i64,
    pub min_order: Option<usize>,
    /// `is_trivial ⇒ min_order ≤ bound`.
    pub implication_holds: bool,
}

/// Evaluates `x^{n_1} q_1 … x^{n_r} q_r` for `x = a_i` (with `q_j = p_j`) or
/// `x = b_i` (with `q_j = p_j^φ`) and reports the order bound
/// `max_{k ≤ l} |n_k + … + n_l|`.
pub fn corollary_bound_check(
    p: &PhiPresentation,
    side: Side,
    i: usize,
    exponents: &[i64],
    elements: &[FpWord],
) -> Result<CorollaryResult, CorollaryError> {
    let group = &p.group;
    let x = match side {
        Side::A => p.a.get(i),
        Side::B => p.b.get(i),
    }
    .ok_or(CorollaryError::IndexOutOfRange(i))?;
    if exponents.len() != elements.len() {
        return Err(CorollaryError::LengthMismatch);
    }
    if exponents.is_empty() {
        return Err(CorollaryError::Empty);
    }
    let r = exponents.len();
    for (j, (&n, q)) in exponents.iter().zip(elements).enumerate() {
        if n == 0 {
            return Err(CorollaryError::ZeroExponent(j + 1));
        }
        if !p.in_p(q) {
            return Err(CorollaryError::NotInP(j + 1));
        }
        if j + 1 != r && q.is_trivial(group) {
            return Err(CorollaryError::InteriorIdentity(j + 1));
        }
    }
    let mut value = FpWord::identity();
    for (&n, q) in exponents.iter().zip(elements) {
        let q = match side {
            Side::A => q.clone(),
            Side::B => p.phi(q),
        };
        value = value.mul(&x.pow(n, group), group).mul(&q, group);
    }
    let mut bound = 0i64;
    for k in 0..r {
        let mut acc = 0i64;
        for &n in &exponents[k..] {
            acc += n;
            bound = bound.max(acc.abs());
        }
    }
    let is_trivial = value.is_empty();
    let min_order = group.min_nonidentity_order();
    let implication_holds = !is_trivial || min_order.map_or(false, |o| o as i64 <= bound);
    Ok(CorollaryResult { is_trivial, bound, min_order, implication_holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(group: Group, s: usize, c: FpWord, a: FpWord, b: FpWord) -> PhiPresentation {
        PhiPresentation::new(group, s, 2, c, vec![a], vec![b]).unwrap()
    }

    fn z3_fixture() -> PhiPresentation {
        let x = FpWord::single(0, 1);
        pres(Group::cyclic(3), 0, x.clone(), x.clone(), x)
    }

    #[test]
    fn z3_fixture_passes() {
        assert!(verify_lemma1_conditions(&z3_fixture()).all_pass());
    }

    #[test]
    fn identity_a_fails_outside_subgroups() {
        let x = FpWord::single(0, 1);
        let p = pres(Group::cyclic(3), 0, x.clone(), FpWord::identity(), x);
        let r = verify_lemma1_conditions(&p);
        assert!(!r.outside_subgroups.pass);
        assert!(r.outside_subgroups.detail.contains("a_0"));
    }

    #[test]
    fn empty_product_with_multi_t_source_fails() {
        use crate::kernel::{TLetter, TWord};
        let g = Group::cyclic(3);
        let p = PhiPresentation::new(g, 0, 2, FpWord::single(0, 1), vec![], vec![])
            .unwrap()
            .with_source(TWord::from_letters(vec![
                TLetter::coeff(1),
                TLetter::t(1),
                TLetter::coeff(1),
                TLetter::t(-1),
                TLetter::coeff(1),
                TLetter::t(1),
            ]));
        assert!(!verify_lemma1_conditions(&p).nonempty_product.pass);
    }

    #[test]
    fn coset_core_conjugates_trailing_run() {
        let g = Group::cyclic(2);
        // u = y g^(1) y with y = g^(0): core must be an involution conjugate
        let u = FpWord::from_pairs(&[(0, 1), (1, 1), (0, 1)]);
        let core = coset_core(&g, &u, &(0..1));
        assert_eq!(core.element_order(&g), Some(2));
    }

    #[test]
    fn proper_core_has_no_relation() {
        let g = Group::cyclic(2);
        let u = FpWord::from_pairs(&[(0, 1), (1, 1)]);
        assert!(free_factor_counterexample(&g, &u, 0..1, FreeFactorBounds::default()).is_none());
    }

    #[test]
    fn naive_core_relation_is_found() {
        // stripping only the leading run of g^(1)·g^(0) leaves a core x with x·y·x·y = 1
        let g = Group::cyclic(2);
        let naive = FpWord::from_pairs(&[(1, 1), (0, 1)]);
        let sample = subgroup_sample(&g, &(0..1), 3);
        let powers: Vec<(i64, FpWord)> = [1i64, -1].iter().map(|&n| (n, naive.pow(n, &g))).collect();
        let found = search(&g, &naive, None, &sample, &powers, 2, FpWord::identity(), &mut Vec::new());
        assert!(found.is_some());
    }

    #[test]
    fn formal_reduction() {
        let g = Group::cyclic(3);
        let q = FpWord::single(0, 1);
        let toks = vec![Token::Gen(2), Token::Sub(q.clone()), Token::Gen(3), Token::Sub(q.inverse(&g)), Token::Gen(-2)];
        assert!(formally_trivial(&g, &toks, Some(3)));
        assert!(!formally_trivial(&g, &toks, None));
    }

    #[test]
    fn corollary_examples() {
        let x = FpWord::single(0, 1);
        let z2 = pres(Group::cyclic(2), 0, x.clone(), x.clone(), x.clone());
        let one = FpWord::identity();
        let r = corollary_bound_check(&z2, Side::A, 0, &[2], &[one.clone()]).unwrap();
        assert!(r.is_trivial);
        assert_eq!(r.bound, 2);
        assert!(r.implication_holds);
        let r = corollary_bound_check(&z2, Side::A, 0, &[1], &[one.clone()]).unwrap();
        assert!(!r.is_trivial);
        let z3 = z3_fixture();
        let r = corollary_bound_check(&z3, Side::A, 0, &[2], &[one]).unwrap();
        assert!(!r.is_trivial);
        assert!(r.implication_holds);
    }

    #[test]
    fn corollary_preconditions() {
        let z3 = z3_fixture();
        let one = FpWord::identity();
        assert_eq!(
            corollary_bound_check(&z3, Side::A, 0, &[0], &[one.clone()]).unwrap_err(),
            CorollaryError::ZeroExponent(1)
        );
        assert_eq!(
            corollary_bound_check(&z3, Side::A, 0, &[1, 1], &[one.clone(), one.clone()]).unwrap_err(),
            CorollaryError::InteriorIdentity(1)
        );
        assert_eq!(corollary_bound_check(&z3, Side::B, 3, &[1], &[one]).unwrap_err(), CorollaryError::IndexOutOfRange(3));
    }
}
