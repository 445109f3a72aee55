//! Rewriting a unimodular word into the canonical φ-presentation.
//!
//! The relator is kept as a cyclic sequence of `(h_j, ε_j)` pairs meaning
//! `h_1 t^{ε_1} h_2 t^{ε_2} …` with `h_j ∈ H`. Starting from the single-letter
//! form `(c t)` obtained by absorbing every `t` into copy indices, two moves are
//! applied until neither lowers `(s, m)` lexicographically:
//!
//! * `ReduceM` pinches `t⁻¹ a t → a^φ` (`a ∈ P`) or `t b t⁻¹ → b^{φ⁻¹}`
//!   (`b ∈ P^φ`), leftmost first, removing one block;
//! * `ReduceS` rewrites every top-copy syllable `g^(s)` as `t⁻¹ g^(s−1) t`; the
//!   candidate is kept only if, after exhausting `ReduceM`, it still has the
//!   shape `c t ∏ b_i t⁻¹ a_i t` and a smaller `s`.

use serde::Serialize;
use thiserror::Error;

use super::presentation::PhiPresentation;
use crate::kernel::{Elem, FpWord, Group, Syllable, TWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("word is not unimodular: t-exponent sum is {0}")]
    NotUnimodular(i64),
    #[error("power k = {0} is below 2")]
    PowerTooSmall(u32),
    #[error("rewrite fixpoint violates condition {condition}: {detail}")]
    NonMinimal { condition: u8, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    ReduceM,
    ReduceS,
    Conjugate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteMove {
    pub kind: MoveKind,
    pub before: String,
    pub after: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RewriteTrace {
    pub moves: Vec<RewriteMove>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteOutcome {
    /// `w` is conjugate to `g t`; the group is `G * ℤ_k`.
    FreeProduct { coeff: Elem },
    Presentation { presentation: PhiPresentation, trace: RewriteTrace },
}

impl RewriteOutcome {
    pub fn presentation(&self) -> Option<&PhiPresentation> {
        match self {
            RewriteOutcome::Presentation { presentation, .. } => Some(presentation),
            RewriteOutcome::FreeProduct { .. } => None,
        }
    }
}

/// Cyclic relator in pair form.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Relator {
    pairs: Vec<(FpWord, i8)>,
}

impl Relator {
    fn max_copy(&self) -> usize {
        self.pairs.iter().filter_map(|(h, _)| h.max_copy()).max().unwrap_or(0)
    }

    fn min_copy(&self) -> usize {
        self.pairs.iter().filter_map(|(h, _)| h.min_copy()).min().unwrap_or(0)
    }

    /// Shape `c t ∏ b_i t⁻¹ a_i t`: no two cyclically adjacent `t⁻¹`.
    fn has_canonical_shape(&self) -> bool {
        let n = self.pairs.len();
        n % 2 == 1 && (0..n).all(|j| !(self.pairs[j].1 == -1 && self.pairs[(j + 1) % n].1 == -1))
    }

    fn render(&self) -> String {
        let mut out = Vec::new();
        for (h, e) in &self.pairs {
            if !h.is_empty() {
                out.push(h.to_string());
            }
            out.push(if *e == 1 { "t".to_string() } else { "T".to_string() });
        }
        out.join(" ")
    }

    /// Conjugates by a power of `t` so the lowest copy in use is `0`.
    fn normalize(&mut self) -> Option<usize> {
        let low = self.min_copy();
        if low == 0 {
            return None;
        }
        for (h, _) in &mut self.pairs {
            *h = h.shift(-(low as i64)).expect("min copy is subtracted");
        }
        Some(low)
    }

    /// One leftmost pinch; `s` is the current top copy.
    fn pinch_once(&mut self, s: usize, group: &Group) -> bool {
        let n = self.pairs.len();
        if n < 3 {
            return false;
        }
        for j in 0..n {
            let j1 = (j + 1) % n;
            let (e0, e1) = (self.pairs[j].1, self.pairs[j1].1);
            if e0 != -e1 {
                continue;
            }
            let h = &self.pairs[j1].0;
            let replacement = if e0 == -1 && h.uses_only(&(0..s)) {
                h.shift(1)
            } else if e0 == 1 && h.uses_only(&(1..s + 1)) {
                h.shift(-1)
            } else {
                None
            };
            let Some(rep) = replacement else { continue };
            let j2 = (j + 2) % n;
            let merged = self.pairs[j].0.mul(&rep, group).mul(&self.pairs[j2].0, group);
            self.pairs[j2].0 = merged;
            let (lo, hi) = if j < j1 { (j, j1) } else { (j1, j) };
            self.pairs.remove(hi);
            self.pairs.remove(lo);
            return true;
        }
        false
    }

    fn top_rewrite(&self, s: usize) -> Relator {
        debug_assert!(s > 0);
        let mut pairs = Vec::new();
        for (h, e) in &self.pairs {
            let mut current: Vec<Syllable> = Vec::new();
            for syl in &h.0 {
                if syl.copy == s {
                    pairs.push((FpWord(std::mem::take(&mut current)), -1));
                    pairs.push((FpWord::single(s - 1, syl.elem), 1));
                } else {
                    current.push(*syl);
                }
            }
            pairs.push((FpWord(current), *e));
        }
        Relator { pairs }
    }
}

fn exhaust_reduce_m(rel: &mut Relator, group: &Group, trace: Option<&mut RewriteTrace>) {
    let mut trace = trace;
    loop {
        let s = rel.max_copy();
        let before = trace.as_ref().map(|_| rel.render());
        if !rel.pinch_once(s, group) {
            break;
        }
        if let (Some(t), Some(before)) = (trace.as_deref_mut(), before) {
            t.moves.push(RewriteMove { kind: MoveKind::ReduceM, before, after: rel.render() });
        }
        normalize_logged(rel, trace.as_deref_mut());
    }
}

fn normalize_logged(rel: &mut Relator, trace: Option<&mut RewriteTrace>) {
    let before = rel.render();
    if rel.normalize().is_some() {
        if let Some(t) = trace {
            t.moves.push(RewriteMove { kind: MoveKind::Conjugate, before, after: rel.render() });
        }
    }
}

/// Runs the rewriting procedure on `w`; `k` is the relator power.
pub fn lemma1_rewrite(group: &Group, w: &TWord, k: u32) -> Result<RewriteOutcome, RewriteError> {
    if k < 2 {
        return Err(RewriteError::PowerTooSmall(k));
    }
    let form = w.cyclic_form(group);
    let sum = form.exponent_sum();
    if sum != 1 {
        return Err(RewriteError::NotUnimodular(sum));
    }
    if form.pairs.len() == 1 {
        return Ok(RewriteOutcome::FreeProduct { coeff: form.pairs[0].0 });
    }

    // w = (∏ g_j^{t^{k_j}}) t with k_j = −(ε_1 + … + ε_{j−1}).
    let mut trace = RewriteTrace::default();
    let mut height: i64 = 0;
    let mut letters = Vec::new();
    for &(g, e) in &form.pairs {
        if g != 0 {
            letters.push((-height, g));
        }
        height += e as i64;
    }
    let low = letters.iter().map(|&(l, _)| l).min().unwrap_or(0);
    let c = FpWord(letters.iter().map(|&(l, g)| Syllable::new((l - low) as usize, g)).collect()).reduce(group);
    let mut rel = Relator { pairs: vec![(c, 1)] };
    trace.moves.push(RewriteMove {
        kind: MoveKind::Conjugate,
        before: TWord::from_pairs(&form.pairs).to_string(),
        after: rel.render(),
    });

    loop {
        exhaust_reduce_m(&mut rel, group, Some(&mut trace));
        let s = rel.max_copy();
        if s == 0 {
            break;
        }
        let mut candidate = rel.top_rewrite(s);
        let mut sub = RewriteTrace::default();
        sub.moves.push(RewriteMove { kind: MoveKind::ReduceS, before: rel.render(), after: candidate.render() });
        exhaust_reduce_m(&mut candidate, group, Some(&mut sub));
        if candidate.has_canonical_shape() && candidate.max_copy() < s {
            trace.moves.extend(sub.moves);
            rel = candidate;
        } else {
            break;
        }
    }

    let presentation = into_presentation(group, &rel, k)?.with_source(w.clone());
    assert_minimal(&presentation)?;
    Ok(RewriteOutcome::Presentation { presentation, trace })
}

fn into_presentation(group: &Group, rel: &Relator, k: u32) -> Result<PhiPresentation, RewriteError> {
    if !rel.has_canonical_shape() {
        return Err(RewriteError::NonMinimal { condition: 4, detail: format!("relator {} lost its shape", rel.render()) });
    }
    let n = rel.pairs.len();
    // c sits between two consecutive t^{+1}
    let start = (0..n)
        .find(|&j| rel.pairs[(j + n - 1) % n].1 == 1 && rel.pairs[j].1 == 1)
        .expect("canonical shape has exactly one ++ junction");
    let at = |i: usize| rel.pairs[(start + i) % n].0.clone();
    let c = at(0);
    let blocks = (n - 1) / 2;
    let b = (0..blocks).map(|i| at(1 + 2 * i)).collect();
    let a = (0..blocks).map(|i| at(2 + 2 * i)).collect();
    let s = rel.max_copy();
    PhiPresentation::new(group.clone(), s, k, c, a, b)
        .map_err(|e| RewriteError::NonMinimal { condition: 4, detail: e.to_string() })
}

fn assert_minimal(p: &PhiPresentation) -> Result<(), RewriteError> {
    if p.m() < 0 {
        return Err(RewriteError::NonMinimal { condition: 1, detail: "empty product with several t-letters".into() });
    }
    for (i, a) in p.a.iter().enumerate() {
        if p.in_p(a) {
            return Err(RewriteError::NonMinimal { condition: 2, detail: format!("a_{i} = {a} lies in P") });
        }
    }
    for (i, b) in p.b.iter().enumerate() {
        if p.in_p_phi(b) {
            return Err(RewriteError::NonMinimal { condition: 2, detail: format!("b_{i} = {b} lies in P^φ") });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::TLetter;

    fn word(spec: &[i64]) -> TWord {
        // positive entries are coefficients, 100/-100 stand for t/t⁻¹
        TWord::from_letters(
            spec.iter()
                .map(|&x| match x {
                    100 => TLetter::t(1),
                    -100 => TLetter::t(-1),
                    g => TLetter::coeff(g as usize),
                })
                .collect(),
        )
    }

    #[test]
    fn single_t_is_free_product() {
        let g = Group::cyclic(3);
        let out = lemma1_rewrite(&g, &word(&[1, 100]), 2).unwrap();
        assert_eq!(out, RewriteOutcome::FreeProduct { coeff: 1 });
    }

    #[test]
    fn z3_three_letter_example() {
        let g = Group::cyclic(3);
        let w = word(&[1, 100, 1, -100, 1, 100]);
        let out = lemma1_rewrite(&g, &w, 2).unwrap();
        let p = out.presentation().unwrap();
        assert_eq!(p.s, 0);
        assert_eq!(p.m(), 0);
        let x = FpWord::single(0, 1);
        assert_eq!(p.c, x);
        assert_eq!(p.a, vec![x.clone()]);
        assert_eq!(p.b, vec![x]);
    }

    #[test]
    fn not_unimodular() {
        let g = Group::cyclic(2);
        let err = lemma1_rewrite(&g, &word(&[1, 100, 1, 100]), 2).unwrap_err();
        assert_eq!(err, RewriteError::NotUnimodular(2));
    }

    #[test]
    fn power_checked() {
        let g = Group::cyclic(2);
        assert_eq!(lemma1_rewrite(&g, &word(&[1, 100]), 1).unwrap_err(), RewriteError::PowerTooSmall(1));
    }

    #[test]
    fn top_copy_forces_reduce_s() {
        // g t t h t⁻¹: levels of g and h differ by 2 before any move
        let g = Group::cyclic(3);
        let w = word(&[1, 100, 100, 2, -100]);
        let out = lemma1_rewrite(&g, &w, 2).unwrap();
        let RewriteOutcome::Presentation { presentation, trace } = out else { panic!() };
        assert!(presentation.m() >= 0);
        assert!(trace.moves.iter().any(|m| m.kind == MoveKind::ReduceS));
    }
}
