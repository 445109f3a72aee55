use std::fmt;

use thiserror::Error;

use crate::kernel::{FpError, FpWord, Group, Syllable, TLetter, TWord};

/// A letter of a word over `H ∪ {t^{±1}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HLetter {
    Syl(Syllable),
    T(i8),
}

/// A word over `H ∪ {t^{±1}}`, `H = G^(0) * … * G^(s)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HWord(pub Vec<HLetter>);

impl HWord {
    pub fn new() -> Self {
        HWord(Vec::new())
    }

    pub fn from_fp(w: &FpWord) -> Self {
        HWord(w.0.iter().map(|&s| HLetter::Syl(s)).collect())
    }

    /// `h_1 t^{ε_1} h_2 t^{ε_2} …` from `(ε, h)` pairs read as `t^ε h`.
    pub fn from_signed_pairs(pairs: &[(i8, FpWord)]) -> Self {
        let mut out = HWord::new();
        for (e, h) in pairs {
            out.0.push(HLetter::T(*e));
            out.push_fp(h);
        }
        out
    }

    pub fn push_fp(&mut self, w: &FpWord) {
        self.0.extend(w.0.iter().map(|&s| HLetter::Syl(s)));
    }

    pub fn push_t(&mut self, e: i8) {
        self.0.push(HLetter::T(e));
    }

    pub fn concat(&self, other: &HWord) -> HWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        HWord(v)
    }

    pub fn inverse(&self, group: &Group) -> HWord {
        HWord(
            self.0
                .iter()
                .rev()
                .map(|l| match *l {
                    HLetter::Syl(s) => HLetter::Syl(Syllable::new(s.copy, group.inv(s.elem))),
                    HLetter::T(e) => HLetter::T(-e),
                })
                .collect(),
        )
    }

    pub fn pow(&self, n: i64, group: &Group) -> HWord {
        let base = if n < 0 { self.inverse(group) } else { self.clone() };
        let mut v = Vec::with_capacity(base.0.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        HWord(v)
    }

    pub fn t_count(&self) -> usize {
        self.0.iter().filter(|l| matches!(l, HLetter::T(_))).count()
    }

    pub fn max_copy(&self) -> Option<usize> {
        self.0
            .iter()
            .filter_map(|l| match l {
                HLetter::Syl(s) => Some(s.copy),
                HLetter::T(_) => None,
            })
            .max()
    }

    /// Segments `h_0, (ε_1, h_1), …` of the word, coefficients reduced in `H`.
    pub fn segments(&self, group: &Group) -> (FpWord, Vec<(i8, FpWord)>) {
        let mut head = Vec::new();
        let mut rest: Vec<(i8, Vec<Syllable>)> = Vec::new();
        for l in &self.0 {
            match *l {
                HLetter::Syl(s) => match rest.last_mut() {
                    Some((_, h)) => h.push(s),
                    None => head.push(s),
                },
                HLetter::T(e) => rest.push((e, Vec::new())),
            }
        }
        (
            FpWord(head).reduce(group),
            rest.into_iter().map(|(e, h)| (e, FpWord(h).reduce(group))).collect(),
        )
    }

    /// Normal form in the free product `H * ⟨t⟩` (no HNN pinches).
    pub fn free_reduce(&self, group: &Group) -> HWord {
        let (head, rest) = self.segments(group);
        let mut coeffs = vec![head];
        let mut ts: Vec<i8> = Vec::new();
        for (e, h) in rest {
            if ts.last() == Some(&-e) && coeffs.last().map_or(false, FpWord::is_empty) {
                ts.pop();
                coeffs.pop();
                let last = coeffs.last_mut().unwrap();
                *last = last.mul(&h, group);
            } else {
                ts.push(e);
                coeffs.push(h);
            }
        }
        assemble(&coeffs, &ts)
    }

    /// Image under `g^(i) ↦ t^{-i} g t^{i}`, `t ↦ t` (not reduced).
    pub fn embed(&self) -> TWord {
        let mut out = TWord::new();
        for l in &self.0 {
            match *l {
                HLetter::Syl(s) => {
                    for _ in 0..s.copy {
                        out.push(TLetter::t(-1));
                    }
                    out.push(TLetter::coeff(s.elem));
                    for _ in 0..s.copy {
                        out.push(TLetter::t(1));
                    }
                }
                HLetter::T(e) => out.push(TLetter::t(e)),
            }
        }
        out
    }
}

pub(crate) fn assemble(coeffs: &[FpWord], ts: &[i8]) -> HWord {
    let mut out = HWord::new();
    out.push_fp(&coeffs[0]);
    for (e, h) in ts.iter().zip(&coeffs[1..]) {
        out.push_t(*e);
        out.push_fp(h);
    }
    out
}

impl fmt::Display for HWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| match *l {
                HLetter::Syl(s) => format!("g{}^({})", s.elem, s.copy),
                HLetter::T(1) => "t".into(),
                HLetter::T(_) => "T".into(),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("power k = {0} is below 2")]
    PowerTooSmall(u32),
    #[error("m = {m} does not match {a} a-words and {b} b-words")]
    BlockCountMismatch { m: i64, a: usize, b: usize },
    #[error("word {name}: {source}")]
    Word { name: String, source: FpError },
}

/// The presentation `⟨H, t | p^t = p^φ (p ∈ P∖1), (c t ∏ b_i a_i^t)^k⟩` with
/// `H = G^(0) * … * G^(s)`, `P = G^(0) * … * G^(s-1)` and `φ` the copy shift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiPresentation {
    pub group: Group,
    pub s: usize,
    pub k: u32,
    pub c: FpWord,
    pub a: Vec<FpWord>,
    pub b: Vec<FpWord>,
    /// Word of `G * ⟨t⟩` the presentation was derived from, if known.
    pub source: Option<TWord>,
}

impl PhiPresentation {
    pub fn new(
        group: Group,
        s: usize,
        k: u32,
        c: FpWord,
        a: Vec<FpWord>,
        b: Vec<FpWord>,
    ) -> Result<Self, PresentationError> {
        if k < 2 {
            return Err(PresentationError::PowerTooSmall(k));
        }
        if a.len() != b.len() {
            return Err(PresentationError::BlockCountMismatch {
                m: a.len() as i64 - 1,
                a: a.len(),
                b: b.len(),
            });
        }
        let check = |name: String, w: &FpWord| {
            w.reduce_checked(&group, s).map_err(|source| PresentationError::Word { name, source })
        };
        let c = check("c".into(), &c)?;
        let a = a.iter().enumerate().map(|(i, w)| check(format!("a_{i}"), w)).collect::<Result<_, _>>()?;
        let b = b.iter().enumerate().map(|(i, w)| check(format!("b_{i}"), w)).collect::<Result<_, _>>()?;
        Ok(PhiPresentation { group, s, k, c, a, b, source: None })
    }

    pub fn with_source(mut self, source: TWord) -> Self {
        self.source = Some(source);
        self
    }

    /// Number of `b_i a_i^t` blocks minus one; `-1` when the product is empty.
    pub fn m(&self) -> i64 {
        self.a.len() as i64 - 1
    }

    /// `t`-letters in one period of the relator: `2m + 3`.
    pub fn period_len(&self) -> usize {
        2 * self.a.len() + 1
    }

    pub fn in_p(&self, h: &FpWord) -> bool {
        h.reduce(&self.group).uses_only(&(0..self.s))
    }

    pub fn in_p_phi(&self, h: &FpWord) -> bool {
        h.reduce(&self.group).uses_only(&(1..self.s + 1))
    }

    pub fn phi(&self, h: &FpWord) -> FpWord {
        h.shift(1).expect("shift up never underflows")
    }

    pub fn phi_inv(&self, h: &FpWord) -> Option<FpWord> {
        h.shift(-1)
    }

    /// One period read anticlockwise starting at the edge after `c`, as `(ε, corner)` pairs:
    /// `(+, b_0), (−, a_0), …, (+, b_m), (−, a_m), (+, c)`.
    pub fn period_pairs(&self) -> Vec<(i8, FpWord)> {
        let mut out = Vec::with_capacity(self.period_len());
        for (a, b) in self.a.iter().zip(&self.b) {
            out.push((1, b.clone()));
            out.push((-1, a.clone()));
        }
        out.push((1, self.c.clone()));
        out
    }

    /// Boundary pairs of a face labelled by `relator^{sign·k}`.
    pub fn large_face_pairs(&self, positive: bool) -> Vec<(i8, FpWord)> {
        let period = self.period_pairs();
        let one: Vec<(i8, FpWord)> = if positive {
            period
        } else {
            // Inverse of t^{ε_1} x_1 … t^{ε_n} x_n is x_n⁻¹ t^{-ε_n} … x_1⁻¹ t^{-ε_1};
            // read as (ε, corner) pairs starting at t^{-ε_n}.
            let n = period.len();
            (0..n)
                .map(|j| {
                    let e = -period[n - 1 - j].0;
                    let corner = period[(2 * n - 2 - j) % n].1.inverse(&self.group);
                    (e, corner)
                })
                .collect()
        };
        let mut out = Vec::with_capacity(one.len() * self.k as usize);
        for _ in 0..self.k {
            out.extend(one.iter().cloned());
        }
        out
    }

    /// Digon boundary `t⁻¹ p t (p^φ)⁻¹` as `(−, p), (+, (p^φ)⁻¹)`.
    pub fn digon_pairs(&self, p: &FpWord) -> Vec<(i8, FpWord)> {
        vec![(-1, p.clone()), (1, self.phi(p).inverse(&self.group))]
    }

    /// One period `c t b_0 t⁻¹ a_0 t … b_m t⁻¹ a_m t`.
    pub fn relator_period(&self) -> HWord {
        let mut w = HWord::from_fp(&self.c);
        w.push_t(1);
        for (a, b) in self.a.iter().zip(&self.b) {
            w.push_fp(b);
            w.push_t(-1);
            w.push_fp(a);
            w.push_t(1);
        }
        w
    }

    pub fn relator(&self) -> HWord {
        self.relator_period().pow(self.k as i64, &self.group)
    }

    /// Digon relator `p^{-t} p^φ = t⁻¹ p⁻¹ t p^φ`.
    pub fn digon_relator(&self, p: &FpWord) -> HWord {
        let mut w = HWord::new();
        w.push_t(-1);
        w.push_fp(&p.inverse(&self.group));
        w.push_t(1);
        w.push_fp(&self.phi(p));
        w
    }
}

impl fmt::Display for PhiPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={} m={} k={} relator=({})^{}", self.s, self.m(), self.k, self.relator_period(), self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3_pres() -> PhiPresentation {
        let g = Group::cyclic(3);
        let x = FpWord::single(0, 1);
        PhiPresentation::new(g, 0, 2, x.clone(), vec![x.clone()], vec![x]).unwrap()
    }

    #[test]
    fn period_shape() {
        let p = z3_pres();
        assert_eq!(p.m(), 0);
        assert_eq!(p.period_len(), 3);
        assert_eq!(p.relator_period().to_string(), "g1^(0) t g1^(0) T g1^(0) t");
    }

    #[test]
    fn negative_face_reads_inverse() {
        let p = z3_pres();
        let pos = HWord::from_signed_pairs(&p.large_face_pairs(true));
        let neg = HWord::from_signed_pairs(&p.large_face_pairs(false));
        let inv = pos.inverse(&p.group).embed();
        assert!(inv.is_conjugate_to(&neg.embed(), &p.group));
        assert_eq!(neg.0[0], HLetter::T(-1));
    }

    #[test]
    fn embed_substitutes_levels() {
        let w = HWord(vec![HLetter::Syl(Syllable::new(2, 1)), HLetter::T(1)]);
        assert_eq!(w.embed().to_string(), "T T g1 t t t");
    }

    #[test]
    fn free_reduce_cancels_empty_pinches_only() {
        let g = Group::cyclic(3);
        let w = HWord(vec![
            HLetter::Syl(Syllable::new(0, 1)),
            HLetter::T(-1),
            HLetter::T(1),
            HLetter::Syl(Syllable::new(0, 2)),
            HLetter::T(-1),
            HLetter::Syl(Syllable::new(0, 1)),
            HLetter::T(1),
        ]);
        assert_eq!(w.free_reduce(&g).to_string(), "T g1^(0) t");
    }
}
