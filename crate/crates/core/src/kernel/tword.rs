//! Words in `G * ⟨t⟩` with the stable letter written as `t^{±1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::free_product::is_rotation;
use super::group::{Elem, Group};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TLetter {
    Coeff {
        g: Elem,
    },
    T {
        t: i8,
    },
}

impl TLetter {
    pub fn coeff(g: Elem) -> Self {
        TLetter::Coeff { g }
    }

    pub fn t(exp: i8) -> Self {
        debug_assert!(exp == 1 || exp == -1);
        TLetter::T { t: exp }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TWord {
    pub letters: Vec<TLetter>,
}

/// Cyclically reduced word written as `g_1 t^{ε_1} … g_n t^{ε_n}` (coefficients
/// may be the identity), or a bare coefficient when no `t` survives.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicForm {
    pub pairs: Vec<(Elem, i8)>,
    pub coeff: Elem,
}

impl CyclicForm {
    pub fn exponent_sum(&self) -> i64 {
        self.pairs.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn t_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn to_word(&self) -> TWord {
        if self.pairs.is_empty() {
            return TWord::from_letters(if self.coeff == 0 { vec![] } else { vec![TLetter::coeff(self.coeff)] });
        }
        TWord::from_pairs(&self.pairs)
    }
}

impl TWord {
    pub fn new() -> Self {
        TWord::default()
    }

    pub fn from_letters(letters: Vec<TLetter>) -> Self {
        TWord { letters }
    }

    /// Builds `g_1 t^{ε_1} … g_n t^{ε_n}`, skipping identity coefficients.
    pub fn from_pairs(pairs: &[(Elem, i8)]) -> Self {
        let mut letters = Vec::with_capacity(2 * pairs.len());
        for &(g, e) in pairs {
            if g != 0 {
                letters.push(TLetter::coeff(g));
            }
            letters.push(TLetter::t(e));
        }
        TWord { letters }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| match *l {
                TLetter::T { t } => t as i64,
                TLetter::Coeff { .. } => 0,
            })
            .sum()
    }

    /// Number of letters `t^{±1}`.
    pub fn t_count(&self) -> usize {
        self.letters.iter().filter(|l| matches!(l, TLetter::T { .. })).count()
    }

    pub fn push(&mut self, letter: TLetter) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &TWord) -> TWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        TWord { letters }
    }

    pub fn inverse(&self, group: &Group) -> TWord {
        TWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| match *l {
                    TLetter::Coeff { g } => TLetter::coeff(group.inv(g)),
                    TLetter::T { t } => TLetter::t(-t),
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: i64, group: &Group) -> TWord {
        let base = if n < 0 { self.inverse(group) } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        TWord { letters }.reduce(group)
    }

    /// `x · self · x⁻¹`, freely reduced.
    pub fn conjugate_by(&self, x: &TWord, group: &Group) -> TWord {
        x.concat(self).concat(&x.inverse(group)).reduce(group)
    }

    /// Free reduction in `G * ⟨t⟩`.
    pub fn reduce(&self, group: &Group) -> TWord {
        let mut out: Vec<TLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            push_letter(&mut out, l, group);
        }
        TWord { letters: out }
    }

    /// Cyclic normal form plus a conjugator `x` with `self = x · r · x⁻¹` freely,
    /// where `r` is the canonical rotation.
    pub fn cyclic_form_with_conjugator(&self, group: &Group) -> (CyclicForm, TWord) {
        let mut word = self.reduce(group).letters;
        let mut conj: Vec<TLetter> = Vec::new();
        loop {
            let n = word.len();
            if n == 0 {
                break;
            }
            match (word[0], word[n - 1]) {
                (_, TLetter::Coeff { g }) if n >= 2 => {
                    // w = u·h = h⁻¹ (h·u) h
                    word.pop();
                    conj.push(TLetter::coeff(group.inv(g)));
                    let mut rebuilt = vec![TLetter::coeff(g)];
                    rebuilt.extend(word.drain(..));
                    word = TWord { letters: rebuilt }.reduce(group).letters;
                }
                (TLetter::T { t: a }, TLetter::T { t: b }) if n >= 2 && a == -b => {
                    conj.push(TLetter::t(a));
                    word.pop();
                    word.remove(0);
                    word = TWord { letters: word }.reduce(group).letters;
                }
                _ => break,
            }
        }
        let conj = TWord { letters: conj };
        if word.iter().all(|l| matches!(l, TLetter::Coeff { .. })) {
            let coeff = match word.first() {
                Some(TLetter::Coeff { g }) => *g,
                _ => 0,
            };
            return (CyclicForm { pairs: Vec::new(), coeff }, conj.reduce(group));
        }
        let mut pairs = Vec::new();
        let mut pending = 0;
        for l in word {
            match l {
                TLetter::Coeff { g } => pending = g,
                TLetter::T { t } => {
                    pairs.push((pending, t));
                    pending = 0;
                }
            }
        }
        let best = least_rotation(&pairs);
        let prefix = TWord::from_pairs(&pairs[..best]);
        pairs.rotate_left(best);
        let conj = conj.concat(&prefix).reduce(group);
        (CyclicForm { pairs, coeff: 0 }, conj)
    }

    pub fn cyclic_form(&self, group: &Group) -> CyclicForm {
        self.cyclic_form_with_conjugator(group).0
    }

    pub fn is_conjugate_to(&self, other: &TWord, group: &Group) -> bool {
        let a = self.cyclic_form(group);
        let b = other.cyclic_form(group);
        if a.pairs.is_empty() || b.pairs.is_empty() {
            return a.pairs.is_empty() && b.pairs.is_empty() && group.are_conjugate(a.coeff, b.coeff);
        }
        a.pairs == b.pairs || is_rotation(&a.pairs, &b.pairs)
    }
}

fn push_letter(out: &mut Vec<TLetter>, l: TLetter, group: &Group) {
    match l {
        TLetter::Coeff { g: 0 } => {}
        TLetter::Coeff { g } => match out.last_mut() {
            Some(TLetter::Coeff { g: top }) => {
                let merged = group.mul(*top, g);
                if merged == 0 {
                    out.pop();
                } else {
                    *top = merged;
                }
            }
            _ => out.push(l),
        },
        TLetter::T { t } => match out.last() {
            Some(TLetter::T { t: top }) if *top == -t => {
                out.pop();
            }
            _ => out.push(l),
        },
    }
}

fn least_rotation(pairs: &[(Elem, i8)]) -> usize {
    let n = pairs.len();
    (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|i| pairs[(a + i) % n].cmp(&pairs[(b + i) % n]))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0)
}

/// Freely and cyclically reduced canonical rotation plus the `t`-exponent sum.
pub fn tword_cyclic_reduce(group: &Group, w: &TWord) -> (TWord, i64) {
    let form = w.cyclic_form(group);
    let sum = form.exponent_sum();
    (form.to_word(), sum)
}

impl fmt::Display for TWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match *l {
                TLetter::Coeff { g } => format!("g{g}"),
                TLetter::T { t: 1 } => "t".to_string(),
                TLetter::T { .. } => "T".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
