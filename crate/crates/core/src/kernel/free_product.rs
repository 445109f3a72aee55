//! Words in a free product `G^(0) * G^(1) * ...` of indexed copies of one finite group.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::group::{Elem, Group};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("syllable {index} uses copy {copy}, but only copies 0..={max} are declared")]
    CopyIndexOutOfRange { index: usize, copy: usize, max: usize },
    #[error("syllable {index} names element {elem}, outside a group of order {order}")]
    ElementOutOfRange { index: usize, elem: Elem, order: usize },
}

/// One letter `g^(copy)` of a free-product word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub copy: usize,
    #[serde(rename = "g")]
    pub elem: Elem,
}

impl Syllable {
    pub fn new(copy: usize, elem: Elem) -> Self {
        Syllable { copy, elem }
    }
}

/// A word over the copies `G^(i)`. Only values produced by [`FpWord::reduce`]
/// (and the operations built on it) are guaranteed to be in normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FpWord(pub Vec<Syllable>);

impl FpWord {
    pub fn identity() -> Self {
        FpWord(Vec::new())
    }

    pub fn single(copy: usize, elem: Elem) -> Self {
        if elem == 0 {
            FpWord::identity()
        } else {
            FpWord(vec![Syllable::new(copy, elem)])
        }
    }

    pub fn from_pairs(pairs: &[(usize, Elem)]) -> Self {
        FpWord(pairs.iter().map(|&(c, g)| Syllable::new(c, g)).collect())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Normal form: no identity syllables, no two neighbours from the same copy.
    pub fn reduce(&self, group: &Group) -> FpWord {
        let mut out: Vec<Syllable> = Vec::with_capacity(self.0.len());
        for &syl in &self.0 {
            push_syllable(&mut out, syl, group);
        }
        FpWord(out)
    }

    /// Checks copy and element ranges, then reduces.
    pub fn reduce_checked(&self, group: &Group, max_copy: usize) -> Result<FpWord, FpError> {
        self.validate(group, max_copy)?;
        Ok(self.reduce(group))
    }

    pub fn validate(&self, group: &Group, max_copy: usize) -> Result<(), FpError> {
        for (index, syl) in self.0.iter().enumerate() {
            if syl.copy > max_copy {
                return Err(FpError::CopyIndexOutOfRange { index, copy: syl.copy, max: max_copy });
            }
            if syl.elem >= group.order() {
                return Err(FpError::ElementOutOfRange { index, elem: syl.elem, order: group.order() });
            }
        }
        Ok(())
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &FpWord, group: &Group) -> FpWord {
        let mut out = self.reduce(group).0;
        for &syl in &other.0 {
            push_syllable(&mut out, syl, group);
        }
        FpWord(out)
    }

    pub fn inverse(&self, group: &Group) -> FpWord {
        FpWord(
            self.0
                .iter()
                .rev()
                .map(|s| Syllable::new(s.copy, group.inv(s.elem)))
                .collect(),
        )
    }

    pub fn pow(&self, n: i64, group: &Group) -> FpWord {
        let base = if n < 0 { self.inverse(group) } else { self.clone() };
        let mut acc = FpWord::identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base, group);
        }
        acc
    }

    /// Applies the copy shift `i ↦ i + delta`; `None` if some copy would become negative.
    pub fn shift(&self, delta: i64) -> Option<FpWord> {
        self.0
            .iter()
            .map(|s| {
                let c = s.copy as i64 + delta;
                (c >= 0).then(|| Syllable::new(c as usize, s.elem))
            })
            .collect::<Option<Vec<_>>>()
            .map(FpWord)
    }

    pub fn max_copy(&self) -> Option<usize> {
        self.0.iter().map(|s| s.copy).max()
    }

    pub fn min_copy(&self) -> Option<usize> {
        self.0.iter().map(|s| s.copy).min()
    }

    /// True when every syllable lies in one of the copies of `range`.
    pub fn uses_only(&self, range: &Range<usize>) -> bool {
        self.0.iter().all(|s| range.contains(&s.copy))
    }

    /// Cyclically reduced representative `r` together with a conjugator `x`
    /// such that `self = x · r · x⁻¹` in the free product.
    pub fn cyclic_reduce(&self, group: &Group) -> (FpWord, FpWord) {
        let mut word = self.reduce(group).0;
        let mut conj: Vec<Syllable> = Vec::new();
        while word.len() >= 2 && word[0].copy == word[word.len() - 1].copy {
            // w = y · v · z with y, z in the same copy: w = z⁻¹ (z y v) z
            let last = word.pop().unwrap();
            let merged = group.mul(last.elem, word[0].elem);
            conj.push(Syllable::new(last.copy, group.inv(last.elem)));
            if merged == 0 {
                word.remove(0);
            } else {
                word[0].elem = merged;
            }
        }
        // conj collected z⁻¹ factors left to right: self = conj · word · conj⁻¹
        (FpWord(word), FpWord(conj).reduce(group))
    }

    /// Order of the element in the free product; `None` when infinite.
    pub fn element_order(&self, group: &Group) -> Option<usize> {
        let (core, _) = self.cyclic_reduce(group);
        match core.0.as_slice() {
            [] => Some(1),
            [s] => Some(group.element_order(s.elem)),
            _ => None,
        }
    }

    pub fn is_trivial(&self, group: &Group) -> bool {
        self.reduce(group).is_empty()
    }
}

fn push_syllable(out: &mut Vec<Syllable>, syl: Syllable, group: &Group) {
    if syl.elem == 0 {
        return;
    }
    match out.last_mut() {
        Some(top) if top.copy == syl.copy => {
            let merged = group.mul(top.elem, syl.elem);
            if merged == 0 {
                out.pop();
            } else {
                top.elem = merged;
            }
        }
        _ => out.push(syl),
    }
}

/// Normal form of a word whose copies must not exceed `max_copy`.
pub fn fp_reduce(group: &Group, word: &FpWord, max_copy: usize) -> Result<FpWord, FpError> {
    word.reduce_checked(group, max_copy)
}

/// Membership of `word` in the subgroup generated by the copies in `range`.
pub fn sub_membership(group: &Group, word: &FpWord, range: Range<usize>) -> bool {
    word.reduce(group).uses_only(&range)
}

/// Conjugacy in the free product of copies of `group`.
pub fn fp_conjugacy(group: &Group, u: &FpWord, v: &FpWord) -> bool {
    let (cu, _) = u.cyclic_reduce(group);
    let (cv, _) = v.cyclic_reduce(group);
    if cu.len() != cv.len() {
        return false;
    }
    match (cu.0.as_slice(), cv.0.as_slice()) {
        ([], []) => true,
        ([a], [b]) => a.copy == b.copy && group.are_conjugate(a.elem, b.elem),
        _ => is_rotation(&cu.0, &cv.0),
    }
}

pub(crate) fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|r| rotation_eq(a, b, r)))
}

fn rotation_eq<T: PartialEq>(a: &[T], b: &[T], r: usize) -> bool {
    let n = a.len();
    (0..n).all(|i| a[(i + r) % n] == b[i])
}

impl fmt::Display for FpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "g{}^({})", s.elem, s.copy)?;
        }
        Ok(())
    }
}
