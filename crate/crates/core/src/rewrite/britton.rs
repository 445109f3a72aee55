//! Britton reduction over `⟨H, t | p^t = p^φ⟩` and the map back to `G * ⟨t⟩`.

use thiserror::Error;

use super::presentation::{assemble, HWord, PhiPresentation};
use crate::kernel::{FpWord, TWord};

/// Removes every pinch `t⁻¹ p t` (`p ∈ P`) and `t q t⁻¹` (`q ∈ P^φ`).
///
/// A single left-to-right pass suffices: a pinch only changes the coefficient
/// at the top of the stack, whose right neighbour has not been read yet.
pub fn britton_reduce(word: &HWord, p: &PhiPresentation) -> HWord {
    let group = &p.group;
    let (head, rest) = word.segments(group);
    let mut coeffs: Vec<FpWord> = vec![head];
    let mut ts: Vec<i8> = Vec::new();
    for (e, h) in rest {
        let pinched = match (ts.last(), coeffs.last()) {
            (Some(&prev), Some(mid)) if prev == -e => {
                if prev == -1 && p.in_p(mid) {
                    Some(p.phi(mid))
                } else if prev == 1 && p.in_p_phi(mid) {
                    p.phi_inv(mid)
                } else {
                    None
                }
            }
            _ => None,
        };
        match pinched {
            Some(image) => {
                ts.pop();
                coeffs.pop();
                let last = coeffs.last_mut().expect("head coefficient always present");
                *last = last.mul(&image, group).mul(&h, group);
            }
            None => {
                ts.push(e);
                coeffs.push(h);
            }
        }
    }
    assemble(&coeffs, &ts)
}

/// A Britton-reduced word is trivial iff it has no `t` and a trivial `H`-part.
pub fn britton_is_trivial(word: &HWord, p: &PhiPresentation) -> bool {
    britton_reduce(word, p).0.is_empty()
}

/// Oracle: triviality of the image in `G * ⟨t⟩` under `g^(i) ↦ t^{-i} g t^{i}`.
pub fn embedded_is_trivial(word: &HWord, p: &PhiPresentation) -> bool {
    word.embed().reduce(&p.group).is_empty()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("presentation carries no source word")]
    MissingSource,
    #[error("the word is conjugate to g·t: no presentation to embed")]
    FreeProductCase,
    #[error("image {image} is not conjugate to the source {source_word}")]
    ConjugacyMismatch { image: String, source_word: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub image: TWord,
    pub conjugate_to_source: bool,
}

/// Image of one relator period in `G * ⟨t⟩`, checked against the source word.
pub fn embed_to_base(p: &PhiPresentation) -> Result<Embedding, EmbedError> {
    let source = p.source.as_ref().ok_or(EmbedError::MissingSource)?;
    let image = p.relator_period().embed().reduce(&p.group);
    if !image.is_conjugate_to(source, &p.group) {
        return Err(EmbedError::ConjugacyMismatch { image: image.to_string(), source_word: source.to_string() });
    }
    Ok(Embedding { image, conjugate_to_source: true })
}
