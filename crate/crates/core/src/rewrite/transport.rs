//! Moving a product of relator conjugates from `⟨H, t⟩` down to `G * ⟨t⟩`.

use thiserror::Error;

use super::presentation::{HWord, PhiPresentation};
use crate::kernel::{FpWord, TWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorTag {
    Digon(FpWord),
    LargePos,
    LargeNeg,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub conjugator: HWord,
    pub tag: FactorTag,
}

/// `u = ∏ x_j R_j x_j⁻¹` with `R_j` a digon relator or `relator^{±1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Prop1Factorization {
    pub factors: Vec<Factor>,
}

impl Prop1Factorization {
    pub fn push(&mut self, conjugator: HWord, tag: FactorTag) {
        self.factors.push(Factor { conjugator, tag });
    }

    /// Multiplicities of digon and large tags.
    pub fn tag_counts(&self) -> (usize, usize) {
        let digons = self.factors.iter().filter(|f| matches!(f.tag, FactorTag::Digon(_))).count();
        (digons, self.factors.len() - digons)
    }

    pub fn product(&self, p: &PhiPresentation) -> HWord {
        let mut out = HWord::new();
        for f in &self.factors {
            let r = match &f.tag {
                FactorTag::Digon(q) => p.digon_relator(q),
                FactorTag::LargePos => p.relator(),
                FactorTag::LargeNeg => p.relator().inverse(&p.group),
            };
            out = out.concat(&f.conjugator).concat(&r).concat(&f.conjugator.inverse(&p.group));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error("factorization invalid: {0}")]
    FactorizationInvalid(String),
    #[error("transported product {got} differs from the image {expected}")]
    TransportMismatch { got: String, expected: String },
}

/// One factor `x (w^{sign·k}) x⁻¹` in `G * ⟨t⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transported {
    pub conjugator: TWord,
    pub sign: i8,
}

pub fn proposition1_transport(
    u: &HWord,
    f: &Prop1Factorization,
    p: &PhiPresentation,
) -> Result<Vec<Transported>, TransportError> {
    let group = &p.group;
    let source = p
        .source
        .as_ref()
        .ok_or_else(|| TransportError::FactorizationInvalid("presentation carries no source word".into()))?;
    for (j, fac) in f.factors.iter().enumerate() {
        if let FactorTag::Digon(q) = &fac.tag {
            if q.is_empty() || !p.in_p(q) {
                return Err(TransportError::FactorizationInvalid(format!("factor {j}: digon label {q} is not in P \\ {{1}}")));
            }
        }
    }
    if f.product(p).free_reduce(group) != u.free_reduce(group) {
        return Err(TransportError::FactorizationInvalid("product of factors differs from u".into()));
    }

    // image(period) = y r y⁻¹ and w = v r v⁻¹, so image(period)^k = z w^k z⁻¹ with z = y v⁻¹.
    let image = p.relator_period().embed().reduce(group);
    let (r_img, y) = image.cyclic_form_with_conjugator(group);
    let (r_src, v) = source.cyclic_form_with_conjugator(group);
    if r_img != r_src {
        return Err(TransportError::TransportMismatch { got: image.to_string(), expected: source.to_string() });
    }
    let z = y.concat(&v.inverse(group)).reduce(group);

    let mut out = Vec::new();
    for (j, fac) in f.factors.iter().enumerate() {
        match &fac.tag {
            FactorTag::Digon(q) => {
                let img = p.digon_relator(q).embed().reduce(group);
                if !img.is_empty() {
                    return Err(TransportError::FactorizationInvalid(format!("factor {j}: digon image {img} is not trivial")));
                }
            }
            FactorTag::LargePos | FactorTag::LargeNeg => {
                let sign = if fac.tag == FactorTag::LargePos { 1 } else { -1 };
                let conjugator = fac.conjugator.embed().concat(&z).reduce(group);
                out.push(Transported { conjugator, sign });
            }
        }
    }

    let wk = source.pow(p.k as i64, group);
    let mut got = TWord::new();
    for t in &out {
        let base = if t.sign > 0 { wk.clone() } else { wk.inverse(group) };
        got = got.concat(&base.conjugate_by(&t.conjugator, group));
    }
    let got = got.reduce(group);
    let expected = u.embed().reduce(group);
    if got != expected {
        return Err(TransportError::TransportMismatch { got: got.to_string(), expected: expected.to_string() });
    }
    Ok(out)
}
