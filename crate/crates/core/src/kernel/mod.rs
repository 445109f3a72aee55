//! Finite coefficient groups, free products of their copies, and words in `G * ⟨t⟩`.

mod free_product;
mod group;
mod tword;

pub use free_product::{fp_conjugacy, fp_reduce, sub_membership, FpError, FpWord, Syllable};
pub use group::{Elem, Group, GroupError, GroupFile};
pub use tword::{tword_cyclic_reduce, CyclicForm, TLetter, TWord};
