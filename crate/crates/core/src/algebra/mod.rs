//! Exact field arithmetic and univariate polynomial algebra.

mod factor;
mod field;
mod unipoly;

pub use factor::{
    extend_tower, factor_finite_field, is_irreducible, is_squarefree, repeated_radical, squarefree_decomposition,
    squarefree_part, Extension,
};
pub(crate) use factor::extend_unchecked;
pub use field::{Characteristic, FElem, FieldTower};
pub use unipoly::{uni_gcd, uni_xgcd, UniPoly};
