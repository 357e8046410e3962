//! Invariants of plane curve germs `f(x, y) = 0` computed in exact arithmetic.
//!
//! The crate computes the Newton-diagram invariants (Newton number, Newton
//! delta invariant, the branch bounds `r_N` and `s_N`), decides the
//! non-degeneracy conditions NND, INND, WNND, WHNND and NND1, and computes
//! the Milnor number, the delta invariant, the number of branches and the
//! number of wild vanishing cycles over prime fields and the rationals.
//!
//! Module map:
//!
//! * [`algebra`]: prime fields, finite-field towers, `Q`, univariate polynomials.
//! * [`bivar`]: sparse bivariate polynomials and weighted-homogeneous tools.
//! * [`newton`]: Newton diagrams and their combinatorial invariants.
//! * [`nondeg`]: face-wise and global non-degeneracy classifiers.
//! * [`localalg`]: Milnor number and intersection multiplicity.
//! * [`resolve`]: blow-up resolution over finite fields.
//! * [`report`]: invariant bundles, theorem verdicts, randomized verification.
//! * [`cli`]: expression parsing, rendering and the command-line front end.

pub mod algebra;
pub mod bivar;
pub mod cli;
pub mod error;
pub mod localalg;
pub mod newton;
pub mod nondeg;
pub mod report;
pub mod resolve;

pub use algebra::{Characteristic, FElem, FieldTower, UniPoly};
pub use bivar::BivarPoly;
pub use error::{Error, Result};
pub use newton::{ExtNat, NewtonDiagram};
