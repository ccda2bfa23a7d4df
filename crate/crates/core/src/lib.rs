//! Fractions of noncommutative preordered semialgebras.

pub mod base;
pub mod budget;
pub mod cli;
pub mod commoracle;
pub mod error;
pub mod expr;
pub mod fraction;
pub mod grothendieck;
pub mod homext;
pub mod legality;
pub mod parser;
pub mod preorder;
pub mod vergleich;

pub use base::{BaseElement, Instance, Polynomial, Scalar, Word};
pub use budget::Budget;
pub use error::{Error, Result};
pub use expr::Expr;
pub use fraction::{eq, normalize, EqEvidence, EqVerdict, Fraction};
pub use homext::{eval_expr, eval_fraction, sample_homs, MonotoneHom};
pub use legality::{classify, eval_in_s, LegalityClass};
pub use parser::parse;
pub use preorder::{leq, pu_witness, verify_chain, verify_lessdot, LeqVerdict};
pub use vergleich::UniPoly;
