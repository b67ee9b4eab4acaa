//! Terms, term orders, polynomials over `F_p` and ordinary reduction.

mod order;
mod polynomial;
mod reduce;
mod term;

pub use order::TermOrder;
pub use polynomial::{Monomial, Polynomial, Ring};
pub use term::{Exponent, Term};
