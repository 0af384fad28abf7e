//! Exact polynomial algebra over the rationals: rings, monomial orders,
//! standard bases in the polynomial ring and in its localization at the origin.

pub mod ideal;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod ring;
pub mod stdbasis;

pub type Rational = num_rational::BigRational;

pub use ideal::{Ideal, LocalDim, QuotientDim};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use poly::{rat, ratio, Poly};
pub use ring::Ring;
pub use stdbasis::{normal_form, standard_basis, Budget};
