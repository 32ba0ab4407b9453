//! Exact and multiprecision algebra over the Gaussian rationals.

pub mod bigcomplex;
pub mod bipoly;
pub mod exact;
mod modp;
pub mod numeric;
pub mod parse;
pub mod poly;
pub mod roots;
pub mod unipoly;

pub use bigcomplex::BigComplex;
pub use bipoly::{BiPoly, RecPoly, Var, VarPair};
pub use exact::ExactComplex;
pub use parse::{parse_ast, parse_poly, Ast};
pub use poly::{resultant, Poly, Ring};
pub use roots::{real_roots, root_bound, roots_numeric};
pub use unipoly::UniPoly;
