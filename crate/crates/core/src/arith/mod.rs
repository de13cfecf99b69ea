//! Exact arithmetic: field towers, univariate and bivariate polynomials,
//! univariate factorization and sparse linear algebra.

pub mod bipoly;
pub mod factor;
pub mod linalg;
pub mod tower;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use factor::{factor_univariate, roots, squarefree_decomposition};
pub use linalg::Echelon;
pub use tower::{BaseField, Elem, FieldTower};
pub use unipoly::UniPoly;
