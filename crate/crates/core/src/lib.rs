//! Exact computation of dicritical divisors, base-point trees, Zariski
//! factorizations, integral closures and reductions of ideals in the local
//! ring of a plane point, and dicritical divisors of polynomials at infinity.

pub mod arith;
pub mod atinfinity;
pub mod dicritical;
pub mod divisors;
pub mod error;
pub mod idealcalc;
pub mod nearpoints;
pub mod sample;

pub use arith::{BaseField, BiPoly, Elem, FieldTower, UniPoly};
pub use atinfinity::{dicriticals_at_infinity, points_at_infinity, InfinityKind, InfinityPoint, InfinityReport};
pub use dicritical::{
    base_point_tree, dicritical_of_rational, dicritical_set, rees_certificate, special_pencil_test, zariski_factorization,
    BasePointTree, DicriticalRecord, Factorization, PencilDecision,
};
pub use divisors::{PrimeDivisor, RationalFn, ResidueImage};
pub use error::{Error, ErrorFamily, Result};
pub use idealcalc::{
    abhyankar_family, closure_colength, closure_equals, closure_membership, colength, is_reduction, AbhyankarFamily,
    ReductionReport,
};
pub use nearpoints::{Chart, LocalIdeal, QdtPath, QdtStep};

/// Budgets shared by the tree, truncation and reduction searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_depth: usize,
    pub max_nodes: usize,
    /// Largest reduction exponent tried; `None` uses the colength of `I`.
    pub n_max: Option<usize>,
    /// Largest truncation degree for colength stabilization.
    pub max_bound: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_depth: 64, max_nodes: 4096, n_max: None, max_bound: 512 }
    }
}
