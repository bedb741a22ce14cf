//! Exact symbolic computation for the two-parameter differential calculus on
//! the quantum h-exterior plane.
//!
//! The algebra has fermionic coordinates θ, φ, their differentials
//! `x = dθ`, `y = dφ`, and the partial derivatives ∂θ, ∂φ, over the
//! coefficient ring ℚ(i)[h, h']. Elements are reduced to a canonical normal
//! form by [`rewrite::Rewriter`]; equality of algebra elements is equality of
//! normal forms.

pub mod algebra;
pub mod calculus;
pub mod frontend;
pub mod rewrite;
pub mod rmatrix;
pub mod sample;
pub mod scalars;
pub mod star;
pub mod suites;

pub use algebra::{free_mul, Expr, Generator, SubalgebraTag, Word};
pub use calculus::{exterior_d, o_map, partial, CalculusError, PartialIndex};
pub use frontend::{parse, print, Format, ParseError};
pub use rewrite::{normalize, RewriteError, RuleTable, Rewriter, RulesFileError, Strategy};
pub use rmatrix::{build_c, r_hat, PairMatrix};
pub use scalars::{GaussianRational, Param, ParamScalar, ScalarError, Specialization};
pub use star::{hat, star, Hat, HPrimeMode, StarError};
pub use suites::{run_suite, Suite, SuiteReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Star(#[from] StarError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    RulesFile(#[from] RulesFileError),
}
