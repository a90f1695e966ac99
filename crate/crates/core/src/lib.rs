//! Equivariant Schubert calculus on Grassmannians `G(k, n)` through the
//! canonical derivation on the exterior algebra of `M(p) = X A[X] / p X A[X]`.
//!
//! Cohomology classes are represented as operators on `∧^k M(p)`: the Schur
//! determinants `Δ_I(D)` in the `epsilon` basis and, for the diagonal torus,
//! the operators `G_I(D)` attached to the factorial `mu` basis. Products of
//! classes are products of matrices, and the structure constants are read
//! off by evaluating at `epsilon^1 ∧ ... ∧ epsilon^k`.
//!
//! ```
//! use schubert_core::{make_context, multiply, Basis, IndexSeq, Mode};
//!
//! let ctx = make_context(4, 2, Mode::Torus).unwrap();
//! let i: IndexSeq = "1,3".parse().unwrap();
//! let product = multiply(&i, &i, Basis::Mu, &ctx).unwrap();
//! assert_eq!(product[&i].to_string(), "y3 - y2");
//! ```

pub mod combinatorics;
pub mod context;
pub mod derivation;
pub mod error;
pub mod operator;
pub mod oracle;
pub mod polyring;
pub mod schubert;
pub mod torus;
pub mod wedge;

pub use combinatorics::{index_sets, pieri_support, Bitstring, IndexSeq};
pub use context::{make_context, Context, Mode};
pub use derivation::{d_matrix, d_pieri, leibniz_oracle, reduce_epsilon, Rule};
pub use error::{Error, Result};
pub use operator::{OperatorSet, SchubertOp};
pub use polyring::{complete_h, elementary_e, Poly, VarSpec};
pub use schubert::{multiply, poincare, poincare_inv, presentation_relations, schur_op};
pub use wedge::{Basis, WedgeElement};
