//! Exact Jordan–Chevalley decomposition, Young diagrams and a uniform normal
//! form for square rational matrices, without factoring any polynomial.
//!
//! ```
//! use unf_core::{assemble, jordan_chevalley, Mat};
//!
//! let a = Mat::from_i64(2, 2, &[1, 1, 0, 1]);
//! let dec = jordan_chevalley(&a).unwrap();
//! assert_eq!(dec.s, Mat::identity(2));
//! let unf = assemble(&a, &dec).unwrap();
//! assert_eq!(unf.b, Mat::from_i64(2, 2, &[1, 0, 1, 1]));
//! ```

pub mod corpus;
mod error;
pub mod jordan_chevalley;
pub mod linalg;
pub mod nilpotent;
pub mod poly;
mod rational;
pub mod semisimple;
pub mod uniform;

pub use error::{Error, Result};
pub use jordan_chevalley::{jordan_chevalley, verify_decomposition, JcDecomposition, JcReport};
pub use linalg::{Mat, Rref, Subspace};
pub use nilpotent::{kernel_filtration, nilpotency_index, young_basis, JordanChain, YoungDiagram};
pub use poly::{ExtGcd, Poly};
pub use rational::{rat, ratio, Rational};
pub use semisimple::{is_semisimple, Semisimplicity, SquarefreeData};
pub use uniform::{assemble, verify_uniform, Part, UniformBlock, UniformNormalForm, UniformReport};
