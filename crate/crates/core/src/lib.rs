//! Permutation polynomials over finite fields: exact field arithmetic,
//! the composition ring `F_Q[x]/(x^Q - x)`, brute-force oracles, the
//! local criterion and its commutative-diagram witnesses, and closed-form
//! compositional inverses for several explicit families.

pub mod arith;
mod error;
pub mod families;
pub mod field;
pub mod linearized;
pub mod local;
pub mod oracle;
pub mod poly;
pub mod sbox;
pub mod table;

pub use error::{Error, Result};
pub use field::{Elem, Field, FieldSpec, Level};
pub use linearized::LinearizedContext;
pub use poly::Poly;
pub use table::{interpolate, tabulate, MapTable, PartialMap};
