//! The concrete permutation families: constructors, criteria and
//! closed-form compositional inverses, each cross-checked against the
//! brute-force oracle.

mod cyclotomic;
mod linearized;
mod report;
mod trace;
mod twist;

pub use crate::arith::bezout;
pub use cyclotomic::{
    cyclotomic_build, cyclotomic_check, cyclotomic_inverse, cyclotomic_inverse_table, cyclotomic_witness,
    CyclotomicParams,
};
pub use linearized::{
    cpp_check, cpp_fold, linearized_build, linearized_check, linearized_inverse, linearized_inverse_table,
    linearized_witness, LinearizedFamilyParams,
};
pub use report::{Condition, VerificationReport};
pub use trace::{
    trace_build, trace_check, trace_inverse, trace_inverse_shifted_exponents, trace_inverse_table, trace_witness,
    TraceFamilyParams,
};
pub use twist::{twist_check, twist_inverse, TwistParams};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::oracle;
use crate::poly::Poly;
use crate::table::{tabulate, MapTable};

/// Note attached to reports whose closed form departs from the published
/// expansion.
pub const FORMULA_CORRECTED: &str = "formula_corrected";

/// Requires `inv ∘ f` and `f ∘ inv` to be the identity table.
pub(crate) fn cross_check(f: &MapTable, inv: &MapTable, context: &str) -> Result<()> {
    let id = MapTable::identity(f.field());
    for composed in [inv.compose(f)?, f.compose(inv)?] {
        if let Some(rank) = composed.first_difference(&id) {
            return Err(Error::CrossCheck {
                rank,
                context: context.to_string(),
            });
        }
    }
    Ok(())
}

/// Whether `g` permutes its field.
pub(crate) fn is_pp(g: &Poly) -> bool {
    oracle::is_permutation(&tabulate(g))
}

/// Brute-force inverse table of a base-field polynomial.
pub(crate) fn base_inverse(g: &Poly) -> Result<MapTable> {
    oracle::brute_inverse(&tabulate(g))
}

/// Looks up a base-level table at a top-level element of F_q.
pub(crate) fn lookup_base(top: &Field, table: &MapTable, a: crate::field::Elem) -> Result<crate::field::Elem> {
    let v = table.get(top.restrict(a)?);
    top.embed(v)
}
