//! `f(x) = x^q - x + g(Tr(x))` over F_{q^n}.

use num_integer::Integer;

use super::{base_inverse, cross_check, is_pp, lookup_base, VerificationReport, FORMULA_CORRECTED};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::local::{DiagramLeg, DiagramWitness, Recombinator};
use crate::poly::Poly;
use crate::table::{interpolate, tabulate, MapTable};

#[derive(Debug, Clone)]
pub struct TraceFamilyParams {
    field: Field,
    base: Field,
    n: u32,
    g: Poly,
}

impl TraceFamilyParams {
    /// `field` is the top of a tower of degree `n > 1`; `g` lives in F_q.
    pub fn new(field: &Field, n: u32, g: Poly) -> Result<Self> {
        let base = field
            .subfield()
            .ok_or_else(|| Error::PreconditionFailed("needs the top level of a tower".into()))?;
        if n < 2 {
            return Err(Error::PreconditionFailed("n > 1 required".into()));
        }
        if field.degree() != n {
            return Err(Error::PreconditionFailed(format!(
                "tower degree {} differs from n = {n}",
                field.degree()
            )));
        }
        if *g.field() != base {
            return Err(Error::LevelMismatch);
        }
        Ok(TraceFamilyParams {
            field: field.clone(),
            base,
            n,
            g,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    fn q(&self) -> u64 {
        self.base.size() as u64
    }

    /// `Tr(x) = x + x^q + .. + x^{q^{n-1}}`.
    pub fn trace_poly(&self) -> Poly {
        let f = &self.field;
        let q = self.q() as usize;
        let mut coeffs = vec![f.zero(); q.pow(self.n - 1) + 1];
        for k in 0..self.n {
            coeffs[q.pow(k)] = f.one();
        }
        Poly::from_coeffs(f, coeffs)
    }
}

/// The reduced polynomial over F_{q^n}.
pub fn trace_build(p: &TraceFamilyParams) -> Result<Poly> {
    let f = &p.field;
    let shift = Poly::monomial(f, f.one(), p.q() as usize).sub(&Poly::x(f))?;
    p.g.embed(f)?.compose(&p.trace_poly())?.add(&shift)
}

/// Conditions `gcd_n_q` and `g_permutes_base`, plus the `formula_corrected`
/// note: the inverse uses exponents `q^{i-1}` where the published expansion
/// has `q^i`.
pub fn trace_check(p: &TraceFamilyParams) -> VerificationReport {
    let mut report = VerificationReport::default();
    report.push("gcd_n_q", (p.n as u64).gcd(&p.q()) == 1);
    report.push("g_permutes_base", is_pp(&p.g));
    report.note(FORMULA_CORRECTED);
    report
}

struct InverseParts {
    g_inv: MapTable,
    inv_n: Elem,
}

fn inverse_parts(p: &TraceFamilyParams) -> Result<InverseParts> {
    if !trace_check(p).all_hold() {
        return Err(Error::NotAPermutation);
    }
    Ok(InverseParts {
        g_inv: base_inverse(&p.g)?,
        inv_n: p.field.inv(p.field.from_int(p.n as i64))?,
    })
}

/// `Σ_{i=1}^n ι(i) v^{q^{i-1}}`.
fn weighted_conjugates(p: &TraceFamilyParams, v: Elem) -> Elem {
    let f = &p.field;
    let mut acc = f.zero();
    let mut conj = v;
    for i in 1..=p.n {
        acc = f.add(acc, f.mul(f.from_int(i as i64), conj));
        conj = f.pow(conj, p.q());
    }
    acc
}

/// The closed-form inverse
/// `(1/n)(g^{-1}(Tr(x)/n) + Σ_{i=1}^n ι(i)(x - Tr(x)/n)^{q^{i-1}})` as a table.
pub fn trace_inverse_table(p: &TraceFamilyParams) -> Result<MapTable> {
    let parts = inverse_parts(p)?;
    let f = &p.field;
    let values = f
        .elements()
        .map(|x| {
            let t = f.mul(f.rel_trace(x)?, parts.inv_n);
            let head = lookup_base(f, &parts.g_inv, t)?;
            let tail = weighted_conjugates(p, f.sub(x, t));
            Ok(f.mul(parts.inv_n, f.add(head, tail)))
        })
        .collect::<Result<Vec<_>>>()?;
    let table = MapTable::new(f, values)?;
    cross_check(&tabulate(&trace_build(p)?), &table, "trace inverse")?;
    Ok(table)
}

/// The closed-form inverse as a reduced polynomial.
pub fn trace_inverse(p: &TraceFamilyParams) -> Result<Poly> {
    Ok(interpolate(&trace_inverse_table(p)?))
}

/// The published expansion
/// `(1/n)(g^{-1}(Tr(x)/n) - c·Tr(x) + Σ_{i=1}^n ι(i) x^{q^i})` with
/// `c = ι(n(n+1)/2)·ι(n)^{-1}`, tabulated without any inversion check.
pub fn trace_inverse_shifted_exponents(p: &TraceFamilyParams) -> Result<MapTable> {
    let parts = inverse_parts(p)?;
    let f = &p.field;
    let n = p.n as i64;
    let c = f.mul(f.from_int(n * (n + 1) / 2), parts.inv_n);
    let values = f
        .elements()
        .map(|x| {
            let tr = f.rel_trace(x)?;
            let head = lookup_base(f, &parts.g_inv, f.mul(tr, parts.inv_n))?;
            let mut sum = f.sub(head, f.mul(c, tr));
            for i in 1..=p.n {
                sum = f.add(sum, f.mul(f.from_int(i as i64), f.frobenius_iter(x, i)));
            }
            Ok(f.mul(parts.inv_n, sum))
        })
        .collect::<Result<Vec<_>>>()?;
    MapTable::new(f, values)
}

/// Legs `(g^{-1}(Tr(x)/n), Tr)` and `(x, f)` with recombinator
/// `F(y_1, y_2) = (1/n)(y_1 + Σ_{i=1}^n ι(i)(y_2 - g(y_1))^{q^{i-1}})`.
pub fn trace_witness(p: &TraceFamilyParams) -> Result<DiagramWitness> {
    let parts = inverse_parts(p)?;
    let f = p.field.clone();
    let g_top = p.g.embed(&f)?;
    let psi1 = MapTable::from_fn(&f, |x| {
        let t = f.mul(f.rel_trace(x).expect("top level"), parts.inv_n);
        lookup_base(&f, &parts.g_inv, t).expect("trace lies in F_q")
    });
    let phi1 = MapTable::from_fn(&f, |x| f.rel_trace(x).expect("top level"));
    let fx = tabulate(&trace_build(p)?);
    let legs = vec![
        DiagramLeg::new(psi1, phi1)?,
        DiagramLeg::new(MapTable::identity(&f), fx)?,
    ];
    let params = p.clone();
    let inv_n = parts.inv_n;
    let recombinator = Recombinator::new(2, move |ys| {
        let f = &params.field;
        let v = f.sub(ys[1], g_top.eval(ys[0]));
        f.mul(inv_n, f.add(ys[0], weighted_conjugates(&params, v)))
    });
    Ok(DiagramWitness { legs, recombinator })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::oracle;

    fn params(q: u64, n: u32, g: &[u32]) -> TraceFamilyParams {
        let top = FieldSpec::for_order(q, Some(n)).unwrap().top().unwrap();
        let g = Poly::from_ranks(&top.subfield().unwrap(), g).unwrap();
        TraceFamilyParams::new(&top, n, g).unwrap()
    }

    fn two_x_cubed(p: &TraceFamilyParams) -> Poly {
        Poly::monomial(p.field(), p.field().from_int(2), 3)
    }

    #[test]
    fn build_examples() {
        let p = params(3, 2, &[0, 1]);
        assert_eq!(trace_build(&p).unwrap(), two_x_cubed(&p));
        let p = params(5, 2, &[]);
        assert!(!oracle::is_permutation(&tabulate(&trace_build(&p).unwrap())));
        let p = params(5, 2, &[3]);
        assert!(!trace_check(&p).all_hold());
        assert!(!oracle::is_permutation(&tabulate(&trace_build(&p).unwrap())));
    }

    #[test]
    fn check_examples() {
        let p = params(3, 2, &[0, 1]);
        let report = trace_check(&p);
        assert!(report.all_hold());
        assert_eq!(report.notes, vec![FORMULA_CORRECTED.to_string()]);
        assert_eq!(trace_check(&params(3, 3, &[0, 1])).get("gcd_n_q"), Some(false));
        assert_eq!(trace_check(&params(5, 2, &[0, 0, 1])).get("g_permutes_base"), Some(false));
    }

    #[test]
    fn corrected_inverse_at_q3_n2() {
        let p = params(3, 2, &[0, 1]);
        assert_eq!(trace_inverse(&p).unwrap(), two_x_cubed(&p));
        let printed = trace_inverse_shifted_exponents(&p).unwrap();
        let two_x = Poly::monomial(p.field(), p.field().from_int(2), 1);
        assert_eq!(printed, tabulate(&two_x));
        let f = tabulate(&trace_build(&p).unwrap());
        assert!(!f.compose(&printed).unwrap().is_identity());
    }

    #[test]
    fn inverse_matches_oracle() {
        let p = params(5, 2, &[0, 2]);
        let f = tabulate(&trace_build(&p).unwrap());
        assert_eq!(trace_inverse_table(&p).unwrap(), oracle::brute_inverse(&f).unwrap());
    }

    #[test]
    fn witness_matches_closed_form() {
        for (q, n, g) in [(3, 2, vec![0, 1]), (5, 2, vec![0, 0, 0, 1]), (5, 3, vec![1, 2])] {
            let p = params(q, n, &g);
            let f = tabulate(&trace_build(&p).unwrap());
            let w = trace_witness(&p).unwrap();
            assert_eq!(w.check_and_assemble(&f).unwrap().unwrap(), trace_inverse_table(&p).unwrap());
        }
    }

    #[test]
    fn rejects_degenerate_degree() {
        let top = FieldSpec::for_order(3, Some(2)).unwrap().top().unwrap();
        let g = Poly::x(&top.subfield().unwrap());
        assert!(TraceFamilyParams::new(&top, 1, g.clone()).is_err());
        assert!(TraceFamilyParams::new(&top, 3, g).is_err());
    }
}
