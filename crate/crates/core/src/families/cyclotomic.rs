//! `f(x) = x^r h(x^s)` with `s = (q-1)/ℓ`.

use num_integer::Integer;

use super::{cross_check, VerificationReport};
use crate::arith::bezout;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::local::{DiagramLeg, DiagramWitness, Recombinator};
use crate::oracle;
use crate::poly::{fold_exponent, Poly};
use crate::table::{interpolate, interpolate_partial, tabulate, MapTable, PartialMap};

#[derive(Debug, Clone)]
pub struct CyclotomicParams {
    field: Field,
    r: u64,
    ell: u64,
    s: u64,
    h: Poly,
    mu: Vec<u32>,
}

impl CyclotomicParams {
    pub fn new(field: &Field, r: u64, ell: u64, h: Poly) -> Result<Self> {
        let q1 = field.size() as u64 - 1;
        if r == 0 {
            return Err(Error::PreconditionFailed("r >= 1 required".into()));
        }
        if ell == 0 || q1 % ell != 0 {
            return Err(Error::PreconditionFailed(format!("ℓ = {ell} must divide q - 1 = {q1}")));
        }
        if h.field() != field {
            return Err(Error::LevelMismatch);
        }
        let mu: Vec<u32> = field
            .nonzero_elements()
            .filter(|&a| field.pow(a, ell) == field.one())
            .map(Elem::rank)
            .collect();
        debug_assert_eq!(mu.len() as u64, ell);
        Ok(CyclotomicParams {
            field: field.clone(),
            r,
            ell,
            s: q1 / ell,
            h,
            mu,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    /// Ranks of μ_ℓ, ascending.
    pub fn mu(&self) -> &[u32] {
        &self.mu
    }

    /// `g(y) = y^r h(y)^s` on μ_ℓ.
    pub fn g_map(&self) -> PartialMap {
        let f = &self.field;
        PartialMap::from_fn_on(f, &self.mu, |y| f.mul(f.pow(y, self.r), f.pow(self.h.eval(y), self.s)))
    }

    /// `g^{-1}` on μ_ℓ by brute force, extended by 0 off μ_ℓ and interpolated.
    pub fn g_inverse_poly(&self) -> Result<Poly> {
        let g = self.g_map();
        if !oracle::permutes_domain(&g) {
            return Err(Error::NotAPermutation);
        }
        Ok(interpolate_partial(&oracle::partial_inverse(&g)?))
    }
}

/// `x^r h(x^s)`, reduced.
pub fn cyclotomic_build(p: &CyclotomicParams) -> Poly {
    let f = &p.field;
    let size = f.size();
    let mut coeffs = vec![f.zero(); size as usize];
    for (k, c) in p.h.terms() {
        let e = fold_exponent(p.r + k as u64 * p.s, size) as usize;
        coeffs[e] = f.add(coeffs[e], c);
    }
    Poly::from_coeffs(f, coeffs)
}

/// Conditions `gcd_rs` (gcd(r, s) = 1) and `g_permutes_mu`.
pub fn cyclotomic_check(p: &CyclotomicParams) -> VerificationReport {
    let mut report = VerificationReport::default();
    report.push("gcd_rs", p.r.gcd(&p.s) == 1);
    report.push("g_permutes_mu", oracle::permutes_domain(&p.g_map()));
    report
}

/// Closed-form inverse `g^{-1}(x^s)^a x^b h(g^{-1}(x^s))^{-b}` on F_q^*,
/// with `0 ↦ 0`.
pub fn cyclotomic_inverse_table(p: &CyclotomicParams) -> Result<MapTable> {
    if !cyclotomic_check(p).all_hold() {
        return Err(Error::NotAPermutation);
    }
    let f = &p.field;
    let (a, b) = bezout(p.r as i64, p.s as i64)?;
    let ginv = p.g_inverse_poly()?;
    let mut values = Vec::with_capacity(f.size() as usize);
    values.push(f.zero());
    for x in f.nonzero_elements() {
        let y = ginv.eval(f.pow(x, p.s));
        let hy = p.h.eval(y);
        let v = f.mul(
            f.mul(f.pow_signed(y, a)?, f.pow_signed(x, b)?),
            f.pow_signed(hy, -b)?,
        );
        values.push(v);
    }
    let table = MapTable::new(f, values)?;
    cross_check(&tabulate(&cyclotomic_build(p)), &table, "cyclotomic inverse")?;
    Ok(table)
}

/// The closed-form inverse as a reduced polynomial.
pub fn cyclotomic_inverse(p: &CyclotomicParams) -> Result<Poly> {
    Ok(interpolate(&cyclotomic_inverse_table(p)?))
}

/// Legs `(ψ_1, φ_1) = (g^{-1}(x^s), x^s)` and `(ψ_2, φ_2) = (x, f)` with
/// recombinator `F(y_1, y_2) = y_1^a (y_2 / h(y_1))^b`, taking `F = 0` when
/// `y_2 = 0`.
pub fn cyclotomic_witness(p: &CyclotomicParams) -> Result<DiagramWitness> {
    if !cyclotomic_check(p).all_hold() {
        return Err(Error::NotAPermutation);
    }
    let f = p.field.clone();
    let (a, b) = bezout(p.r as i64, p.s as i64)?;
    let ginv = p.g_inverse_poly()?;
    let xs = MapTable::from_fn(&f, |x| f.pow(x, p.s));
    let psi1 = MapTable::from_fn(&f, |x| ginv.eval(f.pow(x, p.s)));
    let fx = tabulate(&cyclotomic_build(p));
    let legs = vec![
        DiagramLeg::new(psi1, xs)?,
        DiagramLeg::new(MapTable::identity(&f), fx)?,
    ];
    let h = p.h.clone();
    let recombinator = Recombinator::new(2, move |ys| {
        let (y1, y2) = (ys[0], ys[1]);
        let hy = h.eval(y1);
        if y2.is_zero() || hy.is_zero() || (y1.is_zero() && a < 0) {
            return f.zero();
        }
        let ratio = f.mul(y2, f.inv(hy).expect("nonzero"));
        f.mul(
            f.pow_signed(y1, a).expect("nonzero"),
            f.pow_signed(ratio, b).expect("nonzero"),
        )
    });
    Ok(DiagramWitness { legs, recombinator })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn params(q: u32, r: u64, ell: u64, h: &[u32]) -> CyclotomicParams {
        let f = FieldSpec::prime(q).unwrap().base();
        let h = Poly::from_ranks(&f, h).unwrap();
        CyclotomicParams::new(&f, r, ell, h).unwrap()
    }

    #[test]
    fn q7_ell2_h_x_plus_3() {
        let p = params(7, 1, 2, &[3, 1]);
        assert_eq!(p.s(), 3);
        assert_eq!(p.mu(), &[1, 6]);
        let g = p.g_map();
        let f = p.field().clone();
        assert_eq!(g.get(f.from_int(1)), Some(f.from_int(1)));
        assert_eq!(g.get(f.from_int(6)), Some(f.from_int(6)));
        let report = cyclotomic_check(&p);
        assert_eq!(report.get("gcd_rs"), Some(true));
        assert_eq!(report.get("g_permutes_mu"), Some(true));
        assert!(oracle::is_permutation(&tabulate(&cyclotomic_build(&p))));

        let inv = cyclotomic_inverse_table(&p).unwrap();
        assert_eq!(tabulate(&cyclotomic_build(&p)).get(f.from_int(1)), f.from_int(4));
        assert_eq!(inv.get(f.from_int(4)), f.from_int(1));
        let brute = oracle::brute_inverse(&tabulate(&cyclotomic_build(&p))).unwrap();
        assert_eq!(inv, brute);
    }

    #[test]
    fn g_collapsing_mu_is_rejected() {
        let p = params(7, 3, 3, &[1]);
        let report = cyclotomic_check(&p);
        assert_eq!(report.get("gcd_rs"), Some(true));
        assert_eq!(report.get("g_permutes_mu"), Some(false));
        assert!(!oracle::is_permutation(&tabulate(&cyclotomic_build(&p))));
        assert_eq!(cyclotomic_inverse(&p), Err(Error::NotAPermutation));
    }

    #[test]
    fn gcd_failure() {
        let p = params(5, 2, 2, &[1]);
        assert_eq!(cyclotomic_check(&p).get("gcd_rs"), Some(false));
        assert!(!cyclotomic_check(&p).all_hold());
    }

    #[test]
    fn monomial_and_identity_cases() {
        let p = params(11, 3, 5, &[1]);
        let inv = cyclotomic_inverse(&p).unwrap();
        // 3 * 7 = 21 ≡ 1 (mod 10)
        assert_eq!(inv, Poly::monomial(p.field(), p.field().one(), 7));
        let p = params(7, 1, 1, &[1]);
        assert_eq!(cyclotomic_inverse(&p).unwrap(), Poly::x(p.field()));
    }

    #[test]
    fn witness_reproduces_inverse() {
        let p = params(7, 1, 2, &[3, 1]);
        let fx = tabulate(&cyclotomic_build(&p));
        let w = cyclotomic_witness(&p).unwrap();
        let assembled = w.check_and_assemble(&fx).unwrap().unwrap();
        assert_eq!(assembled, cyclotomic_inverse_table(&p).unwrap());
    }

    #[test]
    fn invalid_parameters() {
        let f = FieldSpec::prime(7).unwrap().base();
        assert!(CyclotomicParams::new(&f, 1, 4, Poly::x(&f)).is_err());
        assert!(CyclotomicParams::new(&f, 0, 2, Poly::x(&f)).is_err());
    }
}
