//! Univariate polynomials and the composition ring F_Q[x]/(x^Q - x).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A polynomial over one field level, ascending coefficients, no trailing
/// zeros. The degree is not bounded; [`Poly::reduce_mod_qx`] folds it below
/// the field size.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]", self.to_rank_string())
    }
}

/// Folds an exponent into `[1, Q-1]` (zero stays zero).
#[inline]
pub fn fold_exponent(e: u64, field_size: u32) -> u64 {
    if e == 0 {
        0
    } else {
        (e - 1) % (field_size as u64 - 1) + 1
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::from_coeffs(field, vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x(field: &Field) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: Elem, e: usize) -> Self {
        let mut coeffs = vec![field.zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(field, coeffs)
    }

    /// Builds from coefficients (ascending), dropping trailing zeros.
    pub fn from_coeffs(field: &Field, coeffs: Vec<Elem>) -> Self {
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    /// Builds from coefficient ranks, validating each against the field.
    pub fn from_ranks(field: &Field, ranks: &[u32]) -> Result<Self> {
        let coeffs = ranks
            .iter()
            .map(|&r| field.unrank(r as u64))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(field, coeffs))
    }

    /// Parses the comma-separated rank form, e.g. `0,3,0,1` for `x^3 + 3x`.
    pub fn parse_ranks(field: &Field, s: &str) -> Result<Self> {
        let ranks = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad coefficient `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_ranks(field, &ranks)
    }

    /// Comma-separated ranks; the zero polynomial prints as `0`.
    pub fn to_rank_string(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        self.ranks().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn ranks(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.rank()).collect()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Evaluates at `a`, rejecting elements of another level.
    pub fn evaluate(&self, a: Elem) -> Result<Elem> {
        self.field.check(a)?;
        Ok(self.eval(a))
    }

    /// Evaluation without the level check. Each term costs one table power,
    /// so sparse polynomials of large degree stay cheap.
    #[inline]
    pub fn eval(&self, a: Elem) -> Elem {
        let f = &self.field;
        self.terms()
            .fold(f.zero(), |acc, (e, c)| f.add(acc, f.mul(c, f.pow(a, e as u64))))
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::LevelMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Ok(Poly::from_coeffs(f, coeffs))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Exponent folding: `x^e` with `e >= 1` becomes `x^(((e-1) mod (Q-1)) + 1)`.
    pub fn reduce_mod_qx(&self) -> Poly {
        let f = &self.field;
        let size = f.size();
        if self.coeffs.len() <= size as usize {
            return self.clone();
        }
        let mut out = vec![f.zero(); size as usize];
        for (e, c) in self.terms() {
            let k = fold_exponent(e as u64, size) as usize;
            out[k] = f.add(out[k], c);
        }
        Poly::from_coeffs(f, out)
    }

    pub fn is_reduced(&self) -> bool {
        self.coeffs.len() <= self.field.size() as usize
    }

    /// Product in the composition ring, i.e. reduced modulo `x^Q - x`.
    pub fn mul_mod(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        let f = &self.field;
        let size = f.size();
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(f));
        }
        let (a, b) = (self.reduce_mod_qx(), other.reduce_mod_qx());
        let len = (a.coeffs.len() + b.coeffs.len() - 1).min(size as usize);
        let mut out = vec![f.zero(); len];
        let bt: Vec<_> = b.terms().collect();
        for (i, c) in a.terms() {
            for &(j, d) in &bt {
                let k = fold_exponent((i + j) as u64, size) as usize;
                out[k] = f.add(out[k], f.mul(c, d));
            }
        }
        Ok(Poly::from_coeffs(f, out))
    }

    /// `self^e` in the composition ring.
    pub fn pow_mod(&self, mut e: u64) -> Poly {
        let mut acc = Poly::constant(&self.field, self.field.one());
        let mut base = self.reduce_mod_qx();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base).expect("same field");
            }
        }
        acc
    }

    /// Reduced representative of `self ∘ inner`, by Horner's rule in the
    /// composition ring.
    pub fn compose(&self, inner: &Poly) -> Result<Poly> {
        self.same_field(inner)?;
        let f = &self.field;
        let outer = self.reduce_mod_qx();
        let inner = inner.reduce_mod_qx();
        let mut acc = Poly::zero(f);
        for &c in outer.coeffs.iter().rev() {
            acc = acc.mul_mod(&inner)?;
            acc = acc.add(&Poly::constant(f, c))?;
        }
        Ok(acc)
    }

    /// Moves a base-level polynomial into `top` (coefficients embedded).
    pub fn embed(&self, top: &Field) -> Result<Poly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| top.embed(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(top, coeffs))
    }

    /// Equality as elements of the composition ring (reduced forms).
    pub fn ring_eq(&self, other: &Poly) -> bool {
        self.field == other.field && self.reduce_mod_qx() == other.reduce_mod_qx()
    }
}
