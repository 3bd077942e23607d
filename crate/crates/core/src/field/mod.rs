//! Finite fields F_p, F_q = F_p[t]/(irr) and an optional tower F_{q^e}.
//!
//! A [`FieldSpec`] owns the arithmetic tables of both levels and is shared
//! behind an `Arc`. A [`Field`] is a cheap handle naming one level of a spec,
//! and an [`Elem`] is a rank tagged with the level it belongs to.
//!
//! Ranks are the positional encoding of the coefficient vector over the
//! level's subfield, least-significant coefficient first. Because F_q is
//! embedded into F_{q^e} as the degree-0 coefficient, embedding keeps the
//! rank and only changes the level tag.

mod parse;
mod tables;

use std::fmt;
use std::sync::Arc;


use crate::arith::{is_prime, prime_power};
use crate::error::{Error, Result};
use tables::{LevelTables, PrimeSubfield};

/// Which floor of the tower an element or field handle refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Base,
    Top,
}

/// A field element: its rank within its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    level: Level,
    rank: u32,
}

impl Elem {
    pub(crate) const fn new(level: Level, rank: u32) -> Self {
        Elem { level, rank }
    }

    pub fn rank(self) -> u32 {
        self.rank
    }

    pub fn level(self) -> Level {
        self.level
    }

    pub fn is_zero(self) -> bool {
        self.rank == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rank)
    }
}

/// Operation selector for [`Field::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
}

/// Second operand of [`Field::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    Elem(Elem),
    Exponent(i64),
    None,
}

/// Description and arithmetic tables of F_q and, optionally, F_{q^e}.
#[derive(Debug)]
pub struct FieldSpec {
    p: u32,
    base: LevelTables,
    top: Option<LevelTables>,
}

impl FieldSpec {
    /// Upper bound on the size of any constructed level.
    pub const MAX_SIZE: u64 = 1_000_000;

    /// Builds F_p[t]/(base_irreducible) and, if given, the extension by
    /// `top_irreducible`, whose coefficients are ranks of F_q elements.
    /// Both polynomials are ascending and must be monic and irreducible.
    pub fn new(p: u32, base_irreducible: Vec<u32>, top_irreducible: Option<Vec<u32>>) -> Result<Arc<Self>> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let base = LevelTables::build(&PrimeSubfield(p), base_irreducible, Self::MAX_SIZE)?;
        let top = match top_irreducible {
            Some(irr) => {
                if irr.len() < 3 {
                    return Err(Error::InvalidField("top extension degree must be >= 2".into()));
                }
                Some(LevelTables::build(&base, irr, Self::MAX_SIZE)?)
            }
            None => None,
        };
        Ok(Arc::new(FieldSpec { p, base, top }))
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Arc<Self>> {
        Self::new(p, vec![0, 1], None)
    }

    /// F_{p^k}, optionally extended to degree `e`, using the smallest monic
    /// irreducibles at each level.
    pub fn with_smallest(p: u32, k: u32, e: Option<u32>) -> Result<Arc<Self>> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("base degree must be >= 1".into()));
        }
        let base_irr = if k == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible_over_prime(p, k)?
        };
        let base = LevelTables::build(&PrimeSubfield(p), base_irr.clone(), Self::MAX_SIZE)?;
        let top_irr = match e {
            None => None,
            Some(e) => {
                if (base.size as u64).checked_pow(e).is_none_or(|n| n > Self::MAX_SIZE) {
                    return Err(Error::InvalidField(format!("{}^{e} exceeds size cap", base.size)));
                }
                Some(tables::smallest_irreducible(&base, e as usize).ok_or_else(|| {
                    Error::InvalidField(format!("no irreducible of degree {e}"))
                })?)
            }
        };
        Self::new(p, base_irr, top_irr)
    }

    /// F_q for a prime power `q`, optionally with a degree-`e` tower on top.
    pub fn for_order(q: u64, e: Option<u32>) -> Result<Arc<Self>> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::with_smallest(p as u32, k, e)
    }

    /// Parses the field-spec grammar `p`, `p^k:c0,..,ck` or
    /// `p^k:c0,..,ck|e:b0,..,be`.
    pub fn parse(s: &str) -> Result<Arc<Self>> {
        parse::parse_field_spec(s)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn base_degree(&self) -> u32 {
        self.base.degree
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.top.as_ref().map(|t| t.degree)
    }

    /// q, the size of the base level.
    pub fn q(&self) -> u32 {
        self.base.size
    }

    /// Size of the outermost level (q^e, or q without a tower).
    pub fn size(&self) -> u32 {
        self.top.as_ref().map_or(self.base.size, |t| t.size)
    }

    pub fn base_irreducible(&self) -> &[u32] {
        &self.base.irreducible
    }

    pub fn top_irreducible(&self) -> Option<&[u32]> {
        self.top.as_ref().map(|t| t.irreducible.as_slice())
    }

    pub fn base(self: &Arc<Self>) -> Field {
        Field {
            spec: Arc::clone(self),
            level: Level::Base,
        }
    }

    pub fn top(self: &Arc<Self>) -> Result<Field> {
        if self.top.is_none() {
            return Err(Error::LevelMismatch);
        }
        Ok(Field {
            spec: Arc::clone(self),
            level: Level::Top,
        })
    }

    /// The outermost level.
    pub fn ambient(self: &Arc<Self>) -> Field {
        if self.top.is_some() {
            Field { spec: Arc::clone(self), level: Level::Top }
        } else {
            self.base()
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.base.irreducible == other.base.irreducible
            && self.top_irreducible() == other.top_irreducible()
    }
}

impl Eq for FieldSpec {}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        if self.top.is_none() && self.base.irreducible == [0, 1] {
            return write!(f, "{}", self.p);
        }
        write!(f, "{}^{}:{}", self.p, self.base.degree, join(&self.base.irreducible))?;
        if let Some(t) = &self.top {
            write!(f, "|{}:{}", t.degree, join(&t.irreducible))?;
        }
        Ok(())
    }
}

/// Smallest monic irreducible of degree `k` over F_p (ascending coefficients).
pub fn smallest_irreducible_over_prime(p: u32, k: u32) -> Result<Vec<u32>> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if (p as u64).checked_pow(k).is_none_or(|n| n > FieldSpec::MAX_SIZE) {
        return Err(Error::InvalidField(format!("{p}^{k} exceeds size cap")));
    }
    tables::smallest_irreducible(&PrimeSubfield(p), k as usize)
        .ok_or_else(|| Error::InvalidField(format!("no irreducible of degree {k}")))
}

/// Handle on one level of a [`FieldSpec`].
#[derive(Clone)]
pub struct Field {
    spec: Arc<FieldSpec>,
    level: Level,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level && (Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({}, {:?})", self.spec, self.level)
    }
}

impl Field {
    #[inline]
    fn tables(&self) -> &LevelTables {
        match self.level {
            Level::Base => &self.spec.base,
            Level::Top => self.spec.top.as_ref().expect("top level handle without tower"),
        }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Number of elements of this level.
    pub fn size(&self) -> u32 {
        self.tables().size
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    /// Degree over the level's coefficient field (k for the base, e for the top).
    pub fn degree(&self) -> u32 {
        self.tables().degree
    }

    /// Size of the coefficient field (p for the base, q for the top).
    pub fn subfield_size(&self) -> u32 {
        self.tables().sub_size
    }

    /// The base level when this handle is the top of a tower.
    pub fn subfield(&self) -> Option<Field> {
        match self.level {
            Level::Top => Some(self.spec.base()),
            Level::Base => None,
        }
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::new(self.level, 0)
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::new(self.level, 1)
    }

    /// Image of an integer under Z -> F_p -> this level.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem::new(self.level, n.rem_euclid(self.spec.p as i64) as u32)
    }

    /// The element of rank `n`.
    pub fn unrank(&self, n: u64) -> Result<Elem> {
        if n >= self.size() as u64 {
            return Err(Error::RangeError {
                what: "rank",
                value: n,
                limit: self.size() as u64,
            });
        }
        Ok(Elem::new(self.level, n as u32))
    }

    #[inline]
    pub(crate) fn elem_unchecked(&self, rank: u32) -> Elem {
        debug_assert!(rank < self.size());
        Elem::new(self.level, rank)
    }

    pub fn rank(&self, a: Elem) -> Result<u32> {
        self.check(a)?;
        Ok(a.rank)
    }

    /// All elements in rank order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        let level = self.level;
        (0..self.size()).map(move |r| Elem::new(level, r))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements().skip(1)
    }

    /// Rejects elements of a different level or out of range.
    pub fn check(&self, a: Elem) -> Result<()> {
        if a.level != self.level {
            return Err(Error::LevelMismatch);
        }
        if a.rank >= self.size() {
            return Err(Error::RangeError {
                what: "rank",
                value: a.rank as u64,
                limit: self.size() as u64,
            });
        }
        Ok(())
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.check(a).is_ok()
    }

    /// Coefficient ranks over the subfield, ascending, zero-padded to the
    /// level degree.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        self.tables().digits(a.rank)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        let t = self.tables();
        if coeffs.len() > t.degree as usize || coeffs.iter().any(|&c| c >= t.sub_size) {
            return Err(Error::Parse(format!("coefficients {coeffs:?} do not fit this level")));
        }
        Ok(Elem::new(self.level, t.from_digits(coeffs)))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a.level == self.level && b.level == self.level);
        Elem::new(self.level, self.tables().add(a.rank, b.rank))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem::new(self.level, self.tables().neg(a.rank))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a.level == self.level && b.level == self.level);
        Elem::new(self.level, self.tables().mul(a.rank, b.rank))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Elem::new(self.level, self.tables().inv(a.rank)))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a non-negative exponent, with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        Elem::new(self.level, self.tables().pow(a.rank, e))
    }

    /// `a^e` for any integer exponent; negative exponents invert first.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Checked arithmetic entry point with level validation.
    pub fn arith(&self, op: ArithOp, a: Elem, b: Operand) -> Result<Elem> {
        self.check(a)?;
        let other = |b: Operand| match b {
            Operand::Elem(b) => self.check(b).map(|_| b),
            _ => Err(Error::PreconditionFailed("operation needs a field operand".into())),
        };
        match op {
            ArithOp::Add => Ok(self.add(a, other(b)?)),
            ArithOp::Sub => Ok(self.sub(a, other(b)?)),
            ArithOp::Mul => Ok(self.mul(a, other(b)?)),
            ArithOp::Inv => self.inv(a),
            ArithOp::Pow => match b {
                Operand::Exponent(e) => self.pow_signed(a, e),
                _ => Err(Error::PreconditionFailed("pow needs an integer exponent".into())),
            },
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Option<u64> {
        (!a.is_zero()).then(|| self.tables().order_of(a.rank))
    }

    /// Smallest-rank element of multiplicative order exactly `d`.
    pub fn primitive_root_of_unity(&self, d: u64) -> Result<Elem> {
        let n1 = self.size() as u64 - 1;
        if d == 0 || n1 % d != 0 {
            return Err(Error::NoSuchRoot(d));
        }
        self.nonzero_elements()
            .find(|&a| self.order(a) == Some(d))
            .ok_or(Error::NoSuchRoot(d))
    }

    /// Relative Frobenius `a ↦ a^q` on the top level of a tower.
    pub fn frobenius(&self, a: Elem) -> Result<Elem> {
        if self.level != Level::Top {
            return Err(Error::LevelMismatch);
        }
        self.check(a)?;
        Ok(self.pow(a, self.spec.q() as u64))
    }

    /// `a^(q^i)`.
    pub fn frobenius_iter(&self, a: Elem, i: u32) -> Elem {
        let q = self.spec.q() as u64;
        let n1 = self.size() as u64 - 1;
        // q^i reduced modulo the group order keeps the exponent small.
        let mut e = 1u64;
        for _ in 0..i {
            e = (e * q) % n1.max(1);
        }
        if e == 0 {
            e = n1;
        }
        self.pow(a, e)
    }

    /// Relative trace to F_q: the sum of the e Frobenius conjugates. The
    /// result is returned as a top-level element lying in F_q.
    pub fn rel_trace(&self, a: Elem) -> Result<Elem> {
        if self.level != Level::Top {
            return Err(Error::LevelMismatch);
        }
        self.check(a)?;
        let mut acc = self.zero();
        let mut conj = a;
        for _ in 0..self.degree() {
            acc = self.add(acc, conj);
            conj = self.pow(conj, self.spec.q() as u64);
        }
        Ok(acc)
    }

    /// Whether a top-level element lies in the embedded copy of F_q.
    pub fn in_base(&self, a: Elem) -> bool {
        a.rank < self.spec.q()
    }

    /// Embeds a base-level element into this (top) level.
    pub fn embed(&self, a: Elem) -> Result<Elem> {
        if self.level != Level::Top || a.level != Level::Base {
            return Err(Error::LevelMismatch);
        }
        Ok(Elem::new(Level::Top, a.rank))
    }

    /// Views a top-level element of F_q as a base-level element.
    pub fn restrict(&self, a: Elem) -> Result<Elem> {
        if self.level != Level::Top || a.level != Level::Top || !self.in_base(a) {
            return Err(Error::LevelMismatch);
        }
        Ok(Elem::new(Level::Base, a.rank))
    }
}
