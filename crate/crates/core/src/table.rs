//! Functions on a field stored as value tables indexed by rank.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

/// A total map `F -> F`; entry `n` is the image of the element of rank `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MapTable {
    field: Field,
    values: Vec<Elem>,
}

impl MapTable {
    pub fn new(field: &Field, values: Vec<Elem>) -> Result<Self> {
        if values.len() != field.size() as usize {
            return Err(Error::RangeError {
                what: "table length",
                value: values.len() as u64,
                limit: field.size() as u64,
            });
        }
        for &v in &values {
            field.check(v)?;
        }
        Ok(MapTable {
            field: field.clone(),
            values,
        })
    }

    pub fn from_ranks(field: &Field, ranks: &[u32]) -> Result<Self> {
        let values = ranks
            .iter()
            .map(|&r| field.unrank(r as u64))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, values)
    }

    pub fn from_fn(field: &Field, mut f: impl FnMut(Elem) -> Elem) -> Self {
        let values = field.elements().map(&mut f).collect();
        MapTable {
            field: field.clone(),
            values,
        }
    }

    pub fn identity(field: &Field) -> Self {
        Self::from_fn(field, |a| a)
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::from_fn(field, |_| c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn ranks(&self) -> Vec<u32> {
        self.values.iter().map(|v| v.rank()).collect()
    }

    #[inline]
    pub fn get(&self, a: Elem) -> Elem {
        self.values[a.rank() as usize]
    }

    /// `self ∘ inner`: the table of `a ↦ self(inner(a))`.
    pub fn compose(&self, inner: &MapTable) -> Result<MapTable> {
        if self.field != inner.field {
            return Err(Error::LevelMismatch);
        }
        Ok(MapTable {
            field: self.field.clone(),
            values: inner.values.iter().map(|&v| self.get(v)).collect(),
        })
    }

    /// Pointwise sum of two maps.
    pub fn add(&self, other: &MapTable) -> Result<MapTable> {
        if self.field != other.field {
            return Err(Error::LevelMismatch);
        }
        let f = &self.field;
        Ok(MapTable::from_fn(f, |a| f.add(self.get(a), other.get(a))))
    }

    /// Occupancy vector of the image, indexed by rank.
    pub fn image_mask(&self) -> Vec<bool> {
        let mut seen = vec![false; self.values.len()];
        for v in &self.values {
            seen[v.rank() as usize] = true;
        }
        seen
    }

    /// Image as ascending ranks.
    pub fn image(&self) -> Vec<u32> {
        mask_to_ranks(&self.image_mask())
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, v)| v.rank() as usize == i)
    }

    /// First rank where the two tables differ.
    pub fn first_difference(&self, other: &MapTable) -> Option<u32> {
        self.values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| a != b)
            .map(|i| i as u32)
    }
}

pub(crate) fn mask_to_ranks(mask: &[bool]) -> Vec<u32> {
    mask.iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| i as u32)
        .collect()
}

/// A map defined on a subset of the field (e.g. on F_q^* or on μ_ℓ).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialMap {
    field: Field,
    values: Vec<Option<Elem>>,
}

impl PartialMap {
    pub fn new(field: &Field, values: Vec<Option<Elem>>) -> Result<Self> {
        if values.len() != field.size() as usize {
            return Err(Error::RangeError {
                what: "table length",
                value: values.len() as u64,
                limit: field.size() as u64,
            });
        }
        for v in values.iter().flatten() {
            field.check(*v)?;
        }
        Ok(PartialMap {
            field: field.clone(),
            values,
        })
    }

    pub fn from_ranks(field: &Field, ranks: &[Option<u32>]) -> Result<Self> {
        let values = ranks
            .iter()
            .map(|r| r.map(|r| field.unrank(r as u64)).transpose())
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, values)
    }

    /// `f` restricted to the ranks in `domain`.
    pub fn from_fn_on(field: &Field, domain: &[u32], mut f: impl FnMut(Elem) -> Elem) -> Self {
        let mut values = vec![None; field.size() as usize];
        for &r in domain {
            values[r as usize] = Some(f(field.elem_unchecked(r)));
        }
        PartialMap {
            field: field.clone(),
            values,
        }
    }

    pub fn restrict(table: &MapTable, domain: &[u32]) -> Self {
        Self::from_fn_on(table.field(), domain, |a| table.get(a))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn get(&self, a: Elem) -> Option<Elem> {
        self.values.get(a.rank() as usize).copied().flatten()
    }

    pub fn values(&self) -> &[Option<Elem>] {
        &self.values
    }

    pub fn domain(&self) -> Vec<u32> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_some())
            .map(|(i, _)| i as u32)
            .collect()
    }

    /// Image as ascending ranks.
    pub fn image(&self) -> Vec<u32> {
        let mut mask = vec![false; self.values.len()];
        for v in self.values.iter().flatten() {
            mask[v.rank() as usize] = true;
        }
        mask_to_ranks(&mask)
    }

    /// Extends to a total map, sending undefined points to `fill`.
    pub fn extend(&self, fill: Elem) -> MapTable {
        MapTable::from_fn(&self.field, |a| self.get(a).unwrap_or(fill))
    }
}

/// The value table of `f` in rank order.
pub fn tabulate(f: &Poly) -> MapTable {
    MapTable::from_fn(f.field(), |a| f.eval(a))
}

/// The unique polynomial of degree `< Q` inducing `table`.
///
/// Expands `Σ_a T(a)(1 - (x - a)^{Q-1})` using
/// `(x - a)^{Q-1} = Σ_k a^{Q-1-k} x^k`, so that
/// `c_0 = T(0)` and `c_k = -Σ_a T(a) a^{Q-1-k}` for `k >= 1`.
pub fn interpolate(table: &MapTable) -> Poly {
    let f = table.field();
    let size = f.size() as u64;
    let mut coeffs = Vec::with_capacity(size as usize);
    coeffs.push(table.get(f.zero()));
    let support: Vec<(Elem, Elem)> = f
        .elements()
        .map(|a| (a, table.get(a)))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    for k in 1..size {
        let e = size - 1 - k;
        let s = support
            .iter()
            .fold(f.zero(), |acc, &(a, v)| f.add(acc, f.mul(v, f.pow(a, e))));
        coeffs.push(f.neg(s));
    }
    Poly::from_coeffs(f, coeffs)
}

/// Interpolation of a partial map, taking the value 0 off its domain.
pub fn interpolate_partial(map: &PartialMap) -> Poly {
    interpolate(&map.extend(map.field().zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    #[test]
    fn tabulate_examples() {
        let f5 = FieldSpec::prime(5).unwrap().base();
        assert!(tabulate(&Poly::x(&f5)).is_identity());
        assert!(tabulate(&Poly::zero(&f5)).values().iter().all(|v| v.is_zero()));
        let sq = Poly::from_ranks(&f5, &[0, 0, 1]).unwrap();
        assert_eq!(tabulate(&sq).ranks(), vec![0, 1, 4, 4, 1]);
    }

    #[test]
    fn interpolate_examples() {
        let f9 = FieldSpec::parse("3^2:1,0,1").unwrap().base();
        assert_eq!(interpolate(&MapTable::identity(&f9)), Poly::x(&f9));
        let c = f9.unrank(7).unwrap();
        assert_eq!(interpolate(&MapTable::constant(&f9, c)), Poly::constant(&f9, c));
        let f3 = FieldSpec::prime(3).unwrap().base();
        let sq = Poly::from_ranks(&f3, &[0, 0, 1]).unwrap();
        assert_eq!(interpolate(&tabulate(&sq)), sq);
        let f2 = FieldSpec::prime(2).unwrap().base();
        assert_eq!(interpolate(&MapTable::identity(&f2)), Poly::x(&f2));
    }

    #[test]
    fn table_validation() {
        let f5 = FieldSpec::prime(5).unwrap().base();
        assert!(MapTable::from_ranks(&f5, &[0, 1, 2]).is_err());
        assert!(MapTable::from_ranks(&f5, &[0, 1, 2, 3, 5]).is_err());
        let pm = PartialMap::from_ranks(&f5, &[None, Some(1), Some(4), None, None]).unwrap();
        assert_eq!(pm.domain(), vec![1, 2]);
        assert_eq!(pm.image(), vec![1, 4]);
        assert_eq!(pm.extend(f5.zero()).ranks(), vec![0, 1, 4, 0, 0]);
    }
}
