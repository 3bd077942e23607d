//! Brute-force ground truth: permutation tests and table inversion.

use crate::error::{Error, Result};
use crate::table::{MapTable, PartialMap};

/// Single pass over the table with an occupancy array.
pub fn is_permutation(table: &MapTable) -> bool {
    let mut seen = vec![false; table.values().len()];
    for v in table.values() {
        let slot = &mut seen[v.rank() as usize];
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}

/// The table `U` with `U(T(a)) = a` and `T(U(a)) = a`.
pub fn brute_inverse(table: &MapTable) -> Result<MapTable> {
    let field = table.field();
    let mut inv: Vec<Option<u32>> = vec![None; table.values().len()];
    for (a, v) in table.values().iter().enumerate() {
        let slot = &mut inv[v.rank() as usize];
        if slot.is_some() {
            return Err(Error::NotAPermutation);
        }
        *slot = Some(a as u32);
    }
    let ranks: Vec<u32> = inv.into_iter().map(|r| r.expect("bijective")).collect();
    MapTable::from_ranks(field, &ranks)
}

/// Whether a partial map is injective on its domain.
pub fn is_injective(map: &PartialMap) -> bool {
    let mut seen = vec![false; map.values().len()];
    for v in map.values().iter().flatten() {
        let slot = &mut seen[v.rank() as usize];
        if *slot {
            return false;
        }
        *slot = true;
    }
    true
}

/// Whether a partial map permutes its own domain.
pub fn permutes_domain(map: &PartialMap) -> bool {
    is_injective(map) && map.image() == map.domain()
}

/// Inverse of an injective partial map, defined on its image.
pub fn partial_inverse(map: &PartialMap) -> Result<PartialMap> {
    if !is_injective(map) {
        return Err(Error::NotAPermutation);
    }
    let field = map.field();
    let mut inv = vec![None; map.values().len()];
    for (a, v) in map.values().iter().enumerate() {
        if let Some(v) = v {
            inv[v.rank() as usize] = Some(a as u32);
        }
    }
    PartialMap::from_ranks(field, &inv)
}
