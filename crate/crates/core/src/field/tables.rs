//! Construction of one field level: F_sub[t]/(irr) tabulated through
//! discrete logarithms and Zech logarithms.
//!
//! Elements are stored as ranks: the positional encoding of the coefficient
//! vector in base `sub_size`, least-significant coefficient first.

use crate::arith::prime_factors;
use crate::error::{Error, Result};

pub(crate) const NO_LOG: u32 = u32::MAX;

/// Arithmetic of the coefficient field, used while building a level.
pub(crate) trait Subfield {
    fn order(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}

pub(crate) struct PrimeSubfield(pub u32);

impl Subfield for PrimeSubfield {
    fn order(&self) -> u32 {
        self.0
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }
    fn neg(&self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
}

#[derive(Debug)]
pub(crate) struct LevelTables {
    pub size: u32,
    pub degree: u32,
    pub sub_size: u32,
    pub irreducible: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one_log: u32,
}

impl Subfield for LevelTables {
    fn order(&self) -> u32 {
        self.size
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        LevelTables::add(self, a, b)
    }
    fn neg(&self, a: u32) -> u32 {
        LevelTables::neg(self, a)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        LevelTables::mul(self, a, b)
    }
}

/// Polynomial remainder of `f` by the monic `g`, coefficients in `sub`.
fn rem_monic<S: Subfield>(sub: &S, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &c) in g.iter().enumerate() {
                let t = sub.mul(lead, c);
                r[shift + i] = sub.sub(r[shift + i], t);
            }
        }
        r.pop();
    }
    r
}

fn digits_of(mut rank: u32, base: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = rank % base;
        rank /= base;
    }
    out
}

fn rank_of(digits: &[u32], base: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * base + d)
}

/// Exhaustive irreducibility test: trial division by every monic polynomial
/// of degree `1..=deg/2`.
pub(crate) fn is_irreducible<S: Subfield>(sub: &S, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    let s = sub.order();
    for j in 1..=deg / 2 {
        let count = (s as u64).pow(j as u32);
        for lower in 0..count {
            let mut g = digits_of(lower as u32, s, j);
            g.push(1);
            if rem_monic(sub, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `deg`, where the
/// order is the rank of the non-leading coefficients read base `sub.order()`.
pub(crate) fn smallest_irreducible<S: Subfield>(sub: &S, deg: usize) -> Option<Vec<u32>> {
    let s = sub.order() as u64;
    let count = s.checked_pow(deg as u32)?;
    (0..count).find_map(|lower| {
        let mut f = digits_of(lower as u32, s as u32, deg);
        f.push(1);
        is_irreducible(sub, &f).then_some(f)
    })
}

/// Schoolbook arithmetic in sub[t]/(irr) on digit vectors.
struct SlowExt<'a, S: Subfield> {
    sub: &'a S,
    irr: &'a [u32],
    degree: usize,
}

impl<S: Subfield> SlowExt<'_, S> {
    fn digits(&self, rank: u32) -> Vec<u32> {
        digits_of(rank, self.sub.order(), self.degree)
    }

    fn rank(&self, digits: &[u32]) -> u32 {
        rank_of(digits, self.sub.order())
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let z: Vec<u32> = x.iter().zip(&y).map(|(&u, &v)| self.sub.add(u, v)).collect();
        self.rank(&z)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.degree - 1];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = self.sub.add(prod[i + j], self.sub.mul(u, v));
            }
        }
        let mut r = rem_monic(self.sub, &prod, self.irr);
        r.resize(self.degree, 0);
        self.rank(&r)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl LevelTables {
    /// Builds the level `sub[t]/(irr)`; `irr` must be monic with entries
    /// canonical in `sub`.
    pub fn build<S: Subfield>(sub: &S, irr: Vec<u32>, max_size: u64) -> Result<Self> {
        let s = sub.order();
        if irr.len() < 2 {
            return Err(Error::InvalidField("irreducible must have degree >= 1".into()));
        }
        if *irr.last().unwrap() != 1 {
            return Err(Error::InvalidField("irreducible must be monic".into()));
        }
        if let Some(&c) = irr.iter().find(|&&c| c >= s) {
            return Err(Error::InvalidField(format!(
                "coefficient {c} is not below subfield size {s}"
            )));
        }
        let degree = irr.len() - 1;
        let size = (s as u64)
            .checked_pow(degree as u32)
            .filter(|&n| n <= max_size)
            .ok_or_else(|| {
                Error::InvalidField(format!("field size {s}^{degree} exceeds {max_size}"))
            })?;
        if !is_irreducible(sub, &irr) {
            return Err(Error::InvalidField(format!("{irr:?} is reducible")));
        }
        let size = size as u32;
        let n1 = size - 1;
        let slow = SlowExt {
            sub,
            irr: &irr,
            degree,
        };

        let factors = prime_factors(n1 as u64);
        let generator = (1..size)
            .find(|&c| factors.iter().all(|&l| slow.pow(c, n1 as u64 / l) != 1))
            .ok_or_else(|| Error::InternalError("no multiplicative generator".into()))?;

        let mut exp = Vec::with_capacity(n1 as usize);
        let mut log = vec![NO_LOG; size as usize];
        let mut cur = 1u32;
        for i in 0..n1 {
            if log[cur as usize] != NO_LOG {
                return Err(Error::InternalError("generator order too small".into()));
            }
            exp.push(cur);
            log[cur as usize] = i;
            cur = slow.mul(cur, generator);
        }
        if cur != 1 {
            return Err(Error::InternalError("generator cycle did not close".into()));
        }

        let zech = exp
            .iter()
            .map(|&v| {
                let w = slow.add(1, v);
                if w == 0 {
                    NO_LOG
                } else {
                    log[w as usize]
                }
            })
            .collect();
        // -1 is the constant p - 1 of the prime subfield.
        let minus_one = slow.rank(&{
            let mut d = vec![0; degree];
            d[0] = sub.neg(1);
            d
        });
        let neg_one_log = log[minus_one as usize];

        Ok(LevelTables {
            size,
            degree: degree as u32,
            sub_size: s,
            irreducible: irr,
            exp,
            log,
            zech,
            neg_one_log,
        })
    }

    #[inline]
    fn n1(&self) -> u32 {
        self.size - 1
    }

    #[inline]
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % self.n1() as u64) as usize]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n1 = self.n1();
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let k = if lb >= la { lb - la } else { lb + n1 - la };
        match self.zech[k as usize] {
            NO_LOG => 0,
            z => self.exp[((la as u64 + z as u64) % n1 as u64) as usize],
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.exp(self.log[a as usize] as u64 + self.neg_one_log as u64)
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp(self.log[a as usize] as u64 + self.log[b as usize] as u64)
        }
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        let la = self.log[a as usize];
        self.exp((self.n1() - la) as u64)
    }

    #[inline]
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n1 = self.n1() as u64;
        let l = self.log[a as usize] as u64;
        self.exp((l * (e % n1)) % n1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u32) -> u64 {
        let n1 = self.n1() as u64;
        n1 / num_integer::gcd(self.log[a as usize] as u64, n1)
    }

    pub fn digits(&self, rank: u32) -> Vec<u32> {
        digits_of(rank, self.sub_size, self.degree as usize)
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        rank_of(digits, self.sub_size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(&PrimeSubfield(3), 2), Some(vec![1, 0, 1]));
        assert_eq!(smallest_irreducible(&PrimeSubfield(5), 2), Some(vec![2, 0, 1]));
        assert_eq!(smallest_irreducible(&PrimeSubfield(2), 3), Some(vec![1, 1, 0, 1]));
        assert_eq!(smallest_irreducible(&PrimeSubfield(7), 1), Some(vec![0, 1]));
    }

    #[test]
    fn reducible_rejected() {
        // t^2 + 2 = (t + 1)(t + 2) over F_3
        let err = LevelTables::build(&PrimeSubfield(3), vec![2, 0, 1], 1 << 20).unwrap_err();
        assert!(matches!(err, Error::InvalidField(_)));
        assert!(LevelTables::build(&PrimeSubfield(3), vec![1, 0, 2], 1 << 20).is_err());
    }

    #[test]
    fn zech_addition_matches_digitwise() {
        let t = LevelTables::build(&PrimeSubfield(3), vec![1, 0, 1], 1 << 20).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                let (x, y) = (t.digits(a), t.digits(b));
                let z: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % 3).collect();
                assert_eq!(t.add(a, b), t.from_digits(&z));
            }
        }
    }
}
