//! The polynomials `A_i(x) = Σ_j ω^{ij} x^{q^{d-1-j}}` over F_{q^d}, their
//! composition identities and their image lines `B_i`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::local::{Recombinator, Term};
use crate::poly::Poly;
use crate::table::{tabulate, MapTable};

/// F_{q^d} over F_q together with ω and the d polynomials `A_i`.
#[derive(Debug, Clone)]
pub struct LinearizedContext {
    field: Field,
    base: Field,
    d: u32,
    omega: Elem,
    a: Vec<Poly>,
    a_tables: Vec<MapTable>,
}

impl LinearizedContext {
    /// `field` must be the top level of a tower of degree `d >= 2` with
    /// `q ≡ 1 (mod d)`; ω is the smallest-rank primitive d-th root of unity
    /// of F_q.
    pub fn new(field: &Field) -> Result<Self> {
        let base = field
            .subfield()
            .ok_or_else(|| Error::PreconditionFailed("needs the top level of a tower".into()))?;
        let d = field.degree();
        let q = base.size();
        if d < 2 {
            return Err(Error::PreconditionFailed("d >= 2 required".into()));
        }
        if (q - 1) % d != 0 {
            return Err(Error::PreconditionFailed(format!("q = {q} is not 1 mod d = {d}")));
        }
        let omega = base.primitive_root_of_unity(d as u64)?;
        let mut ctx = LinearizedContext {
            field: field.clone(),
            base,
            d,
            omega,
            a: Vec::new(),
            a_tables: Vec::new(),
        };
        ctx.a = (0..d).map(|i| ctx.make_a(i)).collect();
        ctx.a_tables = ctx.a.iter().map(tabulate).collect();
        Ok(ctx)
    }

    fn make_a(&self, i: u32) -> Poly {
        let f = &self.field;
        let q = self.base.size() as usize;
        let w = self.omega_top();
        let top_exp = q.pow(self.d - 1);
        let mut coeffs = vec![f.zero(); top_exp + 1];
        for j in 0..self.d {
            let e = q.pow(self.d - 1 - j);
            coeffs[e] = f.pow(w, (i as u64 * j as u64) % self.d as u64);
        }
        Poly::from_coeffs(f, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn q(&self) -> u32 {
        self.base.size()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// ω as an element of F_q.
    pub fn omega(&self) -> Elem {
        self.omega
    }

    /// ω embedded in F_{q^d}.
    pub fn omega_top(&self) -> Elem {
        self.field.embed(self.omega).expect("base element")
    }

    /// `ω^k` in F_{q^d} for any integer `k`.
    pub fn omega_pow(&self, k: i64) -> Elem {
        self.field.pow(self.omega_top(), k.rem_euclid(self.d as i64) as u64)
    }

    /// d as a field element of F_{q^d}; nonzero since d divides q - 1.
    pub fn d_elem(&self) -> Elem {
        self.field.from_int(self.d as i64)
    }

    fn check_index(&self, i: u32) -> Result<()> {
        if i >= self.d {
            return Err(Error::RangeError {
                what: "index",
                value: i as u64,
                limit: self.d as u64,
            });
        }
        Ok(())
    }

    /// The polynomial `A_i`.
    pub fn build_a(&self, i: u32) -> Result<Poly> {
        self.check_index(i)?;
        Ok(self.a[i as usize].clone())
    }

    /// Value table of `A_i`.
    pub fn a_table(&self, i: u32) -> Result<&MapTable> {
        self.check_index(i)?;
        Ok(&self.a_tables[i as usize])
    }

    #[inline]
    pub(crate) fn eval_a(&self, i: u32, x: Elem) -> Elem {
        self.a_tables[i as usize].get(x)
    }

    /// `F(y_0, .., y_{d-1}) = (1/d) Σ ω^i y_i`, which recovers `x` from the
    /// values `A_i(x)`.
    pub fn reconstruction(&self) -> Recombinator {
        let f = &self.field;
        let inv_d = f.inv(self.d_elem()).expect("d invertible");
        let terms = (0..self.d)
            .map(|i| {
                let mut exponents = vec![0; self.d as usize];
                exponents[i as usize] = 1;
                Term {
                    coeff: f.mul(inv_d, self.omega_pow(i as i64)),
                    exponents,
                }
            })
            .collect();
        Recombinator::from_terms(f, self.d as usize, terms).expect("well-formed terms")
    }

    /// Whether `(1/d) Σ ω^i A_i(x) = x` at every point.
    pub fn reconstruction_holds(&self) -> bool {
        let r = self.reconstruction();
        let mut args = vec![self.field.zero(); self.d as usize];
        self.field.elements().all(|x| {
            for (i, slot) in args.iter_mut().enumerate() {
                *slot = self.eval_a(i as u32, x);
            }
            r.apply(&args).expect("arity") == x
        })
    }

    /// Enumerates `B_i = A_i(F_{q^d})` and checks its line structure.
    pub fn image_line(&self, i: u32) -> Result<ImageLine> {
        self.check_index(i)?;
        let f = &self.field;
        let q = self.q();
        let elements = self.a_tables[i as usize].image();
        let fail = |what: &str| Err(Error::InternalError(format!("B_{i}: {what}")));

        if elements.len() != q as usize {
            return fail("size differs from q");
        }
        if i == 0 && elements != (0..q).collect::<Vec<_>>() {
            return fail("B_0 differs from F_q");
        }
        let Some(&y) = elements.iter().find(|&&r| r != 0) else {
            return fail("no nonzero member");
        };
        let y = f.unrank(y as u64)?;
        let mut line: Vec<u32> = self
            .base
            .elements()
            .map(|c| f.mul(y, f.embed(c).expect("base")).rank())
            .collect();
        line.sort_unstable();
        if line != elements {
            return fail("not of the form {0} ∪ y·F_q^*");
        }
        let eigen = self.omega_pow(i as i64);
        for &r in &elements[1..] {
            let a = f.unrank(r as u64)?;
            if f.pow(a, q as u64) != f.mul(eigen, a) {
                return fail("eigen-property a^q = ω^i a fails");
            }
        }
        Ok(ImageLine {
            index: i,
            elements,
            representative: y,
        })
    }

    /// Pointwise check of the three composition identities for one
    /// parameter choice. Clause (iii) is only defined for `j >= 1`.
    pub fn component_identities(&self, i: u32, j: u32, m: u64, g: &Poly) -> Result<ComponentIdentities> {
        self.check_index(i)?;
        self.check_index(j)?;
        if m == 0 {
            return Err(Error::PreconditionFailed("m >= 1 required".into()));
        }
        if *g.field() != self.base {
            return Err(Error::LevelMismatch);
        }
        let f = &self.field;
        let q = self.q() as u64;
        let d = self.d as u64;
        let g_top = g.embed(f)?;

        let eigen = self.omega_pow(i as i64);
        let frobenius_eigen = f
            .elements()
            .all(|x| {
                let a = self.eval_a(i, x);
                f.pow(a, q) == f.mul(eigen, a)
            });

        let matching = j as u64 % d == (i as u64 * m) % d;
        let scale = f.mul(self.d_elem(), self.omega_pow(-(j as i64)));
        let composition = f.elements().all(|x| {
            let am = f.pow(self.eval_a(i, x), m);
            let lhs = self.eval_a(j, am);
            let rhs = if matching { f.mul(scale, am) } else { f.zero() };
            lhs == rhs
        });

        let annihilation = (j >= 1).then(|| {
            f.elements()
                .all(|x| self.eval_a(j, g_top.eval(self.eval_a(0, x))).is_zero())
        });

        Ok(ComponentIdentities {
            i,
            j,
            m,
            frobenius_eigen,
            composition: CompositionClause {
                matching,
                holds: composition,
            },
            annihilation,
        })
    }
}

/// `B_i = {0} ∪ y_i·F_q^*`, with `y_i` the smallest-rank nonzero member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageLine {
    pub index: u32,
    pub elements: Vec<u32>,
    #[serde(serialize_with = "rank_of")]
    pub representative: Elem,
}

fn rank_of<S: serde::Serializer>(e: &Elem, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u32(e.rank())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CompositionClause {
    /// Whether `j ≡ i·m (mod d)`, selecting the nonzero branch.
    pub matching: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentIdentities {
    pub i: u32,
    pub j: u32,
    pub m: u64,
    /// `A_i(x)^q = ω^i A_i(x)`.
    pub frobenius_eigen: bool,
    /// `A_j ∘ A_i^m = dω^{-j} A_i^m` when matching, else `0`.
    pub composition: CompositionClause,
    /// `A_j ∘ g(A_0) = 0`, for `j >= 1`.
    pub annihilation: Option<bool>,
}

impl ComponentIdentities {
    pub fn all_hold(&self) -> bool {
        self.frobenius_eigen && self.composition.holds && self.annihilation.unwrap_or(true)
    }
}
