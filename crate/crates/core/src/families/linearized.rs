//! `f(x) = g(A_0(x)) + Σ_t u_t A_t(x)^{m_t}` over F_{q^d}, and its
//! complete-permutation specialisation.

use std::sync::Arc;

use num_integer::Integer;

use super::{base_inverse, cross_check, is_pp, lookup_base, VerificationReport};
use crate::arith::mod_inverse;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linearized::LinearizedContext;
use crate::local::{DiagramLeg, DiagramWitness, Recombinator};
use crate::poly::Poly;
use crate::table::{interpolate, tabulate, MapTable};

#[derive(Debug, Clone)]
pub struct LinearizedFamilyParams {
    ctx: Arc<LinearizedContext>,
    g: Poly,
    u: Vec<Elem>,
    m: Vec<u64>,
}

impl LinearizedFamilyParams {
    /// `u` and `m` hold the entries for indices `1..d`; `g` and `u` live in F_q.
    pub fn new(ctx: Arc<LinearizedContext>, g: Poly, u: Vec<Elem>, m: Vec<u64>) -> Result<Self> {
        let n = ctx.d() as usize - 1;
        for len in [u.len(), m.len()] {
            if len != n {
                return Err(Error::ArityError { expected: n, got: len });
            }
        }
        if g.field() != ctx.base() {
            return Err(Error::LevelMismatch);
        }
        for &c in &u {
            ctx.base().check(c)?;
        }
        if m.contains(&0) {
            return Err(Error::PreconditionFailed("exponents m_i must be positive".into()));
        }
        Ok(LinearizedFamilyParams { ctx, g, u, m })
    }

    pub fn ctx(&self) -> &Arc<LinearizedContext> {
        &self.ctx
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn u(&self) -> &[Elem] {
        &self.u
    }

    pub fn m(&self) -> &[u64] {
        &self.m
    }

    fn modulus(&self) -> u64 {
        self.ctx.d() as u64 * (self.ctx.q() as u64 - 1)
    }

    /// Least positive `r_i` with `m_i r_i ≡ 1 (mod d(q-1))`, where defined.
    pub fn r(&self) -> Vec<Option<u64>> {
        self.m.iter().map(|&m| mod_inverse(m, self.modulus())).collect()
    }

    /// `(i, j, u_i, m_i)` for `i = 1..d`, with `j ≡ i m_i (mod d)`.
    fn indexed(&self) -> impl Iterator<Item = (u32, u32, Elem, u64)> + '_ {
        let d = self.ctx.d() as u64;
        (1..self.ctx.d()).map(move |i| {
            let (u, m) = (self.u[i as usize - 1], self.m[i as usize - 1]);
            (i, ((i as u64 * m) % d) as u32, u, m)
        })
    }
}

/// The reduced polynomial over F_{q^d}.
pub fn linearized_build(p: &LinearizedFamilyParams) -> Result<Poly> {
    let ctx = &p.ctx;
    let top = ctx.field();
    let mut f = p.g.embed(top)?.compose(&ctx.build_a(0)?)?;
    for (i, _, u, m) in p.indexed() {
        if u.is_zero() {
            continue;
        }
        let term = ctx.build_a(i)?.pow_mod(m).scale(top.embed(u)?);
        f = f.add(&term)?;
    }
    Ok(f)
}

/// Conditions `complete_residue`, `u_product_nonzero`, `gcd_m_q_minus_1`
/// and `g_permutes_base`.
pub fn linearized_check(p: &LinearizedFamilyParams) -> VerificationReport {
    let d = p.ctx.d() as usize;
    let mut seen = vec![false; d];
    seen[0] = true;
    for (_, j, u, _) in p.indexed() {
        if !u.is_zero() {
            seen[j as usize] = true;
        }
    }
    let q1 = p.ctx.q() as u64 - 1;
    let mut report = VerificationReport::default();
    report.push("complete_residue", seen.iter().all(|&s| s));
    report.push("u_product_nonzero", p.u.iter().all(|u| !u.is_zero()));
    report.push("gcd_m_q_minus_1", p.m.iter().all(|m| m.gcd(&q1) == 1));
    report.push("g_permutes_base", is_pp(&p.g));
    report
}

struct InverseParts {
    g_inv: MapTable,
    inv_d: Elem,
    /// Per `i`: `(j, r_i, ω^i (d u_i ω^{-j})^{-r_i})`.
    legs: Vec<(u32, u64, Elem)>,
}

fn inverse_parts(p: &LinearizedFamilyParams) -> Result<InverseParts> {
    if !linearized_check(p).all_hold() {
        return Err(Error::NotAPermutation);
    }
    let ctx = &p.ctx;
    let top = ctx.field();
    let g_inv = base_inverse(&p.g)?;
    let inv_d = top.inv(ctx.d_elem())?;
    let mut legs = Vec::new();
    for ((i, j, u, _), r) in p.indexed().zip(p.r()) {
        let r = r.ok_or_else(|| Error::InternalError(format!("m_{i} not invertible")))?;
        let scale = top.mul(top.mul(ctx.d_elem(), top.embed(u)?), ctx.omega_pow(-(j as i64)));
        let coeff = top.mul(ctx.omega_pow(i as i64), top.pow_signed(scale, -(r as i64))?);
        legs.push((j, r, coeff));
    }
    Ok(InverseParts { g_inv, inv_d, legs })
}

/// `(1/d)(g^{-1}(y_0/d) + Σ_i c_i y_{j_i}^{r_i})` on the values `y_j = A_j(x)`.
fn recombine(p: &LinearizedFamilyParams, parts: &InverseParts, ys: &[Elem]) -> Result<Elem> {
    let top = p.ctx.field();
    let mut acc = lookup_base(top, &parts.g_inv, top.mul(ys[0], parts.inv_d))?;
    for &(j, r, c) in &parts.legs {
        acc = top.add(acc, top.mul(c, top.pow(ys[j as usize], r)));
    }
    Ok(top.mul(parts.inv_d, acc))
}

/// The closed-form inverse as a table over F_{q^d}.
pub fn linearized_inverse_table(p: &LinearizedFamilyParams) -> Result<MapTable> {
    let parts = inverse_parts(p)?;
    let ctx = &p.ctx;
    let top = ctx.field();
    let d = ctx.d();
    let mut ys = vec![top.zero(); d as usize];
    let values = top
        .elements()
        .map(|x| {
            for (j, y) in ys.iter_mut().enumerate() {
                *y = ctx.eval_a(j as u32, x);
            }
            recombine(p, &parts, &ys)
        })
        .collect::<Result<Vec<_>>>()?;
    let table = MapTable::new(top, values)?;
    cross_check(&tabulate(&linearized_build(p)?), &table, "linearized inverse")?;
    Ok(table)
}

/// The closed-form inverse as a reduced polynomial over F_{q^d}.
pub fn linearized_inverse(p: &LinearizedFamilyParams) -> Result<Poly> {
    Ok(interpolate(&linearized_inverse_table(p)?))
}

/// Legs `(A_0, d·g(A_0))` and `(A_{j_i}, d u_i ω^{-j_i} A_i^{m_i})`, indexed by
/// `j`, with the closed form as recombinator.
pub fn linearized_witness(p: &LinearizedFamilyParams) -> Result<DiagramWitness> {
    let parts = inverse_parts(p)?;
    let ctx = p.ctx.clone();
    let top = ctx.field().clone();
    let d = ctx.d_elem();
    let g_top = p.g.embed(&top)?;

    let mut legs = vec![DiagramLeg::new(
        ctx.a_table(0)?.clone(),
        MapTable::from_fn(&top, |x| top.mul(d, g_top.eval(ctx.eval_a(0, x)))),
    )?];
    let mut by_j: Vec<Option<(u32, Elem, u64)>> = vec![None; ctx.d() as usize];
    for (i, j, u, m) in p.indexed() {
        by_j[j as usize] = Some((i, u, m));
    }
    for j in 1..ctx.d() {
        let (i, u, m) = by_j[j as usize].ok_or(Error::NotAPermutation)?;
        let scale = top.mul(top.mul(d, top.embed(u)?), ctx.omega_pow(-(j as i64)));
        let phi = MapTable::from_fn(&top, |x| top.mul(scale, top.pow(ctx.eval_a(i, x), m)));
        legs.push(DiagramLeg::new(ctx.a_table(j)?.clone(), phi)?);
    }

    let params = p.clone();
    let zero = top.zero();
    // Off F_q the first argument has no g-preimage; any value then fails verification.
    let recombinator = Recombinator::new(ctx.d() as usize, move |ys| {
        recombine(&params, &parts, ys).unwrap_or(zero)
    });
    Ok(DiagramWitness { legs, recombinator })
}

/// Replaces `g` by `g + u_0 x`, absorbing an `A_0` term into `g(A_0)`.
pub fn cpp_fold(p: &LinearizedFamilyParams, u0: Elem) -> Result<LinearizedFamilyParams> {
    let base = p.ctx.base();
    base.check(u0)?;
    let g = p.g.add(&Poly::monomial(base, u0, 1))?;
    LinearizedFamilyParams::new(p.ctx.clone(), g, p.u.clone(), p.m.clone())
}

/// Conditions `product_nonzero`, `g_pp` and `dg_plus_x_pp` for `f` and
/// `f + x` both to permute F_{q^d}; requires every `m_i = 1`.
pub fn cpp_check(p: &LinearizedFamilyParams, u0: Option<Elem>) -> Result<VerificationReport> {
    if p.m.iter().any(|&m| m != 1) {
        return Err(Error::PreconditionFailed("all m_i must equal 1".into()));
    }
    let folded;
    let p = match u0 {
        Some(u0) => {
            folded = cpp_fold(p, u0)?;
            &folded
        }
        None => p,
    };
    let ctx = &p.ctx;
    let base = ctx.base();
    let d = base.from_int(ctx.d() as i64);
    let w_inv = base.inv(ctx.omega())?;
    let product = p.indexed().fold(base.one(), |acc, (i, _, u, _)| {
        let t = base.add(base.one(), base.mul(base.mul(d, u), base.pow(w_inv, i as u64)));
        base.mul(acc, base.mul(u, t))
    });
    let dg_plus_x = p.g.scale(d).add(&Poly::x(base))?;

    let mut report = VerificationReport::default();
    report.push("product_nonzero", !product.is_zero());
    report.push("g_pp", is_pp(&p.g));
    report.push("dg_plus_x_pp", is_pp(&dg_plus_x));
    Ok(report)
}
