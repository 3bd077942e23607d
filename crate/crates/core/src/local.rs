//! Local criteria for bijectivity and inverse assembly from commuting legs.
//!
//! A permutation `f` of a finite field is studied through maps `ψ_i` with
//! `ψ_i ∘ f = φ_i`. If some `F` recombines the `φ_i` into the identity,
//! `x = F(φ_1(x), .., φ_t(x))`, then `f^{-1} = F(ψ_1, .., ψ_t)`. All maps are
//! tables, so every check below is exhaustive.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::oracle;
use crate::table::{mask_to_ranks, MapTable, PartialMap};

/// A fiber `φ^{-1}(value)` on which `f` fails to be injective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub value: u32,
    pub members: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalVerdict {
    pub bijective: bool,
    pub phi_surjective: bool,
    /// The fiber holding the first collision met when scanning the domain
    /// in rank order.
    pub failing_fiber: Option<Fiber>,
}

fn same_field(a: &MapTable, b: &MapTable) -> Result<()> {
    if a.field() != b.field() {
        return Err(Error::LevelMismatch);
    }
    Ok(())
}

/// First collision of `f`, scanning in rank order: `(earlier, later)`.
fn first_collision(f: &MapTable) -> Option<(u32, u32)> {
    let mut first_preimage: Vec<Option<u32>> = vec![None; f.values().len()];
    for (a, v) in f.values().iter().enumerate() {
        match first_preimage[v.rank() as usize] {
            Some(b) => return Some((b, a as u32)),
            None => first_preimage[v.rank() as usize] = Some(a as u32),
        }
    }
    None
}

/// Whether `f(a) = f(b)` and `λ(a) = λ(b)` force `a = b`.
fn injective_on_fibers(f: &MapTable, lambda: &MapTable) -> bool {
    let mut seen = std::collections::HashSet::with_capacity(f.values().len());
    f.values()
        .iter()
        .zip(lambda.values())
        .all(|(v, l)| seen.insert((l.rank(), v.rank())))
}

/// Bijectivity of `f` through the surjection `psi: F -> image(psi)`.
pub fn check_local_criterion(f: &MapTable, psi: &MapTable) -> Result<LocalVerdict> {
    same_field(f, psi)?;
    let phi = psi.compose(f)?;
    let target = psi.image_mask();
    let reached = phi.image_mask();
    let phi_surjective = target.iter().zip(&reached).all(|(&t, &r)| !t || r);

    // A collision f(a) = f(b) forces φ(a) = φ(b), so every collision of f
    // sits inside a single φ-fiber.
    let failing_fiber = first_collision(f).map(|(_, a)| {
        let value = phi.values()[a as usize];
        let members = phi
            .values()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == value)
            .map(|(i, _)| i as u32)
            .collect();
        Fiber {
            value: value.rank(),
            members,
        }
    });
    Ok(LocalVerdict {
        bijective: phi_surjective && failing_fiber.is_none(),
        phi_surjective,
        failing_fiber,
    })
}

/// Which side of the square is assumed and which is derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareMode {
    /// `λ`, `λ̄` surjective onto their images; `h` bijectivity is derived.
    AssumeImages,
    /// `h` is a bijection from its declared domain onto `image(λ̄)`;
    /// surjectivity of `λ` onto that domain is derived.
    AssumeBijection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareVerdict {
    pub commutes: bool,
    pub h_bijective: bool,
    pub lambda_surjective: bool,
    pub fibers_injective: bool,
    pub f_bijective: bool,
}

/// Checks the square `λ̄ ∘ f = h ∘ λ` and evaluates the equivalence
/// `f bijective ⇔ (h bijective ∧ f injective on every λ-fiber)`.
pub fn check_square(
    f: &MapTable,
    lambda: &MapTable,
    lambda_bar: &MapTable,
    h: &PartialMap,
    mode: SquareMode,
) -> Result<SquareVerdict> {
    same_field(f, lambda)?;
    same_field(f, lambda_bar)?;
    if h.field() != f.field() {
        return Err(Error::LevelMismatch);
    }
    let s_bar = lambda_bar.image();
    let s = match mode {
        SquareMode::AssumeImages => lambda.image(),
        SquareMode::AssumeBijection => h.domain(),
    };
    if s.len() != s_bar.len() {
        return Err(Error::PreconditionFailed(format!(
            "|S| = {} differs from |S̄| = {}",
            s.len(),
            s_bar.len()
        )));
    }

    for a in f.field().elements() {
        let lhs = lambda_bar.get(f.get(a));
        match h.get(lambda.get(a)) {
            Some(rhs) if rhs == lhs => {}
            _ => return Err(Error::DiagramMismatch { rank: a.rank() }),
        }
    }

    let h_on_s = PartialMap::from_fn_on(h.field(), &s, |a| h.get(a).expect("checked above"));
    let h_bijective = oracle::is_injective(&h_on_s) && h_on_s.image() == s_bar;
    let lambda_surjective = lambda.image() == s;
    let fibers_injective = injective_on_fibers(f, lambda);

    let f_bijective = match mode {
        SquareMode::AssumeImages => h_bijective && fibers_injective,
        SquareMode::AssumeBijection => {
            if !h_bijective {
                return Err(Error::PreconditionFailed("h is not a bijection S -> S̄".into()));
            }
            lambda_surjective && fibers_injective
        }
    };
    Ok(SquareVerdict {
        commutes: true,
        h_bijective,
        lambda_surjective,
        fibers_injective,
        f_bijective,
    })
}

/// One commuting triangle: `psi ∘ f = phi`, both landing in `codomain`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramLeg {
    psi: MapTable,
    phi: MapTable,
    codomain: Vec<u32>,
}

impl DiagramLeg {
    /// Leg whose codomain is the union of both images.
    pub fn new(psi: MapTable, phi: MapTable) -> Result<Self> {
        same_field(&psi, &phi)?;
        let mask: Vec<bool> = psi
            .image_mask()
            .iter()
            .zip(phi.image_mask())
            .map(|(&a, b)| a || b)
            .collect();
        Ok(DiagramLeg {
            codomain: mask_to_ranks(&mask),
            psi,
            phi,
        })
    }

    pub fn with_codomain(psi: MapTable, phi: MapTable, mut codomain: Vec<u32>) -> Result<Self> {
        same_field(&psi, &phi)?;
        codomain.sort_unstable();
        codomain.dedup();
        let inside = |t: &MapTable| t.image().iter().all(|r| codomain.binary_search(r).is_ok());
        if !inside(&psi) || !inside(&phi) {
            return Err(Error::PreconditionFailed("leg image escapes its codomain".into()));
        }
        Ok(DiagramLeg { psi, phi, codomain })
    }

    pub fn psi(&self) -> &MapTable {
        &self.psi
    }

    pub fn phi(&self) -> &MapTable {
        &self.phi
    }

    pub fn codomain(&self) -> &[u32] {
        &self.codomain
    }
}

/// One monomial `coeff · Π y_i^{e_i}` of a serializable recombinator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    #[serde(serialize_with = "serialize_rank")]
    pub coeff: Elem,
    pub exponents: Vec<u64>,
}

fn serialize_rank<S: serde::Serializer>(e: &Elem, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u32(e.rank())
}

type EvalFn = dyn Fn(&[Elem]) -> Elem + Send + Sync;

/// A t-ary field-valued operation `F(y_1, .., y_t)`.
#[derive(Clone)]
pub struct Recombinator {
    arity: usize,
    eval: Arc<EvalFn>,
    terms: Option<Vec<Term>>,
}

impl fmt::Debug for Recombinator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Recombinator")
            .field("arity", &self.arity)
            .field("terms", &self.terms)
            .finish()
    }
}

impl Recombinator {
    /// An opaque operation; `eval` receives exactly `arity` arguments.
    pub fn new(arity: usize, eval: impl Fn(&[Elem]) -> Elem + Send + Sync + 'static) -> Self {
        Recombinator {
            arity,
            eval: Arc::new(eval),
            terms: None,
        }
    }

    /// The multivariate polynomial `Σ coeff · Π y_i^{e_i}` (with `0^0 = 1`).
    pub fn from_terms(field: &Field, arity: usize, terms: Vec<Term>) -> Result<Self> {
        for t in &terms {
            field.check(t.coeff)?;
            if t.exponents.len() != arity {
                return Err(Error::ArityError {
                    expected: arity,
                    got: t.exponents.len(),
                });
            }
        }
        let field = field.clone();
        let captured = terms.clone();
        Ok(Recombinator {
            arity,
            eval: Arc::new(move |ys: &[Elem]| {
                captured.iter().fold(field.zero(), |acc, t| {
                    let m = t
                        .exponents
                        .iter()
                        .zip(ys)
                        .fold(t.coeff, |m, (&e, &y)| field.mul(m, field.pow(y, e)));
                    field.add(acc, m)
                })
            }),
            terms: Some(terms),
        })
    }

    /// `F(y) = y`.
    pub fn identity() -> Self {
        Recombinator::new(1, |ys| ys[0])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> Option<&[Term]> {
        self.terms.as_deref()
    }

    pub fn apply(&self, args: &[Elem]) -> Result<Elem> {
        if args.len() != self.arity {
            return Err(Error::ArityError {
                expected: self.arity,
                got: args.len(),
            });
        }
        Ok((self.eval)(args))
    }

    /// Pointwise `a ↦ F(t_1(a), .., t_t(a))`.
    fn pointwise(&self, tables: &[&MapTable]) -> Result<MapTable> {
        if tables.len() != self.arity {
            return Err(Error::ArityError {
                expected: self.arity,
                got: tables.len(),
            });
        }
        let field = tables
            .first()
            .map(|t| t.field().clone())
            .ok_or(Error::ArityError { expected: 1, got: 0 })?;
        for t in tables {
            if *t.field() != field {
                return Err(Error::LevelMismatch);
            }
        }
        let mut args = vec![field.zero(); self.arity];
        Ok(MapTable::from_fn(&field, |a| {
            for (slot, t) in args.iter_mut().zip(tables) {
                *slot = t.get(a);
            }
            (self.eval)(&args)
        }))
    }
}

/// `ψ_i(f(a)) = φ_i(a)` for every element and every leg.
pub fn verify_legs(f: &MapTable, legs: &[DiagramLeg]) -> bool {
    legs.iter().all(|leg| {
        leg.psi.field() == f.field()
            && f.values()
                .iter()
                .zip(leg.phi.values())
                .all(|(&fa, &phia)| leg.psi.get(fa) == phia)
    })
}

/// `F(φ_1(a), .., φ_t(a)) = a` for every element.
pub fn verify_recombinator(recombinator: &Recombinator, phis: &[&MapTable]) -> Result<bool> {
    Ok(recombinator.pointwise(phis)?.is_identity())
}

/// The table `a ↦ F(ψ_1(a), .., ψ_t(a))`.
pub fn assemble_inverse(recombinator: &Recombinator, psis: &[&MapTable]) -> Result<MapTable> {
    recombinator.pointwise(psis)
}

/// Legs plus recombinator describing one inverse construction.
#[derive(Debug, Clone)]
pub struct DiagramWitness {
    pub legs: Vec<DiagramLeg>,
    pub recombinator: Recombinator,
}

impl DiagramWitness {
    pub fn phis(&self) -> Vec<&MapTable> {
        self.legs.iter().map(|l| l.phi()).collect()
    }

    pub fn psis(&self) -> Vec<&MapTable> {
        self.legs.iter().map(|l| l.psi()).collect()
    }

    /// Runs both verifications and assembles the inverse table.
    pub fn check_and_assemble(&self, f: &MapTable) -> Result<Option<MapTable>> {
        if !verify_legs(f, &self.legs) || !verify_recombinator(&self.recombinator, &self.phis())? {
            return Ok(None);
        }
        assemble_inverse(&self.recombinator, &self.psis()).map(Some)
    }
}

/// The single-leg witness available for any permutation:
/// `ψ = f^{-1}`, `φ = x`, `F = identity`.
pub fn degenerate_witness(f: &MapTable) -> Result<DiagramWitness> {
    let psi = oracle::brute_inverse(f)?;
    let leg = DiagramLeg::new(psi, MapTable::identity(f.field()))?;
    Ok(DiagramWitness {
        legs: vec![leg],
        recombinator: Recombinator::identity(),
    })
}
