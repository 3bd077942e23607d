//! Multiplicative twists `f(x) = f_1(x) h(λ(x))` on F_q^*.

use super::VerificationReport;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::oracle;
use crate::table::PartialMap;

/// The maps of a twist, each given as a partial map on the field:
/// `f1`, `lambda` and `lambda_bar` on F_q^*, `h` and `g` on `S = λ(F_q^*)`.
#[derive(Debug, Clone)]
pub struct TwistParams {
    pub f1: PartialMap,
    pub h: PartialMap,
    pub lambda: PartialMap,
    pub lambda_bar: PartialMap,
    pub g: PartialMap,
}

impl TwistParams {
    pub fn field(&self) -> &Field {
        self.f1.field()
    }

    /// `f(x) = f_1(x) h(λ(x))` wherever defined on F_q^*.
    pub fn twisted(&self) -> PartialMap {
        let f = self.field();
        let values = f
            .elements()
            .map(|x| {
                let y = self.f1.get(x)?;
                let hx = self.h.get(self.lambda.get(x)?)?;
                Some(f.mul(y, hx))
            })
            .collect();
        PartialMap::new(f, values).expect("values come from the field")
    }
}

/// Named preconditions: `maps_on_carrier`, `g_defined_on_s`,
/// `g_bijective`, `h_nonzero_on_s`, `f1_permutes_carrier`,
/// `f_permutes_carrier` and `square_commutes`.
pub fn twist_check(p: &TwistParams) -> Result<VerificationReport> {
    let f = p.field().clone();
    for map in [&p.h, &p.lambda, &p.lambda_bar, &p.g] {
        if *map.field() != f {
            return Err(Error::LevelMismatch);
        }
    }
    let carrier: Vec<u32> = (1..f.size()).collect();
    let on_carrier = |m: &PartialMap| m.domain() == carrier;
    let s = p.lambda.image();
    let s_bar = p.lambda_bar.image();
    let twisted = p.twisted();
    let commutes = carrier.iter().all(|&r| {
        let x = f.elem_unchecked(r);
        let lhs = twisted.get(x).and_then(|y| p.lambda_bar.get(y));
        let rhs = p.lambda.get(x).and_then(|y| p.g.get(y));
        lhs.is_some() && lhs == rhs
    });

    let mut report = VerificationReport::default();
    report.push(
        "maps_on_carrier",
        on_carrier(&p.f1) && on_carrier(&p.lambda) && on_carrier(&p.lambda_bar),
    );
    report.push("g_defined_on_s", p.g.domain() == s);
    report.push("g_bijective", oracle::is_injective(&p.g) && p.g.image() == s_bar);
    report.push(
        "h_nonzero_on_s",
        s.iter().all(|&r| p.h.get(f.elem_unchecked(r)).is_some_and(|v| !v.is_zero())),
    );
    report.push(
        "f1_permutes_carrier",
        oracle::permutes_domain(&p.f1) && p.f1.image() == carrier,
    );
    report.push(
        "f_permutes_carrier",
        oracle::permutes_domain(&twisted) && twisted.domain() == carrier,
    );
    report.push("square_commutes", commutes);
    Ok(report)
}

/// The table `a ↦ f_1^{-1}(a / h(g^{-1}(λ̄(a))))` on F_q^*.
pub fn twist_inverse(p: &TwistParams) -> Result<PartialMap> {
    let report = twist_check(p)?;
    if let Some(c) = report.conditions.iter().find(|c| !c.holds) {
        return Err(Error::PreconditionFailed(c.name.clone()));
    }
    let f = p.field().clone();
    let carrier: Vec<u32> = (1..f.size()).collect();
    let twisted = p.twisted();

    let f1_inv = oracle::partial_inverse(&p.f1)?;
    let g_inv = oracle::partial_inverse(&p.g)?;
    let inverse = |a: Elem| -> Option<Elem> {
        let hv = p.h.get(g_inv.get(p.lambda_bar.get(a)?)?)?;
        f1_inv.get(f.div(a, hv).ok()?)
    };
    let values: Vec<Option<Elem>> = f.elements().map(|a| if a.is_zero() { None } else { inverse(a) }).collect();
    let result = PartialMap::new(&f, values)?;

    for &r in &carrier {
        let x = f.elem_unchecked(r);
        if twisted.get(x).and_then(|y| result.get(y)) != Some(x) {
            return Err(Error::CrossCheck {
                rank: r,
                context: "twist inverse".into(),
            });
        }
    }
    Ok(result)
}
