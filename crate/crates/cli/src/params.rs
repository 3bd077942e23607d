//! Family parameter files.

use std::sync::Arc;

use permpoly::families::{CyclotomicParams, LinearizedFamilyParams, TraceFamilyParams, TwistParams};
use permpoly::{Error, Field, FieldSpec, LinearizedContext, PartialMap, Poly, Result};
use serde::Deserialize;

/// Coefficients as a rank CSV string or a JSON array of ranks.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Coeffs {
    Csv(String),
    List(Vec<u32>),
}

impl Coeffs {
    pub fn to_poly(&self, field: &Field) -> Result<Poly> {
        match self {
            Coeffs::Csv(s) => Poly::parse_ranks(field, s),
            Coeffs::List(v) => Poly::from_ranks(field, v),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistTables {
    pub f1: Vec<Option<u32>>,
    pub h: Vec<Option<u32>>,
    pub lambda: Vec<Option<u32>>,
    pub lambda_bar: Vec<Option<u32>>,
    pub g: Vec<Option<u32>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ParamFile {
    Cyclotomic {
        field: String,
        r: u64,
        ell: u64,
        h_coeffs: Coeffs,
    },
    Linearized {
        field: String,
        g_coeffs: Coeffs,
        u_ranks: Vec<u32>,
        m_list: Vec<u64>,
        #[serde(default)]
        u0: Option<u32>,
    },
    Trace {
        field: String,
        n: u32,
        g_coeffs: Coeffs,
    },
    Twist {
        field: String,
        tables: TwistTables,
    },
}

/// A parameter file resolved against its field.
pub enum Family {
    Cyclotomic(CyclotomicParams),
    Linearized {
        params: LinearizedFamilyParams,
        u0: Option<permpoly::Elem>,
    },
    Trace(TraceFamilyParams),
    Twist(TwistParams),
}

impl Family {
    pub fn kind(&self) -> &'static str {
        match self {
            Family::Cyclotomic(_) => "cyclotomic",
            Family::Linearized { .. } => "linearized",
            Family::Trace(_) => "trace",
            Family::Twist(_) => "twist",
        }
    }
}

fn top_of(spec: &Arc<FieldSpec>) -> Result<Field> {
    spec.top()
        .map_err(|_| Error::InvalidField("this family needs a tower `p^k:..|e:..`".into()))
}

impl ParamFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("parameter file: {e}")))
    }

    pub fn resolve(&self) -> Result<Family> {
        match self {
            ParamFile::Cyclotomic { field, r, ell, h_coeffs } => {
                let f = FieldSpec::parse(field)?.ambient();
                let h = h_coeffs.to_poly(&f)?;
                Ok(Family::Cyclotomic(CyclotomicParams::new(&f, *r, *ell, h)?))
            }
            ParamFile::Linearized {
                field,
                g_coeffs,
                u_ranks,
                m_list,
                u0,
            } => {
                let top = top_of(&FieldSpec::parse(field)?)?;
                let ctx = Arc::new(LinearizedContext::new(&top)?);
                let base = ctx.base().clone();
                let g = g_coeffs.to_poly(&base)?;
                let u = u_ranks
                    .iter()
                    .map(|&r| base.unrank(r as u64))
                    .collect::<Result<Vec<_>>>()?;
                let u0 = u0.map(|r| base.unrank(r as u64)).transpose()?;
                let params = LinearizedFamilyParams::new(ctx, g, u, m_list.clone())?;
                Ok(Family::Linearized { params, u0 })
            }
            ParamFile::Trace { field, n, g_coeffs } => {
                let top = top_of(&FieldSpec::parse(field)?)?;
                let g = g_coeffs.to_poly(&top.subfield().expect("tower"))?;
                Ok(Family::Trace(TraceFamilyParams::new(&top, *n, g)?))
            }
            ParamFile::Twist { field, tables } => {
                let f = FieldSpec::parse(field)?.ambient();
                let map = |v: &[Option<u32>]| PartialMap::from_ranks(&f, v);
                Ok(Family::Twist(TwistParams {
                    f1: map(&tables.f1)?,
                    h: map(&tables.h)?,
                    lambda: map(&tables.lambda)?,
                    lambda_bar: map(&tables.lambda_bar)?,
                    g: map(&tables.g)?,
                }))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let cyc = r#"{"kind": "cyclotomic", "field": "7", "r": 1, "ell": 2, "h_coeffs": "3,1"}"#;
        assert!(matches!(ParamFile::parse(cyc).unwrap().resolve().unwrap(), Family::Cyclotomic(_)));
        let lin = r#"{"kind": "linearized", "field": "5^1:0,1|2:3,0,1", "g_coeffs": [0, 1], "u_ranks": [1], "m_list": [1]}"#;
        assert!(matches!(ParamFile::parse(lin).unwrap().resolve().unwrap(), Family::Linearized { .. }));
        let tr = r#"{"kind": "trace", "field": "3^1:0,1|2:1,0,1", "n": 2, "g_coeffs": "0,1"}"#;
        assert!(matches!(ParamFile::parse(tr).unwrap().resolve().unwrap(), Family::Trace(_)));
    }

    #[test]
    fn rejects_malformed() {
        assert!(ParamFile::parse(r#"{"kind": "other", "field": "7"}"#).is_err());
        assert!(ParamFile::parse(r#"{"kind": "cyclotomic", "field": "7", "r": 1}"#).is_err());
        let bad_ell = r#"{"kind": "cyclotomic", "field": "7", "r": 1, "ell": 4, "h_coeffs": "1"}"#;
        assert!(ParamFile::parse(bad_ell).unwrap().resolve().is_err());
        let flat = r#"{"kind": "trace", "field": "9", "n": 2, "g_coeffs": "0,1"}"#;
        assert!(ParamFile::parse(flat).unwrap().resolve().is_err());
    }
}
