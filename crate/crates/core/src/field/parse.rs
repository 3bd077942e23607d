use std::sync::Arc;

use super::FieldSpec;
use crate::error::{Error, Result};

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} `{s}`")))
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',').map(|c| parse_u32(c, "coefficient")).collect()
}

/// `p` | `p^k:c0,..,ck` | `p^k:c0,..,ck|e:b0,..,be`
pub(super) fn parse_field_spec(s: &str) -> Result<Arc<FieldSpec>> {
    let s = s.trim();
    let (base_part, top_part) = match s.split_once('|') {
        Some((b, t)) => (b, Some(t)),
        None => (s, None),
    };
    let (p, base_irr) = match base_part.split_once(':') {
        None => {
            if base_part.contains('^') {
                return Err(Error::Parse("`p^k` needs an irreducible after `:`".into()));
            }
            (parse_u32(base_part, "characteristic")?, vec![0, 1])
        }
        Some((pk, coeffs)) => {
            let (p, k) = pk
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("expected `p^k`, got `{pk}`")))?;
            let (p, k) = (parse_u32(p, "characteristic")?, parse_u32(k, "degree")?);
            let irr = parse_list(coeffs)?;
            if irr.len() != k as usize + 1 {
                return Err(Error::Parse(format!(
                    "degree {k} irreducible needs {} coefficients, got {}",
                    k + 1,
                    irr.len()
                )));
            }
            (p, irr)
        }
    };
    let top_irr = match top_part {
        None => None,
        Some(t) => {
            let (e, coeffs) = t
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `e:b0,..`, got `{t}`")))?;
            let e = parse_u32(e, "top degree")?;
            let irr = parse_list(coeffs)?;
            if irr.len() != e as usize + 1 {
                return Err(Error::Parse(format!(
                    "degree {e} irreducible needs {} coefficients, got {}",
                    e + 1,
                    irr.len()
                )));
            }
            Some(irr)
        }
    };
    FieldSpec::new(p, base_irr, top_irr)
}
