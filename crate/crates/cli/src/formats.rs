//! JSON encodings of numbers, points, cell sets and sections.
//!
//! Rationals are strings such as `"5/6"` or `"-3"`. A real algebraic number
//! is `{"rat": "5/6"}` or `{"defining": "x^2-2", "interval": ["1", "2"]}`.
//! A cell set is `{"breakpoints": [...], "membership": [...]}` with
//! `2k + 1` booleans for `k` breakpoints, cells in increasing order.

use serde_json::{json, Map, Value};
use sperkit_core::exactnum::RealAlg;
use sperkit_core::formula::{parse_open, parse_upoly};
use sperkit_core::poly::fmt_rat;
use sperkit_core::sections::SectionDesc;
use sperkit_core::sper::{CellSet, SperPoint1};
use sperkit_core::Rat;

use crate::CliError;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Parse(msg.into())
}

pub fn parse_rat(s: &str) -> Result<Rat, CliError> {
    let t = s.trim();
    let ok = !t.is_empty()
        && t.trim_start_matches('-')
            .split('/')
            .all(|part| !part.is_empty() && part.bytes().all(|b| b.is_ascii_digit()));
    if !ok {
        return Err(bad(format!("`{s}` is not a rational like 5/6 or -3")));
    }
    t.parse::<Rat>().map_err(|_| bad(format!("`{s}` is not a rational (zero denominator?)")))
}

pub fn real_to_json(a: &RealAlg) -> Value {
    match a.as_rational() {
        Some(r) => json!({ "rat": fmt_rat(r) }),
        None => {
            let (lo, hi) = a.interval();
            json!({
                "defining": a.defining_poly().display_with("x"),
                "interval": [fmt_rat(&lo), fmt_rat(&hi)],
            })
        }
    }
}

pub fn real_from_json(v: &Value) -> Result<RealAlg, CliError> {
    match v {
        Value::String(s) => Ok(RealAlg::from_rat(parse_rat(s)?)),
        Value::Number(n) if n.is_i64() => Ok(RealAlg::from_int(n.as_i64().unwrap())),
        Value::Object(m) => {
            if let Some(r) = m.get("rat") {
                let s = r.as_str().ok_or_else(|| bad("`rat` must be a string"))?;
                return Ok(RealAlg::from_rat(parse_rat(s)?));
            }
            let def = m
                .get("defining")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("a real number needs `rat` or `defining` and `interval`"))?;
            let p = parse_upoly(def).map_err(|e| bad(format!("defining polynomial: {e}")))?;
            let iv = m
                .get("interval")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("`interval` must be a pair of rationals"))?;
            let end = |v: &Value| -> Result<Rat, CliError> {
                parse_rat(v.as_str().ok_or_else(|| bad("interval endpoints are strings"))?)
            };
            RealAlg::from_root(&p, end(&iv[0])?, end(&iv[1])?).map_err(|e| bad(e.to_string()))
        }
        _ => Err(bad("expected a real number object")),
    }
}

pub fn cellset_to_json(s: &CellSet) -> Value {
    json!({
        "breakpoints": s.breakpoints().iter().map(real_to_json).collect::<Vec<_>>(),
        "membership": s.membership(),
    })
}

pub fn cellset_from_json(v: &Value) -> Result<CellSet, CliError> {
    let m = v.as_object().ok_or_else(|| bad("a cell set is an object"))?;
    let bps = m
        .get("breakpoints")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("`breakpoints` must be an array"))?
        .iter()
        .map(real_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    let mem = m
        .get("membership")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("`membership` must be an array"))?
        .iter()
        .map(|b| b.as_bool().ok_or_else(|| bad("membership entries are booleans")))
        .collect::<Result<Vec<_>, _>>()?;
    CellSet::new(bps, mem)
        .ok_or_else(|| bad("breakpoints must increase strictly and membership have 2k+1 entries"))
}

pub fn point_to_json(p: &SperPoint1) -> Value {
    match p {
        SperPoint1::Closed(a) => json!({ "closed": real_to_json(a) }),
        SperPoint1::LeftCut(a) => json!({ "left_cut": real_to_json(a) }),
        SperPoint1::RightCut(a) => json!({ "right_cut": real_to_json(a) }),
        SperPoint1::MinusInf => json!("-inf"),
        SperPoint1::PlusInf => json!("+inf"),
    }
}

/// Also accepts a bare real number for a closed point.
pub fn point_from_json(v: &Value) -> Result<SperPoint1, CliError> {
    match v {
        Value::String(s) if s == "-inf" => Ok(SperPoint1::MinusInf),
        Value::String(s) if s == "+inf" => Ok(SperPoint1::PlusInf),
        Value::String(_) | Value::Number(_) => Ok(SperPoint1::Closed(real_from_json(v)?)),
        Value::Object(m) => {
            if let Some(a) = m.get("closed") {
                Ok(SperPoint1::Closed(real_from_json(a)?))
            } else if let Some(a) = m.get("left_cut") {
                Ok(SperPoint1::LeftCut(real_from_json(a)?))
            } else if let Some(a) = m.get("right_cut") {
                Ok(SperPoint1::RightCut(real_from_json(a)?))
            } else {
                Ok(SperPoint1::Closed(real_from_json(v)?))
            }
        }
        _ => Err(bad("expected a point")),
    }
}

pub fn section_to_json(s: &SectionDesc) -> Value {
    json!({
        "domain": cellset_to_json(s.domain()),
        "formula": s.phi().to_string(),
        "validated": s.is_validated(),
    })
}

/// The `validated` flag of the input is ignored unless `trust` is set.
pub fn section_from_json(v: &Value, trust: bool) -> Result<SectionDesc, CliError> {
    let m: &Map<String, Value> = v.as_object().ok_or_else(|| bad("a section is an object"))?;
    let domain = cellset_from_json(m.get("domain").ok_or_else(|| bad("section needs `domain`"))?)?;
    let text = m
        .get("formula")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("section needs a `formula` string"))?;
    let phi = parse_open(text).map_err(|e| bad(format!("section formula: {e}")))?;
    let validated = trust && m.get("validated").and_then(Value::as_bool).unwrap_or(false);
    let s = SectionDesc::new(domain, phi)?;
    Ok(if validated { s.assume_validated() } else { s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sperkit_core::poly::UPoly;

    fn reals() -> Vec<RealAlg> {
        let mut v = vec![RealAlg::from_int(0), RealAlg::from_rat(parse_rat("-5/6").unwrap())];
        v.extend(isolate(&[-2, 0, 1]));
        v.extend(isolate(&[-1, -1, 0, 1]));
        v
    }

    fn isolate(cs: &[i64]) -> Vec<RealAlg> {
        sperkit_core::exactnum::isolate_roots(&UPoly::from_ints(cs)).unwrap()
    }

    #[test]
    fn reals_round_trip() {
        for a in reals() {
            let v = real_to_json(&a);
            assert_eq!(real_from_json(&v).unwrap(), a, "{v}");
        }
        assert_eq!(real_to_json(&RealAlg::from_rat(parse_rat("5/6").unwrap())), json!({"rat": "5/6"}));
        let s = real_to_json(&RealAlg::sqrt_int(2));
        assert_eq!(s["defining"], "x^2-2");
    }

    #[test]
    fn rationals_are_strict() {
        for bad in ["", "1.5", "1/", "/2", "+3", "1/-2", "x", "1/0"] {
            assert!(parse_rat(bad).is_err(), "{bad}");
        }
        assert_eq!(parse_rat("-6/4").unwrap(), parse_rat("-3/2").unwrap());
    }

    #[test]
    fn root_descriptions_are_checked() {
        let wide = json!({"defining": "x^2-2", "interval": ["-2", "2"]});
        assert!(real_from_json(&wide).is_err());
        let off = json!({"defining": "x^2-2", "interval": ["0", "1"]});
        assert!(real_from_json(&off).is_err());
    }

    #[test]
    fn cell_sets_round_trip() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        let sets = [
            CellSet::full(),
            CellSet::empty(),
            CellSet::basic_open(std::slice::from_ref(&p)),
            CellSet::nonnegative(&p).union(&CellSet::point(RealAlg::from_int(0))),
        ];
        for s in sets {
            assert_eq!(cellset_from_json(&cellset_to_json(&s)).unwrap(), s);
        }
        let unsorted = json!({"breakpoints": [{"rat": "1"}, {"rat": "0"}], "membership": [true, true, true, true, true]});
        assert!(cellset_from_json(&unsorted).is_err());
    }

    #[test]
    fn points_round_trip() {
        for a in reals() {
            for p in [SperPoint1::Closed(a.clone()), SperPoint1::LeftCut(a.clone()), SperPoint1::RightCut(a)] {
                assert_eq!(point_from_json(&point_to_json(&p)).unwrap(), p);
            }
        }
        for p in [SperPoint1::MinusInf, SperPoint1::PlusInf] {
            assert_eq!(point_from_json(&point_to_json(&p)).unwrap(), p);
        }
        assert_eq!(point_from_json(&json!({"rat": "1/2"})).unwrap(), point_from_json(&json!("1/2")).unwrap());
    }
}
