//! Points on the command line: `a+bi` for one coordinate, a JSON array for
//! several.

use invmetric::{Error, Result, C64};
use serde_json::Value;

/// `a+bi` or `a-bi`. The sign between the parts is mandatory, so `0.5` and
/// `2i` are rejected.
pub fn complex(s: &str) -> Result<C64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected a complex number like 0.5+0i, got {s:?}"));
    let body = s.strip_suffix('i').ok_or_else(bad)?;
    // the split is the last sign that does not belong to an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re: f64 = body[..split].parse().map_err(|_| bad())?;
    let im: f64 = body[split..].parse().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(C64::new(re, im))
}

/// One point: a bare complex literal, or a JSON array whose entries are
/// complex literals or `[re, im]` pairs.
pub fn point(s: &str) -> Result<Vec<C64>> {
    let s = s.trim();
    if !s.starts_with('[') {
        return Ok(vec![complex(s)?]);
    }
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("point {s:?}: {e}")))?;
    let items = v.as_array().ok_or_else(|| Error::Parse(format!("point {s:?} is not an array")))?;
    if items.is_empty() {
        return Err(Error::Parse("a point needs at least one coordinate".into()));
    }
    items
        .iter()
        .map(|x| match x {
            Value::String(t) => complex(t),
            Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
                (Some(re), Some(im)) => Ok(C64::new(re, im)),
                _ => Err(Error::Parse(format!("coordinate {x} is not a pair of numbers"))),
            },
            _ => Err(Error::Parse(format!("coordinate {x} is neither \"a+bi\" nor [re, im]"))),
        })
        .collect()
}
