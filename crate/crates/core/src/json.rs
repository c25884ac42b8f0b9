//! JSON encodings for exact scalars.
//!
//! A rational is written as `[num, den]`. Integers that do not fit in an
//! `i64` are written as decimal strings. On input a rational may also be a
//! bare integer or a string `"p/q"`. A Gaussian rational is `[re, im]` with
//! both parts rationals; a bare rational is accepted as a real number.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::scalar::GaussianRational;

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt, String> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("expected an integer, found {n}")),
        Value::String(s) => s.trim().parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}")),
        other => Err(format!("expected an integer, found {other}")),
    }
}

pub fn rational_to_json(q: &BigRational) -> Value {
    json!([int_to_json(q.numer()), int_to_json(q.denom())])
}

pub fn rational_from_json(v: &Value) -> Result<BigRational, String> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            let num = int_from_json(&parts[0])?;
            let den = int_from_json(&parts[1])?;
            if den.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(num, den))
        }
        Value::String(s) if s.contains('/') => {
            let (n, d) = s.split_once('/').unwrap();
            rational_from_json(&json!([n.trim(), d.trim()]))
        }
        Value::Number(_) | Value::String(_) => Ok(BigRational::from_integer(int_from_json(v)?)),
        other => Err(format!("expected a rational, found {other}")),
    }
}

pub fn gaussian_to_json(z: &GaussianRational) -> Value {
    json!([rational_to_json(&z.re), rational_to_json(&z.im)])
}

pub fn gaussian_from_json(v: &Value) -> Result<GaussianRational, String> {
    if let Value::Array(parts) = v {
        let nested = parts.len() == 2 && parts.iter().all(|p| !p.is_number() && !p.is_string());
        let mixed = parts.len() == 2 && parts.iter().any(Value::is_array);
        if nested || mixed {
            return Ok(GaussianRational::new(rational_from_json(&parts[0])?, rational_from_json(&parts[1])?));
        }
    }
    rational_from_json(v).map(GaussianRational::from)
}

/// A torus coordinate `[re_num, re_den, im_num, im_den]`.
pub fn coordinate_to_json(z: &GaussianRational) -> Value {
    json!([int_to_json(z.re.numer()), int_to_json(z.re.denom()), int_to_json(z.im.numer()), int_to_json(z.im.denom())])
}

pub fn coordinate_from_json(v: &Value) -> Result<GaussianRational, String> {
    let parts = v.as_array().filter(|p| p.len() == 4).ok_or("expected [re_num, re_den, im_num, im_den]")?;
    let re = rational_from_json(&json!([parts[0].clone(), parts[1].clone()]))?;
    let im = rational_from_json(&json!([parts[2].clone(), parts[3].clone()]))?;
    Ok(GaussianRational::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(rational_to_json(&half), json!([1, 2]));
        assert_eq!(rational_from_json(&json!([2, 4])).unwrap(), half);
        assert_eq!(rational_from_json(&json!("1/2")).unwrap(), half);
        assert_eq!(rational_from_json(&json!(3)).unwrap(), BigRational::from_integer(3.into()));
        assert!(rational_from_json(&json!([1, 0])).is_err());
        assert!(rational_from_json(&json!(0.5)).is_err());
    }

    #[test]
    fn big_integers_use_strings() {
        let big: BigInt = BigInt::from(i64::MAX) * 10;
        let q = BigRational::from_integer(big.clone());
        let v = rational_to_json(&q);
        assert_eq!(v, json!([big.to_string(), 1]));
        assert_eq!(rational_from_json(&v).unwrap(), q);
    }

    #[test]
    fn gaussian_forms() {
        let z = GaussianRational::from_parts(1, 2, -3, 1);
        let v = gaussian_to_json(&z);
        assert_eq!(v, json!([[1, 2], [-3, 1]]));
        assert_eq!(gaussian_from_json(&v).unwrap(), z);
        assert_eq!(gaussian_from_json(&json!([1, 2])).unwrap(), GaussianRational::ratio(1, 2));
        assert_eq!(coordinate_from_json(&coordinate_to_json(&z)).unwrap(), z);
    }
}
