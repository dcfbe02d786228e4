//! Bit-exact hexadecimal float text, e.g. `0x1.8p+1` for 3.

use crate::error::IntervalError;

pub fn to_hex(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if exp == 0 && frac == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, e) = if exp == 0 { (0, -1022) } else { (1, exp - 1023) };
    let digits = format!("{frac:013x}");
    let digits = digits.trim_end_matches('0');
    let es = if e >= 0 { format!("+{e}") } else { format!("{e}") };
    if digits.is_empty() {
        format!("{sign}0x{lead}p{es}")
    } else {
        format!("{sign}0x{lead}.{digits}p{es}")
    }
}

pub fn from_hex(s: &str) -> Result<f64, IntervalError> {
    let bad = || IntervalError::Parse(s.to_string());
    let t = s.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let sign = if neg { -1.0 } else { 1.0 };
    if t == "inf" {
        return Ok(sign * f64::INFINITY);
    }
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).ok_or_else(bad)?;
    let (mant, exp) = t.split_once(['p', 'P']).ok_or_else(bad)?;
    let exp: i64 = exp.parse().map_err(|_| bad())?;
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let mut value: u128 = 0;
    let mut shift: i64 = 0;
    for (k, c) in int_part.chars().chain(frac_part.chars()).enumerate() {
        let d = c.to_digit(16).ok_or_else(bad)? as u128;
        if value >> 120 != 0 {
            return Err(bad());
        }
        value = value * 16 + d;
        if k >= int_part.len() {
            shift += 4;
        }
    }
    if value >> 53 != 0 {
        // Longer mantissas than a double holds are not produced by `to_hex`.
        return Err(bad());
    }
    Ok(sign * ldexp(value as f64, exp - shift))
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 600 {
        x *= 2f64.powi(600);
        e -= 600;
    }
    while e < -600 {
        // Keep intermediate results normal so the final scaling rounds once.
        if x.abs() < 2f64.powi(-400) {
            break;
        }
        x *= 2f64.powi(-600);
        e += 600;
    }
    if e < -600 {
        let half = e / 2;
        return x * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32);
    }
    x * 2f64.powi(e as i32)
}
