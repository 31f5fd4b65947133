//! `start:step:stop` ranges and comma lists on the command line.

use std::str::FromStr;

/// Inclusive integer range `start:step:stop`, or a single value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NRange(pub Vec<usize>);

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{t}` is not a nonnegative integer"))
        };
        let v = match parts.as_slice() {
            [one] => vec![num(one)?],
            [a, b, c] => {
                let (start, step, stop) = (num(a)?, num(b)?, num(c)?);
                if step == 0 {
                    return Err("step must be positive".into());
                }
                (start..=stop).step_by(step).collect()
            }
            _ => return Err(format!("expected N or START:STEP:STOP, got `{s}`")),
        };
        if v.is_empty() {
            return Err(format!("range `{s}` is empty"));
        }
        Ok(NRange(v))
    }
}

/// Real values given as `start:step:stop` (inclusive when hit exactly) or a
/// comma-separated list.
#[derive(Clone, Debug, PartialEq)]
pub struct RealList(pub Vec<f64>);

impl FromStr for RealList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| format!("`{t}` is not a finite number"))
        };
        let v = if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            let [a, b, c] = parts.as_slice() else {
                return Err(format!("expected START:STEP:STOP, got `{s}`"));
            };
            let (start, step, stop) = (num(a)?, num(b)?, num(c)?);
            if !(step > 0.0) {
                return Err("step must be positive".into());
            }
            let slack = 1e-9 * step;
            (0..)
                .map(|k| start + k as f64 * step)
                .take_while(|&x| x <= stop + slack)
                .map(|x| if (x - stop).abs() <= slack { stop } else { x })
                .collect()
        } else {
            s.split(',').map(num).collect::<Result<Vec<_>, _>>()?
        };
        if v.is_empty() {
            return Err(format!("`{s}` is empty"));
        }
        Ok(RealList(v))
    }
}

/// A positive real or `inf`.
pub fn parse_extended(s: &str) -> Result<f64, String> {
    match s.trim() {
        "inf" | "infinity" => Ok(f64::INFINITY),
        t => t.parse::<f64>().map_err(|_| format!("`{s}` is not a number")),
    }
}

/// A real number, also accepting `2^-52` style powers of two.
pub fn parse_epsilon(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some(exp) = t.strip_prefix("2^") {
        let e: i32 = exp
            .parse()
            .map_err(|_| format!("`{s}`: bad exponent in power of two"))?;
        return Ok(2f64.powi(e));
    }
    t.parse::<f64>().map_err(|_| format!("`{s}` is not a number"))
}
