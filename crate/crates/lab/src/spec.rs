//! Catalog specs: `name(key=value, ...)` terms joined by `+`.
//!
//! ```text
//! cos(m=1, n=-1, amp=0.5) + plane
//! bump(center=pi, half_width=2.5, twist=1)
//! ```

use std::f64::consts::{PI, TAU};
use std::fmt;

use semiclassical::amplitude::{Amplitude, Profile};
use semiclassical::symbols::{catalog, Symbol};

use crate::error::{LabError, Result};

/// Longest spec accepted, to keep hostile inputs cheap.
pub const MAX_SPEC_LEN: usize = 4096;
const MAX_TERMS: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub name: String,
    pub params: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogSpec {
    pub terms: Vec<Term>,
}

/// Parses a finite number. Accepts plain floats, `pi`, `tau`, `<x>*pi`,
/// `<x>*tau` and powers of two `2^<k>`.
pub fn parse_number(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix('-') {
        // one sign only; also keeps the recursion depth at one
        if rest.trim_start().starts_with('-') {
            return None;
        }
        return parse_number(rest).map(|v| -v);
    }
    let v = if let Some(k) = s.strip_prefix("2^") {
        let k: i32 = k.trim().parse().ok()?;
        if k.abs() > 1000 {
            return None;
        }
        2f64.powi(k)
    } else if let Some((x, c)) = s.split_once('*') {
        let c = match c.trim() {
            "pi" => PI,
            "tau" => TAU,
            _ => return None,
        };
        parse_plain(x.trim())? * c
    } else {
        match s {
            "pi" => PI,
            "tau" => TAU,
            _ => parse_plain(s)?,
        }
    };
    v.is_finite().then_some(v)
}

fn parse_plain(s: &str) -> Option<f64> {
    // refuse the textual specials f64::from_str would take
    if !s
        .bytes()
        .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'))
    {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn bad(message: impl Into<String>) -> LabError {
    LabError::field("spec", message)
}

/// Splits on `sep` at parenthesis depth zero.
fn split_top(s: &str, sep: char) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0usize, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| bad(format!("unbalanced ')' in '{s}'")))?
            }
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(bad(format!("unbalanced '(' in '{s}'")));
    }
    out.push(&s[start..]);
    Ok(out)
}

impl CatalogSpec {
    pub fn parse(input: &str) -> Result<Self> {
        if input.len() > MAX_SPEC_LEN {
            return Err(bad(format!("spec longer than {MAX_SPEC_LEN} bytes")));
        }
        let parts = split_top(input, '+')?;
        if parts.len() > MAX_TERMS {
            return Err(bad(format!("more than {MAX_TERMS} terms")));
        }
        let terms = parts.into_iter().map(parse_term).collect::<Result<Vec<_>>>()?;
        Ok(Self { terms })
    }

    /// Sum of the catalog symbols.
    pub fn to_symbol(&self) -> Result<Symbol> {
        let mut out: Option<Symbol> = None;
        for t in &self.terms {
            let s = catalog::build(&t.name, &t.params)?;
            out = Some(match out {
                None => s,
                Some(acc) => acc.add(&s),
            });
        }
        let sym = out.ok_or_else(|| bad("empty spec"))?;
        Ok(sym.with_name(self.to_string()))
    }

    /// Single-term amplitude profile: `bump(center, half_width)`,
    /// `gaussian(center, sigma)`, `sine(lo, hi, power)`, `harmonic(m)`,
    /// `uniform` or `zero`; every profile also takes `scale` and `twist`.
    pub fn to_amplitude(&self) -> Result<Amplitude> {
        let [t] = self.terms.as_slice() else {
            return Err(bad("an amplitude spec has exactly one term"));
        };
        let allowed: &[&str] = match t.name.as_str() {
            "bump" => &["center", "half_width"],
            "gaussian" => &["center", "sigma"],
            "sine" => &["lo", "hi", "power"],
            "harmonic" => &["m"],
            "uniform" | "zero" => &[],
            other => {
                return Err(bad(format!(
                    "unknown amplitude '{other}' (known: bump, gaussian, sine, harmonic, uniform, zero)"
                )))
            }
        };
        for (k, _) in &t.params {
            if !allowed.contains(&k.as_str()) && k != "scale" && k != "twist" {
                return Err(bad(format!("amplitude '{}' has no parameter '{k}'", t.name)));
            }
        }
        let get = |k: &str, default: Option<f64>| -> Result<f64> {
            t.params
                .iter()
                .rev()
                .find(|(key, _)| key == k)
                .map(|(_, v)| *v)
                .or(default)
                .ok_or_else(|| bad(format!("amplitude '{}' needs '{k}'", t.name)))
        };
        let positive = |k: &str, v: f64| {
            if v > 0.0 {
                Ok(v)
            } else {
                Err(bad(format!("'{k}' must be positive, got {v}")))
            }
        };
        let profile = match t.name.as_str() {
            "bump" => Profile::Bump {
                center: get("center", None)?,
                half_width: positive("half_width", get("half_width", None)?)?,
            },
            "gaussian" => Profile::Gaussian {
                center: get("center", None)?,
                sigma: positive("sigma", get("sigma", None)?)?,
            },
            "sine" => {
                let (lo, hi) = (get("lo", None)?, get("hi", None)?);
                if hi <= lo {
                    return Err(bad(format!("sine needs lo < hi, got [{lo}, {hi}]")));
                }
                let power = get("power", Some(1.0))?;
                if power.fract() != 0.0 || !(1.0..=16.0).contains(&power) {
                    return Err(bad(format!("sine power must be an integer in 1..=16, got {power}")));
                }
                Profile::SinePower {
                    lo,
                    hi,
                    power: power as u32,
                }
            }
            "harmonic" => {
                let m = get("m", Some(1.0))?;
                if m.fract() != 0.0 || m.abs() > 1e6 {
                    return Err(bad(format!("harmonic m must be an integer, got {m}")));
                }
                Profile::Harmonic { m: m as i64 }
            }
            "uniform" => Profile::Uniform,
            _ => Profile::Zero,
        };
        Ok(Amplitude::new(profile)
            .with_scale(get("scale", Some(1.0))?)
            .with_twist(get("twist", Some(0.0))?))
    }
}

fn parse_term(raw: &str) -> Result<Term> {
    let s = raw.trim();
    let (name, body) = match s.find('(') {
        None => (s, None),
        Some(i) => {
            let inner = s[i + 1..]
                .strip_suffix(')')
                .ok_or_else(|| bad(format!("term '{s}' must end with ')'")))?;
            (s[..i].trim(), Some(inner))
        }
    };
    if !is_ident(name) {
        return Err(bad(format!("'{name}' is not a valid name")));
    }
    let mut params = Vec::new();
    if let Some(body) = body {
        if !body.trim().is_empty() {
            for p in split_top(body, ',')? {
                let (k, v) = p
                    .split_once('=')
                    .ok_or_else(|| bad(format!("parameter '{}' must be key=value", p.trim())))?;
                let k = k.trim();
                if !is_ident(k) {
                    return Err(bad(format!("'{k}' is not a valid parameter name")));
                }
                let v = parse_number(v).ok_or_else(|| bad(format!("'{}' is not a finite number", v.trim())))?;
                params.push((k.to_string(), v));
            }
        }
    }
    Ok(Term {
        name: name.to_string(),
        params,
    })
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&t.name)?;
            if !t.params.is_empty() {
                f.write_str("(")?;
                for (j, (k, v)) in t.params.iter().enumerate() {
                    if j > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}={v}")?;
                }
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}
