//! Textual ideal specs: `fin`, `density(0.05)`, `pringsheim(0.1)`,
//! `double-density(0.05)`, `product(I,J)`, `transpose(I)`.

use super::models::{
    fubini_product, make_density_zero, make_double_density, make_fin, make_pringsheim, transpose,
    FiniteIdealModel,
};
use crate::error::{Error, Result};

/// Parse an ideal spec string into a model.
pub fn parse_ideal(spec: &str) -> Result<FiniteIdealModel> {
    let s = spec.trim();
    let err = |reason: &str| Error::IdealSpec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    if s.eq_ignore_ascii_case("fin") {
        return Ok(make_fin());
    }
    let (head, args) = split_call(s).ok_or_else(|| err("expected `name` or `name(args)`"))?;
    match head.to_ascii_lowercase().as_str() {
        "density" => make_density_zero(parse_number(args, spec)?),
        "pringsheim" => make_pringsheim(parse_number(args, spec)?),
        "double-density" | "double_density" => make_double_density(parse_number(args, spec)?),
        "product" => {
            let (left, right) = split_top_comma(args).ok_or_else(|| {
                err("product takes two comma-separated ideal specs")
            })?;
            fubini_product(parse_ideal(left)?, parse_ideal(right)?)
        }
        "transpose" => transpose(parse_ideal(args)?),
        other => Err(Error::IdealSpec {
            spec: spec.to_string(),
            reason: format!("unknown ideal `{other}`"),
        }),
    }
}

fn parse_number(s: &str, spec: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| Error::IdealSpec {
        spec: spec.to_string(),
        reason: format!("`{s}` is not a number"),
    })
}

/// Split `name(args)` into `(name, args)`, requiring the final paren to close
/// the first one.
fn split_call(s: &str) -> Option<(&str, &str)> {
    let open = s.find('(')?;
    if !s.ends_with(')') {
        return None;
    }
    let head = &s[..open];
    let args = &s[open + 1..s.len() - 1];
    let mut depth = 0i32;
    for c in args.chars() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            _ => {}
        }
    }
    (depth == 0).then_some((head, args))
}

/// Split at the single top-level comma.
fn split_top_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}
