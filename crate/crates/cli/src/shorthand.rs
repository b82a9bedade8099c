//! Compact descriptors for the command line.
//!
//! Systems: `bernstein:3`, `p_bezier:0.01`, `lambda_mu:2,0`, `yan:-0.5`
//! (also `yan_cubic:`), or the JSON object form. Auxiliary functions:
//! `cubic`, `quintic`, `bernstein_tail:5`, `trig:1`, `expo_rational`,
//! `pseudo_psi`, or JSON. Parsing checks syntax only; value domains are
//! left to the core constructors.

use curvecraft_core::{AuxKind, Family};

/// Split `name:args` and the comma-separated argument list.
fn split(text: &str) -> (&str, Vec<&str>) {
    match text.split_once(':') {
        Some((name, args)) => (name, args.split(',').collect()),
        None => (text, Vec::new()),
    }
}

fn arity(name: &str, args: &[&str], expected: usize) -> Result<(), String> {
    if args.len() == expected {
        Ok(())
    } else {
        Err(format!("`{name}` takes {expected} argument(s), got {}", args.len()))
    }
}

/// Also accepts U+2212 as a minus sign.
fn real(arg: &str) -> Result<f64, String> {
    let normalized = arg.trim().replace('\u{2212}', "-");
    match normalized.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("`{arg}` is not a finite number")),
    }
}

fn integer(arg: &str) -> Result<usize, String> {
    arg.trim()
        .parse::<usize>()
        .map_err(|_| format!("`{arg}` is not a nonnegative integer"))
}

fn json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid descriptor: {e}"))
}

pub fn parse_system(text: &str) -> Result<Family, String> {
    let text = text.trim();
    if text.starts_with('{') {
        return json(text);
    }
    let (name, args) = split(text);
    match name {
        "bernstein" => {
            arity(name, &args, 1)?;
            Ok(Family::Bernstein {
                degree: integer(args[0])?,
            })
        }
        "p_bezier" => {
            arity(name, &args, 1)?;
            Ok(Family::PBezier { gamma: real(args[0])? })
        }
        "lambda_mu" => {
            arity(name, &args, 2)?;
            Ok(Family::LambdaMu {
                lambda: real(args[0])?,
                mu: real(args[1])?,
            })
        }
        "yan" | "yan_cubic" => {
            arity(name, &args, 1)?;
            Ok(Family::YanCubic { lambda: real(args[0])? })
        }
        _ => Err(format!(
            "unknown system `{name}`; expected bernstein:N, p_bezier:G, lambda_mu:L,M, yan:L or a JSON object"
        )),
    }
}

pub fn parse_aux(text: &str) -> Result<AuxKind, String> {
    let text = text.trim();
    if text.starts_with('{') {
        return json(text);
    }
    let (name, args) = split(text);
    let plain = |kind: AuxKind| arity(name, &args, 0).map(|_| kind);
    match name {
        "cubic" => plain(AuxKind::Cubic),
        "quintic" => plain(AuxKind::Quintic),
        "expo_rational" => plain(AuxKind::ExpoRational),
        "pseudo_psi" => plain(AuxKind::PseudoPsi),
        "bernstein_tail" => {
            arity(name, &args, 1)?;
            Ok(AuxKind::BernsteinTail { n: integer(args[0])? })
        }
        "trig" => {
            arity(name, &args, 1)?;
            Ok(AuxKind::Trig { k: integer(args[0])? })
        }
        _ => Err(format!(
            "unknown auxiliary function `{name}`; expected cubic, quintic, bernstein_tail:N, trig:K, expo_rational, pseudo_psi or a JSON object"
        )),
    }
}
