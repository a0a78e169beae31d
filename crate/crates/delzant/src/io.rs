//! Input formats and output emitters.
//!
//! The polytope JSON format, the slope / anchor / curve-spec argument
//! grammars, exact decimal and fraction offset parsing, and the CSV / SVG
//! writers. All parsers here accept untrusted input: they must return
//! structured errors, never panic.

use crate::geometry::{bounding_box, CurveSample, IntersectionPoint};

use crate::polytope::{DelzantPolytope, Halfspace, Location, PolytopeError, Rational};
use num::{BigInt, Zero};
use serde_json::Value;
use std::fmt::Write as _;
use thiserror::Error;

/// Hard cap on facet count; vertex enumeration is combinatorial.
const MAX_FACETS: usize = 64;
/// Mantissa length above which a decimal offset is rejected as lossy.
const MAX_SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Polytope(#[from] PolytopeError),
}

fn field_err(path: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field {
        path: path.into(),
        message: message.into(),
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Parse and validate a polytope document:
/// `{"dim": n, "facets": [{"normal": [..], "offset": o}, ..]}` where each
/// offset is an integer, a decimal with at most 12 significant digits, or
/// an exact fraction string "p/q".
pub fn parse_polytope_json(text: &str) -> Result<DelzantPolytope, ParseError> {
    let (dim, facets) = parse_polytope_document(text)?;
    Ok(DelzantPolytope::validate(dim, facets)?)
}

/// The shape-level parse without Delzant validation.
pub fn parse_polytope_document(text: &str) -> Result<(usize, Vec<Halfspace>), ParseError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| field_err("$", "expected a JSON object"))?;
    let dim = obj
        .get("dim")
        .ok_or_else(|| field_err("dim", "missing"))?
        .as_u64()
        .ok_or_else(|| field_err("dim", "expected a positive integer"))? as usize;
    if !(1..=6).contains(&dim) {
        return Err(field_err("dim", "supported dimensions are 1..=6"));
    }
    let facets_value = obj
        .get("facets")
        .ok_or_else(|| field_err("facets", "missing"))?
        .as_array()
        .ok_or_else(|| field_err("facets", "expected an array"))?;
    if facets_value.is_empty() {
        return Err(field_err("facets", "must not be empty"));
    }
    if facets_value.len() > MAX_FACETS {
        return Err(field_err(
            "facets",
            format!("too many facets (maximum {MAX_FACETS})"),
        ));
    }
    let mut facets = Vec::with_capacity(facets_value.len());
    for (idx, facet) in facets_value.iter().enumerate() {
        let path = format!("facets[{idx}]");
        let obj = facet
            .as_object()
            .ok_or_else(|| field_err(&path, "expected an object"))?;
        let normal_value = obj
            .get("normal")
            .ok_or_else(|| field_err(format!("{path}.normal"), "missing"))?
            .as_array()
            .ok_or_else(|| field_err(format!("{path}.normal"), "expected an array"))?;
        let mut normal = Vec::with_capacity(normal_value.len());
        for (c, entry) in normal_value.iter().enumerate() {
            let x = entry.as_i64().ok_or_else(|| {
                field_err(format!("{path}.normal[{c}]"), "expected an integer")
            })?;
            if x.unsigned_abs() > 1 << 32 {
                return Err(field_err(format!("{path}.normal[{c}]"), "entry too large"));
            }
            normal.push(x);
        }
        if normal.len() != dim {
            return Err(field_err(
                format!("{path}.normal"),
                format!("expected {dim} entries, found {}", normal.len()),
            ));
        }
        if normal.iter().all(|&x| x == 0) {
            return Err(field_err(format!("{path}.normal"), "normal must be nonzero"));
        }
        let offset_value = obj
            .get("offset")
            .ok_or_else(|| field_err(format!("{path}.offset"), "missing"))?;
        let offset = parse_offset(offset_value)
            .map_err(|m| field_err(format!("{path}.offset"), m))?;
        // normals must arrive primitive; silent rescaling would change kappa
        let gcd = normal.iter().fold(0_i64, |acc, &x| gcd_i64(acc, x));
        if gcd != 1 {
            return Err(ParseError::Polytope(PolytopeError::NonPrimitiveNormal(idx)));
        }
        facets.push(Halfspace::new(normal, offset).map_err(ParseError::Polytope)?);
    }
    Ok((dim, facets))
}

fn parse_offset(value: &Value) -> Result<Rational, String> {
    match value {
        Value::Number(n) => parse_exact_number(&n.to_string()),
        Value::String(s) => parse_exact_number(s),
        _ => Err("expected a number or a fraction string".into()),
    }
}

/// Parse "p/q", an integer, or a decimal literal (optionally with an
/// exponent) into an exact rational. Decimals with more than 12
/// significant digits are rejected to avoid silent precision loss.
pub fn parse_exact_number(text: &str) -> Result<Rational, String> {
    let s = text.trim();
    if s.is_empty() {
        return Err("empty number".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let p: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("invalid numerator '{num}'"))?;
        let q: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("invalid denominator '{den}'"))?;
        if q.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(Rational::new(p, q));
    }
    parse_decimal(s)
}

fn parse_decimal(s: &str) -> Result<Rational, String> {
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..]
                .parse()
                .map_err(|_| format!("invalid exponent in '{s}'"))?;
            if e.abs() > 99 {
                return Err("exponent out of range".into());
            }
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (sign, digits_part) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits_part.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits_part, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("no digits in '{s}'"));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(format!("invalid digits in '{s}'"));
    }
    let joined = format!("{int_part}{frac_part}");
    let significant = joined
        .as_bytes()
        .iter()
        .position(|&b| b != b'0')
        .map(|first| {
            let last = joined.as_bytes().iter().rposition(|&b| b != b'0').unwrap();
            last - first + 1
        })
        .unwrap_or(0);
    if significant > MAX_SIG_DIGITS {
        return Err(format!(
            "more than {MAX_SIG_DIGITS} significant digits; use a fraction string for exact input"
        ));
    }
    let mantissa_int: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| format!("invalid digits in '{s}'"))?
    };
    let mut value = Rational::from_integer(mantissa_int);
    if sign {
        value = -value;
    }
    let shift = exp10 - frac_part.len() as i32;
    let ten = BigInt::from(10);
    if shift >= 0 {
        value *= Rational::from_integer(ten.pow(shift as u32));
    } else {
        value /= Rational::from_integer(ten.pow((-shift) as u32));
    }
    Ok(value)
}

/// Canonical JSON for a validated polytope: integer offsets as numbers,
/// everything else as exact fraction strings.
pub fn write_polytope_json(polytope: &DelzantPolytope) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"dim\": {},", polytope.dim());
    out.push_str("  \"facets\": [\n");
    for (i, f) in polytope.facets().iter().enumerate() {
        let normal = f
            .normal
            .to_i64()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let offset = if f.offset.is_integer() {
            f.offset.numer().to_string()
        } else {
            format!("\"{}/{}\"", f.offset.numer(), f.offset.denom())
        };
        let comma = if i + 1 == polytope.facets().len() { "" } else { "," };
        let _ = writeln!(
            out,
            "    {{\"normal\": [{normal}], \"offset\": {offset}}}{comma}"
        );
    }
    out.push_str("  ]\n}\n");
    out
}

/// Parse "a,b,..." into an integer slope vector.
pub fn parse_slope(text: &str) -> Result<Vec<i64>, ParseError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.is_empty() || text.trim().is_empty() {
        return Err(field_err("slope", "expected comma-separated integers"));
    }
    if parts.len() > 16 {
        return Err(field_err("slope", "too many components"));
    }
    parts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| field_err(format!("slope[{i}]"), format!("'{}' is not an integer", p.trim())))
        })
        .collect()
}

/// Parse "x,y,..." where each component is a decimal or `log:v` meaning
/// ln(v); `log:2` makes the anchor log 2 exactly expressible.
pub fn parse_anchor(text: &str) -> Result<Vec<f64>, ParseError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.is_empty() || text.trim().is_empty() {
        return Err(field_err("anchor", "expected comma-separated components"));
    }
    if parts.len() > 16 {
        return Err(field_err("anchor", "too many components"));
    }
    parts
        .iter()
        .enumerate()
        .map(|(i, raw)| {
            let p = raw.trim();
            let path = format!("anchor[{i}]");
            let value = if let Some(arg) = p.strip_prefix("log:") {
                let x: f64 = arg
                    .trim()
                    .parse()
                    .map_err(|_| field_err(&path, format!("'{arg}' is not a number")))?;
                if !(x.is_finite() && x > 0.0) {
                    return Err(field_err(&path, "log: argument must be positive"));
                }
                x.ln()
            } else {
                p.parse::<f64>()
                    .map_err(|_| field_err(&path, format!("'{p}' is not a number")))?
            };
            if !value.is_finite() {
                return Err(field_err(&path, "component must be finite"));
            }
            Ok(value)
        })
        .collect()
}

/// One `--curve` argument: "slope=1,0;anchor=log:2,0" (anchor optional).
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub slope: Vec<i64>,
    pub anchor: Option<Vec<f64>>,
}

pub fn parse_curve_spec(text: &str) -> Result<CurveSpec, ParseError> {
    let mut slope = None;
    let mut anchor = None;
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| field_err("curve", format!("expected key=value, found '{part}'")))?;
        match key.trim() {
            "slope" => {
                if slope.is_some() {
                    return Err(field_err("curve", "duplicate slope"));
                }
                slope = Some(parse_slope(value)?);
            }
            "anchor" => {
                if anchor.is_some() {
                    return Err(field_err("curve", "duplicate anchor"));
                }
                anchor = Some(parse_anchor(value)?);
            }
            other => {
                return Err(field_err(
                    "curve",
                    format!("unknown key '{other}' (expected slope or anchor)"),
                ));
            }
        }
    }
    let slope = slope.ok_or_else(|| field_err("curve", "missing slope"))?;
    Ok(CurveSpec { slope, anchor })
}

fn location_label(location: &Location) -> String {
    match location {
        Location::Interior => "interior".into(),
        Location::Boundary { facets, vertex } => match vertex {
            Some(v) => format!("vertex:{v}"),
            None => format!(
                "facet:{}",
                facets
                    .iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
                    .join("+")
            ),
        },
        Location::Outside { facet } => format!("outside:{facet}"),
    }
}

/// CSV for a traced curve: `s,xi1,xi2,location`.
pub fn write_curve_csv(curve: &CurveSample) -> String {
    let mut out = String::from("s,xi1,xi2,location\n");
    for p in &curve.points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            p.s,
            p.position[0],
            p.position[1],
            location_label(&p.location)
        );
    }
    out
}

const CURVE_COLORS: [&str; 6] = [
    "#1f6fb2", "#c23b22", "#2e8540", "#8a4fbe", "#b8860b", "#0f8a8a",
];

/// SVG scene: polytope outline, traced curves, and intersection markers.
/// The viewBox is the polytope's bounding box with a 5% margin; the y axis
/// is flipped so the picture matches the usual orientation.
pub fn write_scene_svg(
    polytope: &DelzantPolytope,
    curves: &[&CurveSample],
    intersections: &[IntersectionPoint],
) -> String {
    let (lo, hi) = bounding_box(polytope);
    let w = hi[0] - lo[0];
    let h = hi[1] - lo[1];
    let margin = 0.05 * w.max(h);
    let flip = |y: f64| (hi[1] + lo[1]) - y;
    let fmt = |x: f64| format!("{x:.4}");

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"{} {} {} {}\">",
        fmt(lo[0] - margin),
        fmt(lo[1] - margin),
        fmt(w + 2.0 * margin),
        fmt(h + 2.0 * margin)
    );

    // polygon outline: vertices ordered by angle around the centroid
    let centroid = polytope.vertex_centroid();
    let mut ordered: Vec<Vec<f64>> = polytope.vertices().iter().map(|v| v.position_f64()).collect();
    ordered.sort_by(|a, b| {
        let aa = (a[1] - centroid[1]).atan2(a[0] - centroid[0]);
        let ab = (b[1] - centroid[1]).atan2(b[0] - centroid[0]);
        aa.partial_cmp(&ab).unwrap_or(std::cmp::Ordering::Equal)
    });
    let pts = ordered
        .iter()
        .map(|p| format!("{},{}", fmt(p[0]), fmt(flip(p[1]))))
        .collect::<Vec<_>>()
        .join(" ");
    let stroke_w = 0.008 * w.max(h);
    let _ = writeln!(
        out,
        "  <polygon points=\"{pts}\" fill=\"#f4f1e8\" stroke=\"#333333\" stroke-width=\"{}\"/>",
        fmt(stroke_w)
    );

    for (i, curve) in curves.iter().enumerate() {
        let color = CURVE_COLORS[i % CURVE_COLORS.len()];
        let pts = curve
            .points
            .iter()
            .map(|p| format!("{},{}", fmt(p.position[0]), fmt(flip(p.position[1]))))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            "  <polyline points=\"{pts}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"{}\"/>",
            fmt(stroke_w)
        );
    }

    let r = 0.015 * w.max(h);
    for p in intersections {
        let fill = match p.location {
            Location::Interior => "#111111",
            _ => "#c23b22",
        };
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\"/>",
            fmt(p.position[0]),
            fmt(flip(p.position[1])),
            fmt(r)
        );
    }
    out.push_str("</svg>\n");
    out
}
