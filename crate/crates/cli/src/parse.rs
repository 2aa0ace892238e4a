//! Parsers for the CLI input grammar: complex literals and form literals.
//!
//! Complex literals follow
//!
//! ```text
//! value := "inf" | "rho" | "rho2" | real | imag | real sign imag
//! real  := ["-"] digits ["." digits] [("e"|"E") ["-"] digits]
//! imag  := [real | "-" | "+"] "i"
//! sign  := "+" | "-"
//! ```
//!
//! with whitespace allowed around the middle sign. `rho` and `rho2` expand
//! to the primitive cube roots of unity `exp(+-2 pi i / 3)`.

use fourpoints::numerics::{cx, Cx, SpherePoint, RHO, RHO2};
use fourpoints::{CurveForm, FormKind, FourPoints};

/// Parse failure with the byte offset of the offending position and a
/// description of what was expected there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }

    /// Shifts the reported offset, for literals embedded in a larger input.
    pub fn shifted(mut self, base: usize) -> Self {
        self.offset += base;
        self
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "parse error at byte {}: {}", self.offset, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { text, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn peek_at(&self, ahead: usize) -> Option<u8> {
        self.text.as_bytes().get(self.pos + ahead).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t')) {
            self.bump();
        }
    }

    fn scan_digits(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.bump();
        }
        self.pos > start
    }

    /// `real := ["-"] digits ["." digits] [("e"|"E") ["-"] digits]`
    fn scan_real(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.bump();
        }
        if !self.scan_digits() {
            return Err(ParseError::new(self.pos, "expected a digit"));
        }
        if self.peek() == Some(b'.') {
            self.bump();
            if !self.scan_digits() {
                return Err(ParseError::new(self.pos, "expected a digit after the decimal point"));
            }
        }
        if matches!(self.peek(), Some(b'e') | Some(b'E')) {
            self.bump();
            if self.peek() == Some(b'-') {
                self.bump();
            }
            if !self.scan_digits() {
                return Err(ParseError::new(self.pos, "expected a digit in the exponent"));
            }
        }
        self.text[start..self.pos]
            .parse::<f64>()
            .map_err(|_| ParseError::new(start, "number out of range"))
    }
}

/// One additive component: a real number or an imaginary one (`i` suffix).
struct Component {
    value: f64,
    imaginary: bool,
    start: usize,
}

fn scan_component(sc: &mut Scanner) -> Result<Component, ParseError> {
    let start = sc.pos;
    // bare "i", "-i", "+i"
    match (sc.peek(), sc.peek_at(1)) {
        (Some(b'i'), _) => {
            sc.bump();
            return Ok(Component {
                value: 1.0,
                imaginary: true,
                start,
            });
        }
        (Some(b'-'), Some(b'i')) => {
            sc.bump();
            sc.bump();
            return Ok(Component {
                value: -1.0,
                imaginary: true,
                start,
            });
        }
        (Some(b'+'), Some(b'i')) => {
            sc.bump();
            sc.bump();
            return Ok(Component {
                value: 1.0,
                imaginary: true,
                start,
            });
        }
        _ => {}
    }
    let value = sc.scan_real()?;
    if sc.peek() == Some(b'i') {
        sc.bump();
        Ok(Component {
            value,
            imaginary: true,
            start,
        })
    } else {
        Ok(Component {
            value,
            imaginary: false,
            start,
        })
    }
}

/// Parses a complex literal (or `inf`) per the grammar above.
pub fn parse_complex(text: &str) -> Result<SpherePoint, ParseError> {
    let trimmed_start = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.is_empty() {
        return Err(ParseError::new(trimmed_start, "expected a complex literal"));
    }
    match body {
        "inf" => return Ok(SpherePoint::Infinity),
        "rho" => return Ok(SpherePoint::Finite(RHO)),
        "rho2" => return Ok(SpherePoint::Finite(RHO2)),
        _ => {}
    }

    let mut sc = Scanner::new(body);
    let first = scan_component(&mut sc).map_err(|e| e.shifted(trimmed_start))?;
    sc.skip_ws();
    if sc.peek().is_none() {
        let z = if first.imaginary {
            cx(0.0, first.value)
        } else {
            cx(first.value, 0.0)
        };
        return check_finite(z, trimmed_start);
    }

    let sign = match sc.peek() {
        Some(b'+') => 1.0,
        Some(b'-') => -1.0,
        _ => {
            return Err(ParseError::new(
                sc.pos + trimmed_start,
                "expected '+', '-' or end of literal",
            ))
        }
    };
    if first.imaginary {
        return Err(ParseError::new(
            first.start + trimmed_start,
            "the real part must come before the imaginary part",
        ));
    }
    sc.bump();
    sc.skip_ws();
    let second_start = sc.pos;
    let second = scan_component(&mut sc).map_err(|e| e.shifted(trimmed_start))?;
    if !second.imaginary {
        return Err(ParseError::new(
            second_start + trimmed_start,
            "expected an imaginary component (suffix 'i')",
        ));
    }
    sc.skip_ws();
    if sc.peek().is_some() {
        return Err(ParseError::new(
            sc.pos + trimmed_start,
            "unexpected trailing characters",
        ));
    }
    check_finite(cx(first.value, sign * second.value), trimmed_start)
}

fn check_finite(z: Cx, offset: usize) -> Result<SpherePoint, ParseError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(SpherePoint::Finite(z))
    } else {
        Err(ParseError::new(offset, "literal overflows double precision"))
    }
}

/// A parsed form literal: a named normal form or a raw 4-point set.
#[derive(Debug, Clone, PartialEq)]
pub enum FormLiteral {
    Curve(FormKind, Vec<Cx>),
    Points(FourPoints),
}

impl FormLiteral {
    /// Validates and builds the curve form (points pass through unchanged).
    pub fn resolve(&self) -> fourpoints::Result<ResolvedForm> {
        match self {
            FormLiteral::Curve(kind, params) => {
                Ok(ResolvedForm::Curve(CurveForm::from_kind(*kind, params)?))
            }
            FormLiteral::Points(pts) => Ok(ResolvedForm::Points(*pts)),
        }
    }
}

/// A form literal after invariant checks.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolvedForm {
    Curve(CurveForm),
    Points(FourPoints),
}

/// Parses `kind:params`, e.g. `weierstrass:0,1`, `legendre:-1`,
/// `points:1,i,-1,-i` (three points imply a fourth at infinity).
pub fn parse_form(text: &str) -> Result<FormLiteral, ParseError> {
    let colon = text
        .find(':')
        .ok_or_else(|| ParseError::new(text.len(), "expected ':' after the form kind"))?;
    let kind_str = text[..colon].trim();
    let params_base = colon + 1;

    let mut values = Vec::new();
    let mut offsets = Vec::new();
    let mut cursor = params_base;
    for piece in text[params_base..].split(',') {
        let sp = parse_complex(piece).map_err(|e| e.shifted(cursor))?;
        values.push(sp);
        offsets.push(cursor);
        cursor += piece.len() + 1;
    }

    if kind_str == "points" {
        let mut pts = values;
        if pts.len() == 3 {
            pts.push(SpherePoint::Infinity);
        }
        if pts.len() != 4 {
            return Err(ParseError::new(
                params_base,
                format!("points takes 3 or 4 values, got {}", pts.len()),
            ));
        }
        let quad = FourPoints::new(pts[0], pts[1], pts[2], pts[3])
            .map_err(|e| ParseError::new(params_base, e.to_string()))?;
        return Ok(FormLiteral::Points(quad));
    }

    let kind = match kind_str {
        "weierstrass" => FormKind::Weierstrass,
        "legendre" => FormKind::Legendre,
        "jacobi" => FormKind::Jacobi,
        "edwards" => FormKind::Edwards,
        "symmetric" => FormKind::Symmetric,
        "hesse" => FormKind::Hesse,
        other => {
            return Err(ParseError::new(
                0,
                format!(
                    "unknown form kind '{other}' (expected weierstrass, legendre, jacobi, edwards, symmetric, hesse or points)"
                ),
            ))
        }
    };
    let want = if kind == FormKind::Weierstrass { 2 } else { 1 };
    if values.len() != want {
        return Err(ParseError::new(
            params_base,
            format!("{kind_str} takes {want} parameter(s), got {}", values.len()),
        ));
    }
    let mut params = Vec::with_capacity(values.len());
    for (sp, off) in values.iter().zip(offsets) {
        match sp.value() {
            Some(z) => params.push(z),
            None => {
                return Err(ParseError::new(
                    off,
                    "form parameters must be finite (got 'inf')",
                ))
            }
        }
    }
    Ok(FormLiteral::Curve(kind, params))
}

/// Parses the kind name used by `convert --to`.
pub fn parse_kind(text: &str) -> Result<FormKind, ParseError> {
    match text {
        "weierstrass" => Ok(FormKind::Weierstrass),
        "legendre" => Ok(FormKind::Legendre),
        "jacobi" => Ok(FormKind::Jacobi),
        "edwards" => Ok(FormKind::Edwards),
        "symmetric" => Ok(FormKind::Symmetric),
        "hesse" => Ok(FormKind::Hesse),
        other => Err(ParseError::new(
            0,
            format!("unknown target kind '{other}'"),
        )),
    }
}
