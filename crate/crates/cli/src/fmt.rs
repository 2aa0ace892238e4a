//! Number and form formatting: fixed significant digits, with output that
//! re-parses under the CLI grammar.

use fourpoints::numerics::{Cx, SpherePoint};
use fourpoints::CurveForm;

/// Rounds to `digits` significant digits and prints the shortest form of
/// the rounded value, switching to exponent notation outside a comfortable
/// fixed-point range.
pub fn fmt_f64(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let digits = digits.clamp(1, 17);
    let rounded: f64 = format!("{v:.*e}", digits - 1)
        .parse()
        .expect("rounded float re-parses");
    if rounded == 0.0 {
        return "0".to_string();
    }
    let magnitude = rounded.abs();
    if (1e-4..1e16).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Formats a complex value per the CLI grammar (`a+bi`, `bi`, `a`, `i`).
pub fn fmt_cx(z: Cx, digits: usize) -> String {
    let re = fmt_f64(z.re, digits);
    let im = fmt_f64(z.im, digits);
    let imag_part = |s: &str| -> String {
        match s {
            "1" => "i".to_string(),
            "-1" => "-i".to_string(),
            other => format!("{other}i"),
        }
    };
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => imag_part(&im),
        _ if im.starts_with('-') => format!("{re}{}", imag_part(&im)),
        _ => format!("{re}+{}", imag_part(&im)),
    }
}

pub fn fmt_sphere(p: SpherePoint, digits: usize) -> String {
    match p {
        SpherePoint::Finite(z) => fmt_cx(z, digits),
        SpherePoint::Infinity => "inf".to_string(),
    }
}

/// Formats a curve form as a literal the parser accepts back.
pub fn fmt_form(f: &CurveForm, digits: usize) -> String {
    let params: Vec<String> = f.params().iter().map(|&p| fmt_cx(p, digits)).collect();
    format!("{}:{}", f.kind().name(), params.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_complex;
    use fourpoints::numerics::cx;

    #[test]
    fn significant_digit_rounding() {
        assert_eq!(fmt_f64(6.75, 15), "6.75");
        assert_eq!(fmt_f64(1.0 / 3.0, 15), "0.333333333333333");
        assert_eq!(fmt_f64(1.0 / 3.0, 3), "0.333");
        assert_eq!(fmt_f64(-2.5e-7, 15), "-2.5e-7");
        assert_eq!(fmt_f64(0.0, 15), "0");
        assert_eq!(fmt_f64(-0.0, 15), "0");
    }

    #[test]
    fn complex_forms() {
        assert_eq!(fmt_cx(cx(1.5, 2.0), 15), "1.5+2i");
        assert_eq!(fmt_cx(cx(1.5, -2.0), 15), "1.5-2i");
        assert_eq!(fmt_cx(cx(0.0, 1.0), 15), "i");
        assert_eq!(fmt_cx(cx(0.0, -1.0), 15), "-i");
        assert_eq!(fmt_cx(cx(-3.0, 0.0), 15), "-3");
        assert_eq!(fmt_cx(cx(0.0, 0.0), 15), "0");
    }

    #[test]
    fn round_trip_at_full_precision() {
        let samples = [
            cx(0.1 + 0.2, -1.0 / 3.0),
            cx(6.75, 0.0),
            cx(std::f64::consts::PI, -std::f64::consts::E * 1e-9),
            cx(1.0e16, 2.0),
            cx(-0.5, 3f64.sqrt() / 2.0),
        ];
        for z in samples {
            let text = fmt_cx(z, 17);
            let back = parse_complex(&text).unwrap().value().unwrap();
            assert_eq!(back, z, "round trip through {text}");
        }
    }

    #[test]
    fn round_trip_random_values() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xF0F0);
        for _ in 0..2000 {
            let exp = rng.random_range(-12.0..12.0);
            let z = cx(
                rng.random_range(-1.0..1.0) * 10f64.powf(exp),
                rng.random_range(-1.0..1.0) * 10f64.powf(-exp),
            );
            let text = fmt_cx(z, 17);
            let back = parse_complex(&text).unwrap().value().unwrap();
            assert_eq!(back, z, "round trip through {text}");
        }
    }
}
