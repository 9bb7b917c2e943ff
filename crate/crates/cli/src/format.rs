//! Text formatting shared by the commands.

use randers_core::scalar::parse_scalar;
use randers_core::AlgebraVector;

/// Twelve significant digits, plain decimal for moderate magnitudes and
/// scientific notation otherwise; trailing zeros are dropped.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.11e}");
        let (mantissa, e) = s.split_once('e').expect("scientific format");
        format!("{}e{e}", trim(mantissa.to_string()))
    }
}

fn trim(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

/// Parses a comma-separated list of rationals such as `1/2,0,-3,0`.
pub fn parse_vector(text: &str, dim: usize) -> Result<AlgebraVector, String> {
    let items: Vec<&str> = text.split(',').collect();
    if items.len() != dim {
        return Err(format!("{text:?}: expected {dim} comma-separated rationals, found {}", items.len()));
    }
    items
        .iter()
        .map(|s| parse_scalar(s).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()
        .map(AlgebraVector::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig12(-4.0 / 9.0), "-0.444444444444");
        assert_eq!(sig12(1.5), "1.5");
        assert_eq!(sig12(-1.0), "-1");
        assert_eq!(sig12(2.0 / 3.0 * 1e-9), "6.66666666667e-10");
        assert_eq!(sig12(123456789012345.0), "1.23456789012e14");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector("1/2, 0,0,-3", 4).unwrap().to_f64(), vec![0.5, 0.0, 0.0, -3.0]);
        assert!(parse_vector("1,2,3", 4).is_err());
        assert!(parse_vector("1,2,3,0.5", 4).is_err());
    }
}
