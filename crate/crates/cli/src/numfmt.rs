//! Locale-independent number formatting with a fixed count of significant
//! digits.

/// `x` rounded to `digits` significant digits.
pub fn round_sig(x: f64, digits: u8) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", usize::from(digits) - 1, x).parse().expect("formatted float parses")
}

/// Like C's `%.Ng`: positional notation for moderate exponents, scientific
/// otherwise, trailing zeros removed.
pub fn fmt_sig(x: f64, digits: u8) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = usize::from(digits);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        return format!("{}e{}", trim_zeros(mantissa), exp);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `re+imi` with both parts at the requested precision.
pub fn fmt_complex(re: f64, im: f64, digits: u8) -> String {
    let im_part = fmt_sig(im, digits);
    if im_part.starts_with('-') {
        format!("{}{}i", fmt_sig(re, digits), im_part)
    } else {
        format!("{}+{}i", fmt_sig(re, digits), im_part)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.456_946_581_044_463_6, 15), "0.456946581044464");
        assert_eq!(fmt_sig(0.456_946_581_044_463_6, 17), "0.45694658104446362");
        assert_eq!(fmt_sig(2.5, 15), "2.5");
        assert_eq!(fmt_sig(-1234.0, 3), "-1.23e3");
        assert_eq!(fmt_sig(1.5e-9, 15), "1.5e-9");
        assert_eq!(fmt_sig(0.0, 15), "0");
    }

    #[test]
    fn full_precision_round_trips() {
        for x in [0.1, 1.0 / 3.0, 6.02e23, -2.2e-308, 0.456_946_581_044_463_6] {
            assert_eq!(fmt_sig(x, 17).parse::<f64>().unwrap(), x);
            assert_eq!(round_sig(x, 17), x);
        }
        assert_eq!(round_sig(1.0 / 3.0, 3), 0.333);
    }

    #[test]
    fn complex_sign() {
        assert_eq!(fmt_complex(0.5, -0.25, 15), "0.5-0.25i");
        assert_eq!(fmt_complex(-1.0, 0.0, 15), "-1+0i");
    }
}
