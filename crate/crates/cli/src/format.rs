//! Locale-free float formatting shared by every CSV writer.

/// `%.11g`: 11 significant digits, trailing zeros trimmed, exponent form
/// outside [1e-4, 1e11). Negative zero prints as `0`.
pub fn float(x: f64) -> String {
    const DIGITS: i32 = 11;
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if (-4..DIGITS).contains(&exp) {
        trim(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::float;

    #[test]
    fn pinned_values() {
        assert_eq!(float(8f64.sqrt()), "2.8284271247");
        assert_eq!(float(0.0), "0");
        assert_eq!(float(-0.0), "0");
        assert_eq!(float(1.0), "1");
        assert_eq!(float(-2.5), "-2.5");
        assert_eq!(float(2.192752634354626), "2.1927526344");
        assert_eq!(float(123456.0), "123456");
        assert_eq!(float(1e-5), "1e-05");
        assert_eq!(float(0.000123456789012345), "0.00012345678901");
        assert_eq!(float(1.5e-7), "1.5e-07");
        assert_eq!(float(1e11), "1e+11");
        assert_eq!(float(99999999999.9), "1e+11");
        assert_eq!(float(12345678901.0), "12345678901");
        assert_eq!(float(f64::NAN), "nan");
    }

    #[test]
    fn parses_back_to_eleven_digits() {
        for &x in &[std::f64::consts::PI, -1.0 / 3.0, 6.02214076e23, 1.602e-19, 9.120955864630135] {
            let back: f64 = float(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 5e-11, "{x}");
        }
    }
}
