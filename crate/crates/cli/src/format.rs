//! Fixed six-significant-digit number rendering, following C's `%g`.

const SIG: i32 = 6;

/// Formats `x` like `printf("%.6g")`: fixed notation for exponents in
/// `[-4, 6)`, scientific otherwise, trailing zeros removed.
pub fn sig6(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    // Rounding to SIG digits may bump the exponent (e.g. 999999.5).
    let sci = format!("{:.*e}", (SIG - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..SIG).contains(&exp) {
        let decimals = (SIG - 1 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            sign,
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::sig6;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (-0.0, "0"),
            (1.0, "1"),
            (-100.0, "-100"),
            (-102.4, "-102.4"),
            (0.5, "0.5"),
            (152.0102999, "152.01"),
            (123456.7, "123457"),
            (999999.5, "1e+06"),
            (1234567.0, "1.23457e+06"),
            (0.0001234567, "0.000123457"),
            (0.00001234567, "1.23457e-05"),
            (12.61834, "12.6183"),
            (1.0 / 3.0, "0.333333"),
        ];
        for (x, want) in cases {
            assert_eq!(sig6(x), want, "{x}");
        }
    }
}
