//! Locale-independent CSV rendering with LF line endings.

/// 12 significant digits; scientific notation when `0 < |x| < 1e-4`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exponent) = sci.split_once('e').expect("exponent marker");
    if x.abs() < 1e-4 {
        return format!("{}e{}", trim_zeros(mantissa), exponent);
    }
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let decimals = (11 - exponent).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Comma-joined header or data line, `\n` terminated.
pub(crate) fn line<I, S>(fields: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut out = fields
        .into_iter()
        .map(|f| f.as_ref().to_string())
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    out
}
