//! Number formatting for reports and CSV.

/// `v` rounded to 9 significant digits; lowercase `nan`, no trailing zeros.
pub fn sig9(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{v:.8e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        "0".into()
    } else if (1e-4..1e15).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Shortest representation that parses back to exactly `v`; integral values
/// print without a decimal point.
pub fn exact(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v + 0.0)
    } else {
        format!("{v:?}")
    }
}

pub fn sig9_opt(v: Option<f64>) -> String {
    sig9(v.unwrap_or(f64::NAN))
}
