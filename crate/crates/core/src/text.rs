//! Plain-text rendering helpers shared by reports and the CLI.

use crate::fock::StateVector;

/// Renders `x` with `digits` significant digits: fixed notation for moderate
/// magnitudes, scientific otherwise. No symbolic forms.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let exponent = x.abs().log10().floor() as i32;
    if (-5..digits as i32).contains(&exponent) {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{:.*e}", digits - 1, x)
    }
}

/// One line per term: configuration, real part, imaginary part.
pub fn render_state(state: &StateVector) -> String {
    let mut out = String::new();
    for (config, amp) in state.terms() {
        out.push_str(&format!(
            "{config}  {}  {}\n",
            format_significant(amp.re, 12),
            format_significant(amp.im, 12)
        ));
    }
    out
}
