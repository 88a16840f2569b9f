/// Formats `x` with 10 significant digits, switching to scientific notation
/// outside `[1e-5, 1e10)`.
pub fn sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".to_owned();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        // rounding can carry into a new leading digit, e.g. 9.9999999999 -> 10.000000000
        let digits = fixed
            .chars()
            .filter(char::is_ascii_digit)
            .skip_while(|&c| c == '0')
            .count();
        if digits > 10 && decimals > 0 {
            let decimals = decimals - 1;
            return format!("{x:.decimals$}");
        }
        fixed
    } else {
        format!("{x:.9e}")
    }
}

/// CSV cells use the shortest representation that round-trips.
pub fn csv_num(x: f64) -> String {
    format!("{x:?}")
}
