/// Shortest decimal that reads back to the same `f64`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        // no negative zero in tables
        return "0".into();
    }
    format!("{x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for x in [0.1, -1.0, 1.9876543210123457, 1e-300] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_float(-0.0), "0");
    }
}
