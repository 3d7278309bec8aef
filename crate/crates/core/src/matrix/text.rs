//! Plain-text matrix format: a `rows cols` header line, then one line per row
//! of space-separated `re±imi` entries with nine decimals. Plain reals are
//! accepted on input.

use super::{CMatrix, Complex, MatrixError};

fn clean(x: f64) -> f64 {
    // Avoid printing "-0.000000000".
    if x.abs() < 5e-10 {
        0.0
    } else {
        x
    }
}

pub fn format_complex(z: Complex) -> String {
    format!("{:.9}{:+.9}i", clean(z.re), clean(z.im))
}

pub fn format_matrix(m: &CMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format_complex(m[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Accepts `re±imi`, a plain real `re`, or a pure imaginary `imi`.
pub fn parse_complex(tok: &str) -> Option<Complex> {
    tok.parse().ok()
}

pub fn parse_matrix(text: &str) -> Result<CMatrix, MatrixError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let err = |line: usize, msg: String| MatrixError::Parse { line, msg };

    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| err(hline, format!("bad header {header:?}")))?;
    let [rows, cols] = dims[..] else {
        return Err(err(hline, format!("header must be \"rows cols\", got {header:?}")));
    };

    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| err(hline + r + 1, format!("expected {rows} rows, found {r}")))?;
        let before = data.len();
        for tok in line.split_whitespace() {
            data.push(parse_complex(tok).ok_or_else(|| err(ln, format!("bad entry {tok:?}")))?);
        }
        if data.len() - before != cols {
            return Err(err(ln, format!("expected {cols} entries, found {}", data.len() - before)));
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "trailing content after matrix".into()));
    }
    Ok(CMatrix::from_vec(rows, cols, data).expect("entry count checked"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formats_entries() {
        assert_eq!(format_complex(Complex::new(0.5, 0.0)), "0.500000000+0.000000000i");
        assert_eq!(format_complex(Complex::new(-1e-17, -0.25)), "0.000000000-0.250000000i");
        let m = CMatrix::real_diag(&[0.5, 0.5]);
        assert_eq!(
            format_matrix(&m),
            "2 2\n0.500000000+0.000000000i 0.000000000+0.000000000i\n0.000000000+0.000000000i 0.500000000+0.000000000i\n"
        );
    }

    #[test]
    fn parses_entries() {
        assert_eq!(parse_complex("1.5-2i"), Some(Complex::new(1.5, -2.0)));
        assert_eq!(parse_complex("-1e-3+2.5E+2i"), Some(Complex::new(-1e-3, 250.0)));
        assert_eq!(parse_complex("1.0"), Some(Complex::new(1.0, 0.0)));
        assert_eq!(parse_complex("-0.5i"), Some(Complex::new(0.0, -0.5)));
        assert_eq!(parse_complex("abc+1i"), None);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(parse_matrix(""), Err(MatrixError::Parse { line: 1, .. })));
        assert!(matches!(parse_matrix("2 2\n1+0i 0+0i\n"), Err(MatrixError::Parse { line: 3, .. })));
        assert!(matches!(parse_matrix("1 2\n1+0i\n"), Err(MatrixError::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("1 1\n1+0i\n1+0i\n"), Err(MatrixError::Parse { line: 3, .. })));
        assert!(matches!(parse_matrix("x\n"), Err(MatrixError::Parse { line: 1, .. })));
    }

    proptest! {
        #[test]
        fn round_trip_to_nine_decimals(
            rows in 1usize..4,
            cols in 1usize..4,
            seed in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 16),
        ) {
            let data: Vec<Complex> = seed.iter().take(rows * cols).map(|&(a, b)| Complex::new(a, b)).collect();
            prop_assume!(data.len() == rows * cols);
            let m = CMatrix::from_vec(rows, cols, data).unwrap();
            let back = parse_matrix(&format_matrix(&m)).unwrap();
            prop_assert!(back.max_abs_diff(&m).unwrap() <= 1e-9);
        }
    }
}
