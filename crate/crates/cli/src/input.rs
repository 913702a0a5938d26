use serde_json::Value;
use unf_core::{Error, Mat, Rational};

use crate::CliError;

/// Parses `{"matrix": [["1", "1/2"], …]}` into a square, non-empty matrix.
pub fn parse_matrix_file(bytes: &[u8]) -> Result<Mat, CliError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    let rows = value
        .get("matrix")
        .ok_or_else(|| CliError::Parse("missing \"matrix\" key".into()))?
        .as_array()
        .ok_or_else(|| CliError::Parse("\"matrix\" must be an array of rows".into()))?;
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::Parse(format!("row {i} is not an array")))?;
        let mut entries = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            let s = x
                .as_str()
                .ok_or_else(|| CliError::Parse(format!("entry ({i}, {j}) must be a rational string")))?;
            let r: Rational = s
                .parse()
                .map_err(|e: Error| CliError::Parse(format!("entry ({i}, {j}): {e}")))?;
            entries.push(r);
        }
        parsed.push(entries);
    }
    let m = Mat::from_rows(parsed).map_err(|e| CliError::Parse(e.to_string()))?;
    if m.rows() == 0 || m.cols() == 0 {
        return Err(CliError::Shape(Error::EmptyMatrix.to_string()));
    }
    if !m.is_square() {
        return Err(CliError::Shape(
            Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            }
            .to_string(),
        ));
    }
    Ok(m)
}

/// The input format for `m`.
pub fn matrix_file(m: &Mat) -> String {
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let mut s = serde_json::to_string(&serde_json::json!({ "matrix": rows })).expect("strings serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use unf_core::ratio;

    #[test]
    fn parses_rationals() {
        let m = parse_matrix_file(br#"{"matrix": [["1","1/2"],["0","2"]]}"#).unwrap();
        assert_eq!(m[(0, 1)], ratio(1, 2));
        assert_eq!(m[(1, 1)], ratio(2, 1));
    }

    #[test]
    fn classifies_errors() {
        let parse = |s: &str| parse_matrix_file(s.as_bytes()).unwrap_err().exit_code();
        assert_eq!(parse(r#"{"matrix": [["1","2"],["3"]]}"#), 2);
        assert_eq!(parse(r#"{"matrix": [["1/0"]]}"#), 2);
        assert_eq!(parse(r#"{"matrix": [[""]]}"#), 2);
        assert_eq!(parse(r#"{"matrix": [[1]]}"#), 2);
        assert_eq!(parse(r#"{"rows": []}"#), 2);
        assert_eq!(parse("not json"), 2);
        assert_eq!(parse(r#"{"matrix": [["1","2"]]}"#), 4);
        assert_eq!(parse(r#"{"matrix": []}"#), 4);
        assert_eq!(parse(r#"{"matrix": [[]]}"#), 4);
    }

    #[test]
    fn round_trip() {
        let m = Mat::from_rows(vec![vec![ratio(-3, 4), ratio(5, 1)], vec![ratio(0, 1), ratio(7, 9)]]).unwrap();
        assert_eq!(parse_matrix_file(matrix_file(&m).as_bytes()).unwrap(), m);
    }
}
