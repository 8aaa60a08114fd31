//! JSON admission and emission for matrices.
//!
//! The wire shape is `{"n": 3, "entries": [[re, im], ...]}` with the entries
//! row-major, `n²` of them, every component finite. Inputs are capped at
//! n ≤ 64 on admission; emission has no cap (derived operators such as
//! compounds can legitimately be larger).

use crate::error::{Error, Result};
use crate::linalg::{HermitianMatrix, Matrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Largest matrix size accepted from external input.
pub const MAX_INPUT_DIM: usize = 64;

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    entries: Vec<[f64; 2]>,
}

/// Parse a square matrix from its JSON form, enforcing the admission rules
/// (1 ≤ n ≤ 64, exactly n² entries, all components finite).
pub fn matrix_from_json_str(s: &str) -> Result<Matrix> {
    let raw: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    if raw.n == 0 {
        return Err(Error::Json("matrix size n must be at least 1".into()));
    }
    if raw.n > MAX_INPUT_DIM {
        return Err(Error::Json(format!(
            "matrix size n = {} exceeds the input cap of {MAX_INPUT_DIM}",
            raw.n
        )));
    }
    let expected = raw.n * raw.n;
    if raw.entries.len() != expected {
        return Err(Error::Json(format!(
            "expected {expected} entries for n = {}, got {}",
            raw.n,
            raw.entries.len()
        )));
    }
    let mut data = Vec::with_capacity(expected);
    for (idx, &[re, im]) in raw.entries.iter().enumerate() {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Json(format!(
                "entry {idx} is not finite: [{re}, {im}]"
            )));
        }
        data.push(Complex64::new(re, im));
    }
    Matrix::new(raw.n, raw.n, data)
}

/// Parse a Hermitian matrix: admission rules plus the symmetry check.
///
/// The check permits only serialization-level noise (relative 1e-12); an
/// input that is genuinely asymmetric is rejected rather than silently
/// averaged, since that would mask data errors.
pub fn hermitian_from_json_str(s: &str) -> Result<HermitianMatrix> {
    let m = matrix_from_json_str(s)?;
    let defect = m.sub(&m.adjoint()).max_abs();
    let scale = m.max_abs().max(1.0);
    if defect > 1e-12 * scale {
        return Err(Error::Json(format!(
            "matrix is not Hermitian: max |M - M*| = {defect:.3e} exceeds the admission \
             tolerance {:.3e}",
            1e-12 * scale
        )));
    }
    HermitianMatrix::new(&m)
}

/// Serialize a square matrix to the JSON wire shape (compact, row-major).
pub fn matrix_to_json_string(m: &Matrix) -> Result<String> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension(format!(
            "JSON form is for square matrices, got {}×{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let v = m[(i, j)];
            entries.push([v.re, v.im]);
        }
    }
    serde_json::to_string(&MatrixJson { n, entries }).map_err(|e| Error::Json(e.to_string()))
}

/// Read and parse a square matrix from a JSON file.
pub fn matrix_from_json_file(path: &std::path::Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)?;
    matrix_from_json_str(&text)
}

/// Read and parse a Hermitian matrix from a JSON file.
pub fn hermitian_from_json_file(path: &std::path::Path) -> Result<HermitianMatrix> {
    let text = std::fs::read_to_string(path)?;
    hermitian_from_json_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_entries_exactly() {
        let m = Matrix::new(
            2,
            2,
            vec![
                Complex64::new(1.25, -0.5),
                Complex64::new(0.1, 0.2),
                Complex64::new(0.1, -0.2),
                Complex64::new(std::f64::consts::PI, 0.0),
            ],
        )
        .unwrap();
        let s = matrix_to_json_string(&m).unwrap();
        let back = matrix_from_json_str(&s).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(m[(i, j)], back[(i, j)]);
            }
        }
    }

    #[test]
    fn round_trip_is_bitwise_on_full_precision_mantissas() {
        // Values with no short decimal form; parsing must reproduce every
        // bit, not just a close neighbor.
        let awkward = [
            0.828_562_595_340_037_8_f64,
            -3.334_385_706_124_602_5,
            1.0 / 3.0,
            (2.0f64).sqrt() * 1e-7,
            -1.0 / 1.1e300,
        ];
        let mut data = Vec::new();
        for (i, &v) in awkward.iter().enumerate() {
            data.push(Complex64::new(v, awkward[(i + 1) % awkward.len()]));
        }
        data.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(4));
        let m = Matrix::new(3, 3, data).unwrap();
        let back = matrix_from_json_str(&matrix_to_json_string(&m).unwrap()).unwrap();
        for (x, y) in m.data().iter().zip(back.data()) {
            assert_eq!(x.re.to_bits(), y.re.to_bits());
            assert_eq!(x.im.to_bits(), y.im.to_bits());
        }
    }

    #[test]
    fn admission_rejects_bad_shapes() {
        assert!(matches!(
            matrix_from_json_str(r#"{"n": 0, "entries": []}"#),
            Err(Error::Json(_))
        ));
        assert!(matches!(
            matrix_from_json_str(r#"{"n": 2, "entries": [[1.0, 0.0]]}"#),
            Err(Error::Json(_))
        ));
        assert!(matches!(
            matrix_from_json_str(r#"{"n": 1, "entries": [[1.0]]}"#),
            Err(Error::Json(_))
        ));
        let too_big = format!(
            r#"{{"n": 65, "entries": [{}]}}"#,
            vec!["[0.0, 0.0]"; 65 * 65].join(",")
        );
        assert!(matches!(
            matrix_from_json_str(&too_big),
            Err(Error::Json(_))
        ));
    }

    #[test]
    fn admission_rejects_non_finite_entries() {
        let s = r#"{"n": 1, "entries": [[1e999, 0.0]]}"#;
        // serde_json parses 1e999 as infinity; the finiteness gate catches it.
        assert!(matches!(matrix_from_json_str(s), Err(Error::Json(_))));
    }

    #[test]
    fn hermitian_admission_enforces_symmetry() {
        let s = r#"{"n": 2, "entries": [[1.0, 0.0], [0.5, 0.0], [0.9, 0.0], [2.0, 0.0]]}"#;
        assert!(hermitian_from_json_str(s).is_err());
        let ok = r#"{"n": 2, "entries": [[1.0, 0.0], [0.5, 0.1], [0.5, -0.1], [2.0, 0.0]]}"#;
        assert!(hermitian_from_json_str(ok).is_ok());
    }
}
