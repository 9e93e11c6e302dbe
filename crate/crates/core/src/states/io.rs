//! JSON exchange format: `{"dim_a": 2, "dim_b": d, "matrix": [[[re, im], ...], ...]}`.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::matcore::ComplexMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityMatrixJson {
    pub dim_a: usize,
    pub dim_b: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl From<&DensityMatrix> for DensityMatrixJson {
    fn from(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let matrix = (0..m.rows())
            .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Self {
            dim_a: rho.dim_a(),
            dim_b: rho.dim_b(),
            matrix,
        }
    }
}

impl TryFrom<DensityMatrixJson> for DensityMatrix {
    type Error = Error;

    fn try_from(json: DensityMatrixJson) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = json
            .matrix
            .iter()
            .map(|row| row.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let m = ComplexMatrix::from_rows(&rows)?;
        DensityMatrix::with_dims(m, json.dim_a, json.dim_b)
    }
}

impl DensityMatrix {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DensityMatrixJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: DensityMatrixJson = serde_json::from_str(text)?;
        json.try_into()
    }
}

pub fn read_density_matrix(path: &Path) -> Result<DensityMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    DensityMatrix::from_json(&text)
}

pub fn write_density_matrix(rho: &DensityMatrix, path: &Path) -> Result<()> {
    fs::write(path, rho.to_json() + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{named, sample_hs_random};
    use proptest::prelude::*;

    #[test]
    fn json_layout() {
        let text = named::bell(1).unwrap().to_json();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["dim_a"], 2);
        assert_eq!(value["dim_b"], 2);
        assert_eq!(value["matrix"].as_array().unwrap().len(), 4);
        assert!((value["matrix"][0][3][0].as_f64().unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        assert!(matches!(DensityMatrix::from_json("{\"dim_a\": 2"), Err(Error::Parse(_))));
        let bad_dims = r#"{"dim_a": 2, "dim_b": 3, "matrix": [[[1.0, 0.0]]]}"#;
        assert!(matches!(DensityMatrix::from_json(bad_dims), Err(Error::DimensionMismatch(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn json_roundtrip_is_exact(seed in any::<u64>(), d in 2usize..5) {
            let rho = sample_hs_random(2 * d, seed);
            let back = DensityMatrix::from_json(&rho.to_json()).unwrap();
            prop_assert_eq!(back, rho);
        }
    }
}
