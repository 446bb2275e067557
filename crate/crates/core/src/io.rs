//! State files and fixed-precision number formatting.
//!
//! State file: `{"dims": [dA, dB, dC], "amplitudes": [[re, im], ...]}` with
//! amplitudes in row-major basis order. Every number written by this crate
//! carries 17 significant digits, enough to round-trip an `f64`.

use std::path::Path;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::state::PureState;
use crate::Real;

/// `x` in scientific notation with 17 significant digits.
pub fn format_sig(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// A JSON number holding `x` with 17 significant digits (`null` if not finite).
pub fn json_number(x: f64) -> serde_json::Value {
    if !x.is_finite() {
        return serde_json::Value::Null;
    }
    let n = serde_json::Number::from_str(&format_sig(x)).expect("formatted float is valid JSON");
    serde_json::Value::Number(n)
}

/// `serialize_with` adapter emitting [`json_number`].
pub fn sig_digits<T: Real, S: Serializer>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    json_number(x.to_f64_lossy()).serialize(s)
}

#[derive(Debug, Serialize, Deserialize)]
struct StateFile {
    dims: Vec<usize>,
    amplitudes: Vec<[f64; 2]>,
}

pub fn state_from_json(text: &str) -> Result<PureState<f64>> {
    let file: StateFile =
        serde_json::from_str(text).map_err(|e| Error::StateFile(e.to_string()))?;
    let amps = file
        .amplitudes
        .iter()
        .map(|[re, im]| Complex::new(*re, *im))
        .collect();
    PureState::new(file.dims, amps)
}

pub fn state_to_json(state: &PureState<f64>) -> String {
    let amps: Vec<serde_json::Value> = state
        .amplitudes()
        .iter()
        .map(|z| serde_json::Value::Array(vec![json_number(z.re), json_number(z.im)]))
        .collect();
    let value = serde_json::json!({
        "dims": state.dims(),
        "amplitudes": amps,
    });
    serde_json::to_string(&value).expect("state JSON serializes")
}

pub fn read_state(path: &Path) -> Result<PureState<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))?;
    state_from_json(&text)
}

pub fn write_state(path: &Path, state: &PureState<f64>) -> Result<()> {
    std::fs::write(path, state_to_json(state))
        .map_err(|e| Error::StateFile(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::haar_random;
    use proptest::prelude::*;

    #[test]
    fn numbers_keep_seventeen_digits() {
        assert_eq!(format_sig(0.5), "5.0000000000000000e-1");
        assert_eq!(json_number(0.5).to_string(), "5.0000000000000000e-1");
        assert_eq!(json_number(f64::NAN), serde_json::Value::Null);
    }

    #[test]
    fn rejects_length_mismatch() {
        let text = r#"{"dims":[2,2,2],"amplitudes":[[1,0],[0,0]]}"#;
        assert!(matches!(
            state_from_json(text),
            Err(Error::LengthMismatch {
                expected: 8,
                got: 2
            })
        ));
        assert!(matches!(state_from_json("{"), Err(Error::StateFile(_))));
    }

    #[test]
    fn reads_integer_literals() {
        let text =
            r#"{"dims":[2,2,2],"amplitudes":[[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"#;
        let s = state_from_json(text).unwrap();
        assert_eq!(s.amplitudes()[0], Complex::new(1.0, 0.0));
    }

    proptest! {
        #[test]
        fn json_round_trip_is_exact(seed in any::<u64>(), d in 2usize..4) {
            let s = haar_random::<f64>(&[d, 2, d], seed).unwrap();
            let back = state_from_json(&state_to_json(&s)).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
