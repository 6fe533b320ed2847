//! Fixed-precision number output so serialized reports are byte-stable.

use serde::Serializer;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to 12 significant digits. Non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap()
}

/// Text form used by the TSV writers; `nan`/`inf` become `NA`. Very small
/// and very large magnitudes use exponent notation.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return "NA".to_string();
    }
    let r = round_sig(x);
    if r != 0.0 && !(1e-6..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

/// serde helper: a rounded number, or `null` when not finite.
pub fn sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(round_sig(*x))
    } else {
        s.serialize_none()
    }
}

pub fn sig12_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => sig12(v, s),
        None => s.serialize_none(),
    }
}

pub fn sig12_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Rounded(*x))?;
    }
    seq.end()
}

/// Wrapper serializing through [`sig12`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rounded(pub f64);

impl serde::Serialize for Rounded {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        sig12(&self.0, s)
    }
}
