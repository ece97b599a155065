//! Numeric backend selection for the Kummer series.
//!
//! `PROJDUNKL_PRECISION=double` sums in plain f64; `extended` (the default)
//! accumulates in double-double, which keeps about 30 digits through the
//! cancellation of the imaginary-argument series near the switch radius.

use std::sync::OnceLock;

use twofloat::TwoFloat;

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "PROJDUNKL_PRECISION";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    Double,
    #[default]
    Extended,
}

impl Precision {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            other => Err(Error::invalid(format!("{ENV_VAR} must be 'double' or 'extended', got '{other}'"))),
        }
    }

    /// Reads the environment variable; unset means the default.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ENV_VAR) {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Self::default()),
        }
    }

    /// Process-wide backend, read from the environment on first use. An
    /// unparseable value falls back to the default; front ends that want to
    /// reject it should call [`Precision::from_env`] up front.
    pub fn current() -> Self {
        static CURRENT: OnceLock<Precision> = OnceLock::new();
        *CURRENT.get_or_init(|| Self::from_env().unwrap_or_default())
    }

    pub fn name(self) -> &'static str {
        match self {
            Precision::Double => "double",
            Precision::Extended => "extended",
        }
    }
}

/// Double-double quotient by long division. `TwoFloat / TwoFloat` from the
/// twofloat crate forms its residual 1 - b*(1/b) without an exact product and
/// is only accurate to double precision, so quotients go through here.
pub(crate) fn dd_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}
