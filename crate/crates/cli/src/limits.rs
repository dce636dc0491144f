//! Resource caps, overridable through the `STACKLAB_LIMITS` environment
//! variable as comma-separated `key=value` pairs, for example
//! `enumerate=16,count=18,order=1024,digits=200`.

use stacklab::enumerate::EnumerationConfig;
use thiserror::Error;

pub const ENV_VAR: &str = "STACKLAB_LIMITS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitsError {
    #[error("unknown limit {0:?}; expected enumerate, count, order or digits")]
    UnknownKey(String),
    #[error("limit {0:?} needs a positive integer value")]
    BadValue(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which diagrams are listed one by one.
    pub enumerate: usize,
    /// Largest `n` for which counts are computed by exhaustive search.
    pub count: usize,
    /// Largest series order.
    pub order: usize,
    /// Largest number of decimal digits printed for real constants.
    pub digits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        let e = EnumerationConfig::default();
        Limits { enumerate: e.object_limit, count: e.count_limit, order: stacklab::series::MAX_ORDER, digits: 90 }
    }
}

impl Limits {
    pub fn parse(spec: &str) -> Result<Limits, LimitsError> {
        let mut out = Limits::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| LimitsError::BadValue(item.to_string()))?;
            let v: usize =
                value.trim().parse().ok().filter(|&v| v > 0).ok_or_else(|| LimitsError::BadValue(item.to_string()))?;
            match key.trim() {
                "enumerate" => out.enumerate = v,
                "count" => out.count = v,
                "order" => out.order = v,
                "digits" => out.digits = v,
                other => return Err(LimitsError::UnknownKey(other.to_string())),
            }
        }
        Ok(out)
    }

    /// Defaults, overridden by the environment when the variable is set.
    pub fn from_env() -> Result<Limits, LimitsError> {
        match std::env::var(ENV_VAR) {
            Ok(spec) => Limits::parse(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn enumeration(&self, workers: Option<usize>) -> EnumerationConfig {
        EnumerationConfig { object_limit: self.enumerate, count_limit: self.count, workers }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        let l = Limits::parse("count=20, digits=12").unwrap();
        assert_eq!((l.count, l.digits), (20, 12));
        assert_eq!(l.enumerate, Limits::default().enumerate);
        assert_eq!(Limits::parse(""), Ok(Limits::default()));
    }

    #[test]
    fn rejects_bad_entries() {
        assert_eq!(Limits::parse("speed=3"), Err(LimitsError::UnknownKey("speed".into())));
        assert_eq!(Limits::parse("order=0"), Err(LimitsError::BadValue("order=0".into())));
        assert_eq!(Limits::parse("order"), Err(LimitsError::BadValue("order".into())));
    }
}
