//! Size limits for exhaustive enumeration.

use std::env;

use crate::error::{Error, Result};

/// Environment variable that overrides the default guards.
///
/// Accepts either a bare integer, which replaces both limits, or a
/// comma-separated list of `plane=<n>` / `kary=<kn>` assignments.
pub const GUARD_ENV: &str = "TREEDEGREE_GUARD";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Largest edge count for plane-tree enumeration.
    pub plane_edges: u64,
    /// Largest product `k * n` for k-ary tree enumeration.
    pub kary_product: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            plane_edges: 14,
            kary_product: 24,
        }
    }
}

impl Guards {
    /// Default guards, overridden by `TREEDEGREE_GUARD` when it is set.
    ///
    /// A malformed value is ignored in favour of the defaults; callers that
    /// must reject it use [`Guards::parse`].
    pub fn from_env() -> Guards {
        match env::var(GUARD_ENV) {
            Ok(value) => Guards::parse(&value).unwrap_or_default(),
            Err(_) => Guards::default(),
        }
    }

    pub fn parse(spec: &str) -> Result<Guards> {
        let spec = spec.trim();
        let bad = || Error::Parse(format!("invalid {GUARD_ENV} value {spec:?}"));
        if let Ok(both) = spec.parse::<u64>() {
            return Ok(Guards {
                plane_edges: both,
                kary_product: both,
            });
        }
        let mut guards = Guards::default();
        for item in spec.split(',') {
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "plane" => guards.plane_edges = value,
                "kary" => guards.kary_product = value,
                _ => return Err(bad()),
            }
        }
        Ok(guards)
    }

    pub fn check_plane(&self, n: u64) -> Result<()> {
        if n > self.plane_edges {
            return Err(Error::GuardExceeded {
                what: "plane-tree enumeration",
                value: n,
                guard: self.plane_edges,
            });
        }
        Ok(())
    }

    pub fn check_kary(&self, k: usize, n: u64) -> Result<()> {
        let product = (k as u64).saturating_mul(n);
        if product > self.kary_product {
            return Err(Error::GuardExceeded {
                what: "k-ary enumeration (k*n)",
                value: product,
                guard: self.kary_product,
            });
        }
        Ok(())
    }
}
