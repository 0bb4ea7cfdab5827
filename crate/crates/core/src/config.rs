//! Tunable limits for group construction and the search/verification
//! oracles.

/// Largest group order the table-based engine will materialize. The build
/// stores one row per generator of `order` ids, so memory grows linearly in
/// `order * rank`.
pub const MAX_GROUP_ORDER: u64 = 4_000_000;

/// Default order bound for the literal brute-force Σ-set oracle, which walks
/// every power of every base against every conjugator.
pub const DEFAULT_BRUTE_BOUND: usize = 2_000;

/// Default order bound for the complete generating-pair search.
pub const DEFAULT_SEARCH_BOUND: usize = 5_000;

/// Environment variable overriding [`DEFAULT_BRUTE_BOUND`].
pub const BRUTE_BOUND_ENV: &str = "BVL_BRUTE_BOUND";

/// The brute-force oracle bound, honoring the environment override.
pub fn brute_bound() -> usize {
    std::env::var(BRUTE_BOUND_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BRUTE_BOUND)
}
