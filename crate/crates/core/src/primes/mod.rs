//! Primes: sieving, admissible tuples and their Hardy-Littlewood predictions,
//! and the routes from prime patterns to MSTD subsets of the primes.

mod ap;
mod sieve;
mod tuple;

pub use ap::{
    dilated_conway, find_prime_ap, find_prime_ap_within, mstd_in_ap, prime_mstd_sets, ApSearch, PrimeAp,
    PrimeMstdReport, DEFAULT_AP_MAX_LAST_TERM, MIN_AP_FOR_CONWAY,
};
pub use sieve::{sieve, PrimeSieve, MAX_SIEVE_LIMIT};
pub use tuple::{
    is_admissible, log_power_integral, match_tuple, match_tuple_capped, singular_series, singular_series_truncated,
    AdmissibilityResult, MatchReport, PrimeTuple, SingularSeries, DEFAULT_MATCH_CAP, INTEGRAL_REL_TOL,
    PREDICTION_SERIES_TOL,
};
