//! Computational toolkit for two questions about arithmetic functions.
//!
//! The first concerns *barriers* of `f = eps * omega`, where `omega(n)` counts
//! the distinct prime factors of `n`: an integer `n` is a barrier when
//! `m + f(m) <= n` holds for every `m < n`. The [`barrier`] module decides
//! and enumerates them with integer-exact comparisons, and [`density`]
//! tabulates how often small `omega` values occur inside the primorial
//! intervals `[p_1 ... p_r, p_1 ... p_{r+1})`.
//!
//! The second concerns the gap statistic
//! `G(n) = max_{1 <= m < n} (m + d(m)) - n` with `d` the divisor count. The
//! [`divisor`] module scans it, records its champions, and works with the
//! representation `n = p_1^a_1 ... p_s^a_s + 1`.
//!
//! Everything sits on [`arith`], a smallest-prime-factor sieve plus the
//! segmented tables in [`segment`] used by the large parallel scans.

pub mod arith;
pub mod barrier;
pub mod density;
pub mod divisor;
mod error;
pub mod segment;

pub use arith::{
    build_sieve, build_sieve_with_budget, first_primes, make_eps, primorial, FactorSieve,
    Factorization, RationalEps, DEFAULT_SIEVE_BUDGET, MAX_PRIMORIAL_INDEX,
};
pub use barrier::{
    barrier_census, census_is_monotone, for_each_barrier, guaranteed_barrier_bound,
    is_barrier_naive, is_barrier_windowed, non_barrier_family, relation_holds, scan_barriers,
    BarrierBound, BarrierVerdict, FamilyMember, Method,
};
pub use density::{
    count_low_omega, count_low_omega_in, density_table, interval_index, interval_spec,
    verify_partition, DensityRow, IntervalSpec, FULL_SIEVE_END, MAX_INTERVAL_INDEX,
};
pub use divisor::{
    canonical_rep, classify_subsequence, for_each_gap_stat, gap_stat, gen_subsequence,
    lemma23_check, record_points, scan_gap_stats, ExponentVector, GapRecord, Lemma23,
};
pub use error::{Error, Result};
pub use segment::ScanOptions;
