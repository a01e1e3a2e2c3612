//! Primorial intervals `I_r = [p_1 ... p_r, p_1 ... p_{r+1})` and the share of
//! each interval whose members have between 1 and `t` distinct prime factors.

use num_rational::Ratio;

use crate::arith::{build_sieve, primorial, FactorSieve, RationalEps};
use crate::error::{Error, Result};
use crate::segment::{for_each_segment, ScanOptions, Tables};

/// Largest `r` with `I_r` representable (its right end is `primorial(15)`).
pub const MAX_INTERVAL_INDEX: u64 = 14;

/// Tables whose last interval ends at or below this use one flat sieve.
pub const FULL_SIEVE_END: u64 = 9_699_690;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalSpec {
    pub r: u64,
    pub lo: u64,
    /// Exclusive.
    pub hi: u64,
}

impl IntervalSpec {
    pub fn len(&self) -> u64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    pub fn contains(&self, n: u64) -> bool {
        self.lo <= n && n < self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityRow {
    pub r: u64,
    pub t: u64,
    pub count: u64,
    pub interval_len: u64,
    pub ratio: Ratio<u64>,
}

impl DensityRow {
    fn new(r: u64, t: u64, count: u64, interval_len: u64) -> Self {
        Self {
            r,
            t,
            count,
            interval_len,
            ratio: Ratio::new(count, interval_len),
        }
    }

    /// `count / interval_len` rounded half-up to six decimal places.
    pub fn ratio_decimal(&self) -> String {
        let len = u128::from(self.interval_len);
        let scaled = (u128::from(self.count) * 2_000_000 + len) / (2 * len);
        format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
    }
}

/// The unique `r` with `n` in `I_r`.
pub fn interval_index(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::BelowDomain {
            what: "n",
            value: n,
            min: 2,
        });
    }
    let top = primorial(MAX_INTERVAL_INDEX + 1)?;
    if n >= top {
        return Err(Error::AboveDomain {
            what: "n",
            value: n,
            max: top - 1,
        });
    }
    let mut r = 1;
    while primorial(r + 1)? <= n {
        r += 1;
    }
    Ok(r)
}

pub fn interval_spec(r: u64) -> Result<IntervalSpec> {
    if r == 0 {
        return Err(Error::BelowDomain {
            what: "r",
            value: r,
            min: 1,
        });
    }
    if r > MAX_INTERVAL_INDEX {
        return Err(Error::AboveDomain {
            what: "r",
            value: r,
            max: MAX_INTERVAL_INDEX,
        });
    }
    Ok(IntervalSpec {
        r,
        lo: primorial(r)?,
        hi: primorial(r + 1)?,
    })
}

fn check_t(t: u64) -> Result<()> {
    if t == 0 {
        Err(Error::BelowDomain {
            what: "t",
            value: 0,
            min: 1,
        })
    } else {
        Ok(())
    }
}

#[inline]
fn low_omega(om: u8, t: u64) -> bool {
    om >= 1 && u64::from(om) <= t
}

/// `N_r(1 + t)` counted with segmented tables; segments may run in parallel.
pub fn count_low_omega(r: u64, t: u64, opts: ScanOptions) -> Result<DensityRow> {
    check_t(t)?;
    let spec = interval_spec(r)?;
    let mut count = 0u64;
    for_each_segment(
        spec.lo,
        spec.hi,
        Tables::Omega,
        opts,
        |seg| seg.omega.iter().filter(|&&om| low_omega(om, t)).count() as u64,
        |c| count += c,
    )?;
    Ok(DensityRow::new(r, t, count, spec.len()))
}

/// `N_r(1 + t)` read off a flat sieve covering `I_r`.
pub fn count_low_omega_in(sieve: &FactorSieve, r: u64, t: u64) -> Result<DensityRow> {
    check_t(t)?;
    let spec = interval_spec(r)?;
    if spec.hi - 1 > sieve.limit() {
        return Err(Error::BeyondSieve {
            value: spec.hi - 1,
            limit: sieve.limit(),
        });
    }
    let count = sieve.omega_table()[spec.lo as usize..spec.hi as usize]
        .iter()
        .filter(|&&om| low_omega(om, t))
        .count() as u64;
    Ok(DensityRow::new(r, t, count, spec.len()))
}

/// One row per `r` in `1..=r_max`.
///
/// `t` defaults to the greatest integer with `t * eps <= 1`; `t_override`
/// replaces it. Tables ending at or below [`FULL_SIEVE_END`] come from one
/// flat sieve, larger ones from segmented counting.
pub fn density_table(
    r_max: u64,
    eps: RationalEps,
    t_override: Option<u64>,
    opts: ScanOptions,
) -> Result<Vec<DensityRow>> {
    if !eps.at_most_one() {
        return Err(Error::EpsAboveOne {
            eps: eps.to_string(),
        });
    }
    let t = t_override.unwrap_or(eps.den() / eps.num());
    check_t(t)?;
    let last = interval_spec(r_max)?;
    if last.hi <= FULL_SIEVE_END {
        let sieve = build_sieve(last.hi - 1)?;
        (1..=r_max)
            .map(|r| count_low_omega_in(&sieve, r, t))
            .collect()
    } else {
        (1..=r_max).map(|r| count_low_omega(r, t, opts)).collect()
    }
}

/// Whether every `n` in `[2, limit]` lies in exactly one `I_r`.
pub fn verify_partition(limit: u64) -> Result<bool> {
    let top = primorial(MAX_INTERVAL_INDEX + 1)?;
    if limit >= top {
        return Err(Error::AboveDomain {
            what: "limit",
            value: limit,
            max: top - 1,
        });
    }
    let specs: Vec<IntervalSpec> = (1..=MAX_INTERVAL_INDEX)
        .map(interval_spec)
        .collect::<Result<_>>()?;
    for n in 2..=limit {
        let r = interval_index(n)?;
        let mut hits = specs.iter().filter(|s| s.contains(n));
        match (hits.next(), hits.next()) {
            (Some(s), None) if s.r == r => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}
