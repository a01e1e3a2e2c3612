//! Sieve, factorization and the arithmetic functions `omega` and `d`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default memory ceiling for a flat sieve, in bytes.
pub const DEFAULT_SIEVE_BUDGET: u64 = 1 << 30;

/// Largest `r` for which `p_1 ... p_r` fits in a `u64`.
pub const MAX_PRIMORIAL_INDEX: u64 = 15;

/// The first sixteen primes; `SMALL_PRIMES[i - 1]` is `p_i`.
pub(crate) const SMALL_PRIMES: [u64; 16] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

// spf (u32) + omega (u8), plus a generous allowance for the prime list.
const BYTES_PER_ENTRY: u64 = 4 + 1 + 1;

/// Smallest-prime-factor table over `[0, limit]`.
///
/// Alongside `spf` the sieve keeps `omega(n)` for every `n` and the primes up
/// to `limit` in increasing order, so `omega` is a table lookup and prime
/// indices (`p_1 = 2`, `p_2 = 3`, ...) are a binary search.
#[derive(Debug, Clone)]
pub struct FactorSieve {
    limit: u64,
    spf: Vec<u32>,
    omega: Vec<u8>,
    primes: Vec<u32>,
}

/// Builds a sieve over `[0, limit]` under [`DEFAULT_SIEVE_BUDGET`].
pub fn build_sieve(limit: u64) -> Result<FactorSieve> {
    build_sieve_with_budget(limit, DEFAULT_SIEVE_BUDGET)
}

pub fn build_sieve_with_budget(limit: u64, budget_bytes: u64) -> Result<FactorSieve> {
    if limit < 2 {
        return Err(Error::LimitTooSmall { limit });
    }
    let needed = limit.saturating_add(1).saturating_mul(BYTES_PER_ENTRY);
    if needed > budget_bytes || limit > u64::from(u32::MAX) - 1 {
        return Err(Error::MemoryBudget {
            limit,
            needed,
            budget: budget_bytes,
        });
    }
    let len = limit as usize + 1;
    let mut spf = vec![0u32; len];
    let mut primes: Vec<u32> = Vec::new();

    // Linear sieve: every composite is struck exactly once, by its smallest prime.
    for i in 2..len {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u32);
        }
        let si = spf[i];
        for &p in &primes {
            if p > si {
                break;
            }
            let j = i * p as usize;
            if j >= len {
                break;
            }
            spf[j] = p;
        }
    }

    let mut omega = vec![0u8; len];
    for i in 2..len {
        let p = spf[i] as usize;
        let rest = i / p;
        omega[i] = omega[rest] + u8::from(spf[rest] as usize != p);
    }

    Ok(FactorSieve {
        limit,
        spf,
        omega,
        primes,
    })
}

impl FactorSieve {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `n`, for `2 <= n <= limit`.
    pub fn spf(&self, n: u64) -> Result<u64> {
        if n < 2 {
            return Err(Error::BelowDomain {
                what: "n",
                value: n,
                min: 2,
            });
        }
        self.check(n)?;
        Ok(u64::from(self.spf[n as usize]))
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n < 2 {
            return Ok(false);
        }
        Ok(self.spf(n)? == n)
    }

    /// All primes up to the sieve limit, increasing.
    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    /// The 1-based `i`-th prime, if it lies within the sieve.
    pub fn nth_prime(&self, i: u64) -> Option<u64> {
        if i == 0 {
            return None;
        }
        self.primes.get(i as usize - 1).map(|&p| u64::from(p))
    }

    /// The 1-based index `i` with `p_i = p`, or `None` if `p` is not a sieved prime.
    pub fn prime_index(&self, p: u64) -> Option<u64> {
        let p = u32::try_from(p).ok()?;
        self.primes.binary_search(&p).ok().map(|i| i as u64 + 1)
    }

    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        factorize(n, self)
    }

    pub fn nu(&self, n: u64) -> Result<u64> {
        nu(n, self)
    }

    pub fn divisor_count(&self, n: u64) -> Result<u64> {
        divisor_count(n, self)
    }

    /// `omega` over `[0, limit]`, `omega[0] = omega[1] = 0`.
    pub fn omega_table(&self) -> &[u8] {
        &self.omega
    }

    fn check(&self, n: u64) -> Result<()> {
        if n > self.limit {
            Err(Error::BeyondSieve {
                value: n,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }
}

/// Prime factorization as `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// Number of distinct primes.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.pairs.last().map(|&(p, _)| p)
    }

    /// `prod (e + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// Multiplies the factorization back out; `None` on overflow.
    pub fn reconstruct(&self) -> Option<u64> {
        self.pairs.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e).and_then(|pe| acc.checked_mul(pe))
        })
    }
}

pub fn factorize(n: u64, sieve: &FactorSieve) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::BelowDomain {
            what: "n",
            value: n,
            min: 2,
        });
    }
    sieve.check(n)?;
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    let mut rest = n as usize;
    while rest > 1 {
        let p = sieve.spf[rest] as usize;
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        pairs.push((p as u64, e));
    }
    Ok(Factorization { pairs })
}

/// Number of distinct prime factors; `nu(0) = nu(1) = 0`.
pub fn nu(n: u64, sieve: &FactorSieve) -> Result<u64> {
    sieve.check(n)?;
    Ok(u64::from(sieve.omega[n as usize]))
}

/// Number of positive divisors. Undefined (an error) at 0.
pub fn divisor_count(n: u64, sieve: &FactorSieve) -> Result<u64> {
    match n {
        0 => Err(Error::BelowDomain {
            what: "n",
            value: 0,
            min: 1,
        }),
        1 => Ok(1),
        _ => Ok(factorize(n, sieve)?.divisor_count()),
    }
}

/// `p_1 p_2 ... p_r` for `1 <= r <= 15`.
pub fn primorial(r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::BelowDomain {
            what: "primorial index",
            value: r,
            min: 1,
        });
    }
    SMALL_PRIMES
        .iter()
        .take(r as usize)
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .filter(|_| r <= SMALL_PRIMES.len() as u64)
        .ok_or_else(|| Error::Overflow {
            quantity: format!("primorial({r})"),
        })
}

/// The first `count` primes, `p_1 = 2` first.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_k < k (ln k + ln ln k) for k >= 6.
    let bound = if count < 6 {
        15
    } else {
        let k = count as f64;
        (k * (k.ln() + k.ln().ln())).ceil() as usize + 1
    };
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::with_capacity(count);
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        if out.len() == count {
            break;
        }
        let mut j = i * i;
        while j <= bound {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Exact positive rational `num/den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalEps {
    num: u64,
    den: u64,
}

pub fn make_eps(num: u64, den: u64) -> Result<RationalEps> {
    RationalEps::new(num, den)
}

impl RationalEps {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidEps {
                reason: format!("{num}/{den} must have positive numerator and denominator"),
            });
        }
        let g = num.gcd(&den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn at_most_one(&self) -> bool {
        self.num <= self.den
    }
}

impl Ord for RationalEps {
    fn cmp(&self, other: &Self) -> Ordering {
        (u128::from(self.num) * u128::from(other.den))
            .cmp(&(u128::from(other.num) * u128::from(self.den)))
    }
}

impl PartialOrd for RationalEps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RationalEps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts only `NUM/DEN` with decimal digits on both sides.
impl FromStr for RationalEps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidEps {
            reason: format!("{s:?}: {reason}"),
        };
        let (num, den) = s.split_once('/').ok_or_else(|| bad("expected NUM/DEN"))?;
        let parse = |part: &str| -> Result<u64> {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("NUM and DEN must be positive integers"));
            }
            part.parse::<u64>()
                .map_err(|_| bad("component out of range"))
        };
        RationalEps::new(parse(num)?, parse(den)?).map_err(|_| bad("NUM and DEN must be positive"))
    }
}

impl Serialize for RationalEps {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
