//! The gap statistic `G(n) = max_{1 <= m < n} (m + d(m)) - n`, its record
//! points, and the representation `n = p_1^a_1 ... p_s^a_s + 1`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::arith::{first_primes, FactorSieve};
use crate::error::{Error, Result};
use crate::segment::{for_each_segment, ScanOptions, Tables};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GapRecord {
    pub n: u64,
    pub gap: i64,
    /// Largest `m < n` attaining the maximum of `m + d(m)`.
    pub argmax_m: u64,
    /// `d(n - 1) - 1`, a lower bound for `gap`.
    pub lemma_bound: i64,
}

/// Exponents of `n - 1` over `p_1, ..., p_s`, zero-padded, with `alphas[s-1] >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentVector {
    pub s: u64,
    pub alphas: Vec<u32>,
}

impl ExponentVector {
    /// `prod p_i^a_i + 1`, `None` on overflow or if a prime is missing from the sieve.
    pub fn reconstruct(&self, sieve: &FactorSieve) -> Option<u64> {
        let primes = sieve.primes();
        if primes.len() < self.alphas.len() {
            return None;
        }
        self.alphas
            .iter()
            .zip(primes)
            .filter(|(&a, _)| a > 0)
            .try_fold(1u64, |acc, (&a, &p)| {
                u64::from(p)
                    .checked_pow(a)
                    .and_then(|pa| acc.checked_mul(pa))
            })?
            .checked_add(1)
    }

    /// `prod (a_i + 1) - 1`.
    pub fn product_bound(&self) -> u64 {
        self.alphas
            .iter()
            .map(|&a| u64::from(a) + 1)
            .product::<u64>()
            - 1
    }

    pub fn alpha_sum(&self) -> u64 {
        self.alphas.iter().map(|&a| u64::from(a)).sum()
    }
}

/// Outcome of checking `G(n) >= prod (a_i + 1) - 1` at one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma23 {
    pub bound: i64,
    pub gap: i64,
    pub holds: bool,
    pub alpha_sum: u64,
    /// `prod (a_i + 1) - 1 >= sum a_i`.
    pub product_exceeds_sum: bool,
}

fn at_least(what: &'static str, value: u64, min: u64) -> Result<()> {
    if value < min {
        Err(Error::BelowDomain { what, value, min })
    } else {
        Ok(())
    }
}

/// Brute-force `G(n)` over every `m` in `[1, n - 1]`.
pub fn gap_stat(n: u64, sieve: &FactorSieve) -> Result<GapRecord> {
    at_least("n", n, 2)?;
    if n - 1 > sieve.limit() {
        return Err(Error::BeyondSieve {
            value: n - 1,
            limit: sieve.limit(),
        });
    }
    let mut best = (0u64, 0u64);
    for m in 1..n {
        let v = m + sieve.divisor_count(m)?;
        if v >= best.0 {
            best = (v, m);
        }
    }
    let d_prev = sieve.divisor_count(n - 1)? as i64;
    Ok(GapRecord {
        n,
        gap: best.0 as i64 - n as i64,
        argmax_m: best.1,
        lemma_bound: d_prev - 1,
    })
}

/// Streams one [`GapRecord`] per `n` in `[2, limit]` to `emit`, in order.
///
/// Divisor counts come from segmented tables evaluated in parallel; the
/// running maximum of `m + d(m)` is carried left to right across segments.
pub fn for_each_gap_stat<F: FnMut(GapRecord)>(
    limit: u64,
    opts: ScanOptions,
    mut emit: F,
) -> Result<()> {
    at_least("limit", limit, 2)?;
    let mut best = (0u64, 0u64);
    for_each_segment(
        1,
        limit,
        Tables::Divisors,
        opts,
        |seg| seg,
        |seg| {
            for (i, &d) in seg.divisors.iter().enumerate() {
                let m = seg.lo + i as u64;
                let v = m + u64::from(d);
                if v >= best.0 {
                    best = (v, m);
                }
                let n = m + 1;
                emit(GapRecord {
                    n,
                    gap: best.0 as i64 - n as i64,
                    argmax_m: best.1,
                    lemma_bound: i64::from(d) - 1,
                });
            }
        },
    )
}

pub fn scan_gap_stats(limit: u64, opts: ScanOptions) -> Result<Vec<GapRecord>> {
    let mut out = Vec::with_capacity(limit.saturating_sub(1).min(1 << 24) as usize);
    for_each_gap_stat(limit, opts, |g| out.push(g))?;
    Ok(out)
}

/// The `n <= limit` where `G(n)` exceeds every earlier value.
pub fn record_points(limit: u64, opts: ScanOptions) -> Result<Vec<GapRecord>> {
    let mut out: Vec<GapRecord> = Vec::new();
    for_each_gap_stat(limit, opts, |g| {
        if out.last().is_none_or(|last| g.gap > last.gap) {
            out.push(g);
        }
    })?;
    Ok(out)
}

/// The unique `s` and exponents with `n - 1 = p_1^a_1 ... p_s^a_s`, `a_s != 0`.
pub fn canonical_rep(n: u64, sieve: &FactorSieve) -> Result<ExponentVector> {
    at_least("n", n, 3)?;
    let f = sieve.factorize(n - 1)?;
    let largest = f.largest_prime().expect("n - 1 >= 2");
    let s = sieve
        .prime_index(largest)
        .expect("factors of a sieved integer are sieved primes");
    let mut alphas = vec![0u32; s as usize];
    for &(p, e) in f.pairs() {
        let i = sieve.prime_index(p).expect("sieved prime");
        alphas[i as usize - 1] = e;
    }
    Ok(ExponentVector { s, alphas })
}

/// Index `s` of the subsequence `n_s` containing `n`.
pub fn classify_subsequence(n: u64, sieve: &FactorSieve) -> Result<u64> {
    at_least("n", n, 3)?;
    let f = sieve.factorize(n - 1)?;
    Ok(sieve
        .prime_index(f.largest_prime().expect("n - 1 >= 2"))
        .expect("sieved prime"))
}

/// The first `count` terms of `n_s`, increasing: `p_s * y + 1` over
/// `p_s`-smooth `y`.
///
/// `y` is enumerated from a min-heap; each `y` is pushed once, by the parent
/// that drops one copy of its largest prime, so no value repeats.
pub fn gen_subsequence(s: u64, count: usize) -> Result<Vec<u64>> {
    at_least("s", s, 1)?;
    at_least("count", count as u64, 1)?;
    if s > u64::from(u32::MAX) {
        return Err(Error::Overflow {
            quantity: format!("p_{s}"),
        });
    }
    let primes = first_primes(s as usize);
    let ps = primes[s as usize - 1];
    let mut heap = BinaryHeap::from([Reverse((1u64, 0usize))]);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let Some(Reverse((y, from))) = heap.pop() else {
            return Err(Error::Overflow {
                quantity: format!(
                    "term {} of subsequence s = {s} (only {} terms below 2^64)",
                    out.len() + 1,
                    out.len()
                ),
            });
        };
        let term = ps.checked_mul(y).and_then(|x| x.checked_add(1));
        match term {
            Some(t) => out.push(t),
            None => {
                return Err(Error::Overflow {
                    quantity: format!("term {} of subsequence s = {s}", out.len() + 1),
                })
            }
        }
        for (j, &p) in primes.iter().enumerate().skip(from) {
            if let Some(child) = y.checked_mul(p) {
                heap.push(Reverse((child, j)));
            }
        }
    }
    Ok(out)
}

pub fn lemma23_check(n: u64, sieve: &FactorSieve) -> Result<Lemma23> {
    at_least("n", n, 3)?;
    let rep = canonical_rep(n, sieve)?;
    let bound = rep.product_bound() as i64;
    let gap = gap_stat(n, sieve)?.gap;
    let alpha_sum = rep.alpha_sum();
    Ok(Lemma23 {
        bound,
        gap,
        holds: gap >= bound,
        alpha_sum,
        product_exceeds_sum: rep.product_bound() >= alpha_sum,
    })
}
