//! Segmented `omega` / `d` tables and the ordered parallel driver behind the
//! range scans.
//!
//! A range is cut into fixed-length segments. Segments are evaluated in
//! parallel in batches and handed to the consumer strictly left to right, so
//! any prefix-maximum carried by the consumer sees the same sequence no matter
//! how many threads ran. Segment boundaries depend only on `segment_len`.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest exclusive end a segmented scan accepts; base primes stay below 2^24.
pub const MAX_SCAN_END: u64 = 1 << 48;

/// Parallelism and segmentation settings shared by every range scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub threads: usize,
    pub segment_len: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            segment_len: 1 << 16,
        }
    }
}

impl ScanOptions {
    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads: threads.max(1),
            ..Self::default()
        }
    }
}

/// Which per-integer functions a segment should carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tables {
    Omega,
    Divisors,
}

/// `omega` or `d` over `[lo, lo + len)`. Entries for 0 are 0 in both tables.
#[derive(Debug, Clone)]
pub struct Segment {
    pub lo: u64,
    pub omega: Vec<u8>,
    pub divisors: Vec<u32>,
}

impl Segment {
    pub fn len(&self) -> usize {
        self.omega.len().max(self.divisors.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Primes `<= bound` by a plain Eratosthenes sieve.
pub(crate) fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let bound = bound as usize;
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::new();
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= bound {
            composite[j] = true;
            j += i;
        }
    }
    out
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// Evaluates one segment `[lo, hi)` by dividing out every base prime.
///
/// `base` must contain all primes `p` with `p * p < hi`.
pub fn compute_segment(lo: u64, hi: u64, base: &[u64], tables: Tables) -> Segment {
    let len = (hi - lo) as usize;
    let mut rest: Vec<u64> = (lo..hi).collect();
    let mut omega = vec![0u8; len];
    let mut divisors = match tables {
        Tables::Divisors => vec![1u32; len],
        Tables::Omega => Vec::new(),
    };
    for &p in base {
        if p.saturating_mul(p) >= hi {
            break;
        }
        let first = lo.div_ceil(p) * p;
        let mut m = first.max(p);
        while m < hi {
            let i = (m - lo) as usize;
            let mut e = 0u32;
            while rest[i].is_multiple_of(p) {
                rest[i] /= p;
                e += 1;
            }
            omega[i] += 1;
            if let Some(d) = divisors.get_mut(i) {
                *d *= e + 1;
            }
            m += p;
        }
    }
    for i in 0..len {
        if rest[i] > 1 {
            omega[i] += 1;
            if let Some(d) = divisors.get_mut(i) {
                *d *= 2;
            }
        }
    }
    if lo == 0 && len > 0 {
        omega[0] = 0;
        if let Some(d) = divisors.get_mut(0) {
            *d = 0;
        }
    }
    if tables == Tables::Divisors {
        omega = Vec::new();
    }
    Segment {
        lo,
        omega,
        divisors,
    }
}

/// Runs `map` over every segment of `[lo, hi)` in parallel batches and feeds
/// the results to `consume` in increasing order of position.
pub fn for_each_segment<T, M, C>(
    lo: u64,
    hi: u64,
    tables: Tables,
    opts: ScanOptions,
    map: M,
    mut consume: C,
) -> Result<()>
where
    T: Send,
    M: Fn(Segment) -> T + Sync,
    C: FnMut(T),
{
    if hi > MAX_SCAN_END {
        return Err(Error::ScanTooLarge {
            hi,
            max: MAX_SCAN_END,
        });
    }
    if lo >= hi {
        return Ok(());
    }
    let base = primes_up_to(isqrt(hi - 1));
    let seg_len = opts.segment_len.max(1) as u64;
    let threads = opts.threads.max(1);
    let starts: Vec<u64> = (0..)
        .map(|k: u64| lo + k * seg_len)
        .take_while(|&s| s < hi)
        .collect();

    let eval = |&s: &u64| map(compute_segment(s, (s + seg_len).min(hi), &base, tables));
    if threads == 1 {
        for s in &starts {
            consume(eval(s));
        }
        return Ok(());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool construction");
    for batch in starts.chunks(threads * 2) {
        let results: Vec<T> = pool.install(|| batch.par_iter().map(eval).collect());
        results.into_iter().for_each(&mut consume);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::build_sieve;

    #[test]
    fn segments_match_flat_sieve() {
        let sieve = build_sieve(20_000).unwrap();
        let base = primes_up_to(200);
        for (lo, hi) in [(0u64, 1000u64), (1, 50), (997, 4000), (19_000, 20_001)] {
            let om = compute_segment(lo, hi, &base, Tables::Omega);
            let dv = compute_segment(lo, hi, &base, Tables::Divisors);
            for n in lo..hi {
                let i = (n - lo) as usize;
                assert_eq!(u64::from(om.omega[i]), sieve.nu(n).unwrap(), "omega {n}");
                let want = if n == 0 {
                    0
                } else {
                    sieve.divisor_count(n).unwrap()
                };
                assert_eq!(u64::from(dv.divisors[i]), want, "d {n}");
            }
        }
    }

    #[test]
    fn driver_preserves_order_across_threads() {
        for threads in [1, 2, 8] {
            let opts = ScanOptions {
                threads,
                segment_len: 37,
            };
            let mut seen = Vec::new();
            for_each_segment(
                5,
                1000,
                Tables::Omega,
                opts,
                |s| (s.lo, s.len()),
                |x| seen.push(x),
            )
            .unwrap();
            let mut next = 5;
            for (lo, len) in seen {
                assert_eq!(lo, next);
                next += len as u64;
            }
            assert_eq!(next, 1000);
        }
    }

    #[test]
    fn isqrt_exact() {
        for n in [0u64, 1, 3, 4, 15, 16, 17, 1 << 40, u64::MAX] {
            let r = isqrt(n);
            assert!(r * r <= n);
            assert!((r + 1).checked_mul(r + 1).is_none_or(|v| v > n));
        }
    }

    #[test]
    fn oversized_scan_is_rejected() {
        let r = for_each_segment(
            0,
            MAX_SCAN_END + 1,
            Tables::Omega,
            ScanOptions::default(),
            |_| (),
            |_| (),
        );
        assert!(matches!(r, Err(Error::ScanTooLarge { .. })));
    }
}
