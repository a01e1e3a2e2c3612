//! Barriers of `f(m) = eps * omega(m)`.
//!
//! `n` is a barrier when `m + eps * omega(m) <= n` for every `m < n`. With
//! `eps = num/den` the relation is checked as
//! `den * m + num * omega(m) <= den * n` in 128-bit integers, so boundary
//! equalities such as `m = 2, n = 3, eps = 1` are decided exactly.

use serde::Serialize;

use crate::arith::{first_primes, primorial, FactorSieve, RationalEps, MAX_PRIMORIAL_INDEX};
use crate::error::{Error, Result};
use crate::segment::{for_each_segment, ScanOptions, Tables};

/// Which procedure produced a [`BarrierVerdict`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Windowed,
    Streaming,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Windowed => "windowed",
            Method::Streaming => "streaming",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BarrierVerdict {
    pub n: u64,
    pub is_barrier: bool,
    /// Some `m < n` at which the relation fails; present iff not a barrier.
    pub witness: Option<u64>,
    pub method: Method,
}

impl BarrierVerdict {
    fn barrier(n: u64, method: Method) -> Self {
        Self {
            n,
            is_barrier: true,
            witness: None,
            method,
        }
    }

    fn refuted(n: u64, witness: u64, method: Method) -> Self {
        Self {
            n,
            is_barrier: false,
            witness: Some(witness),
            method,
        }
    }
}

/// `t` is the greatest integer with `t * eps <= 1`; every `n <= bound` is a barrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BarrierBound {
    pub t: u64,
    pub bound: u64,
}

/// Output of the non-barrier construction: `n = prod p^a + k`, `witness = n - k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub n: u64,
    pub witness: u64,
}

#[inline]
fn lhs(m: u64, omega: u64, eps: RationalEps) -> u128 {
    u128::from(eps.den()) * u128::from(m) + u128::from(eps.num()) * u128::from(omega)
}

#[inline]
fn rhs(n: u64, eps: RationalEps) -> u128 {
    u128::from(eps.den()) * u128::from(n)
}

/// Whether `m + eps * omega(m) <= n`.
pub fn relation_holds(m: u64, n: u64, eps: RationalEps, sieve: &FactorSieve) -> Result<bool> {
    if m >= n {
        return Err(Error::NotBelow { m, n });
    }
    Ok(lhs(m, sieve.nu(m)?, eps) <= rhs(n, eps))
}

fn need_sieve_to(sieve: &FactorSieve, m: u64) -> Result<()> {
    if m > sieve.limit() {
        Err(Error::BeyondSieve {
            value: m,
            limit: sieve.limit(),
        })
    } else {
        Ok(())
    }
}

/// Checks every `m < n`. A negative verdict carries the largest failing `m`.
pub fn is_barrier_naive(n: u64, eps: RationalEps, sieve: &FactorSieve) -> Result<BarrierVerdict> {
    if n == 0 {
        return Err(Error::BelowDomain {
            what: "n",
            value: 0,
            min: 1,
        });
    }
    need_sieve_to(sieve, n - 1)?;
    let omega = sieve.omega_table();
    let bound = rhs(n, eps);
    for m in (0..n).rev() {
        if lhs(m, u64::from(omega[m as usize]), eps) > bound {
            return Ok(BarrierVerdict::refuted(n, m, Method::Naive));
        }
    }
    Ok(BarrierVerdict::barrier(n, Method::Naive))
}

/// Index `r` with `primorial(r) <= n < primorial(r + 1)`, allowing `r = 15`
/// for every `n >= primorial(15)`.
pub(crate) fn ladder_index(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut r = 1;
    while r < MAX_PRIMORIAL_INDEX && primorial(r + 1).is_ok_and(|p| p <= n) {
        r += 1;
    }
    Some(r)
}

/// Checks only `m` in `{n - 1, ..., n - r + 1}` where `n` lies in `I_r`.
///
/// For `eps <= 1` every `m <= n - r` satisfies the relation automatically,
/// since `m < primorial(r + 1)` forces `omega(m) <= r`. `n = 1, 2` are
/// barriers outright.
pub fn is_barrier_windowed(
    n: u64,
    eps: RationalEps,
    sieve: &FactorSieve,
) -> Result<BarrierVerdict> {
    if !eps.at_most_one() {
        return Err(Error::EpsAboveOne {
            eps: eps.to_string(),
        });
    }
    match n {
        0 => {
            return Err(Error::BelowDomain {
                what: "n",
                value: 0,
                min: 1,
            })
        }
        1 | 2 => return Ok(BarrierVerdict::barrier(n, Method::Windowed)),
        _ => {}
    }
    let r = ladder_index(n).expect("n >= 3");
    let low = (n + 1).saturating_sub(r);
    need_sieve_to(sieve, n - 1)?;
    let bound = rhs(n, eps);
    for m in (low..n).rev() {
        if lhs(m, sieve.nu(m)?, eps) > bound {
            return Ok(BarrierVerdict::refuted(n, m, Method::Windowed));
        }
    }
    Ok(BarrierVerdict::barrier(n, Method::Windowed))
}

/// Calls `emit` with every barrier in `[lo, hi]`, in increasing order.
///
/// Keeps the running maximum of `den * m + num * omega(m)`; `n` is a barrier
/// iff that maximum over `m < n` is at most `den * n`. Values of `m` further
/// than `15 * eps` below `lo` cannot refute any `n >= lo`, so the scan starts
/// there instead of at 0.
pub fn for_each_barrier<F: FnMut(u64)>(
    lo: u64,
    hi: u64,
    eps: RationalEps,
    opts: ScanOptions,
    mut emit: F,
) -> Result<()> {
    if lo == 0 {
        return Err(Error::BelowDomain {
            what: "range start",
            value: 0,
            min: 1,
        });
    }
    if lo > hi {
        return Err(Error::EmptyRange { lo, hi });
    }
    let reach = u128::from(MAX_PRIMORIAL_INDEX) * u128::from(eps.num()) / u128::from(eps.den()) + 1;
    let start = lo.saturating_sub(u64::try_from(reach).unwrap_or(u64::MAX));
    let end = hi.checked_add(1).ok_or_else(|| Error::Overflow {
        quantity: format!("range end {hi} + 1"),
    })?;

    let mut prefix: u128 = 0;
    for_each_segment(
        start,
        end,
        Tables::Omega,
        opts,
        |seg| seg,
        |seg| {
            for (i, &om) in seg.omega.iter().enumerate() {
                let x = seg.lo + i as u64;
                if x >= lo && prefix <= rhs(x, eps) {
                    emit(x);
                }
                prefix = prefix.max(lhs(x, u64::from(om), eps));
            }
        },
    )
}

/// Every barrier in `[lo, hi]`, each tagged [`Method::Streaming`].
pub fn scan_barriers(
    lo: u64,
    hi: u64,
    eps: RationalEps,
    opts: ScanOptions,
) -> Result<Vec<BarrierVerdict>> {
    let mut out = Vec::new();
    for_each_barrier(lo, hi, eps, opts, |n| {
        out.push(BarrierVerdict::barrier(n, Method::Streaming))
    })?;
    Ok(out)
}

pub fn guaranteed_barrier_bound(eps: RationalEps) -> Result<BarrierBound> {
    if !eps.at_most_one() {
        return Err(Error::EpsAboveOne {
            eps: eps.to_string(),
        });
    }
    let t = eps.den() / eps.num();
    if t + 1 > MAX_PRIMORIAL_INDEX {
        return Err(Error::BoundUnrepresentable { t });
    }
    Ok(BarrierBound {
        t,
        bound: primorial(t + 1)?,
    })
}

/// Builds `n = p_{i_1}^{a_1} ... p_{i_s}^{a_s} + k` with `s * eps > k`, which
/// the relation refutes at `m = n - k` since `omega(m) = s`.
///
/// Prime indices are 1-based (`1` is the prime 2).
pub fn non_barrier_family(
    eps: RationalEps,
    s: u64,
    k: u64,
    prime_indices: &[u64],
    exponents: &[u32],
) -> Result<FamilyMember> {
    if s == 0 {
        return Err(Error::BelowDomain {
            what: "s",
            value: 0,
            min: 1,
        });
    }
    if k == 0 {
        return Err(Error::BelowDomain {
            what: "k",
            value: 0,
            min: 1,
        });
    }
    if u128::from(s) * u128::from(eps.num()) <= u128::from(k) * u128::from(eps.den()) {
        return Err(Error::FamilyCondition {
            s,
            k,
            eps: eps.to_string(),
        });
    }
    for (what, got) in [
        ("prime_indices", prime_indices.len()),
        ("exponents", exponents.len()),
    ] {
        if got as u64 != s {
            return Err(Error::LengthMismatch {
                what,
                expected: s,
                got: got as u64,
            });
        }
    }
    let mut sorted = prime_indices.to_vec();
    sorted.sort_unstable();
    if let Some(&i) = sorted.first().filter(|&&i| i == 0) {
        return Err(Error::BelowDomain {
            what: "prime index",
            value: i,
            min: 1,
        });
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::RepeatedPrimeIndex { index: w[0] });
    }
    if let Some(&a) = exponents.iter().find(|&&a| a == 0) {
        return Err(Error::BelowDomain {
            what: "exponent",
            value: u64::from(a),
            min: 1,
        });
    }
    let max_index = *sorted.last().expect("s >= 1");
    // p_i >= i, so any index past 2^32 already overflows the product.
    if max_index > u64::from(u32::MAX) {
        return Err(Error::Overflow {
            quantity: format!("p_{max_index}"),
        });
    }
    let primes = first_primes(max_index as usize);
    let overflow = || Error::Overflow {
        quantity: format!(
            "prod p_i^a_i + {k} for indices {prime_indices:?}, exponents {exponents:?}"
        ),
    };
    let witness = prime_indices
        .iter()
        .zip(exponents)
        .try_fold(1u64, |acc, (&i, &a)| {
            primes[i as usize - 1]
                .checked_pow(a)
                .and_then(|pa| acc.checked_mul(pa))
        })
        .ok_or_else(overflow)?;
    let n = witness.checked_add(k).ok_or_else(overflow)?;
    Ok(FamilyMember { n, witness })
}

/// Barrier counts in `[1, limit]` for each eps, in input order.
pub fn barrier_census(
    limit: u64,
    eps_list: &[RationalEps],
    opts: ScanOptions,
) -> Result<Vec<(RationalEps, u64)>> {
    eps_list
        .iter()
        .map(|&eps| {
            let mut count = 0u64;
            for_each_barrier(1, limit, eps, opts, |_| count += 1)?;
            Ok((eps, count))
        })
        .collect()
}

/// Whether counts never decrease as eps decreases.
pub fn census_is_monotone(census: &[(RationalEps, u64)]) -> bool {
    let mut sorted = census.to_vec();
    sorted.sort_by_key(|&(eps, _)| std::cmp::Reverse(eps));
    sorted.windows(2).all(|w| w[0].1 <= w[1].1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_sieve, make_eps};

    fn eps(n: u64, d: u64) -> RationalEps {
        make_eps(n, d).unwrap()
    }

    // Independent oracle: trial-division omega and the definition, rational
    // comparison via cross-multiplication.
    fn omega_trial(mut m: u64) -> u64 {
        let mut c = 0;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                c += 1;
                while m.is_multiple_of(p) {
                    m /= p;
                }
            }
            p += 1;
        }
        c + u64::from(m > 1)
    }

    fn oracle_barrier(n: u64, num: u64, den: u64) -> bool {
        (0..n).all(|m| den * m + num * omega_trial(m) <= den * n)
    }

    #[test]
    fn relation_examples() {
        let s = build_sieve(100).unwrap();
        assert!(relation_holds(2, 3, eps(1, 1), &s).unwrap());
        assert!(!relation_holds(2, 3, eps(3, 2), &s).unwrap());
        assert!(relation_holds(6, 7, eps(1, 2), &s).unwrap());
        assert!(relation_holds(3, 3, eps(1, 1), &s).is_err());
        assert!(relation_holds(101, 200, eps(1, 1), &s).is_err());
    }

    #[test]
    fn naive_examples() {
        let s = build_sieve(100).unwrap();
        let v = is_barrier_naive(7, eps(1, 1), &s).unwrap();
        assert_eq!(v, BarrierVerdict::refuted(7, 6, Method::Naive));
        assert!(is_barrier_naive(8, eps(1, 1), &s).unwrap().is_barrier);
        for e in [eps(1, 1), eps(3, 2), eps(100, 1), eps(1, 7)] {
            assert!(is_barrier_naive(1, e, &s).unwrap().is_barrier);
        }
        assert!(is_barrier_naive(102, eps(1, 1), &s).is_err());
        assert!(is_barrier_naive(0, eps(1, 1), &s).is_err());
    }

    #[test]
    fn naive_witness_is_largest_failure() {
        let s = build_sieve(400).unwrap();
        for n in 1..=400 {
            let v = is_barrier_naive(n, eps(1, 2), &s).unwrap();
            let largest = (0..n).rev().find(|&m| 2 * m + omega_trial(m) > 2 * n);
            assert_eq!(v.witness, largest);
            assert_eq!(v.is_barrier, largest.is_none());
        }
    }

    #[test]
    fn windowed_examples() {
        let s = build_sieve(200).unwrap();
        let v = is_barrier_windowed(8, eps(1, 1), &s).unwrap();
        assert!(v.is_barrier);
        assert_eq!(v.method, Method::Windowed);
        let v = is_barrier_windowed(7, eps(1, 1), &s).unwrap();
        assert_eq!(v.witness, Some(6));
        assert!(matches!(
            is_barrier_windowed(100, eps(3, 2), &s),
            Err(Error::EpsAboveOne { .. })
        ));
        assert!(is_barrier_windowed(1, eps(1, 1), &s).unwrap().is_barrier);
        assert!(is_barrier_windowed(2, eps(1, 1), &s).unwrap().is_barrier);
    }

    #[test]
    fn ladder() {
        assert_eq!(ladder_index(2), Some(1));
        assert_eq!(ladder_index(5), Some(1));
        assert_eq!(ladder_index(6), Some(2));
        assert_eq!(ladder_index(29), Some(2));
        assert_eq!(ladder_index(30), Some(3));
        assert_eq!(ladder_index(u64::MAX), Some(15));
    }

    #[test]
    fn scan_examples() {
        let opts = ScanOptions::default();
        let got: Vec<u64> = scan_barriers(1, 30, eps(1, 1), opts)
            .unwrap()
            .iter()
            .map(|v| v.n)
            .collect();
        let oracle: Vec<u64> = (1..=30).filter(|&n| oracle_barrier(n, 1, 1)).collect();
        assert_eq!(got, oracle);
        assert_eq!(
            got,
            vec![1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 14, 17, 18, 20, 24, 26, 28, 30]
        );
        let got: Vec<u64> = scan_barriers(1, 100, eps(3, 2), opts)
            .unwrap()
            .iter()
            .map(|v| v.n)
            .collect();
        assert_eq!(got, vec![1, 2]);
        let got: Vec<u64> = scan_barriers(1, 6, eps(1, 1), opts)
            .unwrap()
            .iter()
            .map(|v| v.n)
            .collect();
        assert_eq!(got, vec![1, 2, 3, 4, 5, 6]);
        assert!(scan_barriers(0, 6, eps(1, 1), opts).is_err());
        assert!(scan_barriers(7, 6, eps(1, 1), opts).is_err());
    }

    #[test]
    fn scan_subranges_match_oracle() {
        let opts = ScanOptions {
            threads: 2,
            segment_len: 17,
        };
        for (num, den) in [(1, 1), (1, 2), (2, 3), (5, 2), (1, 5)] {
            for (lo, hi) in [(1, 300), (45, 300), (250, 260), (299, 299)] {
                let got: Vec<u64> = scan_barriers(lo, hi, eps(num, den), opts)
                    .unwrap()
                    .iter()
                    .map(|v| v.n)
                    .collect();
                let want: Vec<u64> = (lo..=hi).filter(|&n| oracle_barrier(n, num, den)).collect();
                assert_eq!(got, want, "eps {num}/{den} range {lo}..{hi}");
            }
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(
            guaranteed_barrier_bound(eps(1, 1)).unwrap(),
            BarrierBound { t: 1, bound: 6 }
        );
        assert_eq!(
            guaranteed_barrier_bound(eps(1, 2)).unwrap(),
            BarrierBound { t: 2, bound: 30 }
        );
        assert_eq!(
            guaranteed_barrier_bound(eps(2, 3)).unwrap(),
            BarrierBound { t: 1, bound: 6 }
        );
        assert!(guaranteed_barrier_bound(eps(3, 2)).is_err());
        assert_eq!(
            guaranteed_barrier_bound(eps(1, 15)).unwrap_err(),
            Error::BoundUnrepresentable { t: 15 }
        );
        assert_eq!(guaranteed_barrier_bound(eps(1, 14)).unwrap().t, 14);
        // Every n up to the ε = 1/2 bound is a barrier by the oracle.
        assert!((1..=30).all(|n| oracle_barrier(n, 1, 2)));
    }

    #[test]
    fn family_examples() {
        let m = non_barrier_family(eps(1, 1), 2, 1, &[1, 2], &[1, 1]).unwrap();
        assert_eq!(m, FamilyMember { n: 7, witness: 6 });
        let m = non_barrier_family(eps(1, 2), 3, 1, &[1, 2, 3], &[1, 1, 1]).unwrap();
        assert_eq!(m, FamilyMember { n: 31, witness: 30 });
        assert!(matches!(
            non_barrier_family(eps(1, 2), 2, 1, &[1, 2], &[1, 1]),
            Err(Error::FamilyCondition { .. })
        ));
        assert_eq!(
            non_barrier_family(eps(1, 1), 2, 1, &[2, 2], &[1, 1]).unwrap_err(),
            Error::RepeatedPrimeIndex { index: 2 }
        );
        assert!(non_barrier_family(eps(1, 1), 2, 1, &[1, 2], &[1, 0]).is_err());
        assert!(non_barrier_family(eps(1, 1), 2, 1, &[1], &[1]).is_err());
        assert!(matches!(
            non_barrier_family(eps(1, 1), 2, 1, &[1, 2], &[64, 1]),
            Err(Error::Overflow { .. })
        ));
    }

    #[test]
    fn census_examples() {
        let opts = ScanOptions::default();
        let c = barrier_census(210, &[eps(1, 1), eps(1, 2), eps(1, 3)], opts).unwrap();
        let oracle: Vec<u64> = [(1, 1), (1, 2), (1, 3)]
            .iter()
            .map(|&(a, b)| (1..=210).filter(|&n| oracle_barrier(n, a, b)).count() as u64)
            .collect();
        assert_eq!(c.iter().map(|x| x.1).collect::<Vec<_>>(), oracle);
        assert_eq!(oracle, vec![45, 178, 210]);
        assert!(census_is_monotone(&c));
        assert_eq!(barrier_census(100, &[eps(3, 2)], opts).unwrap()[0].1, 2);
        assert_eq!(barrier_census(6, &[eps(1, 1)], opts).unwrap()[0].1, 6);
    }
}
