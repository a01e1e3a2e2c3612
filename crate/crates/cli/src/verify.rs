//! Invariant suites behind `barrier-lab verify`.

use barrier_core::{
    build_sieve, classify_subsequence, count_low_omega, count_low_omega_in, for_each_gap_stat,
    gen_subsequence, guaranteed_barrier_bound, is_barrier_naive, is_barrier_windowed,
    non_barrier_family, scan_barriers, verify_partition, RationalEps, Result, ScanOptions,
};
use clap::ValueEnum;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FAMILY_SEED: u64 = 0x0b44_1e55;
const FAMILY_TRIALS: usize = 100;
const LEMMA13_MAX_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Lemma11,
    Lemma12,
    Lemma13,
    Lemma14,
    Streaming,
    Partition,
    Density,
    Lemma23,
    Records,
    Canonical,
    Subseq,
}

impl Suite {
    pub const EACH: [Suite; 11] = [
        Suite::Lemma11,
        Suite::Lemma12,
        Suite::Lemma13,
        Suite::Lemma14,
        Suite::Streaming,
        Suite::Partition,
        Suite::Density,
        Suite::Lemma23,
        Suite::Records,
        Suite::Canonical,
        Suite::Subseq,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Lemma11 => "lemma11",
            Suite::Lemma12 => "lemma12",
            Suite::Lemma13 => "lemma13",
            Suite::Lemma14 => "lemma14",
            Suite::Streaming => "streaming",
            Suite::Partition => "partition",
            Suite::Density => "density",
            Suite::Lemma23 => "lemma23",
            Suite::Records => "records",
            Suite::Canonical => "canonical",
            Suite::Subseq => "subseq",
        }
    }

    /// Suites about barriers of eps*omega take an eps.
    pub fn needs_eps(&self) -> bool {
        matches!(
            self,
            Suite::All
                | Suite::Lemma11
                | Suite::Lemma12
                | Suite::Lemma13
                | Suite::Lemma14
                | Suite::Streaming
                | Suite::Density
        )
    }

    fn default_limit(&self) -> u64 {
        match self {
            Suite::Lemma11 | Suite::Partition | Suite::Canonical | Suite::Lemma23 => 100_000,
            Suite::Lemma14 => 30_030,
            Suite::Streaming | Suite::Subseq => 10_000,
            Suite::Records => 1_000_000,
            Suite::Density => 7,
            Suite::All | Suite::Lemma12 | Suite::Lemma13 => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub suite: &'static str,
    pub status: Status,
    pub checked: u64,
    pub detail: String,
}

fn outcome(suite: Suite, ok: bool, checked: u64, detail: String) -> Outcome {
    Outcome {
        suite: suite.name(),
        status: if ok { Status::Pass } else { Status::Fail },
        checked,
        detail,
    }
}

fn skip(suite: Suite, detail: &str) -> Outcome {
    Outcome {
        suite: suite.name(),
        status: Status::Skip,
        checked: 0,
        detail: detail.to_owned(),
    }
}

pub fn run(
    suite: Suite,
    eps: Option<RationalEps>,
    limit: Option<u64>,
    opts: ScanOptions,
) -> Result<Vec<Outcome>> {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    suites
        .into_iter()
        .map(|s| run_one(s, eps, limit.unwrap_or(s.default_limit()), opts))
        .collect()
}

fn run_one(
    suite: Suite,
    eps: Option<RationalEps>,
    limit: u64,
    opts: ScanOptions,
) -> Result<Outcome> {
    let eps = || eps.expect("eps presence is checked by the caller");
    match suite {
        Suite::All => unreachable!("expanded by run"),
        Suite::Lemma11 => lemma11(eps(), limit, opts),
        Suite::Lemma12 => lemma12(eps()),
        Suite::Lemma13 => lemma13(eps(), opts),
        Suite::Lemma14 => lemma14(eps(), limit),
        Suite::Streaming => streaming(eps(), limit, opts),
        Suite::Partition => Ok(outcome(
            suite,
            verify_partition(limit)?,
            limit.saturating_sub(1),
            format!("every n in [2, {limit}] lies in exactly one I_r"),
        )),
        Suite::Density => density(eps(), limit, opts),
        Suite::Lemma23 => lemma23(limit, opts),
        Suite::Records => records(limit, opts),
        Suite::Canonical => canonical(limit),
        Suite::Subseq => subseq(limit),
    }
}

fn lemma11(eps: RationalEps, limit: u64, opts: ScanOptions) -> Result<Outcome> {
    if eps.at_most_one() {
        return Ok(skip(Suite::Lemma11, "needs eps > 1"));
    }
    let found: Vec<u64> = scan_barriers(1, limit, eps, opts)?
        .iter()
        .map(|v| v.n)
        .collect();
    let want: Vec<u64> = [1, 2].into_iter().filter(|&n| n <= limit).collect();
    Ok(outcome(
        Suite::Lemma11,
        found == want,
        limit,
        format!("barriers in [1, {limit}]: {found:?}"),
    ))
}

fn omega_trial(mut m: u64) -> u64 {
    let mut count = 0;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            count += 1;
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    count + u64::from(m > 1)
}

fn lemma12(eps: RationalEps) -> Result<Outcome> {
    // Smallest s with s * eps > 1.
    let s_min = eps.den() / eps.num() + 1;
    if s_min > 8 {
        return Ok(skip(
            Suite::Lemma12,
            "s * eps > k needs more distinct primes than a tractable 64-bit product allows",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
    let mut certified = 0u64;
    let mut failures = Vec::new();
    let mut attempts = 0;
    while (certified as usize + failures.len()) < FAMILY_TRIALS && attempts < 100 * FAMILY_TRIALS {
        attempts += 1;
        let s = rng.gen_range(s_min..=s_min + 2);
        let k_max = (u128::from(s) * u128::from(eps.num()) - 1) / u128::from(eps.den());
        let k = rng.gen_range(1..=u64::try_from(k_max).unwrap_or(u64::MAX).min(1_000_000));
        let indices: Vec<u64> = sample(&mut rng, (2 * s + 4) as usize, s as usize)
            .into_iter()
            .map(|i| i as u64 + 1)
            .collect();
        let exps: Vec<u32> = (0..s).map(|_| rng.gen_range(1..=3)).collect();
        let Ok(member) = non_barrier_family(eps, s, k, &indices, &exps) else {
            continue;
        };
        let refuted = omega_trial(member.witness) == s
            && member.n - member.witness == k
            && u128::from(eps.den()) * u128::from(member.witness)
                + u128::from(eps.num()) * u128::from(s)
                > u128::from(eps.den()) * u128::from(member.n);
        if refuted {
            certified += 1;
        } else {
            failures.push(member.n);
        }
    }
    Ok(outcome(
        Suite::Lemma12,
        failures.is_empty() && certified as usize == FAMILY_TRIALS,
        certified + failures.len() as u64,
        format!("{certified} certified non-barriers, failures {failures:?}"),
    ))
}

fn lemma13(eps: RationalEps, opts: ScanOptions) -> Result<Outcome> {
    if !eps.at_most_one() {
        return Ok(skip(Suite::Lemma13, "needs eps <= 1"));
    }
    let bound = guaranteed_barrier_bound(eps)?;
    if bound.bound > LEMMA13_MAX_BOUND {
        return Ok(skip(Suite::Lemma13, "guaranteed bound exceeds 10^7"));
    }
    let found = scan_barriers(1, bound.bound, eps, opts)?.len() as u64;
    Ok(outcome(
        Suite::Lemma13,
        found == bound.bound,
        bound.bound,
        format!(
            "t = {}, {found} of the first {} integers are barriers",
            bound.t, bound.bound
        ),
    ))
}

fn lemma14(eps: RationalEps, limit: u64) -> Result<Outcome> {
    if !eps.at_most_one() {
        return Ok(skip(Suite::Lemma14, "needs eps <= 1"));
    }
    let sieve = build_sieve(limit.max(2))?;
    let mut mismatches = Vec::new();
    for n in 3..=limit {
        let fast = is_barrier_windowed(n, eps, &sieve)?;
        let slow = is_barrier_naive(n, eps, &sieve)?;
        if (fast.is_barrier, fast.witness) != (slow.is_barrier, slow.witness) {
            mismatches.push(n);
        }
    }
    Ok(outcome(
        Suite::Lemma14,
        mismatches.is_empty(),
        limit.saturating_sub(2),
        format!("windowed vs naive mismatches on [3, {limit}]: {mismatches:?}"),
    ))
}

fn streaming(eps: RationalEps, limit: u64, opts: ScanOptions) -> Result<Outcome> {
    let sieve = build_sieve(limit.max(2))?;
    let scanned: Vec<u64> = scan_barriers(1, limit, eps, opts)?
        .iter()
        .map(|v| v.n)
        .collect();
    let mut naive = Vec::new();
    for n in 1..=limit {
        if is_barrier_naive(n, eps, &sieve)?.is_barrier {
            naive.push(n);
        }
    }
    Ok(outcome(
        Suite::Streaming,
        scanned == naive,
        limit,
        format!(
            "{} barriers by scan, {} by naive check",
            scanned.len(),
            naive.len()
        ),
    ))
}

fn density(eps: RationalEps, r_max: u64, opts: ScanOptions) -> Result<Outcome> {
    if !eps.at_most_one() {
        return Ok(skip(Suite::Density, "needs eps <= 1"));
    }
    let r_max = r_max.clamp(1, 7);
    let t = eps.den() / eps.num();
    let end = barrier_core::interval_spec(r_max)?.hi;
    let sieve = build_sieve(end - 1)?;
    let mut problems = Vec::new();
    let mut ratios = Vec::new();
    for r in 1..=r_max {
        let row = count_low_omega_in(&sieve, r, t)?;
        if r <= 5 && count_low_omega(r, t, opts)? != row {
            problems.push(format!("r = {r}: segmented count differs"));
        }
        let next = count_low_omega_in(&sieve, r, t + 1)?;
        if next.count < row.count {
            problems.push(format!("r = {r}: count decreases in t"));
        }
        if t >= r && row.count != row.interval_len {
            problems.push(format!("r = {r}: not saturated for t >= r"));
        }
        ratios.push(row.ratio);
    }
    if t == 1 && !ratios.windows(2).all(|w| w[1] < w[0]) {
        problems.push("t = 1 ratios are not strictly decreasing".to_owned());
    }
    Ok(outcome(
        Suite::Density,
        problems.is_empty(),
        r_max,
        if problems.is_empty() {
            format!("t = {t}, rows r = 1..{r_max} consistent")
        } else {
            problems.join("; ")
        },
    ))
}

fn lemma23(limit: u64, opts: ScanOptions) -> Result<Outcome> {
    let mut violations = 0u64;
    let mut recurrence = 0u64;
    let mut prev: Option<i64> = None;
    let mut checked = 0;
    for_each_gap_stat(limit, opts, |g| {
        checked += 1;
        if g.n >= 3 && g.gap < g.lemma_bound {
            violations += 1;
        }
        if prev.is_some_and(|p| g.gap < p - 1) {
            recurrence += 1;
        }
        prev = Some(g.gap);
    })?;
    Ok(outcome(
        Suite::Lemma23,
        violations == 0 && recurrence == 0,
        checked,
        format!("G(n) < d(n-1) - 1 at {violations} n; G(n+1) < G(n) - 1 at {recurrence} n"),
    ))
}

fn records(limit: u64, opts: ScanOptions) -> Result<Outcome> {
    let recs = barrier_core::record_points(limit, opts)?;
    let increasing = recs
        .windows(2)
        .all(|w| w[0].gap < w[1].gap && w[0].n < w[1].n);
    let best = recs.last().map_or(0, |g| g.gap);
    // m = 720720 has 240 divisors, so G(720721) >= 239.
    let evidence = limit < 720_721 || (recs.len() >= 10 && best >= 239);
    Ok(outcome(
        Suite::Records,
        increasing && evidence,
        limit.saturating_sub(1),
        format!("{} records, largest gap {best}", recs.len()),
    ))
}

fn canonical(limit: u64) -> Result<Outcome> {
    let sieve = build_sieve(limit.max(2))?;
    let mut bad = Vec::new();
    for n in 3..=limit {
        let rep = barrier_core::canonical_rep(n, &sieve)?;
        let ok = rep.reconstruct(&sieve) == Some(n)
            && rep.alphas.last().is_some_and(|&a| a > 0)
            && rep.product_bound() >= rep.alpha_sum();
        if !ok {
            bad.push(n);
        }
    }
    Ok(outcome(
        Suite::Canonical,
        bad.is_empty(),
        limit.saturating_sub(2),
        format!("round-trip or product-sum failures: {bad:?}"),
    ))
}

fn subseq(horizon: u64) -> Result<Outcome> {
    let sieve = build_sieve(horizon.max(3))?;
    let mut classified: Vec<Vec<u64>> = vec![Vec::new(); 5];
    for n in 3..=horizon {
        let s = classify_subsequence(n, &sieve)? as usize;
        if s <= 4 {
            classified[s].push(n);
        }
    }
    let mut problems = Vec::new();
    let mut merged = Vec::new();
    for (s, want) in classified.iter().enumerate().skip(1) {
        let terms = gen_subsequence(s as u64, want.len() + 1)?;
        if terms[..want.len()] != want[..] || terms[want.len()] <= horizon {
            problems.push(format!("s = {s} differs from classifier"));
        }
        if !terms.windows(2).all(|w| w[0] < w[1]) {
            problems.push(format!("s = {s} not increasing"));
        }
        merged.extend_from_slice(&terms[..want.len()]);
    }
    merged.sort_unstable();
    let before = merged.len();
    merged.dedup();
    if merged.len() != before {
        problems.push("subsequences overlap".to_owned());
    }
    Ok(outcome(
        Suite::Subseq,
        problems.is_empty(),
        horizon.saturating_sub(2),
        if problems.is_empty() {
            format!("s = 1..4 match the classifier on [3, {horizon}]")
        } else {
            problems.join("; ")
        },
    ))
}
