use barrier_core::{
    build_sieve, is_barrier_naive, is_barrier_windowed, make_eps, non_barrier_family,
    relation_holds, scan_barriers, scan_gap_stats, ScanOptions,
};
use proptest::prelude::*;

fn partitioning() -> impl Strategy<Value = ScanOptions> {
    (1usize..6, 1usize..500).prop_map(|(threads, segment_len)| ScanOptions {
        threads,
        segment_len,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn barrier_scan_ignores_partitioning(
        num in 1u64..5, den in 1u64..7, lo in 1u64..3000, span in 0u64..3000, opts in partitioning()
    ) {
        let eps = make_eps(num, den).unwrap();
        let hi = lo + span;
        prop_assert_eq!(
            scan_barriers(lo, hi, eps, opts).unwrap(),
            scan_barriers(lo, hi, eps, ScanOptions::default()).unwrap()
        );
    }

    #[test]
    fn gap_scan_ignores_partitioning(limit in 2u64..5000, opts in partitioning()) {
        prop_assert_eq!(
            scan_gap_stats(limit, opts).unwrap(),
            scan_gap_stats(limit, ScanOptions::default()).unwrap()
        );
    }

    #[test]
    fn windowed_agrees_with_naive(n in 1u64..20_000, num in 1u64..8, extra in 0u64..8) {
        let sieve = build_sieve(20_000).unwrap();
        let eps = make_eps(num, num + extra).unwrap();
        let fast = is_barrier_windowed(n, eps, &sieve).unwrap();
        let slow = is_barrier_naive(n, eps, &sieve).unwrap();
        prop_assert_eq!((fast.is_barrier, fast.witness), (slow.is_barrier, slow.witness));
        if let Some(m) = slow.witness {
            prop_assert!(m < n);
            prop_assert!(!relation_holds(m, n, eps, &sieve).unwrap());
        }
    }

    #[test]
    fn family_members_are_refuted(
        num in 1u64..5, den in 1u64..5,
        picks in proptest::sample::subsequence((1u64..=12).collect::<Vec<_>>(), 1..6),
        exps in proptest::collection::vec(1u32..3, 6),
    ) {
        let eps = make_eps(num, den).unwrap();
        let s = picks.len() as u64;
        prop_assume!(s * eps.num() > eps.den());
        let k = (s * eps.num() - 1) / eps.den();
        let member = non_barrier_family(eps, s, k, &picks, &exps[..picks.len()]).unwrap();
        prop_assert_eq!(member.n - member.witness, k);
        if member.n <= 5_000_000 {
            let sieve = build_sieve(member.n).unwrap();
            prop_assert_eq!(sieve.nu(member.witness).unwrap(), s);
            prop_assert!(!relation_holds(member.witness, member.n, eps, &sieve).unwrap());
        }
    }
}
