use k3arith::ss_scan::{is_supersingular_prime, scan, verify_witness, ScanConfig, Verdict};

const FULL_LIST: [u64; 68] = [
    13, 29, 41, 113, 337, 839, 853, 881, 953, 1511, 1709, 1889, 2351, 3037, 3389, 4871, 5557, 5711,
    5741, 6719, 6733, 7237, 8821, 14489, 14869, 14951, 15161, 15791, 15973, 18229, 18257, 18313,
    18341, 20021, 21517, 23197, 24359, 26921, 27749, 28559, 33349, 33461, 33599, 34649, 37813,
    40151, 44101, 45389, 47629, 49057, 50077, 50231, 52919, 54277, 54377, 58631, 60689, 64679,
    65269, 68879, 69761, 70237, 70309, 72269, 72911, 78791, 91309, 101501,
];

#[test]
fn prefix_up_to_1000() {
    let r = scan(&ScanConfig::j_poly(7, 1000).unwrap()).unwrap();
    assert_eq!(r.supersingular, [13, 29, 41, 113, 337, 839, 853, 881, 953]);
    assert!(r.density_flags.is_empty());
}

#[test]
fn witnesses_reverify() {
    let cfg = ScanConfig::j_poly(7, 3500).unwrap();
    let r = scan(&cfg).unwrap();
    for row in &r.rows {
        if let Verdict::Supersingular { witness } = &row.verdict {
            assert!(verify_witness(row.prime, &cfg, witness).unwrap());
            let mut bad = witness.clone();
            bad.root[0] = (bad.root[0] + 1) % row.prime;
            assert!(!verify_witness(row.prime, &cfg, &bad).unwrap());
        }
    }
    assert!(r
        .rows
        .iter()
        .any(|x| matches!(x.verdict, Verdict::Ordinary { .. })));
}

#[test]
fn last_listed_prime() {
    let cfg = ScanConfig::j_poly(7, 7).unwrap();
    assert!(is_supersingular_prime(101_501, &cfg)
        .unwrap()
        .is_supersingular());
}

#[test]
fn window_past_the_list_runs() {
    // no claim is made here; the output is only required to exist
    let r = scan(&ScanConfig::j_poly(104_730, 104_800).unwrap()).unwrap();
    assert_eq!(r.rows.first().map(|x| x.prime), Some(104_743));
    assert_eq!(r.tested, r.rows.len());
}

#[test]
#[ignore = "about a minute on 8 cores"]
fn full_range() {
    let r = scan(&ScanConfig::j_poly(7, 104_729).unwrap()).unwrap();
    assert_eq!(r.supersingular, FULL_LIST);
    assert!(r.density_flags.is_empty());
}
