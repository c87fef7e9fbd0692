use std::collections::BTreeSet;

use k3arith::fixtures;
use k3arith::kodaira::{brute_force_fibres, find_fibres, group_fibrations, CurveSet, FibreType};
use k3arith::lattice::GramFixture;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;
use common::random_set;

fn curve_set(text: &str) -> CurveSet {
    CurveSet::new(&GramFixture::parse(text).unwrap().lattice).unwrap()
}

#[test]
fn search_matches_exhaustive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut nonempty = 0;
    let mut kinds = BTreeSet::new();
    for _ in 0..200 {
        let s = random_set(&mut rng);
        let found = find_fibres(&s, 16);
        kinds.extend(found.iter().map(|f| f.kind));
        let fast: BTreeSet<Vec<(usize, u32)>> = found.into_iter().map(|f| f.components).collect();
        let slow = brute_force_fibres(&s, 6);
        assert_eq!(fast, slow, "gram {:?}", s.gram);
        nonempty += usize::from(!fast.is_empty());
    }
    assert!(nonempty > 50);
    assert!(
        kinds.iter().any(|k| matches!(k, FibreType::D(_))),
        "{kinds:?}"
    );
    assert!(kinds.contains(&FibreType::E6), "{kinds:?}");
}

#[test]
fn first_fibration_fibres_detected() {
    let s = curve_set(fixtures::FIBRES_A);
    let f = find_fibres(&s, 16);
    let kinds: Vec<FibreType> = f.iter().map(|x| x.kind).collect();
    assert_eq!(kinds.len(), 3);
    assert_eq!(kinds.iter().filter(|k| **k == FibreType::I(6)).count(), 2);
    assert!(kinds.contains(&FibreType::D(4)));
    let fib = group_fibrations(&f, &s).unwrap();
    assert_eq!(fib.len(), 1);
    assert_eq!(fib[0].fibres.len(), 3);
    let d4 = f.iter().find(|x| x.kind == FibreType::D(4)).unwrap();
    let centre = s.index("E3,0").unwrap();
    assert!(d4.components.contains(&(centre, 2)));
}

#[test]
fn second_fibration_fibres_detected() {
    let s = curve_set(fixtures::FIBRES_B);
    let f = find_fibres(&s, 16);
    let mut kinds: Vec<String> = f.iter().map(|x| x.kind.to_string()).collect();
    kinds.sort();
    assert_eq!(kinds, ["I10", "I2", "I2", "I2"]);
    assert_eq!(group_fibrations(&f, &s).unwrap().len(), 1);
    // cycles are capped by max_n
    assert_eq!(find_fibres(&s, 9).len(), 3);
}

#[test]
fn third_fibration_has_no_section() {
    let s = curve_set(fixtures::FIBRES_C);
    let f = find_fibres(&s, 16);
    assert_eq!(
        f.iter().map(|x| x.kind).collect::<Vec<_>>(),
        vec![FibreType::E8, FibreType::E8]
    );
    let fib = group_fibrations(&f, &s).unwrap();
    assert_eq!(fib.len(), 1);
    assert!(fib[0].sections.is_empty());
    assert!(fib[0].key.iter().all(|k| k % 2 == 0));
    for x in &f {
        let top = x.components.iter().find(|c| c.1 == 6).unwrap().0;
        assert!(["E4,-2", "L~2"].contains(&s.labels[top].as_str()));
        assert_eq!(x.components.iter().map(|c| c.1).sum::<u32>(), 30);
    }
}
