use k3arith::field::{rat, Field};
use k3arith::finite_field::{find_roots, find_roots_exhaustive, ExtField, Fq, FqPoly};
use k3arith::lattice::{
    bareiss, from_i64, hyperbolic_split, identity, mat_mul, smith, FixtureModule, GramFixture,
    GramLattice, InvolutionModule, Mat, Provenance,
};
use k3arith::numfield::TowerElement;
use k3arith::report::stringify_numbers;
use k3arith::si_verify::kummer_model;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn det_abs_one(m: &Mat) -> bool {
    bareiss(m).1.abs() == BigInt::from(1)
}

/// Symmetric even matrix with the given diagonal halves and off-diagonal entries.
fn even_gram(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (
        prop::collection::vec(-3i64..=1, n),
        prop::collection::vec(-2i64..=2, n * n),
    )
        .prop_map(move |(d, off)| {
            let mut g = vec![vec![0; n]; n];
            for i in 0..n {
                g[i][i] = 2 * d[i];
                for j in i + 1..n {
                    g[i][j] = off[i * n + j];
                    g[j][i] = off[i * n + j];
                }
            }
            g
        })
}

fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![BigInt::zero(); n + m]; n + m];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[n + i][n + j] = b[i][j].clone();
        }
    }
    out
}

/// Involutions built from blocks: trivial `[1]`, sign `[-1]`, swap `[[0,1],[1,0]]`.
fn involution() -> impl Strategy<Value = Mat> {
    prop::collection::vec(0u8..3, 1..5).prop_map(|kinds| {
        let mut m: Mat = vec![];
        for k in kinds {
            let block = match k {
                0 => from_i64(&[vec![1]]),
                1 => from_i64(&[vec![-1]]),
                _ => from_i64(&[vec![0, 1], vec![1, 0]]),
            };
            m = block_diag(&m, &block);
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_round_trip(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_matrix(r, c))) {
        let a = from_i64(&m);
        let s = smith(&a);
        let d = mat_mul(&mat_mul(&s.u, &a), &s.v);
        prop_assert!(det_abs_one(&s.u) && det_abs_one(&s.v));
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j && i < s.d.len() {
                    prop_assert_eq!(x, &s.d[i]);
                } else {
                    prop_assert!(x.is_zero());
                }
            }
        }
        let nz: Vec<&BigInt> = s.d.iter().filter(|x| !x.is_zero()).collect();
        for w in nz.windows(2) {
            prop_assert!(w[1].is_multiple_of(w[0]));
        }
        prop_assert_eq!(nz.len(), bareiss(&a).0);
    }

    #[test]
    fn discriminant_order_is_det(g in (1usize..6).prop_flat_map(even_gram)) {
        let labels: Vec<String> = (0..g.len()).map(|i| format!("x{i}")).collect();
        let l = GramLattice::new(labels, from_i64(&g)).unwrap();
        let (rank, det) = l.rank_det();
        prop_assume!(rank == g.len());
        let order: BigInt = l.discriminant_group().unwrap().iter().product();
        prop_assert_eq!(order, det.abs());
    }

    #[test]
    fn cohomology_is_additive(a in involution(), b in involution()) {
        let ha = InvolutionModule::new(a.clone(), None).unwrap().c2_cohomology().unwrap();
        let hb = InvolutionModule::new(b.clone(), None).unwrap().c2_cohomology().unwrap();
        let hs = InvolutionModule::new(block_diag(&a, &b), None).unwrap().c2_cohomology().unwrap();
        prop_assert_eq!(hs.h0_rank, ha.h0_rank + hb.h0_rank);
        let mut t1 = [ha.h1.torsion.clone(), hb.h1.torsion.clone()].concat();
        let mut t2 = [ha.h2.torsion.clone(), hb.h2.torsion.clone()].concat();
        t1.sort();
        t2.sort();
        prop_assert_eq!(hs.h1.torsion, t1);
        prop_assert_eq!(hs.h2.torsion, t2);
    }

    #[test]
    fn index2_candidates_closed_under_swap(g in (2usize..6).prop_flat_map(even_gram)) {
        // symmetrize under the swap of the first two generators
        let n = g.len();
        let mut h = g.clone();
        for i in 0..n {
            for j in 0..n {
                let (pi, pj) = (swap01(i), swap01(j));
                h[i][j] = g[i][j] + g[pi][pj];
            }
        }
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let lat = GramLattice::new(labels, from_i64(&h)).unwrap();
        prop_assume!(bareiss(&lat.gram).0 == n);
        let f = GramFixture {
            lattice: lat,
            provenance: Provenance::Derived,
            meta: vec![],
            swaps: vec![("x0".into(), "x1".into())],
        };
        let m = FixtureModule::new(&f).unwrap();
        let orbits = m.index2_orbits().unwrap();
        for (i, (_, j)) in orbits.iter().enumerate() {
            prop_assert_eq!(orbits[*j].1, i);
        }
    }

    #[test]
    fn hyperbolic_split_is_orthogonal(g in (0usize..4).prop_flat_map(even_gram), links in prop::collection::vec(-2i64..=2, 8)) {
        let n = g.len();
        let mut full = vec![vec![0i64; n + 2]; n + 2];
        for i in 0..n {
            for j in 0..n {
                full[i][j] = g[i][j];
            }
            full[i][n] = links[2 * i];
            full[n][i] = links[2 * i];
            full[i][n + 1] = links[2 * i + 1];
            full[n + 1][i] = links[2 * i + 1];
        }
        full[n][n] = -2;
        full[n][n + 1] = 1;
        full[n + 1][n] = 1;
        let mut labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        labels.extend(["O".to_string(), "F".to_string()]);
        let l = GramLattice::new(labels, from_i64(&full)).unwrap();
        let (split, parts) = hyperbolic_split(&l, "O", "F").unwrap();
        prop_assert!(split.direct_sum_split_check(&parts).unwrap());
        // the change of basis is unimodular, so the determinant is unchanged
        prop_assert_eq!(bareiss(&split.gram).1, bareiss(&l.gram).1);
    }

    #[test]
    fn roots_agree_with_exhaustive_search(p in prop::sample::select(vec![7u64, 11, 13]), c in prop::collection::vec(0u64..169, 2..6)) {
        let k = ExtField::new(p, 2).unwrap();
        let coeffs: Vec<Fq> = c.iter().map(|&x| k.from_index((x % k.order()) as usize)).collect();
        prop_assume!(!k.is_zero(coeffs.last().unwrap()));
        let f = FqPoly::new(&k, coeffs);
        prop_assert_eq!(find_roots(&f, &k).unwrap(), find_roots_exhaustive(&f, &k).unwrap());
    }

    #[test]
    fn kummer_model_swap_symmetry(v in prop::collection::vec((-9i64..=9, 1i64..=4), 4)) {
        let e: Vec<TowerElement> = v.iter().map(|&(n, d)| TowerElement::rational(rat(n, d))).collect();
        let m1 = kummer_model(&e[0], &e[1], &e[2], &e[3]);
        let m2 = kummer_model(&e[2], &e[3], &e[0], &e[1]);
        match (m1, m2) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.u2, b.um2);
                prop_assert_eq!(a.um2, b.u2);
                prop_assert_eq!(a.x, b.x);
                prop_assert_eq!(a.u0, b.u0);
            }
            (a, b) => prop_assert!(a.is_err() && b.is_err()),
        }
    }

    #[test]
    fn tower_inverse(c in prop::collection::vec(-5i64..=5, 6)) {
        let x = TowerElement::int(c[0])
            .add(&TowerElement::sqrt2().scale(&rat(c[1], 1)))
            .add(&TowerElement::sqrt5().scale(&rat(c[2], 1)))
            .add(&TowerElement::alpha().scale(&rat(c[3], 1)))
            .add(&TowerElement::beta().scale(&rat(c[4], 1)))
            .add(&TowerElement::beta().pow(2).scale(&rat(c[5], 1)));
        prop_assume!(!x.is_zero());
        prop_assert_eq!(x.mul(&x.inv().unwrap()), TowerElement::int(1));
    }

    #[test]
    fn reports_carry_no_json_numbers(xs in prop::collection::vec(any::<i64>(), 0..6), s in "[a-z]{0,6}") {
        let v = stringify_numbers(serde_json::json!({ "xs": xs, "s": s, "nested": { "n": xs.len() } }));
        let text = serde_json::to_string(&v).unwrap();
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        prop_assert!(!has_number(&back));
    }
}

fn swap01(i: usize) -> usize {
    match i {
        0 => 1,
        1 => 0,
        k => k,
    }
}

fn has_number(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Number(_) => true,
        serde_json::Value::Array(a) => a.iter().any(has_number),
        serde_json::Value::Object(o) => o.values().any(has_number),
        _ => false,
    }
}

#[test]
fn identity_has_trivial_smith_form() {
    assert!(smith(&identity(3)).d.iter().all(|d| *d == BigInt::from(1)));
}
