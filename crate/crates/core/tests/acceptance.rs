//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always print; exits nonzero only when a criterion
//! outside `KNOWN` fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use k3arith::error::Result;
use k3arith::field::{rat, Rationals};
use k3arith::finite_field::{kronecker_i64, ExtField};
use k3arith::fixtures;
use k3arith::kodaira::{self, CurveSet, FibreType};
use k3arith::lattice::{self, FixtureModule, GramFixture};
use k3arith::poly::PolyRing;
use k3arith::si_verify;
use k3arith::ss_scan::{self, ScanConfig};
use k3arith::surface_count::{count_via_fibration, drell_yan};
use k3arith::tate::Kodaira;
use k3arith::tate_surface::{self as ts, Place};
use k3arith::weil::{van_luijk, AlgebraicPart, FrobeniusSpectrum};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

mod common;

/// Criteria expected to fail in this checkout, with the reason printed.
const KNOWN: &[(&str, &str)] = &[
    ("3", "needs the 24-class fixture in K3ARITH_FIXTURE_DIR"),
    (
        "6",
        "the stated grid minimum 1/20 is the grid resolution; the attained minimum is 1/10",
    ),
    ("10b", "needs the 34-curve fixture in K3ARITH_FIXTURE_DIR"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (
        e <= limit,
        format!("{:.1}s of {}s", e.as_secs_f64(), limit.as_secs()),
    )
}

fn fixture_dir() -> Option<std::path::PathBuf> {
    fixtures::env_dir()
}

fn c1() -> Result<Outcome> {
    let t = Instant::now();
    let fx = drell_yan();
    let sx = fx.sextic()?;
    let mut sp = vec![];
    for p in [31u64, 71] {
        let n1 = sx
            .count_smooth(&fx.profile(), &ExtField::new(p, 1)?)?
            .smooth;
        let n2 = sx
            .count_smooth(&fx.profile(), &ExtField::new(p, 2)?)?
            .smooth;
        sp.push(FrobeniusSpectrum::from_counts(
            p,
            n1,
            n2,
            AlgebraicPart::drell_yan(p)?,
        )?);
    }
    let rho: Vec<u32> = sp.iter().map(|s| s.reduction_rank()).collect();
    let sq: Vec<BigInt> = sp
        .iter()
        .map(|s| s.artin_tate_sqclass())
        .collect::<Result<_>>()?;
    let bound = van_luijk(&sp[0], &sp[1])?;
    let (fast, time) = within(t, Duration::from_secs(60));
    let pass = rho == [20, 20] && sq == [BigInt::from(3), BigInt::from(35)] && bound == 19 && fast;
    Ok(outcome(
        pass,
        format!("rho {rho:?}, square classes {sq:?}, bound {bound}, {time}"),
    ))
}

fn c2() -> Result<Outcome> {
    let fx = drell_yan();
    let sx = fx.sextic()?;
    let e = ts::fibration_two(Rationals)?;
    let mut bad = vec![];
    let mut notes = vec![];
    for p in [11u64, 31, 41, 71, 79] {
        let split = kronecker_i64(2, p)? == 1 && kronecker_i64(5, p)? == 1;
        for n in [1u32, 2] {
            let k = ExtField::new(p, n as usize)?;
            let direct = sx.count_smooth(&fx.profile(), &k)?.smooth;
            let fib = count_via_fibration(&e, &k)?.total;
            let pred = match (n, split) {
                (1, true) => Some(si_verify::predict_counts(p)?.count_p),
                (1, false) => None,
                (_, true) => {
                    let a = si_verify::predict_counts(p)?.count_p2;
                    let b = si_verify::predict_count_p2(p)?.1.to_string();
                    (a == b).then_some(a)
                }
                (_, false) => Some(si_verify::predict_count_p2(p)?.1.to_string()),
            };
            if pred.is_none() {
                notes.push(format!("{p}^{n} two-way (non-split)"));
            }
            let ok = direct == fib && pred.as_ref().is_none_or(|x| *x == direct.to_string());
            if !ok {
                bad.push(format!("{p}^{n}: {direct} / {fib} / {pred:?}"));
            }
        }
    }
    Ok(outcome(
        bad.is_empty(),
        format!("mismatches {bad:?}; {}", notes.join(", ")),
    ))
}

fn c3() -> Result<Outcome> {
    let l = lattice::fibration_lattice();
    let rel = lattice::fibration_relation();
    let (rank, _) = l.rank_det();
    let rad = l.kernel_relation();
    let in_radical = lattice::mat_vec(&l.gram, &rel)
        .iter()
        .all(|x| x == &BigInt::from(0));
    let b0 = l.sub_lattice(&lattice::fibration_basis());
    let det0 = b0.rank_det().1;
    let (split, parts) = lattice::fibration_split();
    let big = split.sub_lattice(&parts[0]).rank_det();
    let hyp = split.sub_lattice(&parts[1]).rank_det();
    let fig = rank == 19
        && rad.len() == 1
        && in_radical
        && det0.magnitude() == &24u32.into()
        && split.direct_sum_split_check(&parts)?
        && big.0 == 17
        && hyp == (2, BigInt::from(-1));
    let fig_detail = format!(
        "generators: rank {rank}, |det B0| {}, split {} + U",
        det0.magnitude(),
        big.0
    );
    let dir = fixture_dir();
    let text = match fixtures::load(fixtures::LAMBDA24, dir.as_deref()) {
        Ok(t) => t,
        Err(_) => {
            return Ok(outcome(
                false,
                format!(
                    "fixture not supplied; {fig_detail} ({})",
                    if fig { "ok" } else { "wrong" }
                ),
            ))
        }
    };
    let f = GramFixture::parse(&text)?;
    let (r, d) = f.lattice.rank_det();
    let group = f.lattice.discriminant_group()?;
    let orbits = FixtureModule::new(&f)?.index2_orbits()?;
    let swapped = orbits.len() == 2 && orbits[0].1 == 1 && orbits[1].1 == 0;
    let lam = r == 19
        && d.magnitude() == &24u32.into()
        && group == [2, 2, 6].map(BigInt::from)
        && swapped;
    Ok(outcome(
        fig && lam,
        format!(
            "{fig_detail}; fixture: rank {r}, det {d}, group {group:?}, index-2 {:?}",
            orbits.iter().map(|o| o.1).collect::<Vec<_>>()
        ),
    ))
}

fn c4() -> Result<Outcome> {
    let f = GramFixture::parse(fixtures::FIBRATION_GENERATORS)?;
    let h = FixtureModule::new(&f)?.module.c2_cohomology()?;
    let pass =
        h.h0_rank == 18 && h.h1.is_trivial() && h.h2.two_rank() == Some(17) && h.h2.free_rank == 0;
    Ok(outcome(
        pass,
        format!(
            "(Z^{}, {}, {}); Br1/Br0 = H1 = {}",
            h.h0_rank, h.h1, h.h2, h.h1
        ),
    ))
}

type Table = Vec<(String, Kodaira)>;

fn table<F: k3arith::factor::Factoring>(e: &ts::EllipticSurface<F>) -> Result<(Table, u32)> {
    let t = e.bad_fibres()?;
    let r: &PolyRing<F> = &e.ring;
    let rows = t
        .bad
        .iter()
        .filter(|b| b.data.kodaira != Kodaira::I0)
        .map(|b| {
            let p = match &b.place {
                Place::Infinity => "inf".to_string(),
                Place::Finite(pi) => r.render(pi.as_slice(), "t"),
            };
            (p, b.data.kodaira)
        })
        .collect();
    Ok((rows, t.euler_sum()))
}

fn has(t: &Table, place: &str, k: Kodaira) -> bool {
    t.iter().any(|(p, x)| p == place && *x == k)
}

fn c5() -> Result<Outcome> {
    let t = Instant::now();
    let (t1, s1) = table(&ts::fibration_one(Rationals)?)?;
    let (t2, s2) = table(&ts::fibration_two(Rationals)?)?;
    let e3 = ts::fibration_three().jacobian(2)?;
    let (t3, s3) = table(&e3)?;
    let quartic3 = e3.ring.render(&ts::fibration_three_i1_locus(), "t");
    let one = has(&t1, "t", Kodaira::I(6))
        && has(&t1, "inf", Kodaira::I(6))
        && has(&t1, "t - 1", Kodaira::I0Star)
        && has(&t1, "t + 1", Kodaira::I(2))
        && has(&t1, "t^4 + 8*t^3 - 2*t^2 + 8*t + 1", Kodaira::I(1))
        && t1.len() == 5;
    let two = has(&t2, "t", Kodaira::I(10))
        && has(&t2, "t - 1", Kodaira::I(4))
        && has(&t2, "t + 1", Kodaira::I(2))
        && has(&t2, "inf", Kodaira::I(2))
        && has(&t2, "t^2 + t - 1", Kodaira::I(2))
        && has(&t2, "t^2 + 2/9*t + 1/9", Kodaira::I(1))
        && t2.len() == 6;
    let three = has(&t3, "t", Kodaira::IIStar)
        && has(&t3, "inf", Kodaira::IIStar)
        && has(&t3, &quartic3, Kodaira::I(1))
        && t3.len() == 3;
    let (fast, time) = within(t, Duration::from_secs(5));
    let sums = [s1, s2, s3];
    Ok(outcome(
        one && two && three && sums == [24; 3] && fast,
        format!("tables {one}/{two}/{three}, euler sums {sums:?}, {time}"),
    ))
}

fn c6() -> Result<Outcome> {
    let e = ts::fibration_two(Rationals)?;
    let t = e.bad_fibres()?;
    let h = e.height(Some(&ts::section_p3(&Rationals)), &t)?.height;
    let ht = e
        .height(Some(&ts::section_two_torsion(&Rationals)), &t)?
        .height;
    let disc_triv = t.trivial_lattice_disc();
    let disc = ts::shioda_tate_disc(1, disc_triv, &h, 2)?;
    let two = ts::torsion_two_divisibility(&e)?;
    let (grid_min, step) = ts::height_grid(&t.types(), e.chi);
    let rest = h == rat(3, 20)
        && ht == rat(0, 1)
        && disc_triv == -640
        && disc == rat(24, 1)
        && two.divisible == Some(false);
    // the generation argument: 3/(20 m²) falls below the grid minimum for m ≥ 2
    let argument = rat(3, 80) < grid_min;
    Ok(outcome(
        rest && grid_min == rat(1, 20),
        format!(
            "<P3,P3> {h}, <T,T> {ht}, disc Triv {disc_triv}, disc NS {disc}, (0,0) in 2E: {:?}; grid minimum {grid_min} (stated 1/20, resolution {step}); 3/80 below minimum: {argument}",
            two.divisible
        ),
    ))
}

const PAPER_PRIMES: [u64; 15] = [
    13, 29, 41, 113, 337, 839, 853, 881, 953, 1511, 1709, 1889, 2351, 3037, 3389,
];

fn c7() -> Result<Outcome> {
    let t = Instant::now();
    let r = ss_scan::scan(&ScanConfig::j_poly(7, 3500)?)?;
    let (fast, time) = within(t, Duration::from_secs(300));
    Ok(outcome(
        r.supersingular == PAPER_PRIMES && fast,
        format!(
            "{} primes tested, found {:?}, ramified {:?}, {time}",
            r.tested, r.supersingular, r.ramified
        ),
    ))
}

fn c8() -> Result<Outcome> {
    let m = si_verify::verify_fixture_point()?;
    let j = si_verify::j_report()?;
    Ok(outcome(
        m.failing_equations.is_empty()
            && j.j_ab_matches_e1
            && j.j_cd_matches_e2
            && j.min_poly_matches,
        format!(
            "failing equations {:?}, j(E(a,b)) = j(E1): {}, j(E(c,d)) = j(E2): {}, min poly {}",
            m.failing_equations,
            j.j_ab_matches_e1,
            j.j_cd_matches_e2,
            j.min_poly.join(" ")
        ),
    ))
}

fn c9() -> Result<Outcome> {
    let checks = si_verify::verify_isogeny(&[31, 41, 71, 79], 50)?;
    let sym = si_verify::phi().verify_symbolic()?;
    let ok = checks
        .iter()
        .filter(|(_, c)| c.ok && c.samples >= 50)
        .count();
    Ok(outcome(
        ok >= 3 && sym.kernel_ok == Some(true),
        format!(
            "{ok} primes x 50 points, kernel annihilates denominator: {:?}",
            sym.kernel_ok
        ),
    ))
}

fn c10a() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut mismatches = 0;
    for _ in 0..200 {
        let s = common::random_set(&mut rng);
        let fast: BTreeSet<_> = kodaira::find_fibres(&s, 16)
            .into_iter()
            .map(|f| f.components)
            .collect();
        if fast != kodaira::brute_force_fibres(&s, 6) {
            mismatches += 1;
        }
    }
    let kinds = |text: &str| -> Result<Vec<FibreType>> {
        let s = CurveSet::new(&GramFixture::parse(text)?.lattice)?;
        let mut k: Vec<FibreType> = kodaira::find_fibres(&s, 16)
            .iter()
            .map(|f| f.kind)
            .collect();
        k.sort();
        Ok(k)
    };
    let a = kinds(fixtures::FIBRES_A)?;
    let b = kinds(fixtures::FIBRES_B)?;
    let c = kinds(fixtures::FIBRES_C)?;
    let found = a == [FibreType::I(6), FibreType::I(6), FibreType::D(4)]
        && b == [
            FibreType::I(2),
            FibreType::I(2),
            FibreType::I(2),
            FibreType::I(10),
        ]
        && c == [FibreType::E8, FibreType::E8];
    Ok(outcome(
        mismatches == 0 && found,
        format!("oracle mismatches {mismatches}/200; configurations {a:?} {b:?} {c:?}"),
    ))
}

fn c10b() -> Result<Outcome> {
    let dir = fixture_dir();
    let Ok(text) = fixtures::load(fixtures::CURVES34, dir.as_deref()) else {
        return Ok(outcome(false, "fixture not supplied"));
    };
    let t = Instant::now();
    let f = GramFixture::parse(&text)?;
    let s = CurveSet::new(&f.lattice)?;
    let fibres = kodaira::find_fibres(&s, 34);
    let fibrations = kodaira::group_fibrations(&fibres, &s)?;
    let group = kodaira::permutation_group(&s, &kodaira::generators_from_fixture(&s, &f)?)?;
    let c = kodaira::census(&s, &fibres, &fibrations, &group);
    let (fast, time) = within(t, Duration::from_secs(600));
    let got = [
        c.fibres,
        c.fibrations,
        c.with_section_in_set,
        c.orbits,
        c.orbits_with_section,
        c.orbits_with_section_in_set,
    ];
    Ok(outcome(
        got == [105_856, 104_600, 86_416, 29_111, 27_807, 24_270] && fast,
        format!(
            "fibres, fibrations, with section in set, orbits: {got:?}; |group| {}; {time}",
            group.len()
        ),
    ))
}

fn main() {
    let criteria: [(&str, &str, fn() -> Result<Outcome>); 11] = [
        ("1", "van Luijk bound", c1),
        ("2", "point counts agree", c2),
        ("3", "lattice suite", c3),
        ("4", "Galois cohomology", c4),
        ("5", "bad-fibre tables", c5),
        ("6", "Mordell-Weil suite", c6),
        ("7", "supersingular sieve", c7),
        ("8", "Kummer system and j", c8),
        ("9", "3-isogeny", c9),
        ("10a", "Kodaira search oracle", c10a),
        ("10b", "Kodaira census on 34 curves", c10b),
    ];
    let mut unexpected = vec![];
    for (id, name, f) in criteria {
        let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        let known = KNOWN.iter().find(|(k, _)| *k == id);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = match (o.pass, known) {
            (false, Some((_, why))) => format!(" [expected: {why}]"),
            _ => String::new(),
        };
        println!("{tag} {id:>3} {name}: {}{note}", o.detail);
        if !o.pass && known.is_none() {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
