use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use k3arith::error::{Error, Result};
use k3arith::factor::Factoring;
use k3arith::field::Rationals;
use k3arith::finite_field::{is_prime, kronecker_i64, ExtField};
use k3arith::fixtures;
use k3arith::kodaira::{self, CurveSet};
use k3arith::lattice::{hyperbolic_split, FixtureModule, GramFixture, Provenance};
use k3arith::report::{Report, Source};
use k3arith::si_verify;
use k3arith::ss_scan::{self, ScanConfig};
use k3arith::surface_count::{count_via_fibration, SurfaceFixture};
use k3arith::tate::Kodaira;
use k3arith::tate_surface::{self as ts, EllipticSurface, Place};
use k3arith::weil::{van_luijk, AlgebraicPart, FrobeniusSpectrum};
use serde_json::json;

const EXIT_USAGE: u8 = 2;
const EXIT_FIXTURE: u8 = 3;
const EXIT_ASSERT: u8 = 4;

#[derive(Parser)]
#[command(
    name = "k3arith",
    version,
    about = "Arithmetic of a double-sextic K3 surface"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Directory searched for fixtures before the built-in copies.
    #[arg(long, global = true, env = fixtures::FIXTURE_DIR_VAR)]
    fixture_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Fibration,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeOp {
    RankDet,
    DiscGroup,
    Radical,
    Index2,
    Cohomology,
    Split,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FibrationName {
    One,
    Two,
    Three,
}

#[derive(Subcommand)]
enum Cmd {
    /// Points on the smooth model over F_{p^n}.
    Count {
        #[arg(long, default_value = "drell-yan")]
        surface: String,
        #[arg(short, long)]
        p: u64,
        #[arg(short, long = "ext", default_value_t = 1)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Frobenius spectra and the Picard number bound.
    Weil {
        #[arg(long, default_value = "drell-yan")]
        surface: String,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Invariants of a Gram fixture.
    Lattice {
        #[arg(long)]
        fixture: String,
        #[arg(long, value_enum)]
        op: LatticeOp,
        /// Labels of the zero section and fibre class for `split`.
        #[arg(long, value_delimiter = ',', default_value = "O,F")]
        plane: Vec<String>,
    },
    /// Fibre configurations and fibrations supported on a curve set.
    Kodaira {
        #[arg(long)]
        fixture: String,
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        /// Count orbits under the group generated by the fixture's swaps.
        #[arg(long)]
        group: bool,
    },
    /// Bad fibres of the named fibrations.
    Tate {
        #[arg(long, value_enum)]
        fibration: Option<FibrationName>,
    },
    /// Heights of sections and the Shioda–Tate discriminant.
    Height,
    /// Supersingular-reduction sieve for the j-invariant polynomial.
    SsScan {
        #[arg(long, default_value_t = 7)]
        from: u64,
        #[arg(long, default_value_t = 3500)]
        to: u64,
        /// Scan [7, 104729].
        #[arg(long)]
        full: bool,
    },
    /// Shioda–Inose cross-checks and closed-form counts.
    SiVerify {
        /// Check the Kummer system, j-invariants and the isogeny.
        #[arg(long)]
        system: bool,
        #[arg(short, long = "prime")]
        p: Option<u64>,
        #[arg(short, long = "ext", default_value_t = 1)]
        n: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let mut out = Output::Report(Report::new());
    let status = match run(&cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let code = match e {
                Error::Domain(_) => EXIT_USAGE,
                Error::Fixture(_) => EXIT_FIXTURE,
                Error::Check(_) => EXIT_ASSERT,
            };
            if let Output::Report(r) = &mut out {
                let _ = r.push("error", json!({ "error": e.to_string(), "exit": code }));
            }
            eprintln!("error: {e}");
            code
        }
    };
    let ok = match &out {
        Output::Report(r) => r.ok(),
        Output::Text(_) => true,
    };
    let text = match (&out, cli.format) {
        (Output::Report(r), Format::Jsonl) => r.to_jsonl(),
        (Output::Report(r), Format::Csv) => r.to_csv(),
        (Output::Text(t), _) => t.clone(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if status != 0 {
        return ExitCode::from(status);
    }
    if !ok {
        return ExitCode::from(EXIT_ASSERT);
    }
    ExitCode::SUCCESS
}

enum Output {
    Report(Report),
    Text(String),
}

impl Output {
    fn report(&mut self) -> &mut Report {
        match self {
            Output::Report(r) => r,
            Output::Text(_) => unreachable!("text output has no records"),
        }
    }
}

fn load(cli: &Cli, name: &str) -> Result<String> {
    fixtures::load(name, cli.fixture_dir.as_deref())
}

fn surface(cli: &Cli, name: &str) -> Result<SurfaceFixture> {
    let file = if name == "drell-yan" {
        "drell_yan.json"
    } else {
        name
    };
    SurfaceFixture::from_json(&load(cli, file)?)
}

fn gram_fixture(cli: &Cli, name: &str, r: &mut Report) -> Result<GramFixture> {
    let text = load(cli, name).map_err(|e| match (name, e) {
        ("lambda24" | "s34", Error::Fixture(e)) => Error::Fixture(format!(
            "{e}; the {name} matrix is not shipped, set {} to a directory containing it",
            fixtures::FIXTURE_DIR_VAR
        )),
        (_, e) => e,
    })?;
    let f = GramFixture::parse(&text)?;
    r.source(Source::new(name, f.provenance.clone()));
    Ok(f)
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p <= 5 {
        return Err(Error::Domain(format!("{p} is a bad prime")));
    }
    Ok(())
}

fn field(p: u64, n: u32) -> Result<ExtField> {
    check_prime(p)?;
    if !(1..=2).contains(&n) {
        return Err(Error::Domain("extension degree must be 1 or 2".into()));
    }
    ExtField::new(p, n as usize)
}

fn run(cli: &Cli, out: &mut Output) -> Result<()> {
    match &cli.cmd {
        Cmd::Count {
            surface: s,
            p,
            n,
            method,
        } => {
            let k = field(*p, *n)?;
            let r = out.report();
            let fx = surface(cli, s)?;
            r.source(Source::new(s, Provenance::PaperText));
            let direct = match method {
                Method::Fibration => None,
                _ => Some(fx.sextic()?.count_smooth(&fx.profile(), &k)?.smooth),
            };
            let fib = match method {
                Method::Direct => None,
                _ if s != "drell-yan" => {
                    return Err(Error::Domain(
                        "fibration count needs the built-in surface".into(),
                    ))
                }
                _ => Some(count_via_fibration(&ts::fibration_two(Rationals)?, &k)?.total),
            };
            r.push(
                "count",
                json!({ "p": p, "n": n, "direct": direct, "fibration": fib }),
            )?;
            if let (Some(a), Some(b)) = (direct, fib) {
                r.check("direct-equals-fibration", a == b, format!("{a} vs {b}"))?;
            }
        }
        Cmd::Weil { surface: s, primes } => {
            let r = out.report();
            let fx = surface(cli, s)?;
            r.source(Source::new(s, Provenance::PaperText));
            let sx = fx.sextic()?;
            let mut spectra = vec![];
            for &p in primes {
                let n1 = sx.count_smooth(&fx.profile(), &field(p, 1)?)?.smooth;
                let n2 = sx.count_smooth(&fx.profile(), &field(p, 2)?)?.smooth;
                let sp = FrobeniusSpectrum::from_counts(p, n1, n2, AlgebraicPart::drell_yan(p)?)?;
                r.push(
                    "spectrum",
                    json!({ "n1": n1, "n2": n2, "spectrum": sp.report()? }),
                )?;
                spectra.push(sp);
            }
            if spectra.len() < 2 {
                return Err(Error::Domain("need at least two primes".into()));
            }
            let mut bound = 22;
            for i in 0..spectra.len() {
                for j in i + 1..spectra.len() {
                    bound = bound.min(van_luijk(&spectra[i], &spectra[j])?);
                }
            }
            r.push("picard-bound", json!({ "picard_bound": bound }))?;
        }
        Cmd::Lattice { fixture, op, plane } => {
            let r = out.report();
            let f = gram_fixture(cli, fixture, r)?;
            let l = &f.lattice;
            match op {
                LatticeOp::RankDet => {
                    let (rank, det) = l.rank_det();
                    r.push(
                        "rank-det",
                        json!({ "generators": l.dim(), "rank": rank, "det": det.to_string() }),
                    )?;
                }
                LatticeOp::DiscGroup => {
                    let d = l.discriminant_group()?;
                    let s: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                    r.push("disc-group", json!({ "disc_group": s.join(",") }))?;
                }
                LatticeOp::Radical => {
                    let rows: Vec<Vec<String>> = l
                        .kernel_relation()
                        .iter()
                        .map(|v| v.iter().map(|x| x.to_string()).collect())
                        .collect();
                    r.push("radical", json!({ "labels": l.labels, "relations": rows }))?;
                }
                LatticeOp::Index2 => {
                    let m = FixtureModule::new(&f)?;
                    let orbits = m.index2_orbits()?;
                    for (i, (c, j)) in orbits.iter().enumerate() {
                        let bits: String = c.iter().map(|b| char::from(b'0' + b)).collect();
                        r.push(
                            "index2-candidate",
                            json!({ "index": i, "class_mod_2": bits, "image": j }),
                        )?;
                    }
                    r.push("index2", json!({ "candidates": orbits.len() }))?;
                }
                LatticeOp::Cohomology => {
                    let h = FixtureModule::new(&f)?.module.c2_cohomology()?;
                    r.push(
                        "cohomology",
                        json!({ "h0": format!("Z^{}", h.h0_rank), "h1": h.h1.to_string(), "h2": h.h2.to_string() }),
                    )?;
                }
                LatticeOp::Split => {
                    if plane.len() != 2 {
                        return Err(Error::Domain("--plane takes two labels".into()));
                    }
                    let base = FixtureModule::new(&f)
                        .map(|m| m.lattice)
                        .unwrap_or_else(|_| l.clone());
                    let (split, parts) = hyperbolic_split(&base, &plane[0], &plane[1])?;
                    let orth = split.sub_lattice(&parts[0]).rank_det();
                    let hyp = split.sub_lattice(&parts[1]).rank_det();
                    r.push(
                        "split",
                        json!({
                            "orthogonal": { "rank": orth.0, "det": orth.1.to_string() },
                            "plane": { "rank": hyp.0, "det": hyp.1.to_string() },
                        }),
                    )?;
                    r.check(
                        "direct-sum",
                        split.direct_sum_split_check(&parts)?,
                        "off-block entries vanish",
                    )?;
                }
            }
        }
        Cmd::Kodaira {
            fixture,
            max_n,
            group,
        } => {
            let r = out.report();
            let f = gram_fixture(cli, fixture, r)?;
            let s = CurveSet::new(&f.lattice)?;
            let fibres = kodaira::find_fibres(&s, *max_n);
            let fibrations = kodaira::group_fibrations(&fibres, &s)?;
            let gens = if *group {
                kodaira::generators_from_fixture(&s, &f)?
            } else {
                vec![]
            };
            let g = kodaira::permutation_group(&s, &gens)?;
            for x in &fibres {
                r.push(
                    "fibre",
                    json!({ "type": x.kind.to_string(), "components": x.render(&s) }),
                )?;
            }
            r.push("census", kodaira::census(&s, &fibres, &fibrations, &g))?;
        }
        Cmd::Tate { fibration } => {
            let r = out.report();
            let which = match fibration {
                Some(f) => vec![*f],
                None => vec![FibrationName::One, FibrationName::Two, FibrationName::Three],
            };
            for w in which {
                let (name, rows, sum) = match w {
                    FibrationName::One => {
                        let (a, b) = fibre_rows(&ts::fibration_one(Rationals)?)?;
                        ("one", a, b)
                    }
                    FibrationName::Two => {
                        let (a, b) = fibre_rows(&ts::fibration_two(Rationals)?)?;
                        ("two", a, b)
                    }
                    FibrationName::Three => {
                        let (a, b) = fibre_rows(&ts::fibration_three().jacobian(2)?)?;
                        ("three", a, b)
                    }
                };
                for row in rows {
                    r.push("fibre", json!({ "fibration": name, "place": row.0, "type": row.1, "v_delta": row.2 }))?;
                }
                r.check(
                    &format!("euler-sum-{name}"),
                    sum == 24,
                    format!("sum v(disc) = {sum}"),
                )?;
            }
        }
        Cmd::Height => {
            let r = out.report();
            let e = ts::fibration_two(Rationals)?;
            let t = e.bad_fibres()?;
            let p3 = ts::section_p3(&Rationals);
            let tt = ts::section_two_torsion(&Rationals);
            let h = e.height(Some(&p3), &t)?;
            let ht = e.height(Some(&tt), &t)?;
            let disc = ts::shioda_tate_disc(1, t.trivial_lattice_disc(), &h.height, 2)?;
            let two = ts::torsion_two_divisibility(&e)?;
            let (grid_min, grid_step) = ts::height_grid(&t.types(), e.chi);
            r.push(
                "height",
                json!({
                    "height_p": h.height.to_string(),
                    "intersection_p_zero": h.intersection_with_zero,
                    "height_t": ht.height.to_string(),
                    "disc_trivial": t.trivial_lattice_disc(),
                    "disc_ns": disc.to_string(),
                    "torsion_odd_part": two.odd_part,
                    "torsion_two_divisible": two.divisible,
                    "grid_min": grid_min.to_string(),
                    "grid_step": grid_step.to_string(),
                }),
            )?;
            r.check(
                "torsion-height-zero",
                ht.height == k3arith::field::rat(0, 1),
                ht.height.to_string(),
            )?;
        }
        Cmd::SsScan { from, to, full } => {
            let (lo, hi) = if *full { (7, 104_729) } else { (*from, *to) };
            let cfg = ScanConfig::j_poly(lo, hi)?;
            let rep = ss_scan::scan(&cfg)?;
            match cli.format {
                Format::Csv => {
                    let mut text = format!(
                        "# k3arith {}\n# excluded: {:?}\n# ramified: {:?}\n",
                        k3arith::report::VERSION,
                        rep.excluded,
                        rep.ramified
                    );
                    for (a, b) in &rep.density_flags {
                        text += &format!("# density-flag: {a}-{b}\n");
                    }
                    text += &rep.to_csv();
                    *out = Output::Text(text);
                }
                Format::Jsonl => {
                    let r = out.report();
                    for row in &rep.rows {
                        r.push("prime", row)?;
                    }
                    r.push(
                        "scan",
                        json!({
                            "from": lo, "to": hi, "tested": rep.tested, "excluded": rep.excluded,
                            "ramified": rep.ramified, "supersingular": rep.supersingular,
                            "density_flags": rep.density_flags,
                        }),
                    )?;
                }
            }
        }
        Cmd::SiVerify { system, p, n } => {
            let r = out.report();
            r.source(Source::new("tower-constants", Provenance::PaperText));
            if *system {
                let m = si_verify::verify_fixture_point()?;
                r.push("kummer-system", &m)?;
                r.check(
                    "system-vanishes",
                    m.failing_equations.is_empty(),
                    format!("failing {:?}", m.failing_equations),
                )?;
                r.check(
                    "coefficients-match",
                    m.identities.iter().all(|&b| b),
                    format!("{:?}", m.identities),
                )?;
                for ((na, n2), res) in si_verify::conjugate_points() {
                    let tag = format!(
                        "alpha{}-sqrt2{}",
                        if na { "-" } else { "+" },
                        if n2 { "-" } else { "+" }
                    );
                    r.check(
                        &format!("conjugate-{tag}"),
                        res.all_zero(),
                        format!("failing {:?}", res.failing()),
                    )?;
                }
                let j = si_verify::j_report()?;
                r.push("j-invariant", &j)?;
                r.check("j-ab", j.j_ab_matches_e1, "")?;
                r.check("j-cd", j.j_cd_matches_e2, "")?;
                r.check("j-min-poly", j.min_poly_matches, j.min_poly.join(","))?;
                let sym = si_verify::phi().verify_symbolic()?;
                r.check(
                    "isogeny-symbolic",
                    sym.ok && sym.kernel_ok != Some(false),
                    format!("{sym:?}"),
                )?;
                for (q, c) in si_verify::verify_isogeny(&[31, 41, 71, 79], 50)? {
                    r.check(
                        &format!("isogeny-sampled-{q}"),
                        c.ok,
                        format!("{} samples", c.samples),
                    )?;
                }
            }
            if let Some(p) = p {
                let k = field(*p, *n)?;
                let fx = surface(cli, "drell-yan")?;
                let direct = fx.sextic()?.count_smooth(&fx.profile(), &k)?.smooth;
                let split = kronecker_i64(2, *p)? == 1 && kronecker_i64(5, *p)? == 1;
                let prediction = match (n, split) {
                    (1, true) => Some(si_verify::predict_counts(*p)?.count_p),
                    (1, false) => None,
                    _ => Some(si_verify::predict_count_p2(*p)?.1.to_string()),
                };
                let agree = prediction.as_ref().map(|x| *x == direct.to_string());
                r.push(
                    "si-count",
                    json!({ "p": p, "n": n, "split": split, "prediction": prediction, "direct": direct, "agree": agree }),
                )?;
                if let Some(a) = agree {
                    r.check(
                        "prediction-equals-count",
                        a,
                        format!("{prediction:?} vs {direct}"),
                    )?;
                }
                if split {
                    let tw = si_verify::verify_twist_relation(*p)?;
                    r.check(
                        "twist-by-kappa",
                        tw.holds,
                        format!("{:?} {:?} {:?}", tw.e1, tw.e256, tw.chi_kappa),
                    )?;
                }
            }
            if !*system && p.is_none() {
                return Err(Error::Domain("pass --system and/or -p".into()));
            }
        }
    }
    Ok(())
}

type FibreRow = (String, String, u32);

fn fibre_rows<F: Factoring>(e: &EllipticSurface<F>) -> Result<(Vec<FibreRow>, u32)> {
    let t = e.bad_fibres()?;
    let rows = t
        .bad
        .iter()
        .filter(|b| b.data.kodaira != Kodaira::I0)
        .map(|b| {
            let place = match &b.place {
                Place::Infinity => "inf".to_string(),
                Place::Finite(pi) => e.ring.render(pi.as_slice(), "t"),
            };
            (place, b.data.kodaira.to_string(), b.data.v_delta)
        })
        .collect();
    Ok((rows, t.euler_sum()))
}
