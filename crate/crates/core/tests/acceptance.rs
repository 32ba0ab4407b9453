//! Acceptance criteria, run sequentially so that each timing is its own.
//! Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use schwarzfn::algebra::{root_bound, roots_numeric, BigComplex, ExactComplex, UniPoly};
use schwarzfn::blaschke::{factor_unimodular, is_circle_preserving, ps_bound_check, PsOutcome};
use schwarzfn::curve::{complexify, preset_curve, realify, Preset, RealCurve};
use schwarzfn::puiseux::{branches_at_infinity, classify, condition_a_holds, AsymptoticTag, Limit};
use schwarzfn::ratmap::{image_curve, maps_into, RationalMap};
use schwarzfn::verify::{verify_involution, verify_reflection_identity, MapExpr, VerifyConfig};

const PREC: usize = 128;

/// Outcome of one criterion: whether every check held, and what was seen.
struct Verdict {
    passed: bool,
    notes: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Self { passed: true, notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, note: impl Into<String>) {
        let note = note.into();
        if !ok {
            self.passed = false;
            self.notes.push(format!("FAILED {note}"));
        } else {
            self.notes.push(note);
        }
    }
}

type Criterion = fn() -> Verdict;

fn criterion_1() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = StdRng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let z0 = gaussian(rng.gen_range(-9..=9), rng.gen_range(-9..=9), rng.gen_range(1..=4));
        let r = rat(rng.gen_range(1..=12), rng.gen_range(1..=4));
        let c = preset_curve(&Preset::Circle { z0: z0.clone(), r: r.clone() }).unwrap();
        let b = branches_at_infinity(&complexify(&c).unwrap(), 6, PREC).unwrap();
        if b.len() != 1 {
            v.check(false, format!("circle {z0} r={r}: {} branches", b.len()));
            continue;
        }
        // z̄0 + r²/(z − z0) = z̄0 + Σ_{k≥1} r² z0^{k−1} z^{−k}
        let r2 = ExactComplex::real(&r * &r);
        for k in 0..6i64 {
            let want = if k == 0 { z0.conj() } else { &r2 * &z0.pow(k as u32 - 1) };
            let got = b[0].coefficient(&rat(-k, 1)).cloned().unwrap_or_else(|| BigComplex::zero(PREC));
            worst = worst.max(got.dist_f64(&BigComplex::from_exact(&want, PREC)));
        }
    }
    v.check(worst <= 1e-10, format!("20 circles, worst coefficient error {worst:.1e} (tol 1e-10)"));
    v
}

fn criterion_2() -> Verdict {
    let mut v = Verdict::new();
    let single = |q: RealCurve| {
        let b = branches_at_infinity(&complexify(&q).unwrap(), 6, PREC).unwrap();
        b.into_iter().map(|x| (classify(&x), x)).collect::<Vec<_>>()
    };
    let unit = single(curve("x^2+y^2-1"));
    let ok = unit.len() == 1
        && unit[0].0.tag == AsymptoticTag::DecayToZero
        && matches!(&unit[0].0.limit, Limit::Finite(c) if c.abs_f64() <= 1e-10);
    v.check(ok, "unit circle: DECAY_TO_ZERO, limit 0");
    let z0 = gaussian(3, -2, 2);
    let off = single(preset_curve(&Preset::Circle { z0: z0.clone(), r: rat(1, 1) }).unwrap());
    let want = BigComplex::from_exact(&z0.conj(), PREC);
    let ok = off.len() == 1
        && off[0].0.tag == AsymptoticTag::BoundedFiniteLimit
        && matches!(&off[0].0.limit, Limit::Finite(c) if c.dist_f64(&want) <= 1e-10);
    v.check(ok, format!("circle({z0}, 1): BOUNDED_FINITE_LIMIT, limit {}", z0.conj()));
    let ell = single(preset_curve(&Preset::Ellipse { a: rat(2, 1), b: rat(1, 1) }).unwrap());
    let mut lead: Vec<f64> = ell.iter().filter_map(|(_, b)| b.leading_coefficient().map(|c| c.re_f64())).collect();
    lead.sort_by(f64::total_cmp);
    let ok = ell.len() == 2
        && ell.iter().all(|(c, _)| c.tag == AsymptoticTag::LinearGrowth)
        && (lead[0] - 1.0 / 3.0).abs() <= 1e-10
        && (lead[1] - 3.0).abs() <= 1e-10;
    v.check(ok, format!("ellipse(2,1): LINEAR_GROWTH, leading {lead:?}"));
    v
}

fn criterion_3() -> Verdict {
    let mut v = Verdict::new();
    let (a, b) = (2.0f64, 1.0f64);
    let rose = complexify(&preset_curve(&Preset::Rose { m: 1, a: rat(2, 1), b: rat(1, 1) }).unwrap()).unwrap();
    let (holds, branch) = condition_a_holds(&rose, 6, PREC).unwrap();
    let branch = branch.expect("rose satisfies condition (a)");
    let limit = match classify(&branch).limit {
        Limit::Finite(c) => c.abs_f64(),
        Limit::Infinity => f64::INFINITY,
    };
    let z = 1e6;
    let closed = z * (a + (a * a - b * b + 2.0 * b * z * z).sqrt()) / (2.0 * z * z - b);
    let gap = (limit - closed.abs()).abs();
    v.check(holds && gap <= 1e-6, format!("rose(1,2,1): |limit| {limit:.12}, |S(1e6)| {closed:.12}, gap {gap:.7e} (tol 1e-6)"));
    // the truncated branch against whichever sheet of the closed form it follows
    let at = branch.eval(&BigComplex::from_f64(z, 0.0, PREC)).re_f64();
    let other = z * (a - (a * a - b * b + 2.0 * b * z * z).sqrt()) / (2.0 * z * z - b);
    let sheet = (at - closed).abs().min((at - other).abs());
    v.notes.push(format!("diagnostic: branch at 1e6 is {at:.12}, nearest closed-form sheet within {sheet:.1e}"));
    let (line, _) = condition_a_holds(&complexify(&curve("y")).unwrap(), 6, PREC).unwrap();
    v.check(!line, "line y=0: condition (a) false");
    v
}

fn criterion_4() -> Verdict {
    let mut v = Verdict::new();
    let unit = curve("x^2+y^2-1");
    v.check(maps_into(&map("z^2"), &unit, &unit).unwrap(), "z^2: S1 -> S1 true");
    v.check(!maps_into(&map("z+2"), &unit, &unit).unwrap(), "z+2: S1 -> S1 false");
    v.check(maps_into(&map("z+1/z"), &unit, &curve("y")).unwrap(), "z+1/z: S1 -> R true");
    let mut rng = StdRng::seed_from_u64(4);
    let shapes = corpus_shapes();
    let mut consistent = 0;
    for k in 0..20 {
        let f = random_map(&mut rng, 3);
        let c = shapes[k % shapes.len()].curve();
        match image_curve(&f, &c).and_then(|img| maps_into(&f, &c, &img)) {
            Ok(true) => consistent += 1,
            other => v.check(false, format!("{f} on {c}: {other:?}")),
        }
    }
    v.check(consistent == 20, format!("image-curve consistency {consistent}/20"));
    v
}

fn criterion_5() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = StdRng::seed_from_u64(5);
    let (mut exact, mut worst) = (0, 0.0f64);
    for _ in 0..50 {
        let lambda = unit_point(rng.gen_range(0..UNIT_POINTS.len()));
        let zeros: Vec<ExactComplex> = (0..rng.gen_range(1..=3)).map(|_| disk_point(&mut rng)).collect();
        let poles: Vec<ExactComplex> = (0..rng.gen_range(0..=2)).map(|_| disk_point(&mut rng)).collect();
        let f = blaschke_quotient(&lambda, &zeros, &poles);
        if f.is_constant() {
            v.check(false, format!("degenerate draw {f}"));
            continue;
        }
        exact += is_circle_preserving(&f) as usize;
        match factor_unimodular(&f, PREC) {
            Ok(fac) => worst = worst.max(fac.residual),
            Err(e) => v.check(false, format!("{f}: {e}")),
        }
    }
    v.check(exact == 50, format!("{exact}/50 quotients pass the exact test"));
    v.check(worst <= 1e-9, format!("worst reconstruction residual {worst:.1e} on 1000 samples (tol 1e-9)"));
    let mut rejected = 0;
    let mut drawn = 0;
    while drawn < 50 {
        let f = random_map(&mut rng, 3);
        if f.degree() == 0 {
            continue;
        }
        drawn += 1;
        rejected += !is_circle_preserving(&f) as usize;
    }
    v.check(rejected == 50, format!("{rejected}/50 random maps fail the exact test"));
    v
}

fn criterion_6() -> Verdict {
    let mut v = Verdict::new();
    let cfg = VerifyConfig::default();
    let unit = curve("x^2+y^2-1");
    let axis = curve("y");
    let c = |x: f64, y: f64| BigComplex::from_f64(x, y, PREC);
    let run = |f: &str, b: &RealCurve, base: BigComplex| {
        verify_reflection_identity(&MapExpr::parse(f).unwrap(), &unit, b, &base, 200, 1e-9, &cfg)
    };
    for (f, b, name, base) in [
        ("exp(z+1/z)", &axis, "R", c(1.0, 0.0)),
        ("exp(-i*z-i/z)", &unit, "S1", c(1.0, 0.0)),
        ("z+1/z", &axis, "R", c(0.0, 1.0)),
    ] {
        match run(f, b, base) {
            Ok(r) => v.check(r.passed && r.samples == 200, format!("{f}: S1 -> {name}, max residual {:.1e}", r.max_residual)),
            Err(e) => v.check(false, format!("{f}: {e}")),
        }
    }
    let th = std::f64::consts::FRAC_PI_6;
    match run("z^2", &curve("(x-1)^2+y^2-1"), c(th.cos(), th.sin())) {
        Ok(r) => v.check(!r.passed && r.max_residual > 1e-3, format!("z^2 into circle(1,1): residual {:.2e}", r.max_residual)),
        Err(e) => v.check(false, format!("wrong-target control: {e}")),
    }
    v
}

fn criterion_7() -> Verdict {
    let mut v = Verdict::new();
    let cfg = VerifyConfig::default();
    let c = |x: f64, y: f64| BigComplex::from_f64(x, y, PREC);
    let cases = [
        ("circle", Preset::Circle { z0: ExactComplex::zero(), r: rat(1, 1) }, c(0.6, 0.8)),
        ("off-center circle", Preset::Circle { z0: gaussian(1, 1, 1), r: rat(2, 1) }, c(3.0, 1.0)),
        ("line", Preset::Line { z1: gaussian(0, 1, 1), z2: gaussian(2, 0, 1) }, c(1.0, 0.5)),
        ("ellipse(2,1)", Preset::Ellipse { a: rat(2, 1), b: rat(1, 1) }, c(2.0, 0.0)),
        ("rose(1,2,1)", Preset::Rose { m: 1, a: rat(2, 1), b: rat(1, 1) }, c(0.0, 1.0)),
    ];
    for (name, p, base) in cases {
        let s = complexify(&preset_curve(&p).unwrap()).unwrap();
        match verify_involution(&s, &base, 200, 1e-9, &cfg) {
            Ok(r) => v.check(r.passed, format!("{name}: max residual {:.1e}", r.max_residual)),
            Err(e) => v.check(false, format!("{name}: {e}")),
        }
    }
    v
}

fn criterion_8() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = StdRng::seed_from_u64(8);
    let mut violations = 0;
    let mut roots = 0;
    for _ in 0..200 {
        let deg = rng.gen_range(1..=8);
        let mut cs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-20..=20)).collect();
        if cs[deg] == 0 {
            cs[deg] = rng.gen_range(1..=20);
        }
        let p = UniPoly::from_ints(&cs);
        let bound = root_bound(&p).unwrap().to_f64().unwrap();
        for (r, _) in roots_numeric(&p, PREC).unwrap() {
            roots += 1;
            if r.abs_f64() > bound {
                violations += 1;
            }
        }
    }
    v.check(violations == 0, format!("{roots} roots of 200 polynomials, {violations} above the bound"));
    v
}

fn criterion_9() -> Verdict {
    let mut v = Verdict::new();
    let shared = ps_bound_check(&map("z"), &map("z^2"), PREC).unwrap();
    v.check(matches!(shared, PsOutcome::SharedBlaschkeStructure { .. }), "(z, z^2): SHARED_BLASCHKE_STRUCTURE");
    let pair = ps_bound_check(&map("z"), &map("z+1"), PREC).unwrap();
    let ok = matches!(pair, PsOutcome::Count { count: 2, bound: 4, within_bound: true, .. });
    v.check(ok, format!("(z, z+1): {pair:?}"));
    let mut rng = StdRng::seed_from_u64(9);
    let (mut counted, mut worst, mut skipped) = (0, 0.0f64, 0);
    while counted < 100 {
        let d1 = rng.gen_range(1..=4);
        let d2 = rng.gen_range(1..=4);
        let p1 = RationalMap::polynomial(random_unipoly(&mut rng, d1, 3));
        let p2 = RationalMap::polynomial(random_unipoly(&mut rng, d2, 3));
        if p1.is_constant() || p2.is_constant() {
            continue;
        }
        match ps_bound_check(&p1, &p2, PREC) {
            Ok(PsOutcome::Count { count, bound, .. }) => {
                counted += 1;
                worst = worst.max(count as f64 / bound as f64);
                if count > bound {
                    v.check(false, format!("{p1}, {p2}: {count} > {bound}"));
                }
            }
            Ok(PsOutcome::SharedBlaschkeStructure { .. }) => skipped += 1,
            Err(e) => {
                v.check(false, format!("{p1}, {p2}: {e}"));
                counted += 1;
            }
        }
    }
    v.check(true, format!("100 random pairs, largest count/bound {worst:.2}, {skipped} shared pairs skipped"));
    v
}

fn criterion_10() -> Verdict {
    let mut v = Verdict::new();
    let mut rng = StdRng::seed_from_u64(10);
    let mut ok = 0;
    for _ in 0..100 {
        let deg = rng.gen_range(1..=6);
        let p = random_real_poly(&mut rng, deg, 9);
        let want = RealCurve::new(p.squarefree_full()).unwrap();
        match complexify(&RealCurve::new(p.clone()).unwrap()).and_then(|q| realify(&q)) {
            Ok(back) if back == want => ok += 1,
            other => v.check(false, format!("{p}: {other:?}")),
        }
    }
    v.check(ok == 100, format!("{ok}/100 round trips exact"));
    v
}

const CRITERIA: [(&str, Criterion, u64); 10] = [
    ("circle closed form", criterion_1, 5),
    ("asymptotic trichotomy", criterion_2, 5),
    ("condition (a) on the rose and the line", criterion_3, 10),
    ("exact decision suite", criterion_4, 60),
    ("Blaschke suite", criterion_5, 60),
    ("reflection identity", criterion_6, 30),
    ("Schwarz involution", criterion_7, 30),
    ("root bound", criterion_8, 10),
    ("common unimodular points bound", criterion_9, 120),
    ("realify/complexify round trips", criterion_10, 10),
];

fn main() -> ExitCode {
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (k, (name, run, limit)) in CRITERIA.iter().enumerate() {
        let id = k + 1;
        if filter.as_deref().is_some_and(|f| f != id.to_string()) {
            continue;
        }
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let passed = verdict.passed && in_time;
        failed += !passed as usize;
        println!(
            "[{}] criterion {id:>2}: {name} ({:.2} s, limit {limit} s{})",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", OVER TIME" }
        );
        for n in &verdict.notes {
            println!("        {n}");
        }
    }
    println!("acceptance: {} of the selected criteria failed", failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
