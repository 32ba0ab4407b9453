//! Scripted reproduction of every documented example, run by the
//! `paper-suite` command.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::algebra::{
    parse_poly, resultant, root_bound, roots_numeric, BiPoly, BigComplex, ExactComplex, Poly, Ring, UniPoly, Var,
    VarPair,
};
use crate::blaschke::{dagger, factor_unimodular, is_circle_preserving, ps_bound_check, unimodular_locus, PsOutcome};
use crate::curve::{complexify, preset_curve, realify, singular_points, Preset, RealCurve, SchwarzForm};
use crate::error::Result;
use crate::puiseux::{
    branch_points, branches_at_infinity, classify, condition_a_holds, AsymptoticTag, Limit, DEFAULT_ORDER,
};
use crate::ratmap::{compose, eval_map, image_curve, make_map, maps_into, MapValue, RationalMap};
use crate::verify::{
    continue_schwarz, verify_involution, verify_reflection_identity, ContinuationPath, MapExpr, VerifyConfig,
};

/// Outcome of one scripted example.
#[derive(Clone, Debug)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(usize) -> Result<(bool, String)>;

/// Samples per numeric identity check in the suite.
const SUITE_SAMPLES: usize = 40;

fn curve(t: &str) -> Result<RealCurve> {
    RealCurve::parse(t)
}

fn qform(t: &str) -> Result<SchwarzForm> {
    SchwarzForm::parse(t)
}

fn map(t: &str) -> Result<RationalMap> {
    RationalMap::parse(t)
}

fn pt(re: f64, im: f64, prec: usize) -> BigComplex {
    BigComplex::from_f64(re, im, prec)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn same(got: impl ToString, want: &str) -> (bool, String) {
    let g = got.to_string();
    (g == want, format!("got {g}"))
}

fn close(got: &BigComplex, want: &BigComplex, tol: f64) -> (bool, String) {
    let d = got.dist_f64(want);
    (d <= tol, format!("got {}, error {d:.1e}", crate::cli::format_complex(got)))
}

fn checks() -> Vec<(&'static str, Check)> {
    vec![
        ("parse z*w-1", |_| {
            let p = parse_poly("z*w-1", VarPair::ZW)?;
            let want = BiPoly::from_int_terms(&[((1, 1), 1), ((0, 0), -1)], VarPair::ZW);
            Ok((p == want, format!("got {p}")))
        }),
        ("resultant Res_w(zw-1, w^2-v)", |_| {
            // w is the main variable, v the middle one, z the innermost
            let z = UniPoly::x();
            let one = UniPoly::one_poly();
            let c = |p: UniPoly| Poly::constant(p);
            let a: Poly<Poly<UniPoly>> = Poly::from_coeffs(vec![c(Ring::neg(&one)), c(z.clone())]);
            let v: Poly<UniPoly> = Poly::from_coeffs(vec![UniPoly::zero(), one.clone()]);
            let b: Poly<Poly<UniPoly>> = Poly::from_coeffs(vec![Ring::neg(&v), Poly::zero(), c(one.clone())]);
            let r = resultant(&a, &b);
            let want: Poly<UniPoly> = Poly::from_coeffs(vec![one, Ring::neg(&z.pow(2))]);
            let ok = r == want || r == Ring::neg(&want);
            Ok((ok, format!("got {} terms in v", r.coeffs().len())))
        }),
        ("gcd(z^3-z, z^2-1)", |_| {
            let g = UniPoly::from_ints(&[0, -1, 0, 1]).gcd_monic(&UniPoly::from_ints(&[-1, 0, 1]));
            Ok(same(g.to_string_var("z"), "z^2 - 1"))
        }),
        ("squarefree w^2(w-z)", |_| {
            let s = parse_poly("w^2*(w-z)", VarPair::ZW)?.squarefree_part(Var::Second)?;
            Ok((s.equals_up_to_scalar(&parse_poly("w*(w-z)", VarPair::ZW)?), format!("got {s}")))
        }),
        ("root bound z^2-1", |_| {
            let b = root_bound(&UniPoly::from_ints(&[-1, 0, 1]))?;
            let ok = &b * &b >= rat(2, 1) && b.to_f64().unwrap_or(f64::MAX) / 2f64.sqrt() - 1.0 < 2f64.powi(-53);
            Ok((ok, format!("got {}", b.to_f64().unwrap_or(f64::NAN))))
        }),
        ("root bound z^2+2z+1", |_| {
            let b = root_bound(&UniPoly::from_ints(&[1, 2, 1]))?;
            Ok((b == rat(4, 1), format!("got {b}")))
        }),
        ("roots (z-2)^2(z+3)", |prec| {
            let p = UniPoly::from_ints(&[12, -8, -1, 1]);
            let r = roots_numeric(&p, prec)?;
            let ok = r.len() == 2
                && r[0].1 == 1
                && r[1].1 == 2
                && (r[0].0.re_f64() + 3.0).abs() < 1e-25
                && (r[1].0.re_f64() - 2.0).abs() < 1e-25;
            Ok((ok, format!("{} distinct roots", r.len())))
        }),
        ("complexify y", |_| {
            let q = complexify(&curve("y")?)?;
            Ok((q.poly().equals_up_to_scalar(&parse_poly("z-w", VarPair::ZW)?), format!("got {q}")))
        }),
        ("complexify x^2+y^2-2x", |_| Ok(same(complexify(&curve("x^2+y^2-2*x")?)?, "z*w - z - w"))),
        ("realify zw-z-w", |_| {
            let c = realify(&qform("z*w-z-w")?)?;
            Ok((c == curve("x^2+y^2-2*x")?, format!("got {c}")))
        }),
        ("singular points of y^2-x^3", |prec| {
            let s = singular_points(&curve("y^2-x^3")?, prec)?;
            let ok = s.len() == 1 && s[0].x.abs_f64() < 1e-20 && s[0].y.abs_f64() < 1e-20 && s[0].real;
            Ok((ok, format!("{} points", s.len())))
        }),
        ("preset rose(1,2,1)", |_| {
            let r = preset_curve(&Preset::Rose { m: 1, a: rat(2, 1), b: rat(1, 1) })?;
            Ok((r == curve("(x^2+y^2)^2-2*(x^2+y^2)-(x^2-y^2)")?, format!("got {r}")))
        }),
        ("branch points of the ellipse", |prec| {
            let b = branch_points(&qform("3*w^2-10*z*w+3*z^2+16")?, prec)?;
            let s3 = 3f64.sqrt();
            let ok = b.len() == 2 && (b[0].re_f64() + s3).abs() < 1e-25 && (b[1].re_f64() - s3).abs() < 1e-25;
            Ok((ok, format!("{} points", b.len())))
        }),
        ("branch of zw-1", |prec| {
            let b = branches_at_infinity(&qform("z*w-1")?, DEFAULT_ORDER, prec)?;
            let ok = b.len() == 1 && b[0].m == 1 && b[0].leading_exponent() == Some(&rat(-1, 1));
            Ok((ok, format!("{} branches", b.len())))
        }),
        ("branch of zw-z-w", |prec| {
            let b = branches_at_infinity(&qform("z*w-z-w")?, DEFAULT_ORDER, prec)?;
            let ok = b.len() == 1
                && b[0].terms.len() == DEFAULT_ORDER
                && b[0].terms.iter().enumerate().all(|(k, (e, c))| {
                    *e == rat(-(k as i64), 1) && c.dist_f64(&BigComplex::one(prec)) < 1e-25
                });
            Ok((ok, format!("{} terms", b.first().map_or(0, |x| x.terms.len()))))
        }),
        ("ellipse branches 3z and z/3", |prec| {
            let b = branches_at_infinity(&qform("3*w^2-10*z*w+3*z^2+16")?, DEFAULT_ORDER, prec)?;
            let lead: Vec<f64> = b.iter().filter_map(|x| x.leading_coefficient()).map(|c| c.re_f64()).collect();
            let ok = b.len() == 2
                && b.iter().all(|x| x.m == 1 && x.leading_exponent() == Some(&rat(1, 1)))
                && (lead[0] - 1.0 / 3.0).abs() < 1e-25
                && (lead[1] - 3.0).abs() < 1e-25;
            Ok((ok, format!("leading {lead:?}")))
        }),
        ("rose(1,2,1) branch limit", |prec| {
            let s = complexify(&preset_curve(&Preset::Rose { m: 1, a: rat(2, 1), b: rat(1, 1) })?)?;
            let b = branches_at_infinity(&s, DEFAULT_ORDER, prec)?;
            let hit = b.iter().find(|x| x.leading_exponent().is_some_and(|e| *e == rat(0, 1)));
            let modulus = hit.and_then(|x| x.leading_coefficient()).map_or(f64::NAN, BigComplex::abs_f64);
            Ok(((modulus - 0.5f64.sqrt()).abs() < 1e-12, format!("limit modulus {modulus}")))
        }),
        ("classify unit circle", |prec| class_check("z*w-1", AsymptoticTag::DecayToZero, Some(0.0), prec)),
        ("classify circle(1,1)", |prec| class_check("z*w-z-w", AsymptoticTag::BoundedFiniteLimit, Some(1.0), prec)),
        ("classify ellipse", |prec| class_check("3*w^2-10*z*w+3*z^2+16", AsymptoticTag::LinearGrowth, None, prec)),
        ("condition (a): unit circle", |prec| {
            let (h, b) = condition_a_holds(&qform("z*w-1")?, DEFAULT_ORDER, prec)?;
            let lim = b.map(|x| classify(&x).limit);
            let ok = h && matches!(&lim, Some(Limit::Finite(c)) if c.abs_f64() < 1e-25);
            Ok((ok, format!("holds {h}")))
        }),
        ("condition (a): line y=0", |prec| {
            let (h, _) = condition_a_holds(&qform("z-w")?, DEFAULT_ORDER, prec)?;
            Ok((!h, format!("holds {h}")))
        }),
        ("condition (a): rose(1,2,1)", |prec| {
            let s = complexify(&preset_curve(&Preset::Rose { m: 1, a: rat(2, 1), b: rat(1, 1) })?)?;
            let (h, b) = condition_a_holds(&s, DEFAULT_ORDER, prec)?;
            let m = match b.map(|x| classify(&x).limit) {
                Some(Limit::Finite(c)) => c.abs_f64(),
                _ => f64::NAN,
            };
            Ok((h && (m - 0.5f64.sqrt()).abs() < 1e-12, format!("limit modulus {m}")))
        }),
        ("normalize Blaschke factor", |_| {
            let f = make_map(
                UniPoly::from_coeffs(vec![ExactComplex::from_frac(-1, 2), ExactComplex::one()]),
                UniPoly::from_coeffs(vec![ExactComplex::one(), ExactComplex::from_frac(-1, 2)]),
            )?;
            let ok = f == map("(z-1/2)/(1-z/2)")? && f.den().to_string_var("z") == "z - 2";
            Ok((ok, format!("got {f}")))
        }),
        ("eval (z-i)/(z+i) at 1", |prec| {
            let v = eval_map(&map("(z-i)/(z+i)")?, &BigComplex::one(prec))?;
            Ok(match v {
                MapValue::Finite(c) => close(&c, &pt(0.0, -1.0, prec), 1e-30),
                MapValue::Infinity => (false, "got infinity".into()),
            })
        }),
        ("compose inverse Blaschke pair", |_| {
            let h = compose(&map("(z-1/2)/(1-z/2)")?, &map("(z+1/2)/(1+z/2)")?);
            Ok(same(&h, "z"))
        }),
        ("image of unit circle under z^2", |_| image_check("z^2", "x^2+y^2-1", "x^2+y^2-1")),
        ("image of real line under (z-i)/(z+i)", |_| image_check("(z-i)/(z+i)", "y", "x^2+y^2-1")),
        ("image of unit circle under z+1/z", |_| image_check("z+1/z", "x^2+y^2-1", "y")),
        ("z^2 maps circle into circle", |_| {
            let c = curve("x^2+y^2-1")?;
            Ok(same(maps_into(&map("z^2")?, &c, &c)?, "true"))
        }),
        ("z+1/z maps circle into real line", |_| {
            Ok(same(maps_into(&map("z+1/z")?, &curve("x^2+y^2-1")?, &curve("y")?)?, "true"))
        }),
        ("dagger of Blaschke factor", |_| {
            let f = map("(z-1/2)/(1-z/2)")?;
            Ok((dagger(&f) == map("(1-z/2)/(z-1/2)")?, format!("got {}", dagger(&f))))
        }),
        ("Blaschke factor preserves circle", |_| Ok(same(is_circle_preserving(&map("(z-1/2)/(1-z/2)")?), "true"))),
        ("factor product of two Blaschke factors", |prec| {
            let f = factor_unimodular(&map("(z-1/2)*(z-1/3)/((1-z/2)*(1-z/3))")?, prec)?;
            let ok = f.zeros.len() == 2
                && f.inverse_factors.is_empty()
                && (f.zeros[0].0.re_f64() - 1.0 / 3.0).abs() < 1e-25
                && (f.zeros[1].0.re_f64() - 0.5).abs() < 1e-25
                && f.residual <= 1e-10
                && (f.unimodular_constant.abs_f64() - 1.0).abs() < 1e-25;
            Ok((ok, format!("residual {:.1e}", f.residual)))
        }),
        ("unimodular locus of z^2", |_| {
            let c = unimodular_locus(&map("z^2")?)?;
            Ok((c == curve("(x^2+y^2)^2-1")?, format!("got {c}")))
        }),
        ("PS bound (z, z^2)", |prec| {
            let o = ps_bound_check(&map("z")?, &map("z^2")?, prec)?;
            Ok((matches!(o, PsOutcome::SharedBlaschkeStructure { .. }), format!("{o:?}")))
        }),
        ("PS bound (z, z+1)", |prec| {
            let o = ps_bound_check(&map("z")?, &map("z+1")?, prec)?;
            let ok = matches!(o, PsOutcome::Count { count: 2, bound: 4, within_bound: true, .. });
            Ok((ok, format!("{o:?}")))
        }),
        ("continue zw-1 from 1 to 2", |prec| continuation("z*w-1", (1.0, 0.0), (2.0, 0.0), (0.5, 0.0), prec)),
        ("continue zw-z-w from 2 to 3", |prec| continuation("z*w-z-w", (2.0, 0.0), (3.0, 0.0), (1.5, 0.0), prec)),
        ("continue z-w from 1 to 5+i", |prec| continuation("z-w", (1.0, 0.0), (5.0, 1.0), (5.0, 1.0), prec)),
        ("involution: unit circle", |prec| involution("z*w-1", (1.0, 0.0), 1e-10, prec)),
        ("involution: circle(1,1)", |prec| involution("z*w-z-w", (2.0, 0.0), 1e-10, prec)),
        ("involution: ellipse(2,1)", |prec| involution("3*w^2-10*z*w+3*z^2+16", (2.0, 0.0), 1e-9, prec)),
        ("reflection: exp(z+1/z), circle to line", |prec| {
            reflection("exp(z+1/z)", "x^2+y^2-1", "y", (1.0, 0.0), 1e-9, prec)
        }),
        ("reflection: exp(-iz-i/z), circle to circle", |prec| {
            reflection("exp(-i*z-i/z)", "x^2+y^2-1", "x^2+y^2-1", (1.0, 0.0), 1e-9, prec)
        }),
        ("reflection: z+1/z, circle to line", |prec| reflection("z+1/z", "x^2+y^2-1", "y", (0.0, 1.0), 1e-10, prec)),
        ("cli complexify", |_| cli_check(&["complexify", "--curve", "x^2+y^2-1"], "z*w - 1")),
        ("cli condition-a", |_| cli_check(&["condition-a", "--curve", "y"], "false: single branch w = z")),
        ("cli blaschke-check", |_| cli_check(&["blaschke-check", "--map", "(z-1/2)/(1-z/2)"], "true")),
    ]
}

fn class_check(q: &str, tag: AsymptoticTag, limit: Option<f64>, prec: usize) -> Result<(bool, String)> {
    let b = branches_at_infinity(&qform(q)?, DEFAULT_ORDER, prec)?;
    let classes: Vec<_> = b.iter().map(classify).collect();
    let ok = classes.iter().any(|c| {
        c.tag == tag
            && match (limit, &c.limit) {
                (Some(v), Limit::Finite(l)) => l.dist_f64(&pt(v, 0.0, prec)) < 1e-25,
                (None, _) => true,
                _ => false,
            }
    });
    let tags: Vec<_> = classes.iter().map(|c| c.tag.as_str()).collect();
    Ok((ok, format!("got {tags:?}")))
}

fn image_check(f: &str, c: &str, want: &str) -> Result<(bool, String)> {
    let img = image_curve(&map(f)?, &curve(c)?)?;
    Ok((img == curve(want)?, format!("got {img}")))
}

fn continuation(q: &str, a: (f64, f64), b: (f64, f64), want: (f64, f64), prec: usize) -> Result<(bool, String)> {
    let path = ContinuationPath::new(pt(a.0, a.1, prec), pt(b.0, b.1, prec));
    let w = continue_schwarz(&qform(q)?, &path, prec)?;
    Ok(close(&w, &pt(want.0, want.1, prec), 1e-25))
}

fn involution(q: &str, base: (f64, f64), tol: f64, prec: usize) -> Result<(bool, String)> {
    let cfg = VerifyConfig { precision: prec, ..VerifyConfig::default() };
    let r = verify_involution(&qform(q)?, &pt(base.0, base.1, prec), SUITE_SAMPLES, tol, &cfg)?;
    Ok((r.passed, format!("max residual {:.1e}", r.max_residual)))
}

fn reflection(f: &str, a: &str, b: &str, base: (f64, f64), tol: f64, prec: usize) -> Result<(bool, String)> {
    let cfg = VerifyConfig { precision: prec, ..VerifyConfig::default() };
    let r = verify_reflection_identity(
        &MapExpr::parse(f)?,
        &curve(a)?,
        &curve(b)?,
        &pt(base.0, base.1, prec),
        SUITE_SAMPLES,
        tol,
        &cfg,
    )?;
    Ok((r.passed, format!("max residual {:.1e}", r.max_residual)))
}

fn cli_check(args: &[&str], want: &str) -> Result<(bool, String)> {
    let o = crate::cli::run(std::iter::once("schwarzfn").chain(args.iter().copied()));
    Ok((o.code == 0 && o.stdout.trim() == want, format!("got `{}`", o.stdout.trim())))
}

/// Runs every scripted example at the given precision. Checks are
/// independent and run on scoped threads.
pub fn run_paper_suite(prec: usize) -> Vec<SuiteCheck> {
    let list = checks();
    std::thread::scope(|s| {
        let handles: Vec<_> = list
            .iter()
            .map(|(name, check)| {
                let check = *check;
                let name = *name;
                s.spawn(move || match check(prec) {
                    Ok((passed, detail)) => SuiteCheck { name, passed, detail },
                    Err(e) => SuiteCheck { name, passed: false, detail: format!("error: {e}") },
                })
            })
            .collect();
        handles
            .into_iter()
            .zip(&list)
            .map(|(h, (name, _))| {
                h.join().unwrap_or_else(|_| SuiteCheck { name, passed: false, detail: "panicked".into() })
            })
            .collect()
    })
}
