//! Acceptance gate: one PASS/FAIL line per criterion, then a summary.
//!
//! The process exits 0 either way so that later test binaries still run;
//! read the summary line for the verdict.

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::{Duration, Instant};

use fuchsian::repro;
use fuchsian_core::covolume::{
    area_jacobian, ball_covolume, covol, covol_hessian, verify_inequalities, InequalityName, SimpleClass,
};
use fuchsian_core::polyhedra::{approximate_ball, build, build_with, BuildOptions, FuchsianPolyhedron};
use fuchsian_core::solver::{solve_minkowski, SolverConfig};
use fuchsian_core::{FuchsianGroup, LorentzVector, NormalFamily, SupportVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn octagon() -> Arc<FuchsianGroup> {
    Arc::new(FuchsianGroup::octagon())
}

fn point(dir: [f64; 2], dist: f64) -> LorentzVector {
    LorentzVector::hyperboloid_point(&dir, dist).unwrap()
}

fn three_orbit_family() -> NormalFamily {
    NormalFamily::new(octagon(), vec![point([1.0, 0.0], 0.0), point([1.0, 0.35], 0.55), point([-0.3, 1.0], 0.8)])
        .unwrap()
}

fn random_support(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> SupportVector {
    SupportVector::new((0..n).map(|_| rng.random_range(lo..hi)).collect()).unwrap()
}

/// Twenty seeded polyhedra of the three-orbit octagon family.
fn random_polyhedra(seed: u64, count: usize) -> Vec<FuchsianPolyhedron> {
    let fam = three_orbit_family();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Ok(p) = build(&fam, &random_support(&mut rng, 3, 0.85, 1.15)) {
            out.push(p);
        }
    }
    out
}

fn rebuild(p: &FuchsianPolyhedron, h: &[f64]) -> FuchsianPolyhedron {
    build(&p.family, &SupportVector::new(h.to_vec()).unwrap()).unwrap()
}

fn simple_class() -> (SimpleClass, SupportVector) {
    let base = SupportVector::ones(3);
    let p = build(&three_orbit_family(), &base).unwrap();
    (SimpleClass::new(&p).unwrap(), base)
}

fn octagon_reproduction() -> Outcome {
    let r = match repro::run() {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("error: {e}")),
    };
    let area = r.row("S(K)");
    let ball = r.row("S(B)");
    let (a, b) = r.published_inequality;
    let fast = r.elapsed < Duration::from_secs(1);
    let pass = area.agrees() && ball.agrees() && a <= b && fast;
    outcome(
        pass,
        format!(
            "S(K) = {:.12} vs 8(13−9√2) = {:.12} (rel. err {:.3e}); S(B) = {:.12} vs 4π (rel. err {:.1e}); 13−9√2 = {a:.6} ≤ π/2 = {b:.6}; {:.0} ms",
            area.computed,
            area.published,
            area.relative_error(),
            ball.computed,
            ball.relative_error(),
            r.elapsed.as_secs_f64() * 1e3
        ),
    )
}

fn generator_anchor() -> Outcome {
    let g = octagon();
    let want = (2.0 + 2.0 * 2f64.sqrt()).acosh();
    let lengths: Vec<f64> = g.generators().iter().map(|s| s.translation_length().unwrap_or(f64::NAN)).collect();
    let worst = lengths.iter().map(|l| (l - want).abs()).fold(0.0, f64::max);
    outcome(
        worst <= 1e-12,
        format!(
            "translation lengths {:.12} (cosh = {:.10}) vs arccosh(2+2√2) = {want:.12}; max deviation {worst:.3e}",
            lengths[0],
            lengths[0].cosh()
        ),
    )
}

fn gradient_identity(polys: &[FuchsianPolyhedron]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst = 0.0f64;
    for p in polys {
        let h = p.support.values().to_vec();
        let x: Vec<f64> = (0..h.len()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let t = 1e-5;
        let at = |s: f64| covol(&rebuild(p, &h.iter().zip(&x).map(|(a, b)| a + s * b).collect::<Vec<_>>())).covol;
        let fd = (at(t) - at(-t)) / (2.0 * t);
        let want: f64 = x.iter().zip(p.areas()).map(|(a, b)| a * b).sum();
        worst = worst.max(rel_err(fd, want));
    }
    outcome(worst <= 1e-5, format!("{} polyhedra, max rel. error {worst:.3e}", polys.len()))
}

fn hessian_certificate(polys: &[FuchsianPolyhedron]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let (mut asym, mut margin, mut fd_err, mut min_eig) = (0.0f64, f64::INFINITY, 0.0f64, f64::INFINITY);
    let mut certified = true;
    for p in polys {
        let j = area_jacobian(p);
        let c = j.certificate();
        certified &= c.holds() && c.cholesky && c.min_diagonal > 0.0 && c.dominance_margin > 0.0;
        asym = asym.max(c.asymmetry);
        margin = margin.min(c.dominance_margin);
        min_eig = min_eig.min(c.min_eigenvalue);

        let h = p.support.values().to_vec();
        let x: Vec<f64> = (0..h.len()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let t = 1e-3;
        let at = |s: f64| covol(&rebuild(p, &h.iter().zip(&x).map(|(a, b)| a + s * b).collect::<Vec<_>>())).covol;
        let second = (at(t) - 2.0 * at(0.0) + at(-t)) / (t * t);
        fd_err = fd_err.max(rel_err(second, covol_hessian(p).quadratic(&x, &x)));
    }
    outcome(
        certified && asym <= 1e-8 && fd_err <= 1e-4,
        format!(
            "asymmetry {asym:.1e}, min dominance margin {margin:.4}, min eigenvalue {min_eig:.4}, finite-difference Hessian rel. error {fd_err:.2e}"
        ),
    )
}

fn solver_round_trip() -> Outcome {
    let fam = three_orbit_family();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let cfg = SolverConfig::default();
    let (mut solved, mut worst, mut max_iter) = (0usize, 0.0f64, 0usize);
    let mut failures = Vec::new();
    while solved < 20 {
        let h_star = random_support(&mut rng, 3, 0.8, 1.25);
        let Ok(p) = build(&fam, &h_star) else { continue };
        match solve_minkowski(&fam, &p.areas(), &cfg) {
            Ok(rep) => {
                let dev =
                    rep.solution.values().iter().zip(h_star.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                worst = worst.max(dev);
                max_iter = max_iter.max(rep.iterations);
            }
            Err(e) => failures.push(e.to_string()),
        }
        solved += 1;
    }
    let mut closed = 0.0f64;
    for (ell, area) in [(1.0, 3.0), (0.5, 0.2), (2.2, 7.5)] {
        let g = Arc::new(FuchsianGroup::boost(ell).unwrap());
        let fam = NormalFamily::new(g, vec![LorentzVector::origin(1)]).unwrap();
        match solve_minkowski(&fam, &[area], &cfg) {
            Ok(rep) => closed = closed.max((rep.solution.values()[0] - area / (2.0 * (ell / 2.0).tanh())).abs()),
            Err(e) => failures.push(e.to_string()),
        }
    }
    outcome(
        failures.is_empty() && worst <= 1e-8 && max_iter <= 30 && closed <= 1e-12,
        format!(
            "20 targets: max ‖h − h*‖∞ {worst:.2e}, max iterations {max_iter}; d = 1 closed form error {closed:.1e}; {} solver failures",
            failures.len()
        ),
    )
}

fn mixed_consistency() -> Outcome {
    let (class, base) = simple_class();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let (mut route, mut diag, mut min_value) = (0.0f64, 0.0f64, f64::INFINITY);
    for _ in 0..50 {
        let hs: Vec<SupportVector> = (0..3).map(|_| class.sample_member(&base, 0.01, &mut rng).unwrap()).collect();
        let refs: Vec<&SupportVector> = hs.iter().collect();
        let m = class.mixed_covol(&refs).unwrap();
        route = route.max((m.value - m.polarized).abs() / m.value.abs().max(1.0));
        min_value = min_value.min(m.value).min(m.polarized);
        let d = class.mixed_covol(&[&hs[0], &hs[0], &hs[0]]).unwrap().value;
        diag = diag.max(rel_err(d, covol(&class.member(&hs[0]).unwrap()).covol));
    }
    outcome(
        route <= 1e-9 && diag <= 1e-12 && min_value >= 0.0,
        format!(
            "50 triples: facet vs polarization {route:.2e}, diagonal vs covol {diag:.2e}, min value {min_value:.4}"
        ),
    )
}

fn inequality_fuzzing() -> Outcome {
    let (class, base) = simple_class();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let (mut checks, mut failed) = (0usize, Vec::new());
    for trial in 0..100u64 {
        let k1 = class.sample_member(&base, 0.01, &mut rng).unwrap();
        let k2 = class.sample_member(&base, 0.01, &mut rng).unwrap();
        for t in [0.25, 0.5, 0.75] {
            for r in verify_inequalities(&class, &k1, &k2, t, trial).unwrap() {
                checks += 1;
                if !r.pass {
                    failed.push(format!("{} (trial {trial}, t = {t})", r.name.as_str()));
                }
            }
        }
    }
    let mut equality = 0.0f64;
    for seed in 0..10 {
        let k1 = class.sample_member(&base, 0.01, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let k2 = k1.scaled(1.0 + 0.1 * seed as f64).unwrap();
        for r in verify_inequalities(&class, &k1, &k2, 0.5, seed).unwrap() {
            if matches!(r.name, InequalityName::ReversedAf | InequalityName::Minkowski2) {
                equality = equality.max(r.relative_gap());
            }
        }
    }
    outcome(
        failed.is_empty() && equality <= 1e-9,
        format!(
            "{checks} checks, {} failures{}; homothetic equality gap {equality:.2e}",
            failed.len(),
            failed.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

fn homogeneity(polys: &[FuchsianPolyhedron]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let (mut cv, mut ar) = (0.0f64, 0.0f64);
    for p in polys {
        let lambda = rng.random_range(0.3..3.0);
        let q = build(&p.family, &p.support.scaled(lambda).unwrap()).unwrap();
        cv = cv.max(rel_err(covol(&q).covol, lambda.powi(3) * covol(p).covol));
        for (a, b) in q.areas().iter().zip(p.areas()) {
            ar = ar.max(rel_err(*a, lambda.powi(2) * b));
        }
    }
    outcome(cv <= 1e-10 && ar <= 1e-10, format!("20 pairs: covol {cv:.2e}, areas {ar:.2e}"))
}

fn ball_approximation() -> Outcome {
    let g = octagon();
    let target = ball_covolume(&g).unwrap();
    let mut values = Vec::new();
    for s in [1.0, 0.6, 0.4, 0.3, 0.2] {
        match approximate_ball(&g, s) {
            Ok(p) => values.push((s, p)),
            Err(e) => return outcome(false, format!("approximate_ball({s}): {e}")),
        }
    }
    let covols: Vec<f64> = values.iter().map(|(_, p)| covol(p).covol).collect();
    let increasing = covols.windows(2).all(|w| w[1] > w[0]) && covols.iter().all(|&c| c < target);
    let gap = (target - covols[covols.len() - 1]) / target;

    // add tangent planes to the coarsest approximant one at a time
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let (_, mut p) = values[0].clone();
    let mut added = 0;
    let mut monotone = true;
    for _ in 0..40 {
        if added == 8 {
            break;
        }
        let theta = rng.random_range(0.0..2.0 * PI);
        let eta = point([theta.cos(), theta.sin()], rng.random_range(0.1..0.9));
        let Ok(fam) = p.family.extended(&[eta]) else { continue };
        let mut h = p.support.values().to_vec();
        h.push(1.0);
        let Ok(q) = build_with(&fam, &SupportVector::new(h).unwrap(), BuildOptions { allow_false_faces: true }) else {
            continue;
        };
        monotone &= covol(&q).covol >= covol(&p).covol - 1e-12;
        p = q;
        added += 1;
    }
    let listing: Vec<String> =
        values.iter().zip(&covols).map(|((s, p), c)| format!("{s}:{c:.4}/{}", p.facets.len())).collect();
    outcome(
        increasing && gap <= 0.05 && monotone && added > 0,
        format!(
            "covol by sample radius [{}] → 4π/3 = {target:.4}; final gap {:.2}%; {added} tangent planes added, monotone {monotone}",
            listing.join(", "),
            100.0 * gap
        ),
    )
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let polys = random_polyhedra(2024, 20);
    let mut criteria: Vec<(&str, Check<'_>)> = vec![
        ("1 octagon reproduction", Box::new(octagon_reproduction)),
        ("2 generator anchor", Box::new(generator_anchor)),
        ("3 gradient identity", Box::new(|| gradient_identity(&polys))),
        ("4 Hessian certificate", Box::new(|| hessian_certificate(&polys))),
        ("5 Minkowski solver round trip", Box::new(solver_round_trip)),
        ("6 mixed covolume consistency", Box::new(mixed_consistency)),
        ("7 inequality fuzzing", Box::new(inequality_fuzzing)),
        ("8 homogeneity", Box::new(|| homogeneity(&polys))),
        ("9 ball approximation", Box::new(ball_approximation)),
    ];
    let limits = [1.0, f64::INFINITY, 30.0, 30.0, 60.0, f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY];
    let mut passed = 0;
    let total = criteria.len();
    for ((name, check), limit) in criteria.drain(..).zip(limits) {
        let start = Instant::now();
        let mut o = check();
        let secs = start.elapsed().as_secs_f64();
        if secs > limit {
            o.pass = false;
            o.detail.push_str(&format!("; runtime over {limit} s"));
        }
        if o.pass {
            passed += 1;
        }
        println!("{} criterion {name}: {} [{secs:.2} s]", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {passed}/{total} criteria passed");
}
