//! Acceptance gate: ten end-to-end checks covering the exact worked numbers,
//! the sampled range analyses, the randomized inequality suites, oracle
//! equivalence of the two evaluation pipelines, and the property battery.
//! Each criterion prints one verdict line; the test fails only after the
//! whole scoreboard has been reported.

use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;

use bercalc_core::berezin::{
    berezin_norm, berezin_radius, c_tilde, min_t_ber_mix, sigma_t_norm, t_berezin_norm,
    OperatorModel, PairingFn,
};
use bercalc_core::convexity::{
    convex_hull, dilation_convexity, fock_diag_convexity, fock_diag_example_midpoint_distance,
    rank_one_diag_range, rank_one_offdiag_disc,
};
use bercalc_core::harness::{
    block_diag, block_unitary_check, blocks_suite, pairing_suite, seminorm_suite, unitary_check,
    TrialRng,
};
use bercalc_core::mat::{dot, ComplexMatrix, ModulusSpectrum};
use bercalc_core::mean::{InterpolationPath, MeanKind};
use bercalc_core::sampler::DomainSampler;
use bercalc_core::spaces::{DomainPoint, KernelSpace};

type Verdict = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn close(got: f64, want: f64, tol: f64, what: &str) -> Verdict {
    ensure(
        (got - want).abs() <= tol,
        format!("{what}: got {got}, want {want} within {tol}"),
    )
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn strict_triangle() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        vec![0.0, 2.0, 2.0],
        vec![0.0, 0.0, 3.0],
        vec![0.0, 0.0, 0.0],
    ])
    .unwrap()
}

fn finite_exact(m: &ComplexMatrix) -> (OperatorModel, DomainSampler) {
    let space = KernelSpace::finite(m.rows()).unwrap();
    let op = OperatorModel::matrix(space.clone(), m.clone()).unwrap();
    (op, DomainSampler::default_for(space))
}

/// The same operator as a closed form whose pairings go through
/// matrix-vector products against the basis kernels, so the sampled
/// two-parameter pipeline is exercised instead of the entrywise fast path.
fn finite_closed_form(m: &ComplexMatrix) -> (OperatorModel, DomainSampler) {
    let space = KernelSpace::finite(m.rows()).unwrap();
    let basis = |j: usize, n: usize| {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        e
    };
    let by_matvec = |mat: ComplexMatrix| -> Arc<PairingFn> {
        Arc::new(move |lambda: &DomainPoint, mu: &DomainPoint| {
            let (DomainPoint::Index(l), DomainPoint::Index(m)) = (lambda, mu) else {
                return Err(bercalc_core::CoreError::Domain("index points expected".into()));
            };
            let image = mat.apply(&basis(*l, mat.rows()))?;
            Ok(dot(&image, &basis(*m, mat.rows())))
        })
    };
    let op = OperatorModel::closed_form(space.clone(), by_matvec(m.clone()), by_matvec(m.adjoint()));
    (op, DomainSampler::default_for(space))
}

/// Worked three-dimensional example: the minimized power-mix radius is
/// 481/6, and the unweighted half-sum bound evaluates to 185/2.
fn exact_mix_minimizer() -> Verdict {
    let start = Instant::now();
    let a = strict_triangle();
    let (_, minimized) = min_t_ber_mix(&a, 4.0).map_err(|e| e.to_string())?;
    close(minimized, 481.0 / 6.0, 1e-10, "minimized mix radius")?;

    let fourth = ModulusSpectrum::of(&a)
        .map_err(|e| e.to_string())?
        .power(4.0)
        .add(&ModulusSpectrum::of_adjoint(&a).map_err(|e| e.to_string())?.power(4.0))
        .map_err(|e| e.to_string())?;
    let (op, sampler) = finite_exact(&fourth);
    let half = 0.5 * berezin_radius(&op, &sampler).map_err(|e| e.to_string())?;
    close(half, 185.0 / 2.0, 1e-10, "half-sum radius")?;
    ensure(start.elapsed().as_secs_f64() < 1.0, "exact example exceeded 1 s")
}

/// Dilation range endpoints and convexity verdicts for one real and one
/// imaginary dilation factor.
fn dilation_range_endpoints() -> Verdict {
    let start = Instant::now();
    let real = dilation_convexity(c(-0.75, 0.0), 0.25).map_err(|e| e.to_string())?;
    let inf = real.range.points.iter().map(|p| p.re).fold(f64::INFINITY, f64::min);
    let sup = real.range.points.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max);
    close(inf, 12.0 / 19.0, 1e-5, "sampled infimum")?;
    close(sup, 1.0, 1e-12, "sampled supremum")?;
    ensure(real.characterization, "real dilation factor must characterize as convex")?;
    ensure(real.report.verdict, "sampled diagnostic must agree the real range is convex")?;

    let spiral = dilation_convexity(c(0.0, 0.6), 0.5).map_err(|e| e.to_string())?;
    ensure(!spiral.characterization, "imaginary dilation factor must characterize as non-convex")?;
    ensure(!spiral.report.verdict, "sampled diagnostic must flag the non-convex range")?;
    ensure(
        spiral.report.hull_deviation > 1e-2 * spiral.report.diameter,
        format!(
            "deviation {} should exceed 1e-2 of diameter {}",
            spiral.report.hull_deviation, spiral.report.diameter
        ),
    )?;
    ensure(start.elapsed().as_secs_f64() < 5.0, "dilation ranges exceeded 5 s")
}

/// The refined numeric maximum of the radial profile r^(2n) (1 - beta r^2)
/// matches the closed-form supremum; the middle case peaks only at the
/// boundary, the outer two attain the critical value inside.
fn rank_one_profile_max() -> Verdict {
    for (n, beta, interior) in [(1u32, 1.0, true), (2, 0.5, false), (3, 0.9, true)] {
        let range = rank_one_diag_range(n, beta).map_err(|e| e.to_string())?;
        close(range.numeric_max, range.sup, 1e-8, &format!("profile max (n={n}, beta={beta})"))?;
        ensure(
            range.boundary != interior,
            format!("maximizer location for n={n}, beta={beta}"),
        )?;
        if interior {
            ensure(
                range.sup == range.endpoint && range.sup_attained,
                format!("interior supremum must be the critical value (n={n}, beta={beta})"),
            )?;
        }
    }
    Ok(())
}

/// The off-diagonal rank-one family traces a disc whose radius has a closed
/// form; the sampled range must fill the disc up to tolerance and never
/// leave it.
fn offdiag_rank_one_disc() -> Verdict {
    let disc = rank_one_offdiag_disc(2, 1, 1.0).map_err(|e| e.to_string())?;
    let expected = (2.0 / 5.0) * (3.0f64 / 5.0).powf(1.5);
    close(disc.radius, expected, 1e-12, "closed-form radius")?;
    close(disc.numeric_max, expected, 1e-6, "refined profile max")?;
    let moduli: Vec<f64> = disc.range.points.iter().map(|p| p.norm()).collect();
    let max_modulus = moduli.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    close(max_modulus, expected, 1e-6, "sampled max modulus")?;
    ensure(
        moduli.iter().all(|&m| m <= expected + 1e-9),
        "a sampled point left the disc",
    )?;
    ensure(disc.radius_attained && !disc.boundary, "radius must be attained inside the disc")
}

/// Non-convexity witness for the exp(-s) exp(is) spiral, plus convexity of
/// every purely real diagonal symbol.
fn fock_spiral_nonconvexity() -> Verdict {
    let (midpoint, distance) = fock_diag_example_midpoint_distance();
    close(midpoint.re, (1.0 - (-std::f64::consts::PI).exp()) / 2.0, 1e-12, "midpoint")?;
    ensure(midpoint.im.abs() <= 1e-12, "midpoint must be real")?;
    ensure(distance > 0.01, format!("midpoint distance {distance} must exceed 0.01"))?;

    let spiral = fock_diag_convexity(0.0, 1.0).map_err(|e| e.to_string())?;
    ensure(
        !spiral.characterization && !spiral.report.verdict,
        "rotating symbol must be non-convex",
    )?;

    let mut rng = TrialRng::for_trial(0xf0c5, 0);
    for k in 0..20 {
        let a = rng.range(-1.0, 1.0);
        let real = fock_diag_convexity(a, 0.0).map_err(|e| e.to_string())?;
        ensure(
            real.characterization && real.report.verdict,
            format!("real symbol a = {a} (draw {k}) must be convex"),
        )?;
    }
    Ok(())
}

/// The three randomized inequality suites, a thousand seeded trials each.
fn inequality_suites() -> Verdict {
    let start = Instant::now();
    for (name, report) in [
        ("pairing", pairing_suite(42, 1000, 2..=6).map_err(|e| e.to_string())?),
        ("seminorm", seminorm_suite(42, 1000, 2..=6).map_err(|e| e.to_string())?),
        ("blocks", blocks_suite(42, 1000, 2..=6).map_err(|e| e.to_string())?),
    ] {
        ensure(
            report.passed() && report.min_slack >= -1e-9,
            format!("{name} suite: min slack {}, {} failures", report.min_slack, report.failures.len()),
        )?;
    }
    ensure(start.elapsed().as_secs_f64() < 60.0, "suites exceeded 60 s")
}

/// Every Berezin quantity computed through the sampled two-parameter
/// pipeline (closed-form pairings via matrix-vector products) and through
/// the entrywise fast path matches the brute-force formulas.
fn pipeline_oracle_equivalence() -> Verdict {
    let mut rng = TrialRng::for_trial(0x0ac1e, 0);
    for n in 2..=6usize {
        for _ in 0..100 {
            let m = rng.matrix(n);
            let path = rng.path();
            let p = rng.exponent();
            let t = rng.unit();

            let mut max_entry = f64::NEG_INFINITY;
            let mut min_entry = f64::INFINITY;
            let mut max_diag = f64::NEG_INFINITY;
            let mut sigma = f64::NEG_INFINITY;
            let mut arith1 = f64::NEG_INFINITY;
            for l in 0..n {
                max_diag = max_diag.max(m.at(l, l).norm());
                for k in 0..n {
                    let fwd = m.at(k, l).norm();
                    let back = m.at(l, k).norm();
                    max_entry = max_entry.max(fwd);
                    min_entry = min_entry.min(fwd);
                    sigma = sigma.max(path.eval(fwd.powf(p), back.powf(p)).map_err(|e| e.to_string())?);
                    arith1 = arith1.max(t * fwd + (1.0 - t) * back);
                }
            }
            sigma = sigma.powf(1.0 / p);

            for (label, (op, sampler)) in
                [("fast", finite_exact(&m)), ("sampled", finite_closed_form(&m))]
            {
                let what = |q: &str| format!("{q} ({label}, dim {n})");
                close(berezin_radius(&op, &sampler).map_err(|e| e.to_string())?, max_diag, 1e-12, &what("radius"))?;
                close(berezin_norm(&op, &sampler).map_err(|e| e.to_string())?, max_entry, 1e-12, &what("norm"))?;
                close(c_tilde(&op, &sampler).map_err(|e| e.to_string())?, min_entry, 1e-12, &what("floor"))?;
                close(
                    sigma_t_norm(&op, path, p, &sampler).map_err(|e| e.to_string())?,
                    sigma,
                    1e-12,
                    &what("seminorm"),
                )?;
                close(
                    t_berezin_norm(&op, t, &sampler).map_err(|e| e.to_string())?,
                    arith1,
                    1e-12,
                    &what("weighted norm"),
                )?;
            }
        }
    }
    Ok(())
}

/// For positive operators the Berezin radius and the Berezin norm coincide.
fn positive_operator_equality() -> Verdict {
    let mut rng = TrialRng::for_trial(0x9051, 0);
    for k in 0..100 {
        let n = rng.dim(2, 6);
        let m = rng.psd(n);
        let (op, sampler) = finite_exact(&m);
        let radius = berezin_radius(&op, &sampler).map_err(|e| e.to_string())?;
        let norm = berezin_norm(&op, &sampler).map_err(|e| e.to_string())?;
        close(radius, norm, 1e-12, &format!("positive operator {k}"))?;
    }
    Ok(())
}

/// The seminorm unitarity criterion accepts unitaries, rejects invertible
/// non-unitaries, and its block-diagonal form agrees with the plain one.
fn unitary_characterization() -> Verdict {
    let mut rng = TrialRng::for_trial(0x117a, 0);
    for k in 0..100 {
        let n = rng.dim(2, 6);
        let u = rng.unitary(n);
        ensure(
            unitary_check(&u, rng.path(), rng.exponent()).map_err(|e| e.to_string())?,
            format!("unitary draw {k} rejected"),
        )?;
        let v = rng.non_unitary_invertible(n);
        ensure(
            !unitary_check(&v, rng.path(), rng.exponent()).map_err(|e| e.to_string())?,
            format!("non-unitary draw {k} accepted"),
        )?;
    }
    for k in 0..50 {
        let n = rng.dim(2, 4);
        let pick = |rng: &mut TrialRng| {
            if rng.unit() < 0.5 { rng.unitary(n) } else { rng.non_unitary_invertible(n) }
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let joint = unitary_check(&block_diag(&a, &b).map_err(|e| e.to_string())?, rng.path(), rng.exponent())
            .map_err(|e| e.to_string())?;
        ensure(
            block_unitary_check(&a, &b).map_err(|e| e.to_string())? == joint,
            format!("block criterion disagrees on pair {k}"),
        )?;
    }
    Ok(())
}

/// Mean and seminorm properties: adjoint and weight-reversal invariance,
/// homogeneity, definiteness where it holds, the midpoint composition law,
/// the mean ordering, the radius/norm sandwich, and hull containment.
fn property_battery() -> Verdict {
    let mut rng = TrialRng::for_trial(0xba77e51, 0);

    // Seminorm axioms. Definiteness belongs to the arithmetic family and to
    // the endpoints of every family; an interior geometric or harmonic
    // weight annihilates any matrix whose every entry faces a zero in the
    // transposed position, so only the weaker axioms hold there.
    for _ in 0..200 {
        let n = rng.dim(2, 6);
        let m = rng.matrix(n);
        let path = rng.path();
        let p = rng.exponent();
        let (op, sampler) = finite_exact(&m);
        let value = sigma_t_norm(&op, path, p, &sampler).map_err(|e| e.to_string())?;

        let adj = sigma_t_norm(&op.adjoint(), path, p, &sampler).map_err(|e| e.to_string())?;
        close(value, adj, 1e-12, "adjoint invariance")?;

        let reversed =
            sigma_t_norm(&op, path.reversed(), p, &sampler).map_err(|e| e.to_string())?;
        close(value, reversed, 1e-12, "weight reversal")?;

        let scalar = rng.complex();
        let (scaled_op, _) = finite_exact(&m.scale(scalar));
        let scaled = sigma_t_norm(&scaled_op, path, p, &sampler).map_err(|e| e.to_string())?;
        close(scaled, scalar.norm() * value, 1e-10, "homogeneity")?;

        let arith = InterpolationPath::new(MeanKind::Arithmetic, rng.unit()).map_err(|e| e.to_string())?;
        let arith_value = sigma_t_norm(&op, arith, p, &sampler).map_err(|e| e.to_string())?;
        ensure(arith_value > 0.0, "arithmetic seminorm of a nonzero draw must be positive")?;
    }
    {
        let zero = ComplexMatrix::zeros(3, 3);
        let (op, sampler) = finite_exact(&zero);
        for kind in MeanKind::ALL {
            let path = InterpolationPath::new(kind, 0.37).map_err(|e| e.to_string())?;
            let v = sigma_t_norm(&op, path, 2.0, &sampler).map_err(|e| e.to_string())?;
            ensure(v == 0.0, "zero operator must have zero seminorm")?;
        }
        let jordan = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])
            .map_err(|e| e.to_string())?;
        let (op, sampler) = finite_exact(&jordan);
        let geom = InterpolationPath::new(MeanKind::Geometric, 0.5).map_err(|e| e.to_string())?;
        ensure(
            sigma_t_norm(&op, geom, 1.0, &sampler).map_err(|e| e.to_string())? == 0.0,
            "interior geometric weight must annihilate the one-sided nilpotent",
        )?;
        for kind in MeanKind::ALL {
            for t in [0.0, 1.0] {
                let path = InterpolationPath::new(kind, t).map_err(|e| e.to_string())?;
                let v = sigma_t_norm(&op, path, 1.0, &sampler).map_err(|e| e.to_string())?;
                close(v, 1.0, 1e-12, "endpoint weights restore the norm")?;
            }
        }
    }

    // Midpoint composition law of the interpolation families, and the
    // harmonic <= geometric <= arithmetic ordering at equal weight.
    for _ in 0..500 {
        let (a, b) = (rng.range(1e-6, 3.0), rng.range(1e-6, 3.0));
        let (t, s) = (rng.unit(), rng.unit());
        let mid = (t + s) / 2.0;
        let arith = |t| InterpolationPath::new(MeanKind::Arithmetic, t);
        let geom = |t| InterpolationPath::new(MeanKind::Geometric, t);
        let ae = |t: f64| -> Result<f64, String> {
            arith(t).map_err(|e| e.to_string())?.eval(a, b).map_err(|e| e.to_string())
        };
        let ge = |t: f64| -> Result<f64, String> {
            geom(t).map_err(|e| e.to_string())?.eval(a, b).map_err(|e| e.to_string())
        };
        close((ae(t)? + ae(s)?) / 2.0, ae(mid)?, 1e-12, "arithmetic midpoint law")?;
        close((ge(t)? * ge(s)?).sqrt(), ge(mid)?, 1e-12, "geometric midpoint law")?;

        let w = rng.unit();
        let am = InterpolationPath::new(MeanKind::Arithmetic, w).map_err(|e| e.to_string())?;
        let gm = InterpolationPath::new(MeanKind::Geometric, w).map_err(|e| e.to_string())?;
        let hm = InterpolationPath::new(MeanKind::Harmonic, w).map_err(|e| e.to_string())?;
        let (av, gv, hv) = (
            am.eval(a, b).map_err(|e| e.to_string())?,
            gm.eval(a, b).map_err(|e| e.to_string())?,
            hm.eval(a, b).map_err(|e| e.to_string())?,
        );
        ensure(
            hv <= gv + 1e-12 && gv <= av + 1e-12,
            format!("mean ordering violated: {hv} {gv} {av}"),
        )?;
    }

    // Radius <= seminorm <= norm on a thousand draws, integral exponents.
    for _ in 0..1000 {
        let n = rng.dim(2, 6);
        let m = rng.matrix(n);
        let path = rng.path();
        let p = [1.0, 2.0, 3.0][rng.dim(0, 2)];
        let (op, sampler) = finite_exact(&m);
        let radius = berezin_radius(&op, &sampler).map_err(|e| e.to_string())?;
        let value = sigma_t_norm(&op, path, p, &sampler).map_err(|e| e.to_string())?;
        let norm = berezin_norm(&op, &sampler).map_err(|e| e.to_string())?;
        ensure(
            radius <= value + 1e-10 && value <= norm + 1e-10,
            format!("sandwich violated: {radius} {value} {norm}"),
        )?;
    }

    // Convex hulls contain their input points.
    for _ in 0..100 {
        let points: Vec<Complex64> = (0..rng.dim(3, 40)).map(|_| rng.complex()).collect();
        let hull = convex_hull(&points).map_err(|e| e.to_string())?;
        if hull.len() < 3 {
            continue;
        }
        for p in &points {
            for i in 0..hull.len() {
                let (o, a) = (hull[i], hull[(i + 1) % hull.len()]);
                let cross = (a.re - o.re) * (p.im - o.im) - (a.im - o.im) * (p.re - o.re);
                ensure(cross >= -1e-9, format!("point {p} outside hull edge {o} -> {a}"))?;
            }
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Verdict);

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("exact-mix-minimizer", exact_mix_minimizer),
        ("dilation-range-endpoints", dilation_range_endpoints),
        ("rank-one-profile-max", rank_one_profile_max),
        ("offdiag-rank-one-disc", offdiag_rank_one_disc),
        ("fock-spiral-nonconvexity", fock_spiral_nonconvexity),
        ("inequality-suites", inequality_suites),
        ("pipeline-oracle-equivalence", pipeline_oracle_equivalence),
        ("positive-operator-equality", positive_operator_equality),
        ("unitary-characterization", unitary_characterization),
        ("property-battery", property_battery),
    ];
    let mut failed = Vec::new();
    for (index, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2} s)", index + 1),
            Err(reason) => {
                println!("FAIL {:>2} {name} ({elapsed:.2} s): {reason}", index + 1);
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
