//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or exceeds its time budget.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use densop::entanglement::{measure, spectra_equal_check, Partition};
use densop::gaussian::{gaussian_entanglement, gaussian_purity, marginal_covariances, GaussianState, ModePartition};
use densop::linalg::{hermitian_eig, ComplexMatrix, DensityMatrix};
use densop::phase_space::fock::{squeeze_operator, squeezed_vacuum_ket};
use densop::phase_space::{
    coherent_state, displacement_elements, kernel_numerator, number_state, quadrature_moments, symbol_superpose,
    thermal_state, tomogram_gaussian, tomogram_radon, tomographic_trace_kernel, trace_overlap_check, weyl_four_kernel,
    weyl_reconstruct, weyl_symbol, FockOperator, PhaseSpaceGrid, SuperposeOptions, TomogramPoint,
};
use densop::purification::{superpose_impure, superpose_pure_many, FiducialProjector, SuperpositionWeights};
use densop::{random, states};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn two_qubits() -> Partition {
    Partition::singletons(vec![2, 2]).unwrap()
}

fn bell_golden() -> Outcome {
    let rep = measure(&states::bell(), &two_qubits()).map_err(|e| e.to_string())?;
    let worst = [
        (rep.e - 0.75).abs(),
        (rep.mu_ab - 1.0).abs(),
        (rep.mu_parts[0] - 0.5).abs(),
        (rep.mu_parts[1] - 0.5).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    ensure(worst <= 1e-12, || format!("deviation {worst:.3e}"))?;
    Ok(format!("e = {}, max deviation {worst:.1e}", rep.e))
}

fn phi_curve() -> Outcome {
    let mut worst: f64 = 0.0;
    for deg in [0.0f64, 15.0, 30.0, 45.0, 60.0, 75.0, 90.0] {
        let phi = deg.to_radians();
        let x = (2.0 * phi).sin().powi(2);
        let expected = 0.5 * x * (1.0 + 0.5 * x);
        let rep = measure(&states::phi_state(phi), &two_qubits()).map_err(|e| e.to_string())?;
        worst = worst.max((rep.e - expected).abs());
    }
    ensure(worst <= 1e-10, || format!("curve deviation {worst:.3e}"))?;
    let rep = measure(&states::phi_state(PI / 4.0), &two_qubits()).map_err(|e| e.to_string())?;
    let theta = rep.theta().to_degrees();
    ensure((rep.cos_theta - 0.5).abs() <= 1e-10, || format!("cos theta {}", rep.cos_theta))?;
    Ok(format!("max deviation {worst:.1e}, theta(45 deg) = {theta:.6} deg"))
}

fn random_case<R: Rng>(rng: &mut R) -> (Vec<DensityMatrix>, SuperpositionWeights, FiducialProjector) {
    let dim = rng.random_range(2..=8usize);
    let count = rng.random_range(2..=4usize);
    let rhos: Vec<DensityMatrix> = (0..count)
        .map(|_| {
            let rank = rng.random_range(1..=dim);
            random::random_density(rng, &[dim], rank)
        })
        .collect();
    let raw: Vec<f64> = (0..count).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut probs: Vec<f64> = raw.iter().map(|p| p / total).collect();
    let head: f64 = probs[..count - 1].iter().sum();
    probs[count - 1] = 1.0 - head;
    let w = SuperpositionWeights::new(probs).unwrap();
    let psi = random::random_ket(rng, dim);
    (rhos, w, FiducialProjector::from_vector(&psi, vec![dim]).unwrap())
}

fn projector_suite() -> Outcome {
    let mut rng = random::rng(0x5eed_0003);
    let (mut idem, mut tr_err, mut fix): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for case in 0..100 {
        let (rhos, w, p0) = random_case(&mut rng);
        let out = superpose_impure(&rhos, &w, &p0).map_err(|e| format!("case {case}: {e}"))?;
        let rho = out.state.matrix();
        idem = idem.max(out.state.idempotency_residual());
        tr_err = tr_err.max((rho.trace().re - 1.0).abs());
        let n = rho.rows();
        let mut mixture = ComplexMatrix::zeros(n, n);
        for (r, p) in rhos.iter().zip(w.probabilities()) {
            mixture = &mixture + &r.matrix().scale_real(*p);
        }
        let dec = hermitian_eig(&mixture, 1e-9).map_err(|e| e.to_string())?;
        for (om, rk) in dec.eigenvalues.iter().zip(&dec.projectors) {
            if *om <= 1e-12 {
                continue;
            }
            let lhs = rk.matmul(rho).matmul(rk);
            fix = fix.max(lhs.max_abs_diff(&rk.scale_real(*om)));
        }
    }
    ensure(idem <= 1e-9 && tr_err <= 1e-10 && fix <= 1e-9, || {
        format!("idempotency {idem:.3e}, trace {tr_err:.3e}, R rho R {fix:.3e}")
    })?;
    Ok(format!("worst idempotency {idem:.1e}, trace {tr_err:.1e}, R rho R {fix:.1e}"))
}

fn visibility_linearity() -> Outcome {
    let mut rng = random::rng(0x5eed_0004);
    let mut worst: f64 = 0.0;
    for case in 0..20 {
        let gamma = rng.random_range(0.0..1.0);
        let run = |rhos: &[DensityMatrix], probs: &[f64], p0: &FiducialProjector, g: f64, pure: bool| {
            let w = SuperpositionWeights::with_visibility(probs.to_vec(), g).unwrap();
            if pure {
                superpose_pure_many(rhos, &w, p0).map(|d| d.into_matrix())
            } else {
                superpose_impure(rhos, &w, p0).map(|d| d.state.into_matrix())
            }
        };
        let (rhos, w, p0, pure) = if case % 2 == 0 {
            let (rhos, w, p0) = random_case(&mut rng);
            (rhos, w, p0, false)
        } else {
            // orthogonal pure states from the columns of a random unitary
            let dim = rng.random_range(2..=6usize);
            let k = rng.random_range(2..=dim);
            let u = random::random_unitary(&mut rng, dim);
            let rhos: Vec<DensityMatrix> = (0..k)
                .map(|j| DensityMatrix::pure(&u.column(j), vec![dim]).unwrap())
                .collect();
            let probs = vec![1.0 / k as f64; k];
            let psi = random::random_ket(&mut rng, dim);
            (
                rhos,
                SuperpositionWeights::new(probs).unwrap(),
                FiducialProjector::from_vector(&psi, vec![dim]).unwrap(),
                true,
            )
        };
        let probs = w.probabilities();
        let at = |g| run(&rhos, probs, &p0, g, pure).map_err(|e| format!("case {case}: {e}"));
        let (full, none, mid) = (at(1.0)?, at(0.0)?, at(gamma)?);
        let interp = &full.scale_real(gamma) + &none.scale_real(1.0 - gamma);
        worst = worst.max(mid.max_abs_diff(&interp));
    }
    ensure(worst <= 1e-12, || format!("deviation {worst:.3e}"))?;
    Ok(format!("max entrywise deviation {worst:.1e}"))
}

fn equal_spectra() -> Outcome {
    let mut rng = random::rng(0x5eed_0005);
    let (mut moments, mut spectra): (f64, f64) = (0.0, 0.0);
    for dims in [[2usize, 3], [3, 3], [2, 4]] {
        let part = Partition::singletons(dims.to_vec()).unwrap();
        for _ in 0..100 {
            let rho = random::random_pure(&mut rng, &dims);
            let rep = spectra_equal_check(&rho, &part, 6).map_err(|e| e.to_string())?;
            let cmp = &rep.comparisons[0];
            moments = moments.max(cmp.moment_differences.iter().fold(0.0, |m, d| m.max(*d)));
            ensure(cmp.spectrum.len() == cmp.complement_spectrum.len(), || {
                format!("rank mismatch {:?} vs {:?}", cmp.spectrum, cmp.complement_spectrum)
            })?;
            for (a, b) in cmp.spectrum.iter().zip(&cmp.complement_spectrum) {
                spectra = spectra.max((a - b).abs());
            }
        }
    }
    ensure(moments <= 1e-9 && spectra <= 1e-8, || {
        format!("moments {moments:.3e}, spectra {spectra:.3e}")
    })?;
    Ok(format!("moment deviation {moments:.1e}, spectrum deviation {spectra:.1e}"))
}

/// Independent evaluation of the two-mode squeezed value from the closed
/// form `1 + 1/c^2 - 8/(4c^2 - s^2)`, frozen at 20 significant digits.
const TMSV_GOLDEN: [(f64, f64); 4] = [
    (0.1, 0.020053224260763986058),
    (0.3, 0.17783053571256973351),
    (0.5, 0.43757085044438655983),
    (0.8, 0.76830004600184975413),
];

fn subsystem_block(sigma: &DMatrix<f64>, n: usize, modes: std::ops::Range<usize>) -> DMatrix<f64> {
    let idx: Vec<usize> = modes.clone().chain(modes.map(|m| m + n)).collect();
    DMatrix::from_fn(idx.len(), idx.len(), |r, c| sigma[(idx[r], idx[c])])
}

fn gaussian_identities() -> Outcome {
    let mut rng = random::rng(0x5eed_0006);
    let mut schur: f64 = 0.0;
    for (modes, splits) in [(2usize, vec![(1usize, 1usize)]), (3, vec![(1, 2), (2, 1)])] {
        for case in 0..50 {
            let (n1, n2) = splits[case % splits.len()];
            let values = random::random_spd(&mut rng, 2 * modes, 1.0);
            let sigma = DMatrix::from_row_slice(2 * modes, 2 * modes, &values);
            let g = GaussianState::centered(sigma.clone()).map_err(|e| e.to_string())?;
            let part = ModePartition::new(n1, n2).unwrap();
            let (s1, s2) = marginal_covariances(&g, &part).map_err(|e| e.to_string())?;
            schur = schur.max((s1 - subsystem_block(&sigma, modes, 0..n1)).amax());
            schur = schur.max((s2 - subsystem_block(&sigma, modes, n1..modes)).amax());
        }
    }
    ensure(schur <= 1e-9, || format!("Schur block deviation {schur:.3e}"))?;

    let mut block: f64 = 0.0;
    for _ in 0..20 {
        let a = random::random_spd(&mut rng, 2, 1.0);
        let b = random::random_spd(&mut rng, 2, 1.0);
        // (p1, p2, q1, q2) from per-mode (p, q) blocks
        #[rustfmt::skip]
        let sigma = DMatrix::from_row_slice(4, 4, &[
            a[0], 0.0, a[1], 0.0,
            0.0, b[0], 0.0, b[1],
            a[2], 0.0, a[3], 0.0,
            0.0, b[2], 0.0, b[3],
        ]);
        let g = GaussianState::centered(sigma).map_err(|e| e.to_string())?;
        block = block.max(gaussian_entanglement(&g, &ModePartition::new(1, 1).unwrap()).map_err(|e| e.to_string())?.abs());
    }
    ensure(block <= 1e-12, || format!("uncorrelated e_G {block:.3e}"))?;

    let mut golden: f64 = 0.0;
    let mut previous = f64::NEG_INFINITY;
    for (r, expected) in TMSV_GOLDEN {
        let e = gaussian_entanglement(&GaussianState::two_mode_squeezed(r), &ModePartition::new(1, 1).unwrap())
            .map_err(|e| e.to_string())?;
        golden = golden.max((e - expected).abs());
        ensure(e > previous, || format!("e_G not increasing at r = {r}"))?;
        previous = e;
    }
    ensure(golden <= 1e-10, || format!("golden deviation {golden:.3e}"))?;
    Ok(format!("Schur {schur:.1e}, uncorrelated {block:.1e}, golden {golden:.1e}"))
}

fn fock_gaussian_consistency() -> Outcome {
    let cutoff = 60;
    let mut worst: f64 = 0.0;
    for r in [0.1, 0.3, 0.5, 0.8] {
        let psi = squeezed_vacuum_ket(r, cutoff);
        let rho = FockOperator::new(ComplexMatrix::outer(&psi)).unwrap();
        let fock_purity = rho.matrix().trace_of_product(rho.matrix()).re;
        let g = quadrature_moments(&rho).map_err(|e| e.to_string())?;
        worst = worst.max((gaussian_purity(&g).map_err(|e| e.to_string())? - fock_purity).abs());
        let closed = gaussian_purity(&GaussianState::squeezed_vacuum(r)).map_err(|e| e.to_string())?;
        worst = worst.max((closed - fock_purity).abs());
    }
    // squeezed thermal states are mixed, so the purity comparison is not trivial
    for (r, nbar) in [(0.3, 0.2), (0.5, 0.3)] {
        let s = squeeze_operator(r, cutoff).map_err(|e| e.to_string())?;
        let th = thermal_state(nbar, cutoff).map_err(|e| e.to_string())?;
        let rho = s.matrix().matmul(th.matrix()).matmul(&s.matrix().adjoint());
        let rho = FockOperator::new(rho).unwrap();
        let fock_purity = rho.matrix().trace_of_product(rho.matrix()).re;
        let g = quadrature_moments(&rho).map_err(|e| e.to_string())?;
        worst = worst.max((gaussian_purity(&g).map_err(|e| e.to_string())? - fock_purity).abs());
        worst = worst.max((fock_purity - 1.0 / (2.0 * nbar + 1.0)).abs());
    }
    ensure(worst <= 1e-6, || format!("purity deviation {worst:.3e}"))?;
    Ok(format!("max purity deviation {worst:.1e}"))
}

fn weyl_suite() -> Outcome {
    // vacuum against 2 exp(-2|a|^2)
    let grid = PhaseSpaceGrid::new(3.0, 0.1).unwrap();
    let vac40 = number_state(0, 40).unwrap();
    let w = weyl_symbol(&vac40, &grid);
    let mut vac_err: f64 = 0.0;
    for (k, v) in w.values().iter().enumerate() {
        let z = grid.point(k);
        if z.norm() <= 3.0 {
            vac_err = vac_err.max((v - 2.0 * (-2.0 * z.norm_sqr()).exp()).norm());
        }
    }
    ensure(vac_err <= 1e-6, || format!("vacuum symbol deviation {vac_err:.3e}"))?;

    // round trips on the fine grid
    let fine = PhaseSpaceGrid::new(5.0, 0.05).unwrap();
    let mut trip: f64 = 0.0;
    for op in [number_state(0, 30).unwrap(), coherent_state(c(1.0, 0.0), 30).unwrap()] {
        let back = weyl_reconstruct(&weyl_symbol(&op, &fine), 30).map_err(|e| e.to_string())?;
        let rel = (back.matrix() - op.matrix()).frobenius_norm() / op.matrix().frobenius_norm();
        trip = trip.max(rel);
    }
    ensure(trip <= 1e-4, || format!("round trip {trip:.3e}"))?;

    let overlap_grid = PhaseSpaceGrid::new(5.0, 0.1).unwrap();
    let n = 30;
    let cat = {
        let a = densop::phase_space::fock::coherent_ket(c(0.8, 0.0), n);
        let b = densop::phase_space::fock::coherent_ket(c(-0.8, 0.0), n);
        let psi: Vec<Complex64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        FockOperator::new(ComplexMatrix::projector(&psi)).unwrap()
    };
    let ops = [
        number_state(0, n).unwrap(),
        number_state(1, n).unwrap(),
        number_state(2, n).unwrap(),
        thermal_state(0.5, n).unwrap(),
        coherent_state(c(0.5, -0.3), n).unwrap(),
        FockOperator::new(ComplexMatrix::outer(&squeezed_vacuum_ket(0.4, n))).unwrap(),
        cat,
    ];
    let pairs = [(0, 0), (0, 1), (3, 3), (1, 2), (4, 4), (4, 3), (5, 0), (5, 5), (6, 1), (6, 4)];
    let mut overlap: f64 = 0.0;
    for (i, j) in pairs {
        let (lhs, rhs) = trace_overlap_check(&ops[i], &ops[j], &overlap_grid).map_err(|e| e.to_string())?;
        overlap = overlap.max((lhs - rhs).abs());
    }
    ensure(overlap <= 1e-3, || format!("overlap identity {overlap:.3e}"))?;
    Ok(format!("vacuum {vac_err:.1e}, round trip {trip:.1e}, overlap {overlap:.1e} on {} pairs", pairs.len()))
}

fn symbol_superposition() -> Outcome {
    let cutoff = 30;
    let fine = PhaseSpaceGrid::new(5.0, 0.05).unwrap();
    let zero = number_state(0, cutoff).unwrap();
    let one = number_state(1, cutoff).unwrap();
    let mut plus = vec![c(0.0, 0.0); cutoff];
    plus[0] = c(1.0, 0.0);
    plus[1] = c(1.0, 0.0);
    let fid = FockOperator::new(ComplexMatrix::projector(&plus)).unwrap();
    let w = SuperpositionWeights::new(vec![0.5, 0.5]).unwrap();
    let coarse = PhaseSpaceGrid::new(3.2, 0.4).unwrap();
    let out = symbol_superpose(
        &[weyl_symbol(&zero, &fine), weyl_symbol(&one, &fine)],
        &w,
        &weyl_symbol(&fid, &fine),
        &SuperposeOptions {
            cutoff,
            cross_check: Some(coarse),
        },
    )
    .map_err(|e| e.to_string())?;

    let p0 = FiducialProjector::new(fid.matrix().clone(), vec![cutoff]).unwrap();
    let rhos = [zero.to_density().unwrap(), one.to_density().unwrap()];
    let oracle = superpose_pure_many(&rhos, &w, &p0).map_err(|e| e.to_string())?;
    let oracle_field = weyl_symbol(&FockOperator::from(oracle), &fine);
    let route = out.field.max_abs_diff(&oracle_field).map_err(|e| e.to_string())?;
    ensure(route <= 1e-3, || format!("operator route deviation {route:.3e}"))?;

    let kernel = out.kernel_deviation.unwrap_or(f64::INFINITY);
    ensure(kernel <= 5e-2 && out.warnings.is_empty(), || format!("kernel cross-check {kernel:.3e}"))?;

    // numerator alone against the oracle on the coarse grid
    let comps = vec![(0.5, rhos[0].matrix().clone()), (0.5, rhos[1].matrix().clone())];
    let direct = kernel_numerator(&comps, p0.matrix(), 1.0, &coarse).map_err(|e| e.to_string())?;
    let oracle_coarse = weyl_symbol(&FockOperator::new(oracle_field_state(&rhos, &w, &p0)?).unwrap(), &coarse);
    let again = direct.max_abs_diff(&oracle_coarse).map_err(|e| e.to_string())?;
    ensure(again <= 5e-2, || format!("coarse numerator {again:.3e}"))?;
    Ok(format!(
        "operator route {route:.1e}, kernel route {kernel:.1e} on {}x{} points",
        coarse.side(),
        coarse.side()
    ))
}

fn oracle_field_state(rhos: &[DensityMatrix], w: &SuperpositionWeights, p0: &FiducialProjector) -> Result<ComplexMatrix, String> {
    superpose_pure_many(rhos, w, p0)
        .map(|d| d.into_matrix())
        .map_err(|e| e.to_string())
}

fn tomogram_suite() -> Outcome {
    let grid = PhaseSpaceGrid::new(5.0, 0.05).unwrap();
    let cutoff = 30;
    let vac = weyl_symbol(&number_state(0, cutoff).unwrap(), &grid);
    let g = GaussianState::vacuum(1);
    let mut closed: f64 = 0.0;
    for theta in [0.0, 0.4, PI / 2.0, 2.0, 3.0] {
        for x in [-2.5, -1.0, 0.0, 0.3, 1.7] {
            let pt = TomogramPoint::at_angle(x, theta);
            let radon = tomogram_radon(&vac, &pt).map_err(|e| e.to_string())?;
            closed = closed.max((radon - tomogram_gaussian(&g, &pt).map_err(|e| e.to_string())?).abs());
        }
    }
    ensure(closed <= 1e-4, || format!("vacuum tomogram deviation {closed:.3e}"))?;

    let mut rng = random::rng(0x5eed_0010);
    let states = [
        vac.clone(),
        weyl_symbol(&number_state(1, cutoff).unwrap(), &grid),
        weyl_symbol(&coherent_state(c(0.6, 0.2), cutoff).unwrap(), &grid),
    ];
    let mut homog: f64 = 0.0;
    for f in &states {
        for _ in 0..10 {
            let pt = TomogramPoint::new(rng.random_range(-1.5..1.5), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                .map_err(|e| e.to_string())?;
            let lambda = 2.5;
            let base = tomogram_radon(f, &pt).map_err(|e| e.to_string())?;
            let scaled = tomogram_radon(f, &pt.scaled(lambda)).map_err(|e| e.to_string())?;
            homog = homog.max((scaled - base / lambda).abs());
        }
    }
    ensure(homog <= 1e-6, || format!("homogeneity {homog:.3e}"))?;

    let mut norm: f64 = 0.0;
    let dx = 0.05;
    for f in &states {
        for theta in [0.0, 1.1, 2.3] {
            let mut total = 0.0;
            let mut x = -6.0;
            while x <= 6.0 + 1e-9 {
                total += tomogram_radon(f, &TomogramPoint::at_angle(x, theta)).map_err(|e| e.to_string())?;
                x += dx;
            }
            norm = norm.max((total * dx - 1.0).abs());
        }
    }
    ensure(norm <= 1e-3, || format!("normalization {norm:.3e}"))?;
    Ok(format!("closed form {closed:.1e}, homogeneity {homog:.1e}, normalization {norm:.1e}"))
}

fn kernel_consistency() -> Outcome {
    // tomographic N = 2: smear the second point with g(mu, nu) = exp(-(mu^2 + nu^2))
    // and eliminate the deltas analytically
    let n = 40;
    let dual = |x: f64, mu: f64, nu: f64| {
        displacement_elements(c(nu, -mu) / 2f64.sqrt(), n).scale(Complex64::from_polar(1.0 / (2.0 * PI), x))
    };
    let g = |mu: f64, nu: f64| (-(mu * mu + nu * nu)).exp();
    let (x1, mu1, nu1, x2) = (0.3, 0.4, -0.2, 0.1);
    let d1 = dual(x1, mu1, nu1);
    let (l, h) = (5.0f64, 0.1f64);
    let steps = (2.0 * l / h).round() as usize;
    let mut smeared = c(0.0, 0.0);
    for i in 0..=steps {
        for j in 0..=steps {
            let (mu, nu) = (-l + i as f64 * h, -l + j as f64 * h);
            smeared += g(mu, nu) * d1.trace_of_product(&dual(x2, mu, nu));
        }
    }
    smeared *= h * h;
    let p1 = TomogramPoint::new(x1, mu1, nu1).unwrap();
    let p2 = TomogramPoint::new(x2, -mu1, -nu1).unwrap();
    let k = tomographic_trace_kernel(&[p1, p2]).map_err(|e| e.to_string())?;
    ensure(k.max_residual() == 0.0, || "constraint slice has nonzero residual".into())?;
    let tomo = (smeared - g(-mu1, -nu1) * k.coefficient).norm();
    ensure(tomo <= 5e-3, || format!("tomographic kernel deviation {tomo:.3e}"))?;

    // Weyl four-point kernel: 6-dim quadrature with a4 = a1 - a2 + a3
    let cutoff = 40;
    let gauss = |center: Complex64, nbar: f64| {
        move |z: Complex64| 2.0 / (2.0 * nbar + 1.0) * (-2.0 * (z - center).norm_sqr() / (2.0 * nbar + 1.0)).exp()
    };
    let fa = gauss(c(0.0, 0.0), 0.0);
    let fb = gauss(c(0.4, 0.3), 0.0);
    let fc = gauss(c(0.0, 0.0), 0.5);
    let fd = gauss(c(-0.3, 0.1), 0.0);
    let ops = [
        number_state(0, cutoff).unwrap(),
        coherent_state(c(0.4, 0.3), cutoff).unwrap(),
        thermal_state(0.5, cutoff).unwrap(),
        coherent_state(c(-0.3, 0.1), cutoff).unwrap(),
    ];
    let exact = ops[0]
        .matrix()
        .matmul(ops[1].matrix())
        .matmul(ops[2].matrix())
        .trace_of_product(ops[3].matrix());
    let grid = PhaseSpaceGrid::new(3.0, 0.3).unwrap();
    let pts: Vec<Complex64> = grid.points().collect();
    let total: Complex64 = {
        use rayon::prelude::*;
        let parts: Vec<Complex64> = pts
            .par_iter()
            .map(|&a1| {
                let mut acc = c(0.0, 0.0);
                for &a2 in &pts {
                    for &a3 in &pts {
                        let a4 = a1 - a2 + a3;
                        let k = weyl_four_kernel(a1, a2, a3, a4);
                        acc += fa(a1) * fb(a2) * fc(a3) * fd(a4) * k.coefficient;
                    }
                }
                acc
            })
            .collect();
        parts.into_iter().sum::<Complex64>() * grid.cell().powi(3)
    };
    let weyl = (total - exact).norm();
    ensure(weyl <= 5e-3, || format!("four-point kernel deviation {weyl:.3e}"))?;
    Ok(format!("tomographic {tomo:.1e}, four-point {weyl:.1e}"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "Bell-state golden values", budget: secs(1), run: bell_golden },
        Criterion { id: 2, name: "phi-state entanglement curve", budget: secs(1), run: phi_curve },
        Criterion { id: 3, name: "impure superposition yields projectors", budget: secs(10), run: projector_suite },
        Criterion { id: 4, name: "visibility linearity", budget: secs(1), run: visibility_linearity },
        Criterion { id: 5, name: "equal marginal spectra of pure states", budget: secs(5), run: equal_spectra },
        Criterion { id: 6, name: "Gaussian covariance identities", budget: secs(2), run: gaussian_identities },
        Criterion { id: 7, name: "Fock and Gaussian purity agree", budget: secs(5), run: fock_gaussian_consistency },
        Criterion { id: 8, name: "Weyl symbol suite", budget: secs(60), run: weyl_suite },
        Criterion { id: 9, name: "symbol superposition", budget: secs(120), run: symbol_superposition },
        Criterion { id: 10, name: "tomogram suite", budget: secs(30), run: tomogram_suite },
        Criterion { id: 11, name: "kernel consistency", budget: secs(60), run: kernel_consistency },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= c.budget => format!("PASS {:>2} {}: {detail}", c.id, c.name),
            Ok(detail) => {
                failures += 1;
                format!("FAIL {:>2} {}: over time budget {:?} ({detail})", c.id, c.name, c.budget)
            }
            Err(why) => {
                failures += 1;
                format!("FAIL {:>2} {}: {why}", c.id, c.name)
            }
        };
        println!("{line} [{:.2} s]", elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
