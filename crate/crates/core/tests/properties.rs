use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sqt::conditions::{check_3qubit, check_general, classify_zha};
use sqt::families::{self, random_state};
use sqt::protocol::{
    average_fidelity_mc, haar_random_info, haar_random_info_seeded, outcome_table, InfoQubit, Teleporter,
};
use sqt::schmidt::{
    concurrence, concurrence_oracle, maf, rotation_roots, schmidt_form, split_by_receiver, SchmidtForm,
};
use sqt::statevec::invert_permutation;
use sqt::{Qubit2x2, StateVector};

/// e^{iα} Rz(β) Ry(γ) Rz(δ)
fn unitary(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Qubit2x2 {
    let e = |x: f64| Complex64::from_polar(1.0, x);
    let (c, s) = ((gamma / 2.0).cos(), (gamma / 2.0).sin());
    Qubit2x2::new([
        [e(alpha - beta / 2.0 - delta / 2.0) * c, -e(alpha - beta / 2.0 + delta / 2.0) * s],
        [e(alpha + beta / 2.0 - delta / 2.0) * s, e(alpha + beta / 2.0 + delta / 2.0) * c],
    ])
}

fn angle() -> impl Strategy<Value = f64> {
    -std::f64::consts::PI..std::f64::consts::PI
}

fn state() -> impl Strategy<Value = StateVector> {
    (2usize..=4, any::<u64>()).prop_map(|(n, seed)| random_state(n, seed).unwrap())
}

fn state_and_bob() -> impl Strategy<Value = (StateVector, usize)> {
    state().prop_flat_map(|s| {
        let n = s.num_qubits();
        (Just(s), 0..n)
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn unitaries_preserve_norm(
        (s, q) in state_and_bob(),
        a in angle(), b in angle(), g in angle(), d in angle(),
    ) {
        let u = unitary(a, b, g, d);
        prop_assert!(u.is_unitary());
        let t = s.apply_one_qubit(q, &u).unwrap();
        prop_assert!((t.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn self_overlap_is_one(s in state()) {
        let v = s.inner(&s).unwrap();
        prop_assert!(v.im.abs() < 1e-15);
        prop_assert!((v.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inner_is_conjugate_symmetric(seed in any::<u64>(), n in 1usize..=4) {
        let x = random_state(n, seed).unwrap();
        let y = random_state(n, seed.wrapping_add(1)).unwrap();
        let xy = x.inner(&y).unwrap();
        let yx = y.inner(&x).unwrap();
        prop_assert!((xy - yx.conj()).norm() < 1e-15);
    }

    #[test]
    fn permutation_round_trip_is_exact(
        (s, perm) in state().prop_flat_map(|s| { let n = s.num_qubits(); (Just(s), permutation(n)) })
    ) {
        let inv = invert_permutation(&perm).unwrap();
        let back = s.permute_qubits(&perm).unwrap().permute_qubits(&inv).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn reduced_density_is_a_state((s, q) in state_and_bob()) {
        let rho = s.reduced_density_one(q).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
        let [lo, hi] = rho.eigenvalues();
        prop_assert!(lo >= -1e-12 && hi <= 1.0 + 1e-12);
        let m = rho.entries();
        prop_assert!((m[0][1] - m[1][0].conj()).norm() < 1e-15);
    }

    #[test]
    fn tensor_factor_keeps_its_density(x_seed in any::<u64>(), y_seed in any::<u64>(), n in 1usize..=3) {
        let x = random_state(1, x_seed).unwrap();
        let y = random_state(n, y_seed).unwrap();
        let joint = x.tensor(&y).unwrap();
        let own = x.reduced_density_one(0).unwrap();
        let got = joint.reduced_density_one(0).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                prop_assert!((own.entries()[i][j] - got.entries()[i][j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn concurrence_is_permutation_covariant(
        ((s, bob), perm) in state_and_bob().prop_flat_map(|(s, b)| { let n = s.num_qubits(); (Just((s, b)), permutation(n)) })
    ) {
        let moved = s.permute_qubits(&perm).unwrap();
        let c0 = concurrence(&s, bob).unwrap();
        let c1 = concurrence(&moved, perm[bob]).unwrap();
        prop_assert!((c0 - c1).abs() < 1e-12);
        let v0 = check_general(&s, bob, 1e-9).unwrap();
        let v1 = check_general(&moved, perm[bob], 1e-9).unwrap();
        prop_assert!((v0.residual_balance - v1.residual_balance).abs() < 1e-12);
        prop_assert!((v0.residual_overlap - v1.residual_overlap).abs() < 1e-12);
    }

    #[test]
    fn both_rotation_roots_give_the_same_concurrence((s, bob) in state_and_bob()) {
        let split = split_by_receiver(&s, bob).unwrap();
        let roots = rotation_roots(&split).expect("random states have K != 0");
        let forms = roots.map(|z| SchmidtForm::from_split(&split, z));
        prop_assert!((forms[0].concurrence - forms[1].concurrence).abs() < 1e-10);
        for f in &forms {
            prop_assert!(f.branch_overlap() < 1e-10);
        }
        // The chosen root is the one ordering the weights.
        let chosen = schmidt_form(&s, bob).unwrap();
        prop_assert!(chosen.abar >= chosen.bbar);
    }

    #[test]
    fn maf_is_monotone(c0 in 0.0f64..=1.0, c1 in 0.0f64..=1.0) {
        let (m0, m1) = (maf(c0).unwrap(), maf(c1).unwrap());
        prop_assert!((2.0 / 3.0..=1.0).contains(&m0));
        if c0 < c1 {
            prop_assert!(m0 < m1);
        }
    }

    #[test]
    fn probabilities_sum_to_one((s, bob) in state_and_bob(), seed in any::<u64>()) {
        let form = schmidt_form(&s, bob).unwrap();
        let info = haar_random_info_seeded(seed);
        let total: f64 = outcome_table(&info, &form).iter().map(|o| o.prob).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_info_is_normalized(seed in any::<u64>()) {
        let info = haar_random_info_seeded(seed);
        prop_assert!((info.a.norm_sqr() + info.b.norm_sqr() - 1.0).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn schmidt_form_is_orthogonal_and_reconstructs((s, bob) in state_and_bob()) {
        let f = schmidt_form(&s, bob).unwrap();
        prop_assert!(f.branch_overlap() < 1e-10);
        prop_assert!((f.abar * f.abar + f.bbar * f.bbar - 1.0).abs() < 1e-10);
        prop_assert!(f.reconstruct().unwrap().distance_up_to_phase(&s).unwrap() < 1e-10);
        prop_assert!((f.concurrence - concurrence_oracle(&s, bob).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn near_degenerate_overlap_with_light_zero_branch() {
    // A < B and K tiny: the ordering root is large.
    for eps in [1e-4f64, 1e-8, 1e-11] {
        let a = 0.3f64;
        let b = (1.0 - a * a).sqrt();
        // |ψ0⟩ = |00⟩, |ψ1⟩ = √(1−ε²)|11⟩ + ε|00⟩
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0b000] = Complex64::new(a, 0.0);
        amps[0b111] = Complex64::new(b * (1.0 - eps * eps).sqrt(), 0.0);
        amps[0b001] = Complex64::new(b * eps, 0.0);
        let s = StateVector::new(3, amps).unwrap();
        let f = schmidt_form(&s, 2).unwrap();
        assert!(f.branch_overlap() < 1e-10, "eps {eps}: overlap {}", f.branch_overlap());
        assert!(f.reconstruct().unwrap().distance_up_to_phase(&s).unwrap() < 1e-10);
        assert!((f.concurrence - concurrence_oracle(&s, 2).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn simulation_matches_table() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100u64 {
        let n = 2 + (i % 3) as usize;
        let resource = random_state(n, 10_000 + i).unwrap();
        let bob = (i as usize * 7) % n;
        let info = haar_random_info(&mut rng);
        let sim = Teleporter::new(&resource, bob).unwrap();
        let table = outcome_table(&info, sim.form());
        let run = sim.run(&info, &mut rng).unwrap();
        let r = run.outcome.r;
        assert!((run.outcome.fidelity - table[r].fidelity).abs() < 1e-12, "triple {i}");
        for (k, rec) in table.iter().enumerate() {
            assert!((run.probabilities[k] - rec.prob).abs() < 1e-12, "triple {i}, outcome {k}");
        }
        // Bob's state before correction agrees with the closed form up to phase.
        let closed = table[r].bob_state.as_ref().unwrap();
        let got = run.outcome.bob_state.as_ref().unwrap();
        assert!(closed.distance_up_to_phase(got).unwrap() < 1e-10);
    }
}

#[test]
fn perfect_resources_teleport_perfectly() {
    let resources = [
        families::ghz(4).unwrap(),
        families::separable_branch(0.2, 0.6).unwrap(),
        families::zha_counterexample(0.1, 0.6, 2.0, -1.0, 0.5).unwrap(),
    ];
    for (i, resource) in resources.iter().enumerate() {
        let bob = resource.num_qubits() - 1;
        let sim = Teleporter::new(resource, bob).unwrap();
        assert!((sim.form().concurrence - 1.0).abs() < 1e-12);
        for seed in 0..20 {
            let info = haar_random_info_seeded(seed);
            for r in 0..4 {
                let run = sim.run_outcome(&info, r).unwrap();
                assert!((run.outcome.fidelity - 1.0).abs() < 1e-10, "resource {i}, r {r}");
            }
        }
    }
}

#[test]
fn born_rule_frequencies() {
    let resource = families::w_standard();
    let info = InfoQubit::new(Complex64::new(0.8, 0.0), Complex64::new(0.0, 0.6)).unwrap();
    let sim = Teleporter::new(&resource, 2).unwrap();
    let table = outcome_table(&info, sim.form());
    let runs = 100_000;
    let mut counts = [0usize; 4];
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..runs {
        counts[sim.run(&info, &mut rng).unwrap().outcome.r] += 1;
    }
    for r in 0..4 {
        let p = table[r].prob;
        let sigma = (p * (1.0 - p) / runs as f64).sqrt();
        let freq = counts[r] as f64 / runs as f64;
        assert!((freq - p).abs() < 4.0 * sigma, "outcome {r}: {freq} vs {p}");
    }
}

#[test]
fn three_qubit_and_general_checks_agree() {
    for seed in 0..1000u64 {
        let s = random_state(3, 50_000 + seed).unwrap();
        for bob in 0..3 {
            let g = check_general(&s, bob, 1e-9).unwrap();
            let t = check_3qubit(&s, bob, 1e-9).unwrap();
            assert_eq!(g.verdict, t.verdict, "seed {seed}, bob {bob}");
        }
    }
}

#[test]
fn perfect_family_members_reach_unit_average_fidelity() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let members = [
        families::separable_branch(0.5, 0.3).unwrap(),
        families::entangled_branch(0.3, 0.4, 1.1, 0.5).unwrap(),
        families::acin_canonical([0.5, 0.0, 0.3, 0.4, h], 0.3).unwrap(),
        families::w_general(0.5.into(), 0.5.into(), h.into()).unwrap(),
        families::zha_counterexample(0.4, 0.3, 0.1, 0.2, 0.3).unwrap(),
    ];
    for (i, s) in members.iter().enumerate() {
        assert!(check_general(s, 2, 1e-9).unwrap().verdict, "member {i}");
        let est = average_fidelity_mc(s, 2, 20_000, i as u64).unwrap();
        assert!((est.mean - 1.0).abs() < 5e-3, "member {i}: {}", est.mean);
    }
}

#[test]
fn w_family_fidelity_drops_with_imbalance() {
    // |B|² + |C|² = x, |E|² = 1 − x; perfect only at x = 1/2.
    let mut last_gap = 0.0;
    for x in [0.5, 0.55, 0.6, 0.7, 0.8, 0.9] {
        let bc = (x / 2.0f64).sqrt();
        let s = families::w_general(bc.into(), bc.into(), (1.0 - x).sqrt().into()).unwrap();
        let v = check_general(&s, 2, 1e-9).unwrap();
        let est = average_fidelity_mc(&s, 2, 50_000, 3).unwrap();
        let gap = 1.0 - est.mean;
        if x == 0.5 {
            assert!(v.verdict);
            assert!(gap.abs() < 1e-12);
        } else {
            assert!(!v.verdict && v.residual_balance > 10.0 * 1e-9);
            assert!(gap > last_gap, "x = {x}: gap {gap} after {last_gap}");
            // (2+C)/3 with C = 2√(x(1−x)).
            let c = 2.0 * (x * (1.0 - x)).sqrt();
            assert!((est.mean - maf(c).unwrap()).abs() < 5e-3);
        }
        last_gap = gap;
    }
}

#[test]
fn zha_members_pass_the_amplitude_check() {
    let cases = [
        ([0.5, 0.0, 0.3, 0.4, std::f64::consts::FRAC_1_SQRT_2], 0.0),
        ([0.2, 0.0, 0.6, (0.5f64 - 0.04 - 0.36).sqrt(), std::f64::consts::FRAC_1_SQRT_2], 1.3),
        ([0.0, 0.5, 0.3, (0.5f64 - 0.09).sqrt(), 0.5], 0.0),
        ([0.0, 0.1, 0.7, (0.5f64 - 0.49).sqrt(), (0.5f64 - 0.01).sqrt()], -0.4),
    ];
    for (kappa, theta) in cases {
        let r = classify_zha(kappa, theta, 1e-9).unwrap();
        assert!(r.verdict, "{kappa:?}");
        assert!(r.state_check.verdict, "{kappa:?}");
    }
}
