use caustics_core::coeff_engine::{beta, xi_closed, BetaTable, XiEngine};
use caustics_core::elliptic_geom::{
    beta21_numeric, lambda_of_omega, orbit, rotation_number, tangent_launch, EllipseParams,
};
use caustics_core::exact_core::binomial;
use caustics_core::exact_core::rational::{pow2, rat, to_f64};
use caustics_core::prime_select::{is_a_good, is_b_good, smoothness_constants};
use caustics_core::rigidity_system::{
    admissible, build_odd_row, h_bound, is_prime_step, kernel_dim, numeric_kappa, odd_row_ids,
    run_reduction, scaling_chain_check, Parity, RigiditySystem,
};

#[test]
fn beta_table_frozen() {
    let t = BetaTable::compute(4);
    let want: [((u32, u32), (i64, i64)); 10] = [
        ((1, 1), (1, 8)),
        ((2, 1), (1, 16)),
        ((2, 2), (1, 256)),
        ((3, 1), (83, 2048)),
        ((3, 2), (1, 256)),
        ((3, 3), (1, 6144)),
        ((4, 1), (121, 4096)),
        ((4, 2), (29, 8192)),
        ((4, 3), (1, 4096)),
        ((4, 4), (1, 131072)),
    ];
    for ((j, l), (n, d)) in want {
        assert_eq!(t.get(j, l).unwrap(), &rat(n, d), "beta({j},{l})");
        assert_eq!(beta(j, l).unwrap(), rat(n, d));
    }
    assert!(beta(2, 3).is_err());
}

#[test]
fn xi_values_frozen() {
    let e = XiEngine::new(3);
    let cases: [(u32, i64, u64, (i64, i64)); 8] = [
        (2, 1, 1, (1, 32)),
        (3, 1, 1, (41, 2048)),
        (3, -1, 3, (-15, 256)),
        (3, 1, 5, (85, 1024)),
        (2, 0, 5, (-25, 256)),
        (3, -1, 5, (-365, 4096)),
        (2, -2, 1, (0, 1)),
        (3, -3, 3, (-1, 4096)),
    ];
    for (j, l, k, (n, d)) in cases {
        assert_eq!(e.xi(j, l, k).unwrap(), rat(n, d), "xi({j},{l})({k})");
    }
    assert_eq!(e.xi(3, 3, 5).unwrap(), rat(35, 4096));
}

/// The diagonal transport coefficient at `k = 2K+1-2j` rescaled by `2^{4j}`
/// is the integer weight of `x_{2K+1-2j}` in the odd rows.
#[test]
fn transport_coefficients_feed_rows() {
    for big_k in 2..=5u64 {
        for j in 1..=big_k.min(3) as u32 {
            let k = 2 * big_k + 1 - 2 * j as u64;
            let xi = xi_closed(j, j as i64, k).unwrap();
            assert_eq!(
                xi / pow2(-4 * j as i64),
                binomial(2 * big_k - j as u64, j as i64)
            );
        }
        assert!(scaling_chain_check(big_k, 1, 1).unwrap());
    }
    let row = build_odd_row(3, 1, 1).unwrap();
    assert_eq!(row.coeff(1).as_rational(), Some(binomial(3, 3)));
}

#[test]
fn bounds_come_from_the_constants() {
    for (q0, parity, want) in [
        (3, Parity::Odd, 3),
        (5, Parity::Odd, 6),
        (5, Parity::Even, 11),
    ] {
        assert_eq!(h_bound(q0, parity).unwrap(), want);
    }
    let c = smoothness_constants(5).unwrap();
    assert_eq!(c.m5, Some(11));
    assert!(is_a_good(11, 5).unwrap() && is_b_good(11, 5).unwrap());
    assert!(is_prime_step(Parity::Even, 5, 11).unwrap());
    assert!(!is_prime_step(Parity::Even, 5, 7).unwrap());
    assert!(is_prime_step(Parity::Odd, 5, 6).unwrap());
}

#[test]
fn exact_and_numeric_kernels_agree() {
    for h in 2..=3 {
        let sys = RigiditySystem::build(3, Parity::Odd, 2, h).unwrap();
        assert_eq!(
            kernel_dim(&sys).kappa,
            numeric_kappa(3, Parity::Odd, 2, h, false).unwrap()
        );
    }
    for h in 3..=7 {
        let sys = RigiditySystem::build(5, Parity::Even, 2, h).unwrap();
        assert_eq!(
            kernel_dim(&sys).kappa,
            numeric_kappa(5, Parity::Even, 2, h, false).unwrap(),
            "h={h}"
        );
    }
}

/// Rows left out for their cosine field only ever make the numeric kernel
/// smaller, so the exact count is an upper bound.
#[test]
fn excluded_rows_only_shrink_kernel() {
    for h in 6..=8 {
        let sys = RigiditySystem::build(5, Parity::Even, 2, h).unwrap();
        assert!(!sys.excluded.is_empty());
        let with = numeric_kappa(5, Parity::Even, 2, h, true).unwrap();
        assert!(with <= kernel_dim(&sys).kappa);
    }
}

#[test]
fn certificate_steps_are_consistent() {
    let c = run_reduction(5, Parity::Odd, 2, None).unwrap();
    for s in &c.steps {
        let sys = RigiditySystem::build(5, Parity::Odd, 2, s.h).unwrap();
        assert_eq!(sys.rows.len(), s.rows);
        assert_eq!(sys.variables().len(), s.variables);
        let admitted = odd_row_ids(s.h)
            .into_iter()
            .filter(|id| admissible(id, 5, 2))
            .count();
        assert!(admitted <= s.rows);
    }
    let w = c.witness.unwrap();
    assert!(w.determinant_numeric.parse::<f64>().unwrap().abs() > 0.0);
}

#[test]
fn numeric_expansion_matches_exact_coefficient() {
    let exact = to_f64(&beta(2, 1).unwrap());
    let fit = beta21_numeric(1e-2, 0.5).unwrap();
    assert!((fit - exact).abs() < 1e-6 * exact);
    let ell = EllipseParams::unit(0.2).unwrap();
    let omega = 0.2;
    let lambda = lambda_of_omega(omega, &ell).unwrap();
    let rays = orbit(tangent_launch(1.0, lambda, &ell).unwrap(), 5, &ell).unwrap();
    let p0 = ell.point(rays[0].phi);
    let p5 = ell.point(rays[5].phi);
    assert!((p0[0] - p5[0]).hypot(p0[1] - p5[1]) < 1e-9);
    assert!((rotation_number(lambda, &ell).unwrap() - omega).abs() < 1e-12);
}
