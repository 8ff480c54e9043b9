use caustics_core::exact_core::rational::{int, rat};
use caustics_core::exact_core::{
    min_cos_poly, multiple_angle, AlgebraicCos, CosField, PolyQ, SeriesTrig, TrigPoly,
};
use caustics_core::rigidity_system::automorphism_orbit_check;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = (i64, i64)> {
    (-6i64..=6, 1i64..=5)
}

fn trig() -> impl Strategy<Value = TrigPoly> {
    (
        small_rat(),
        prop::collection::vec((1u32..=4, small_rat(), any::<bool>()), 0..4),
    )
        .prop_map(|((cn, cd), terms)| {
            let mut t = TrigPoly::constant(rat(cn, cd));
            for (n, (a, b), is_cos) in terms {
                let term = if is_cos {
                    TrigPoly::cos(n, rat(a, b))
                } else {
                    TrigPoly::sin(n, rat(a, b))
                };
                t = t.add(&term);
            }
            t
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trig_product_commutes_and_associates(x in trig(), y in trig(), z in trig()) {
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(&xy, &y.mul(&x).unwrap());
        prop_assert_eq!(xy.mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        let lhs = x.mul(&y.add(&z)).unwrap();
        prop_assert_eq!(lhs, xy.add(&x.mul(&z).unwrap()));
    }

    #[test]
    fn trig_product_matches_pointwise(x in trig(), y in trig(), t in -3.0f64..3.0) {
        let p = x.mul(&y).unwrap();
        prop_assert!((p.eval(t) - x.eval(t) * y.eval(t)).abs() < 1e-9);
    }

    #[test]
    fn derivative_undoes_integral(x in trig()) {
        let x0 = x.sub(&TrigPoly::constant(x.constant_term().clone()));
        prop_assert_eq!(x0.integrate().unwrap().derivative(), x0);
    }

    #[test]
    fn automorphisms_compose(qi in 0usize..4, r in 1u64..13, s in 1u64..13, cs in prop::collection::vec(-4i64..=4, 1..6)) {
        let q = [5u64, 7, 11, 13][qi];
        prop_assume!(r % q != 0 && s % q != 0);
        let field = CosField::new(q).unwrap();
        let x = AlgebraicCos::from_poly(&field, &PolyQ::from_ints(&cs));
        let lhs = x.apply_automorphism(s).unwrap().apply_automorphism(r).unwrap();
        let rhs = x.apply_automorphism((r * s) % q).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let y = AlgebraicCos::cos_2pi(&field, 1).add(&x);
        let ring = x.mul(&y).apply_automorphism(r).unwrap();
        prop_assert_eq!(ring, x.apply_automorphism(r).unwrap().mul(&y.apply_automorphism(r).unwrap()));
    }

    #[test]
    fn series_inversion_round_trip(
        order in 1usize..=8,
        seeds in prop::collection::vec((1u32..=3, small_rat()), 1..4),
    ) {
        let mut coeffs = vec![TrigPoly::angle(int(1))];
        for (i, (n, (a, b))) in seeds.iter().cycle().take(order).enumerate() {
            let term = if i % 2 == 0 { TrigPoly::sin(*n, rat(*a, *b)) } else { TrigPoly::cos(*n, rat(*a, *b)) };
            coeffs.push(term);
        }
        let f = SeriesTrig::with_order(coeffs, order);
        let g = f.invert().unwrap();
        prop_assert_eq!(f.compose(&g).unwrap(), SeriesTrig::identity(order));
        prop_assert_eq!(g.compose(&f).unwrap(), SeriesTrig::identity(order));
    }
}

#[test]
fn chebyshev_recurrence_and_nesting() {
    let two_z = PolyQ::from_ints(&[0, 2]);
    let t: Vec<PolyQ> = (0..=65).map(multiple_angle).collect();
    for r in 1..=64 {
        assert_eq!(t[r + 1], &(&two_z * &t[r]) - &t[r - 1], "T_{}", r + 1);
        assert_eq!(t[r].eval(&int(1)), int(1));
        for x in [0.3f64, -0.8].into_iter().filter(|_| r <= 20) {
            assert!((t[r].eval_f64(x) - (r as f64 * x.acos()).cos()).abs() < 1e-9);
        }
    }
    for (r, s) in [(2, 3), (3, 5), (4, 7), (6, 9)] {
        assert_eq!(t[r].compose(&t[s]), t[r * s]);
    }
}

#[test]
fn minimal_polynomials_vanish_on_all_roots() {
    for q in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let psi = min_cos_poly(q).unwrap();
        assert_eq!(psi.degree(), Some(((q - 1) / 2) as usize));
        for p in 1..q {
            let image = psi.compose_mod(&multiple_angle(p), &psi).unwrap();
            assert!(image.is_zero(), "Psi_{q} at cos(2 pi {p}/{q})");
            let x = (2.0 * std::f64::consts::PI * p as f64 / q as f64).cos();
            assert!(psi.eval_f64(x).abs() < 1e-9);
        }
    }
    assert!(min_cos_poly(15).is_err());
}

#[test]
fn automorphism_orbits_cover_every_pair() {
    for q in [5u64, 7, 11, 13] {
        for p1 in 1..q {
            for p2 in 1..q {
                assert!(
                    automorphism_orbit_check(q, p1, p2, 1).unwrap(),
                    "q={q} p1={p1} p2={p2}"
                );
            }
        }
    }
}
