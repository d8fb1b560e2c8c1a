use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{AlgebraElement, Builtin};
use crate::scalar::{rational, Rational, Scalar};

type Q = Rational;

fn space(b: Builtin, n: usize, m: usize) -> Superspace<Q> {
    Superspace::builtin(b, n, m).unwrap()
}

fn cg(g: usize) -> Builtin {
    Builtin::ComplexGrassmann(g)
}

fn el(c: &[i64]) -> AlgebraElement<Q> {
    AlgebraElement::from_ints(c)
}

fn random_point(sp: &Superspace<Q>, rng: &mut ChaCha8Rng) -> SuperPoint<Q> {
    let flat: Vec<Q> = (0..sp.real_dim()).map(|_| rational(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
    SuperPoint::from_flat(sp, &flat).unwrap()
}

fn point(sp: &Superspace<Q>, y: &[&[i64]], theta: &[&[i64]]) -> SuperPoint<Q> {
    SuperPoint::new(sp, y.iter().map(|c| el(c)).collect(), theta.iter().map(|c| el(c)).collect()).unwrap()
}

#[test]
fn flatten_roundtrip_and_layout() {
    let sp = space(cg(1), 2, 1);
    assert_eq!(sp.real_dim(), 6);
    let x = point(&sp, &[&[1, 2, 0, 0], &[3, 4, 0, 0]], &[&[0, 0, 5, 6]]);
    let flat = x.flatten();
    assert_eq!(flat, [1, 2, 3, 4, 5, 6].map(Q::from_i64).to_vec());
    assert_eq!(SuperPoint::from_flat(&sp, &flat).unwrap(), x);
    assert_eq!(sp.coord(4), Coord::Odd { l: 0, t: 1 });
    assert_eq!(sp.odd_coord(0, 2), 5);
    assert!(SuperPoint::new(&sp, vec![el(&[0, 0, 1, 0]), el(&[1, 0, 0, 0])], vec![el(&[0, 0, 1, 0])]).is_err());
}

#[test]
fn slice_variable_examples() {
    let sp = space(cg(1), 0, 1);
    let (t, s) = (sp.table(), sp.slices().unwrap());
    assert_eq!(slice_variable(t, s, &el(&[0, 0, 3, 4]), 0), el(&[3, 4, 0, 0]));
    assert_eq!(slice_variable(t, s, &t.zero(), 0), t.zero());
    assert_eq!(slice_variable(t, s, &t.basis(2), 0), t.unit());
}

#[test]
fn eval_qs_examples() {
    let sp = space(Builtin::Complex, 1, 0);
    let o = SuperPoint::origin(&sp);
    let c = QsPoly::constant(&sp, el(&[2, -7]));
    let x = point(&sp, &[&[1, 1]], &[]);
    assert_eq!(eval_qs(&sp, &c, &x, &o).unwrap(), el(&[2, -7]));
    let y2 = QsPoly::y(&sp, 0).mul(sp.table(), &QsPoly::y(&sp, 0));
    assert_eq!(eval_qs(&sp, &y2, &x, &o).unwrap(), el(&[0, 2]));

    // Z_1(eta) = e_0, so y Z_1 at y = i is i.
    let sp = space(cg(1), 1, 1);
    let f = QsPoly::y(&sp, 0).mul(sp.table(), &QsPoly::z(&sp, 0, 0));
    let x = point(&sp, &[&[0, 1, 0, 0]], &[&[0, 0, 1, 0]]);
    assert_eq!(eval_qs(&sp, &f, &x, &SuperPoint::origin(&sp)).unwrap(), el(&[0, 1, 0, 0]));
}

#[test]
fn qs_to_real_complex_examples() {
    let sp = space(Builtin::Complex, 1, 0);
    let o = SuperPoint::origin(&sp);
    let y = qs_to_real(&sp, &QsPoly::y(&sp, 0), &o).unwrap();
    assert_eq!(y.terms().get(&vec![1, 0]), Some(&el(&[1, 0])));
    assert_eq!(y.terms().get(&vec![0, 1]), Some(&el(&[0, 1])));
    assert_eq!(y.len(), 2);
    let y2 = qs_to_real(&sp, &QsPoly::y(&sp, 0).mul(sp.table(), &QsPoly::y(&sp, 0)), &o).unwrap();
    assert_eq!(y2.terms().get(&vec![2, 0]), Some(&el(&[1, 0])));
    assert_eq!(y2.terms().get(&vec![0, 2]), Some(&el(&[-1, 0])));
    assert_eq!(y2.terms().get(&vec![1, 1]), Some(&el(&[0, 2])));
}

#[test]
fn d_second_examples() {
    let sp = space(Builtin::Complex, 1, 0);
    let o = SuperPoint::origin(&sp);
    let y = QsPoly::y(&sp, 0);
    let y3 = y.mul(sp.table(), &y).mul(sp.table(), &y);
    assert!(d_second(&sp, &qs_to_real(&sp, &y3, &o).unwrap()).iter().all(|(_, g)| g.is_zero()));

    let y1 = RealPoly::coordinate(2, 2, 1);
    let comps = d_second(&sp, &y1);
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].0, Direction::Even { i: 0, j: 1 });
    assert_eq!(comps[0].1, RealPoly::constant(2, el(&[1, 0])));
    assert!(!is_qs_differentiable(&sp, &y1));

    let sp = space(cg(1), 0, 1);
    let z = qs_to_real(&sp, &QsPoly::z(&sp, 0, 0), &SuperPoint::origin(&sp)).unwrap();
    let comps = d_second(&sp, &z);
    assert_eq!(comps.len(), 1);
    assert!(comps[0].1.is_zero());
}

#[test]
fn d_prime_examples() {
    let sp = space(Builtin::Complex, 1, 0);
    let o = SuperPoint::origin(&sp);
    assert!(d_prime(&sp, &RealPoly::constant(2, el(&[3, 1]))).iter().all(|(_, g)| g.is_zero()));
    let y = QsPoly::y(&sp, 0);
    let y2 = qs_to_real(&sp, &y.mul(sp.table(), &y), &o).unwrap();
    let two_y = qs_to_real(&sp, &y.left_mul(sp.table(), &el(&[2, 0])), &o).unwrap();
    assert_eq!(d_prime(&sp, &y2), vec![(PrimeDirection::Y { i: 0 }, two_y)]);
}

#[test]
fn real_to_qs_examples() {
    let sp = space(Builtin::Complex, 1, 0);
    let o = SuperPoint::origin(&sp);
    let y = QsPoly::y(&sp, 0);
    let f = y.mul(sp.table(), &y).mul(sp.table(), &y).add(&y.left_mul(sp.table(), &el(&[2, 0])));
    let real = qs_to_real(&sp, &f, &o).unwrap();
    assert_eq!(real_to_qs(&sp, &real, &o).unwrap(), f);
    assert!(matches!(real_to_qs(&sp, &RealPoly::coordinate(2, 2, 1), &o), Err(crate::Error::NotQs(_))));

    let sp = space(cg(2), 0, 1);
    let o = SuperPoint::origin(&sp);
    let f = QsPoly::z(&sp, 0, 0).mul(sp.table(), &QsPoly::z(&sp, 1, 0));
    let real = qs_to_real(&sp, &f, &o).unwrap();
    assert!(is_qs_differentiable(&sp, &real));
    assert_eq!(real_to_qs(&sp, &real, &o).unwrap(), f);
}

#[test]
fn taylor_examples() {
    let sp = space(Builtin::Complex, 1, 0);
    let o = SuperPoint::origin(&sp);
    let y = QsPoly::y(&sp, 0);
    let real = qs_to_real(&sp, &y.mul(sp.table(), &y), &o).unwrap();
    let b = point(&sp, &[&[2, -1]], &[]);
    let coeffs = taylor_coefficients(&sp, &real, &b, 4).unwrap();
    let bb = sp.table().square(&b.y()[0]);
    assert_eq!(coeffs.terms().get(&vec![0]), Some(&bb));
    assert_eq!(coeffs.terms().get(&vec![1]), Some(&b.y()[0].scale(&Q::from_i64(2))));
    assert_eq!(coeffs.terms().get(&vec![2]), Some(&el(&[1, 0])));
    assert_eq!(coeffs.terms().len(), 3);

    let c = RealPoly::constant(2, el(&[5, 3]));
    assert_eq!(taylor_coefficients(&sp, &c, &b, 3).unwrap(), QsPoly::constant(&sp, el(&[5, 3])));
    assert!(taylor_coefficients(&sp, &RealPoly::coordinate(2, 2, 1), &b, 3).is_err());
}

#[test]
fn laplacian_examples() {
    let sp = space(Builtin::Complex, 1, 0);
    let y = QsPoly::y(&sp, 0);
    let y2 = qs_to_real(&sp, &y.mul(sp.table(), &y), &SuperPoint::origin(&sp)).unwrap();
    assert!(laplacian(&y2).is_zero());
    let y0sq = RealPoly::monomial(vec![2, 0], el(&[1, 0]));
    assert_eq!(laplacian(&y0sq), RealPoly::constant(2, el(&[2, 0])));
}

#[test]
fn fd_d_second_examples() {
    let sp = space(Builtin::Complex, 1, 0).to_f64();
    let x = SuperPoint::from_flat(&sp, &[0.3, -0.7]).unwrap();
    let c = fd_d_second(&sp, |_| AlgebraElement::new(vec![1.5, 2.0]), &x, 1e-3);
    assert!(c.iter().all(|(_, v)| v.is_zero()));
    let c = fd_d_second(&sp, |x| AlgebraElement::new(vec![x.flatten()[1], 0.0]), &x, 1e-3);
    assert!(c[0].1.max_abs_diff(&AlgebraElement::new(vec![1.0, 0.0])) < 1e-9);

    let qsp = space(cg(2), 1, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = QsPoly::random(&qsp, 4, 6, &mut rng).to_f64();
    let fsp = qsp.to_f64();
    let o = SuperPoint::origin(&fsp);
    let x = SuperPoint::from_flat(&fsp, &(0..fsp.real_dim()).map(|a| 0.1 * a as f64 - 0.3).collect::<Vec<_>>()).unwrap();
    for h in [1e-2, 5e-3] {
        let worst = fd_d_second(&fsp, |p| eval_qs(&fsp, &f, p, &o).unwrap(), &x, h)
            .iter()
            .map(|(_, v)| v.norm())
            .fold(0.0, f64::max);
        assert!(worst < 50.0 * h * h, "h = {h}: {worst}");
    }
}

#[test]
fn separately_qs_products_are_qs() {
    let sp = space(Builtin::Complex, 2, 0);
    let o = SuperPoint::origin(&sp);
    let t = sp.table();
    let y1 = QsPoly::y(&sp, 0);
    let y2 = QsPoly::y(&sp, 1);
    let f = y1.mul(t, &y1).mul(t, &y2).add(&y2.left_mul(t, &el(&[0, 3])));
    let real = qs_to_real(&sp, &f, &o).unwrap();
    assert!(is_separately_qs(&sp, &real));
    assert!(is_qs_differentiable(&sp, &real));
    let mixed = real.add(&RealPoly::coordinate(4, 2, 3));
    assert!(!is_separately_qs(&sp, &mixed));
    assert!(d_second_block(&sp, &mixed, Block::Even(0)).iter().all(|(_, g)| g.is_zero()));
}

#[test]
fn form_differentials_square_to_zero() {
    let sp = space(cg(2), 1, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = sp.real_dim();
    for _ in 0..3 {
        let mut f = RealPoly::zero(n, sp.table().dim());
        for _ in 0..5 {
            let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=1)).collect();
            let c = (0..sp.table().dim()).map(|_| Q::from_i64(rng.gen_range(-2..=2))).collect();
            f.add_term(exps, AlgebraElement::new(c));
        }
        let w = PolyForm::function(f);
        assert!(w.d_second(&sp).d_second(&sp).is_zero());
        assert!(w.d_prime(&sp).d_prime(&sp).is_zero());
        assert!(w.d_prime(&sp).d_second(&sp).add(&w.d_second(&sp).d_prime(&sp)).is_zero());
        assert_eq!(w.d_prime(&sp).add(&w.d_second(&sp)), w.d());
    }
}

#[test]
fn wedge_front_signs() {
    assert_eq!(wedge_front(0, &[1]), Some((1, vec![0, 1])));
    assert_eq!(wedge_front(2, &[0, 1]), Some((1, vec![0, 1, 2])));
    assert_eq!(wedge_front(1, &[0, 2]), Some((-1, vec![0, 1, 2])));
    assert_eq!(wedge_front(1, &[1]), None);
}

#[test]
fn even_leader_fixture_satisfies_a1() {
    let (t, s) = crate::fixtures::even_leader_grassmann();
    let report = crate::conditions::verify_a1(&t, &crate::conditions::standard_odd_basis(&t), &s).unwrap();
    assert!(report.pass, "{report:?}");
    assert!(crate::algebra::validate(&t).all_pass());
    let sp = Superspace::new(t, Some(s), 0, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = QsPoly::random(&sp, 3, 4, &mut rng);
    let real = qs_to_real(&sp, &f, &SuperPoint::origin(&sp)).unwrap();
    assert!(is_qs_differentiable(&sp, &real));
    assert!(laplacian(&real).is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn eval_commutes_with_expansion(seed in any::<u64>(), which in 0usize..3) {
        let (b, n, m) = [(Builtin::Complex, 2, 0), (cg(1), 1, 1), (cg(2), 1, 1)][which];
        let sp = space(b, n, m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = QsPoly::random(&sp, 3, 5, &mut rng);
        let c = random_point(&sp, &mut rng);
        let x = random_point(&sp, &mut rng);
        let real = qs_to_real(&sp, &f, &c).unwrap();
        prop_assert_eq!(eval_qs(&sp, &f, &x, &c).unwrap(), real.eval(&x.flatten()));
        prop_assert!(is_qs_differentiable(&sp, &real));
    }

    #[test]
    fn products_of_qs_are_qs(seed in any::<u64>()) {
        let sp = space(cg(2), 1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = SuperPoint::origin(&sp);
        let f = qs_to_real(&sp, &QsPoly::random(&sp, 2, 3, &mut rng), &o).unwrap();
        let g = qs_to_real(&sp, &QsPoly::random(&sp, 2, 3, &mut rng), &o).unwrap();
        prop_assert!(is_qs_differentiable(&sp, &f.mul(sp.table(), &g)));
    }

    #[test]
    fn double_recentering_roundtrip(seed in any::<u64>()) {
        let sp = space(cg(1), 1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = QsPoly::random(&sp, 4, 5, &mut rng);
        let c0 = random_point(&sp, &mut rng);
        let c1 = random_point(&sp, &mut rng);
        let real = qs_to_real(&sp, &f, &c0).unwrap();
        let moved = taylor_coefficients(&sp, &real, &c1, 4).unwrap();
        let back = taylor_coefficients(&sp, &qs_to_real(&sp, &moved, &c1).unwrap(), &c0, 4).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn harmonic_over_a0_a1(seed in any::<u64>()) {
        let sp = space(cg(2), 1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = QsPoly::random(&sp, 4, 5, &mut rng);
        let c = random_point(&sp, &mut rng);
        prop_assert!(laplacian(&qs_to_real(&sp, &f, &c).unwrap()).is_zero());
    }
}
