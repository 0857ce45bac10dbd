use quotk::algebra::{rat, reversion, JetContext, Series};
use quotk::geometry::cobordism::{p_ell_series, p_series, pontryagin_genus};
use quotk::oracle::{f_symmetry, lagrange_oracle, p_ell_oracle, p_oracle, partitions, w_star_check, EvalPoint};

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=8).map(|n| partitions(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    for n in 0..=8 {
        for l in partitions(n) {
            assert_eq!(l.tangent_weights().len(), 2 * n);
        }
    }
}

#[test]
fn symmetry_points() {
    for k in 0..3 {
        let pt = EvalPoint::nth(11, k);
        let r = f_symmetry(4, &pt).unwrap();
        assert!(r.holds, "{r:?}");
    }
    assert!(f_symmetry(4, &EvalPoint::standard()).unwrap().holds);
}

#[test]
fn w_star() {
    let r = w_star_check(&EvalPoint::standard(), 4).unwrap();
    assert!(r.holds(), "{r:?}");
    let r = w_star_check(&EvalPoint::nth(3, 0), 5).unwrap();
    assert!(r.holds(), "{r:?}");
    let mut p = EvalPoint::standard();
    p.y = rat(0);
    let r = w_star_check(&p, 5).unwrap();
    assert!(r.holds(), "{r:?}");
}

#[test]
fn lagrange_and_p() {
    let phi = Series::from_ints(&[1, -1], 10).inverse().unwrap();
    assert!(lagrange_oracle(&phi, 10).unwrap().agrees_with(&reversion(&phi).unwrap()));
    let jctx = JetContext::new(&["y"], &[5]);
    let g = pontryagin_genus(&jctx, 12);
    assert!(p_oracle(&g, 10).agrees_with(&p_series(&g, 10).unwrap()));
    for ell in [-1, 2] {
        assert!(p_ell_oracle(&g, ell, 10).unwrap().agrees_with(&p_ell_series(&g, ell, 10).unwrap()));
    }
    let _ = rat(0);
}
