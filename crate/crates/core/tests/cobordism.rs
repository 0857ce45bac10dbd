use quotk::algebra::{rat, JetContext, Series};
use quotk::geometry::cobordism::{a_series, pontryagin_closed, pontryagin_genus};

#[test]
fn pontryagin_matches_closed_form() {
    let jctx = JetContext::new(&["y"], &[6]);
    let g = pontryagin_genus(&jctx, 14);
    let a = a_series(&g, 12).unwrap();
    let c = pontryagin_closed(&jctx, 12).unwrap();
    assert!(a.agrees_with(&c), "{a:?}\n{c:?}");
    let a0 = a.monomial_part(&[1]);
    assert_eq!(a0.coeff(2), rat(-3));
    assert_eq!(a.monomial_part(&[2]).coeff(4), rat(-1));
    let _ = Series::<quotk::algebra::Rat>::zero(&(), 1);
}
