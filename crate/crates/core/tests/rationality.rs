use quotk::algebra::{rat, Poly, Series};
use quotk::geometry::cobordism::pontryagin_at;
use quotk::geometry::ClosedForm;
use quotk::rationality::{fit_rational, FitOutcome, FitRequest};

#[test]
fn fits() {
    let s = Series::from_ints(&[1; 14], 14);
    let f = fit_rational(&FitRequest::new(&s, 4, 4)).unwrap();
    let f = f.fit().unwrap();
    assert_eq!(f.num, Poly::one());
    assert_eq!(f.den, Poly::from_ints(&[1, -1]));
    let t = ClosedForm::Taut1 { k2: 0, c1k: 0, rank: 0 }.evaluate(12).unwrap();
    let _ = t;
    let taut = ClosedForm::Taut1 { k2: 1, c1k: 1, rank: 1 }.evaluate(16).unwrap();
    let f = fit_rational(&FitRequest::new(&taut, 4, 4)).unwrap();
    let f = f.fit().unwrap();
    assert_eq!(f.pole_order_at_one(), (2, true));
    assert_eq!(f.num, Poly::from_ints(&[-1]));
    assert_eq!(f.shift, 1);
}

#[test]
fn pontryagin_irrational() {
    let a = pontryagin_at(&rat(1), 25).unwrap();
    let out = fit_rational(&FitRequest::new(&a, 8, 8)).unwrap();
    assert_eq!(out, FitOutcome::NoFit { deg_num: 8, deg_den: 8 });
}
