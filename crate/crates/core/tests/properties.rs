use num_traits::Zero;
use proptest::prelude::*;
use quotk::algebra::{rat, reversion, Poly, Rat, Series};
use quotk::oracle::{partitions, Partition};
use quotk::rationality::{fit_rational, FitRequest, RationalFn};
use quotk::roots::{hensel_factor, QuotientRing, SeriesPoly};

const T: i64 = 8;

fn ints(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, len)
}

fn series(len: usize) -> impl Strategy<Value = Series<Rat>> {
    ints(len).prop_map(|c| Series::from_ints(&c, T))
}

fn no_constant(len: usize) -> impl Strategy<Value = Series<Rat>> {
    ints(len).prop_map(|mut c| {
        c[0] = 0;
        Series::from_ints(&c, T)
    })
}

fn poly_mul(a: &SeriesPoly<Rat>, b: &SeriesPoly<Rat>) -> SeriesPoly<Rat> {
    let mut out = vec![Series::zero(&(), T); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_series(&x.mul_series(y));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn series_ring_axioms(a in series(6), b in series(6), c in series(6)) {
        prop_assert_eq!(a.mul_series(&b), b.mul_series(&a));
        prop_assert_eq!(a.mul_series(&b).mul_series(&c), a.mul_series(&b.mul_series(&c)));
        prop_assert_eq!(
            a.add_series(&b).mul_series(&c),
            a.mul_series(&c).add_series(&b.mul_series(&c))
        );
        prop_assert!(a.sub_series(&a).is_zero_to_precision());
    }

    #[test]
    fn inverse_is_two_sided(mut c in ints(6)) {
        c[0] = if c[0] == 0 { 1 } else { c[0] };
        let a = Series::from_ints(&c, T);
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.mul_series(&inv), Series::one(&(), T));
    }

    #[test]
    fn exp_log_roundtrip(a in no_constant(6)) {
        let e = a.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), a.clone());
        let one_plus = Series::one(&(), T).add_series(&a);
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
    }

    #[test]
    fn reversion_solves_fixed_point(mut c in ints(6)) {
        c[0] = if c[0] == 0 { -1 } else { c[0] };
        let phi = Series::from_ints(&c, T);
        let x = reversion(&phi).unwrap();
        let rhs = phi.compose(&x).unwrap().shift(1);
        prop_assert!(x.agrees_with(&rhs));
        prop_assert!(x.trunc() > T);
    }

    #[test]
    fn hensel_recovers_monic_factor(
        e0 in (-3i64..=3, -3i64..=3),
        tails in (ints(4), ints(4)),
        h in (ints(4), ints(4)),
    ) {
        // the cofactor is 1 mod q, so the resultant is a unit
        let lift = |c0: i64, tail: &[i64]| {
            let mut v = vec![c0];
            v.extend_from_slice(tail);
            Series::from_ints(&v, T)
        };
        let p_asc: SeriesPoly<Rat> = vec![lift(e0.1, &tails.1), lift(e0.0, &tails.0), Series::one(&(), T)];
        let cof: SeriesPoly<Rat> = vec![lift(1, &h.0), lift(0, &h.1)];
        let g = poly_mul(&p_asc, &cof);
        let g0 = [rat(e0.1), rat(e0.0), rat(1)];
        match hensel_factor(&g, 2, &g0) {
            Ok(f) => {
                prop_assert_eq!(&f.p.e[0], &p_asc[1]);
                prop_assert_eq!(&f.p.e[1], &p_asc[0]);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn power_sums_match_traces(e in ints(3)) {
        let mut modulus: Vec<Rat> = e.iter().rev().map(|&x| rat(x)).collect();
        modulus.push(rat(1));
        let ring = QuotientRing::new(modulus, ());
        let p = ring.power_sums(7);
        for (k, pk) in p.iter().enumerate() {
            let mut mono = vec![rat(0); k + 1];
            mono[k] = rat(1);
            prop_assert_eq!(&ring.trace(&ring.from_poly(&mono)), pk);
        }
    }

    #[test]
    fn rational_fit_roundtrip(num in ints(3), den in ints(2), shift in 0i64..3) {
        prop_assume!(num.iter().any(|&x| x != 0));
        let mut d = vec![1];
        d.extend_from_slice(&den);
        let f = RationalFn { num: Poly::from_ints(&num), den: Poly::from_ints(&d), shift };
        let s = f.to_series(18);
        let fit = fit_rational(&FitRequest::new(&s, 5, 2)).unwrap();
        let got = fit.fit().expect("a fit within bounds");
        prop_assert_eq!(got.to_series(30), f.to_series(30));
        prop_assert!(got.den.degree().unwrap_or(0) <= 2);
        prop_assert!(!got.num.coeff(0).is_zero());
    }

    #[test]
    fn conjugation_is_an_involution(n in 0usize..9) {
        for p in partitions(n) {
            let c = p.conjugate();
            prop_assert_eq!(c.size(), n);
            prop_assert_eq!(c.conjugate(), p.clone());
            prop_assert_eq!(p.boxes().len(), n);
        }
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..10).map(|n| partitions(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    assert_eq!(Partition(vec![3, 1]).conjugate(), Partition(vec![2, 1, 1]));
}
