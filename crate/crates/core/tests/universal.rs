use quotk::algebra::{Rat, Series};
use quotk::error::Error;
use quotk::roots::hensel_factor;
use quotk::universal::{n1_change_poly, universal_bundle, wedge_coefficient, y_derivative, GenusSpec};

const T: i64 = 10;

fn geometric(num: &[i64], pow: i64) -> Series<Rat> {
    let den = Series::from_ints(&[1, -1], T).pow(pow).unwrap();
    Series::from_ints(num, T).div_series(&den).unwrap()
}

#[test]
fn n1_root_and_its_y_derivative() {
    for r in 1..=3u32 {
        let jctx = GenusSpec::ktheory_context(&[2]);
        let cp = n1_change_poly(r, &jctx, T);
        let hf = hensel_factor(&cp.g, 1, &cp.g0).unwrap();
        let z = hf.p.e[0].neg_series();
        assert_eq!(z.constant_part(), Series::from_ints(&[0, 1], T));
        let expect = geometric(&[0, r as i64], 1);
        assert_eq!(y_derivative(&z, &[1]).unwrap(), expect, "r={r}");
    }
}

#[test]
fn ktheory_series_at_y_zero() {
    let jctx = GenusSpec::ktheory_context(&[1]);
    for r in 1..=3i64 {
        for n in 1..=3usize {
            let b = universal_bundle(&GenusSpec::KTheory { ranks: vec![r] }, n, &jctx, T + 4).unwrap();
            let nn = n as i64;
            let one = Series::from_ints(&[1], T);
            assert!(b.a.constant_part().agrees_with(&one), "A, N={n} r={r}");
            assert!(b.b[0].constant_part().agrees_with(&one), "B, N={n} r={r}");

            let da = y_derivative(&b.a, &[1]).unwrap();
            assert!(da.agrees_with(&geometric(&[0, 0, -nn * r], 2)), "dA, N={n} r={r}");
            let db = y_derivative(&b.b[0], &[1]).unwrap();
            assert!(db.agrees_with(&geometric(&[0, -nn], 1)), "dB, N={n} r={r}");

            let tv = b.block.trace(&b.v[0]).unwrap();
            assert!(tv.constant_part().agrees_with(&Series::from_ints(&[nn], T)), "tr V, N={n} r={r}");
            let dtv = y_derivative(&tv, &[1]).unwrap();
            assert!(dtv.agrees_with(&geometric(&[nn], 1)), "d tr V, N={n} r={r}");
        }
    }
}

#[test]
fn trace_u_at_y_zero() {
    let jctx = GenusSpec::ktheory_context(&[1]);
    for n in 1..=3usize {
        let b = universal_bundle(&GenusSpec::KTheory { ranks: vec![1] }, n, &jctx, T + 4).unwrap();
        let tu = b.block.trace(&b.u).unwrap().constant_part();
        let nn = n as i64;
        let expect = if n == 1 { Series::from_ints(&[1], T) } else { geometric(&[0, -nn * nn], 1) };
        assert!(tu.agrees_with(&expect), "N={n}: {tu:?}");
    }
}

#[test]
fn jet_cap_is_enforced() {
    let jctx = GenusSpec::ktheory_context(&[1]);
    let b = universal_bundle(&GenusSpec::KTheory { ranks: vec![1] }, 1, &jctx, T).unwrap();
    assert!(matches!(wedge_coefficient(&b.a, &[2]), Err(Error::InsufficientJetCap { need: 2, cap: 1, .. })));
    assert!(matches!(wedge_coefficient(&b.a, &[1, 0]), Err(Error::InvalidInput(_))));
}
