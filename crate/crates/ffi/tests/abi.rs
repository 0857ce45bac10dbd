use std::ptr;

use quotk_ffi::*;

fn input(family: QuotkFamily, n: usize, rank: i64) -> QuotkInput {
    QuotkInput {
        family,
        n,
        rank,
        k: 1,
        k2: 1,
        chi: 1,
        c1k: 0,
        shape: QuotkShape::Zero,
        sw: 1,
        beta_k: 0,
        beta_c1: 0,
        beta_pair: 0,
        trunc: 8,
    }
}

fn coeffs(s: *const QuotkSeries) -> Vec<(i64, i64)> {
    let (mut v, mut t) = (0, 0);
    unsafe {
        assert_eq!(quotk_series_window(s, &mut v, &mut t), QuotkStatus::Ok);
        (0..t)
            .map(|p| {
                let (mut a, mut b) = (0, 0);
                assert_eq!(quotk_series_coeff(s, p, &mut a, &mut b), QuotkStatus::Ok);
                (a, b)
            })
            .collect()
    }
}

#[test]
fn compute_matches_engine() {
    // N = 1, rank 1, K^2 = 1, chi = 1, beta = 0
    let mut s = ptr::null_mut();
    let inp = input(QuotkFamily::KTheory, 1, 1);
    unsafe {
        assert_eq!(quotk_compute(&inp, &mut s), QuotkStatus::Ok);
        assert!(!quotk_input_is_conjectural(&inp));
    }
    let got = coeffs(s);
    let expect = quotk::geometry::ktheory_series(
        &[1],
        &[1],
        1,
        &quotk::geometry::SurfaceNumbers { k2: 1, chi_o: 1 },
        &[0],
        &[quotk::geometry::Decomposition::zero(1, 1)],
        8,
    )
    .unwrap();
    for (p, (a, b)) in got.iter().enumerate() {
        let c = expect.coeff(p as i64);
        assert_eq!((c.numer().to_string(), c.denom().to_string()), (a.to_string(), b.to_string()));
    }
    unsafe {
        let mut a = 0;
        let mut b = 0;
        assert_eq!(quotk_series_coeff(s, 8, &mut a, &mut b), QuotkStatus::OutOfRange);
        quotk_series_free(s);
    }
}

#[test]
fn rank1_closed_form() {
    let mut s = ptr::null_mut();
    unsafe { assert_eq!(quotk_rank1(0, 2, 4, &mut s), QuotkStatus::Ok) };
    assert_eq!(coeffs(s), [(2, 1), (4, 1), (2, 1), (0, 1)]);
    unsafe { quotk_series_free(s) };
}

#[test]
fn fit_recovers_double_pole() {
    // q / (1 - q)^2
    let nums: Vec<i64> = (0..16).collect();
    let mut s = ptr::null_mut();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(quotk_series_new(nums.as_ptr(), ptr::null(), nums.len(), 0, &mut s), QuotkStatus::Ok);
        assert_eq!(quotk_fit(s, 2, 2, &mut r), QuotkStatus::Ok);
        let (mut shift, mut dn, mut dd) = (0, 0, 0);
        assert_eq!(quotk_rational_shape(r, &mut shift, &mut dn, &mut dd), QuotkStatus::Ok);
        assert_eq!((shift, dn, dd), (1, 0, 2));
        let den: Vec<(i64, i64)> = (0..=2)
            .map(|i| {
                let (mut a, mut b) = (0, 0);
                assert_eq!(quotk_rational_coeff(r, true, i, &mut a, &mut b), QuotkStatus::Ok);
                (a, b)
            })
            .collect();
        assert_eq!(den, [(1, 1), (-2, 1), (1, 1)]);
        let (mut order, mut only) = (0, false);
        assert_eq!(quotk_rational_pole_at_one(r, &mut order, &mut only), QuotkStatus::Ok);
        assert_eq!((order, only), (2, true));
        quotk_rational_free(r);
        quotk_series_free(s);
    }
}

#[test]
fn fit_reports_no_fit() {
    // partition numbers have no low-degree rational form
    let nums = [1i64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101];
    let mut s = ptr::null_mut();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(quotk_series_new(nums.as_ptr(), ptr::null(), nums.len(), 0, &mut s), QuotkStatus::Ok);
        assert_eq!(quotk_fit(s, 3, 3, &mut r), QuotkStatus::NoFit);
        assert!(r.is_null());
        quotk_series_free(s);
    }
}

#[test]
fn error_codes() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(quotk_compute(ptr::null(), &mut s), QuotkStatus::NullPointer);
        assert_eq!(quotk_compute(&input(QuotkFamily::KTheory, 0, 1), &mut s), QuotkStatus::InvalidInput);
        assert_eq!(quotk_rank1(3, 1, 4, &mut s), QuotkStatus::Hypothesis);
        let den = [0i64];
        assert_eq!(quotk_series_new([1i64].as_ptr(), den.as_ptr(), 1, 0, &mut s), QuotkStatus::InvalidInput);
        assert!(s.is_null());
        quotk_series_free(ptr::null_mut());
        quotk_rational_free(ptr::null_mut());
    }
    let mut conj = input(QuotkFamily::Verlinde, 2, 1);
    conj.shape = QuotkShape::Single;
    unsafe { assert!(quotk_input_is_conjectural(&conj)) };
}
