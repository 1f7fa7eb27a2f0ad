use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use std::sync::OnceLock;

use zerolab::approx::*;
use zerolab::ntcore::*;
use zerolab::{ExactCombo, Rational};

fn tables() -> &'static SieveTables {
    static T: OnceLock<SieveTables> = OnceLock::new();
    T.get_or_init(|| SieveTables::build(400_000).unwrap())
}

fn q(a: i64, b: i64) -> Rational {
    BigRational::new(a.into(), b.into())
}

/// `K = max |G(n,m) − G(n',m)| / (q + δ·log(e + min(δ, q)))` over `m ≤ 60`, `q ≤ 20`.
const GRID_K_SMALL: f64 = 0.6073138733790402;
const GRID_K: f64 = 4.0;

fn grid_bound(q: u64, delta: u64) -> f64 {
    q as f64 + delta as f64 * (std::f64::consts::E + delta.min(q) as f64).ln()
}

#[test]
fn grid_constant_exhaustive_small() {
    let t = tables();
    let mut best = (0.0f64, (0, 0, 0, 0));
    for m in 2..=60u64 {
        for qq in 1..=20u64 {
            let vals: Vec<i64> = (0..m).map(|d| g_direct(qq * m + d, m, t).unwrap()).collect();
            for d in 0..m {
                for e in d + 1..m {
                    let r = (vals[d as usize] - vals[e as usize]).abs() as f64 / grid_bound(qq, e - d);
                    if r > best.0 {
                        best = (r, (m, qq, d, e));
                    }
                }
            }
        }
    }
    assert!((best.0 - GRID_K_SMALL).abs() < 1e-15, "{best:?}");
    assert_eq!(best.1, (16, 1, 12, 15));
}

/// `max_{n<m_t} |s_t(n) + nφ(m_t)/m_t|·log log m_t / p_t` for `t = 3..=6`.
const LEMS_RATIO: [(usize, f64); 4] = [
    (3, 0.2611472086829956),
    (4, 0.32846806848799565),
    (5, 0.386691444787963),
    (6, 0.4130857336459365),
];
const LEMS_K: f64 = 0.4130857336459365;

#[test]
fn lem_s_constant() {
    for &(t, frozen) in &LEMS_RATIO {
        let pm = PrimorialModulus::from_index(t).unwrap();
        let (m, p) = (pm.m(), pm.largest_prime());
        let shift = q(pm.phi() as i64, m as i64);
        let worst = (1..m)
            .map(|n| (s_t_eval(t, n).unwrap() + &shift * q(n as i64, 1)).abs())
            .max()
            .unwrap();
        let ratio = worst.to_f64().unwrap() * (m as f64).ln().ln() / p as f64;
        assert!((ratio - frozen).abs() < 1e-13, "t = {t}: {ratio}");
        assert!(ratio <= LEMS_K + 1e-15);
    }
}

#[test]
fn lem_t_coprime_count_discrepancy() {
    let t = tables();
    for tt in 1..=6 {
        let pm = PrimorialModulus::from_index(tt).unwrap();
        let m = pm.m() as i128;
        for n in 1..pm.m() {
            let dev = m * coprime_count(n, pm.m(), t).unwrap() as i128 - n as i128 * pm.phi() as i128;
            assert!(dev.abs() <= (1i128 << tt) * m, "t = {tt}, n = {n}");
        }
    }
}

#[test]
fn f_prime_scaled_identity_and_formula() {
    let t = tables();
    for tt in 1..=5 {
        let pm = PrimorialModulus::from_index(tt).unwrap();
        let m = pm.m();
        for n in 0..=2 * m {
            let lhs = m as i128 * pm.g_prime(n) as i128 + pm.scaled_h_prime(n);
            assert_eq!(lhs, n as i128 * pm.phi() as i128, "m = {m}, n = {n}");
            if n >= 1 {
                assert_eq!(pm.f_prime_formula(n), pm.f_prime(n, t).unwrap(), "m = {m}, n = {n}");
            }
        }
    }
}

#[test]
fn fm_boundary_values() {
    let t = tables();
    for m in 2..60u64 {
        let h = exact_mobius_harmonic(t, m).unwrap();
        assert!(f_exact(m, m - 1, &h, t).unwrap().is_zero());
        assert_eq!(f_exact(m, m, &h, t).unwrap(), &h * q(m as i64, 1));
    }
}

#[test]
fn window_csv_matches_values() {
    let t = tables();
    let w = SequenceWindow::build(WindowKind::FPrime, 30, 1..=30, t).unwrap();
    let mut buf = Vec::new();
    w.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# kind="));
    assert_eq!(lines.next(), Some("n,value_num,value_den"));
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#') && !l.starts_with("n,")).collect();
    assert_eq!(rows.len(), 30);
    assert_eq!(rows[29], "30,1,1");
    assert_eq!(rows[6], "7,-1,1");
}

#[test]
fn admissible_exact() {
    let c = make_admissible(vec![q(3, 7), q(-2, 5), q(1, 1)]).unwrap();
    let total = c
        .coeffs()
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (i, x)| acc + x / q(i as i64 + 1, 1));
    assert!(total.is_zero());
    assert!(ExactCombo::new(vec![q(1, 1), q(1, 1)]).is_err());
}

fn h_sum(n: u64, m: u64, t: &SieveTables) -> Rational {
    h_direct(n, m, t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn g_forms_agree(n in 1u64..400_000, frac in 0.0f64..1.0) {
        let t = tables();
        let m = ((n as f64 * frac) as u64).max(1);
        prop_assert_eq!(g_direct(n, m, t).unwrap(), g_mertens(n, m, t).unwrap());
    }

    #[test]
    fn g_plus_h(n in 1u64..3000, m in 1u64..400) {
        let t = tables();
        let g = q(g_direct(n, m, t).unwrap(), 1);
        let lhs = g + h_sum(n, m, t);
        prop_assert_eq!(lhs, exact_mobius_harmonic(t, m).unwrap() * q(n as i64, 1));
    }

    #[test]
    fn walk_matches_direct(m in 1u64..300, start in 0u64..5000, steps in 1usize..200) {
        let t = tables();
        let mut w = GWalk::starting_at(start, m, t).unwrap();
        for _ in 0..steps {
            let g = w.advance().unwrap();
            prop_assert_eq!(g, g_direct(w.n(), m, t).unwrap());
        }
    }

    #[test]
    fn f_below_twice_m(m in 2u64..1500, n in 1u64..200_000) {
        let t = tables();
        let h = exact_mobius_harmonic(t, m).unwrap();
        let f = f_exact(m, n, &h, t).unwrap();
        prop_assert!(f.abs() < q(2 * m as i64, 1));
        prop_assert_eq!(f, f_via_fractional_parts(m, n, &h, t).unwrap());
    }

    #[test]
    fn f_prime_periodic(tt in 1usize..=6, n in 1u64..1_000_000) {
        let t = tables();
        let pm = PrimorialModulus::from_index(tt).unwrap();
        prop_assert_eq!(pm.f_prime(n, t).unwrap(), pm.f_prime(n + pm.m(), t).unwrap());
        prop_assert_eq!(pm.f_prime_formula(n), pm.f_prime_formula(n + pm.m()));
    }

    #[test]
    fn grid_proposition_sampled(m in 2u64..=5000, qq in 1u64..60, d in 0u64..5000, e in 0u64..5000) {
        let t = tables();
        let (d, e) = (d % m, e % m);
        prop_assume!(d != e);
        let a = g_direct(qq * m + d, m, t).unwrap();
        let b = g_direct(qq * m + e, m, t).unwrap();
        prop_assert!(((a - b).abs() as f64) <= GRID_K * grid_bound(qq, d.abs_diff(e)));
    }

    #[test]
    fn chunked_window_matches(m in 2u64..200, start in 1u64..2000, len in 0u64..300, chunk in 1u64..64) {
        let t = tables();
        let a = SequenceWindow::build(WindowKind::F, m, start..=start + len, t).unwrap();
        let b = SequenceWindow::build_chunked(WindowKind::F, m, start..=start + len, chunk, t).unwrap();
        prop_assert_eq!(a.values, b.values);
    }

    #[test]
    fn s_value_is_piecewise_f(tail in proptest::collection::vec(-20i64..20, 1..8), n in 1u64..10_000) {
        let c = make_admissible(tail.iter().map(|&x| q(x, 3)).collect()).unwrap();
        let direct = c.coeffs().iter().enumerate().fold(q(1, 1), |acc, (i, ck)| {
            let k = i as u64 + 1;
            acc + ck * BigRational::new(BigInt::from(n % k), BigInt::from(k))
        });
        prop_assert_eq!(c.s_value(n), direct);
    }
}
