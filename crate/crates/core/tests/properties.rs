use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use approxmu_core::contfrac::{
    cf_expand, convergents, eval_finite_cf, is_convergent_of, periodic_to_surd, surd_eval,
    theorem1_candidates, theorem2_candidates, FiniteCF, PeriodicCF,
};
use approxmu_core::families::{fibonacci, lucas};
use approxmu_core::measure::{mu, mu_prime, rational_intelligent, Approximation, Verdict};
use approxmu_core::modeldsl::{evaluate, evaluate_i64, format_model, parse_model};
use approxmu_core::numerics::{compare_guarded, constant, ConstantId, Ordering3};
use approxmu_core::{BigInt, BigRational, BigReal};

const CONSTANTS: [ConstantId; 12] = [
    ConstantId::Pi,
    ConstantId::E,
    ConstantId::Sqrt2,
    ConstantId::Sqrt3,
    ConstantId::Sqrt5,
    ConstantId::SqrtE,
    ConstantId::SqrtPi,
    ConstantId::EOverPi,
    ConstantId::SqrtE2PlusPi2,
    ConstantId::Log2,
    ConstantId::Log3,
    ConstantId::Zeta3,
];

fn overlaps(a: &BigReal, b: &BigReal) -> bool {
    let (al, ah) = a.endpoints();
    let (bl, bh) = b.endpoints();
    al <= bh && bl <= ah
}

fn tiny(bits: i32) -> BigReal {
    BigReal::from_f64(2f64.powi(-bits), 64)
}

#[test]
fn constants_agree_across_precisions() {
    for c in CONSTANTS {
        let lo = constant(c, 64);
        for p in [128, 256, 512, 1024] {
            let hi = constant(c, p);
            assert!(overlaps(&lo, &hi), "{c} at {p}");
            let (l, h) = hi.endpoints();
            let rel = (&h - &l) / l.abs();
            let limit = BigRational::new(BigInt::one(), BigInt::one() << (p - 4));
            assert!(rel < limit, "{c} at {p}");
        }
    }
}

#[test]
fn enclosure_endpoints_are_canonical() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let n: i64 = rng.gen_range(1..1_000_000);
        let d: i64 = rng.gen_range(1..1_000_000);
        let x = BigReal::from_rational(&BigRational::new(n.into(), d.into()), 96).sqrt().unwrap().add(&constant(ConstantId::Pi, 96));
        for r in [x.endpoints().0, x.endpoints().1] {
            assert!(r.denom().is_positive());
            assert!(r.numer().gcd(r.denom()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn guarded_compare_is_antisymmetric(a in -1e6f64..1e6, b in -1e6f64..1e6, w in 0u32..40) {
        let x = BigReal::from_f64(a.abs(), 128).sqrt().unwrap().add(&BigReal::from_f64(a, 128)).inflate(&tiny(w as i32));
        let y = BigReal::from_f64(b, 128);
        let flip = match compare_guarded(&y, &x) {
            Ordering3::Less => Ordering3::Greater,
            Ordering3::Greater => Ordering3::Less,
            Ordering3::Indeterminate => Ordering3::Indeterminate,
        };
        prop_assert_eq!(compare_guarded(&x, &y), flip);
        prop_assert_eq!(compare_guarded(&x, &x.clone()), Ordering3::Indeterminate);
    }

    #[test]
    fn evaluation_is_stable_under_more_precision(
        a in 1i64..500, b in 1i64..500, c in 2i64..500, p in 64usize..400,
    ) {
        let models = ["a1/a2 + sqrt(a3)", "sqrt(a1*sqrt(a2) + sqrt(a3))", "root(3, a1 - a2) * log2 / a3", "(a1 - sqrt(a3))/a2"];
        for text in models {
            let m = parse_model(text).unwrap();
            let (Ok(lo), Ok(hi)) = (evaluate_i64(&m, &[a, b, c], p), evaluate_i64(&m, &[a, b, c], p + 64)) else {
                continue;
            };
            prop_assert!(overlaps(&lo, &hi), "{} at {}", text, p);
            let diff = lo.midpoint().sub(&hi.midpoint()).abs();
            let bound = hi.abs().mul(&BigReal::from_f64(2f64.powi(4 - p as i32), p + 64));
            prop_assert!(compare_guarded(&diff, &bound) != Ordering3::Greater, "{} at {}", text, p);
        }
    }

    #[test]
    fn substituting_the_last_parameter(a in 1i64..1000, b in -1000i64..1000, c in 1i64..1000) {
        prop_assume!(b != 0);
        let m = parse_model("a1/a2*sqrt(a3) + a2").unwrap();
        let sub = parse_model(&format!("a1/a2*sqrt({c}) + a2")).unwrap();
        let full = evaluate_i64(&m, &[a, b, c], 200).unwrap();
        let part = evaluate_i64(&sub, &[a, b], 200).unwrap();
        prop_assert!(overlaps(&full, &part));
        let sub2 = parse_model(&format!("a1/({})*sqrt(a2) + ({})", b, b)).unwrap();
        let part2 = evaluate(&sub2, &[a.into(), c.into()], 200).unwrap();
        prop_assert!(overlaps(&full, &part2));
        prop_assert_eq!(format_model(&parse_model(&format_model(&sub)).unwrap()), format_model(&sub));
    }

    #[test]
    fn appending_one_to_the_last_term(terms in prop::collection::vec(1i64..50, 1..12)) {
        let mut bumped = terms.clone();
        *bumped.last_mut().unwrap() += 1;
        let mut extended = terms.clone();
        extended.push(1);
        let bumped = FiniteCF::from_i64(&bumped).unwrap();
        prop_assert_eq!(eval_finite_cf(&bumped), eval_finite_cf(&FiniteCF::from_i64(&extended).unwrap()));
        prop_assert_eq!(eval_finite_cf(&bumped.alternate_form()), eval_finite_cf(&bumped));
    }

    #[test]
    fn surd_matches_long_truncations(
        pre in prop::collection::vec(1i64..20, 0..4),
        period in prop::collection::vec(1i64..20, 1..4),
    ) {
        let pcf = PeriodicCF::from_i64(&pre, &period).unwrap();
        let s = periodic_to_surd(&pcf).unwrap();
        let v = surd_eval(&s, 256);
        let n = 120;
        let t = eval_finite_cf(&pcf.truncate(n));
        let t_next = eval_finite_cf(&pcf.truncate(n + 1));
        let (lo, hi) = if t < t_next { (t, t_next) } else { (t_next, t) };
        let hull = BigReal::from_rational(&lo, 256).hull(&BigReal::from_rational(&hi, 256));
        prop_assert!(overlaps(&v, &hull), "{}", pcf);
        let expanded = cf_expand(&v, pre.len() + 2 * period.len()).unwrap();
        let want = pcf.truncate(pre.len() + 2 * period.len());
        prop_assert_eq!(expanded.cf, want);
    }
}

#[test]
fn theorem_postconditions_on_random_periodic_fractions() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut candidates = 0;
    for _ in 0..500 {
        let pre: Vec<i64> = (0..rng.gen_range(1..4))
            .enumerate()
            .map(|(i, _)| if i == 0 { rng.gen_range(1..6) } else { rng.gen_range(1..8) })
            .collect();
        let period: Vec<i64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(1..8)).collect();
        let pcf = PeriodicCF::from_i64(&pre, &period).unwrap();
        let x = surd_eval(&periodic_to_surd(&pcf).unwrap(), 512);
        if compare_guarded(&x, &BigReal::one(512)) != Ordering3::Greater {
            continue;
        }
        for c in theorem1_candidates(&x, 10).unwrap().into_iter().chain(theorem2_candidates(&x, 10).unwrap()) {
            let v = rational_intelligent(&x, c.value.numer(), c.value.denom()).unwrap();
            assert_eq!(v, Verdict::Intelligent, "{pcf}: {}", c.cf);
            assert!(!is_convergent_of(&c.value, &x).unwrap(), "{pcf}: {}", c.cf);
            candidates += 1;
        }
    }
    assert!(candidates > 500, "{candidates}");
}

#[test]
fn mu_prime_differs_from_mu_by_the_log_ratio() {
    let cases: &[(ConstantId, &str, &[i64])] = &[
        (ConstantId::Pi, "a1/a2", &[22, 7]),
        (ConstantId::Pi, "sqrt(a1) + sqrt(a2)", &[2, 3]),
        (ConstantId::Pi, "a1 + a2/(sqrt(a3) + a4)", &[3, 1, 65, -1]),
        (ConstantId::E, "a1 - (1/a2)*sqrt(a3/a4)", &[3, 3, 5, 7]),
        (ConstantId::E, "(a1*sqrt(a2) + a3)/sqrt(a4)", &[3, 5, -2, 3]),
        (ConstantId::SqrtE2PlusPi2, "a1 + a2/a3 + sqrt(a4)/a5", &[4, 119, 11880, 3, 12]),
    ];
    for &(target, model, params) in cases {
        let params: Vec<BigInt> = params.iter().map(|&a| a.into()).collect();
        let a = Approximation::new(parse_model(model).unwrap(), params, target).unwrap();
        let m = mu(&a, 256).unwrap();
        let mp = mu_prime(&a, 256).unwrap();
        let x = constant(target, 256);
        let expect = m.value.abs().ln().unwrap().sub(&x.abs().ln().unwrap()).div(&m.log_size).unwrap();
        let diff = mp.mu.sub(&m.mu).sub(&expect).abs();
        assert_eq!(compare_guarded(&diff, &tiny(180)), Ordering3::Less, "{model}");
    }
}

#[test]
fn lucas_over_fibonacci_approaches_sqrt5() {
    let s5 = constant(ConstantId::Sqrt5, 512);
    let mut last: Option<BigReal> = None;
    for n in 1..=200u32 {
        let (l, f) = (lucas(n), fibonacci(n));
        assert_eq!(l.gcd(&f) == BigInt::from(2), n % 3 == 0, "n = {n}");
        let d = s5.sub(&BigReal::from_rational(&BigRational::new(l, f), 512)).abs();
        if let Some(prev) = &last {
            assert_eq!(compare_guarded(&d, prev), Ordering3::Less, "n = {n}");
        }
        last = Some(d);
    }
}

#[test]
fn sqrt5_identities_to_index_60() {
    for m in 0..=18usize {
        for (offset, last) in [(4, 3), (5, 5)] {
            let n = 3 * m as u32 + offset;
            let mut t = vec![2];
            t.extend(std::iter::repeat_n(4, m));
            t.push(last);
            let v = eval_finite_cf(&FiniteCF::from_i64(&t).unwrap());
            assert_eq!(v, BigRational::new(lucas(n), fibonacci(n)), "n = {n}");
        }
    }
}

#[test]
fn convergents_of_fixtures_satisfy_the_error_bound() {
    for c in CONSTANTS {
        let x = constant(c, 512);
        let cf = cf_expand(&x, 60).unwrap().cf;
        let conv = convergents(&cf);
        for k in 0..conv.len() - 1 {
            let (r, next) = (&conv[k], &conv[k + 1]);
            let d = x.sub(&BigReal::from_rational(r, 512)).abs();
            let bound = BigRational::new(BigInt::one(), r.denom() * next.denom());
            assert_ne!(compare_guarded(&d, &BigReal::from_rational(&bound, 512)), Ordering3::Greater, "{c} at {k}");
        }
    }
}
