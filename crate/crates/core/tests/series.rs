mod common;

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use proptest::prelude::*;

use common::power_by_convolution;
use toricarc::arc::divisorial::divisoriality_test_seeded;
use toricarc::arc::field::Field;
use toricarc::arc::ratfun::RationalFunction;
use toricarc::arc::series::{Order, TruncatedSeries};
use toricarc::arc::{canonical_extension, divisoriality_test, Coordinate, IndependenceOracle, Stage, SymbolicArc, Verdict};
use toricarc::linalg::{Int, Rat};

const T: usize = 10;

fn q((n, d): (i64, i64)) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-7i64..=7, 1i64..=4), len).prop_map(|v| v.into_iter().map(q).collect())
}

fn nonzero() -> impl Strategy<Value = Rat> {
    ((-7i64..=7).prop_filter("nonzero", |n| *n != 0), 1i64..=4).prop_map(q)
}

fn series(c: Vec<Rat>) -> TruncatedSeries<Rat> {
    TruncatedSeries::truncated(c, T, Rat::zero())
}

fn t() -> TruncatedSeries<Rat> {
    TruncatedSeries::monomial(Rat::one(), 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_times_series_is_one(c0 in nonzero(), rest in coeffs(T - 1)) {
        let mut c = vec![c0];
        c.extend(rest);
        let s = series(c);
        let inv = s.invert(T).unwrap();
        prop_assert!(s.mul(&inv).agrees_through(&TruncatedSeries::constant(Rat::one()), T));
    }

    #[test]
    fn reversion_is_two_sided(c1 in nonzero(), rest in coeffs(T - 2)) {
        let mut c = vec![Rat::zero(), c1];
        c.extend(rest);
        let s = series(c);
        let r = s.reversion(T).unwrap();
        prop_assert!(s.compose(&r).unwrap().agrees_through(&t(), T));
        prop_assert!(r.compose(&s).unwrap().agrees_through(&t(), T));
    }

    #[test]
    fn rational_power_inverts_integer_power(k in 1u32..=4, rest in coeffs(T - 1)) {
        let mut c = vec![Rat::one()];
        c.extend(rest);
        let s = series(c);
        let root = s.power_rational(&Rat::new(Int::one(), Int::from(k)), T).unwrap();
        prop_assert!(root.pow(k).agrees_through(&s, T));
    }

    #[test]
    fn symbolic_extension_is_exact_power(d in 1usize..=3, lead in nonzero(), rest in coeffs(T)) {
        let a = RationalFunction::symbol(0);
        let mut c = vec![RationalFunction::zero(); d];
        c.push(a.scale(&lead));
        c.extend(rest.into_iter().take(T - d - 1).map(RationalFunction::constant));
        let f = TruncatedSeries::truncated(c.clone(), T, RationalFunction::zero());
        let ext = canonical_extension(&f, T).unwrap();
        prop_assert_eq!(ext.d, d);
        let zero = ext.rho.zero_like();
        let known: Vec<_> = (0..T - d + 1).map(|j| ext.t_prime.coeff(j).cloned().unwrap_or_else(|| zero.clone())).collect();
        let power = power_by_convolution(&known, d, T, &zero);
        for (j, x) in c.iter().enumerate() {
            prop_assert!(power[j].sub(&ext.rho.embed(x)).is_zero(), "coefficient {}", j);
        }
    }

    #[test]
    fn rational_arcs_of_codimension_two_are_not_divisorial(a in coeffs(4), b in coeffs(4), x1 in nonzero(), y1 in nonzero()) {
        let mk = |head: Rat, tail: Vec<Rat>| {
            let mut c = vec![RationalFunction::zero(), RationalFunction::constant(head)];
            c.extend(tail.into_iter().map(RationalFunction::constant));
            TruncatedSeries::exact(c, RationalFunction::zero())
        };
        let arc = SymbolicArc::new(
            vec![],
            BTreeSet::new(),
            vec![
                Coordinate { name: "x".into(), series: mk(x1, a), on_center: true },
                Coordinate { name: "y".into(), series: mk(y1, b), on_center: true },
            ],
        )
        .unwrap();
        prop_assert_eq!(divisoriality_test(&arc).kind, Verdict::NotDivisorial);
    }

    #[test]
    fn separated_symbols_are_independent(i in 1u32..=3, j in 1u32..=3, c in nonzero()) {
        let a = RationalFunction::symbol(0);
        let b = RationalFunction::symbol(1);
        let oracle = IndependenceOracle::new(2, 0);
        let pa = a.pow(i).add(&RationalFunction::constant(c.clone()));
        let pb = b.pow(j).scale(&c);
        prop_assert!(oracle.is_independent(&[pa.clone(), pb.clone()], &[]));
        prop_assert!(!oracle.is_independent(&[pa.clone(), pa.mul(&pa)], &[]));
        prop_assert_eq!(oracle.independence_rank(&[pa.add(&pb)], &[pb]), 1);
    }
}

fn coord(name: &str, coeffs: Vec<RationalFunction>) -> Coordinate {
    Coordinate { name: name.into(), series: TruncatedSeries::exact(coeffs, RationalFunction::zero()), on_center: true }
}

#[test]
fn orders_of_truncated_series() {
    let z = series(vec![Rat::zero(); 3]);
    assert_eq!(z.order(), Order::AtLeast(T));
    assert_eq!(TruncatedSeries::exact(vec![], Rat::zero()).order(), Order::Infinite);
    assert_eq!(series(vec![Rat::zero(), Rat::zero(), Rat::one()]).order(), Order::Exact(2));
}

#[test]
fn verdicts_do_not_depend_on_the_seed() {
    let a = RationalFunction::symbol(0);
    let one = RationalFunction::one();
    let zero = RationalFunction::zero();
    let arc = SymbolicArc::new(
        vec!["a".into()],
        BTreeSet::new(),
        vec![coord("x", vec![zero.clone(), a.clone()]), coord("y", vec![zero, a, one])],
    )
    .unwrap();
    let kinds: Vec<_> = (0..4).map(|s| divisoriality_test_seeded(&arc, s)).collect();
    assert!(kinds.iter().all(|v| v.kind == Verdict::Divisorial));
    assert!(kinds.iter().all(|v| v.witness.as_ref().unwrap().stage == Stage::Theorem));
    assert_eq!(kinds.iter().map(|v| v.seed).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
}
