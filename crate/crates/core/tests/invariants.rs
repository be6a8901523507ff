use num_traits::{One, Signed, Zero};
use ordclosure::closure::{idealizer, p_closure_oracle, radical_of};
use ordclosure::factor::{factor, is_prime};
use ordclosure::form::{AnisotropyStatus, FiniteFormModule};
use ordclosure::linalg::{det, hnf, snf, IntMat, RatMat};
use ordclosure::localize::{is_tame_exact, split_maximal_ideals, tame_dim_test};
use ordclosure::order::TableOrder;
use ordclosure::{BigInt, BigRational};
use proptest::prelude::*;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn matrix() -> impl Strategy<Value = IntMat> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-50i64..=50, r * c).prop_map(move |v| IntMat::from_i64(r, c, &v))
    })
}

fn square_matrix() -> impl Strategy<Value = IntMat> {
    (1usize..=5).prop_flat_map(|n| proptest::collection::vec(-30i64..=30, n * n).prop_map(move |v| IntMat::from_i64(n, n, &v)))
}

/// Nondegenerate forms over `Z/p^e` with a diagonal unit part and random off-diagonal entries.
fn form() -> impl Strategy<Value = FiniteFormModule> {
    (prop_oneof![Just(3i64), Just(5), Just(7)], proptest::collection::vec(1u32..=3, 0..=3))
        .prop_flat_map(|(p, mut exps)| {
            exps.sort_unstable();
            let r = exps.len();
            (Just(p), Just(exps), proptest::collection::vec(1i64..p, r), proptest::collection::vec(0i64..p * p * p, r * r))
        })
        .prop_filter_map("degenerate", |(p, exps, units, off)| {
            let r = exps.len();
            let pe = |e: u32| b(p).pow(e);
            let gram = RatMat::from_fn(r, r, |i, j| {
                let (lo, hi) = (i.min(j), i.max(j));
                if i == j {
                    BigRational::new(b(units[i]), pe(exps[i]))
                } else {
                    BigRational::new(b(off[lo * r + hi]), pe(exps[lo]))
                }
            });
            let m = FiniteFormModule::new(b(p), exps, gram).ok()?;
            m.is_nondegenerate().then_some(m)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hnf_transform_and_shape(m in matrix()) {
        let (h, u) = hnf(&m);
        prop_assert_eq!(u.mul(&m), h.clone());
        prop_assert!(det(&u).abs().is_one());
        let mut last_pivot = None;
        for i in 0..h.rows() {
            let Some(j) = h.row(i).iter().position(|x| !x.is_zero()) else { continue };
            prop_assert!(last_pivot.is_none_or(|l| j > l));
            prop_assert!(h[(i, j)].is_positive());
            for k in 0..i {
                prop_assert!(!h[(k, j)].is_negative() && h[(k, j)] < h[(i, j)]);
            }
            last_pivot = Some(j);
        }
    }

    #[test]
    fn snf_divisibility_and_det(m in square_matrix()) {
        let s = snf(&m);
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal());
        prop_assert!(det(&s.left).abs().is_one() && det(&s.right).abs().is_one());
        for w in s.divisors.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(ok);
        }
        prop_assert_eq!(s.divisors.iter().product::<BigInt>(), det(&m).abs());
    }

    #[test]
    fn lower_root_is_diagonal(m in form()) {
        let p = m.p().clone();
        let gens: Vec<Vec<BigInt>> = m.exps().iter().enumerate().map(|(i, &e)| {
            let mut v = vec![BigInt::zero(); m.rank()];
            v[i] = p.pow(e.div_ceil(2));
            v
        }).collect();
        let lr = m.lower_root();
        prop_assert_eq!(&lr, &m.submodule(&gens));
        prop_assert!(m.is_isotropic(&lr));
        let perp = m.orthocomplement(&lr);
        let p_perp: Vec<Vec<BigInt>> = perp.generators().iter().map(|g| g.iter().map(|x| x * &p).collect()).collect();
        prop_assert!(lr.contains_submodule(&m.submodule(&p_perp)));
    }

    #[test]
    fn orthocomplement_order(m in form(), coeffs in proptest::collection::vec(-20i64..=20, 0..=6)) {
        let r = m.rank();
        let gens: Vec<Vec<BigInt>> = coeffs.chunks(r.max(1)).filter(|c| c.len() == r).map(|c| c.iter().map(|&x| b(x)).collect()).collect();
        let l = m.submodule(&gens);
        let perp = m.orthocomplement(&l);
        prop_assert_eq!(m.order_of(&l) * m.order_of(&perp), m.order());
        prop_assert_eq!(m.orthocomplement(&perp), l);
    }

    #[test]
    fn induced_form_nondegenerate(m in form()) {
        prop_assert!(m.induced_quotient_form().is_nondegenerate());
    }

    #[test]
    fn bruteforce_root_matches_lower_root(m in form()) {
        prop_assume!(m.order() <= b(15625));
        let status = m.anisotropy_status();
        prop_assume!(status != AnisotropyStatus::Undetermined);
        let rr = m.rr_bruteforce(15625).unwrap();
        prop_assert_eq!(rr.rr, m.lower_root());
        if status == AnisotropyStatus::Anisotropic {
            prop_assert_eq!(rr.qualifying, 1);
        }
    }

    #[test]
    fn factorization_reconstructs(n in 2u64..=u64::MAX) {
        let f = factor(&BigInt::from(n));
        prop_assert!(f.is_complete());
        prop_assert_eq!(f.value(), BigInt::from(n));
        prop_assert!(f.factors.windows(2).all(|w| w[0].0 < w[1].0));
        prop_assert!(f.factors.iter().all(|(p, e)| *e > 0 && is_prime(p)));
    }

    #[test]
    fn dimension_test_implies_exact_tameness(c in proptest::collection::vec(-12i64..=12, 3..=4)) {
        let mut coeffs: Vec<BigInt> = c.iter().map(|&x| b(x)).collect();
        coeffs.push(BigInt::one());
        let Ok(a) = TableOrder::from_poly(&coeffs) else { return Ok(()) };
        let f = factor(a.discriminant());
        for p in f.primes() {
            let (bp, lift) = a.form_from_quotient(p).unwrap();
            let split = split_maximal_ideals(&a, p, &bp, &lift, 1).unwrap();
            if tame_dim_test(&split) {
                prop_assert!(is_tame_exact(&a, p), "poly {:?} at {}", coeffs, p);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn oracle_chain_is_monotone(c in proptest::collection::vec(-20i64..=20, 3..=4)) {
        let mut coeffs: Vec<BigInt> = c.iter().map(|&x| b(x)).collect();
        coeffs.push(BigInt::one());
        let Ok(a) = TableOrder::from_poly(&coeffs) else { return Ok(()) };
        let dual = a.trace_dual();
        for (p, e) in factor(a.discriminant()).factors {
            if e < 2 {
                continue;
            }
            let run = p_closure_oracle(&a, &p).unwrap();
            for w in run.chain.windows(2) {
                prop_assert!(w[1].contains_lattice(&w[0]) && w[1] != w[0]);
            }
            for l in &run.chain {
                prop_assert!(a.is_ring(l) && dual.contains_lattice(l));
            }
            let top = run.closure();
            prop_assert_eq!(&idealizer(&a, &radical_of(&a, top, &p).unwrap()), top);
            let idx = a.unit_lattice().index_in(top).unwrap();
            prop_assert!(factor(&idx).factors.iter().all(|(q, _)| *q == p));
        }
    }
}

#[test]
fn products_of_large_primes_factor() {
    let p = BigInt::from(1_000_000_007u64);
    let q = BigInt::from(998_244_353u64);
    let r = BigInt::from(2).pow(61) - 1;
    let n = &p * &p * &q * &r;
    let f = factor(&n);
    assert!(f.is_complete());
    assert_eq!(f.value(), n);
    assert_eq!(f.exponent_of(&p), 2);
    assert_eq!(f.exponent_of(&r), 1);
}
