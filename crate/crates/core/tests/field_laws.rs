use permpoly::{Elem, Field, FieldSpec};
use proptest::prelude::*;

/// Flat fields and towers (as top levels) of assorted shapes.
fn fields() -> Vec<Field> {
    let flat = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2), (2, 8), (3, 5)];
    let towers = [(2, 1, 2), (2, 2, 2), (3, 1, 2), (3, 1, 3), (5, 1, 2), (3, 2, 2), (7, 1, 3), (5, 1, 4), (2, 2, 3)];
    let mut out: Vec<Field> = flat
        .iter()
        .map(|&(p, k)| FieldSpec::with_smallest(p, k, None).unwrap().base())
        .collect();
    for (p, k, e) in towers {
        out.push(FieldSpec::with_smallest(p, k, Some(e)).unwrap().top().unwrap());
    }
    out
}

fn towers() -> Vec<Field> {
    fields().into_iter().filter(|f| f.subfield().is_some()).collect()
}

fn field_and_elems(n: usize) -> impl Strategy<Value = (Field, Vec<Elem>)> {
    (0..fields().len()).prop_flat_map(move |i| {
        let f = fields().swap_remove(i);
        let size = f.size();
        proptest::collection::vec(0..size, n).prop_map(move |rs| {
            let elems = rs.iter().map(|&r| f.unrank(r as u64).unwrap()).collect();
            (f.clone(), elems)
        })
    })
}

#[test]
fn exhaustive_axioms_on_small_fields() {
    for f in fields().into_iter().filter(|f| f.size() <= 27) {
        let all: Vec<Elem> = f.elements().collect();
        for &a in &all {
            assert_eq!(f.add(a, f.zero()), a);
            assert_eq!(f.mul(a, f.one()), a);
            assert!(f.add(a, f.neg(a)).is_zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for &b in &all {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &all {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn fermat_exhaustive() {
    for f in fields() {
        let n1 = f.size() as u64 - 1;
        assert!(f.nonzero_elements().all(|a| f.pow(a, n1) == f.one()), "{f:?}");
    }
}

#[test]
fn rank_round_trip_f49() {
    let f = FieldSpec::for_order(49, None).unwrap().base();
    for n in 0..49 {
        assert_eq!(f.rank(f.unrank(n).unwrap()).unwrap() as u64, n);
    }
}

#[test]
fn frobenius_is_a_ring_homomorphism() {
    for f in towers().into_iter().filter(|f| f.size() <= 729) {
        let all: Vec<Elem> = f.elements().collect();
        let fr: Vec<Elem> = all.iter().map(|&a| f.frobenius(a).unwrap()).collect();
        for (i, &a) in all.iter().enumerate() {
            for (j, &b) in all.iter().enumerate().step_by(if f.size() > 125 { 7 } else { 1 }) {
                assert_eq!(f.frobenius(f.add(a, b)).unwrap(), f.add(fr[i], fr[j]));
                assert_eq!(f.frobenius(f.mul(a, b)).unwrap(), f.mul(fr[i], fr[j]));
            }
        }
    }
}

#[test]
fn roots_of_unity_are_primitive() {
    for f in fields() {
        let n1 = f.size() as u64 - 1;
        for d in (1..=n1).filter(|d| n1 % d == 0) {
            let w = f.primitive_root_of_unity(d).unwrap();
            assert_eq!(f.pow(w, d), f.one());
            assert!((1..d).all(|j| f.pow(w, j) != f.one()));
        }
    }
}

proptest! {
    #[test]
    fn sampled_axioms((f, es) in field_and_elems(3)) {
        let (a, b, c) = (es[0], es[1], es[2]);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn pow_is_repeated_multiplication((f, es) in field_and_elems(1), e in 0u64..40) {
        let a = es[0];
        let expected = (0..e).fold(f.one(), |acc, _| f.mul(acc, a));
        prop_assert_eq!(f.pow(a, e), expected);
    }

    #[test]
    fn trace_is_base_linear(i in 0..towers().len(), seed in any::<[u32; 4]>()) {
        let f = towers().swap_remove(i);
        let q = f.subfield_size();
        let pick = |s: u32, m: u32| f.unrank((s % m) as u64).unwrap();
        let (alpha, beta) = (pick(seed[0], q), pick(seed[1], q));
        let (a, b) = (pick(seed[2], f.size()), pick(seed[3], f.size()));
        let lhs = f.rel_trace(f.add(f.mul(alpha, a), f.mul(beta, b))).unwrap();
        let rhs = f.add(
            f.mul(alpha, f.rel_trace(a).unwrap()),
            f.mul(beta, f.rel_trace(b).unwrap()),
        );
        prop_assert_eq!(lhs, rhs);
        prop_assert!(f.in_base(lhs));
    }
}
