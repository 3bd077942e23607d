use permpoly::local::{check_square, check_local_criterion, degenerate_witness, SquareMode};
use permpoly::oracle::is_permutation;
use permpoly::{Field, FieldSpec, MapTable, PartialMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(q: u64) -> Field {
    FieldSpec::for_order(q, None).unwrap().base()
}

fn random_map(f: &Field, rng: &mut impl Rng, image_size: u32) -> MapTable {
    let ranks: Vec<u32> = (0..f.size()).map(|_| rng.gen_range(0..image_size)).collect();
    MapTable::from_ranks(f, &ranks).unwrap()
}

fn random_perm(f: &Field, rng: &mut impl Rng) -> MapTable {
    let mut ranks: Vec<u32> = (0..f.size()).collect();
    for i in (1..ranks.len()).rev() {
        ranks.swap(i, rng.gen_range(0..=i));
    }
    MapTable::from_ranks(f, &ranks).unwrap()
}

#[test]
fn identity_psi_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let id_for = |f: &Field| MapTable::identity(f);
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
        let f = field(q);
        for k in 0..100 {
            let t = if k % 2 == 0 { random_perm(&f, &mut rng) } else { random_map(&f, &mut rng, f.size()) };
            let v = check_local_criterion(&t, &id_for(&f)).unwrap();
            assert_eq!(v.bijective, is_permutation(&t));
            assert_eq!(v.failing_fiber.is_some(), !is_permutation(&t));
        }
    }
}

#[test]
fn any_psi_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [5, 9, 16, 25] {
        let f = field(q);
        for _ in 0..100 {
            let t = if rng.gen_bool(0.5) { random_perm(&f, &mut rng) } else { random_map(&f, &mut rng, f.size()) };
            let width = rng.gen_range(1..=f.size());
            let psi = random_map(&f, &mut rng, width);
            let v = check_local_criterion(&t, &psi).unwrap();
            assert_eq!(v.bijective, is_permutation(&t), "q = {q}");
        }
    }
}

#[test]
fn degenerate_witness_is_complete_at_desk_scale() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25] {
        let f = field(q);
        for _ in 0..20 {
            let t = random_perm(&f, &mut rng);
            let w = degenerate_witness(&t).unwrap();
            let inv = w.check_and_assemble(&t).unwrap().unwrap();
            assert!(inv.compose(&t).unwrap().is_identity());
        }
    }
}

/// Squares built from `λ = x^k` with `λ̄ = x^k`; `h` is read off the square
/// when it is well defined.
#[test]
fn square_equivalence_on_power_squares() {
    let mut checked = 0;
    for q in [5u64, 7, 9, 11, 13, 16, 25] {
        let f = field(q);
        let n1 = q - 1;
        for k in (1..n1).filter(|k| n1 % k == 0) {
            let lambda = MapTable::from_fn(&f, |x| f.pow(x, k));
            for r in 1..n1 {
                for c in f.nonzero_elements().take(3) {
                    let fx = MapTable::from_fn(&f, |x| f.mul(c, f.pow(x, r)));
                    let s = lambda.image();
                    let mut h = vec![None; f.size() as usize];
                    let mut consistent = true;
                    for a in f.elements() {
                        let key = lambda.get(a).rank() as usize;
                        let val = lambda.get(fx.get(a));
                        match h[key] {
                            None => h[key] = Some(val),
                            Some(v) if v == val => {}
                            Some(_) => consistent = false,
                        }
                    }
                    if !consistent {
                        continue;
                    }
                    let h = PartialMap::new(&f, h).unwrap();
                    assert_eq!(h.domain(), s);
                    let v = check_square(&fx, &lambda, &lambda, &h, SquareMode::AssumeImages).unwrap();
                    assert!(v.commutes);
                    assert_eq!(v.f_bijective, is_permutation(&fx));
                    assert_eq!(v.f_bijective, v.h_bijective && v.fibers_injective);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}
