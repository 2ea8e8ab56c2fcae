use proptest::prelude::*;

use super::*;
use crate::fixtures::{alternating, der, hg_samples};
use crate::group::library;
use crate::polyadic::find_polyadic_isomorphism;

/// Oracle: compatibility over every pair of coordinatewise related tuples.
fn compatible_oracle(p: &PolyadicGroup, labels: &[usize]) -> bool {
    let mut ok = true;
    for_each_tuple(p.order(), p.arity(), |s| {
        for_each_tuple(p.order(), p.arity(), |t| {
            if s.iter().zip(t).all(|(&x, &y)| labels[x] == labels[y]) {
                ok = labels[p.apply(s)] == labels[p.apply(t)];
            }
            ok
        });
        ok
    });
    ok
}

fn all_partitions_oracle(p: &PolyadicGroup) -> Vec<Congruence> {
    let mut out: Vec<Congruence> = set_partitions(p.order())
        .into_iter()
        .filter(|l| compatible_oracle(p, l))
        .map(|l| Congruence::from_labels(&l))
        .collect();
    sort_congruences(&mut out);
    out
}

#[test]
fn is_congruence_examples() {
    let p = alternating(4);
    let r = Congruence::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
    assert!(is_congruence(&p, &r).unwrap().holds);
    let bad = Congruence::from_blocks(4, &[vec![0, 1], vec![2, 3]]).unwrap();
    let check = is_congruence(&p, &bad).unwrap();
    assert!(!check.holds);
    let (s, t) = check.witness.unwrap();
    assert!(s.iter().zip(&t).all(|(&x, &y)| bad.related(x, y)));
    assert!(!bad.related(p.apply(&s), p.apply(&t)));
    assert!(is_congruence(&p, &Congruence::full(4)).unwrap().holds);
    assert!(matches!(is_congruence(&p, &Congruence::full(3)), Err(Error::BadShape(_))));
}

#[test]
fn from_blocks_validation() {
    assert!(matches!(Congruence::from_blocks(3, &[vec![0, 1]]), Err(Error::BadShape(_))));
    assert!(matches!(Congruence::from_blocks(2, &[vec![0, 1], vec![1]]), Err(Error::BadShape(_))));
    assert!(matches!(Congruence::from_blocks(2, &[vec![0, 2]]), Err(Error::OutOfRange { .. })));
    let r = Congruence::from_blocks(4, &[vec![3, 1], vec![2, 0]]).unwrap();
    assert_eq!(r.labels(), &[0, 1, 0, 1]);
    assert_eq!(r.blocks(), vec![vec![0, 2], vec![1, 3]]);
}

#[test]
fn set_partition_counts_are_bell_numbers() {
    let counts: Vec<usize> = (0..=6).map(|m| set_partitions(m).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
}

#[test]
fn enumerate_examples() {
    let cs = enumerate_congruences(&der(2, 3)).unwrap();
    assert_eq!(cs, vec![Congruence::equality(2), Congruence::full(2)]);

    let cs = enumerate_congruences(&alternating(4)).unwrap();
    assert_eq!(cs.first(), Some(&Congruence::equality(4)));
    assert_eq!(cs.last(), Some(&Congruence::full(4)));
    assert!(cs.contains(&Congruence::from_labels(&[0, 1, 0, 1])));
    assert_eq!(cs, all_partitions_oracle(&alternating(4)));
}

#[test]
fn closure_enumeration_matches_partition_scan() {
    for n in [3, 4] {
        for (name, p) in hg_samples(n, 2, 6) {
            let oracle = all_partitions_oracle(&p);
            let mut closure = congruences_by_closure(&p);
            sort_congruences(&mut closure);
            assert_eq!(closure, oracle, "{name}");
        }
    }
}

#[test]
fn enumerate_respects_budget() {
    let p = PolyadicGroup::derive(&crate::group::FiniteGroup::cyclic(9), 3).unwrap();
    assert!(matches!(enumerate_congruences(&p), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn quotient_examples() {
    let p = alternating(4);
    let r = Congruence::from_labels(&[0, 1, 0, 1]);
    let q = quotient(&p, &r).unwrap();
    assert_eq!(q.quotient.order(), 2);
    assert!(find_polyadic_isomorphism(&q.quotient, &der(2, 3)).is_some());
    assert_eq!(q.projection.map(), &[0, 1, 0, 1]);

    let q = quotient(&p, &Congruence::equality(4)).unwrap();
    assert!(q.quotient.same_operation(&p));
    let q = quotient(&p, &Congruence::full(4)).unwrap();
    assert_eq!(q.quotient.order(), 1);

    let bad = Congruence::from_labels(&[0, 0, 1, 1]);
    assert!(matches!(quotient(&p, &bad), Err(Error::NotACongruence(_))));
}

#[test]
fn lambda_examples() {
    let p = alternating(4);
    let rep = lambda_check(&p, &Congruence::from_labels(&[0, 1, 0, 1]), 0).unwrap();
    assert!(rep.holds());
    assert_eq!(rep.kernel, vec![0, 2]);
    assert_eq!(rep.quotient_retract_order, 2);

    let rep = lambda_check(&p, &Congruence::equality(4), 0).unwrap();
    assert!(rep.holds());
    assert_eq!(rep.kernel.len(), 1);

    let rep = lambda_check(&p, &Congruence::full(4), 2).unwrap();
    assert!(rep.holds());
    assert_eq!(rep.kernel, vec![0, 1, 2, 3]);
    assert_eq!(rep.quotient_retract_order, 1);
}

#[test]
fn as_subgroup_examples() {
    let p = alternating(4);
    let s = congruence_as_subgroup(&p, &Congruence::from_labels(&[0, 1, 0, 1])).unwrap();
    assert_eq!(s.pairs.len(), 8);
    assert!(s.normal);
    let s = congruence_as_subgroup(&p, &Congruence::equality(4)).unwrap();
    assert_eq!(s.pairs.members(), &[0, 5, 10, 15]);
    let s = congruence_as_subgroup(&p, &Congruence::full(4)).unwrap();
    assert_eq!(s.pairs.len(), 16);
}

#[test]
fn psi_examples() {
    let p = alternating(4);
    let e = psi_embedding(&p, &Congruence::from_labels(&[0, 1, 0, 1])).unwrap();
    assert_eq!(e.target.order(), 2);
    let e = psi_embedding(&p, &Congruence::equality(4)).unwrap();
    assert_eq!(e.target.order(), 4);
    let e = psi_embedding(&p, &Congruence::full(4)).unwrap();
    assert_eq!(e.target.order(), 1);
}

#[test]
fn diagonal_of_nonabelian_retract_is_not_normal() {
    // The diagonal of S3 x S3 is not normal, so (G x G)/R has no group
    // structure and the direct construction cannot run.
    let s3 = library::by_name("S3").unwrap();
    let p = PolyadicGroup::derive(&s3, 3).unwrap();
    let eq = Congruence::equality(6);
    let s = congruence_as_subgroup(&p, &eq).unwrap();
    assert!(!s.normal);
    assert!(matches!(psi_embedding(&p, &eq), Err(Error::NotNormal(_))));
    let report = psi_report(&p, &eq).unwrap();
    assert!(!report.holds());
    // The normal core of the diagonal is trivial-by-centre; the core quotient
    // is S3 x S3 itself and ψ lands there.
    let core = report.via_core.unwrap();
    assert_eq!(core.subgroup_order, 1);
    assert!(core.well_defined && core.injective);
}

#[test]
fn pair_subgroup_normal_iff_block_quotient_abelian() {
    for (name, p) in hg_samples(3, 2, 6) {
        for r in enumerate_congruences(&p).unwrap() {
            let s = congruence_as_subgroup(&p, &r).unwrap();
            let g = &s.decomposition.retract.group;
            let block = r.blocks()[r.block_of(g.identity())].clone();
            let n = NormalSubgroup::new(g, &block).unwrap();
            let (q, _) = quotient_group(g, &n).unwrap();
            assert_eq!(s.normal, q.is_abelian(), "{name} {:?}", r.labels());
            let report = psi_report(&p, &r).unwrap();
            assert_eq!(report.holds(), s.normal, "{name} {:?}", r.labels());
        }
    }
}

fn sample_strategy() -> impl Strategy<Value = PolyadicGroup> {
    let samples: Vec<PolyadicGroup> =
        [3usize, 4].iter().flat_map(|&n| hg_samples(n, 2, 8).into_iter().map(|(_, p)| p)).collect();
    proptest::sample::select(samples)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn congruences_form_a_meet_semilattice(p in sample_strategy()) {
        let cs = enumerate_congruences(&p).unwrap();
        prop_assert!(cs.len() >= 2 || p.order() == 1);
        for a in &cs {
            for b in &cs {
                prop_assert!(cs.contains(&a.meet(b)));
            }
        }
    }

    #[test]
    fn quotients_and_lambda(p in sample_strategy(), a in 0usize..8) {
        let a = a % p.order();
        for r in enumerate_congruences(&p).unwrap() {
            let q = quotient(&p, &r).unwrap();
            prop_assert_eq!(q.quotient.order(), r.num_blocks());
            let rep = lambda_check(&p, &r, a).unwrap();
            prop_assert!(rep.holds());
            prop_assert!(congruence_as_subgroup(&p, &r).is_ok());
        }
    }

    #[test]
    fn closure_of_related_pairs_is_identity(p in sample_strategy()) {
        for r in enumerate_congruences(&p).unwrap() {
            let reps = r.representatives();
            let pairs: Vec<(usize, usize)> = p.elements().map(|x| (x, reps[r.block_of(x)])).collect();
            prop_assert_eq!(congruence_closure(&p, &pairs), r);
        }
    }
}
