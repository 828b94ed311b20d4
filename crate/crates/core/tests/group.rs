mod common;

use common::*;
use vsg_core::catalog;
use vsg_core::group::{
    abelianization, count_homs, group_summary, tietze_simplify, wirtinger, FiniteGroupTable, GroupPresentation,
};
use vsg_core::moves::MoveSet;

/// Hom count by trying every assignment and multiplying permutations
/// directly, without the Cayley table machinery.
fn brute_force_s3(p: &GroupPresentation) -> u64 {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let compose = |a: [usize; 3], b: [usize; 3]| [a[b[0]], a[b[1]], a[b[2]]];
    let invert = |a: [usize; 3]| {
        let mut r = [0; 3];
        for i in 0..3 {
            r[a[i]] = i;
        }
        r
    };
    let n = p.generators.len();
    let mut count = 0;
    for code in 0..6usize.pow(n as u32) {
        let image: Vec<[usize; 3]> = (0..n).map(|k| perms[(code / 6usize.pow(k as u32)) % 6]).collect();
        let ok = p.relators.iter().all(|r| {
            let w = r.iter().fold([0, 1, 2], |acc, &(g, e)| {
                compose(acc, if e > 0 { image[g] } else { invert(image[g]) })
            });
            w == [0, 1, 2]
        });
        count += ok as u64;
    }
    count
}

#[test]
fn trefoil_has_nontrivial_s3_representations() {
    let p = wirtinger(&catalog::classical_trefoil()).unwrap();
    let s = tietze_simplify(&p);
    assert_eq!(abelianization(&s).free_rank, 1);
    assert!(abelianization(&s).torsion.is_empty());
    let n = count_homs(&s, &FiniteGroupTable::symmetric(3)).unwrap();
    assert_eq!(n, brute_force_s3(&p));
    assert!(n > 6, "{n}");
}

#[test]
fn unknot_counts_match_brute_force() {
    for code in [catalog::unknot(), catalog::theta(), catalog::hopf(), catalog::virtual_trefoil()] {
        let p = wirtinger(&code).unwrap();
        assert_eq!(count_homs(&p, &FiniteGroupTable::symmetric(3)).unwrap(), brute_force_s3(&p));
    }
}

#[test]
fn simplification_keeps_hom_counts() {
    let groups = [FiniteGroupTable::symmetric(3), FiniteGroupTable::cyclic(4)];
    for seed in 0..30 {
        let mut rng = rng(seed);
        let code = random_code(&mut rng, 3, 4);
        let p = wirtinger(&code).unwrap();
        let s = tietze_simplify(&p);
        assert_eq!(abelianization(&p), abelianization(&s), "seed {seed}");
        for g in &groups {
            if p.generators.len() <= 8 {
                assert_eq!(count_homs(&p, g).unwrap(), count_homs(&s, g).unwrap(), "seed {seed}");
            }
        }
    }
}

#[test]
fn invariant_under_pliable_walks() {
    let groups = [FiniteGroupTable::symmetric(3), FiniteGroupTable::cyclic(3)];
    let moves = MoveSet::pliable();
    for seed in 0..50 {
        let mut rng = rng(2000 + seed);
        let code = random_code(&mut rng, 3, 4);
        let base = group_summary(&code, &groups).unwrap();
        let (codes, sites) = random_walk(&mut rng, &code, &moves, &PLIABLE, 6, 6);
        for (i, c) in codes.iter().enumerate().skip(1) {
            let mut s = group_summary(c, &groups).unwrap();
            s.generators = base.generators;
            s.relators = base.relators;
            assert_eq!(s, base, "seed {seed} after {:?}", &sites[..i]);
        }
    }
}

#[test]
fn realization_does_not_change_the_group() {
    let groups = [FiniteGroupTable::symmetric(3)];
    for seed in 0..20 {
        let mut rng = rng(3000 + seed);
        let code = random_code(&mut rng, 3, 5);
        let again = vsg_core::realize::extract_code(&vsg_core::realize::realize(&code).unwrap()).unwrap();
        assert_eq!(group_summary(&again, &groups).unwrap(), group_summary(&code, &groups).unwrap());
    }
}
