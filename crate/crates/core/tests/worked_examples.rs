//! End-to-end scenarios over small fixed instances: the 4-cycle shift with
//! its exact symbolic compound entries, the small-field instance where no
//! GF(2) matrix is generic enough, and the algebraic realizations of
//! combinatorial shifting.

use exshift::elimination::{ind, Engine};
use exshift::exterior::{build_r, compound_submatrix, permutation_matrix, Matrix};
use exshift::fields::{ExtField, PrimeField, Ring};
use exshift::hypergraphs::{all_ksets, KSet, UniformHypergraph};
use exshift::permutations::Permutation;
use exshift::polyring::{MultiPoly, PolyRing};
use exshift::shifting::{
    las_vegas_shift, partial_shift, scan_assignments, shift_by_matrix, verify_shift,
    LasVegasParams, ShiftError,
};

fn gf2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn hg(n: u32, faces: &[&[u32]]) -> UniformHypergraph {
    UniformHypergraph::from_faces(n, faces).unwrap()
}

fn ks(v: &[u32]) -> KSet {
    KSet::new(v.to_vec()).unwrap()
}

/// The symbolic compound of R(2 3 4 1) on rows {13,14,23,24} restricted to
/// the five columns below 34, with every entry checked individually.
#[test]
fn four_cycle_compound_is_exact() {
    let s = hg(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
    let w = Permutation::from_one_line(vec![2, 3, 4, 1]).unwrap();
    let r = build_r(&gf2(), &w);
    let ring = r.ring().clone();
    let x14 = ring.variable_for_pair((1, 4)).unwrap();
    let x24 = ring.variable_for_pair((2, 4)).unwrap();
    let x34 = ring.variable_for_pair((3, 4)).unwrap();
    let one = ring.one();
    let zero = ring.zero();

    let cols: Vec<KSet> = [[1u32, 2], [1, 3], [1, 4], [2, 3], [2, 4]]
        .iter()
        .map(|v| ks(v))
        .collect();
    let comp = compound_submatrix(&r, &s, Some(cols.clone()));
    let expected: [[&MultiPoly<PrimeField>; 5]; 4] = [
        [&x34, &zero, &x14, &zero, &one],
        [&one, &zero, &zero, &zero, &zero],
        [&zero, &x34, &x24, &zero, &zero],
        [&zero, &one, &zero, &zero, &zero],
    ];
    for (i, row) in expected.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            assert_eq!(comp.matrix.get(i, j), *want, "entry ({i}, {j})");
        }
    }

    // with the last column dropped, the reduction finds pivots at 12,13,14
    let shorter: Vec<KSet> = cols[..4].to_vec();
    let comp3 = compound_submatrix(&r, &s, Some(shorter));
    for engine in [Engine::Eager, Engine::Lazy] {
        let res = ind(&comp3.matrix, engine);
        let pivots: Vec<&KSet> = res.pivot_cols.iter().map(|&j| &comp3.col_sets[j]).collect();
        assert_eq!(pivots, vec![&ks(&[1, 2]), &ks(&[1, 3]), &ks(&[1, 4])]);
    }
    // on the five-column window the pivots are 12,13,14,24
    let res = ind(&comp.matrix, Engine::Eager);
    let pivots: Vec<&KSet> = res.pivot_cols.iter().map(|&j| &comp.col_sets[j]).collect();
    assert_eq!(
        pivots,
        vec![&ks(&[1, 2]), &ks(&[1, 3]), &ks(&[1, 4]), &ks(&[2, 4])]
    );
}

#[test]
fn four_cycle_shift_scenario() {
    let s = hg(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
    let w = Permutation::from_one_line(vec![2, 3, 4, 1]).unwrap();
    let truth = hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[2, 4]]);
    for engine in [Engine::Eager, Engine::Lazy] {
        assert_eq!(partial_shift(&s, &w, &gf2(), engine).unwrap().family, truth);
    }

    // one concrete sample whose shift is off by a single face, and one
    // attaining the truth
    let mut u = Matrix::identity(gf2(), 4);
    u.set(0, 3, 1);
    let report = verify_shift(&s, &w, &u, Engine::Eager).unwrap();
    assert_eq!(report.sampled, hg(4, &[&[1, 2], &[1, 3], &[1, 4], &[3, 4]]));
    assert!(!report.verified);

    let mut u_good = Matrix::identity(gf2(), 4);
    u_good.set(1, 3, 1);
    u_good.set(2, 3, 1);
    let report = verify_shift(&s, &w, &u_good, Engine::Eager).unwrap();
    assert_eq!(report.sampled, truth);
    assert!(report.verified);
}

/// For S = {12,14,23,26,35} and the transposition (2 4), no GF(2)
/// assignment is generic enough, and exactly 18 of the 64 GF(4)
/// assignments are.
#[test]
fn genericity_gap_between_gf2_and_gf4() {
    let s = hg(6, &[&[1, 2], &[1, 4], &[2, 3], &[2, 6], &[3, 5]]);
    let w = Permutation::transposition(6, 2, 4).unwrap();
    let truth = hg(6, &[&[1, 2], &[1, 3], &[2, 3], &[2, 5], &[2, 6]]);

    let scan2 = scan_assignments(&s, &w, &gf2(), Engine::Lazy).unwrap();
    assert_eq!(scan2.symbolic, truth);
    assert_eq!((scan2.total_assignments, scan2.matching), (8, 0));

    let gf4 = ExtField::new(2, 2).unwrap();
    let scan4 = scan_assignments(&s, &w, &gf4, Engine::Lazy).unwrap();
    assert_eq!((scan4.total_assignments, scan4.matching), (64, 18));

    let params = LasVegasParams {
        samples: 100,
        max_rounds: 2,
        seed: 11,
    };
    assert!(matches!(
        las_vegas_shift(&s, &w, &gf2(), params, Engine::Eager),
        Err(ShiftError::RoundsExhausted { .. })
    ));
    let lv = las_vegas_shift(&s, &w, &gf4, params, Engine::Eager).unwrap();
    assert!(lv.certified);
    assert_eq!(lv.family, truth);
}

/// Compression along any transposition (a b) is the shift by the
/// single-variable elementary unipotent (I + x E_ab) P(t).
#[test]
fn compression_is_shift_by_elementary_unipotent() {
    use rand::seq::IteratorRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
    for _ in 0..40 {
        let n = *[4u32, 5, 6].iter().choose(&mut rng).unwrap();
        let k = *[2usize, 3].iter().choose(&mut rng).unwrap();
        let sets = all_ksets(n, k);
        let size = (1..=sets.len().min(6)).choose(&mut rng).unwrap();
        let faces = sets.iter().cloned().choose_multiple(&mut rng, size);
        let s = UniformHypergraph::new(n, faces).unwrap();
        for a in 1..=n {
            for b in (a + 1)..=n {
                let t = Permutation::transposition(n, a, b).unwrap();
                let ring = PolyRing::new(
                    gf2(),
                    exshift::polyring::VariableSet::new(vec![(a, b)]).unwrap(),
                );
                let mut u = Matrix::identity(ring.clone(), n as usize);
                u.set(a as usize - 1, b as usize - 1, ring.variable(0));
                let m = u.mul(&permutation_matrix(&ring, &t));
                let delta = shift_by_matrix(&s, &m, Engine::Eager).unwrap().0;
                let gamma = s.combinatorial_shift(&t).unwrap();
                assert_eq!(delta, gamma, "t = ({a} {b}), S = {s:?}");
            }
        }
    }
}

/// For adjacent transpositions the elementary matrix is R(t) itself, so the
/// compression agrees with the partial shift; for non-adjacent ones R(t)
/// carries more indeterminates and shifts strictly further.
#[test]
fn compression_vs_partial_shift_scope() {
    // adjacent case, as in the compression examples
    let s = hg(4, &[&[1, 3], &[1, 4], &[2, 3], &[2, 4]]);
    let t34 = Permutation::transposition(4, 3, 4).unwrap();
    let gamma = s.combinatorial_shift(&t34).unwrap();
    let delta = partial_shift(&s, &t34, &gf2(), Engine::Eager).unwrap().family;
    assert_eq!(gamma, delta);

    // non-adjacent counterexample: (1 3) is the longest element of S_3, so
    // its partial shift is the full shift {12}, while the compression
    // fixes {13}
    let single = hg(3, &[&[1, 3]]);
    let t13 = Permutation::transposition(3, 1, 3).unwrap();
    assert_eq!(single.combinatorial_shift(&t13).unwrap(), single);
    assert_eq!(
        partial_shift(&single, &t13, &gf2(), Engine::Eager).unwrap().family,
        hg(3, &[&[1, 2]])
    );
}
