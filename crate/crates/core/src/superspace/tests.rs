use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::*;
use crate::combinatorics::BiComposition;
use crate::exact::{self, PrimeField, SparseFpMatrix, SparseMatrix};
use crate::{Error, Limits};

fn word(s: &str) -> SuperWord {
    s.parse().unwrap()
}

fn all_words(alphabet: Alphabet, r: usize) -> Vec<SuperWord> {
    let k = alphabet.size() as u8;
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out.into_iter().flat_map(|w: Vec<u8>| (0..k).map(move |c| [w.clone(), vec![c]].concat())).collect();
    }
    out.iter().map(|codes| SuperWord::from_codes(alphabet, codes)).collect()
}

#[test]
fn sign_exponent_examples() {
    let swap = Permutation::transposition(2, 0, 1);
    assert_eq!(sign_exponent(&Permutation::identity(3), &word("1' 2 1'")).unwrap(), 0);
    assert_eq!(sign_exponent(&swap, &word("1' 1'")).unwrap(), 1);
    assert_eq!(sign_exponent(&swap, &word("1 1'")).unwrap(), 0);
    assert!(sign_exponent(&swap, &word("1 1 1")).is_err());
}

#[test]
fn act_examples() {
    let w = word("1 2' 1' 2");
    assert_eq!(act(&Permutation::identity(4), &w).unwrap(), (w.clone(), 1));
    let swap = Permutation::transposition(2, 0, 1);
    assert_eq!(act(&swap, &word("1' 1'")).unwrap(), (word("1' 1'"), -1));
    // The letter in position j lands in position σ(j).
    let cycle = Permutation::from_images(vec![1, 2, 0]).unwrap();
    assert_eq!(act(&cycle, &word("1 2 3")).unwrap(), (word("3 1 2"), 1));
}

#[test]
fn group_action_law_up_to_degree_four() {
    let alphabet = Alphabet::new(1, 2).unwrap();
    for r in 1..=4 {
        let words = all_words(alphabet, r);
        for s in Permutation::all(r) {
            for t in Permutation::all(r) {
                let st = s.compose(&t);
                for w in &words {
                    let (tw, e1) = act(&t, w).unwrap();
                    let (stw, e2) = act(&s, &tw).unwrap();
                    assert_eq!(act(&st, w).unwrap(), (stw, e1 * e2), "{s} {t} {w}");
                }
            }
        }
    }
}

#[test]
fn weight_block_sizes() {
    let sizes: Vec<usize> = weight_blocks(1, 1, 2).unwrap().iter().map(WeightBlock::dim).collect();
    assert_eq!(sizes, [1, 2, 1]);
    let blocks = weight_blocks(2, 1, 5).unwrap();
    assert_eq!(blocks.iter().map(WeightBlock::dim).sum::<usize>(), 243);
    let target = BiComposition::new(vec![2, 2], vec![1]);
    let b = blocks.iter().find(|b| *b.weight() == target).unwrap();
    assert_eq!(b.dim(), 30);
}

#[test]
fn block_words_are_sorted_and_indexed() {
    let alphabet = Alphabet::new(2, 1).unwrap();
    let b = WeightBlock::new(alphabet, BiComposition::new(vec![2, 1], vec![1])).unwrap();
    let words: Vec<SuperWord> = b.words().collect();
    assert!(words.windows(2).all(|w| w[0] < w[1]));
    for (i, w) in words.iter().enumerate() {
        assert_eq!(b.index_of(w), Some(i));
        assert_eq!(w.weight(alphabet).unwrap(), *b.weight());
    }
    assert_eq!(b.index_of(&word("1 1 1 1'")), None);
}

#[test]
fn phi_block_special_cases() {
    let blocks = weight_blocks(2, 1, 3).unwrap();
    for b in &blocks {
        assert_eq!(phi_matrix_block(&Permutation::identity(3), b).unwrap(), SignedPermutationMatrix::identity(b.dim()));
    }
    let even = WeightBlock::new(Alphabet::new(2, 1).unwrap(), BiComposition::new(vec![2, 1], vec![0])).unwrap();
    let odd = WeightBlock::new(Alphabet::new(1, 1).unwrap(), BiComposition::new(vec![0], vec![3])).unwrap();
    for s in Permutation::all(3) {
        let m = phi_matrix_block(&s, &even).unwrap();
        assert!((0..m.dim()).all(|j| m.entry(j).1 == 1));
        let m = phi_matrix_block(&s, &odd).unwrap();
        assert_eq!(m.entry(0), (0, s.sign()));
    }
}

#[test]
fn phi_is_a_homomorphism_at_degree_four() {
    let blocks = weight_blocks(1, 2, 4).unwrap();
    let perms: Vec<Permutation> = Permutation::all(4).collect();
    for b in &blocks {
        let mats: Vec<_> = perms.iter().map(|s| phi_matrix_block(s, b).unwrap()).collect();
        for (i, s) in perms.iter().enumerate() {
            let inv = phi_matrix_block(&s.inverse(), b).unwrap();
            assert_eq!(mats[i].compose(&inv), SignedPermutationMatrix::identity(b.dim()));
            for (j, t) in perms.iter().enumerate().step_by(5) {
                assert_eq!(phi_matrix_block(&s.compose(t), b).unwrap(), mats[i].compose(&mats[j]));
            }
        }
    }
}

fn skew_image(m: usize, n: usize, r: usize) -> Vec<BigInt> {
    let space = BlockEndoSpace::new(weight_blocks(m, n, r).unwrap());
    phi_image(&skew_symmetrizer::<BigInt>(r), &space).into_iter().map(|(_, v)| v).collect()
}

#[test]
fn skew_symmetrizer_dies_mod_p_past_the_bound() {
    // r > m + (p - 1) n
    for (m, n, p, r) in [(2, 1, 3, 5), (1, 1, 3, 4)] {
        let image = skew_image(m, n, r);
        assert!(image.iter().all(|v| (v % BigInt::from(p)).is_zero()), "({m},{n},{p},{r})");
    }
    let image = skew_image(2, 1, 5);
    assert!(!image.is_empty());
    assert!(image.iter().any(|v| !(v % BigInt::from(9)).is_zero()));
}

#[test]
fn skew_symmetrizer_small_degrees() {
    let one = skew_symmetrizer::<i64>(1);
    assert_eq!(one, GroupAlgebraElement::identity(1));
    let two = skew_symmetrizer::<i64>(2);
    assert_eq!(two.coeffs(), &[1, -1]);
}

#[test]
fn kernel_dimensions() {
    let limits = Limits::default();
    assert_eq!(phi_kernel_dim(2, 1, 4, 3, &limits).unwrap(), 0);
    assert_eq!(phi_kernel_dim(2, 1, 5, 3, &limits).unwrap(), 1);
    assert!(phi_kernel_dim(1, 1, 4, 3, &limits).unwrap() > 0);
    assert_eq!(phi_rank(2, 1, 5, 3, &limits).unwrap(), 119);
    assert_eq!(phi_rank(2, 1, 5, 0, &limits).unwrap(), 120);
    assert_eq!(phi_rank(1, 1, 5, 3, &limits).unwrap(), 70);
    assert_eq!(phi_rank(1, 0, 5, 3, &limits).unwrap(), 1);
}

#[test]
fn kernel_at_the_first_failure_is_the_skew_symmetrizer() {
    let basis = phi_kernel_basis(2, 1, 5, 3, &Limits::default()).unwrap();
    assert_eq!(basis.len(), 1);
    let v = &basis[0];
    let skew = skew_symmetrizer::<i64>(5);
    let f = PrimeField::new(3).unwrap();
    let scale = v.coeffs()[0] as i64;
    assert_ne!(scale, 0);
    for (a, b) in v.coeffs().iter().zip(skew.coeffs()) {
        assert_eq!(*a, f.reduce_i64(scale * b));
    }
}

#[test]
fn essential_blocks_carry_the_whole_kernel() {
    let limits = Limits::default();
    for (m, n, r, p) in [(2, 1, 5, 3), (2, 2, 4, 3), (1, 2, 5, 5), (3, 1, 4, 2), (2, 2, 5, 2)] {
        let full = exact::rank_mod_p(&phi_action_matrix_mod_p(m, n, r, p, &limits).unwrap());
        assert_eq!(phi_rank(m, n, r, p, &limits).unwrap(), full, "({m},{n},{r},{p})");
    }
}

#[test]
fn essential_weights_are_sorted_and_filled() {
    assert!(is_essential_weight(&BiComposition::new(vec![3, 2], vec![1, 1, 0])));
    assert!(!is_essential_weight(&BiComposition::new(vec![2, 3], vec![1])));
    assert!(!is_essential_weight(&BiComposition::new(vec![2, 0], vec![1])));
    assert!(essential_weights(2, 1, 5).iter().all(is_essential_weight));
}

#[test]
fn sign_twist_symmetry_of_the_kernel() {
    let limits = Limits::default();
    for p in [2, 3, 5] {
        for (m, n) in [(1, 0), (2, 1), (3, 1), (2, 2)] {
            for r in 1..=5 {
                assert_eq!(
                    phi_kernel_dim(m, n, r, p, &limits).unwrap(),
                    phi_kernel_dim(n, m, r, p, &limits).unwrap(),
                    "({m},{n},{r},{p})"
                );
            }
        }
    }
}

#[test]
fn faithfulness_agrees_with_the_kernel() {
    let limits = Limits::default();
    for p in [2, 3, 5] {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (3, 0), (2, 2)] {
            for r in 1..=6 {
                let kernel = phi_kernel_dim(m, n, r, p, &limits).unwrap();
                assert_eq!(is_faithful(m, n, r, p, &limits).unwrap(), kernel == 0, "({m},{n},{r},{p})");
            }
        }
    }
}

#[test]
fn max_faithful_r_examples() {
    let limits = Limits::default();
    assert_eq!(max_faithful_r(1, 1, 3, 6, &limits).unwrap(), 3);
    assert_eq!(max_faithful_r(2, 1, 3, 6, &limits).unwrap(), 4);
    assert_eq!(max_faithful_r(2, 1, 5, 8, &limits).unwrap(), 5);
    assert_eq!(max_faithful_r(2, 1, 0, 8, &limits).unwrap(), 5);
    assert_eq!(max_faithful_r(2, 1, 5, 4, &limits), Err(Error::ThresholdBeyondLimit { r_max: 4 }));
}

#[test]
fn action_matrix_layout() {
    let limits = Limits::default();
    let a: SparseMatrix<BigInt> = phi_action_matrix(1, 1, 3, &limits).unwrap();
    assert_eq!(a.nrows(), 6);
    assert_eq!(a.ncols(), 1 + 9 + 9 + 1);
    // Row for the identity is the identity on every block.
    assert_eq!(a.row(0).len(), 8);
    assert!(a.row(0).iter().all(|(_, v)| v.is_positive()));
    let f = PrimeField::new(3).unwrap();
    assert_eq!(exact::rank_mod_p(&SparseFpMatrix::from_int(&a, f)), 6);
    assert!(phi_action_matrix::<BigInt>(3, 3, 8, &limits).is_err());
}

#[test]
fn element_text_round_trip() {
    let x = skew_symmetrizer::<i64>(3);
    let back = GroupAlgebraElement::<i64>::parse(3, &x.to_string()).unwrap();
    assert_eq!(back, x);
    assert!(GroupAlgebraElement::<i64>::parse(3, "6:1").is_err());
}

#[test]
fn permutation_rank_round_trip() {
    for (i, s) in Permutation::all(5).enumerate() {
        assert_eq!(s.rank(), i);
        assert_eq!(Permutation::unrank(5, i).unwrap(), s);
    }
    assert_eq!(Permutation::identity(4).rank(), 0);
    assert_eq!(Permutation::from_images(vec![2, 0, 1]).unwrap().cycle_type(), [3]);
}

#[test]
fn word_text_round_trip() {
    let w = word("1 2' 1 3'");
    assert_eq!(w.to_string(), "1 2' 1 3'");
    assert_eq!(w.parity(), 0);
    assert!("0 1".parse::<SuperWord>().is_err());
}
