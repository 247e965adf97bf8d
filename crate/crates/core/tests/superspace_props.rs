use modsuper::bounds::r_p_closed;
use modsuper::superspace::{
    max_faithful_r, phi_image, phi_kernel_dim, phi_matrix_block, skew_symmetrizer, weight_blocks, BlockEndoSpace,
    GroupAlgebraElement, Permutation, SignedPermutationMatrix,
};
use modsuper::Limits;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn permutation(r: usize) -> impl Strategy<Value = Permutation> {
    Just((0..r as u8).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(v).unwrap())
}

fn degree_and_pair() -> impl Strategy<Value = (usize, usize, Permutation, Permutation)> {
    (1usize..=5, 0usize..=2, 0usize..=2)
        .prop_filter("nonempty alphabet", |(_, m, n)| m + n > 0)
        .prop_flat_map(|(r, m, n)| (Just(m), Just(n), permutation(r), permutation(r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn action_is_multiplicative((m, n, s, t) in degree_and_pair()) {
        for block in weight_blocks(m, n, s.degree()).unwrap() {
            let st = phi_matrix_block(&s.compose(&t), &block).unwrap();
            let product = phi_matrix_block(&s, &block).unwrap().compose(&phi_matrix_block(&t, &block).unwrap());
            prop_assert_eq!(st, product);
        }
    }

    #[test]
    fn inverse_acts_as_the_inverse((m, n, s, _t) in degree_and_pair()) {
        for block in weight_blocks(m, n, s.degree()).unwrap() {
            let there = phi_matrix_block(&s, &block).unwrap();
            let back = phi_matrix_block(&s.inverse(), &block).unwrap();
            prop_assert_eq!(there.compose(&back), SignedPermutationMatrix::identity(block.dim()));
        }
    }
}

#[test]
fn skew_symmetrizer_vanishes_mod_p_past_the_strip_bound() {
    for (m, n, p, r) in [(2usize, 1usize, 3u64, 5usize), (1, 1, 3, 4)] {
        assert!(r > m + (p as usize - 1) * n);
        let space = BlockEndoSpace::new(weight_blocks(m, n, r).unwrap());
        let a: GroupAlgebraElement<BigInt> = skew_symmetrizer(r);
        let image = phi_image(&a, &space);
        assert!(!image.is_empty(), "the skew symmetrizer is nonzero over the integers");
        assert!(image.iter().all(|(_, v)| v.is_multiple_of(&BigInt::from(p))), "({m},{n},{p},{r})");
    }
}

#[test]
fn kernel_dimension_is_symmetric_in_the_sizes() {
    let limits = Limits::default();
    for p in [2, 3, 5] {
        for m in 0..=3usize {
            for n in 0..m {
                for r in 1..=5usize {
                    if m + n == 0 || (m + n).pow(r as u32) > 1024 {
                        continue;
                    }
                    assert_eq!(
                        phi_kernel_dim(m, n, r, p, &limits).unwrap(),
                        phi_kernel_dim(n, m, r, p, &limits).unwrap(),
                        "({m},{n},{r},{p})"
                    );
                }
            }
        }
    }
}

#[test]
fn faithful_range_matches_the_closed_form_on_small_sizes() {
    // The full acceptance grid runs in the CLI acceptance target.
    let limits = Limits::default();
    for p in [3u64, 5] {
        for m in 1..=2usize {
            for n in 1..=m {
                let closed = r_p_closed(m as u64, n as u64, p).unwrap() as usize;
                assert_eq!(max_faithful_r(m, n, p, closed + 1, &limits).unwrap(), closed, "({m},{n},{p})");
            }
        }
    }
}
