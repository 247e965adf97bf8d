use modsuper::bounds::brauer_noninjective_threshold;
use modsuper::brauer::{brauer_kernel_dim, diagram_action, enumerate_diagrams, BrauerDiagram, FormedSuperspace};
use modsuper::exact::SparseMatrix;
use modsuper::superspace::{act, Permutation, SuperWord};
use modsuper::Limits;
use proptest::prelude::*;

fn diagram(r: usize) -> impl Strategy<Value = BrauerDiagram> {
    let all = enumerate_diagrams(r, &Limits::default()).unwrap();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

fn dense(space: &FormedSuperspace, d: &BrauerDiagram) -> Vec<Vec<i64>> {
    let a: SparseMatrix<i64> = diagram_action(d, space, &Limits::default()).unwrap();
    a.to_dense()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().map(|row| (0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect()).collect()
}

/// `Φ(σ)` on all words over the `m|2n` alphabet.
fn phi_dense(space: &FormedSuperspace, sigma: &Permutation) -> Vec<Vec<i64>> {
    let alphabet = space.alphabet();
    let (size, r) = (space.dim(), sigma.degree());
    let dim = size.pow(r as u32);
    let mut out = vec![vec![0; dim]; dim];
    for j in 0..dim {
        let mut codes = vec![0u8; r];
        let mut x = j;
        for c in codes.iter_mut().rev() {
            *c = (x % size) as u8;
            x /= size;
        }
        let (image, sign) = act(sigma, &SuperWord::from_codes(alphabet, &codes)).unwrap();
        let i = image.codes(alphabet).unwrap().iter().fold(0, |acc, &c| acc * size + c as usize);
        out[i][j] = sign as i64;
    }
    out
}

fn triple(r: usize) -> impl Strategy<Value = (BrauerDiagram, BrauerDiagram, BrauerDiagram)> {
    (diagram(r), diagram(r), diagram(r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn multiplication_is_associative_for_every_loop_value((a, b, c) in (1usize..=5).prop_flat_map(triple)) {
        let (ab, l1) = a.multiply(&b).unwrap();
        let (ab_c, l2) = ab.multiply(&c).unwrap();
        let (bc, l3) = b.multiply(&c).unwrap();
        let (a_bc, l4) = a.multiply(&bc).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        // Equal loop counts make the two products agree as polynomials in δ.
        prop_assert_eq!(l1 + l2, l3 + l4);
    }

    #[test]
    fn action_respects_products_at_three_strands(a in diagram(3), b in diagram(3), shape in 0usize..3) {
        let (m, n) = [(2, 0), (1, 1), (0, 1)][shape];
        let space = FormedSuperspace::standard(m, n);
        let (ab, loops) = a.multiply(&b).unwrap();
        let lhs = mat_mul(&dense(&space, &a), &dense(&space, &b));
        let scale = space.delta().pow(loops);
        let rhs: Vec<Vec<i64>> = dense(&space, &ab).iter().map(|row| row.iter().map(|x| x * scale).collect()).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_diagrams_restrict_to_the_signed_action(
        images in (1usize..=4).prop_flat_map(|r| Just((0..r as u8).collect::<Vec<_>>()).prop_shuffle()),
        shape in 0usize..4,
    ) {
        let (m, n) = [(2, 0), (1, 1), (0, 1), (1, 0)][shape];
        let space = FormedSuperspace::standard(m, n);
        let sigma = Permutation::from_images(images).unwrap();
        prop_assert_eq!(dense(&space, &BrauerDiagram::from_permutation(&sigma)), phi_dense(&space, &sigma));
    }
}

#[test]
fn loop_value_is_the_supertrace_of_the_identity() {
    for (m, n) in [(0, 1), (1, 0), (2, 0), (1, 1), (3, 1), (2, 2)] {
        let space = FormedSuperspace::standard(m, n);
        let alphabet = space.alphabet();
        let supertrace: i64 = (0..space.dim() as u8).map(|c| if alphabet.is_odd(c) { -1 } else { 1 }).sum();
        assert_eq!(space.delta(), supertrace);
        // Closing one strand of the identity gives a single loop.
        let cap = BrauerDiagram::contraction(2, 0).unwrap();
        let (_, loops) = cap.multiply(&cap).unwrap();
        assert_eq!(loops, 1);
        let e = dense(&space, &cap);
        let scaled: Vec<Vec<i64>> = e.iter().map(|row| row.iter().map(|x| x * supertrace).collect()).collect();
        assert_eq!(mat_mul(&e, &e), scaled, "({m},{n})");
    }
}

#[test]
fn kernel_appears_past_the_threshold() {
    let limits = Limits::default();
    let mut checked = 0;
    for p in [2, 3, 5, 7] {
        for (m, n) in [(1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (2, 1)] {
            let Ok(threshold) = brauer_noninjective_threshold(m as u64, n as u64, p) else {
                continue;
            };
            for r in (threshold as usize + 1)..=3 {
                assert!(brauer_kernel_dim(r, m, n, p, &limits).unwrap() > 0, "({m},{n},{p}) r={r}");
                checked += 1;
            }
        }
    }
    assert!(checked > 10);
}
