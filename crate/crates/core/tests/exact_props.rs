use modsuper::exact::{
    bareiss, hnf_rows, lattice, lattice_index_log_p, p_saturate, rank_char0, rank_mod_p, PrimeField, SparseFpMatrix,
    SparseMatrix, SparseRow,
};
use modsuper::Limits;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Dense Gaussian elimination mod `p` on `i64` entries.
fn naive_rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(pivot) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, pivot);
        let inv = (1..p).find(|x| x * a[rank][c] % p == 1).unwrap();
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c] * inv % p;
                for j in 0..ncols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn to_big(rows: &[Vec<i64>]) -> SparseMatrix<BigInt> {
    SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>())
}

fn sparse_rows(m: &SparseMatrix<BigInt>) -> Vec<SparseRow<BigInt>> {
    m.rows().to_vec()
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..10, c), r))
}

const PRIMES: [u64; 4] = [2, 3, 5, 7];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_rank_bounds_every_modular_rank(a in small_matrix()) {
        let m = to_big(&a);
        let r0 = rank_char0(&m);
        prop_assert_eq!(r0, bareiss::rank(m.to_dense()));
        for p in PRIMES {
            let rp = rank_mod_p(&SparseFpMatrix::from_int(&m, PrimeField::new(p).unwrap()));
            prop_assert_eq!(rp, naive_rank_mod(&a, p as i64));
            prop_assert!(r0 >= rp);
        }
    }

    #[test]
    fn saturation_is_idempotent_and_contains_the_lattice(a in small_matrix(), pi in 0usize..4) {
        let p = PRIMES[pi];
        let limits = Limits::default();
        let m = to_big(&a);
        let l = hnf_rows(m.ncols(), sparse_rows(&m), &limits).unwrap();
        let sat = p_saturate(&l, p, &limits).unwrap();
        prop_assert_eq!(&p_saturate(&sat, p, &limits).unwrap(), &sat);
        prop_assert!(sat.contains_lattice(&l));
        prop_assert!(lattice_index_log_p(&sat, &l, p).is_ok());
        // The saturated basis stays independent mod p.
        let field = PrimeField::new(p).unwrap();
        prop_assert_eq!(lattice::rank_mod(&sat, &field), rank_char0(&m));
    }

    #[test]
    fn hermite_form_is_canonical(a in small_matrix(), mix in prop::collection::vec((0usize..6, 0usize..6, -3i64..4), 0..8)) {
        let limits = Limits::default();
        let mut b = a.clone();
        // Unimodular row operations: add multiples of one row to another, then swap.
        for (i, j, k) in mix {
            let (i, j) = (i % b.len(), j % b.len());
            if i != j {
                let src = b[j].clone();
                for (x, y) in b[i].iter_mut().zip(&src) {
                    *x += k * y;
                }
                b.swap(i, j);
            }
        }
        let (ma, mb) = (to_big(&a), to_big(&b));
        let la = hnf_rows(ma.ncols(), sparse_rows(&ma), &limits).unwrap();
        let lb = hnf_rows(mb.ncols(), sparse_rows(&mb), &limits).unwrap();
        prop_assert_eq!(la, lb);
    }
}

#[test]
fn saturation_index_of_a_scaled_lattice() {
    let limits = Limits::default();
    let m = to_big(&[vec![9, 0, 3], vec![0, 3, 0]]);
    let l = hnf_rows(3, sparse_rows(&m), &limits).unwrap();
    let sat = p_saturate(&l, 3, &limits).unwrap();
    // Saturation is spanned by (3,0,1) and (0,1,0), and l has index 3^2 in it.
    assert_eq!(lattice_index_log_p(&sat, &l, 3).unwrap(), 2);
    assert!(sat.contains(&vec![(0, BigInt::from(3)), (2, BigInt::from(1))]));
}
