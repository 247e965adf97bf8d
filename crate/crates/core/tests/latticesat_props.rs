use std::sync::OnceLock;

use modsuper::combinatorics::dim_endo_char0;
use modsuper::commutant::endo_basis;
use modsuper::exact::{elim, PrimeField, SparseRow};
use modsuper::latticesat::{build_sigma, compose_in_blocks, phi_tilde_is_iso, SigmaLattice};
use modsuper::Limits;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use proptest::prelude::*;

const SMALL: [(usize, usize, usize, u64); 6] = [(1, 1, 3, 3), (1, 1, 4, 3), (2, 1, 3, 3), (2, 1, 4, 3), (1, 2, 3, 5), (3, 0, 4, 2)];

fn two_one_five() -> &'static SigmaLattice {
    static CELL: OnceLock<SigmaLattice> = OnceLock::new();
    CELL.get_or_init(|| build_sigma(2, 1, 5, 3, &Limits::default()).unwrap())
}

#[test]
fn rank_is_the_rational_dimension_and_survives_reduction() {
    let limits = Limits::default();
    for (m, n, r, p) in SMALL {
        let sigma = build_sigma(m, n, r, p, &limits).unwrap();
        assert_eq!(BigUint::from(sigma.dim()), dim_endo_char0(m as u32, n as u32, r as u32), "({m},{n},{r},{p})");
        assert_eq!(sigma.rank_mod_p().unwrap(), sigma.dim(), "({m},{n},{r},{p})");
    }
}

#[test]
fn reduction_spans_the_commutant_exactly_when_dimensions_agree() {
    let limits = Limits::default();
    for (m, n, r, p) in SMALL {
        let sigma = build_sigma(m, n, r, p, &limits).unwrap();
        let basis = endo_basis(m, n, r, p, &limits).unwrap();
        let field = PrimeField::new(p).unwrap();
        let modulus = BigInt::from(p);
        let reduced: Vec<SparseRow<u32>> = sigma
            .saturated_basis
            .rows()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| (*c, u32::try_from(v.mod_floor(&modulus)).unwrap()))
                    .filter(|&(_, v)| v != 0)
                    .collect()
            })
            .collect();
        let mut stacked = basis.to_rows();
        stacked.extend(reduced);
        let span = elim::rank_of_rows(&field, basis.space.dim(), stacked);
        assert_eq!(span, basis.len(), "({m},{n},{r},{p}): reduction leaves the commutant");
        assert_eq!(sigma.dim() == basis.len(), phi_tilde_is_iso(m, n, r, p, &limits).unwrap(), "({m},{n},{r},{p})");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn saturated_lattice_is_closed_under_composition(i in 0usize..120, j in 0usize..120) {
        let sigma = two_one_five();
        let space = sigma.params.space().unwrap();
        let rows = sigma.saturated_basis.rows();
        let product = compose_in_blocks(&space, &rows[i], &rows[j]);
        prop_assert!(sigma.saturated_basis.contains(&product));
    }
}
