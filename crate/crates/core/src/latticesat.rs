//! The integral image of the group ring in block-diagonal endomorphisms, and
//! its saturation at `p`.

use std::fs;
use std::io::BufReader;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::combinatorics::dim_endo_char0;
use crate::commutant::endo_dim;
use crate::error::{Error, Result};
use crate::exact::{self, hnf_rows, lattice_index_log_p, p_saturate, LatticeBasis, SparseMatrix, SparseRow};
use crate::limits::Limits;
use crate::superspace::{phi_action_matrix, phi_image, weight_blocks, BlockEndoSpace, GroupAlgebraElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaParams {
    pub m: usize,
    pub n: usize,
    pub r: usize,
    pub p: u64,
}

impl SigmaParams {
    pub fn space(&self) -> Result<BlockEndoSpace> {
        Ok(BlockEndoSpace::new(weight_blocks(self.m, self.n, self.r)?))
    }
}

/// The image lattice of `Z S_r` and its `p`-saturation, both in block
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaLattice {
    pub params: SigmaParams,
    pub image_basis: LatticeBasis,
    pub saturated_basis: LatticeBasis,
}

pub fn build_sigma(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<SigmaLattice> {
    if !exact::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let action: SparseMatrix<BigInt> = phi_action_matrix(m, n, r, limits)?;
    let image_basis = hnf_rows(action.ncols(), action.into_rows(), limits)?;
    let saturated_basis = p_saturate(&image_basis, p, limits)?;
    Ok(SigmaLattice { params: SigmaParams { m, n, r, p }, image_basis, saturated_basis })
}

impl SigmaLattice {
    /// Rank of the saturated lattice.
    pub fn dim(&self) -> usize {
        self.saturated_basis.rank()
    }

    /// `e` with `[saturated : image] = p^e`.
    pub fn index_exponent(&self) -> Result<u32> {
        lattice_index_log_p(&self.saturated_basis, &self.image_basis, self.params.p)
    }

    /// Rank of the saturated basis modulo `p`.
    pub fn rank_mod_p(&self) -> Result<usize> {
        Ok(exact::lattice::rank_mod(&self.saturated_basis, &exact::PrimeField::new(self.params.p)?))
    }

    /// Writes `params.txt`, `image.mtx` and `saturated.mtx` into `dir`.
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let SigmaParams { m, n, r, p } = self.params;
        fs::write(dir.join("params.txt"), format!("m={m}\nn={n}\nr={r}\np={p}\n"))?;
        self.image_basis.write_matrix_market(&mut fs::File::create(dir.join("image.mtx"))?)?;
        self.saturated_basis.write_matrix_market(&mut fs::File::create(dir.join("saturated.mtx"))?)?;
        Ok(())
    }

    pub fn read_dir(dir: &Path) -> Result<Self> {
        let text = fs::read_to_string(dir.join("params.txt"))?;
        let mut fields = [None; 4];
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse(format!("bad header line `{line}`")))?;
            let slot = ["m", "n", "r", "p"]
                .iter()
                .position(|k| *k == key.trim())
                .ok_or_else(|| Error::Parse(format!("unknown header key `{key}`")))?;
            fields[slot] = Some(value.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{key}: {e}")))?);
        }
        let [Some(m), Some(n), Some(r), Some(p)] = fields else {
            return Err(Error::Parse("header needs m, n, r and p".into()));
        };
        let read = |name: &str| -> Result<LatticeBasis> {
            LatticeBasis::read_matrix_market(BufReader::new(fs::File::open(dir.join(name))?))
        };
        Ok(SigmaLattice {
            params: SigmaParams { m: m as usize, n: n as usize, r: r as usize, p },
            image_basis: read("image.mtx")?,
            saturated_basis: read("saturated.mtx")?,
        })
    }
}

/// Whether `End_{GL(m|n)}` over `F_p` has its characteristic-zero dimension.
pub fn phi_tilde_is_iso(m: usize, n: usize, r: usize, p: u64, limits: &Limits) -> Result<bool> {
    let over_p = endo_dim(m, n, r, p, limits)?;
    Ok(dim_endo_char0(m as u32, n as u32, r as u32) == over_p.into())
}

/// Whether the saturated lattice is exactly the lattice spanned by the image
/// of `Z S_r` together with `Φ(x) / p^e` for each extra `(x, e)`.
pub fn verify_generators(
    sigma: &SigmaLattice,
    extras: &[(GroupAlgebraElement<BigInt>, u32)],
    limits: &Limits,
) -> Result<bool> {
    let space = sigma.params.space()?;
    let p = sigma.params.p;
    let mut rows: Vec<SparseRow<BigInt>> = sigma.image_basis.rows().to_vec();
    for (x, e) in extras {
        let divisor = BigInt::from(p).pow(*e);
        let mut image = phi_image(x, &space);
        for (_, v) in image.iter_mut() {
            let (q, rem) = v.div_rem(&divisor);
            if !rem.is_zero() {
                return Err(Error::DivisibilityFailure { p, exponent: *e });
            }
            *v = q;
        }
        rows.push(image);
    }
    let generated = hnf_rows(space.dim(), rows, limits)?;
    Ok(generated == sigma.saturated_basis)
}

/// Largest `e` with `p^e` dividing every coordinate of `Φ(x)`.
pub fn divisibility_exponent(
    m: usize,
    n: usize,
    x: &GroupAlgebraElement<BigInt>,
    p: u64,
    limits: &Limits,
) -> Result<u32> {
    let r = x.degree();
    crate::superspace::check_tensor_size(m, n, r, limits)?;
    let space = BlockEndoSpace::new(weight_blocks(m, n, r)?);
    let image = phi_image(x, &space);
    if image.is_empty() {
        return Err(Error::ZeroImage);
    }
    let pz = BigInt::from(p);
    Ok(image.iter().map(|(_, v)| valuation(v, &pz)).min().expect("nonempty image"))
}

fn valuation(v: &BigInt, p: &BigInt) -> u32 {
    let mut v = v.clone();
    let mut e = 0;
    loop {
        let (q, rem) = v.div_rem(p);
        if !rem.is_zero() {
            return e;
        }
        v = q;
        e += 1;
    }
}

/// Product of two block-diagonal endomorphisms given in block coordinates.
pub fn compose_in_blocks(space: &BlockEndoSpace, a: &SparseRow<BigInt>, b: &SparseRow<BigInt>) -> SparseRow<BigInt> {
    let mut dense_b = vec![BigInt::zero(); space.dim()];
    for (c, v) in b {
        dense_b[*c as usize] = v.clone();
    }
    let mut out = vec![BigInt::zero(); space.dim()];
    for (c, v) in a {
        let (blk, i, l) = space.locate(*c as usize);
        let d = space.blocks()[blk].dim();
        for j in 0..d {
            let right = &dense_b[space.coord(blk, l, j)];
            if !right.is_zero() {
                out[space.coord(blk, i, j)] += v * right;
            }
        }
    }
    out.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c as u32, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutant::endo_basis;
    use crate::exact::{elim, Field, PrimeField};
    use crate::superspace::skew_symmetrizer;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn two_one_five_at_three() {
        let s = build_sigma(2, 1, 5, 3, &limits()).unwrap();
        assert_eq!(s.image_basis.rank(), 120);
        assert_eq!(s.dim(), 120);
        assert_eq!(s.index_exponent().unwrap(), 1);
        assert_eq!(s.rank_mod_p().unwrap(), 120);
        let skew = skew_symmetrizer::<BigInt>(5);
        assert_eq!(divisibility_exponent(2, 1, &skew, 3, &limits()).unwrap(), 1);
        assert!(verify_generators(&s, &[(skew.clone(), 1)], &limits()).unwrap());
        assert!(!verify_generators(&s, &[], &limits()).unwrap());
        assert_eq!(
            verify_generators(&s, &[(skew.clone(), 2)], &limits()),
            Err(Error::DivisibilityFailure { p: 3, exponent: 2 })
        );

        // Closed under products: sampled pairs of basis elements, and the
        // new generator against every basis element.
        let space = s.params.space().unwrap();
        let rows = s.saturated_basis.rows();
        let third: SparseRow<BigInt> =
            phi_image(&skew, &space).into_iter().map(|(c, v)| (c, v / BigInt::from(3))).collect();
        for a in rows {
            assert!(s.saturated_basis.contains(&compose_in_blocks(&space, &third, a)));
        }
        for a in rows.iter().step_by(9) {
            for b in rows.iter().step_by(13) {
                assert!(s.saturated_basis.contains(&compose_in_blocks(&space, a, b)));
            }
        }

        // Reduced mod 3 it spans the whole commutant.
        let basis = endo_basis(2, 1, 5, 3, &limits()).unwrap();
        let field = basis.field;
        let mut stacked = basis.to_rows();
        stacked.extend(reduce(&field, rows));
        assert_eq!(elim::rank_of_rows(&field, space.dim(), stacked), 120);
    }

    fn reduce(field: &PrimeField, rows: &[SparseRow<BigInt>]) -> Vec<SparseRow<u32>> {
        rows.iter()
            .map(|row| row.iter().map(|(c, v)| (*c, field.from_int(v))).filter(|e| e.1 != 0).collect())
            .collect()
    }

    #[test]
    fn already_saturated_cases() {
        let s = build_sigma(1, 1, 3, 3, &limits()).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.index_exponent().unwrap(), 0);
        assert_eq!(s.image_basis, s.saturated_basis);
        assert!(verify_generators(&s, &[], &limits()).unwrap());
        let s = build_sigma(3, 0, 3, 2, &limits()).unwrap();
        assert_eq!((s.dim(), s.index_exponent().unwrap()), (6, 0));
        let s = build_sigma(1, 0, 4, 3, &limits()).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn sigma_dimension_is_the_characteristic_zero_one() {
        for (m, n, r, p) in [(1, 1, 5, 3), (1, 1, 4, 2), (2, 1, 4, 3), (1, 2, 4, 3), (2, 2, 3, 2)] {
            let s = build_sigma(m, n, r, p, &limits()).unwrap();
            assert_eq!(dim_endo_char0(m as u32, n as u32, r as u32), s.dim().into(), "({m},{n},{r},{p})");
            assert_eq!(s.rank_mod_p().unwrap(), s.dim());
            let basis = endo_basis(m, n, r, p, &limits()).unwrap();
            let field = basis.field;
            let mut stacked = basis.to_rows();
            stacked.extend(reduce(&field, s.saturated_basis.rows()));
            assert_eq!(elim::rank_of_rows(&field, basis.space.dim(), stacked), basis.len());
            assert_eq!(phi_tilde_is_iso(m, n, r, p, &limits()).unwrap(), basis.len() == s.dim());
        }
    }

    #[test]
    fn divisibility_examples() {
        let id = GroupAlgebraElement::<BigInt>::identity(4);
        assert_eq!(divisibility_exponent(2, 1, &id, 3, &limits()).unwrap(), 0);
        // Past the bound the skew symmetrizer dies mod 3 but not over Z.
        let skew = skew_symmetrizer::<BigInt>(4);
        assert!(divisibility_exponent(1, 1, &skew, 3, &limits()).unwrap() >= 1);
        // Four letters of which at most three are distinct kill it outright.
        assert_eq!(divisibility_exponent(3, 0, &skew, 3, &limits()), Err(Error::ZeroImage));
    }

    #[test]
    fn iso_examples() {
        assert!(phi_tilde_is_iso(2, 1, 5, 3, &limits()).unwrap());
        for r in 1..=5 {
            assert!(phi_tilde_is_iso(1, 1, r, 3, &limits()).unwrap());
        }
        assert!(phi_tilde_is_iso(2, 0, 3, 3, &limits()).unwrap());
    }

    #[test]
    fn lattice_round_trip_through_files() {
        let s = build_sigma(1, 1, 3, 3, &limits()).unwrap();
        let dir = std::env::temp_dir().join(format!("sigma-round-trip-{}", std::process::id()));
        s.write_dir(&dir).unwrap();
        assert_eq!(SigmaLattice::read_dir(&dir).unwrap(), s);
        fs::remove_dir_all(&dir).unwrap();
    }
}
