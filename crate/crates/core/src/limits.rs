/// Size caps checked before any expensive construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest tensor degree for explicit action matrices.
    pub max_r: usize,
    /// Largest number of basis words `(m+n)^r`.
    pub max_words: u128,
    pub endo_max_r: usize,
    /// Largest number of block-diagonal coordinates `sum (dim B)^2`.
    pub endo_max_coords: u128,
    pub centralizer_max_r: usize,
    pub centralizer_max_words: u128,
    pub hnf_max_cols: usize,
    pub hnf_max_rank: usize,
    pub brauer_max_r: usize,
    /// Largest degree for the class-sum faithfulness test.
    pub faithful_max_r: usize,
    /// Largest number of permutations the class-sum test may enumerate.
    pub faithful_max_work: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_r: 7,
            max_words: 1_000_000,
            endo_max_r: 6,
            endo_max_coords: 200_000,
            centralizer_max_r: 5,
            centralizer_max_words: 250,
            hnf_max_cols: 50_000,
            hnf_max_rank: 10_000,
            brauer_max_r: 5,
            faithful_max_r: 14,
            faithful_max_work: 200_000_000_000,
        }
    }
}

impl Limits {
    /// Effectively unbounded caps, for `--limit-override`.
    pub fn unbounded() -> Self {
        Limits {
            max_r: usize::MAX,
            max_words: u128::MAX,
            endo_max_r: usize::MAX,
            endo_max_coords: u128::MAX,
            centralizer_max_r: usize::MAX,
            centralizer_max_words: u128::MAX,
            hnf_max_cols: usize::MAX,
            hnf_max_rank: usize::MAX,
            brauer_max_r: usize::MAX,
            faithful_max_r: usize::MAX,
            faithful_max_work: u128::MAX,
        }
    }
}
