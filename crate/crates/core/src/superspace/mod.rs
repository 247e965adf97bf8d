//! The signed action of `S_r` on tensor powers of the superspace `V_{m|n}`,
//! its weight blocks, and the matrices of the action.

mod algebra;
mod block;
pub mod faithful;
mod perm;
mod phi;
mod word;

pub use algebra::{skew_symmetrizer, GroupAlgebraElement};
pub use block::{
    act, multinomial, phi_matrix_block, sign_exponent, weight_blocks, BlockEndoSpace, SignedPermutationMatrix,
    WeightBlock,
};
pub(crate) use block::act_codes;
pub use faithful::{faithfulness, is_faithful, max_faithful_r, FaithfulnessCheck};
pub use perm::{factorial, Permutation, MAX_DEGREE};
pub(crate) use phi::check_tensor_size;
pub use phi::{
    essential_blocks, essential_weights, is_essential_weight, phi_action_matrix, phi_action_matrix_mod_p,
    phi_action_matrix_on, phi_image, phi_kernel_basis, phi_kernel_dim, phi_rank,
};
pub use word::{Alphabet, Letter, SuperWord};

#[cfg(test)]
mod tests;
