//! Filter masks, the symmetric polyphase layout, closed-form families and
//! wavelet banks.
//!
//! Grid convention: `coeffs[j][k]` multiplies `x^j y^k`, so the row index is
//! the x-power. Printed coefficient matrices are stored unchanged.

mod bank;
mod families;
mod grid;
pub(crate) mod polyphase;

pub use bank::{derive_wavelet_bank, modulation_unitarity_residual, tensor_bank_1d, WaveletBank};
pub use families::{
    case1_mask, case1_polyphase, case2a_mask, case2a_polyphase, case4a_masks, case4a_polyphase,
    d4_taps, d4_tensor_mask, haar_mask, Case1Params, Case2aParams, Case2aPart, Sign,
    CONSTRUCTION_TOL,
};
pub use grid::FilterMask;
pub use polyphase::{polyphase_assemble, polyphase_split, PolyphaseCoeffs, SYMMETRY_TOL};

/// Swaps the roles of x and y.
pub fn transpose_mask(mask: &FilterMask) -> FilterMask {
    mask.transpose()
}
