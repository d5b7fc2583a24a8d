//! Dense complex matrix kernel.

mod commutant;
mod expm;
mod spectrum;
mod symmetric;
mod triangular;

pub use commutant::{ad_operator, commutant_basis, solve_conjugation, CommutantBasis};
pub use expm::{matrix_exp, unitary_log};
pub use spectrum::{spectrum, Spectrum};
pub use symmetric::{
    char_poly, companion, elementary_symmetric, sigma, sigma_pushforward, SymPoint,
};
pub use triangular::{ordered_triangularize, Triangularization};
