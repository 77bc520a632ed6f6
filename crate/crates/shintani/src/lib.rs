//! Exact computation toolkit for subfield symmetric spaces of finite groups
//! of Lie type.
//!
//! The library computes, without floating point, the data needed to study
//! G(F_{q^2})/G(F_q) for small classical groups: cyclotomic arithmetic,
//! finite-field towers, twisted conjugacy and norm maps, character tables,
//! twisted Frobenius–Schur indicators, and closed-form multiplicity
//! predictions for SL_n cross-validated against brute-force oracles.

pub mod cyclo;
pub mod fq;
pub mod chartab;
pub mod classfun;
pub mod descent;
pub mod group;
pub mod report;
pub mod slnparam;
