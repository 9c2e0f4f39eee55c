//! Interaction energies.

mod breakdown;
mod pair;
mod polarizability;
mod three_body;

pub use breakdown::{EnergyBreakdown, EnergyKind};
pub use pair::{
    delta_e_pair, delta_e_pair_nr, delta_e_pair_r, delta_e_pair_spacelike, delta_e_stationary, pair_nr_terms,
    pair_spacelike_terms,
};
pub use polarizability::{check_detuning, Polarizability, DETUNING_FRACTION};
pub use three_body::{
    delta_e_sym_i, delta_e_sym_ii, delta_e_sym_r, delta_e_sym_spacelike_a, delta_e_sym_spacelike_a_with,
    delta_e_sym_total, sym_i_terms, sym_ii_terms, sym_spacelike_a_terms, SpacelikeAOptions,
};
