//! Quantum transformation groupoids `H(L, B, ◁)`, bicomodules over `L`, and
//! the functor `Γ` from `L`-bicomodules to `H`-comodules.

pub mod bicomod;
pub mod build;
pub mod gamma;
pub mod hopf;
pub mod separable;

pub use bicomod::{check_bicomodule, check_bicomodule_algebra, check_bicomodule_morphism, truncated_tensor_algebra, Bicomodule, BicomoduleAlgebra};
pub use build::{build_qtg, group_qtg, qtg_structure, triple_label, Qtg};
pub use gamma::{
    bop_b_algebra, bop_b_identification, check_algebra_isomorphism, compare_with_qtg, gamma, gamma_hat_associativity, gamma_hat_monoidal,
    gamma_hat_pair, gamma_hat_raw, gamma_hat_unit, gamma_map, transport_algebra, unit_constraint_left, unit_constraint_right, GammaMonoidal,
    GammaObject, GammaPair, Transported,
};
pub use hopf::{check_hopf, group_algebra, group_hopf, HopfAlgebraData};
pub use separable::{
    adjoint_action, check_action_data, check_separable, derive_trace_form, group_separable, trivial_action, ModuleAlgebraAction,
    SeparableAlgebraData,
};
