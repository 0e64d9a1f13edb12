//! Abelian extensions `h(λ, μ, φ, ρ)` of a Lie algebra `h` by `a ⊕ i`, the
//! cochain maps that control them, and the sufficient criteria for the
//! result to carry an invariant metric.

mod cochain;
mod criteria;
mod data;
mod extract;
mod iso;

pub use cochain::{binomial, differential, e_phi_of, tuples, Cochain};
pub use criteria::{
    add_cyclic_condition, add_e_phi_kernel, assemble_metric, check_metric_conditions,
    cyclic_condition_kernel, e_phi_kernel, l_index, lambda_phi, mu_is_cyclic,
    satisfies_criterion, solve_criterion, solve_kernel_criterion, solve_cyclic_criterion, BilinearMap, Criterion,
    CriterionSolution, MetricConditions,
};
pub use data::{coad, ExtensionData};
pub use extract::{extract_extension_data, Extracted};
pub use iso::{cohomologous_iso, psi_matrix, shift_by, IsoReport};

#[cfg(test)]
mod tests;
