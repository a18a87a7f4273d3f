//! Group-level checks: sampled SU(2) paths and paths of loops, the loop
//! group cocycle `κ`, and exact finite crossed modules with their 2-groups.

pub mod finite;
pub mod sampled;
pub mod su2;

pub use finite::{
    build_two_group, normal_subgroup_sequence, strict_kernel_exactness, FiniteCrossedModule, FiniteGroup, FiniteTwoGroup, KernelReport,
    StrictHom, TwoGroupReport,
};
pub use sampled::{
    ad_omega_identity_residual, beta_p, kappa, kappa_cocycle_residual, kappa_conjugation_identity_residual,
    maurer_cartan_t, maurer_cartan_theta_right, AlgebraGrid, Convergence, SampledGroupPath, SampledPathOfLoops,
    SmoothGroupPath, SmoothPathOfLoops,
};
pub use su2::TracePairing;
