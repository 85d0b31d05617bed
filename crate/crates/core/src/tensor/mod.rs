//! Pointwise tensor calculus on 4-dimensional charts.
//!
//! Conventions (all tensors fully covariant, chart indices):
//!
//! * `Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij)`
//! * `R^a_bcd = ∂_c Γ^a_db − ∂_d Γ^a_cb + Γ^a_ce Γ^e_db − Γ^a_de Γ^e_cb`,
//!   `R_abcd = g_ae R^e_bcd`, so the round sphere of curvature `K` has
//!   `R_abcd = K(g_ac g_bd − g_ad g_bc)`
//! * `Ric_bd = R^a_bad`, `s = g^{bd} Ric_bd`
//! * `W = Rm − P ⊙ g` with Schouten `P = ½(Ric − s/6 g)` and the
//!   Kulkarni–Nomizu product `(P ⊙ g)_abcd = P_ac g_bd + P_bd g_ac − P_ad g_bc − P_bc g_ad`
//! * `B_ij = ∇^s∇^t W_isjt + ½ Ric^{st} W_isjt`
//! * `|W|² = ¼ W_abcd W^abcd`, the squared norm of `W` as an endomorphism of
//!   `Λ²` with `|e¹∧e²| = 1`; with it `|W⁺|² = s²/24` on Kähler surfaces
//! * `(*F)_ab = ½ ε_abcd F^cd` with `ε_0123 = +√det g`

pub mod chart;
pub mod curvature;
pub mod forms;

pub use chart::{DiffStrategy, MetricChart};
pub use curvature::{bach_kahler_formula, CurvatureJets, CurvatureStack, Rank4};
pub use forms::{
    exterior_derivative, f_compose_f, hodge_star_2form, selfdual_split, trace_free_part, two_form_from_endo,
    Orientation, TwoForm,
};
