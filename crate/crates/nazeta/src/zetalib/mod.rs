//! One-variable zetas and their completions: Riemann zeta, Dirichlet
//! L(s, chi_d), Dedekind zeta_K for quadratic K, partial ideal-class zetas
//! for imaginary quadratic K, and the completed functions built from the
//! archimedean gamma factors.

pub mod completed;
pub mod field;
pub mod forms;
pub mod lfun;
pub mod zeta;

pub use completed::{
    completed_xi, completed_xi_k, completed_xi_theta_split, dedekind_zeta, l_factor_complex,
    l_factor_real, partial_class_zeta,
};
pub use field::{kronecker, FieldDescriptor};
pub use forms::{reduced_forms, BinaryForm, Ideal, IdealClassRep, QuadInt};
pub use lfun::dirichlet_l;
pub use zeta::{hurwitz_zeta, hurwitz_zeta_star, riemann_zeta};
