//! Closed-form asymptotics: Lambert W, the `c_r` polynomial calculus at
//! criticality, the theta-function machinery (`e_{w,l}`, `E_{w,r}`, the
//! saddle point `tau`) for the subcritical regime, per-regime moment
//! formulas, the discrete Gaussian degree law, and the sparse and
//! supercritical limits.

mod crpoly;
mod lambert;
mod regimes;
mod theta;

pub use crpoly::{
    bell_asymptotic, c_r, critical_edge_moments, supercritical_complete_prob, CrPolynomial,
};
pub use lambert::lambert_w;
pub use regimes::{
    discrete_gaussian_pmf, poisson_tv, sparse_degree_limit, sparse_exponent,
    subcritical_clique_moments, subcritical_degree_moments, subcritical_edge_moments, Regime,
    RegimeMoments,
};
pub use theta::{e_w_ell, log_c1_series, tau_of_n, tau_residual, E_w_r, ThetaMethod, ThetaParams};
