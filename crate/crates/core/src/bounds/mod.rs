//! The boundary estimates as pure functions, and sampled suites that check
//! them or fit the constants they leave unspecified.

mod experiments;
mod fit;
mod formulas;
mod report;
mod sampling;
mod suites;

pub use experiments::{
    boundary_slope_regression, experiment_ratio_c_over_l, experiment_sector_ratio, experiment_slit_coefficient,
    experiment_annulus_product, normal_approach, verify_annulus_product, ProductGrid, ProductPoint, SlopeFit,
    MIN_SLOPE_POINTS,
};
pub use fit::{fit_min_constant, fit_min_constant_to, linear_fit, Fit, MAX_CONSTANT};
pub use formulas::*;
pub use report::{format_complex, BoundReport, Fitted, Row, Table};
pub use sampling::{ball_point, log_spaced, polydisc_point, sample_pairs, sample_point, Profile, D_FLOOR};
pub use suites::{run_experiment, run_suite, Experiment, Suite, SuiteConfig, DEFAULT_SEED};
