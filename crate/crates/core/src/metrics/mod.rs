//! Link metrics: PAPR, BER, spectrum, symbol timing and transform cost.

pub mod ber;
pub mod complexity;
pub mod duration;
pub mod papr;
pub mod psd;
pub mod theory;

pub use ber::{ber_curve, ber_points, BerPoint};
pub use complexity::{complexity_counts, ComplexityCount};
pub use duration::{symbol_duration_exact, symbol_duration_s};
pub use papr::{papr_at_ccdf, papr_ccdf, papr_db, papr_samples, PaprSample, PAPR_GRID_STEP_DB, PAPR_GRID_MAX_DB};
pub use psd::{occupied_bandwidth_hz, psd_estimate};
pub use theory::{ber_theory, ebn0_for_ber, q_function, x_at_y_loglinear};
