//! Minimum work cost of bit erasure in a quantum-dot charge bit coupled to a
//! source and a drain electrode.
//!
//! The dot's steady-state occupation `p(μ)` is a complementary CDF in the
//! gate-controlled level `μ`; the average cost of the reversible erasure
//! protocols is half the mean absolute deviation of `-dp/dμ` about its
//! median. The crate computes that cost, the thermal, bias and broadening
//! energy scales that sandwich it, and simulates finite-speed protocols.

pub mod dot;
pub mod dynamics;
pub mod energy;
pub mod erasure;
pub mod error;
pub mod leads;
pub mod mad;
pub mod numerics;

pub use dot::{
    half_occupation_level, occupation, occupation_derivative_density, unbroadened_occupation, DotSystem,
    HalfOccupation, TunnelRates,
};
pub use dynamics::{
    make_erasure_schedule, relaxation_rate, reversibility_check, simulate, ErasureTarget, InitialOccupation,
    ProtocolSchedule, Sample, Segment, SegmentShape, Trajectory,
};
pub use energy::Energy;
pub use erasure::{
    check_bound, energy_scales, erasure_costs, eta_erasure, eta_erasure_work, BoundReport, EnergyScales, ErasureCosts,
    EtaErasure,
};
pub use error::{Error, Result};
pub use leads::{BroadeningKernel, LeadParams};
pub use mad::{grid_cross_correlate, grid_mad, grid_median, verify_lemma1, verify_lemma2, GridPdf, LemmaReport};
pub use numerics::NumericsConfig;
