//! Positivity of trigonometric sums on θ-intervals and sampling of the
//! partial sums `s_n^μ(z)` on the unit disk.

mod disk;
mod grid;

pub use disk::{
    angle_grid, boundary_identity_check, closed_form_full_sum, one_minus_z_pow, partial_sum,
    subordination_sector_check, weak_conjecture_check, BoundaryAgreement, DiskSample, SectorReport,
    WeakConjectureReport,
};
pub use grid::{certify_positive_trig, GridCertificate};
