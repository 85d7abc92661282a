//! Forward period map: sheet-tracked integration of dz/w over the cycle basis.

pub mod branch;
pub mod cycles;
pub mod path;
pub mod quadrature;

pub use branch::{w_on_sheet, BranchData};
pub use cycles::{full_period_matrix, psi_forward, psi_forward_with, CyclePeriods, CycleTable, FullPeriods};
pub use path::{cycle_period, path_integral, Form, Segment, SheetPath, SheetSegment};
pub use quadrature::{segment_integral, tanh_sinh, EndpointWeight, Integrand, QuadratureResult, SegmentPoint};
