//! Machine-checkable witnesses: flat tori, pairs of intersecting cycles,
//! and the `Y00·Y00·Y00` flat-plane data.

mod exprank;
mod meso;
mod patterns;
mod torus;
mod transport;

pub use exprank::{exp_rank_certificate, exp_rank_report, ExpRankReport, ExpRankWitness};
pub use meso::{mesoscopic_certificate, mesoscopic_certificate_with, mesoscopic_replay, MesoBounds, rewrite_with_omega0, verify_meso, yyy_position, MesoChecks, MesoWitness};
pub use patterns::{forbidden_pattern_scan, has_forbidden_pattern, scan_canonical, Pattern, PatternMatch};
pub use torus::{check_torus, transport_torus, verify_torus, z2_certificate, TorusCheck, TorusSource, TorusWitness, Z2Bounds, Z2Outcome};
pub use transport::rotation_map;
