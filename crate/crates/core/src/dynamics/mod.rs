//! Classical centre-of-mass motion under gravity and the mean dipole force.

mod cloud;
mod context;
mod ensemble;
mod integrator;
mod observables;
mod state;

pub use cloud::{atom_rng, sample_atom, sample_cloud, CloudConfig};
pub use context::{Acceleration, ForceContext};
pub use ensemble::{revalidate, AtomResult, AtomSuccess, Classifier, ClassifyConfig, Ensemble, EnsembleResult, Outcome};
pub use integrator::{integrate, ExitReason, IntegratorConfig, StepStats, Trajectory};
pub use observables::{a_atomic, a_atomic_scale, deflection_angle, observables, polar_angle, series, Observables};
pub use state::AtomState;
