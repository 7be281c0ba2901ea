//! Classical side of the reduction: flows, Lagrangian patches, transport
//! integrals and their long-time predictions.

mod fit;
mod flow;
mod integrable;
mod liouville;
mod patch;
mod stable;
mod transport;

pub use fit::{
    decay_fit, least_squares, running_envelope, tail_envelope, DecayFit, DecayModel, DEFAULT_FLOOR, MIN_POINTS,
};
pub use flow::{HamiltonianFlow, Integrator};
pub use integrable::{angle_mean, torus_prediction, transversal_limit};
pub use liouville::{liouville_average, SINGULAR_THRESHOLD};
pub use patch::{Chart, LagrangianPatch, ENDPOINT_TOLERANCE};
pub use stable::{ModelDensity, StableManifoldModel, StableSeries};
pub use transport::{nyquist_nodes, transport_integral, transport_series, TransportValue, MIN_NODES};
