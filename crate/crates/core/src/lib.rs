//! # rotaris
//!
//! Spectral- and energy-efficiency analysis of a downlink MISO link assisted
//! by a reconfigurable intelligent surface whose elements are grouped into
//! mechanically rotatable blocks that share one phase-control circuit each.
//!
//! * [`channel`]: steering vectors, Rician channel draws, cascaded channel
//! * [`metrics`]: instantaneous SE, averaged-SE upper bounds, SE gap, EE
//! * [`power`]: element- and block-controlled power consumption
//! * [`design`]: optimal phases and rotation, block segmentation, rotate-circuit feasibility
//! * [`simkit`]: seeded Monte Carlo estimates and parameter sweeps
//! * [`experiment`]: TOML configuration, presets and CSV output
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run --release --example se_equivalence
//! ```

pub mod channel;
pub mod design;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod power;
pub mod simkit;

pub use channel::{ChannelRealization, RisConfiguration, SystemGeometry};
pub use design::{FeasibilityVerdict, Regime, SegmentationBranch, SegmentationResult};
pub use error::{Error, Result};
pub use metrics::{LinkBudget, SeBoundTerms};
pub use power::PowerParams;
pub use simkit::{Estimate, Scenario, Segmentation, SweepAxis, SweepPoint, SweepResult};
