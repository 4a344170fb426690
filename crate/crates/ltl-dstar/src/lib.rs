//! File formats, the gridworld simulator and benchmark harness around
//! [`ltl_dstar_core`].

pub mod assets;
pub mod bench;
pub mod hoa;
pub mod scenario;
pub mod sim;
pub mod trace;
pub mod waypoint;
pub mod world;
