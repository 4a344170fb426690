//! Automata and scenarios shipped with the crate.

use ltl_dstar_core::Nba;

use crate::hoa::parse_nba;
use crate::scenario::GridScenario;

pub const PHI_B_HOA: &str = include_str!("../assets/automata/phi_b.hoa");
pub const DELIVERY_HOA: &str = include_str!("../assets/automata/delivery.hoa");

pub const MAP_A: &str = include_str!("../assets/scenarios/map_a.json");
pub const MAP_B: &str = include_str!("../assets/scenarios/map_b.json");
pub const BLOCKED_C: &str = include_str!("../assets/scenarios/blocked_c.json");
pub const SUFFIX_BLOCKAGE: &str = include_str!("../assets/scenarios/suffix_blockage.json");
pub const DELIVERY_6X6: &str = include_str!("../assets/scenarios/delivery_6x6.json");
pub const DELIVERY_WAYPOINTS: &str = include_str!("../assets/scenarios/delivery_waypoints.json");

/// Visit A, B, C, D in that order, forever, passing only unlabelled cells
/// in between.
pub fn sequence_automaton() -> Nba {
    parse_nba(PHI_B_HOA).expect("shipped automaton parses")
}

/// Collect one load from each of B, C, D, F and bring it to E before
/// picking up the next.
pub fn delivery_automaton() -> Nba {
    parse_nba(DELIVERY_HOA).expect("shipped automaton parses")
}

/// Grid scenarios by name.
pub fn scenarios() -> [(&'static str, GridScenario); 5] {
    let load = |text| GridScenario::from_json(text).expect("shipped scenario is valid");
    [
        ("map_a", load(MAP_A)),
        ("map_b", load(MAP_B)),
        ("blocked_c", load(BLOCKED_C)),
        ("suffix_blockage", load(SUFFIX_BLOCKAGE)),
        ("delivery_6x6", load(DELIVERY_6X6)),
    ]
}
