//! Explicit instances: the 1440-vertex annular graph with cop number at
//! least 3, and necklace witnesses certifying that a geometric graph is not
//! cop-win.

pub mod annular;
pub mod necklace;

pub use annular::{annular_graph, annular_report, AnnularReport, SelfCheckError, ANNULAR_N};
pub use necklace::{
    find_witness, necklace_params, place_polygon, plant_exact_necklace, plant_necklace, planted_instance, witness_check,
    NecklaceError, NecklaceParams, NecklaceWitness, PlantedNecklace, WitnessFailure,
};
