mod check;
mod file;
mod spin;
mod tetrahedron;
mod triangle;

pub use check::run_check;
pub use file::{run_scenario, run_scenario_file, ScenarioInput};
pub use spin::{run_spin, SpinConfig};
pub use tetrahedron::{run_tetrahedron, tetrahedron_vectors, TetrahedronConfig};
pub use triangle::run_triangle;
