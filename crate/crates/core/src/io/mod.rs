//! Problem schemas, CSV tables, SVG scenes and figure scenarios.

pub mod figures;
pub mod problem;
pub mod svg;
pub mod table;

pub use problem::{parse_curve_problem, parse_interp_problem, parse_problem, Problem};
pub use svg::{export_svg, SceneItem, SceneSpec, Style};
pub use table::{export_csv, parse_dataset_csv, parse_polyline_csv};
