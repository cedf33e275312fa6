//! Text descriptions of UpSet plots.
//!
//! ```
//! use upset_alttext::{describe_plot, DescriptionOptions, PlotConfig, SetDataset};
//!
//! let ds = SetDataset::from_sets([
//!     ("Action", vec!["m1", "m2", "m3"]),
//!     ("Comedy", vec!["m3", "m4"]),
//! ])
//! .unwrap();
//! let cfg = PlotConfig::all_sets(&ds);
//! let doc = describe_plot(&ds, &cfg, &DescriptionOptions::default()).unwrap();
//! assert!(doc.short_text.contains("2 sets"));
//! ```

pub mod api;
pub mod ingest;
pub mod intersections;
pub mod model;
pub mod patterns;
pub mod textgen;

pub use api::describe as describe_plot;
pub use intersections::{compute_table, sort_intersections};
pub use model::{
    Direction, Intersection, IntersectionTable, ItemLabel, ModelError, PlotConfig, SetDataset,
    SortBy, SortOrder,
};
pub use patterns::{analyze, PatternReport};
pub use textgen::{DescriptionDocument, DescriptionOptions, Verbosity};
