//! Configuration documents, cloud export and run manifests.

mod config;
mod export;
mod manifest;

pub use config::{emit_config, parse_config, EdgeSpec, Mode, NecklaceConfig, PearlSpec, Tolerances, CONFIG_VERSION};
pub use export::{export_cloud, format_g12, read_cloud_csv, slice_cloud, write_cloud_csv, write_cloud_ply, CloudFormat};
pub use manifest::{sha256_hex, RunManifest, MANIFEST_FORMAT};
