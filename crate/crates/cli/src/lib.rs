pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_config, Config, ConfigError};
pub use run::{run, Command, Options, Outcome};
