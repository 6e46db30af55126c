use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use edgesub::property::PropertyDefinition;
use edgesub::PropertyRegistry;

use crate::CliError;

/// Environment variable naming a JSON configuration file.
pub const CONFIG_ENV: &str = "EDGESUB_CONFIG";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

/// Caps, seed and property definitions for one invocation. Flags override
/// file values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub fracture_budget: u64,
    pub subset_budget: u128,
    pub sample_budget: u64,
    pub phi_k_cap: usize,
    pub delcon_budget: u64,
    pub seed: u64,
    pub format: Format,
    pub eulerian_every_component: bool,
    pub properties: Vec<PropertyDefinition>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let opts = edgesub::CountOptions::default();
        RunConfig {
            fracture_budget: edgesub::fracture::DEFAULT_FRACTURE_BUDGET,
            subset_budget: opts.subset_budget,
            sample_budget: opts.sample_budget,
            phi_k_cap: opts.phi_k_cap,
            delcon_budget: edgesub::tutte::DEFAULT_DELCON_BUDGET,
            seed: 0,
            format: Format::Json,
            eulerian_every_component: false,
            properties: Vec::new(),
        }
    }
}

impl RunConfig {
    pub fn load(explicit: Option<&Path>) -> Result<Self, CliError> {
        let path: Option<PathBuf> = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        let Some(path) = path else {
            return Ok(RunConfig::default());
        };
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let caps = [
            ("fracture budget", self.fracture_budget as u128),
            ("subset budget", self.subset_budget),
            ("sample budget", self.sample_budget as u128),
            ("Phi_k cap", self.phi_k_cap as u128),
            ("deletion-contraction budget", self.delcon_budget as u128),
        ];
        match caps.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(CliError::Usage(format!("{name} must be positive"))),
            None => Ok(()),
        }
    }

    /// SHA-256 of the effective configuration in its JSON form.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serializes");
        format!("{:x}", Sha256::digest(bytes))
    }

    pub fn registry(&self) -> Result<PropertyRegistry, CliError> {
        let mut reg = PropertyRegistry::with_builtins();
        reg.load_definitions(&self.properties)?;
        reg.set_eulerian_every_component(self.eulerian_every_component);
        Ok(reg)
    }

    pub fn count_options(&self) -> edgesub::CountOptions {
        edgesub::CountOptions {
            subset_budget: self.subset_budget,
            phi_k_cap: self.phi_k_cap,
            sample_budget: self.sample_budget,
            ..edgesub::CountOptions::default()
        }
    }
}
