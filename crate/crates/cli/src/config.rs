//! Run configuration: defaults, config-file loading, and flag overrides.

use carleson::{Ramp, VerifyThresholds};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Mirror of the JSON config file; every field optional, flags win.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub dims: Option<Vec<u32>>,
    pub max_rank: Option<u32>,
    pub ramp: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub threads: Option<usize>,
    pub thresholds: Option<FileThresholds>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileThresholds {
    pub l1: Option<f64>,
    pub l2: Option<f64>,
    pub omega: Option<f64>,
    pub l3_saturation: Option<f64>,
    pub l4: Option<f64>,
    pub l5_max_over_median: Option<f64>,
    pub growth_value_band: Option<f64>,
    pub growth_intensity_band: Option<f64>,
    pub growth_ratio_band: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub quiet: bool,
    pub dims: Vec<u32>,
    pub max_rank: Option<u32>,
    pub ramp: Ramp,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub threads: usize,
    pub thresholds: VerifyThresholds,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quiet: false,
            dims: Vec::new(),
            max_rank: None,
            ramp: Ramp::PolynomialC3,
            seed: 0,
            out: None,
            format: None,
            threads: 0,
            thresholds: VerifyThresholds::default(),
        }
    }
}

pub fn apply_file(cfg: &mut RunConfig, file: FileConfig) -> Result<(), String> {
    if let Some(dims) = file.dims {
        cfg.dims = dims;
    }
    if let Some(r) = file.max_rank {
        cfg.max_rank = Some(r);
    }
    if let Some(ramp) = file.ramp {
        cfg.ramp = ramp.parse::<Ramp>().map_err(|e| e.to_string())?;
    }
    if let Some(seed) = file.seed {
        cfg.seed = seed;
    }
    if let Some(out) = file.out {
        cfg.out = Some(out);
    }
    if let Some(format) = file.format {
        cfg.format = Some(format);
    }
    if let Some(threads) = file.threads {
        cfg.threads = threads;
    }
    if let Some(t) = file.thresholds {
        let d = &mut cfg.thresholds;
        if let Some(v) = t.l1 {
            d.l1 = v;
        }
        if let Some(v) = t.l2 {
            d.l2 = v;
        }
        if let Some(v) = t.omega {
            d.omega = v;
        }
        if let Some(v) = t.l3_saturation {
            d.l3_saturation = v;
        }
        if let Some(v) = t.l4 {
            d.l4 = v;
        }
        if let Some(v) = t.l5_max_over_median {
            d.l5_max_over_median = v;
        }
        if let Some(v) = t.growth_value_band {
            d.growth_value_band = v;
        }
        if let Some(v) = t.growth_intensity_band {
            d.growth_intensity_band = v;
        }
        if let Some(v) = t.growth_ratio_band {
            d.growth_ratio_band = v;
        }
    }
    Ok(())
}

/// Run-level invariants: dims within [2, 256], max_rank within [0, 20].
pub fn validate(cfg: &RunConfig) -> Result<(), String> {
    for &n in &cfg.dims {
        if !(2..=256).contains(&n) {
            return Err(format!("dimension {n} outside [2, 256]"));
        }
    }
    if let Some(r) = cfg.max_rank {
        if r > 20 {
            return Err(format!("max_rank {r} outside [0, 20]"));
        }
    }
    Ok(())
}
