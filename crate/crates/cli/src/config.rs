//! Defaults shared by every command, echoed into each report.

use std::collections::BTreeMap;

use holext::slicing::InterpolationInfo;
use serde::Serialize;

use crate::source::Source;

pub const ORDER: usize = holext::DEFAULT_ORDER;
pub const TOLERANCE: f64 = holext::DEFAULT_TOLERANCE;
pub const DENSITY: usize = holext::DEFAULT_DENSITY;
pub const ANGULAR: usize = holext::extension::DEFAULT_ANGULAR;
pub const RADII: [f64; 4] = holext::extension::DEFAULT_RADII;
pub const THREADS_VAR: &str = "HOLEXT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Pass,
    Fail,
}

/// The settings a report was produced with. Parameters that a command does
/// not use are omitted.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    /// Interpolation used for sampled-grid sources.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interpolation: Option<InterpolationInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub consistency_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
    pub format: Format,
    pub parameters: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new(format: Format, expect: Option<Expect>) -> Self {
        RunConfig {
            function: None,
            interpolation: None,
            order: None,
            tolerance: None,
            consistency_tolerance: None,
            density: None,
            expect,
            format,
            parameters: BTreeMap::new(),
        }
    }

    pub fn source(&mut self, source: &Source) -> &mut Self {
        self.function = Some(source.id());
        self.interpolation = source.interpolation().cloned();
        self
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }
}
