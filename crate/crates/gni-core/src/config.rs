//! Plain-text `key=value` run configuration for the benchmark command.
//!
//! One key per line; blank lines and lines starting with `#` are ignored.
//! Every key maps to a documented parameter with a default; unknown or
//! duplicate keys are rejected, so a parse either fails or yields a full
//! configuration.
//!
//! | section   | keys                                                  |
//! |-----------|-------------------------------------------------------|
//! | bench     | n, p, kinds, replicates, seed, criteria               |
//! | generator | edge_prob, hub_count, v, u                            |
//! | glasso    | nlambda, lambda_ratio, glasso_tol, glasso_max_iter    |
//! | gni       | m                                                     |
//! | ebic      | gamma                                                 |
//! | stars     | beta, subsamples, subsample_size                      |
//! | ric       | permutations                                          |

use std::collections::BTreeSet;

use crate::bench::{BenchConfig, Criterion};
use crate::error::{Error, Result};
use crate::synth::GraphKind;

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse::<T>()
        .map_err(|_| Error::Config(format!("invalid value '{value}' for key '{key}'")))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .map(|v| parse_value::<T>(key, v))
        .collect()
}

/// Parses a config file's contents into a full benchmark configuration.
pub fn parse_config(text: &str) -> Result<BenchConfig> {
    let mut config = BenchConfig::default();
    let mut seen: BTreeSet<String> = BTreeSet::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((raw_key, raw_value)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "line {} is not a key=value pair: '{line}'",
                idx + 1
            )));
        };
        let key = raw_key.trim();
        let value = raw_value.trim();
        if !seen.insert(key.to_string()) {
            return Err(Error::Config(format!("duplicate key '{key}'")));
        }
        match key {
            "n" => config.n = parse_value(key, value)?,
            "p" => config.p_list = parse_list(key, value)?,
            "kinds" => {
                config.kinds = value
                    .split(',')
                    .map(str::trim)
                    .filter(|v| !v.is_empty())
                    .map(|v| v.parse::<GraphKind>())
                    .collect::<Result<_>>()?
            }
            "replicates" => config.replicates = parse_value(key, value)?,
            "seed" => config.master_seed = parse_value(key, value)?,
            "criteria" => {
                config.criteria = value
                    .split(',')
                    .map(str::trim)
                    .filter(|v| !v.is_empty())
                    .map(|v| v.parse::<Criterion>())
                    .collect::<Result<_>>()?
            }
            "edge_prob" => config.edge_prob = Some(parse_value(key, value)?),
            "hub_count" => config.hub_count = Some(parse_value(key, value)?),
            "v" => config.precision.v = parse_value(key, value)?,
            "u" => config.precision.u = parse_value(key, value)?,
            "nlambda" => config.lambda_count = parse_value(key, value)?,
            "lambda_ratio" => config.lambda_ratio = parse_value(key, value)?,
            "glasso_tol" => config.glasso.tol = parse_value(key, value)?,
            "glasso_max_iter" => config.glasso.max_iter = parse_value(key, value)?,
            "m" => config.gni_m = Some(parse_value(key, value)?),
            "gamma" => config.ebic_gammas = parse_list(key, value)?,
            "beta" => config.stars_beta = parse_value(key, value)?,
            "subsamples" => config.stars_subsamples = parse_value(key, value)?,
            "subsample_size" => config.stars_subsample_size = Some(parse_value(key, value)?),
            "permutations" => config.ric_permutations = parse_value(key, value)?,
            unknown => {
                return Err(Error::Config(format!("unknown key '{unknown}'")));
            }
        }
    }
    config.validate()?;
    Ok(config)
}
