//! Optional key-value config file: one `key = value` per line, `#` comments.
//! Keys mirror the long flag names; flags given on the command line win.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::errors::CliError;

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: HashMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!(
                    "{}:{}: expected `key = value`, got `{raw}`",
                    path.display(),
                    lineno + 1
                )));
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(ConfigFile { values })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Fill a missing flag with the config value, parsed like the flag.
    pub fn fill_real(&self, slot: &mut Option<f64>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(raw) = self.raw(key) {
                *slot = Some(crate::parse_real(raw).map_err(|e| {
                    CliError::config(format!("config key `{key}`: {e}"))
                })?);
            }
        }
        Ok(())
    }

    pub fn fill_usize(&self, slot: &mut Option<usize>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(raw) = self.raw(key) {
                *slot = Some(raw.parse().map_err(|e| {
                    CliError::config(format!("config key `{key}`: {e}"))
                })?);
            }
        }
        Ok(())
    }

    pub fn fill_string(&self, slot: &mut Option<String>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(raw) = self.raw(key) {
                *slot = Some(raw.to_string());
            }
        }
        Ok(())
    }

    pub fn fill_path(&self, slot: &mut Option<PathBuf>, key: &str) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(raw) = self.raw(key) {
                *slot = Some(PathBuf::from(raw));
            }
        }
        Ok(())
    }

    /// Fill a typed flag through the same parser its clap definition uses.
    pub fn fill_with<T>(
        &self,
        slot: &mut Option<T>,
        key: &str,
        parse: impl Fn(&str) -> Result<T, String>,
    ) -> Result<(), CliError> {
        if slot.is_none() {
            if let Some(raw) = self.raw(key) {
                *slot = Some(
                    parse(raw).map_err(|e| CliError::config(format!("config key `{key}`: {e}")))?,
                );
            }
        }
        Ok(())
    }

    pub fn fill_flag(&self, slot: &mut bool, key: &str) -> Result<(), CliError> {
        if !*slot {
            if let Some(raw) = self.raw(key) {
                *slot = match raw {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    other => {
                        return Err(CliError::config(format!(
                            "config key `{key}`: expected true/false, got `{other}`"
                        )))
                    }
                };
            }
        }
        Ok(())
    }
}
