//! Run configuration for the verification drivers and the CLI.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::ProfileRegion;
use crate::slicefn::NamedStem;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Verify,
    Converge,
    Hodge,
    KernelDump,
}

impl Command {
    pub fn parse(s: &str) -> Result<Command> {
        match s {
            "verify" => Ok(Command::Verify),
            "converge" => Ok(Command::Converge),
            "hodge" => Ok(Command::Hodge),
            "kernel-dump" => Ok(Command::KernelDump),
            other => Err(Error::Usage(format!(
                "unknown command {other:?}; expected verify|converge|hodge|kernel-dump"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<OutputFormat> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Usage(format!(
                "unknown format {other:?}; expected json|csv"
            ))),
        }
    }
}

/// Profile specification as passed on the command line:
/// `kind=disk,u0=0,v0=2,R=0.5` or
/// `kind=rect,u0=-1,u1=1,v0=1,v1=2` or
/// `kind=sector,u0=0,v0=2,r0=0.2,r1=0.5,th0=0.4,th1=2.2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileSpec {
    pub kind: String,
    pub params: std::collections::BTreeMap<String, f64>,
}

impl ProfileSpec {
    pub fn parse(s: &str) -> Result<ProfileSpec> {
        let mut kind = None;
        let mut params = std::collections::BTreeMap::new();
        for item in s.split(',') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("profile item {item:?} is not key=value")))?;
            if key == "kind" {
                kind = Some(value.to_string());
            } else {
                let v: f64 = value.parse().map_err(|_| {
                    Error::Usage(format!("profile parameter {key}={value:?} is not a number"))
                })?;
                params.insert(key.to_ascii_lowercase(), v);
            }
        }
        Ok(ProfileSpec {
            kind: kind.ok_or_else(|| Error::Usage("profile needs kind=...".into()))?,
            params,
        })
    }

    pub fn disk(u0: f64, v0: f64, r: f64) -> ProfileSpec {
        let mut params = std::collections::BTreeMap::new();
        params.insert("u0".into(), u0);
        params.insert("v0".into(), v0);
        params.insert("r".into(), r);
        ProfileSpec {
            kind: "disk".into(),
            params,
        }
    }

    fn get(&self, key: &str) -> Result<f64> {
        self.params
            .get(key)
            .copied()
            .ok_or_else(|| Error::Usage(format!("profile is missing parameter {key:?}")))
    }

    pub fn to_profile(&self, resolution: usize) -> Result<ProfileRegion> {
        let profile = match self.kind.as_str() {
            "disk" => ProfileRegion::Disk {
                center: (self.get("u0")?, self.get("v0")?),
                radius: self.get("r")?,
                resolution,
            },
            "rect" | "rectangle" => ProfileRegion::Rectangle {
                u_min: self.get("u0")?,
                u_max: self.get("u1")?,
                v_min: self.get("v0")?,
                v_max: self.get("v1")?,
                resolution,
            },
            "sector" | "annulus-sector" => ProfileRegion::AnnulusSector {
                center: (self.get("u0")?, self.get("v0")?),
                r_inner: self.get("r0")?,
                r_outer: self.get("r1")?,
                theta_min: self.get("th0")?,
                theta_max: self.get("th1")?,
                resolution,
            },
            other => {
                return Err(Error::Usage(format!(
                    "unknown profile kind {other:?}; expected disk|rect|sector"
                )))
            }
        };
        profile.validate()?;
        Ok(profile)
    }
}

/// Full run configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub m: usize,
    pub profile: ProfileSpec,
    pub resolutions: Vec<usize>,
    pub sphere_order: usize,
    pub functions: Vec<String>,
    pub p: f64,
    pub seed: u64,
    pub out: Option<String>,
    pub format: OutputFormat,
}

impl RunConfig {
    /// Structural validation shared by all commands.
    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::Usage("m must be >= 1".into()));
        }
        if self.resolutions.is_empty() {
            return Err(Error::Usage("at least one resolution is required".into()));
        }
        if !self.resolutions.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Usage(
                "resolutions must be strictly increasing".into(),
            ));
        }
        match self.command {
            Command::Verify => {
                if self.functions.is_empty() {
                    return Err(Error::Usage("verify needs a nonempty function list".into()));
                }
            }
            Command::Converge => {
                if self.resolutions.len() < 2 {
                    return Err(Error::Usage("converge needs >= 2 resolutions".into()));
                }
                if self.functions.is_empty() {
                    return Err(Error::Usage(
                        "converge needs a nonempty function list".into(),
                    ));
                }
            }
            Command::Hodge | Command::KernelDump => {}
        }
        // the profile must build at the coarsest requested resolution
        self.profile.to_profile(self.resolutions[0])?;
        // function names must parse
        for name in &self.functions {
            NamedStem::parse(name)?;
        }
        Ok(())
    }

    pub fn named_stems(&self) -> Result<Vec<(String, NamedStem)>> {
        self.functions
            .iter()
            .map(|n| NamedStem::parse(n).map(|s| (n.clone(), s)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_config() -> RunConfig {
        RunConfig {
            command: Command::Verify,
            m: 2,
            profile: ProfileSpec::disk(0.0, 2.0, 0.5),
            resolutions: vec![32, 48, 64],
            sphere_order: 16,
            functions: vec!["identity".into(), "conjugate".into(), "exp".into()],
            p: 4.0,
            seed: 7,
            out: None,
            format: OutputFormat::Json,
        }
    }

    #[test]
    fn parse_profile_spec() {
        let spec = ProfileSpec::parse("kind=disk,u0=0,v0=2,R=0.5").unwrap();
        let profile = spec.to_profile(32).unwrap();
        assert_eq!(
            profile,
            ProfileRegion::Disk {
                center: (0.0, 2.0),
                radius: 0.5,
                resolution: 32
            }
        );
        assert!(ProfileSpec::parse("disk,u0=0").is_err());
        assert!(ProfileSpec::parse("kind=pentagon,u0=0")
            .unwrap()
            .to_profile(32)
            .is_err());
    }

    #[test]
    fn validation_rules() {
        assert!(base_config().validate().is_ok());

        let mut c = base_config();
        c.resolutions = vec![48, 32];
        assert!(c.validate().is_err());

        let mut c = base_config();
        c.functions.clear();
        assert!(c.validate().is_err());

        let mut c = base_config();
        c.command = Command::Converge;
        c.resolutions = vec![32];
        assert!(c.validate().is_err());

        // profile touching the real axis is a usage error
        let mut c = base_config();
        c.profile = ProfileSpec::disk(0.0, 0.5, 0.5);
        assert!(c.validate().is_err());

        let mut c = base_config();
        c.functions = vec!["squircle".into()];
        assert!(c.validate().is_err());

        // inv_shift with parameter parses
        let mut c = base_config();
        c.functions = vec!["inv_shift:3.0".into()];
        assert!(c.validate().is_ok());
    }
}
