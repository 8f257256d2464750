//! Run configuration and its canonical one-line form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use ccdiff::walshlab::DEFAULT_WORK_LIMIT;
use ccdiff::{Error, Kind};

/// How the multipliers `c` are chosen.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum CSelection {
    #[default]
    Unset,
    Single(u32),
    /// Every nonzero codomain element other than 1.
    Sweep,
    List(Vec<u32>),
}

impl fmt::Display for CSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CSelection::Unset => f.write_str("unset"),
            CSelection::Single(c) => write!(f, "{c}"),
            CSelection::Sweep => f.write_str("sweep"),
            CSelection::List(cs) => {
                let parts: Vec<String> = cs.iter().map(u32::to_string).collect();
                write!(f, "list:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for CSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<CSelection, Error> {
        let bad = || Error::Parse(format!("bad c selection {s:?}"));
        Ok(match s {
            "unset" => CSelection::Unset,
            "sweep" => CSelection::Sweep,
            _ => match s.strip_prefix("list:") {
                Some(rest) => CSelection::List(
                    rest.split(',').map(|t| t.parse().map_err(|_| bad())).collect::<Result<_, _>>()?,
                ),
                None => CSelection::Single(s.parse().map_err(|_| bad())?),
            },
        })
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    /// Lookup-table file, for commands that produce a function.
    Lut,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Lut => "lut",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format, Error> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "lut" => Ok(Format::Lut),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

/// Everything that determines a run's output. Thread count is deliberately absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: String,
    pub field: Option<String>,
    pub func: Option<String>,
    pub codomain: Option<u32>,
    pub c: CSelection,
    pub kind: Kind,
    pub format: Format,
    pub out: Option<String>,
    pub work_limit: u128,
    pub seed: u64,
    pub options: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn new(command: &str) -> RunConfig {
        RunConfig {
            command: command.to_string(),
            field: None,
            func: None,
            codomain: None,
            c: CSelection::Unset,
            kind: Kind::Cc,
            format: Format::Json,
            out: None,
            work_limit: DEFAULT_WORK_LIMIT,
            seed: 0,
            options: BTreeMap::new(),
        }
    }

    pub fn option<T: FromStr>(&self, key: &str) -> Result<Option<T>, Error> {
        self.options
            .get(key)
            .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad value {v:?} for {key}"))))
            .transpose()
    }
}

fn check_token(key: &str, value: &str) -> Result<(), Error> {
    if value.is_empty() || value.contains(char::is_whitespace) {
        return Err(Error::Parse(format!("{key} value {value:?} must be non-empty without spaces")));
    }
    Ok(())
}

/// Space-separated `key=value` pairs in a fixed order; unset optional keys are omitted.
impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cmd={}", self.command)?;
        if let Some(v) = &self.field {
            write!(f, " field={v}")?;
        }
        if let Some(v) = &self.func {
            write!(f, " func={v}")?;
        }
        if let Some(v) = self.codomain {
            write!(f, " codomain={v}")?;
        }
        write!(f, " c={} kind={} format={}", self.c, self.kind, self.format)?;
        if let Some(v) = &self.out {
            write!(f, " out={v}")?;
        }
        write!(f, " work-limit={} seed={}", self.work_limit, self.seed)?;
        for (k, v) in &self.options {
            write!(f, " opt.{k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for RunConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<RunConfig, Error> {
        let mut cfg: Option<RunConfig> = None;
        for token in s.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("config token {token:?} lacks '='")))?;
            check_token(key, value)?;
            if key == "cmd" {
                if cfg.is_some() {
                    return Err(Error::Parse("duplicate cmd".into()));
                }
                cfg = Some(RunConfig::new(value));
                continue;
            }
            let c = cfg.as_mut().ok_or_else(|| Error::Parse("config must start with cmd=".into()))?;
            let num = |v: &str| Error::Parse(format!("bad number {v:?} for {key}"));
            match key {
                "field" => c.field = Some(value.to_string()),
                "func" => c.func = Some(value.to_string()),
                "codomain" => c.codomain = Some(value.parse().map_err(|_| num(value))?),
                "c" => c.c = value.parse()?,
                "kind" => c.kind = value.parse()?,
                "format" => c.format = value.parse()?,
                "out" => c.out = Some(value.to_string()),
                "work-limit" => c.work_limit = value.parse().map_err(|_| num(value))?,
                "seed" => c.seed = value.parse().map_err(|_| num(value))?,
                _ => match key.strip_prefix("opt.") {
                    Some(k) if !k.is_empty() => {
                        c.options.insert(k.to_string(), value.to_string());
                    }
                    _ => return Err(Error::Parse(format!("unknown config key {key:?}"))),
                },
            }
        }
        cfg.ok_or_else(|| Error::Parse("empty config".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let mut cfg = RunConfig::new("walsh");
        cfg.field = Some("gf(3^2)".into());
        cfg.func = Some("poly:0,0,1".into());
        cfg.codomain = Some(1);
        cfg.c = CSelection::List(vec![2, 5]);
        cfg.kind = Kind::C;
        cfg.format = Format::Csv;
        cfg.out = Some("/tmp/x.csv".into());
        cfg.seed = 9;
        cfg.options.insert("m".into(), "2".into());
        let text = cfg.to_string();
        assert_eq!(text.parse::<RunConfig>().unwrap(), cfg);
        assert_eq!(text.parse::<RunConfig>().unwrap().to_string(), text);

        let bare = RunConfig::new("paper");
        assert_eq!(bare.to_string().parse::<RunConfig>().unwrap(), bare);
    }

    #[test]
    fn rejects_malformed() {
        assert!("field=gf(2^4)".parse::<RunConfig>().is_err());
        assert!("cmd=ddt bogus=1".parse::<RunConfig>().is_err());
        assert!("cmd=ddt c=list:1,x".parse::<RunConfig>().is_err());
        assert!("cmd=ddt seed".parse::<RunConfig>().is_err());
    }
}
