use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use crate::error::RunError;

/// Energy unit declared by the mandatory `units` key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Units {
    /// Multiples of the hopping `J`; times in `1/J`.
    Hopping,
    ElectronVolt,
}

impl Units {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "J" => Some(Units::Hopping),
            "eV" => Some(Units::ElectronVolt),
            _ => None,
        }
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Units::Hopping => "J",
            Units::ElectronVolt => "eV",
        })
    }
}

/// Raw `key = value` pairs. Duplicate keys are rejected.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>, RunError> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| RunError::syntax(format!("line {}: expected `key = value`", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || k.contains(char::is_whitespace) {
            return Err(RunError::syntax(format!(
                "line {}: malformed key `{k}`",
                n + 1
            )));
        }
        if v.is_empty() {
            return Err(RunError::key(k, "empty value"));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(RunError::key(k, "given more than once"));
        }
    }
    Ok(out)
}

/// Default of a schema key; `None` marks it required.
pub type KeySpec = (&'static str, Option<&'static str>);

/// Keys of one scenario after validation, with defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub units: Units,
    values: BTreeMap<String, String>,
}

/// Value of an optional key with no default.
pub const UNSET: Option<&str> = Some("");

impl Params {
    /// Checks `raw` against the scenario keys. `units` is always required and
    /// must equal `units`.
    pub fn validate(
        raw: &BTreeMap<String, String>,
        schema: &[KeySpec],
        units: Units,
    ) -> Result<Self, RunError> {
        let declared = raw
            .get("units")
            .ok_or_else(|| RunError::key("units", "missing required key (J or eV)"))?;
        let declared = Units::parse(declared)
            .ok_or_else(|| RunError::key("units", format!("`{declared}` is not J or eV")))?;
        if declared != units {
            return Err(RunError::key(
                "units",
                format!("this scenario takes energies in {units}, not {declared}"),
            ));
        }
        if let Some(k) = raw
            .keys()
            .find(|k| *k != "units" && !schema.iter().any(|(s, _)| s == k))
        {
            return Err(RunError::key(k, "unknown key for this scenario"));
        }
        let mut values = BTreeMap::new();
        for &(k, default) in schema {
            match (raw.get(k), default) {
                (Some(v), _) => {
                    values.insert(k.to_string(), v.clone());
                }
                (None, Some(d)) if !d.is_empty() => {
                    values.insert(k.to_string(), d.to_string());
                }
                (None, Some(_)) => {}
                (None, None) => return Err(RunError::key(k, "missing required key")),
            }
        }
        Ok(Params { units, values })
    }

    pub fn has(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    /// Exactly one of `keys` must be present; returns it.
    pub fn one_of<'a>(&self, keys: &[&'a str]) -> Result<&'a str, RunError> {
        let given: Vec<&str> = keys.iter().copied().filter(|k| self.has(k)).collect();
        match given.as_slice() {
            [k] => Ok(k),
            [] => Err(RunError::key(
                keys[0],
                format!("one of {} is required", keys.join(", ")),
            )),
            [_, k, ..] => Err(RunError::key(
                k,
                format!("give only one of {}", keys.join(", ")),
            )),
        }
    }

    fn raw(&self, key: &str) -> Result<&str, RunError> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| RunError::key(key, "missing required key"))
    }

    pub fn f64(&self, key: &str) -> Result<f64, RunError> {
        let v = self.raw(key)?;
        parse_number(v).ok_or_else(|| RunError::key(key, format!("`{v}` is not a finite number")))
    }

    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, RunError> {
        let v = self.raw(key)?;
        v.split(',')
            .map(|x| {
                parse_number(x.trim()).ok_or_else(|| {
                    RunError::key(key, format!("`{}` is not a finite number", x.trim()))
                })
            })
            .collect()
    }

    pub fn usize(&self, key: &str) -> Result<usize, RunError> {
        let v = self.raw(key)?;
        v.parse()
            .map_err(|_| RunError::key(key, format!("`{v}` is not a non-negative integer")))
    }

    pub fn bool(&self, key: &str) -> Result<bool, RunError> {
        match self.raw(key)? {
            "true" => Ok(true),
            "false" => Ok(false),
            v => Err(RunError::key(key, format!("`{v}` is not true or false"))),
        }
    }

    pub fn choice<'a>(&self, key: &str, options: &[&'a str]) -> Result<&'a str, RunError> {
        let v = self.raw(key)?;
        options.iter().copied().find(|o| *o == v).ok_or_else(|| {
            RunError::key(key, format!("`{v}` is not one of {}", options.join(", ")))
        })
    }

    /// Resolved inputs as `key = value` lines, sorted by key.
    pub fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("units = {}", self.units)];
        out.extend(self.values.iter().map(|(k, v)| format!("{k} = {v}")));
        out.sort();
        out
    }
}

/// A float, or a product of floats and `pi` optionally divided by a float:
/// `0.5`, `pi/30`, `2*pi/3`.
pub fn parse_number(s: &str) -> Option<f64> {
    fn factor(t: &str) -> Option<f64> {
        let t = t.trim();
        match t.strip_prefix('-') {
            Some(r) => factor(r).map(|x| -x),
            None if t == "pi" => Some(PI),
            None => t.parse().ok(),
        }
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let mut x = 1.0;
    for t in num.split('*') {
        x *= factor(t)?;
    }
    if let Some(d) = den {
        x /= factor(d)?;
    }
    x.is_finite().then_some(x)
}
