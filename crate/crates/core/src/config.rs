//! Field configuration files.
//!
//! A config is a flat `key = value` file with one `[field]` section and an
//! optional global `json` flag, e.g.
//!
//! ```text
//! # F_4 with the Frobenius twist and the inner derivation at g
//! json = false
//!
//! [field]
//! kind = fq
//! p = 2
//! modulus = [1, 1, 1]
//! frobenius_power = 1
//! derivation_c = g
//! ```
//!
//! Recognised kinds are `fq`, `gaussian` (with `sigma = conj|id`, default
//! `conj`) and `quaternions`. `modulus` lists coefficients low-to-high;
//! `frobenius_power` defaults to `1 mod deg(modulus)`. `derivation_c` takes
//! an element literal and switches on the inner derivation δ_c.

use thiserror::Error;

use crate::scalar::{FieldDescriptor, FieldRef, GaussianSigma, Scalar, ScalarError};

#[derive(Clone, Debug)]
pub struct Config {
    field: FieldRef,
    json: bool,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    BadLine { line: usize },
    #[error("line {line}: unknown section [{name}] (only [field] is recognised)")]
    UnknownSection { line: usize, name: String },
    #[error("line {line}: duplicate [field] section")]
    DuplicateSection { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: key {key:?} given twice")]
    DuplicateKey { line: usize, key: String },
    #[error("line {line}: key {key:?} does not apply to kind {kind:?}")]
    KeyNotApplicable {
        line: usize,
        key: &'static str,
        kind: String,
    },
    #[error("line {line}: bad value for {key:?}: {msg}")]
    BadValue {
        line: usize,
        key: &'static str,
        msg: String,
    },
    #[error("missing [field] section")]
    MissingSection,
    #[error("missing required key {0:?}")]
    MissingKey(&'static str),
    #[error(transparent)]
    Field(#[from] ScalarError),
}

/// One `key = value` occurrence with its line number.
type Entry = (usize, String);

fn take(map: &mut Vec<(String, Entry)>, key: &str) -> Option<Entry> {
    let idx = map.iter().position(|(k, _)| k == key)?;
    Some(map.remove(idx).1)
}

impl Config {
    /// Parse config text into a field descriptor plus output options.
    pub fn parse(text: &str) -> Result<Config, ConfigError> {
        let mut globals: Vec<(String, Entry)> = Vec::new();
        let mut field_keys: Vec<(String, Entry)> = Vec::new();
        let mut in_field = false;
        let mut seen_field = false;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let stripped = stripped.trim();
            if stripped.is_empty() {
                continue;
            }
            if let Some(rest) = stripped.strip_prefix('[') {
                let Some(name) = rest.strip_suffix(']') else {
                    return Err(ConfigError::BadLine { line });
                };
                if name.trim() != "field" {
                    return Err(ConfigError::UnknownSection {
                        line,
                        name: name.trim().to_string(),
                    });
                }
                if seen_field {
                    return Err(ConfigError::DuplicateSection { line });
                }
                seen_field = true;
                in_field = true;
                continue;
            }
            let Some(eq) = stripped.find('=') else {
                return Err(ConfigError::BadLine { line });
            };
            let key = stripped[..eq].trim().to_string();
            let value = stripped[eq + 1..].trim().to_string();
            if key.is_empty() {
                return Err(ConfigError::BadLine { line });
            }
            let bucket = if in_field {
                &mut field_keys
            } else {
                &mut globals
            };
            if bucket.iter().any(|(k, _)| *k == key) {
                return Err(ConfigError::DuplicateKey { line, key });
            }
            bucket.push((key, (line, value)));
        }

        let json = match take(&mut globals, "json") {
            None => false,
            Some((line, v)) => match v.as_str() {
                "true" => true,
                "false" => false,
                _ => {
                    return Err(ConfigError::BadValue {
                        line,
                        key: "json",
                        msg: format!("expected true or false, got {v:?}"),
                    })
                }
            },
        };
        if let Some((key, (line, _))) = globals.into_iter().next() {
            return Err(ConfigError::UnknownKey { line, key });
        }
        if !seen_field {
            return Err(ConfigError::MissingSection);
        }

        let field = build_field(&mut field_keys)?;
        if let Some((key, (line, _))) = field_keys.into_iter().next() {
            return Err(ConfigError::UnknownKey { line, key });
        }
        Ok(Config { field, json })
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn json(&self) -> bool {
        self.json
    }

    pub fn set_json(&mut self, json: bool) {
        self.json = json;
    }
}

fn parse_u64(entry: &Entry, key: &'static str) -> Result<u64, ConfigError> {
    entry.1.parse().map_err(|_| ConfigError::BadValue {
        line: entry.0,
        key,
        msg: format!("expected a nonnegative integer, got {:?}", entry.1),
    })
}

fn parse_modulus(entry: &Entry) -> Result<Vec<u64>, ConfigError> {
    let bad = |msg: String| ConfigError::BadValue {
        line: entry.0,
        key: "modulus",
        msg,
    };
    let v = entry.1.trim();
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad(format!("expected [c0, c1, ...], got {v:?}")))?;
    inner
        .split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| bad(format!("bad coefficient {:?}", part.trim())))
        })
        .collect()
}

fn reject_inapplicable(
    keys: &mut Vec<(String, Entry)>,
    kind: &str,
    inapplicable: &[&'static str],
) -> Result<(), ConfigError> {
    for &key in inapplicable {
        if let Some((line, _)) = take(keys, key) {
            return Err(ConfigError::KeyNotApplicable {
                line,
                key,
                kind: kind.to_string(),
            });
        }
    }
    Ok(())
}

fn build_field(keys: &mut Vec<(String, Entry)>) -> Result<FieldRef, ConfigError> {
    let kind = take(keys, "kind").ok_or(ConfigError::MissingKey("kind"))?;
    let base = match kind.1.as_str() {
        "fq" => {
            reject_inapplicable(keys, "fq", &["sigma"])?;
            let p = take(keys, "p").ok_or(ConfigError::MissingKey("p"))?;
            let p = parse_u64(&p, "p")?;
            let modulus_entry = take(keys, "modulus").ok_or(ConfigError::MissingKey("modulus"))?;
            let modulus = parse_modulus(&modulus_entry)?;
            if modulus.len() < 2 {
                return Err(ConfigError::BadValue {
                    line: modulus_entry.0,
                    key: "modulus",
                    msg: "modulus needs degree at least 1".to_string(),
                });
            }
            let n = (modulus.len() - 1) as u64;
            let power = match take(keys, "frobenius_power") {
                Some(entry) => {
                    let power = parse_u64(&entry, "frobenius_power")?;
                    if power >= n {
                        return Err(ConfigError::BadValue {
                            line: entry.0,
                            key: "frobenius_power",
                            msg: format!("must be below the modulus degree {n}, got {power}"),
                        });
                    }
                    power
                }
                None => 1 % n,
            };
            FieldDescriptor::finite_field(p, &modulus, power)?
        }
        "gaussian" => {
            reject_inapplicable(keys, "gaussian", &["p", "modulus", "frobenius_power"])?;
            let sigma = match take(keys, "sigma") {
                None => GaussianSigma::Conjugation,
                Some((line, v)) => match v.as_str() {
                    "conj" => GaussianSigma::Conjugation,
                    "id" => GaussianSigma::Identity,
                    _ => {
                        return Err(ConfigError::BadValue {
                            line,
                            key: "sigma",
                            msg: format!("expected conj or id, got {v:?}"),
                        })
                    }
                },
            };
            FieldDescriptor::gaussian(sigma)
        }
        "quaternions" => {
            reject_inapplicable(
                keys,
                "quaternions",
                &["p", "modulus", "frobenius_power", "sigma"],
            )?;
            FieldDescriptor::quaternions()
        }
        other => {
            return Err(ConfigError::BadValue {
                line: kind.0,
                key: "kind",
                msg: format!("expected fq, gaussian or quaternions, got {other:?}"),
            })
        }
    };
    match take(keys, "derivation_c") {
        None => Ok(base),
        Some((line, literal)) => {
            let c = Scalar::parse(&base, &literal).map_err(|e| ConfigError::BadValue {
                line,
                key: "derivation_c",
                msg: e.to_string(),
            })?;
            Ok(base.with_inner_derivation(&c)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldKind;

    #[test]
    fn parses_each_kind() {
        let cfg = Config::parse(
            "# derived F_4\njson = true\n\n[field]\nkind = fq\np = 2\nmodulus = [1, 1, 1]\nfrobenius_power = 1\nderivation_c = g\n",
        )
        .unwrap();
        assert!(cfg.json());
        let k = cfg.field();
        assert_eq!(k.characteristic(), 2);
        assert_eq!(k.base_dim(), 2);
        let g = Scalar::parse(k, "g").unwrap();
        assert_eq!(g.delta(), Scalar::parse(k, "g").unwrap());

        let cfg = Config::parse("[field]\nkind = gaussian\n").unwrap();
        assert!(!cfg.json());
        assert!(matches!(
            cfg.field().kind(),
            FieldKind::Gaussian {
                sigma: GaussianSigma::Conjugation
            }
        ));
        let cfg = Config::parse("[field]\nkind = gaussian\nsigma = id\n").unwrap();
        assert!(matches!(
            cfg.field().kind(),
            FieldKind::Gaussian {
                sigma: GaussianSigma::Identity
            }
        ));

        let cfg =
            Config::parse("[field] # trailing comment\nkind = quaternions\nderivation_c = i\n")
                .unwrap();
        let h = cfg.field();
        let j = Scalar::parse(h, "j").unwrap();
        // δ_i(j) = ij − ji = 2k.
        assert_eq!(j.delta(), Scalar::parse(h, "2k").unwrap());
    }

    #[test]
    fn default_frobenius_power_wraps() {
        // Prime field: deg 1 modulus forces power 0.
        let cfg = Config::parse("[field]\nkind = fq\np = 5\nmodulus = [3, 1]\n").unwrap();
        let k = cfg.field();
        let two = Scalar::parse(k, "2").unwrap();
        assert_eq!(two.sigma(), two);
        // Degree 2 default is the plain Frobenius.
        let cfg = Config::parse("[field]\nkind = fq\np = 2\nmodulus = [1,1,1]\n").unwrap();
        let k = cfg.field();
        let g = Scalar::parse(k, "g").unwrap();
        assert_eq!(g.sigma(), Scalar::parse(k, "g+1").unwrap());
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(
            Config::parse(""),
            Err(ConfigError::MissingSection)
        ));
        assert!(matches!(
            Config::parse("[ring]\nkind = fq\n"),
            Err(ConfigError::UnknownSection { line: 1, .. })
        ));
        assert!(matches!(
            Config::parse("[field]\nkind = fq\np = 2\nmodulus = [1,1,1]\n[field]\nkind = fq\n"),
            Err(ConfigError::DuplicateSection { line: 5 })
        ));
        assert!(matches!(
            Config::parse("[field]\nkind = elliptic\n"),
            Err(ConfigError::BadValue { key: "kind", .. })
        ));
        assert!(matches!(
            Config::parse("[field]\np = 2\n"),
            Err(ConfigError::MissingKey("kind"))
        ));
        assert!(matches!(
            Config::parse("[field]\nkind = fq\np = 2\n"),
            Err(ConfigError::MissingKey("modulus"))
        ));
        assert!(matches!(
            Config::parse("[field]\nkind = quaternions\nsigma = conj\n"),
            Err(ConfigError::KeyNotApplicable { key: "sigma", .. })
        ));
        assert!(matches!(
            Config::parse("[field]\nkind = gaussian\nkind = fq\n"),
            Err(ConfigError::DuplicateKey { line: 3, .. })
        ));
        assert!(matches!(
            Config::parse("[field]\nkind = gaussian\ncolour = green\n"),
            Err(ConfigError::UnknownKey { line: 3, .. })
        ));
        assert!(matches!(
            Config::parse("volume = 11\n[field]\nkind = gaussian\n"),
            Err(ConfigError::UnknownKey { line: 1, .. })
        ));
        assert!(matches!(
            Config::parse("[field]\nkind = fq\np = 4\nmodulus = [1,1,1]\n"),
            Err(ConfigError::Field(_))
        ));
        // Reducible modulus: t^2 + 1 = (t+1)^2 over F_2.
        assert!(matches!(
            Config::parse("[field]\nkind = fq\np = 2\nmodulus = [1,0,1]\n"),
            Err(ConfigError::Field(_))
        ));
        assert!(matches!(
            Config::parse("[field]\nkind = fq\np = 2\nmodulus = [1,1,1]\nfrobenius_power = 2\n"),
            Err(ConfigError::BadValue {
                key: "frobenius_power",
                ..
            })
        ));
        assert!(matches!(
            Config::parse("[field]\nkind = fq\np = 2\nmodulus = 1,1,1\n"),
            Err(ConfigError::BadValue { key: "modulus", .. })
        ));
        assert!(matches!(
            Config::parse("[field]\nkind = gaussian\nderivation_c = 1+\n"),
            Err(ConfigError::BadValue {
                key: "derivation_c",
                ..
            })
        ));
        assert!(matches!(
            Config::parse("json = maybe\n[field]\nkind = gaussian\n"),
            Err(ConfigError::BadValue { key: "json", .. })
        ));
        assert!(matches!(
            Config::parse("[field]\nkind fq\n"),
            Err(ConfigError::BadLine { line: 2 })
        ));
    }
}
