use std::str::FromStr;

use crate::error::CliError;

/// `key=a:b:n` (n evenly spaced values, both ends included) or `key=v1,v2,...`.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub key: String,
    pub values: Vec<f64>,
}

impl AxisSpec {
    pub fn new(key: &str, values: Vec<f64>) -> Self {
        Self {
            key: key.to_owned(),
            values,
        }
    }
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|k| {
                if k == n - 1 {
                    b
                } else {
                    a + (b - a) * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

impl FromStr for AxisSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| CliError::field(format!("axis `{s}`"), why);
        let (key, spec) = s
            .split_once('=')
            .ok_or_else(|| bad("expected key=a:b:n or key=v1,v2"))?;
        let key = key.trim();
        if key.is_empty() {
            return Err(bad("empty key"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad("not a number"));
        let values = if spec.contains(':') {
            let parts: Vec<&str> = spec.split(':').collect();
            let [a, b, n] = parts.as_slice() else {
                return Err(bad("range needs exactly a:b:n"));
            };
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| bad("count must be a positive integer"))?;
            if n == 0 {
                return Err(bad("count must be a positive integer"));
            }
            linspace(num(a)?, num(b)?, n)
        } else {
            spec.split(',').map(num).collect::<Result<Vec<_>, _>>()?
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(bad("values must be finite"));
        }
        Ok(Self::new(key, values))
    }
}
