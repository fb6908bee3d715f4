//! Reference values produced by `tests/oracle/derive_fixtures.py`.

#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeMap;

const FIXTURES: &str = include_str!("../fixtures/oracle_values.txt");

pub struct Fixtures(BTreeMap<String, f64>);

impl Fixtures {
    pub fn load() -> Self {
        let map = FIXTURES
            .lines()
            .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
            .map(|l| {
                let (k, v) = l.split_once('=').expect("key = value");
                (k.trim().to_string(), v.trim().parse().expect("numeric fixture"))
            })
            .collect();
        Self(map)
    }

    pub fn get(&self, key: &str) -> f64 {
        *self.0.get(key).unwrap_or_else(|| panic!("missing fixture {key}"))
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.0.keys().map(String::as_str)
    }
}

pub fn rel(x: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        x.abs()
    } else {
        ((x - reference) / reference).abs()
    }
}
