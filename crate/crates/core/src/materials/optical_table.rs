use std::path::Path;

use crate::error::{Error, Result};
use crate::Real;

/// Upper bound on the first tabulated photon energy, eV.
pub const TABLE_COVERAGE_START_EV: f64 = 0.125;

const STANDIN: &str = include_str!("../../data/gold_re_impedance_standin.txt");

/// Tabulated real part of the surface impedance, Re Z(E), with E in eV.
///
/// Rows are sorted by energy, strictly increasing, with Re Z ≥ 0. Values in
/// between rows are linearly interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalTable<T> {
    energies: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> OpticalTable<T> {
    /// Builds a table from (energy eV, Re Z) rows in any order.
    pub fn from_rows(mut rows: Vec<(T, T)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Table("empty table".into()));
        }
        if let Some(&(e, y)) = rows.iter().find(|(e, y)| !e.is_finite() || !y.is_finite()) {
            return Err(Error::Table(format!("non-finite row ({e}, {y})")));
        }
        if let Some(&(e, y)) = rows.iter().find(|(_, y)| *y < T::zero()) {
            return Err(Error::Table(format!("negative Re Z = {y} at {e} eV")));
        }
        if let Some(&(e, _)) = rows.iter().find(|(e, _)| *e <= T::zero()) {
            return Err(Error::Table(format!("non-positive photon energy {e} eV")));
        }
        rows.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite energies"));
        if let Some(w) = rows.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::Table(format!("duplicate photon energy {} eV", w[0].0)));
        }
        if rows.len() < 2 {
            return Err(Error::Table("at least two rows are required".into()));
        }
        if rows[0].0 > T::lit(TABLE_COVERAGE_START_EV) {
            return Err(Error::Table(format!(
                "coverage starts at {} eV, must start at or below {TABLE_COVERAGE_START_EV} eV",
                rows[0].0
            )));
        }
        let (energies, values) = rows.into_iter().unzip();
        Ok(Self { energies, values })
    }

    /// Parses the two-column text format; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = index + 1;
            let mut fields = line.split_whitespace();
            let mut column = |name: &str| -> Result<T> {
                let field = fields.next().ok_or_else(|| Error::TableParse {
                    line: lineno,
                    message: format!("missing {name} column"),
                })?;
                let v: f64 = field.parse().map_err(|_| Error::TableParse {
                    line: lineno,
                    message: format!("cannot parse {name} value {field:?}"),
                })?;
                T::from_f64(v).ok_or_else(|| Error::TableParse {
                    line: lineno,
                    message: format!("{name} value {v} not representable"),
                })
            };
            let energy = column("energy")?;
            let value = column("Re Z")?;
            if let Some(extra) = fields.next() {
                return Err(Error::TableParse {
                    line: lineno,
                    message: format!("unexpected third column {extra:?}"),
                });
            }
            rows.push((energy, value));
        }
        Self::from_rows(rows)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Smooth stand-in for tabulated gold data, 0.125–5 eV, shipped with the
    /// crate. Replace with measured data via [`OpticalTable::load`].
    pub fn gold_standin() -> Self {
        Self::parse(STANDIN).expect("bundled stand-in table is valid")
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn min_energy(&self) -> T {
        self.energies[0]
    }

    pub fn max_energy(&self) -> T {
        self.energies[self.energies.len() - 1]
    }

    pub fn rows(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.energies.iter().copied().zip(self.values.iter().copied())
    }

    /// Linear interpolation of Re Z at `energy_ev`; outside the tabulated
    /// range this is a range error.
    pub fn interpolate(&self, energy_ev: T) -> Result<T> {
        if !(energy_ev >= self.min_energy() && energy_ev <= self.max_energy()) {
            return Err(Error::Range(format!(
                "photon energy {energy_ev} eV outside table coverage [{}, {}] eV",
                self.min_energy(),
                self.max_energy()
            )));
        }
        let upper = self.energies.partition_point(|&e| e < energy_ev);
        if upper == 0 {
            return Ok(self.values[0]);
        }
        let (e0, e1) = (self.energies[upper - 1], self.energies[upper]);
        let (y0, y1) = (self.values[upper - 1], self.values[upper]);
        let t = (energy_ev - e0) / (e1 - e0);
        Ok(y0 + t * (y1 - y0))
    }
}
