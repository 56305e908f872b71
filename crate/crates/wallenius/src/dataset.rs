//! Datasets: one or more contingency tables bound to a weight model.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::mix64;
use crate::simulate::simulate_draw;
use crate::urn::{DrawOutcome, UrnSpec, WeightVector};

/// How tables share weight parameters: one weight vector for all tables, or
/// an independent vector per table (per unit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Binding {
    SharedWeights,
    PerUnitWeights,
}

/// One observed table: an urn and a draw from it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub id: String,
    pub urn: UrnSpec,
    pub outcome: DrawOutcome,
}

impl Table {
    pub fn new(id: impl Into<String>, urn: UrnSpec, outcome: DrawOutcome) -> Result<Self> {
        urn.validate_outcome(&outcome)?;
        Ok(Self { id: id.into(), urn, outcome })
    }

    /// A table carries no information about the weights when nothing or
    /// everything was drawn.
    pub fn is_degenerate(&self) -> bool {
        self.outcome.n() == 0 || self.outcome.n() == self.urn.total()
    }
}

/// One distinct (stock, outcome) pair with its multiplicity; repeated
/// tables contribute identical log masses, so the likelihood sums over
/// these groups instead of raw tables.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct TableGroup {
    pub counts: Vec<u64>,
    pub x: Vec<u64>,
    pub multiplicity: f64,
}

/// A validated collection of tables with identical category structure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    tables: Vec<Table>,
    binding: Binding,
    #[serde(skip)]
    groups: Vec<TableGroup>,
}

impl Dataset {
    pub fn new(tables: Vec<Table>, binding: Binding) -> Result<Self> {
        if tables.is_empty() {
            return Err(Error::Validation("dataset has no tables".into()));
        }
        let labels = tables[0].urn.labels();
        for t in &tables {
            if t.urn.labels() != labels {
                return Err(Error::Validation(format!(
                    "table {:?} has different categories than table {:?}",
                    t.id, tables[0].id
                )));
            }
        }
        for (i, t) in tables.iter().enumerate() {
            if tables[..i].iter().any(|s| s.id == t.id) {
                return Err(Error::Validation(format!("duplicate table id {:?}", t.id)));
            }
        }
        let groups = group_tables(&tables);
        Ok(Self { tables, binding, groups })
    }

    pub fn tables(&self) -> &[Table] {
        &self.tables
    }

    pub fn binding(&self) -> Binding {
        self.binding
    }

    pub fn labels(&self) -> &[String] {
        self.tables[0].urn.labels()
    }

    /// Number of categories.
    pub fn k(&self) -> usize {
        self.tables[0].urn.k()
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    /// A single-table dataset sharing this dataset's labels.
    pub fn single(&self, index: usize) -> Dataset {
        let tables = vec![self.tables[index].clone()];
        let groups = group_tables(&tables);
        Dataset { tables, binding: Binding::SharedWeights, groups }
    }

    pub(crate) fn groups(&self) -> &[TableGroup] {
        &self.groups
    }

    pub fn require_shared_binding(&self) -> Result<()> {
        if self.binding != Binding::SharedWeights {
            return Err(Error::Validation(
                "operation requires shared-weight binding".into(),
            ));
        }
        Ok(())
    }
}

fn group_tables(tables: &[Table]) -> Vec<TableGroup> {
    let mut groups: Vec<TableGroup> = Vec::new();
    let mut index: HashMap<(&[u64], &[u64]), usize> = HashMap::new();
    for t in tables {
        let key = (t.urn.counts(), t.outcome.counts());
        match index.get(&key) {
            Some(&i) => groups[i].multiplicity += 1.0,
            None => {
                index.insert(key, groups.len());
                groups.push(TableGroup {
                    counts: t.urn.counts().to_vec(),
                    x: t.outcome.counts().to_vec(),
                    multiplicity: 1.0,
                });
            }
        }
    }
    groups
}

/// Simulates `t_tables` independent tables of `n` draws each from the same
/// urn and weights. Per-table seeds derive from `seed` by table index, so
/// table `i` is stable regardless of `t_tables`.
pub fn simulate_dataset(
    urn: &UrnSpec,
    w: &WeightVector,
    n: u64,
    t_tables: usize,
    seed: u64,
) -> Result<Dataset> {
    if t_tables == 0 {
        return Err(Error::Domain("need at least one table".into()));
    }
    let mut tables = Vec::with_capacity(t_tables);
    for i in 0..t_tables {
        let outcome = simulate_draw(urn, w, n, mix64(seed, i as u64))?;
        tables.push(Table::new(format!("t{:04}", i + 1), urn.clone(), outcome)?);
    }
    Dataset::new(tables, Binding::SharedWeights)
}
