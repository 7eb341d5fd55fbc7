use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Realm {
    RealWorld,
    Synthetic,
}

/// Which KS group a dataset's test-pair correlations feed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Reference,
    Inspecting,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetDescriptor {
    pub id: String,
    pub realm: Realm,
    /// Datasets without a test partition are only ever used for training.
    #[serde(default)]
    pub train_only: bool,
    #[serde(rename = "role_tag")]
    pub role: Role,
}

impl DatasetDescriptor {
    pub fn new(id: impl Into<String>, realm: Realm, train_only: bool, role: Role) -> Self {
        Self {
            id: id.into(),
            realm,
            train_only,
            role,
        }
    }
}

/// Ordered set of datasets; the order drives canonical report layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<DatasetDescriptor>", into = "Vec<DatasetDescriptor>")]
pub struct DatasetRegistry {
    datasets: Vec<DatasetDescriptor>,
}

impl DatasetRegistry {
    pub fn new(datasets: Vec<DatasetDescriptor>) -> Result<Self> {
        let mut seen = HashSet::new();
        for d in &datasets {
            if !seen.insert(d.id.as_str()) {
                return Err(Error::Registry(format!("duplicate dataset id `{}`", d.id)));
            }
            if d.role == Role::Inspecting && d.train_only {
                return Err(Error::Registry(format!(
                    "dataset `{}` is train-only and cannot be inspected",
                    d.id
                )));
            }
        }
        Ok(Self { datasets })
    }

    pub fn datasets(&self) -> &[DatasetDescriptor] {
        &self.datasets
    }

    pub fn get(&self, id: &str) -> Option<&DatasetDescriptor> {
        self.datasets.iter().find(|d| d.id == id)
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.datasets.iter().position(|d| d.id == id)
    }

    pub(crate) fn require(&self, id: &str) -> Result<&DatasetDescriptor> {
        self.get(id)
            .ok_or_else(|| Error::UnknownDataset(id.to_string()))
    }

    /// Datasets that can appear in test pairs with the given role.
    pub fn testable_with_role(&self, role: Role) -> impl Iterator<Item = &DatasetDescriptor> {
        self.datasets
            .iter()
            .filter(move |d| !d.train_only && d.role == role)
    }
}

impl TryFrom<Vec<DatasetDescriptor>> for DatasetRegistry {
    type Error = Error;

    fn try_from(v: Vec<DatasetDescriptor>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DatasetRegistry> for Vec<DatasetDescriptor> {
    fn from(r: DatasetRegistry) -> Self {
        r.datasets
    }
}
