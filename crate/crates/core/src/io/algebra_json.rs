use serde::{Deserialize, Serialize};

use super::{to_canonical, FormatError};
use crate::algebra::{derive_lattice, sup_residuum, DrlParts, Elem, FiniteDRL, Order, Table};

/// On-disk algebra. `meet`, `join` and `residuum` may be omitted and are then
/// derived from `leq` and `otimes`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub size: usize,
    pub top: Elem,
    pub bottom: Elem,
    pub leq: Vec<Vec<u8>>,
    pub otimes: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Vec<Elem>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residuum: Option<Vec<Vec<Elem>>>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &FiniteDRL) -> Self {
        AlgebraFile {
            name: a.name().to_owned(),
            size: a.size(),
            top: a.top(),
            bottom: a.bottom(),
            leq: a
                .order()
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(u8::from).collect())
                .collect(),
            otimes: a.otimes_table().rows(),
            meet: Some(a.meet_table().rows()),
            join: Some(a.join_table().rows()),
            residuum: Some(a.residuum_table().rows()),
        }
    }

    /// Fills in absent tables without checking any axiom.
    pub fn into_algebra_unchecked(self) -> Result<FiniteDRL, FormatError> {
        let square = |rows: &Vec<Vec<Elem>>, what: &str| -> Result<Table, FormatError> {
            if rows.len() != self.size {
                return Err(FormatError::Parse(format!(
                    "{what} has {} rows, expected {}",
                    rows.len(),
                    self.size
                )));
            }
            Ok(Table::from_rows(rows)?)
        };
        if self.leq.len() != self.size {
            return Err(FormatError::Parse(format!(
                "leq has {} rows, expected {}",
                self.leq.len(),
                self.size
            )));
        }
        let leq_rows = self
            .leq
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&b| match b {
                        0 => Ok(false),
                        1 => Ok(true),
                        other => Err(FormatError::Parse(format!(
                            "leq entry {other} is not 0 or 1"
                        ))),
                    })
                    .collect::<Result<Vec<bool>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let leq = Order::from_rows(&leq_rows)?;
        let otimes = square(&self.otimes, "otimes")?;
        let (meet, join) = match (&self.meet, &self.join) {
            (Some(m), Some(j)) => (square(m, "meet")?, square(j, "join")?),
            (m, j) => {
                let lattice = derive_lattice(&leq)?;
                (
                    m.as_ref().map_or(Ok(lattice.meet), |m| square(m, "meet"))?,
                    j.as_ref().map_or(Ok(lattice.join), |j| square(j, "join"))?,
                )
            }
        };
        if self.bottom >= self.size {
            return Err(FormatError::Parse("bottom is not an element id".into()));
        }
        let residuum = match &self.residuum {
            Some(r) => square(r, "residuum")?,
            None => sup_residuum(&leq, &join, &otimes, self.bottom),
        };
        Ok(FiniteDRL::new_unchecked(DrlParts {
            name: self.name,
            leq,
            meet,
            join,
            otimes,
            residuum,
            top: self.top,
            bottom: self.bottom,
        })?)
    }
}

/// Parses an algebra, derives absent tables, and runs the full DRL check.
/// Supplied tables that disagree with the derivations fail that check.
pub fn load_algebra(text: &str) -> Result<FiniteDRL, FormatError> {
    let parts = load_algebra_unchecked(text)?.to_parts();
    Ok(FiniteDRL::new(parts)?)
}

/// Like [`load_algebra`] but skips the axiom check.
pub fn load_algebra_unchecked(text: &str) -> Result<FiniteDRL, FormatError> {
    let file: AlgebraFile = serde_json::from_str(text)?;
    file.into_algebra_unchecked()
}

pub fn save_algebra(algebra: &FiniteDRL) -> String {
    to_canonical(&AlgebraFile::from_algebra(algebra))
}
