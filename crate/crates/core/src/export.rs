//! Serialized table shapes for the JSON/CSV interfaces. Vertex indices are
//! 1-based on the wire; coefficients fit machine integers at every order the
//! tooling emits (conversion is checked).

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::deform::CTildeTable;
use crate::poly::{BiLaurent, Exp};

fn small(c: &crate::poly::Coeff) -> i64 {
    c.to_i64().expect("coefficient exceeds the JSON integer range")
}

/// One nonzero bigraded coefficient `c q^u t^v` of entry `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    pub u: Exp,
    pub v: Exp,
    pub c: i64,
}

/// A full truncated inverse table, entries sorted by `(i, j, u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    #[serde(rename = "type")]
    pub type_name: String,
    pub order: Exp,
    pub entries: Vec<EntryJson>,
}

impl TableJson {
    pub fn from_table(tab: &CTildeTable) -> TableJson {
        let series: Vec<Vec<BiLaurent>> = (0..tab.rank())
            .map(|i| (0..tab.rank()).map(|j| tab.entry_series(i, j)).collect())
            .collect();
        Self::from_series(
            &tab.cartan_data().finite_type().to_string(),
            tab.order(),
            &series,
        )
    }

    /// Builds the same shape from any matrix of truncated series.
    pub fn from_series(type_name: &str, order: Exp, series: &[Vec<BiLaurent>]) -> TableJson {
        let mut entries = Vec::new();
        for (i, row) in series.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                for (&(u, v), c) in s.iter() {
                    entries.push(EntryJson {
                        i: i + 1,
                        j: j + 1,
                        u,
                        v,
                        c: small(c),
                    });
                }
            }
        }
        TableJson {
            type_name: type_name.to_string(),
            order,
            entries,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,u,v,c\n");
        for e in &self.entries {
            out.push_str(&format!("{},{},{},{},{}\n", e.i, e.j, e.u, e.v, e.c));
        }
        out
    }
}

/// One nonzero graded coefficient of the t-specialized table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QEntryJson {
    pub i: usize,
    pub j: usize,
    pub u: Exp,
    pub c: i64,
}

/// The t = 1 specialization of a table, entries sorted by `(i, j, u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QTableJson {
    #[serde(rename = "type")]
    pub type_name: String,
    pub order: Exp,
    pub entries: Vec<QEntryJson>,
}

impl QTableJson {
    pub fn from_table(tab: &CTildeTable) -> QTableJson {
        let mut entries = Vec::new();
        for i in 0..tab.rank() {
            for j in 0..tab.rank() {
                for u in 0..=tab.order() {
                    let c = tab.coeff_q(i, j, u);
                    if !num_traits::Zero::is_zero(&c) {
                        entries.push(QEntryJson {
                            i: i + 1,
                            j: j + 1,
                            u,
                            c: small(&c),
                        });
                    }
                }
            }
        }
        QTableJson {
            type_name: tab.cartan_data().finite_type().to_string(),
            order: tab.order(),
            entries,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,u,c\n");
        for e in &self.entries {
            out.push_str(&format!("{},{},{},{}\n", e.i, e.j, e.u, e.c));
        }
        out
    }
}

/// Cartan datum summary for the `cartan` subcommand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanJson {
    #[serde(rename = "type")]
    pub type_name: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    pub lacing: i64,
    pub coxeter: i64,
    pub dual_coxeter: i64,
}

impl CartanJson {
    pub fn from_data(cd: &CartanData) -> CartanJson {
        let n = cd.rank();
        CartanJson {
            type_name: cd.finite_type().to_string(),
            rank: n,
            cartan: (0..n)
                .map(|i| (0..n).map(|j| cd.cartan(i, j)).collect())
                .collect(),
            symmetrizer: (0..n).map(|i| cd.sym(i)).collect(),
            lacing: cd.lacing(),
            coxeter: cd.coxeter(),
            dual_coxeter: cd.dual_coxeter(),
        }
    }
}

/// A q-graded polynomial as exponent/coefficient pairs (for dimension and
/// divisor output).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolyJson {
    pub terms: Vec<QTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QTermJson {
    pub u: Exp,
    pub c: i64,
}

impl QPolyJson {
    pub fn from_poly(p: &BiLaurent) -> QPolyJson {
        QPolyJson {
            terms: p
                .iter()
                .map(|(&(u, v), c)| {
                    assert_eq!(v, 0, "q-graded output only");
                    QTermJson { u, c: small(c) }
                })
                .collect(),
        }
    }
}

/// A bigraded polynomial as exponent/coefficient triples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiPolyJson {
    pub terms: Vec<BiTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiTermJson {
    pub u: Exp,
    pub v: Exp,
    pub c: i64,
}

impl BiPolyJson {
    pub fn from_poly(p: &BiLaurent) -> BiPolyJson {
        BiPolyJson {
            terms: p
                .iter()
                .map(|(&(u, v), c)| BiTermJson { u, v, c: small(c) })
                .collect(),
        }
    }
}
