//! File formats: JSON for cocycles, root sets and Lagrangian points; CSV for tables.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::chevalley::{GElement, LieAlgebra};
use crate::double::Double;
use crate::error::{Error, Result};
use crate::ideals::OrbitDescriptor;
use crate::kernel::{parse_all, to_strings, Matrix, Subspace};
use crate::lagrange::{Cocycle, LagrangianPoint, Subalgebra};
use crate::rootsys::{CartanType, Root};

/// `{"basis": [[...], ...]}`: subalgebra basis vectors as rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraFile {
    pub basis: Vec<Vec<String>>,
}

/// `{"subalgebra": {...}, "F": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleFile {
    pub subalgebra: SubalgebraFile,
    #[serde(rename = "F")]
    pub f: Vec<Vec<String>>,
}

impl CocycleFile {
    pub fn from_cocycle(c: &Cocycle<'_>) -> Self {
        CocycleFile {
            subalgebra: SubalgebraFile {
                basis: c.domain().basis().iter().map(|v| to_strings(v.coeffs())).collect(),
            },
            f: c.matrix().row_vectors().map(to_strings).collect(),
        }
    }

    /// Parses and validates against `algebra` (closure, skewness, cocycle identity).
    pub fn to_cocycle<'g>(&self, algebra: &'g LieAlgebra) -> Result<Cocycle<'g>> {
        let basis = self
            .subalgebra
            .basis
            .iter()
            .map(|v| parse_all(v).map(GElement::new))
            .collect::<Result<Vec<_>>>()?;
        let a = Subalgebra::new(algebra, basis)?;
        let k = a.dim();
        let rows = self.f.iter().map(|r| parse_all(r)).collect::<Result<Vec<_>>>()?;
        if rows.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: rows.len(),
            });
        }
        Cocycle::new(a, Matrix::from_rows(k, rows)?)
    }
}

/// `{"type": "B3", "roots": [[1,2,2], ...]}`. Any list of roots; no ideal condition is implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSetFile {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub roots: Vec<Root>,
}

impl LagrangianPoint {
    /// The RREF basis as rows of rational strings.
    pub fn to_json_rows(&self) -> Vec<Vec<String>> {
        self.subspace().basis().row_vectors().map(to_strings).collect()
    }

    /// Reads an RREF (or any) basis and checks the result is a Lagrangian subalgebra.
    pub fn from_json_rows(double: &Double<'_>, rows: &[Vec<String>]) -> Result<Self> {
        let rows = rows.iter().map(|r| parse_all(r)).collect::<Result<Vec<_>>>()?;
        LagrangianPoint::new(double, Subspace::span(double.dim(), rows)?)
    }
}

/// Writes `type, lambda, dim_a, parabolic_J, orbit_dim, certified_closed`.
pub fn write_orbit_csv<W: Write>(rows: &[OrbitDescriptor], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(["type", "lambda", "dim_a", "parabolic_J", "orbit_dim", "certified_closed"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            r.ideal.cartan_type.to_string(),
            format_roots(&r.ideal.roots),
            r.dim_a.to_string(),
            format_index_set(&r.parabolic_j),
            r.orbit_dim.to_string(),
            r.certified_closed.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// `[[1,1],[1,0]]`.
pub fn format_roots(roots: &[Root]) -> String {
    serde_json::to_string(roots).expect("roots serialize")
}

/// `{1,2}`, or `{}` when empty.
pub fn format_index_set(j: &[usize]) -> String {
    let inner: Vec<String> = j.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}
