//! The system file format: versioned JSON with explicit `[re, im]` entry
//! pairs.
//!
//! Three kinds are defined:
//!
//! * `plain` — matrices `F, G, H, K`, dims `{ n, m }`;
//! * `partitioned` — matrices `F11, F12, F21, F22, G1, G2, H1, H2, K`,
//!   dims `{ n1, n2, m }`;
//! * `special_class` — matrices `Lambda1, Lambda2, M11, M12, M22, S`,
//!   dims `{ n1, n2, m }`.
//!
//! Matrices are arrays of rows; every complex entry is a two-element array
//! `[real, imaginary]` of decimal numbers. Declared dimensions must match
//! the array shapes; unknown fields are rejected. A `partitioned` file with
//! `n2 = 0` omits the fast-block matrices entirely. Numbers are written in
//! shortest round-trip decimal form, so write-then-read is lossless.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::adiabatic::SpecialClassParams;
use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, Tolerances};
use crate::qsys::QuantumLinearSystem;
use crate::singular::PartitionedSystem;

pub const SCHEMA_VERSION: u32 = 1;

type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    Plain,
    Partitioned,
    SpecialClass,
}

impl std::fmt::Display for SystemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SystemKind::Plain => "plain",
            SystemKind::Partitioned => "partitioned",
            SystemKind::SpecialClass => "special_class",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dims {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n2: Option<usize>,
    pub m: usize,
}

/// Named matrices; which ones must be present depends on the kind.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSet {
    #[serde(rename = "F", skip_serializing_if = "Option::is_none")]
    pub f: Option<Rows>,
    #[serde(rename = "G", skip_serializing_if = "Option::is_none")]
    pub g: Option<Rows>,
    #[serde(rename = "H", skip_serializing_if = "Option::is_none")]
    pub h: Option<Rows>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<Rows>,
    #[serde(rename = "F11", skip_serializing_if = "Option::is_none")]
    pub f11: Option<Rows>,
    #[serde(rename = "F12", skip_serializing_if = "Option::is_none")]
    pub f12: Option<Rows>,
    #[serde(rename = "F21", skip_serializing_if = "Option::is_none")]
    pub f21: Option<Rows>,
    #[serde(rename = "F22", skip_serializing_if = "Option::is_none")]
    pub f22: Option<Rows>,
    #[serde(rename = "G1", skip_serializing_if = "Option::is_none")]
    pub g1: Option<Rows>,
    #[serde(rename = "G2", skip_serializing_if = "Option::is_none")]
    pub g2: Option<Rows>,
    #[serde(rename = "H1", skip_serializing_if = "Option::is_none")]
    pub h1: Option<Rows>,
    #[serde(rename = "H2", skip_serializing_if = "Option::is_none")]
    pub h2: Option<Rows>,
    #[serde(rename = "Lambda1", skip_serializing_if = "Option::is_none")]
    pub lambda1: Option<Rows>,
    #[serde(rename = "Lambda2", skip_serializing_if = "Option::is_none")]
    pub lambda2: Option<Rows>,
    #[serde(rename = "M11", skip_serializing_if = "Option::is_none")]
    pub m11: Option<Rows>,
    #[serde(rename = "M12", skip_serializing_if = "Option::is_none")]
    pub m12: Option<Rows>,
    #[serde(rename = "M22", skip_serializing_if = "Option::is_none")]
    pub m22: Option<Rows>,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub s: Option<Rows>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub schema_version: u32,
    pub kind: SystemKind,
    pub dims: Dims,
    pub matrices: MatrixSet,
}

/// A parsed system of any kind.
pub enum LoadedSystem {
    Plain(QuantumLinearSystem),
    Partitioned(PartitionedSystem),
    Special(SpecialClassParams),
}

fn matrix_to_rows(m: &ComplexMatrix) -> Rows {
    m.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn rows_to_matrix(
    name: &str,
    rows: &Rows,
    exp_rows: usize,
    exp_cols: usize,
) -> Result<ComplexMatrix> {
    if rows.len() != exp_rows || rows.iter().any(|r| r.len() != exp_cols) {
        return Err(Error::Format(format!(
            "matrix {name} must be {exp_rows}×{exp_cols}, got {}×{}",
            rows.len(),
            rows.first().map_or(0, |r| r.len())
        )));
    }
    let flat: Vec<Complex64> = rows
        .iter()
        .flatten()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    ComplexMatrix::from_row_slice(exp_rows, exp_cols, &flat)
        .map_err(|e| Error::Format(format!("matrix {name}: {e}")))
}

fn require<'a>(name: &str, field: &'a Option<Rows>) -> Result<&'a Rows> {
    field
        .as_ref()
        .ok_or_else(|| Error::Format(format!("missing matrix {name}")))
}

fn forbid(kind: SystemKind, pairs: &[(&str, bool)]) -> Result<()> {
    for (name, present) in pairs {
        if *present {
            return Err(Error::Format(format!(
                "matrix {name} does not belong in a {kind} file"
            )));
        }
    }
    Ok(())
}

impl SystemFile {
    pub fn from_plain(sys: &QuantumLinearSystem) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: SystemKind::Plain,
            dims: Dims {
                n: Some(sys.modes()),
                n1: None,
                n2: None,
                m: sys.inputs(),
            },
            matrices: MatrixSet {
                f: Some(matrix_to_rows(sys.f())),
                g: Some(matrix_to_rows(sys.g())),
                h: Some(matrix_to_rows(sys.h())),
                k: Some(matrix_to_rows(sys.k())),
                ..Default::default()
            },
        }
    }

    pub fn from_partitioned(p: &PartitionedSystem) -> Self {
        let fast = p.n2() > 0;
        Self {
            schema_version: SCHEMA_VERSION,
            kind: SystemKind::Partitioned,
            dims: Dims {
                n: None,
                n1: Some(p.n1()),
                n2: Some(p.n2()),
                m: p.inputs(),
            },
            matrices: MatrixSet {
                f11: Some(matrix_to_rows(p.f11())),
                f12: fast.then(|| matrix_to_rows(p.f12())),
                f21: fast.then(|| matrix_to_rows(p.f21())),
                f22: fast.then(|| matrix_to_rows(p.f22())),
                g1: Some(matrix_to_rows(p.g1())),
                g2: fast.then(|| matrix_to_rows(p.g2())),
                h1: Some(matrix_to_rows(p.h1())),
                h2: fast.then(|| matrix_to_rows(p.h2())),
                k: Some(matrix_to_rows(p.k())),
                ..Default::default()
            },
        }
    }

    pub fn from_special(params: &SpecialClassParams) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: SystemKind::SpecialClass,
            dims: Dims {
                n: None,
                n1: Some(params.n1()),
                n2: Some(params.n2()),
                m: params.inputs(),
            },
            matrices: MatrixSet {
                lambda1: Some(matrix_to_rows(params.lambda1())),
                lambda2: Some(matrix_to_rows(params.lambda2())),
                m11: Some(matrix_to_rows(params.m11())),
                m12: Some(matrix_to_rows(params.m12())),
                m22: Some(matrix_to_rows(params.m22())),
                s: Some(matrix_to_rows(params.scattering())),
                ..Default::default()
            },
        }
    }

    pub fn to_plain(&self) -> Result<QuantumLinearSystem> {
        if self.kind != SystemKind::Plain {
            return Err(Error::Format(format!(
                "expected a plain file, got kind {}",
                self.kind
            )));
        }
        let n = self
            .dims
            .n
            .ok_or_else(|| Error::Format("plain file must declare dims.n".into()))?;
        let m = self.dims.m;
        if self.dims.n1.is_some() || self.dims.n2.is_some() {
            return Err(Error::Format(
                "plain file must not declare dims.n1/n2".into(),
            ));
        }
        let ms = &self.matrices;
        forbid(
            self.kind,
            &[
                ("F11", ms.f11.is_some()),
                ("F12", ms.f12.is_some()),
                ("F21", ms.f21.is_some()),
                ("F22", ms.f22.is_some()),
                ("G1", ms.g1.is_some()),
                ("G2", ms.g2.is_some()),
                ("H1", ms.h1.is_some()),
                ("H2", ms.h2.is_some()),
                ("Lambda1", ms.lambda1.is_some()),
                ("Lambda2", ms.lambda2.is_some()),
                ("M11", ms.m11.is_some()),
                ("M12", ms.m12.is_some()),
                ("M22", ms.m22.is_some()),
                ("S", ms.s.is_some()),
            ],
        )?;
        QuantumLinearSystem::new(
            rows_to_matrix("F", require("F", &ms.f)?, n, n)?,
            rows_to_matrix("G", require("G", &ms.g)?, n, m)?,
            rows_to_matrix("H", require("H", &ms.h)?, m, n)?,
            rows_to_matrix("K", require("K", &ms.k)?, m, m)?,
        )
    }

    pub fn to_partitioned(&self) -> Result<PartitionedSystem> {
        if self.kind != SystemKind::Partitioned {
            return Err(Error::Format(format!(
                "expected a partitioned file, got kind {}",
                self.kind
            )));
        }
        let n1 = self
            .dims
            .n1
            .ok_or_else(|| Error::Format("partitioned file must declare dims.n1".into()))?;
        let n2 = self
            .dims
            .n2
            .ok_or_else(|| Error::Format("partitioned file must declare dims.n2".into()))?;
        let m = self.dims.m;
        if self.dims.n.is_some() {
            return Err(Error::Format(
                "partitioned file must not declare dims.n".into(),
            ));
        }
        let ms = &self.matrices;
        forbid(
            self.kind,
            &[
                ("F", ms.f.is_some()),
                ("G", ms.g.is_some()),
                ("H", ms.h.is_some()),
                ("Lambda1", ms.lambda1.is_some()),
                ("Lambda2", ms.lambda2.is_some()),
                ("M11", ms.m11.is_some()),
                ("M12", ms.m12.is_some()),
                ("M22", ms.m22.is_some()),
                ("S", ms.s.is_some()),
            ],
        )?;
        let f11 = rows_to_matrix("F11", require("F11", &ms.f11)?, n1, n1)?;
        let g1 = rows_to_matrix("G1", require("G1", &ms.g1)?, n1, m)?;
        let h1 = rows_to_matrix("H1", require("H1", &ms.h1)?, m, n1)?;
        let k = rows_to_matrix("K", require("K", &ms.k)?, m, m)?;
        if n2 == 0 {
            forbid(
                self.kind,
                &[
                    ("F12", ms.f12.is_some()),
                    ("F21", ms.f21.is_some()),
                    ("F22", ms.f22.is_some()),
                    ("G2", ms.g2.is_some()),
                    ("H2", ms.h2.is_some()),
                ],
            )?;
            return PartitionedSystem::without_fast_block(f11, g1, h1, k);
        }
        PartitionedSystem::new(
            f11,
            rows_to_matrix("F12", require("F12", &ms.f12)?, n1, n2)?,
            rows_to_matrix("F21", require("F21", &ms.f21)?, n2, n1)?,
            rows_to_matrix("F22", require("F22", &ms.f22)?, n2, n2)?,
            g1,
            rows_to_matrix("G2", require("G2", &ms.g2)?, n2, m)?,
            h1,
            rows_to_matrix("H2", require("H2", &ms.h2)?, m, n2)?,
            k,
        )
    }

    pub fn to_special(&self, tol: &Tolerances) -> Result<SpecialClassParams> {
        if self.kind != SystemKind::SpecialClass {
            return Err(Error::Format(format!(
                "expected a special_class file, got kind {}",
                self.kind
            )));
        }
        let n1 = self
            .dims
            .n1
            .ok_or_else(|| Error::Format("special_class file must declare dims.n1".into()))?;
        let n2 = self
            .dims
            .n2
            .ok_or_else(|| Error::Format("special_class file must declare dims.n2".into()))?;
        let m = self.dims.m;
        if self.dims.n.is_some() {
            return Err(Error::Format(
                "special_class file must not declare dims.n".into(),
            ));
        }
        let ms = &self.matrices;
        forbid(
            self.kind,
            &[
                ("F", ms.f.is_some()),
                ("G", ms.g.is_some()),
                ("H", ms.h.is_some()),
                ("K", ms.k.is_some()),
                ("F11", ms.f11.is_some()),
                ("F12", ms.f12.is_some()),
                ("F21", ms.f21.is_some()),
                ("F22", ms.f22.is_some()),
                ("G1", ms.g1.is_some()),
                ("G2", ms.g2.is_some()),
                ("H1", ms.h1.is_some()),
                ("H2", ms.h2.is_some()),
            ],
        )?;
        SpecialClassParams::new(
            rows_to_matrix("Lambda1", require("Lambda1", &ms.lambda1)?, m, n1)?,
            rows_to_matrix("Lambda2", require("Lambda2", &ms.lambda2)?, m, n2)?,
            rows_to_matrix("M11", require("M11", &ms.m11)?, n1, n1)?,
            rows_to_matrix("M12", require("M12", &ms.m12)?, n1, n2)?,
            rows_to_matrix("M22", require("M22", &ms.m22)?, n2, n2)?,
            rows_to_matrix("S", require("S", &ms.s)?, m, m)?,
            tol,
        )
    }

    /// Parse whichever kind the file declares.
    pub fn load(&self, tol: &Tolerances) -> Result<LoadedSystem> {
        match self.kind {
            SystemKind::Plain => Ok(LoadedSystem::Plain(self.to_plain()?)),
            SystemKind::Partitioned => Ok(LoadedSystem::Partitioned(self.to_partitioned()?)),
            SystemKind::SpecialClass => Ok(LoadedSystem::Special(self.to_special(tol)?)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialization of plain data cannot fail")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text)?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        Ok(file)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn plain_round_trip_is_lossless() {
        // awkward decimals survive write-then-read exactly
        let sys = QuantumLinearSystem::new(
            ComplexMatrix::from_row_slice(1, 1, &[Complex64::new(-0.1234567890123456, 1.0 / 3.0)])
                .unwrap(),
            ComplexMatrix::from_row_slice(1, 1, &[Complex64::new(2.0f64.sqrt(), -1e-17)]).unwrap(),
            ComplexMatrix::from_row_slice(1, 1, &[Complex64::new(1e300, 5e-324)]).unwrap(),
            ComplexMatrix::real_scalar(1.0),
        )
        .unwrap();
        let file = SystemFile::from_plain(&sys);
        let back = SystemFile::parse(&file.to_json()).unwrap();
        assert_eq!(file, back);
        let sys2 = back.to_plain().unwrap();
        assert_eq!(sys.f().get(0, 0), sys2.f().get(0, 0));
        assert_eq!(sys.g().get(0, 0), sys2.g().get(0, 0));
        assert_eq!(sys.h().get(0, 0), sys2.h().get(0, 0));
    }

    #[test]
    fn catalog_exports_round_trip() {
        for entry in catalog::entries() {
            let file = SystemFile::from_partitioned(&entry.partitioned);
            let back = SystemFile::parse(&file.to_json()).unwrap();
            assert_eq!(file, back, "partitioned export of {}", entry.name);
            let p = back.to_partitioned().unwrap();
            assert!(p.f11().max_abs_diff(entry.partitioned.f11()) == 0.0);
            if let Some(special) = &entry.special {
                let sf = SystemFile::from_special(special);
                let sback = SystemFile::parse(&sf.to_json()).unwrap();
                assert_eq!(sf, sback, "special export of {}", entry.name);
                let params = sback.to_special(&tol()).unwrap();
                assert!(params.m12().max_abs_diff(special.m12()) == 0.0);
            }
        }
    }

    #[test]
    fn empty_fast_block_round_trips() {
        let p = PartitionedSystem::without_fast_block(
            ComplexMatrix::real_scalar(-1.0),
            ComplexMatrix::real_scalar(1.0),
            ComplexMatrix::real_scalar(1.0),
            ComplexMatrix::real_scalar(1.0),
        )
        .unwrap();
        let file = SystemFile::from_partitioned(&p);
        assert!(file.matrices.f22.is_none());
        let q = SystemFile::parse(&file.to_json())
            .unwrap()
            .to_partitioned()
            .unwrap();
        assert_eq!(q.n2(), 0);
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{
            "schema_version": 1,
            "kind": "plain",
            "dims": { "n": 1, "m": 1 },
            "matrices": { "F": [[[ -1.0, 0.0 ]]], "G": [[[0.0,0.0]]],
                          "H": [[[0.0,0.0]]], "K": [[[1.0,0.0]]] },
            "extra": true
        }"#;
        assert!(matches!(SystemFile::parse(text), Err(Error::Format(_))));
        let text2 = r#"{
            "schema_version": 1,
            "kind": "plain",
            "dims": { "n": 1, "m": 1, "weird": 2 },
            "matrices": { "F": [[[ -1.0, 0.0 ]]], "G": [[[0.0,0.0]]],
                          "H": [[[0.0,0.0]]], "K": [[[1.0,0.0]]] }
        }"#;
        assert!(matches!(SystemFile::parse(text2), Err(Error::Format(_))));
    }

    #[test]
    fn shape_mismatch_rejected() {
        let text = r#"{
            "schema_version": 1,
            "kind": "plain",
            "dims": { "n": 2, "m": 1 },
            "matrices": { "F": [[[ -1.0, 0.0 ]]], "G": [[[0.0,0.0]],[[0.0,0.0]]],
                          "H": [[[0.0,0.0],[0.0,0.0]]], "K": [[[1.0,0.0]]] }
        }"#;
        let err = SystemFile::parse(text).unwrap().to_plain();
        assert!(matches!(err, Err(Error::Format(_))));
    }

    #[test]
    fn wrong_schema_version_rejected() {
        let text = r#"{
            "schema_version": 2,
            "kind": "plain",
            "dims": { "n": 1, "m": 1 },
            "matrices": { "F": [[[ -1.0, 0.0 ]]], "G": [[[0.0,0.0]]],
                          "H": [[[0.0,0.0]]], "K": [[[1.0,0.0]]] }
        }"#;
        assert!(matches!(SystemFile::parse(text), Err(Error::Format(_))));
    }

    #[test]
    fn misplaced_matrices_rejected() {
        let sys = QuantumLinearSystem::new(
            ComplexMatrix::real_scalar(-1.0),
            ComplexMatrix::real_scalar(1.0),
            ComplexMatrix::real_scalar(1.0),
            ComplexMatrix::real_scalar(1.0),
        )
        .unwrap();
        let mut file = SystemFile::from_plain(&sys);
        file.matrices.lambda1 = Some(vec![vec![[1.0, 0.0]]]);
        let text = file.to_json();
        assert!(matches!(
            SystemFile::parse(&text).unwrap().to_plain(),
            Err(Error::Format(_))
        ));
    }
}
