//! Machine-readable reports: one ComponentReport per connected component,
//! aggregated into CensusRecords. Rationals and reals are serialized as
//! exact strings so round trips are lossless.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

use crate::arith::{rat_to_string, Rat};
use crate::field::{make_field, FieldContext};
use crate::forms::{principal_genus, reduced_forms};
use crate::hermitian::{enumerate_spaces, lattice_classes, HermitianSpace};
use crate::quaternion::{algebra_from_space, level};
use crate::volume::{unitary_degree, unitary_volume, VolumeValue};
use crate::Result;

/// Symbolic volume with rational coefficients rendered as "n/d" strings,
/// log-term keys as decimal prime strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeSymbolic {
    pub c_const: String,
    pub c_zeta: String,
    pub c_log: BTreeMap<String, String>,
}

impl VolumeSymbolic {
    pub fn from_value(v: &VolumeValue) -> Self {
        VolumeSymbolic {
            c_const: rat_to_string(&v.c_const),
            c_zeta: rat_to_string(&v.c_zeta),
            c_log: v
                .c_log
                .iter()
                .map(|(p, c)| (p.to_string(), rat_to_string(c)))
                .collect(),
        }
    }

    pub fn to_value(&self) -> Result<VolumeValue> {
        let mut c_log = BTreeMap::new();
        for (p, c) in &self.c_log {
            let p: u64 = p.parse().map_err(|_| {
                crate::Error::InvalidInput(format!("bad log-term prime {p:?}"))
            })?;
            c_log.insert(p, crate::arith::rat_from_string(c)?);
        }
        Ok(VolumeValue {
            c_const: crate::arith::rat_from_string(&self.c_const)?,
            c_zeta: crate::arith::rat_from_string(&self.c_zeta)?,
            c_log,
        })
    }
}

/// Numeric rendering of a volume at an explicit precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeNumeric {
    pub decimal: String,
    pub precision: u32,
}

/// Everything known about one connected component C_L.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub d: i64,
    /// Index of the space in the canonical enumeration order.
    pub space_index: usize,
    /// Canonical determinant representative of W, as a fraction string.
    pub det_class: String,
    /// Finite places where the space invariant is -1.
    pub inv_minus_places: Vec<u64>,
    /// Signed primes p° over p | D, in prime order.
    pub p_circ: Vec<i64>,
    /// Reduced-form label (A, B, C) of the Steinitz class, as strings.
    pub lattice_class: [String; 3],
    pub isotropic: bool,
    pub disc_b: u64,
    pub level_n: u64,
    /// deg of the Hodge bundle, exact.
    pub degree: String,
    pub volume_symbolic: VolumeSymbolic,
    pub volume_numeric: VolumeNumeric,
}

/// Census row for a single discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub d: i64,
    pub class_number: usize,
    pub o_k: u32,
    pub principal_genus_size: usize,
    pub components: Vec<ComponentReport>,
    /// SHA-256 over (D, artifact version, precision).
    pub checksum: String,
}

pub fn input_checksum(d: i64, precision: u32) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("{d}|{}|{precision}", env!("CARGO_PKG_VERSION")));
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn space_report(ctx: &FieldContext, space: &HermitianSpace) -> Result<(u64, u64, Rat, VolumeValue)> {
    let alg = algebra_from_space(space)?;
    let n = level(ctx, &alg)?;
    let degree = unitary_degree(ctx, space)?;
    let volume = unitary_volume(ctx, space)?;
    Ok((alg.disc(), n, degree, volume))
}

/// One report per component C_L of the discriminant D, ordered by the
/// canonical space enumeration and then by reduced-form label.
pub fn component_reports(d: i64, precision: u32) -> Result<Vec<ComponentReport>> {
    let ctx = make_field(d)?;
    let mut out = Vec::new();
    for (index, space) in enumerate_spaces(&ctx)?.iter().enumerate() {
        let (disc_b, level_n, degree, volume) = space_report(&ctx, space)?;
        let numeric = VolumeNumeric {
            decimal: volume.evaluate_decimal(precision)?,
            precision,
        };
        for class in lattice_classes(space)? {
            out.push(ComponentReport {
                d,
                space_index: index,
                det_class: rat_to_string(&space.det_class()),
                inv_minus_places: space.invariants().minus_primes().to_vec(),
                p_circ: space.p_circ_all().into_iter().map(|(_, s)| s).collect(),
                lattice_class: [
                    class.a.to_string(),
                    class.b.to_string(),
                    class.c.to_string(),
                ],
                isotropic: space.is_globally_isotropic(),
                disc_b,
                level_n,
                degree: rat_to_string(&degree),
                volume_symbolic: VolumeSymbolic::from_value(&volume),
                volume_numeric: numeric.clone(),
            });
        }
    }
    Ok(out)
}

/// The full census row for D.
pub fn census_record(d: i64, precision: u32) -> Result<CensusRecord> {
    let ctx = make_field(d)?;
    let group = reduced_forms(&ctx);
    let genus = principal_genus(&ctx, &group)?;
    let components = component_reports(d, precision)?;
    if components.len() != group.order() {
        return Err(crate::Error::Internal(format!(
            "census at D = {d} produced {} components for h = {}",
            components.len(),
            group.order()
        )));
    }
    Ok(CensusRecord {
        d,
        class_number: group.order(),
        o_k: ctx.o_k(),
        principal_genus_size: genus.len(),
        components,
        checksum: input_checksum(d, precision),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_at_minus_seven() {
        let reports = component_reports(-7, 20).unwrap();
        assert_eq!(reports.len(), 1);
        let r = &reports[0];
        assert!(r.isotropic);
        assert_eq!(r.disc_b, 1);
        assert_eq!(r.level_n, 7);
        assert_eq!(r.degree, "1/3");
        assert_eq!(r.volume_symbolic.c_log["7"], "1/8");
        assert_eq!(r.p_circ, vec![7]);
    }

    #[test]
    fn reports_at_minus_fifteen() {
        let reports = component_reports(-15, 20).unwrap();
        assert_eq!(reports.len(), 2);
        // Isotropic component: (1/24)(1+3)(1+5) = 1; anisotropic:
        // (1/24)(1-3)(1-5) = 1/3. Distinct log coefficients as well.
        assert!(reports[0].isotropic);
        assert_eq!(reports[0].degree, "1");
        assert!(!reports[1].isotropic);
        assert_eq!(reports[1].degree, "1/3");
        assert_ne!(
            reports[0].volume_symbolic.c_log,
            reports[1].volume_symbolic.c_log
        );
        assert_eq!(reports[1].p_circ, vec![-3, -5]);
    }

    #[test]
    fn rejects_even_discriminant() {
        let err = component_reports(-4, 10).unwrap_err().to_string();
        assert!(err.contains("even"), "diagnostic names the violated hypothesis: {err}");
    }

    #[test]
    fn serialization_round_trip() {
        for d in [-7, -15, -23, -455] {
            let record = census_record(d, 15).unwrap();
            let json = serde_json::to_string(&record).unwrap();
            let back: CensusRecord = serde_json::from_str(&json).unwrap();
            assert_eq!(record, back, "round trip at D={d}");
        }
    }

    #[test]
    fn numeric_rederivable_from_symbolic() {
        let record = census_record(-23, 25).unwrap();
        for c in &record.components {
            let symbolic = c.volume_symbolic.to_value().unwrap();
            assert_eq!(
                symbolic.evaluate_decimal(c.volume_numeric.precision).unwrap(),
                c.volume_numeric.decimal
            );
        }
    }

    #[test]
    fn record_counts() {
        let record = census_record(-455, 12).unwrap();
        assert_eq!(record.class_number, 20);
        assert_eq!(record.o_k, 3);
        assert_eq!(record.principal_genus_size, 5);
        assert_eq!(record.components.len(), 20);
        // Grouped by space: indices are nondecreasing, 4 spaces x 5 classes.
        let mut counts = std::collections::BTreeMap::new();
        for c in &record.components {
            *counts.entry(c.space_index).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 4);
        assert!(counts.values().all(|&n| n == 5));
    }
}
