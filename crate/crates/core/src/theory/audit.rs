//! Every derived statement about a verified theory, evaluated in one pass.

use crate::ideal::{precokernels, prekernels, triviality_iso};

use super::closure::{closure_report, perp_class, z_normal_epireflective_check, ClaimStatus};
use super::functors::{characterize, zeta, Which};
use super::{PretorsionData, PretorsionError};

/// One checked statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub name: &'static str,
    pub status: ClaimStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Audit {
    pub entries: Vec<AuditEntry>,
}

impl Audit {
    pub fn violations(&self) -> impl Iterator<Item = &AuditEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, ClaimStatus::Violated(_)))
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn status(&self, name: &str) -> Option<&ClaimStatus> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.status)
    }
}

fn first(mut found: Vec<String>) -> ClaimStatus {
    if found.is_empty() {
        ClaimStatus::Verified
    } else {
        ClaimStatus::Violated(found.swap_remove(0))
    }
}

/// Prekernels are mono, precokernels are epi, and both directions of the
/// triviality/iso lemma hold for every morphism and each of its prekernels
/// and precokernels.
fn universal_arrow_checks(data: &PretorsionData<'_>) -> [ClaimStatus; 3] {
    let c = data.category();
    let (mut mono, mut epi, mut lemma) = (Vec::new(), Vec::new(), Vec::new());
    for f in c.morphisms() {
        for k in prekernels(&data.ideal, f) {
            if !c.is_mono(k.arrow) {
                mono.push(format!(
                    "prekernel {} of {} is not mono",
                    c.mor_name(k.arrow),
                    c.mor_name(f)
                ));
            }
            match triviality_iso(&data.ideal, k.arrow, f) {
                Ok(l) if l.holds() => {}
                _ => lemma.push(format!(
                    "lemma fails for prekernel {} of {}",
                    c.mor_name(k.arrow),
                    c.mor_name(f)
                )),
            }
        }
        for p in precokernels(&data.ideal, f) {
            if !c.is_epi(p.arrow) {
                epi.push(format!(
                    "precokernel {} of {} is not epi",
                    c.mor_name(p.arrow),
                    c.mor_name(f)
                ));
            }
            match triviality_iso(&data.ideal, f, p.arrow) {
                Ok(l) if l.holds() => {}
                _ => lemma.push(format!(
                    "lemma fails for precokernel {} of {}",
                    c.mor_name(p.arrow),
                    c.mor_name(f)
                )),
            }
        }
    }
    [first(mono), first(epi), first(lemma)]
}

/// Run every check. Errors only when a derived construction that must exist
/// for a valid theory cannot be built.
pub fn audit(data: &PretorsionData<'_>) -> Result<Audit, PretorsionError> {
    let mut entries = vec![AuditEntry {
        name: "structure",
        status: first(data.report.violations.clone()),
    }];
    let [mono, epi, lemma] = universal_arrow_checks(data);
    entries.push(AuditEntry {
        name: "prekernel.mono",
        status: mono,
    });
    entries.push(AuditEntry {
        name: "precokernel.epi",
        status: epi,
    });
    entries.push(AuditEntry {
        name: "lemma.triviality_iso",
        status: lemma,
    });

    entries.extend(
        closure_report(data)
            .claims
            .into_iter()
            .map(|cl| AuditEntry {
                name: cl.name,
                status: cl.status,
            }),
    );

    for (name, which) in [
        ("characterize.torsion", Which::Torsion),
        ("characterize.free", Which::Free),
        ("characterize.zee", Which::Zee),
    ] {
        let ch = characterize(data, which);
        let status = if ch.agrees() {
            ClaimStatus::Verified
        } else {
            ClaimStatus::Violated(format!(
                "computed {:?}, declared {:?}",
                ch.computed, ch.declared
            ))
        };
        entries.push(AuditEntry { name, status });
    }

    let perp = perp_class(&data.free, &data.zee)?;
    entries.push(AuditEntry {
        name: "perp.torsion",
        status: if perp.objects == data.torsion.objects() && perp.agrees() {
            ClaimStatus::Verified
        } else {
            ClaimStatus::Violated(format!(
                "orthogonal class {:?}, via reflection {:?}",
                perp.objects, perp.via_reflection
            ))
        },
    });

    let z = zeta(data)?;
    entries.push(AuditEntry {
        name: "zeta",
        status: first(z.report.violations),
    });

    let v = z_normal_epireflective_check(&data.zee, &data.free)?;
    entries.push(AuditEntry {
        name: "z_normal",
        status: if v.a_holds && v.b_holds && v.agrees() {
            ClaimStatus::Verified
        } else {
            ClaimStatus::Violated(format!(
                "(a) {}, (b) {}{}",
                v.a_holds,
                v.b_holds,
                v.b_failure.map(|w| format!(": {w}")).unwrap_or_default()
            ))
        },
    });

    Ok(Audit { entries })
}
