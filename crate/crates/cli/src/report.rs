//! Report blocks shared by the subcommands.

use amalgam_core::classify::{
    cone_planar_nerve, is_3manifold_group, is_hyperbolic_c, is_hyperbolic_w, qi_class_c, qi_class_w, QiClassC,
    QiClassW, QiKey, SphereCertificate, ThreeManifoldVerdict,
};
use amalgam_core::commensurability::{
    associated_racg_vector, euler_vector, realize_vector_as_theta, AssociatedVectorData,
};
use amalgam_core::covers::{build_tower_x, build_tower_z, LinkCheck, Tower, TowerError};
use amalgam_core::complex::iso_check;
use amalgam_core::geometry::{
    model_space_type_of, standard_representative, ModelSpaceType, StandardRepresentative,
};
use amalgam_core::{EulerVector, Spec, SurfaceAmalgamSpec, ThetaGraphSpec};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
}

impl Provenance {
    pub fn new(seed: u64) -> Self {
        Provenance {
            tool: "amalgam",
            version: env!("CARGO_PKG_VERSION"),
            seed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum QiClass {
    C(QiClassC),
    W(QiClassW),
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub hyperbolic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_manifold: Option<ThreeManifoldVerdict>,
    pub qi_class: QiClass,
    pub qi_key: QiKey,
    pub model_space_type: ModelSpaceType,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub standard_representative: Option<StandardRepresentative>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere: Option<SphereCertificate>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Commensurability {
    Amalgam {
        associated: AssociatedVectorData,
        /// The Θ-graph group realizing the associated vector.
        theta: Option<ThetaGraphSpec>,
    },
    Theta {
        euler_vector: EulerVector,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub input: Spec,
    pub classification: Classification,
    pub commensurability: Commensurability,
    pub provenance: Provenance,
}

pub fn classify(spec: &Spec, seed: u64) -> ClassifyReport {
    let model_space_type = model_space_type_of(spec);
    let standard_representative = standard_representative(model_space_type).ok();
    let (classification, commensurability) = match spec {
        Spec::Amalgam(s) => {
            let class = qi_class_c(s);
            let data = associated_racg_vector(s);
            (
                Classification {
                    hyperbolic: is_hyperbolic_c(s),
                    three_manifold: Some(is_3manifold_group(s)),
                    qi_class: QiClass::C(class),
                    qi_key: class.key(),
                    model_space_type,
                    standard_representative,
                    sphere: None,
                },
                Commensurability::Amalgam {
                    theta: realize_vector_as_theta(&data.w).ok(),
                    associated: data,
                },
            )
        }
        Spec::Theta(t) => {
            let class = qi_class_w(t);
            (
                Classification {
                    hyperbolic: is_hyperbolic_w(t),
                    three_manifold: None,
                    qi_class: QiClass::W(class),
                    qi_key: class.key(),
                    model_space_type,
                    standard_representative,
                    sphere: Some(cone_planar_nerve(t).certificate),
                },
                Commensurability::Theta {
                    euler_vector: euler_vector(t),
                },
            )
        }
    };
    ClassifyReport {
        input: spec.clone(),
        classification,
        commensurability,
        provenance: Provenance::new(seed),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verification {
    pub links: Vec<LinkCheck>,
    pub z_links: Vec<LinkCheck>,
    pub x5_iso_z2: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TowerReport {
    pub input: SurfaceAmalgamSpec,
    /// `X: χ -> X1: χ -> …`
    pub summary: String,
    pub euler_chain: Vec<i64>,
    pub tower: Tower,
    pub z_tower: Tower,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    pub provenance: Provenance,
}

impl TowerReport {
    pub fn pass(&self) -> bool {
        self.verification.as_ref().is_none_or(|v| v.pass)
    }
}

pub fn chain_summary(tower: &Tower) -> String {
    tower
        .stages
        .iter()
        .map(|s| format!("{}: {}", s.name, s.complex.euler_char()))
        .collect::<Vec<_>>()
        .join(" -> ")
}

pub fn tower(spec: &SurfaceAmalgamSpec, verify: bool, seed: u64) -> Result<TowerReport, TowerError> {
    let x = build_tower_x(spec)?;
    let z = build_tower_z(spec).tower;
    let verification = verify.then(|| {
        let links = x.verify();
        let z_links = z.verify();
        let x5_iso_z2 = match (x.stages.last(), z.stages.last()) {
            (Some(a), Some(b)) => iso_check(&a.complex, &b.complex).is_some(),
            _ => false,
        };
        let pass = x5_iso_z2 && links.iter().chain(&z_links).all(|c| c.pass);
        Verification {
            links,
            z_links,
            x5_iso_z2,
            pass,
        }
    });
    Ok(TowerReport {
        input: *spec,
        summary: format!("{} | {}", chain_summary(&x), chain_summary(&z)),
        euler_chain: x.euler_chain(),
        tower: x,
        z_tower: z,
        verification,
        provenance: Provenance::new(seed),
    })
}

pub fn pass_fail(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Two-column table for `--human`.
pub fn table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

pub fn human_classify(r: &ClassifyReport) -> String {
    let c = &r.classification;
    let mut rows = vec![
        ("spec".to_string(), spec_label(&r.input)),
        ("hyperbolic".to_string(), c.hyperbolic.to_string()),
    ];
    if let Some(v) = &c.three_manifold {
        let case = v
            .witness
            .map(|w| format!("{w:?}"))
            .or(v.obstruction.map(|o| format!("{o:?}")))
            .unwrap_or_default();
        rows.push(("3-manifold group".into(), format!("{} ({case})", v.is_3manifold)));
    }
    let class = match &c.qi_class {
        QiClass::C(q) => format!("{q:?}"),
        QiClass::W(q) => format!("{q:?}"),
    };
    rows.push(("qi class".into(), class));
    let t = c.model_space_type;
    rows.push(("model space type".into(), format!("({}, {}, {})", t.m, t.n, t.s)));
    if let Some(rep) = c.standard_representative {
        let t = rep.model;
        let note = if rep.hyperbolic { " hyperbolic" } else { "" };
        rows.push(("representative".into(), format!("({}, {}, {}){note}", t.m, t.n, t.s)));
    }
    if let Some(s) = c.sphere {
        rows.push(("flag sphere".into(), s.is_flag_sphere().to_string()));
    }
    match &r.commensurability {
        Commensurability::Amalgam { associated, theta } => {
            rows.push(("associated vector".into(), associated.w.to_string()));
            if let Some(t) = theta {
                rows.push(("realized by".into(), t.to_string()));
            }
        }
        Commensurability::Theta { euler_vector } => {
            rows.push(("euler vector".into(), euler_vector.to_string()));
        }
    }
    table(&rows)
}

pub fn spec_label(spec: &Spec) -> String {
    match spec {
        Spec::Amalgam(s) => format!(
            "C(g={}, h={}, m={}, n={}, {:?}, {:?})",
            s.g, s.h, s.m, s.n, s.curve_a, s.curve_b
        ),
        Spec::Theta(t) => t.to_string(),
    }
}

pub fn human_tower(r: &TowerReport) -> String {
    let mut out = format!("{}\n", r.summary);
    if let Some(v) = &r.verification {
        for c in v.links.iter().chain(&v.z_links) {
            let degree = c.degree.map_or("homotopy equivalence".to_string(), |d| format!("degree {d}"));
            out.push_str(&format!("{} {} -> {} ({degree})\n", pass_fail(c.pass), c.from, c.to));
        }
        out.push_str(&format!("{} X5 isomorphic to Z2\n", pass_fail(v.x5_iso_z2)));
    }
    out
}
