//! JSON forms of structures, reports, classifications and transcripts.

use linfty_core::automorphism::LinearAutomorphism;
use linfty_core::cochain::BasisCochain;
use linfty_core::cohomology::CohomologyReport;
use linfty_core::extension::Move;
use linfty_core::moduli::{CanonicalForm, FamilyTag};
use linfty_core::rational::{format_rational, parse_rational};
use linfty_core::{format_cochain, parse_cochain, Cochain, GradedSpace, LInfinityStructure, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid structure file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Engine(#[from] linfty_core::Error),
    #[error("component listed under degree {listed} has degree {actual}")]
    ComponentDegree { listed: usize, actual: usize },
    #[error("generator {0} is out of range (targets count from 1)")]
    Target(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub index: Vec<u32>,
    /// 1-based generator, as in `psi[...]_j`.
    pub target: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub degree: usize,
    pub terms: Vec<TermJson>,
}

/// On-disk form of an [`LInfinityStructure`]; `dims` is `[even, odd]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub dims: [usize; 2],
    pub components: Vec<ComponentJson>,
    pub truncation: usize,
}

impl StructureFile {
    pub fn from_structure(d: &LInfinityStructure) -> StructureFile {
        let space = d.space();
        let components = d
            .components()
            .map(|(degree, c)| ComponentJson {
                degree,
                terms: c
                    .terms()
                    .map(|(b, q)| TermJson {
                        index: b.index.exponents().to_vec(),
                        target: b.target + 1,
                        coeff: format_rational(q),
                    })
                    .collect(),
            })
            .collect();
        StructureFile { dims: [space.even_dim(), space.odd_dim()], components, truncation: d.truncation() }
    }

    pub fn to_structure(&self) -> Result<LInfinityStructure, FormatError> {
        let space = GradedSpace::new(self.dims[0], self.dims[1])?;
        let mut d = LInfinityStructure::new(space, self.truncation);
        for comp in &self.components {
            let mut c = Cochain::zero(space);
            for t in &comp.terms {
                if t.target == 0 {
                    return Err(FormatError::Target(0));
                }
                let b = BasisCochain::new(&space, t.index.clone(), t.target - 1)?;
                c.add_term(b, parse_rational(&t.coeff)?)?;
            }
            match c.degree() {
                None => continue,
                Some(k) if k != comp.degree => {
                    return Err(FormatError::ComponentDegree { listed: comp.degree, actual: k })
                }
                Some(_) => d.add(&c)?,
            }
        }
        Ok(d)
    }

    pub fn parse(text: &str) -> Result<LInfinityStructure, FormatError> {
        serde_json::from_str::<StructureFile>(text)?.to_structure()
    }

    pub fn render(d: &LInfinityStructure) -> String {
        serde_json::to_string_pretty(&StructureFile::from_structure(d)).expect("plain data")
    }
}

/// A structure given as one expression per component.
pub fn structure_from_expressions(
    space: GradedSpace,
    exprs: &[&str],
    truncation: usize,
) -> Result<LInfinityStructure, FormatError> {
    let mut d = LInfinityStructure::new(space, truncation);
    for e in exprs {
        let c = parse_cochain(&space, e)?;
        if !c.is_zero() {
            d.add(&c)?;
        }
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeJson {
    pub degree: usize,
    /// `[even, odd]`
    pub z: [usize; 2],
    pub b: [usize; 2],
    pub h: [usize; 2],
    pub representatives: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyJson {
    pub leading_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub working_truncation: Option<usize>,
    pub degrees: Vec<DegreeJson>,
}

impl From<&CohomologyReport> for CohomologyJson {
    fn from(r: &CohomologyReport) -> CohomologyJson {
        CohomologyJson {
            leading_degree: r.leading_degree,
            working_truncation: r.working_truncation,
            degrees: r
                .degrees
                .iter()
                .map(|d| DegreeJson {
                    degree: d.degree,
                    z: [d.z.even, d.z.odd],
                    b: [d.b.even, d.b.odd],
                    h: [d.h.even, d.h.odd],
                    representatives: d.representatives.iter().map(format_cochain).collect(),
                })
                .collect(),
        }
    }
}

/// Aligned text table of a cohomology report.
pub fn cohomology_table(r: &CohomologyReport) -> String {
    let mut out = String::new();
    if let Some(w) = r.working_truncation {
        out.push_str(&format!("filtered by leading degree, cochains cut at degree {w}\n"));
    }
    out.push_str(&format!("{:<8}{:<8}{:<8}{:<8}representatives\n", "degree", "z", "b", "h"));
    for d in &r.degrees {
        let reps: Vec<String> = d.representatives.iter().map(format_cochain).collect();
        out.push_str(&format!(
            "{:<8}{:<8}{:<8}{:<8}{}\n",
            d.degree,
            d.z.to_string(),
            d.b.to_string(),
            d.h.to_string(),
            reps.join("; ")
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TagJson {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
}

impl From<&FamilyTag> for TagJson {
    fn from(t: &FamilyTag) -> TagJson {
        TagJson { family: t.name().to_string(), degree: t.degree(), lambda: t.lambda().map(format_rational) }
    }
}

impl TagJson {
    pub fn to_tag(&self) -> Result<FamilyTag, FormatError> {
        let lambda = self.lambda.as_deref().map(parse_rational).transpose()?;
        Ok(FamilyTag::from_parts(&self.family, self.degree, lambda)?)
    }
}

pub fn matrix_json(g: &LinearAutomorphism) -> Vec<Vec<String>> {
    g.matrix().iter().map(|row| row.iter().map(format_rational).collect()).collect()
}

pub fn matrix_from_json(space: GradedSpace, rows: &[Vec<String>]) -> Result<LinearAutomorphism, FormatError> {
    let matrix = rows
        .iter()
        .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<Rational>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LinearAutomorphism::new(space, matrix)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationJson {
    #[serde(flatten)]
    pub tag: TagJson,
    /// Columns are images of the generators; conjugating the input by this
    /// map gives the family representative.
    pub witness: Vec<Vec<String>>,
    pub representative: String,
}

impl From<&CanonicalForm> for ClassificationJson {
    fn from(f: &CanonicalForm) -> ClassificationJson {
        ClassificationJson {
            tag: TagJson::from(&f.tag),
            witness: matrix_json(&f.witness),
            representative: format_cochain(&f.tag.representative()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveJson {
    #[serde(rename = "move")]
    pub kind: String,
    pub data: String,
}

impl From<&Move> for MoveJson {
    fn from(m: &Move) -> MoveJson {
        let data = match m {
            Move::Exp(eta) => format_cochain(eta),
            Move::Linear(g) => serde_json::to_string(&matrix_json(g)).expect("plain data"),
            Move::Truncate(k) => k.to_string(),
        };
        MoveJson { kind: m.kind().to_string(), data }
    }
}

impl MoveJson {
    pub fn to_move(&self, space: GradedSpace) -> Result<Move, FormatError> {
        Ok(match self.kind.as_str() {
            "exp" => Move::Exp(parse_cochain(&space, &self.data)?),
            "linear" => {
                let rows: Vec<Vec<String>> = serde_json::from_str(&self.data)?;
                Move::Linear(matrix_from_json(space, &rows)?)
            }
            "truncate" => Move::Truncate(self.data.trim().parse().map_err(|_| {
                linfty_core::Error::Parse { position: 0, message: format!("bad truncation degree {:?}", self.data) }
            })?),
            other => {
                return Err(linfty_core::Error::Parse { position: 0, message: format!("unknown move {other:?}") }.into())
            }
        })
    }
}

pub fn transcript_json(moves: &[Move]) -> Vec<MoveJson> {
    moves.iter().map(MoveJson::from).collect()
}

pub fn transcript_from_json(space: GradedSpace, moves: &[MoveJson]) -> Result<Vec<Move>, FormatError> {
    moves.iter().map(|m| m.to_move(space)).collect()
}
