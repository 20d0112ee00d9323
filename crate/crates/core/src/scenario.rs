//! Built-in problem instances (the sixteen hypersurface families and the
//! Sicilian configuration) and parsing/validation of user-supplied ones.
//!
//! A scenario fixes the factors of the ambient abelian threefold, the acting
//! group, the divisor self-intersection, and the section character data,
//! either derived from the theta model or supplied explicitly for opaque
//! factors. All registry invariants are enforced at construction time.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{
    commutation_pairing, element_freeness, parse_word, ActionGroup, ElementFreeness, FactorAction,
    GroupElement, GroupError, HalfPeriod,
};
use crate::characters::{canonical_masks, element_label, CharError, CharMultiset, Character};
use crate::forms::OneFormAction;
use crate::sign::Sign;
use crate::theta;

/// Table of the sixteen built-in generator-word triples.
pub const FAMILY_WORDS: [(&str, [&str; 3]); 16] = [
    ("S1", ["i1 i2 i3", "i2 i3 i123", "i3 i23"]),
    ("S2", ["i1 i3 i23", "i3 i13", "i2 i23"]),
    ("S3", ["i1 i3 i23", "i3 i123", "i2 i3 i12"]),
    ("S4", ["i1 i3 i12", "i2 i123", "i2 i3 i23"]),
    ("S5", ["i1 i3 i13", "i3 i123", "i3 i23"]),
    ("S6", ["i2 i3 i123", "i2 i3 i13", "i3 i23"]),
    ("S7", ["i1 i3 i23", "i3 i123", "i2 i12"]),
    ("S8", ["i1 i3 i23", "i2 i3 i123", "i2 i3 i13"]),
    ("S9", ["i1 i2 i3 i13", "i3 i123", "i2 i12"]),
    ("S10", ["i1 i2 i3 i13", "i2 i3 i123", "i3 i23"]),
    ("S11", ["i1 i2 i23", "i2 i123", "i2 i3 i12"]),
    ("S12", ["i1 i3 i13", "i3 i123", "i2 i3 i23"]),
    ("S13", ["i1 i2 i3 i23", "i2 i3 i123", "i2 i12"]),
    ("S14", ["i1 i13", "i12 i123", "i2 i23"]),
    ("S15", ["i1 i3 i13", "i12 i123", "i2 i3 i23"]),
    ("S16", ["i1 i3 i13", "i3 i12 i123", "i2 i3 i23"]),
];

pub const SICILIAN: &str = "sicilian";

/// All built-in scenario names in registry order.
pub fn builtin_names() -> Vec<&'static str> {
    let mut names: Vec<&str> = FAMILY_WORDS.iter().map(|(n, _)| *n).collect();
    names.push(SICILIAN);
    names
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("unknown scenario name {0:?}")]
    UnknownName(String),
    #[error("scenario file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("element {0} has fixed points on A that every invariant hypersurface meets")]
    NotFree(String),
    #[error("cannot certify freeness of element {0}: no factor is certified fixed-point-free")]
    UncertifiedFreeness(String),
    #[error("lifted actions of {0} and {1} do not commute on sections (pairing -1)")]
    NonCommutingLifts(String, String),
    #[error("ambient variety has {0} holomorphic 1-forms, expected 3")]
    DimensionMismatch(usize),
    #[error("section space has {got} characters but the divisor data implies {expected}")]
    SectionCountMismatch { got: u64, expected: i64 },
    #[error("chi0 = {0} does not occur in the section space")]
    InadmissibleChi0(Character),
    #[error("divisor self-intersection must be a positive multiple of 6, got {0}")]
    BadSelfIntersection(i64),
}

fn field_err(field: &str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Field {
        field: field.to_string(),
        message: message.into(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ScenarioKind {
    Burniat,
    Custom,
}

/// Data for a factor whose geometry is not modelled: the action is known only
/// through its effect on 1-forms and through per-element freeness certificates.
#[derive(Clone, Debug)]
pub struct OpaqueFactor {
    pub form_count: usize,
    /// Per generator: signs on this factor's 1-forms.
    pub dz_rows: Vec<Vec<Sign>>,
    /// Canonical element indices certified fixed-point-free on this factor.
    pub free_elements: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
pub enum FactorData {
    Elliptic,
    Opaque(OpaqueFactor),
}

/// A fully validated problem instance.
#[derive(Clone, Debug)]
pub struct Scenario {
    name: String,
    kind: ScenarioKind,
    generator_words: Option<Vec<String>>,
    factor_data: Vec<FactorData>,
    group: ActionGroup,
    forms: OneFormAction,
    sections: CharMultiset,
    sections_derived: bool,
    divisor_selfint: i64,
    chi0: Character,
    chi0_explicit: bool,
    freeness: Vec<ElementFreeness>,
    assumptions: Vec<String>,
}

impl Scenario {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ScenarioKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn generator_words(&self) -> Option<&[String]> {
        self.generator_words.as_deref()
    }

    /// The group acting through the elliptic factors.
    pub fn group(&self) -> &ActionGroup {
        &self.group
    }

    pub fn factor_data(&self) -> &[FactorData] {
        &self.factor_data
    }

    pub fn has_opaque_factors(&self) -> bool {
        self.factor_data
            .iter()
            .any(|f| matches!(f, FactorData::Opaque(_)))
    }

    /// Assembled action on the three holomorphic 1-forms.
    pub fn forms(&self) -> &OneFormAction {
        &self.forms
    }

    pub fn sections(&self) -> &CharMultiset {
        &self.sections
    }

    pub fn sections_derived(&self) -> bool {
        self.sections_derived
    }

    pub fn divisor_selfint(&self) -> i64 {
        self.divisor_selfint
    }

    /// Character of the defining section used for residue twists.
    pub fn chi0(&self) -> Character {
        self.chi0
    }

    pub fn chi0_explicit(&self) -> bool {
        self.chi0_explicit
    }

    /// All characters occurring in the section space; the admissible choices
    /// of chi0.
    pub fn admissible_chi0(&self) -> Vec<Character> {
        self.sections.iter().map(|(&c, _)| c).collect()
    }

    /// Freeness verdict per nontrivial canonical element (starting at g1).
    pub fn freeness(&self) -> &[ElementFreeness] {
        &self.freeness
    }

    /// Construction hypotheses that were recorded rather than verified.
    pub fn assumptions(&self) -> &[String] {
        &self.assumptions
    }

    pub fn element_labels(&self) -> Vec<String> {
        self.group.element_labels()
    }

    /// Whether the all-flip involution `i1 i2 i3` lies in the group. Only
    /// meaningful for three-elliptic-factor scenarios.
    pub fn contains_all_flip(&self) -> bool {
        if self.has_opaque_factors() || self.factor_data.len() != 3 {
            return false;
        }
        let j = parse_word("i1 i2 i3").unwrap();
        self.group.contains(&j)
    }

    /// Serialize to the scenario file format.
    pub fn render(&self) -> ScenarioFile {
        match self.kind {
            ScenarioKind::Burniat => ScenarioFile {
                name: self.name.clone(),
                kind: "burniat".to_string(),
                generators: self.generator_words.clone(),
                factors: None,
                divisor_selfint: self.divisor_selfint,
                chi0: self
                    .chi0_explicit
                    .then(|| self.chi0.to_string()),
                section_chars: None,
            },
            ScenarioKind::Custom => ScenarioFile {
                name: self.name.clone(),
                kind: "custom".to_string(),
                generators: None,
                factors: Some(self.render_factors()),
                divisor_selfint: self.divisor_selfint,
                chi0: self
                    .chi0_explicit
                    .then(|| self.chi0.to_string()),
                section_chars: Some(
                    self.sections
                        .iter()
                        .flat_map(|(c, &n)| std::iter::repeat_n(c.to_string(), n as usize))
                        .collect(),
                ),
            },
        }
    }

    /// Re-express a built-in family as an explicit custom file; used to check
    /// that the custom pathway reproduces the derived outputs.
    pub fn to_custom_file(&self) -> ScenarioFile {
        ScenarioFile {
            name: self.name.clone(),
            kind: "custom".to_string(),
            generators: None,
            factors: Some(self.render_factors()),
            divisor_selfint: self.divisor_selfint,
            chi0: None,
            section_chars: Some(
                self.sections
                    .iter()
                    .flat_map(|(c, &n)| std::iter::repeat_n(c.to_string(), n as usize))
                    .collect(),
            ),
        }
    }

    fn render_factors(&self) -> Vec<FactorFile> {
        let mut elliptic_slot = 0;
        self.factor_data
            .iter()
            .map(|fd| match fd {
                FactorData::Elliptic => {
                    let slot = elliptic_slot;
                    elliptic_slot += 1;
                    FactorFile {
                        kind: "elliptic".to_string(),
                        actions: Some(
                            self.group
                                .generators()
                                .iter()
                                .map(|g| {
                                    let fa = g.factors()[slot];
                                    FactorActionFile {
                                        sign: fa.sign.as_i64() as i8,
                                        shift: [fa.shift.half as u8, fa.shift.half_tau as u8],
                                    }
                                })
                                .collect(),
                        ),
                        form_count: None,
                        dz_signs: None,
                        free_elements: None,
                    }
                }
                FactorData::Opaque(op) => FactorFile {
                    kind: "opaque".to_string(),
                    actions: None,
                    form_count: Some(op.form_count),
                    dz_signs: Some(
                        op.dz_rows
                            .iter()
                            .map(|row| row.iter().map(|s| s.ascii()).collect())
                            .collect(),
                    ),
                    free_elements: Some(
                        op.free_elements
                            .iter()
                            .map(|&i| element_label(canonical_masks(self.rank())[i]))
                            .collect(),
                    ),
                },
            })
            .collect()
    }
}

/// On-disk scenario format: a strict JSON object with exactly these fields.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorFile>>,
    pub divisor_selfint: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section_chars: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<FactorActionFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dz_signs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub free_elements: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorActionFile {
    pub sign: i8,
    pub shift: [u8; 2],
}

/// Load a built-in scenario by name (case-insensitive).
pub fn builtin(name: &str) -> Result<Scenario, ScenarioError> {
    let upper = name.to_ascii_uppercase();
    if name.eq_ignore_ascii_case(SICILIAN) {
        return build_sicilian();
    }
    for (fam, words) in FAMILY_WORDS {
        if fam == upper {
            return build_burniat(fam, &words.map(String::from), 48, None);
        }
    }
    Err(ScenarioError::UnknownName(name.to_string()))
}

/// Parse and validate a scenario from its JSON text.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile = serde_json::from_str(text)?;
    scenario_from_file(&file)
}

pub fn render_scenario(s: &Scenario) -> String {
    serde_json::to_string_pretty(&s.render()).unwrap()
}

pub fn scenario_from_file(file: &ScenarioFile) -> Result<Scenario, ScenarioError> {
    match file.kind.as_str() {
        "burniat" => {
            if file.factors.is_some() {
                return Err(field_err("factors", "not allowed for kind \"burniat\""));
            }
            if file.section_chars.is_some() {
                return Err(field_err(
                    "section_chars",
                    "not allowed for kind \"burniat\"; sections are derived",
                ));
            }
            let words = file
                .generators
                .as_ref()
                .ok_or_else(|| field_err("generators", "required for kind \"burniat\""))?;
            if words.len() != 3 {
                return Err(field_err(
                    "generators",
                    format!("expected 3 generator words, got {}", words.len()),
                ));
            }
            build_burniat(
                &file.name,
                &[words[0].clone(), words[1].clone(), words[2].clone()],
                file.divisor_selfint,
                file.chi0.as_deref(),
            )
        }
        "custom" => {
            if file.generators.is_some() {
                return Err(field_err(
                    "generators",
                    "not allowed for kind \"custom\"; supply explicit factor actions",
                ));
            }
            let factors = file
                .factors
                .as_ref()
                .ok_or_else(|| field_err("factors", "required for kind \"custom\""))?;
            build_custom(
                &file.name,
                factors,
                file.divisor_selfint,
                file.chi0.as_deref(),
                file.section_chars.as_deref(),
            )
        }
        other => Err(field_err(
            "kind",
            format!("expected \"burniat\" or \"custom\", got {other:?}"),
        )),
    }
}

fn build_burniat(
    name: &str,
    words: &[String; 3],
    divisor_selfint: i64,
    chi0: Option<&str>,
) -> Result<Scenario, ScenarioError> {
    let generators: Result<Vec<GroupElement>, GroupError> =
        words.iter().map(|w| parse_word(w)).collect();
    let group = ActionGroup::generate(generators?)?;
    finish_scenario(
        name,
        ScenarioKind::Burniat,
        Some(words.to_vec()),
        vec![FactorData::Elliptic; 3],
        group,
        divisor_selfint,
        chi0,
        None,
    )
}

fn parse_element_label(rank: usize, label: &str) -> Option<usize> {
    let cleaned: String = label
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '*')
        .collect();
    canonical_masks(rank)
        .iter()
        .position(|&m| element_label(m) == cleaned || (m == 0 && cleaned == "1"))
}

fn build_custom(
    name: &str,
    factors: &[FactorFile],
    divisor_selfint: i64,
    chi0: Option<&str>,
    section_chars: Option<&[String]>,
) -> Result<Scenario, ScenarioError> {
    if factors.is_empty() {
        return Err(field_err("factors", "at least one factor is required"));
    }
    // determine the generator count from the first factor
    let rank = factors
        .iter()
        .find_map(|f| {
            f.actions
                .as_ref()
                .map(|a| a.len())
                .or_else(|| f.dz_signs.as_ref().map(|d| d.len()))
        })
        .ok_or_else(|| field_err("factors", "no factor carries generator data"))?;
    if !(1..=3).contains(&rank) {
        return Err(field_err(
            "factors",
            format!("generator count must be 1..=3, got {rank}"),
        ));
    }

    let mut elliptic_actions: Vec<Vec<FactorAction>> = Vec::new(); // per factor, per generator
    let mut factor_data = Vec::new();
    for (fi, f) in factors.iter().enumerate() {
        let field = format!("factors[{fi}]");
        match f.kind.as_str() {
            "elliptic" => {
                let actions = f
                    .actions
                    .as_ref()
                    .ok_or_else(|| field_err(&field, "elliptic factor needs \"actions\""))?;
                if actions.len() != rank {
                    return Err(field_err(
                        &field,
                        format!("expected {rank} actions, got {}", actions.len()),
                    ));
                }
                if f.form_count.is_some() || f.dz_signs.is_some() || f.free_elements.is_some() {
                    return Err(field_err(&field, "opaque-only fields on an elliptic factor"));
                }
                let parsed: Result<Vec<FactorAction>, ScenarioError> = actions
                    .iter()
                    .map(|a| {
                        let sign = match a.sign {
                            1 => Sign::Plus,
                            -1 => Sign::Minus,
                            s => return Err(field_err(&field, format!("sign must be +-1, got {s}"))),
                        };
                        if a.shift.iter().any(|&b| b > 1) {
                            return Err(field_err(&field, "shift bits must be 0 or 1"));
                        }
                        Ok(FactorAction::new(
                            sign,
                            HalfPeriod::new(a.shift[0] == 1, a.shift[1] == 1),
                        ))
                    })
                    .collect();
                elliptic_actions.push(parsed?);
                factor_data.push(FactorData::Elliptic);
            }
            "opaque" => {
                let form_count = f
                    .form_count
                    .ok_or_else(|| field_err(&field, "opaque factor needs \"form_count\""))?;
                let dz = f
                    .dz_signs
                    .as_ref()
                    .ok_or_else(|| field_err(&field, "opaque factor needs \"dz_signs\""))?;
                if dz.len() != rank {
                    return Err(field_err(
                        &field,
                        format!("expected {rank} dz sign rows, got {}", dz.len()),
                    ));
                }
                let mut rows = Vec::new();
                for row in dz {
                    let signs: Option<Vec<Sign>> = row.chars().map(Sign::parse).collect();
                    let signs = signs
                        .ok_or_else(|| field_err(&field, format!("bad sign row {row:?}")))?;
                    if signs.len() != form_count {
                        return Err(field_err(
                            &field,
                            format!("dz row {row:?} does not have {form_count} signs"),
                        ));
                    }
                    rows.push(signs);
                }
                let mut free = BTreeSet::new();
                for label in f.free_elements.as_deref().unwrap_or(&[]) {
                    let idx = parse_element_label(rank, label)
                        .ok_or_else(|| field_err(&field, format!("bad element label {label:?}")))?;
                    if idx == 0 {
                        return Err(field_err(
                            &field,
                            "the identity cannot carry a freeness certificate",
                        ));
                    }
                    // derivable contradiction: an element whose linear part
                    // inverts every 1-form of this factor acts as -1 there
                    // and always has fixed points
                    let mask = canonical_masks(rank)[idx];
                    let all_inverted = (0..form_count).all(|fi| {
                        let mut s = Sign::Plus;
                        for (k, row) in rows.iter().enumerate() {
                            if mask & (1 << k) != 0 {
                                s *= row[fi];
                            }
                        }
                        s == Sign::Minus
                    });
                    if form_count > 0 && all_inverted {
                        return Err(field_err(
                            &field,
                            format!(
                                "element {label:?} inverts every 1-form of this factor, so it has fixed points there; the certificate is inconsistent"
                            ),
                        ));
                    }
                    free.insert(idx);
                }
                factor_data.push(FactorData::Opaque(OpaqueFactor {
                    form_count,
                    dz_rows: rows,
                    free_elements: free,
                }));
            }
            other => {
                return Err(field_err(
                    &field,
                    format!("kind must be \"elliptic\" or \"opaque\", got {other:?}"),
                ))
            }
        }
    }

    if elliptic_actions.is_empty() {
        return Err(field_err(
            "factors",
            "at least one elliptic factor is required to represent the group exactly",
        ));
    }

    // assemble generators over the elliptic factors
    let generators: Vec<GroupElement> = (0..rank)
        .map(|k| {
            GroupElement::from_factors(elliptic_actions.iter().map(|col| col[k]).collect())
        })
        .collect();
    let group = ActionGroup::generate(generators)?;

    finish_scenario(
        name,
        ScenarioKind::Custom,
        None,
        factor_data,
        group,
        divisor_selfint,
        chi0,
        section_chars,
    )
}

#[allow(clippy::too_many_arguments)]
fn finish_scenario(
    name: &str,
    kind: ScenarioKind,
    generator_words: Option<Vec<String>>,
    factor_data: Vec<FactorData>,
    group: ActionGroup,
    divisor_selfint: i64,
    chi0: Option<&str>,
    section_chars: Option<&[String]>,
) -> Result<Scenario, ScenarioError> {
    let rank = group.rank();
    let labels = group.element_labels();
    let sections_derived = section_chars.is_none();

    // lifted actions must commute before any section character is derived
    if sections_derived {
        for (i, a) in group.elements().iter().enumerate() {
            for (j, b) in group.elements().iter().enumerate().skip(i + 1) {
                if commutation_pairing(a, b)? == Sign::Minus {
                    return Err(ScenarioError::NonCommutingLifts(
                        labels[i].clone(),
                        labels[j].clone(),
                    ));
                }
            }
        }
    }

    // freeness of every nontrivial element
    let mut freeness = Vec::new();
    let mut assumptions = Vec::new();
    let opaque_free = |idx: usize| -> bool {
        factor_data.iter().any(|fd| match fd {
            FactorData::Opaque(op) => op.free_elements.contains(&idx),
            FactorData::Elliptic => false,
        })
    };
    let has_opaque = factor_data
        .iter()
        .any(|fd| matches!(fd, FactorData::Opaque(_)));
    for (idx, g) in group.elements().iter().enumerate().skip(1) {
        let elliptic = element_freeness(g)?;
        let verdict = match elliptic {
            ElementFreeness::Free => ElementFreeness::Free,
            _ if opaque_free(idx) => ElementFreeness::Free,
            ElementFreeness::IsolatedFixedPoints { points } if !has_opaque => {
                assumptions.push(format!(
                    "element {} fixes {} isolated points of A; the invariant hypersurface is assumed to avoid them",
                    labels[idx], points
                ));
                ElementFreeness::IsolatedFixedPoints { points }
            }
            ElementFreeness::IsolatedFixedPoints { .. } => {
                return Err(ScenarioError::UncertifiedFreeness(labels[idx].clone()))
            }
            ElementFreeness::MeetsEveryAmpleHypersurface => {
                let desc = if g.word_ascii().is_empty() {
                    labels[idx].clone()
                } else {
                    g.word_ascii()
                };
                return Err(ScenarioError::NotFree(desc));
            }
        };
        freeness.push(verdict);
    }

    // assemble the action on 1-forms: elliptic factors first, in order, then
    // opaque rows, preserving the declared factor order
    let mut chars: Vec<Character> = Vec::new();
    let mut elliptic_slot = 0;
    let elliptic_chars = OneFormAction::from_group(&group);
    for fd in &factor_data {
        match fd {
            FactorData::Elliptic => {
                chars.push(elliptic_chars.characters()[elliptic_slot]);
                elliptic_slot += 1;
            }
            FactorData::Opaque(op) => {
                for fi in 0..op.form_count {
                    let signs: Vec<Sign> = op.dz_rows.iter().map(|row| row[fi]).collect();
                    chars.push(Character::new(&signs));
                }
            }
        }
    }
    if chars.len() != 3 {
        return Err(ScenarioError::DimensionMismatch(chars.len()));
    }
    let forms = OneFormAction::new(rank, chars);

    // divisor and section space
    if divisor_selfint <= 0 || divisor_selfint % 6 != 0 {
        return Err(ScenarioError::BadSelfIntersection(divisor_selfint));
    }
    let expected_sections = divisor_selfint / 6;
    let sections = match section_chars {
        None => {
            if factor_data.len() != 3 || has_opaque {
                return Err(field_err(
                    "section_chars",
                    "required unless the scenario has exactly three elliptic factors",
                ));
            }
            theta::section_characters(&group)
        }
        Some(list) => {
            let mut ms = CharMultiset::new();
            for s in list {
                let c = Character::parse(s)?;
                if c.rank() != rank {
                    return Err(field_err(
                        "section_chars",
                        format!("{s:?} has rank {} but the group has rank {rank}", c.rank()),
                    ));
                }
                ms.add(c, 1);
            }
            ms
        }
    };
    if sections.total_dim() as i64 != expected_sections {
        return Err(ScenarioError::SectionCountMismatch {
            got: sections.total_dim(),
            expected: expected_sections,
        });
    }

    // resolve chi0
    let (chi0, chi0_explicit) = match chi0 {
        Some(text) => {
            let c = Character::parse(text)?;
            if sections.mult_of(c) == 0 {
                return Err(ScenarioError::InadmissibleChi0(c));
            }
            (c, true)
        }
        None => {
            let trivial = Character::trivial(rank);
            if sections.mult_of(trivial) == 0 {
                return Err(ScenarioError::InadmissibleChi0(trivial));
            }
            (trivial, false)
        }
    };

    Ok(Scenario {
        name: name.to_string(),
        kind,
        generator_words,
        factor_data,
        group,
        forms,
        sections,
        sections_derived,
        divisor_selfint,
        chi0,
        chi0_explicit,
        freeness,
        assumptions,
    })
}

fn build_sicilian() -> Result<Scenario, ScenarioError> {
    // E factor: both generators act by half-period translations.
    // T factor: a (1,2)-polarized abelian surface, supplied opaquely; the
    // first generator negates both of its 1-forms, the second fixes them and
    // translates, so it alone is certified free on T.
    let factors = vec![
        FactorFile {
            kind: "elliptic".to_string(),
            actions: Some(vec![
                FactorActionFile {
                    sign: 1,
                    shift: [0, 1],
                },
                FactorActionFile {
                    sign: 1,
                    shift: [1, 0],
                },
            ]),
            form_count: None,
            dz_signs: None,
            free_elements: None,
        },
        FactorFile {
            kind: "opaque".to_string(),
            actions: None,
            form_count: Some(2),
            dz_signs: Some(vec!["--".to_string(), "++".to_string()]),
            free_elements: Some(vec!["g2".to_string()]),
        },
    ];
    let sections: Vec<String> = ["(++)", "(+-)", "(-+)", "(--)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    build_custom(SICILIAN, &factors, 24, None, Some(&sections))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_validates() {
        for name in builtin_names() {
            let s = builtin(name).unwrap();
            assert_eq!(s.order(), 1 << s.rank(), "{name}");
            assert_eq!(
                s.sections().total_dim() as i64,
                s.divisor_selfint() / 6,
                "{name}"
            );
        }
    }

    #[test]
    fn unknown_name_is_rejected() {
        assert!(matches!(
            builtin("S17"),
            Err(ScenarioError::UnknownName(_))
        ));
    }

    #[test]
    fn s5_builtin_matches_published_generators() {
        let s = builtin("S5").unwrap();
        assert_eq!(s.divisor_selfint(), 48);
        assert_eq!(
            s.generator_words().unwrap(),
            &["i1 i3 i13", "i3 i123", "i3 i23"]
        );
        assert!(s.freeness().iter().all(|f| *f == ElementFreeness::Free));
    }

    #[test]
    fn sicilian_builtin_shape() {
        let s = builtin("sicilian").unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.divisor_selfint(), 24);
        assert!(s.has_opaque_factors());
        assert!(s.forms().chi_a().is_trivial());
        assert_eq!(s.forms().invariant_count(), 1);
        assert!(s.freeness().iter().all(|f| *f == ElementFreeness::Free));
        assert_eq!(s.sections().total_dim(), 4);
        assert!(s.sections().is_regular(2));
    }

    #[test]
    fn pencil_families_carry_an_isolated_fixed_point_assumption() {
        for name in ["S1", "S2"] {
            let s = builtin(name).unwrap();
            let isolated: Vec<_> = s
                .freeness()
                .iter()
                .filter(|f| matches!(f, ElementFreeness::IsolatedFixedPoints { .. }))
                .collect();
            assert_eq!(isolated.len(), 1, "{name}");
            assert_eq!(s.assumptions().len(), 1);
            assert!(s.contains_all_flip());
        }
        for name in ["S3", "S10", "S16"] {
            let s = builtin(name).unwrap();
            assert!(s.assumptions().is_empty(), "{name}");
            assert!(!s.contains_all_flip(), "{name}");
        }
    }

    #[test]
    fn inconsistent_opaque_freeness_certificate_is_rejected() {
        // certifying the all-inverting generator as free contradicts the
        // fixed-point count of -1 on the factor
        let file = ScenarioFile {
            name: "bad-cert".into(),
            kind: "custom".into(),
            generators: None,
            factors: Some(vec![
                FactorFile {
                    kind: "elliptic".into(),
                    actions: Some(vec![
                        FactorActionFile {
                            sign: 1,
                            shift: [0, 1],
                        },
                        FactorActionFile {
                            sign: 1,
                            shift: [1, 0],
                        },
                    ]),
                    form_count: None,
                    dz_signs: None,
                    free_elements: None,
                },
                FactorFile {
                    kind: "opaque".into(),
                    actions: None,
                    form_count: Some(2),
                    dz_signs: Some(vec!["--".into(), "++".into()]),
                    free_elements: Some(vec!["g1".into()]),
                },
            ]),
            divisor_selfint: 24,
            chi0: None,
            section_chars: Some(
                ["(++)", "(+-)", "(-+)", "(--)"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            ),
        };
        let err = scenario_from_file(&file).unwrap_err();
        assert!(err.to_string().contains("inconsistent"), "{err}");
    }

    #[test]
    fn irregularity_distribution_over_the_families() {
        let expected = [
            ("S1", 0),
            ("S2", 0),
            ("S3", 0),
            ("S4", 0),
            ("S5", 1),
            ("S6", 1),
            ("S7", 1),
            ("S8", 1),
            ("S9", 1),
            ("S10", 1),
            ("S11", 1),
            ("S12", 1),
            ("S13", 2),
            ("S14", 2),
            ("S15", 2),
            ("S16", 3),
        ];
        for (name, q) in expected {
            let s = builtin(name).unwrap();
            assert_eq!(s.forms().invariant_count(), q, "{name}");
        }
    }

    #[test]
    fn render_parse_round_trip_on_all_builtins() {
        for name in builtin_names() {
            let s = builtin(name).unwrap();
            let text = render_scenario(&s);
            let back = parse_scenario(&text).unwrap();
            assert_eq!(back.name(), s.name());
            assert_eq!(back.rank(), s.rank());
            assert_eq!(back.sections(), s.sections());
            assert_eq!(
                back.forms().characters(),
                s.forms().characters(),
                "{name}"
            );
            assert_eq!(back.divisor_selfint(), s.divisor_selfint());
        }
    }

    #[test]
    fn builtin_reentered_as_custom_matches_derived_outputs() {
        let s5 = builtin("S5").unwrap();
        let text = serde_json::to_string(&s5.to_custom_file()).unwrap();
        let custom = parse_scenario(&text).unwrap();
        assert_eq!(custom.forms().characters(), s5.forms().characters());
        assert_eq!(custom.sections(), s5.sections());
        assert_eq!(custom.forms().chi_a(), s5.forms().chi_a());
        assert_eq!(
            custom.forms().type_vector().values(),
            s5.forms().type_vector().values()
        );
    }

    #[test]
    fn flip_generators_are_rejected_as_not_free() {
        let file = ScenarioFile {
            name: "bad".into(),
            kind: "burniat".into(),
            generators: Some(vec!["i1".into(), "i2".into(), "i3".into()]),
            factors: None,
            divisor_selfint: 48,
            chi0: None,
            section_chars: None,
        };
        let err = scenario_from_file(&file).unwrap_err();
        match err {
            ScenarioError::NotFree(which) => assert_eq!(which, "i1"),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn single_factor_toy_with_anticommuting_lifts_is_rejected() {
        // t and tau on one degree-2 factor: lifted actions anticommute
        let file = ScenarioFile {
            name: "toy".into(),
            kind: "custom".into(),
            generators: None,
            factors: Some(vec![FactorFile {
                kind: "elliptic".into(),
                actions: Some(vec![
                    FactorActionFile {
                        sign: -1,
                        shift: [1, 0],
                    },
                    FactorActionFile {
                        sign: -1,
                        shift: [0, 1],
                    },
                ]),
                form_count: None,
                dz_signs: None,
                free_elements: None,
            }]),
            divisor_selfint: 48,
            chi0: None,
            section_chars: None,
        };
        let err = scenario_from_file(&file).unwrap_err();
        match err {
            ScenarioError::NonCommutingLifts(a, b) => {
                assert_eq!((a.as_str(), b.as_str()), ("g1", "g2"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn redundant_generators_are_rejected() {
        let file = ScenarioFile {
            name: "bad".into(),
            kind: "burniat".into(),
            generators: Some(vec!["i1".into(), "i1".into(), "i2".into()]),
            factors: None,
            divisor_selfint: 48,
            chi0: None,
            section_chars: None,
        };
        assert!(matches!(
            scenario_from_file(&file),
            Err(ScenarioError::Group(GroupError::RedundantGenerators { .. }))
        ));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"name":"x","kind":"burniat","generators":["i1 i3 i13","i3 i123","i3 i23"],"divisor_selfint":48,"extra":1}"#;
        assert!(matches!(
            parse_scenario(text),
            Err(ScenarioError::Json(_))
        ));
    }

    #[test]
    fn missing_selfint_is_rejected() {
        let text = r#"{"name":"x","kind":"burniat","generators":["i1 i3 i13","i3 i123","i3 i23"]}"#;
        assert!(parse_scenario(text).is_err());
    }

    #[test]
    fn section_count_must_match_divisor_data() {
        let s5 = builtin("S5").unwrap();
        let mut file = s5.to_custom_file();
        file.section_chars.as_mut().unwrap().pop();
        let err = scenario_from_file(&file).unwrap_err();
        assert!(matches!(
            err,
            ScenarioError::SectionCountMismatch {
                got: 7,
                expected: 8
            }
        ));
    }

    #[test]
    fn explicit_chi0_must_be_admissible() {
        let s1 = builtin("S1").unwrap();
        let mut file = s1.render();
        file.chi0 = Some("(-++)".into());
        let err = scenario_from_file(&file).unwrap_err();
        assert!(matches!(err, ScenarioError::InadmissibleChi0(_)));
        // an occurring character is accepted
        let mut file = s1.render();
        file.chi0 = Some("(+-+)".into());
        let ok = scenario_from_file(&file).unwrap();
        assert!(ok.chi0_explicit());
    }
}
