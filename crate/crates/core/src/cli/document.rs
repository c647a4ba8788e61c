//! JSON input documents: parsing, canonical emission and conversion into
//! engine objects.

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::abelian::{validate_hom, FiniteAbelianGroup};
use crate::catalog::by_name;
use crate::cohomology::ShortExactSequence;
use crate::fp::Matrix;
use crate::gmodule::GModule;
use crate::groups::{from_permutations_capped, validate_group, FiniteGroup};
use crate::limits::Limits;
use crate::liering::{
    validate_lie, validate_lie_module, LieModule, LieRing, LieShortExactSequence,
};
use crate::theorems::BatteryConfig;

pub const SCHEMA: &str = "cohomoforge.v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDocument {
    pub schema: String,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Group(GroupSpec),
    Abelian(AbelianSpec),
    Gmodule(GModuleSpec),
    Liering(LieSpec),
    Ses(SesSpec),
    Battery(BatterySpec),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Group(_) => "group",
            Payload::Abelian(_) => "abelian",
            Payload::Gmodule(_) => "gmodule",
            Payload::Liering(_) => "liering",
            Payload::Ses(_) => "ses",
            Payload::Battery(_) => "battery",
        }
    }
}

/// Exactly one of `catalog`, `table` or `perm_degree` with `generators`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianSpec {
    pub factors: Vec<i64>,
}

/// A `G`-module. The action is given per element (`action`), per generator
/// (`generator_action`), or omitted for the trivial action.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GModuleSpec {
    pub group: GroupSpec,
    pub coeffs: AbelianSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_action: Option<Vec<Matrix>>,
    /// Elements the `generator_action` matrices belong to. Defaults to the
    /// permutation generators, or the group's own generating set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_elements: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub submodule: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieModuleSpec {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

/// A Lie ring with an optional module, `[p]`-map basis images and ideal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSpec {
    pub p: i64,
    pub dim: usize,
    pub bracket: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<LieModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmap: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub p: i64,
    pub dim: usize,
    pub bracket: Vec<Vec<Vec<i64>>>,
}

/// A module inside a sequence document: `coeffs` and a group action, or
/// `dim` and Lie action matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedModule {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<AbelianSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator_action: Option<Vec<Matrix>>,
}

/// `0 → left → middle → right → 0` over a group or a Lie ring.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SesSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub liering: Option<RingSpec>,
    pub modules: Vec<NamedModule>,
    pub left: String,
    pub middle: String,
    pub right: String,
    pub inj: Matrix,
    pub surj: Matrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatterySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<BatteryConfigSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatteryConfigSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_group_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_coeff_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub same_prime_aut_limit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excluded: Option<Vec<Vec<i64>>>,
}

impl BatterySpec {
    pub fn config(&self) -> BatteryConfig {
        let mut c = BatteryConfig::default();
        if let Some(s) = &self.config {
            if let Some(v) = s.max_group_order {
                c.max_group_order = v;
            }
            if let Some(v) = s.max_coeff_order {
                c.max_coeff_order = v;
            }
            if let Some(v) = s.same_prime_aut_limit {
                c.same_prime_aut_limit = v;
            }
            if let Some(v) = &s.excluded {
                c.excluded = v.clone();
            }
        }
        c
    }
}

pub fn parse_str(text: &str) -> Result<InputDocument, CliError> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| locate(text, e))?;
    if doc.schema != SCHEMA {
        return Err(CliError::Schema {
            line: key_line(text, &["schema".into()]).unwrap_or(1),
            field: format!("schema must be \"{SCHEMA}\", found \"{}\"", doc.schema),
        });
    }
    Ok(doc)
}

/// Re-runs a failed parse on the payload alone to find the offending field
/// path, then reports the line where that key appears.
fn locate(text: &str, e: serde_json::Error) -> CliError {
    let fallback = CliError::Schema {
        line: e.line(),
        field: e.to_string(),
    };
    if e.is_syntax() || e.is_eof() {
        return fallback;
    }
    let Ok(serde_json::Value::Object(mut obj)) = serde_json::from_str::<serde_json::Value>(text) else {
        return fallback;
    };
    obj.remove("schema");
    let kind = obj.remove("kind");
    let value = serde_json::Value::Object(obj);
    let err = match kind.as_ref().and_then(|k| k.as_str()) {
        Some("group") => path_error::<GroupSpec>(value),
        Some("abelian") => path_error::<AbelianSpec>(value),
        Some("gmodule") => path_error::<GModuleSpec>(value),
        Some("liering") => path_error::<LieSpec>(value),
        Some("ses") => path_error::<SesSpec>(value),
        Some("battery") => path_error::<BatterySpec>(value),
        _ => {
            return CliError::Schema {
                line: key_line(text, &["kind".into()]).unwrap_or(1),
                field: e.to_string(),
            }
        }
    };
    let Some((path, message)) = err else {
        return fallback;
    };
    let line = key_line(text, &path).unwrap_or(e.line());
    let field = if path.is_empty() {
        message
    } else {
        format!("{}: {message}", path.join("."))
    };
    CliError::Schema { line, field }
}

fn path_error<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Option<(Vec<String>, String)> {
    let err = serde_path_to_error::deserialize::<_, T>(value).err()?;
    let path = err
        .path()
        .iter()
        .filter_map(|s| match s {
            serde_path_to_error::Segment::Map { key } => Some(key.clone()),
            _ => None,
        })
        .collect();
    Some((path, err.inner().to_string()))
}

/// Line of the last key in `path`, found by searching for each key in turn.
fn key_line(text: &str, path: &[String]) -> Option<usize> {
    let mut pos = 0;
    for key in path {
        let needle = format!("\"{key}\"");
        pos += text[pos..].find(&needle)?;
    }
    Some(text[..pos].matches('\n').count() + 1)
}

/// Reads and parses a document, then builds its objects once so that
/// structural errors surface at parse time.
pub fn parse_input(path: &std::path::Path, limits: &Limits) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let doc = parse_str(&text)?;
    doc.validate(limits)?;
    Ok(doc)
}

/// Canonical form: pretty-printed JSON with a trailing newline.
pub fn emit(doc: &InputDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

impl InputDocument {
    pub fn validate(&self, limits: &Limits) -> Result<(), CliError> {
        match &self.payload {
            Payload::Group(g) => g.build(limits).map(|_| ()),
            Payload::Abelian(a) => a.build().map(|_| ()),
            Payload::Gmodule(m) => m.build(limits).map(|_| ()),
            Payload::Liering(l) => {
                l.ring()?;
                l.module()?;
                Ok(())
            }
            Payload::Ses(s) => {
                if s.liering.is_some() {
                    s.build_lie().map(|_| ())
                } else {
                    s.build_group(limits).map(|_| ())
                }
            }
            Payload::Battery(b) => match b.catalog.as_deref() {
                None | Some("small") => Ok(()),
                Some(other) => Err(CliError::Validation(format!("unknown catalog \"{other}\""))),
            },
        }
    }
}

/// A built group with the permutation labels when it came from generators.
pub struct BuiltGroup {
    pub group: FiniteGroup,
    pub labels: Option<Vec<Vec<usize>>>,
    pub perm_generators: Option<Vec<Vec<usize>>>,
}

impl GroupSpec {
    pub fn build(&self, limits: &Limits) -> Result<BuiltGroup, CliError> {
        let given = [self.catalog.is_some(), self.table.is_some(), self.perm_degree.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(CliError::Validation(
                "group needs exactly one of catalog, table or perm_degree".into(),
            ));
        }
        if let Some(name) = &self.catalog {
            let group = by_name(name).ok_or_else(|| CliError::Validation(format!("unknown catalog group \"{name}\"")))?;
            return Ok(BuiltGroup { group, labels: None, perm_generators: None });
        }
        if let Some(t) = &self.table {
            let group = validate_group(t).map_err(|e| CliError::Validation(e.to_string()))?;
            return Ok(BuiltGroup { group, labels: None, perm_generators: None });
        }
        let degree = self.perm_degree.expect("checked above");
        let gens = self
            .generators
            .clone()
            .ok_or_else(|| CliError::Validation("perm_degree needs generators".into()))?;
        let (group, labels) = from_permutations_capped(degree, &gens, limits.closure_cap)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        Ok(BuiltGroup { group, labels: Some(labels), perm_generators: Some(gens) })
    }
}

impl AbelianSpec {
    pub fn build(&self) -> Result<FiniteAbelianGroup, CliError> {
        FiniteAbelianGroup::from_cyclic(self.factors.clone()).map_err(|e| CliError::Validation(e.to_string()))
    }
}

fn generator_elements(built: &BuiltGroup, explicit: &Option<Vec<usize>>) -> Result<Vec<usize>, CliError> {
    if let Some(e) = explicit {
        return Ok(e.clone());
    }
    if let (Some(labels), Some(gens)) = (&built.labels, &built.perm_generators) {
        return gens
            .iter()
            .map(|g| {
                labels
                    .iter()
                    .position(|l| l == g)
                    .ok_or_else(|| CliError::Validation("generator not found among elements".into()))
            })
            .collect();
    }
    Ok(built.group.generators().to_vec())
}

fn build_module(
    built: &BuiltGroup,
    coeffs: &FiniteAbelianGroup,
    action: &Option<Vec<Matrix>>,
    generator_action: &Option<Vec<Matrix>>,
    elements: &Option<Vec<usize>>,
) -> Result<GModule, CliError> {
    let invalid = |e: crate::gmodule::GModuleError| CliError::Validation(e.to_string());
    match (action, generator_action) {
        (Some(_), Some(_)) => Err(CliError::Validation(
            "give either action or generator_action, not both".into(),
        )),
        (Some(a), None) => GModule::from_matrices(&built.group, coeffs, a.clone()).map_err(invalid),
        (None, Some(images)) => {
            let gens = generator_elements(built, elements)?;
            GModule::from_generator_action(&built.group, coeffs, &gens, images).map_err(invalid)
        }
        (None, None) => Ok(GModule::trivial_action(&built.group, coeffs)),
    }
}

impl GModuleSpec {
    pub fn build(&self, limits: &Limits) -> Result<GModule, CliError> {
        let built = self.group.build(limits)?;
        let coeffs = self.coeffs.build()?;
        let m = build_module(&built, &coeffs, &self.action, &self.generator_action, &self.generator_elements)?;
        if let Some(sub) = &self.subgroup {
            crate::groups::Subgroup::new(m.group(), sub.clone()).map_err(|e| CliError::Validation(e.to_string()))?;
        }
        if let Some(w) = &self.submodule {
            m.submodule(w).map_err(|e| CliError::Validation(e.to_string()))?;
        }
        Ok(m)
    }
}

impl LieSpec {
    pub fn ring(&self) -> Result<LieRing, CliError> {
        validate_lie(self.p, self.dim, self.bracket.clone()).map_err(|e| CliError::Validation(e.to_string()))
    }

    /// The given module, or the adjoint module when none is given.
    pub fn module(&self) -> Result<LieModule, CliError> {
        let ring = self.ring()?;
        match &self.module {
            Some(m) => validate_lie_module(&ring, m.dim, m.action.clone()).map_err(|e| CliError::Validation(e.to_string())),
            None => Ok(LieModule::adjoint(&ring)),
        }
    }
}

impl SesSpec {
    fn find(&self, name: &str) -> Result<&NamedModule, CliError> {
        self.modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| CliError::Validation(format!("module \"{name}\" is not defined")))
    }

    pub fn build_group(&self, limits: &Limits) -> Result<ShortExactSequence, CliError> {
        let spec = self
            .group
            .as_ref()
            .ok_or_else(|| CliError::Validation("sequence needs a group or a liering".into()))?;
        let built = spec.build(limits)?;
        let module = |name: &str| -> Result<GModule, CliError> {
            let m = self.find(name)?;
            let coeffs = m
                .coeffs
                .as_ref()
                .ok_or_else(|| CliError::Validation(format!("module \"{name}\" needs coeffs")))?
                .build()?;
            build_module(&built, &coeffs, &m.action, &m.generator_action, &None)
        };
        let (a, b, c) = (module(&self.left)?, module(&self.middle)?, module(&self.right)?);
        let invalid = |e: crate::abelian::AbelianError| CliError::Validation(e.to_string());
        let inj = validate_hom(a.coeffs(), b.coeffs(), self.inj.clone()).map_err(invalid)?;
        let surj = validate_hom(b.coeffs(), c.coeffs(), self.surj.clone()).map_err(invalid)?;
        ShortExactSequence::new(a, b, c, inj, surj).map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn build_lie(&self) -> Result<LieShortExactSequence, CliError> {
        let spec = self
            .liering
            .as_ref()
            .ok_or_else(|| CliError::Validation("sequence needs a liering".into()))?;
        let ring = validate_lie(spec.p, spec.dim, spec.bracket.clone()).map_err(|e| CliError::Validation(e.to_string()))?;
        let module = |name: &str| -> Result<LieModule, CliError> {
            let m = self.find(name)?;
            let dim = m
                .dim
                .ok_or_else(|| CliError::Validation(format!("module \"{name}\" needs dim")))?;
            match &m.action {
                Some(a) => validate_lie_module(&ring, dim, a.clone()).map_err(|e| CliError::Validation(e.to_string())),
                None => Ok(LieModule::trivial(&ring, dim)),
            }
        };
        let (a, b, c) = (module(&self.left)?, module(&self.middle)?, module(&self.right)?);
        LieShortExactSequence::new(a, b, c, self.inj.clone(), self.surj.clone())
            .map_err(|e| CliError::Validation(e.to_string()))
    }
}
