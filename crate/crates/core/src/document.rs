//! JSON interchange format for Sullivan models.
//!
//! Generators are referenced by name. A term is an exact coefficient
//! string ("p" or "p/q"), a map from even generator names to positive
//! exponents, and the odd generator names in increasing generator order.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, parse_rational, Generator, GeneratorSet, Parity, Polynomial};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::SullivanModel;
use crate::reduction::ReductionConstants;

pub const SCHEMA_VERSION: u32 = 1;

/// Generous limits so hostile documents fail fast instead of overflowing
/// degree arithmetic.
const MAX_GENERATORS: usize = 4096;
const MAX_DEGREE: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub name: String,
    pub degree: u32,
    pub parity: Parity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub coefficient: String,
    #[serde(default)]
    pub exponents: BTreeMap<String, u32>,
    #[serde(default)]
    pub odd: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DifferentialRecord {
    pub generator: String,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<Graph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<ReductionConstants>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub schema_version: u32,
    pub generators: Vec<GeneratorRecord>,
    pub differential: Vec<DifferentialRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

impl ModelDocument {
    /// Canonical document of a model: differential records in generator
    /// order (zero differentials omitted), terms in canonical monomial
    /// order.
    pub fn from_model(model: &SullivanModel, provenance: Option<Provenance>) -> ModelDocument {
        let gens = model.generators();
        let generators = gens
            .generators()
            .iter()
            .map(|g| GeneratorRecord {
                name: g.name.clone(),
                degree: g.degree,
                parity: g.parity(),
            })
            .collect();
        let differential = (0..gens.len())
            .filter(|&id| !model.differential_of(id).is_zero())
            .map(|id| DifferentialRecord {
                generator: gens.generator(id).name.clone(),
                terms: model
                    .differential_of(id)
                    .terms()
                    .map(|(m, c)| {
                        let mut exponents = BTreeMap::new();
                        let mut odd = Vec::new();
                        for (i, &e) in m.exponents().iter().enumerate() {
                            if e == 0 {
                                continue;
                            }
                            if gens.is_odd(i) {
                                odd.push(gens.generator(i).name.clone());
                            } else {
                                exponents.insert(gens.generator(i).name.clone(), e);
                            }
                        }
                        TermRecord {
                            coefficient: format_rational(c),
                            exponents,
                            odd,
                        }
                    })
                    .collect(),
            })
            .collect();
        ModelDocument {
            schema_version: SCHEMA_VERSION,
            generators,
            differential,
            provenance,
        }
    }

    pub fn parse(bytes: &[u8]) -> Result<ModelDocument> {
        serde_json::from_slice(bytes).map_err(|e| doc_err(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Builds the model, rejecting anything that is not in canonical form.
    pub fn to_model(&self) -> Result<SullivanModel> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(doc_err(format!("unsupported schema_version {}", self.schema_version)));
        }
        if self.generators.len() > MAX_GENERATORS {
            return Err(doc_err(format!("more than {MAX_GENERATORS} generators")));
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            if g.degree as u64 > MAX_DEGREE {
                return Err(doc_err(format!("generator {} has degree above {MAX_DEGREE}", g.name)));
            }
            if g.parity != Parity::of_degree(g.degree) {
                return Err(doc_err(format!("generator {}: parity does not match degree {}", g.name, g.degree)));
            }
            gens.push(Generator::new(g.name.clone(), g.degree));
        }
        let gens = GeneratorSet::new(gens)?;
        let mut diffs = vec![Polynomial::zero(); gens.len()];
        let mut seen = HashSet::new();
        for rec in &self.differential {
            let id = gens
                .id_of(&rec.generator)
                .ok_or_else(|| doc_err(format!("differential of unknown generator {:?}", rec.generator)))?;
            if !seen.insert(id) {
                return Err(doc_err(format!("two differential records for {}", rec.generator)));
            }
            let mut p = Polynomial::zero();
            for t in &rec.terms {
                let c = parse_rational(&t.coefficient)
                    .ok_or_else(|| doc_err(format!("coefficient {:?} is not an exact rational", t.coefficient)))?;
                if c == num_traits::Zero::zero() {
                    return Err(doc_err("zero coefficient stored"));
                }
                let mut exps = vec![0u32; gens.len()];
                let mut degree: u64 = 0;
                for (name, &e) in &t.exponents {
                    let i = gens.id_of(name).ok_or_else(|| doc_err(format!("unknown generator {name:?}")))?;
                    if gens.is_odd(i) {
                        return Err(doc_err(format!("odd generator {name} in an exponent map")));
                    }
                    if e == 0 {
                        return Err(doc_err(format!("zero exponent for {name}")));
                    }
                    exps[i] = e;
                    degree += e as u64 * gens.degree(i) as u64;
                }
                let mut last = None;
                for name in &t.odd {
                    let i = gens.id_of(name).ok_or_else(|| doc_err(format!("unknown generator {name:?}")))?;
                    if !gens.is_odd(i) {
                        return Err(doc_err(format!("even generator {name} in an odd list")));
                    }
                    if last.is_some_and(|l| l >= i) {
                        return Err(doc_err("odd list must be strictly increasing in generator order"));
                    }
                    last = Some(i);
                    exps[i] = 1;
                    degree += gens.degree(i) as u64;
                }
                if degree > MAX_DEGREE {
                    return Err(doc_err(format!("term degree above {MAX_DEGREE}")));
                }
                let m = gens.monomial(exps)?.expect("odd exponents are 0 or 1");
                if p.coefficient(&m) != num_traits::Zero::zero() {
                    return Err(doc_err(format!("repeated monomial in d({})", rec.generator)));
                }
                p.add_term(m, c);
            }
            diffs[id] = p;
        }
        SullivanModel::new(gens, diffs)
    }
}
