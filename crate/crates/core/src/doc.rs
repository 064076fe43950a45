//! JSON documents for elements, module vectors and Fock vectors. All numbers
//! are exact fraction strings; printing is deterministic.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{domain_err, Error, Result};
use crate::fock::{FockKey, FockVec};
use crate::lattice::{format_scalar, parse_scalar, ExpVec, Scalar};
use crate::reps::{EvalModule, LarssonModule, ModKey, ModVec};
use crate::simple_lie::{build_simple, irrep, GlModule, ModuleLabel};
use crate::toroidal::{BasisKey, Flavor, LoopAffineElt, LoopKey, TorElt, ToroidalAlgebra};

/// Pretty JSON with a trailing newline.
pub fn print<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// Parses JSON, reporting syntax and shape errors with their position.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), msg: e.to_string() })
}

/// Line and column (1-based) of the first occurrence of the quoted literal.
fn locate(text: &str, literal: &str) -> (usize, usize) {
    let needle = format!("\"{literal}\"");
    let Some(pos) = text.find(&needle) else { return (0, 0) };
    let before = &text[..pos];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Parses a fraction string found in `text`, locating it on failure.
pub fn scalar_in(text: &str, s: &str) -> Result<Scalar> {
    parse_scalar(s).map_err(|e| {
        let (line, column) = locate(text, s);
        Error::Parse { line, column, msg: e.to_string() }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub n: usize,
    pub flavor: String,
}

impl AlgebraSpec {
    pub fn of(alg: &ToroidalAlgebra) -> Self {
        let rank = alg.g().map(|g| g.rank());
        AlgebraSpec { kind: rank.map(|_| "A".to_string()), rank, n: alg.n(), flavor: alg.flavor().name().to_string() }
    }

    pub fn build(&self) -> Result<ToroidalAlgebra> {
        let flavor = Flavor::parse(&self.flavor)?;
        if flavor == Flavor::DerAHat {
            if self.rank.is_some() {
                return domain_err("dera_hat has no simple part; drop \"rank\"");
            }
            return ToroidalAlgebra::dera_hat(self.n);
        }
        match self.kind.as_deref() {
            Some("A") => {}
            Some(other) => return Err(Error::Unsupported(format!("type {other:?}; only type A is implemented"))),
            None => return domain_err("missing \"type\""),
        }
        let Some(rank) = self.rank else { return domain_err("missing \"rank\"") };
        ToroidalAlgebra::new(build_simple(rank)?, self.n, flavor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub kind: String,
    pub index: usize,
    pub exp: Vec<i64>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDocument {
    pub algebra: AlgebraSpec,
    pub terms: Vec<TermDoc>,
}

impl ElementDocument {
    pub fn from_element(alg: &ToroidalAlgebra, x: &TorElt) -> Self {
        let terms = x
            .terms()
            .iter()
            .map(|(k, c)| {
                let (kind, index) = match k {
                    BasisKey::G { g, .. } => ("g", *g),
                    BasisKey::Center { i, .. } => ("center", i + 1),
                    BasisKey::Deriv { i, .. } => ("deriv", i + 1),
                };
                TermDoc { kind: kind.into(), index, exp: k.exp().entries().to_vec(), coeff: format_scalar(c) }
            })
            .collect();
        ElementDocument { algebra: AlgebraSpec::of(alg), terms }
    }

    /// Builds the algebra and the canonicalized element; `text` is the source
    /// used to locate bad coefficients.
    pub fn to_element(&self, text: &str) -> Result<(ToroidalAlgebra, TorElt)> {
        let alg = self.algebra.build()?;
        let mut pairs = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let exp = ExpVec::new(t.exp.clone());
            let one_based = |i: usize| {
                i.checked_sub(1).ok_or_else(|| Error::Domain(format!("{} index is 1-based", t.kind)))
            };
            let key = match t.kind.as_str() {
                "g" => BasisKey::G { g: t.index, exp },
                "center" => BasisKey::Center { i: one_based(t.index)?, exp },
                "deriv" => BasisKey::Deriv { i: one_based(t.index)?, exp },
                other => return domain_err(format!("unknown term kind {other:?}")),
            };
            if key.exp().len() != alg.n() {
                return Err(Error::Dimension(format!("exponent {:?} has the wrong length", t.exp)));
            }
            pairs.push((key, scalar_in(text, &t.coeff)?));
        }
        let x = alg.element(pairs)?;
        Ok((alg, x))
    }
}

pub fn parse_element(text: &str) -> Result<(ToroidalAlgebra, TorElt)> {
    parse::<ElementDocument>(text)?.to_element(text)
}

pub fn print_element(alg: &ToroidalAlgebra, x: &TorElt) -> String {
    print(&ElementDocument::from_element(alg, x))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopTermDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loop_power: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exp: Option<Vec<i64>>,
    pub coeff: String,
}

/// Element of the loop-of-affine algebra produced by `phi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopDocument {
    pub rank: usize,
    pub n: usize,
    pub terms: Vec<LoopTermDoc>,
}

impl LoopDocument {
    pub fn from_loop(rank: usize, n: usize, x: &LoopAffineElt) -> Self {
        let terms = x
            .terms()
            .iter()
            .map(|(k, c)| {
                let coeff = format_scalar(c);
                match k {
                    LoopKey::G { g, loop_power, exp } => LoopTermDoc {
                        kind: "g".into(),
                        index: Some(*g),
                        loop_power: Some(*loop_power),
                        exp: Some(exp.entries().to_vec()),
                        coeff,
                    },
                    LoopKey::K { exp } => LoopTermDoc {
                        kind: "center".into(),
                        index: None,
                        loop_power: None,
                        exp: Some(exp.entries().to_vec()),
                        coeff,
                    },
                    LoopKey::D { i } => {
                        LoopTermDoc { kind: "deriv".into(), index: Some(i + 1), loop_power: None, exp: None, coeff }
                    }
                }
            })
            .collect();
        LoopDocument { rank, n, terms }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorTermDoc {
    pub index: Vec<usize>,
    pub exp: Vec<i64>,
    pub coeff: String,
}

/// Vector of a module `V_1 (x) .. (x) V_k (x) A_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorDocument {
    pub n: usize,
    pub terms: Vec<VectorTermDoc>,
}

impl VectorDocument {
    pub fn from_vec(v: &ModVec) -> Self {
        let terms = v
            .terms()
            .iter()
            .map(|(k, c)| VectorTermDoc { index: k.idx.clone(), exp: k.exp.entries().to_vec(), coeff: format_scalar(c) })
            .collect();
        VectorDocument { n: v.n(), terms }
    }

    pub fn to_vec(&self, text: &str) -> Result<ModVec> {
        let mut v = ModVec::zero(self.n);
        for t in &self.terms {
            if t.exp.len() != self.n {
                return Err(Error::Dimension(format!("exponent {:?} has the wrong length", t.exp)));
            }
            v.push(ModKey { idx: t.index.clone(), exp: ExpVec::new(t.exp.clone()) }, scalar_in(text, &t.coeff)?);
        }
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FockTermDoc {
    pub charge: Vec<i64>,
    /// `[direction, k]` for each oscillator `b_direction(-k)`.
    pub modes: Vec<(usize, i64)>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FockDocument {
    pub rank: usize,
    pub terms: Vec<FockTermDoc>,
}

impl FockDocument {
    pub fn from_vec(v: &FockVec) -> Self {
        let terms = v
            .terms()
            .iter()
            .map(|(k, c)| FockTermDoc { charge: k.charge.clone(), modes: k.modes.clone(), coeff: format_scalar(c) })
            .collect();
        FockDocument { rank: v.rank(), terms }
    }

    pub fn to_vec(&self, text: &str) -> Result<FockVec> {
        let mut v = FockVec::zero(self.rank);
        for t in &self.terms {
            if t.charge.len() != self.rank || t.modes.iter().any(|&(d, _)| d >= self.rank) {
                return Err(Error::Dimension("Fock term does not match the lattice rank".into()));
            }
            if t.modes.iter().any(|&(_, k)| k <= 0) {
                return domain_err("oscillator modes must be positive");
            }
            let c = scalar_in(text, &t.coeff)?;
            v.add_assign(&FockVec::basis(FockKey { charge: t.charge.clone(), modes: t.modes.clone() }).scale(&c));
        }
        Ok(v)
    }
}

/// `F^alpha(psi, b)` over `gl_n`, `n = alpha.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LarssonSpec {
    pub label: String,
    pub b: String,
    pub alpha: Vec<String>,
}

impl LarssonSpec {
    pub fn build(&self, text: &str) -> Result<LarssonModule> {
        let alpha = self.alpha.iter().map(|a| scalar_in(text, a)).collect::<Result<Vec<_>>>()?;
        let gl = GlModule::from_label(alpha.len(), ModuleLabel::parse(&self.label)?, scalar_in(text, &self.b)?)?;
        LarssonModule::new(gl, alpha)
    }
}

/// Evaluation module of `sl_{rank+1}` in `points.len()` variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalSpec {
    pub rank: usize,
    pub points: Vec<Vec<String>>,
    pub factors: Vec<String>,
    pub choices: Vec<Vec<usize>>,
}

impl EvalSpec {
    pub fn build(&self, text: &str) -> Result<EvalModule> {
        let g = build_simple(self.rank)?;
        let points = self
            .points
            .iter()
            .map(|row| row.iter().map(|p| scalar_in(text, p)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let factors = self.factors.iter().map(|f| irrep(&g, ModuleLabel::parse(f)?)).collect::<Result<Vec<_>>>()?;
        EvalModule::new(g, points, factors, self.choices.clone())
    }
}

pub fn scalars_to_strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}
