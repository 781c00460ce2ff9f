// SPDX-License-Identifier: MIT OR Apache-2.0
//! Versioned JSON formats for graphs, operad elements, algebras and polynomials.

use std::collections::BTreeMap;

use polydiff_core::def::GcElement;
use polydiff_core::gra::GraElement;
use polydiff_core::graph::OrientedGraph;
use polydiff_core::gutt::{FPLieAlgebra, Gen, HPoly};
use polydiff_core::lie::{BracketWord, LieElement};
use polydiff_core::linalg::{fmt_rational, int, parse_rational, Rational};
use polydiff_core::poly::{ComponentOperad, OElement, OLie, RawComponent};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Version written into every file.
pub const FORMAT_VERSION: &str = "1.0";
const SUPPORTED_MAJOR: u64 = 1;

/// Fails unless `v` carries a `format_version` with a supported major.
pub fn check_version(v: &Value) -> Result<()> {
    let s = v
        .get("format_version")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Format("missing \"format_version\"".into()))?;
    let major = s.split('.').next().and_then(|m| m.parse::<u64>().ok());
    match major {
        Some(SUPPORTED_MAJOR) => Ok(()),
        _ => Err(Error::Format(format!("unsupported format_version {s:?}"))),
    }
}

/// Adds the version field to a JSON object.
pub fn versioned(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("format_version".into(), Value::String(FORMAT_VERSION.into()));
    }
    v
}

/// Parses a versioned document into `T`.
pub fn from_versioned<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text)?;
    check_version(&v)?;
    Ok(serde_json::from_value(v)?)
}

/// Serializes `x` with the version field, pretty-printed.
pub fn to_versioned<T: Serialize>(x: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&versioned(serde_json::to_value(x)?))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub d: i64,
    pub vertices: usize,
    pub edges: Vec<[u8; 2]>,
}

impl GraphRecord {
    pub fn from_graph(g: &OrientedGraph) -> Self {
        GraphRecord { d: g.d(), vertices: g.n_vertices(), edges: g.edges().iter().map(|&(t, h)| [t, h]).collect() }
    }

    pub fn to_graph(&self) -> Result<OrientedGraph> {
        Ok(OrientedGraph::new(self.d, self.vertices, self.edges.iter().map(|e| (e[0], e[1])).collect())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphTerm {
    pub coeff: String,
    pub graph: GraphRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraJson {
    pub arity: usize,
    pub d: i64,
    pub terms: Vec<GraphTerm>,
}

impl GraJson {
    pub fn from_element(x: &GraElement) -> Self {
        let terms = x.terms().map(|(g, c)| GraphTerm { coeff: fmt_rational(c), graph: GraphRecord::from_graph(&g) }).collect();
        GraJson { arity: x.arity(), d: x.d(), terms }
    }

    pub fn to_element(&self) -> Result<GraElement> {
        let mut out = GraElement::zero(self.arity, self.d);
        for t in &self.terms {
            let g = t.graph.to_graph()?;
            if g.n_vertices() != self.arity || g.d() != self.d {
                return Err(Error::Format(format!("graph with {} vertices in an arity {} element", g.n_vertices(), self.arity)));
            }
            out.add_graph(&g, parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

/// Combination of unlabelled graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcJson {
    pub d: i64,
    pub terms: Vec<GraphTerm>,
}

impl GcJson {
    pub fn from_element(x: &GcElement) -> Self {
        let terms =
            x.terms().iter().map(|(g, c)| GraphTerm { coeff: fmt_rational(c), graph: GraphRecord::from_graph(g) }).collect();
        GcJson { d: x.d(), terms }
    }

    pub fn to_element(&self) -> Result<GcElement> {
        let mut out = GcElement::zero(self.d);
        for t in &self.terms {
            out.add_graph(&t.graph.to_graph()?, parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub word: String,
    pub attach: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OTermJson {
    pub coeff: String,
    pub components: Vec<ComponentJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OJson {
    pub arity: usize,
    pub d: i64,
    pub terms: Vec<OTermJson>,
}

impl OJson {
    /// Words are printed as bracket expressions; for even `d` the printed
    /// coefficient absorbs the sign of reading the expression as a composite.
    pub fn from_element(o: &OLie, x: &OElement) -> Self {
        let p = o.component_operad();
        let terms = x
            .terms()
            .iter()
            .map(|(t, c)| {
                let sign: i64 = t.iter().map(|comp| p.text_sign(&comp.word)).product();
                OTermJson {
                    coeff: fmt_rational(&(c * int(sign))),
                    components: t
                        .iter()
                        .map(|comp| ComponentJson { word: p.word_to_string(&comp.word), attach: comp.attach.clone() })
                        .collect(),
                }
            })
            .collect();
        OJson { arity: x.arity(), d: x.d(), terms }
    }

    pub fn to_element(&self, o: &OLie) -> Result<OElement> {
        if o.d() != self.d {
            return Err(Error::Format(format!("element for d = {} read with d = {}", self.d, o.d())));
        }
        let mut out = OElement::zero(self.arity, self.d);
        for t in &self.terms {
            let mut raw: Vec<RawComponent> = Vec::new();
            for c in &t.components {
                if c.attach.iter().any(|&w| w == 0 || w as usize > self.arity) {
                    return Err(Error::Format(format!("attachment {:?} outside whites 1..={}", c.attach, self.arity)));
                }
                raw.push(o.parse_component(&c.word, &c.attach)?);
            }
            o.add_raw_term(&mut out, &raw, &parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieTermJson {
    pub coeff: String,
    pub word: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieJson {
    pub arity: usize,
    pub d: i64,
    pub terms: Vec<LieTermJson>,
}

impl LieJson {
    pub fn from_element(x: &LieElement) -> Self {
        let terms =
            x.to_words().into_iter().map(|(c, w)| LieTermJson { coeff: fmt_rational(&c), word: w.to_string() }).collect();
        LieJson { arity: x.arity(), d: x.d(), terms }
    }

    pub fn to_element(&self) -> Result<LieElement> {
        let mut expr = Vec::new();
        for t in &self.terms {
            expr.push((parse_rational(&t.coeff)?, BracketWord::parse(&t.word)?));
        }
        if expr.is_empty() {
            return Ok(LieElement::zero(self.arity, self.d));
        }
        Ok(polydiff_core::lie::normalize(&expr, self.d)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: Gen,
    pub j: Gen,
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub brackets: Vec<BracketJson>,
}

impl AlgebraJson {
    pub fn from_algebra(a: &FPLieAlgebra) -> Self {
        let brackets = a
            .brackets()
            .map(|(i, j, v)| BracketJson {
                i,
                j,
                coeffs: v.iter().map(|(k, c)| (k.to_string(), fmt_rational(c))).collect(),
            })
            .collect();
        AlgebraJson { dim: a.dim(), brackets }
    }

    pub fn to_algebra(&self) -> Result<FPLieAlgebra> {
        let mut brackets = Vec::new();
        for b in &self.brackets {
            let mut v: Vec<(Gen, Rational)> = Vec::new();
            for (k, c) in &b.coeffs {
                let k: Gen = k.parse().map_err(|_| Error::Format(format!("generator index {k:?}")))?;
                v.push((k, parse_rational(c)?));
            }
            brackets.push((b.i, b.j, v));
        }
        Ok(FPLieAlgebra::new(self.dim, &brackets)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub monomial: Vec<Gen>,
    pub h: u32,
    pub coeff: String,
}

/// Polynomial in sorted monomials; `h` is the power of `ħ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub terms: Vec<PolyTermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &HPoly) -> Self {
        let terms =
            p.terms().iter().map(|((m, h), c)| PolyTermJson { monomial: m.clone(), h: *h, coeff: fmt_rational(c) }).collect();
        PolyJson { terms }
    }

    pub fn to_poly(&self) -> Result<HPoly> {
        let mut out = HPoly::zero();
        for t in &self.terms {
            let mut m = t.monomial.clone();
            m.sort_unstable();
            out.add_term(m, t.h, parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

/// Human-readable polynomial, e.g. `t1 t2 + 1/2 h t3`.
pub fn poly_to_text(p: &HPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for ((m, h), c) in p.terms() {
        let mut factors = Vec::new();
        if *c != int(1) {
            factors.push(fmt_rational(c));
        }
        match h {
            0 => {}
            1 => factors.push("h".into()),
            _ => factors.push(format!("h^{h}")),
        }
        factors.extend(m.iter().map(|g| format!("t{g}")));
        if factors.is_empty() {
            factors.push("1".into());
        }
        parts.push(factors.join(" "));
    }
    parts.join(" + ")
}
