//! JSON exchange formats: complexes, twisting functions, group cochains and
//! simplicial maps.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use kanforge::bundles::{FiniteGroup, Group, PresentedGroup, TwistingFunction};
use kanforge::chains::Coeff;
use kanforge::charclass::GroupCochain;
use kanforge::simplicial::{FaceRef, Presentation, SimplicialMap, SimplicialSet};
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// A parsed complex file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFile {
    pub presentation: Presentation,
    pub basepoint: Option<String>,
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn json_of(text: &str, origin: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::parse(origin, format!("malformed JSON: {e}")))
}

fn field<'a>(v: &'a Value, key: &str, at: &str, origin: &str) -> Result<&'a Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::parse(origin, format!("{at}: missing field \"{key}\"")))
}

fn text_at<'a>(v: &'a Value, at: &str, origin: &str) -> Result<&'a str, CliError> {
    v.as_str()
        .ok_or_else(|| CliError::parse(origin, format!("{at}: expected a string")))
}

fn array_at<'a>(v: &'a Value, at: &str, origin: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::parse(origin, format!("{at}: expected an array")))
}

fn face_ref(v: &Value, at: &str, origin: &str) -> Result<FaceRef, CliError> {
    let base = text_at(field(v, "base", at, origin)?, &format!("{at}.base"), origin)?;
    let degens = match v.get("degens") {
        None => Vec::new(),
        Some(d) => {
            let at = format!("{at}.degens");
            let list = array_at(d, &at, origin)?;
            let degens = list
                .iter()
                .map(|x| x.as_u64().map(|n| n as usize))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CliError::parse(origin, format!("{at}: expected non-negative integers")))?;
            if degens.windows(2).any(|w| w[0] <= w[1]) {
                return Err(CliError::parse(origin, format!("{at}: not in strictly decreasing order")));
            }
            degens
        }
    };
    Ok(FaceRef::degenerate(base, degens))
}

/// Parses a complex document. Identity checks are left to `validate`.
pub fn parse_complex_str(text: &str, origin: &str) -> Result<ComplexFile, CliError> {
    let doc = json_of(text, origin)?;
    complex_from_value(&doc, origin)
}

fn complex_from_value(doc: &Value, origin: &str) -> Result<ComplexFile, CliError> {
    let name = match doc.get("name") {
        Some(n) => text_at(n, "name", origin)?.to_string(),
        None => "K".to_string(),
    };
    let cells = field(doc, "cells", "document", origin)?
        .as_object()
        .ok_or_else(|| CliError::parse(origin, "cells: expected an object keyed by dimension"))?;
    let mut by_dim: Vec<(usize, &Vec<Value>)> = Vec::new();
    for (key, list) in cells {
        let dim: usize = key
            .parse()
            .map_err(|_| CliError::parse(origin, format!("cells.{key}: dimension must be an integer")))?;
        by_dim.push((dim, array_at(list, &format!("cells.{key}"), origin)?));
    }
    by_dim.sort_by_key(|&(d, _)| d);
    let mut p = Presentation::new(name);
    for (dim, list) in by_dim {
        for (i, entry) in list.iter().enumerate() {
            let at = format!("cells.{dim}[{i}]");
            if dim == 0 {
                let id = match entry {
                    Value::String(s) => s.as_str(),
                    other => text_at(field(other, "id", &at, origin)?, &format!("{at}.id"), origin)?,
                };
                p.add(0, id, Vec::new());
                continue;
            }
            let id = text_at(field(entry, "id", &at, origin)?, &format!("{at}.id"), origin)?;
            let faces = array_at(field(entry, "faces", &at, origin)?, &format!("{at}.faces"), origin)?
                .iter()
                .enumerate()
                .map(|(j, f)| face_ref(f, &format!("{at}.faces[{j}]"), origin))
                .collect::<Result<Vec<_>, _>>()?;
            p.add(dim, id, faces);
        }
    }
    let basepoint = match doc.get("basepoint") {
        Some(b) => Some(text_at(b, "basepoint", origin)?.to_string()),
        None => None,
    };
    Ok(ComplexFile {
        presentation: p,
        basepoint,
    })
}

pub fn parse_complex(path: &Path) -> Result<ComplexFile, CliError> {
    parse_complex_str(&read_text(path)?, &path.display().to_string())
}

/// Canonical JSON: sorted keys, cells in declaration order.
pub fn complex_to_json(p: &Presentation, basepoint: Option<&str>) -> String {
    serde_json::to_string_pretty(&complex_value(p, basepoint)).expect("JSON values serialize")
}

fn complex_value(p: &Presentation, basepoint: Option<&str>) -> Value {
    let mut cells = Map::new();
    for (dim, list) in p.cells.iter().enumerate() {
        let entries: Vec<Value> = list
            .iter()
            .map(|(id, faces)| {
                if dim == 0 {
                    json!(id)
                } else {
                    let faces: Vec<Value> = faces
                        .iter()
                        .map(|f| json!({"base": f.base, "degens": f.degens}))
                        .collect();
                    json!({"id": id, "faces": faces})
                }
            })
            .collect();
        cells.insert(dim.to_string(), Value::Array(entries));
    }
    let mut doc = Map::new();
    doc.insert("name".into(), json!(p.name));
    doc.insert("cells".into(), Value::Object(cells));
    if let Some(b) = basepoint {
        doc.insert("basepoint".into(), json!(b));
    }
    Value::Object(doc)
}

/// `Z/n` (also `zn`, `Cn`), `Dn`, and products joined by `x`.
pub fn parse_finite_group(s: &str) -> Option<FiniteGroup> {
    let parts: Vec<&str> = s.split(['x', '×']).map(str::trim).collect();
    let mut groups = parts.iter().map(|p| parse_finite_factor(p));
    let first = groups.next()??;
    groups.try_fold(first, |acc, g| Some(acc.direct_product(&g?)))
}

fn parse_finite_factor(s: &str) -> Option<FiniteGroup> {
    let lower = s.to_ascii_lowercase();
    if let Some(n) = lower.strip_prefix("z/").or_else(|| lower.strip_prefix('z')).or_else(|| lower.strip_prefix('c')) {
        let n: usize = n.parse().ok()?;
        return (n >= 1).then(|| FiniteGroup::cyclic(n));
    }
    if let Some(n) = lower.strip_prefix('d') {
        let n: usize = n.trim_start_matches('_').parse().ok()?;
        return (n >= 1).then(|| FiniteGroup::dihedral(n));
    }
    None
}

/// `Z^m` (also `Zm`-free forms like `Z^2`) or `U3(Z)` / `heisenberg`.
pub fn parse_presented_group(s: &str) -> Option<PresentedGroup> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("heisenberg") || t == "U3(Z)" {
        return Some(PresentedGroup::Heisenberg);
    }
    t.strip_prefix("Z^").and_then(|m| m.parse().ok()).map(PresentedGroup::Lattice)
}

/// A group element written as a product of element names (or, for
/// presented groups, coordinate vectors) and generator powers, e.g.
/// `g*g`, `r^2*s`, `x*y^-1`, `(1,0)`.
pub fn parse_element<G: Group>(g: &G, word: &str, generators: &[(String, G::Elem)]) -> Option<G::Elem> {
    let word = word.trim();
    if let Some(e) = g.parse(word) {
        return Some(e);
    }
    let mut acc = g.identity();
    for token in word.split('*') {
        let token = token.trim();
        let (base, exp) = match token.rsplit_once('^') {
            Some((b, e)) if g.parse(token).is_none() => (b, e.parse::<i64>().ok()?),
            _ => (token, 1),
        };
        let elem = g
            .parse(base)
            .or_else(|| generators.iter().find(|(n, _)| n == base).map(|(_, e)| e.clone()))?;
        let step = if exp < 0 { g.inv(&elem) } else { elem };
        for _ in 0..exp.unsigned_abs() {
            acc = g.mul(&acc, &step);
        }
    }
    Some(acc)
}

fn presented_generators(g: &PresentedGroup) -> Vec<(String, Vec<i64>)> {
    let names: Vec<String> = match g {
        PresentedGroup::Heisenberg => vec!["x".into(), "y".into(), "z".into()],
        PresentedGroup::Lattice(m) => (1..=*m).map(|i| format!("x{i}")).collect(),
    };
    names.into_iter().zip(g.generators()).collect()
}

/// A twisting function over a finite or a presented group.
#[derive(Clone, Debug)]
pub enum AnyTwist {
    Finite(TwistingFunction<FiniteGroup>),
    Presented(TwistingFunction<PresentedGroup>),
}

fn group_descriptor(doc: &Value, origin: &str) -> Result<Result<FiniteGroup, PresentedGroup>, CliError> {
    let g = field(doc, "group", "document", origin)?;
    let kind = text_at(field(g, "kind", "group", origin)?, "group.kind", origin)?;
    match kind {
        "finite" => {
            if let Some(table) = g.get("table") {
                let rows: Vec<Vec<usize>> = serde_json::from_value(table.clone())
                    .map_err(|e| CliError::parse(origin, format!("group.table: {e}")))?;
                let names: Vec<String> = match g.get("elements") {
                    Some(e) => serde_json::from_value(e.clone())
                        .map_err(|e| CliError::parse(origin, format!("group.elements: {e}")))?,
                    None => (0..rows.len()).map(|i| i.to_string()).collect(),
                };
                let name = g.get("name").and_then(Value::as_str).unwrap_or("G").to_string();
                FiniteGroup::from_table(name, rows, names)
                    .map(Ok)
                    .map_err(|e| CliError::parse(origin, format!("group.table: {e}")))
            } else {
                let name = text_at(field(g, "name", "group", origin)?, "group.name", origin)?;
                parse_finite_group(name)
                    .map(Ok)
                    .ok_or_else(|| CliError::parse(origin, format!("group.name: unknown finite group {name}")))
            }
        }
        "presented" => {
            let name = text_at(field(g, "name", "group", origin)?, "group.name", origin)?;
            parse_presented_group(name)
                .map(Err)
                .ok_or_else(|| CliError::parse(origin, format!("group.name: unknown presented group {name}")))
        }
        other => Err(CliError::parse(origin, format!("group.kind: expected finite or presented, got {other}"))),
    }
}

fn labels_of<G: Group>(
    base: &Arc<SimplicialSet>,
    group: G,
    doc: &Value,
    generators: &[(String, G::Elem)],
    origin: &str,
) -> Result<TwistingFunction<G>, CliError> {
    let labels = field(doc, "labels", "document", origin)?
        .as_object()
        .ok_or_else(|| CliError::parse(origin, "labels: expected an object keyed by edge id"))?;
    let edges = if base.num_dims() > 1 { base.count(1) } else { 0 };
    let mut out = vec![group.identity(); edges];
    for (edge, word) in labels {
        let at = format!("labels.{edge}");
        let cell = base
            .lookup(edge)
            .filter(|c| c.dim == 1)
            .ok_or_else(|| CliError::parse(origin, format!("{at}: {edge} is not an edge of {}", base.name())))?;
        let word = text_at(word, &at, origin)?;
        out[cell.index] = parse_element(&group, word, generators)
            .ok_or_else(|| CliError::parse(origin, format!("{at}: {word} is not an element of {}", group.name())))?;
    }
    Ok(TwistingFunction::new(base.clone(), group, out)?)
}

pub fn parse_twist_str(base: &Arc<SimplicialSet>, text: &str, origin: &str) -> Result<AnyTwist, CliError> {
    let doc = json_of(text, origin)?;
    Ok(match group_descriptor(&doc, origin)? {
        Ok(g) => AnyTwist::Finite(labels_of(base, g, &doc, &[], origin)?),
        Err(g) => {
            let gens = presented_generators(&g);
            AnyTwist::Presented(labels_of(base, g, &doc, &gens, origin)?)
        }
    })
}

pub fn parse_twist(base: &Arc<SimplicialSet>, path: &Path) -> Result<AnyTwist, CliError> {
    parse_twist_str(base, &read_text(path)?, &path.display().to_string())
}

/// `z` or `zN`.
pub fn parse_coeff(s: &str) -> Option<Coeff> {
    let lower = s.trim().to_ascii_lowercase();
    let rest = lower.strip_prefix('z')?;
    let rest = rest.strip_prefix('/').unwrap_or(rest);
    if rest.is_empty() {
        return Some(Coeff::Z);
    }
    match rest.parse::<u64>().ok()? {
        0 => None,
        n => Some(Coeff::Mod(n)),
    }
}

/// Cochain document before it is tied to a group.
#[derive(Clone, Debug)]
pub struct CocycleFile {
    pub degree: usize,
    pub coeff: Coeff,
    pub body: CocycleBody,
}

#[derive(Clone, Debug)]
pub enum CocycleBody {
    /// `g^i ↦ i` on a cyclic group.
    Identity,
    /// `(g^a, g^b) ↦ 1` if `a + b ≥ n`, on `Z/n`.
    Carry,
    /// `v ↦ v_i` on a presented group.
    Coordinate(usize),
    /// Tuples (comma-separated element words) to values.
    Table(Vec<(String, i64)>),
}

pub fn parse_cocycle_str(text: &str, origin: &str) -> Result<CocycleFile, CliError> {
    let doc = json_of(text, origin)?;
    let degree = field(&doc, "degree", "document", origin)?
        .as_u64()
        .ok_or_else(|| CliError::parse(origin, "degree: expected a non-negative integer"))? as usize;
    let coeff = match doc.get("coeff") {
        None => Coeff::Z,
        Some(c) => {
            let s = text_at(c, "coeff", origin)?;
            parse_coeff(s).ok_or_else(|| CliError::parse(origin, format!("coeff: expected z or zN, got {s}")))?
        }
    };
    let body = match (doc.get("rule"), doc.get("values")) {
        (Some(r), None) => {
            let r = text_at(r, "rule", origin)?;
            match r {
                "identity" => CocycleBody::Identity,
                "carry" => CocycleBody::Carry,
                _ => match r.strip_prefix("coordinate:").and_then(|i| i.parse().ok()) {
                    Some(i) => CocycleBody::Coordinate(i),
                    None => return Err(CliError::parse(origin, format!("rule: unknown rule {r}"))),
                },
            }
        }
        (None, Some(v)) => {
            let map = v
                .as_object()
                .ok_or_else(|| CliError::parse(origin, "values: expected an object keyed by tuple"))?;
            let mut entries = Vec::new();
            for (tuple, value) in map {
                let value = value
                    .as_i64()
                    .ok_or_else(|| CliError::parse(origin, format!("values.{tuple}: expected an integer")))?;
                entries.push((tuple.clone(), value));
            }
            CocycleBody::Table(entries)
        }
        _ => return Err(CliError::parse(origin, "exactly one of \"rule\" and \"values\" is required")),
    };
    Ok(CocycleFile { degree, coeff, body })
}

pub fn parse_cocycle(path: &Path) -> Result<CocycleFile, CliError> {
    parse_cocycle_str(&read_text(path)?, &path.display().to_string())
}

fn table_cochain<G: Group>(
    cf: &CocycleFile,
    group: &G,
    entries: &[(String, i64)],
    generators: &[(String, G::Elem)],
) -> Result<GroupCochain<G>, CliError> {
    let mut rows = Vec::new();
    for (tuple, v) in entries {
        let inner = tuple.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = if inner.trim().is_empty() {
            Vec::new()
        } else if inner.contains('|') {
            inner.split('|').collect()
        } else {
            split_top_level(inner)
        };
        let elems = parts
            .iter()
            .map(|w| parse_element(group, w, generators))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CliError::Input(format!("cocycle tuple {tuple} is not over {}", group.name())))?;
        if elems.len() != cf.degree {
            return Err(CliError::Input(format!(
                "cocycle tuple {tuple} has length {}, expected {}",
                elems.len(),
                cf.degree
            )));
        }
        rows.push((elems, *v));
    }
    Ok(GroupCochain::from_table(group.clone(), cf.degree, cf.coeff, rows))
}

/// Splits on commas outside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn finite_cochain(cf: &CocycleFile, group: &FiniteGroup) -> Result<GroupCochain<FiniteGroup>, CliError> {
    let n = group.size();
    let cyclic = || {
        (group == &FiniteGroup::cyclic(n))
            .then_some(())
            .ok_or_else(|| CliError::Input(format!("rule needs a cyclic group Z/n, got {}", group.name())))
    };
    match &cf.body {
        CocycleBody::Identity => {
            cyclic()?;
            if cf.degree != 1 {
                return Err(CliError::Input("the identity rule has degree 1".into()));
            }
            Ok(GroupCochain::identity_of_cyclic(group.clone(), cf.coeff))
        }
        CocycleBody::Carry => {
            cyclic()?;
            if cf.degree != 2 {
                return Err(CliError::Input("the carry rule has degree 2".into()));
            }
            Ok(GroupCochain::from_rule(group.clone(), 2, cf.coeff, move |t: &[usize]| {
                i64::from(t[0] + t[1] >= n)
            }))
        }
        CocycleBody::Coordinate(_) => Err(CliError::Input("coordinate rules need a presented group".into())),
        CocycleBody::Table(entries) => table_cochain(cf, group, entries, &[]),
    }
}

pub fn presented_cochain(
    cf: &CocycleFile,
    group: &PresentedGroup,
) -> Result<GroupCochain<PresentedGroup>, CliError> {
    match &cf.body {
        CocycleBody::Coordinate(i) => {
            let i = *i;
            if i >= group.rank() || cf.degree != 1 {
                return Err(CliError::Input(format!(
                    "coordinate:{i} needs degree 1 and a coordinate below {}",
                    group.rank()
                )));
            }
            Ok(GroupCochain::from_rule(group.clone(), 1, cf.coeff, move |t: &[Vec<i64>]| t[0][i]))
        }
        CocycleBody::Table(entries) => table_cochain(cf, group, entries, &presented_generators(group)),
        _ => Err(CliError::Input("identity and carry rules need a finite cyclic group".into())),
    }
}

fn complex_ref(v: &Value, key: &str, dir: &Path, origin: &str) -> Result<Arc<SimplicialSet>, CliError> {
    let v = field(v, key, "document", origin)?;
    let file = match v {
        Value::String(p) => {
            let path: PathBuf = dir.join(p);
            parse_complex(&path)?
        }
        other => complex_from_value(other, &format!("{origin} ({key})"))?,
    };
    Ok(Arc::new(file.presentation.build()?))
}

/// `{"source": complex or path, "target": complex or path, "images":
/// {id: {"base": id, "degens": [...]}}}`; paths are relative to the file.
pub fn parse_map_str(text: &str, dir: &Path, origin: &str) -> Result<SimplicialMap, CliError> {
    let doc = json_of(text, origin)?;
    let source = complex_ref(&doc, "source", dir, origin)?;
    let target = complex_ref(&doc, "target", dir, origin)?;
    let images = field(&doc, "images", "document", origin)?
        .as_object()
        .ok_or_else(|| CliError::parse(origin, "images: expected an object keyed by source id"))?;
    let mut assignment = Vec::new();
    for (id, image) in images {
        let at = format!("images.{id}");
        let f = match image {
            Value::String(s) => FaceRef::cell(s.as_str()),
            other => face_ref(other, &at, origin)?,
        };
        assignment.push((id.clone(), f));
    }
    let refs: Vec<(&str, &str, Vec<usize>)> = assignment
        .iter()
        .map(|(id, f)| (id.as_str(), f.base.as_str(), f.degens.clone()))
        .collect();
    Ok(SimplicialMap::from_names(source, target, &refs)?)
}

pub fn parse_map(path: &Path) -> Result<SimplicialMap, CliError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    parse_map_str(&read_text(path)?, dir, &path.display().to_string())
}
