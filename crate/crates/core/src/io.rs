//! JSON documents for groups, complexes, maps and suites. Parse errors carry
//! a path into the tree; the resolver turns documents into library objects.
//!
//! Keys are emitted sorted; a value is written on one line when its compact
//! form is short, otherwise its children go on separate lines.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{Map, Value};
use thiserror::Error;

use crate::complexes::{CellComplex, CellMap, CellSpec, ComplexError, RawEntry};
use crate::group::{FiniteGroup, GroupError, Lattice, DEFAULT_GROUP_CAP};
use crate::rings::TomDieckElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("{file}: cannot read: {message}")]
    Read { file: String, message: String },
    #[error("{file}: invalid JSON: {message}")]
    Json { file: String, message: String },
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unresolved reference at {path}: {reference}")]
    UnresolvedReference { path: String, reference: String },
    #[error("non-canonical subgroup at {path}: {given:?}, write {suggestion:?}")]
    NonCanonicalSubgroup {
        path: String,
        given: Vec<usize>,
        suggestion: Vec<usize>,
    },
    #[error("invalid group: {0}")]
    Group(#[from] GroupError),
    #[error("invalid complex or map: {0}")]
    Complex(#[from] ComplexError),
    #[error("expected a {expected} document, found {found}")]
    WrongKind {
        expected: &'static str,
        found: String,
    },
}

// ---------------------------------------------------------------- documents

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDoc {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
    /// Class labels keyed by the element list of any member subgroup.
    pub labels: Vec<(Vec<usize>, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ref<T> {
    Path(String),
    Inline(Box<T>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDoc {
    pub id: String,
    pub dim: usize,
    pub cell_type: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDoc {
    pub from: String,
    pub to: String,
    /// `(coeff, rep)` pairs.
    pub terms: Vec<(i64, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDoc {
    pub group: Ref<GroupDoc>,
    pub cells: Vec<CellDoc>,
    pub differential: Vec<EntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDoc {
    pub domain: Ref<ComplexDoc>,
    pub codomain: Ref<ComplexDoc>,
    pub blocks: Vec<EntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteDoc {
    pub maps: Vec<Ref<MapDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Group(GroupDoc),
    Complex(ComplexDoc),
    Map(MapDoc),
    Suite(SuiteDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Complex(_) => "complex",
            Document::Map(_) => "map",
            Document::Suite(_) => "suite",
        }
    }
}

// ------------------------------------------------------------------ parsing

fn schema(path: &str, message: impl Into<String>) -> IoError {
    IoError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.as_object()
        .ok_or_else(|| schema(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array()
        .ok_or_else(|| schema(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, IoError> {
    v.as_str().ok_or_else(|| schema(path, "expected a string"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, IoError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn as_i64(v: &Value, path: &str) -> Result<i64, IoError> {
    v.as_i64()
        .ok_or_else(|| schema(path, "expected an integer"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, IoError> {
    obj.get(key)
        .ok_or_else(|| schema(path, format!("missing field {key:?}")))
}

fn only_keys(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), IoError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(&format!("{path}.{k}"), "unknown field")),
        None => Ok(()),
    }
}

fn usize_list(v: &Value, path: &str) -> Result<Vec<usize>, IoError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_usize(x, &format!("{path}[{i}]")))
        .collect()
}

fn check_kind(obj: &Map<String, Value>, kind: &str, path: &str) -> Result<(), IoError> {
    let k = as_str(field(obj, "kind", path)?, &format!("{path}.kind"))?;
    if k != kind {
        return Err(schema(
            &format!("{path}.kind"),
            format!("expected {kind:?}, found {k:?}"),
        ));
    }
    Ok(())
}

fn parse_group(v: &Value, path: &str) -> Result<GroupDoc, IoError> {
    let obj = as_object(v, path)?;
    only_keys(obj, &["kind", "names", "table", "labels"], path)?;
    check_kind(obj, "group", path)?;
    let npath = format!("{path}.names");
    let names = as_array(field(obj, "names", path)?, &npath)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_str(x, &format!("{npath}[{i}]")).map(str::to_string))
        .collect::<Result<Vec<_>, _>>()?;
    let tpath = format!("{path}.table");
    let table = as_array(field(obj, "table", path)?, &tpath)?
        .iter()
        .enumerate()
        .map(|(i, row)| usize_list(row, &format!("{tpath}[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut labels = Vec::new();
    if let Some(l) = obj.get("labels") {
        let lpath = format!("{path}.labels");
        for (i, item) in as_array(l, &lpath)?.iter().enumerate() {
            let ipath = format!("{lpath}[{i}]");
            let o = as_object(item, &ipath)?;
            only_keys(o, &["subgroup", "label"], &ipath)?;
            let sub = usize_list(field(o, "subgroup", &ipath)?, &format!("{ipath}.subgroup"))?;
            let label = as_str(field(o, "label", &ipath)?, &format!("{ipath}.label"))?;
            labels.push((sub, label.to_string()));
        }
    }
    Ok(GroupDoc {
        names,
        table,
        labels,
    })
}

fn parse_ref<T>(
    v: &Value,
    path: &str,
    inline: impl Fn(&Value, &str) -> Result<T, IoError>,
) -> Result<Ref<T>, IoError> {
    match v {
        Value::String(s) => Ok(Ref::Path(s.clone())),
        Value::Object(_) => Ok(Ref::Inline(Box::new(inline(v, path)?))),
        _ => Err(schema(path, "expected a file path or an inline document")),
    }
}

fn parse_entries(v: &Value, path: &str) -> Result<Vec<EntryDoc>, IoError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let epath = format!("{path}[{i}]");
            let o = as_object(e, &epath)?;
            only_keys(o, &["from", "to", "terms"], &epath)?;
            let from = as_str(field(o, "from", &epath)?, &format!("{epath}.from"))?.to_string();
            let to = as_str(field(o, "to", &epath)?, &format!("{epath}.to"))?.to_string();
            let tpath = format!("{epath}.terms");
            let terms = as_array(field(o, "terms", &epath)?, &tpath)?
                .iter()
                .enumerate()
                .map(|(j, t)| {
                    let p = format!("{tpath}[{j}]");
                    let to = as_object(t, &p)?;
                    only_keys(to, &["coeff", "rep"], &p)?;
                    Ok((
                        as_i64(field(to, "coeff", &p)?, &format!("{p}.coeff"))?,
                        as_usize(field(to, "rep", &p)?, &format!("{p}.rep"))?,
                    ))
                })
                .collect::<Result<Vec<_>, IoError>>()?;
            Ok(EntryDoc { from, to, terms })
        })
        .collect()
}

fn parse_complex(v: &Value, path: &str) -> Result<ComplexDoc, IoError> {
    let obj = as_object(v, path)?;
    only_keys(obj, &["kind", "group", "cells", "differential"], path)?;
    check_kind(obj, "complex", path)?;
    let group = parse_ref(
        field(obj, "group", path)?,
        &format!("{path}.group"),
        parse_group,
    )?;
    let cpath = format!("{path}.cells");
    let cells = as_array(field(obj, "cells", path)?, &cpath)?
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let p = format!("{cpath}[{i}]");
            let o = as_object(c, &p)?;
            only_keys(o, &["id", "dim", "type"], &p)?;
            Ok(CellDoc {
                id: as_str(field(o, "id", &p)?, &format!("{p}.id"))?.to_string(),
                dim: as_usize(field(o, "dim", &p)?, &format!("{p}.dim"))?,
                cell_type: usize_list(field(o, "type", &p)?, &format!("{p}.type"))?,
            })
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    let differential = match obj.get("differential") {
        Some(d) => parse_entries(d, &format!("{path}.differential"))?,
        None => Vec::new(),
    };
    Ok(ComplexDoc {
        group,
        cells,
        differential,
    })
}

fn parse_map(v: &Value, path: &str) -> Result<MapDoc, IoError> {
    let obj = as_object(v, path)?;
    only_keys(obj, &["kind", "domain", "codomain", "blocks"], path)?;
    check_kind(obj, "map", path)?;
    let domain = parse_ref(
        field(obj, "domain", path)?,
        &format!("{path}.domain"),
        parse_complex,
    )?;
    let codomain = match obj.get("codomain") {
        Some(c) => parse_ref(c, &format!("{path}.codomain"), parse_complex)?,
        None => domain.clone(),
    };
    let blocks = match obj.get("blocks") {
        Some(b) => parse_entries(b, &format!("{path}.blocks"))?,
        None => Vec::new(),
    };
    Ok(MapDoc {
        domain,
        codomain,
        blocks,
    })
}

fn parse_suite(v: &Value, path: &str) -> Result<SuiteDoc, IoError> {
    let obj = as_object(v, path)?;
    only_keys(obj, &["kind", "maps"], path)?;
    check_kind(obj, "suite", path)?;
    let mpath = format!("{path}.maps");
    let maps = as_array(field(obj, "maps", path)?, &mpath)?
        .iter()
        .enumerate()
        .map(|(i, m)| parse_ref(m, &format!("{mpath}[{i}]"), parse_map))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuiteDoc { maps })
}

pub fn parse_value(v: &Value) -> Result<Document, IoError> {
    let obj = as_object(v, "$")?;
    let kind = as_str(field(obj, "kind", "$")?, "$.kind")?;
    match kind {
        "group" => parse_group(v, "$").map(Document::Group),
        "complex" => parse_complex(v, "$").map(Document::Complex),
        "map" => parse_map(v, "$").map(Document::Map),
        "suite" => parse_suite(v, "$").map(Document::Suite),
        other => Err(schema("$.kind", format!("unknown kind {other:?}"))),
    }
}

/// Parses document text. `file` is only used in error messages.
pub fn parse(text: &str, file: &str) -> Result<Document, IoError> {
    let v: Value = serde_json::from_str(text).map_err(|e| IoError::Json {
        file: file.to_string(),
        message: e.to_string(),
    })?;
    parse_value(&v)
}

// ----------------------------------------------------------------- emitting

fn group_value(g: &GroupDoc) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), "group".into());
    m.insert("names".into(), g.names.clone().into());
    m.insert("table".into(), g.table.clone().into());
    if !g.labels.is_empty() {
        let labels = g
            .labels
            .iter()
            .map(|(s, l)| {
                let mut o = Map::new();
                o.insert("label".into(), l.clone().into());
                o.insert("subgroup".into(), s.clone().into());
                Value::Object(o)
            })
            .collect::<Vec<_>>();
        m.insert("labels".into(), labels.into());
    }
    Value::Object(m)
}

fn ref_value<T>(r: &Ref<T>, inline: impl Fn(&T) -> Value) -> Value {
    match r {
        Ref::Path(p) => p.clone().into(),
        Ref::Inline(d) => inline(d),
    }
}

fn entries_value(entries: &[EntryDoc]) -> Value {
    entries
        .iter()
        .map(|e| {
            let mut o = Map::new();
            o.insert("from".into(), e.from.clone().into());
            o.insert("to".into(), e.to.clone().into());
            let terms = e
                .terms
                .iter()
                .map(|&(c, r)| {
                    let mut t = Map::new();
                    t.insert("coeff".into(), c.into());
                    t.insert("rep".into(), r.into());
                    Value::Object(t)
                })
                .collect::<Vec<_>>();
            o.insert("terms".into(), terms.into());
            Value::Object(o)
        })
        .collect::<Vec<_>>()
        .into()
}

fn complex_value(c: &ComplexDoc) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), "complex".into());
    m.insert("group".into(), ref_value(&c.group, group_value));
    let cells = c
        .cells
        .iter()
        .map(|cell| {
            let mut o = Map::new();
            o.insert("id".into(), cell.id.clone().into());
            o.insert("dim".into(), cell.dim.into());
            o.insert("type".into(), cell.cell_type.clone().into());
            Value::Object(o)
        })
        .collect::<Vec<_>>();
    m.insert("cells".into(), cells.into());
    m.insert("differential".into(), entries_value(&c.differential));
    Value::Object(m)
}

fn map_value(d: &MapDoc) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), "map".into());
    m.insert("domain".into(), ref_value(&d.domain, complex_value));
    m.insert("codomain".into(), ref_value(&d.codomain, complex_value));
    m.insert("blocks".into(), entries_value(&d.blocks));
    Value::Object(m)
}

pub fn to_value(doc: &Document) -> Value {
    match doc {
        Document::Group(g) => group_value(g),
        Document::Complex(c) => complex_value(c),
        Document::Map(m) => map_value(m),
        Document::Suite(s) => {
            let mut m = Map::new();
            m.insert("kind".into(), "suite".into());
            m.insert(
                "maps".into(),
                s.maps
                    .iter()
                    .map(|r| ref_value(r, map_value))
                    .collect::<Vec<_>>()
                    .into(),
            );
            Value::Object(m)
        }
    }
}

const INLINE_WIDTH: usize = 100;

fn compact(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("[{}]", a.iter().map(compact).collect::<Vec<_>>().join(", ")),
        Value::Object(o) => format!(
            "{{{}}}",
            o.iter()
                .map(|(k, x)| format!("{}: {}", Value::String(k.clone()), compact(x)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        scalar => scalar.to_string(),
    }
}

fn pretty(v: &Value, indent: usize, out: &mut String) {
    let flat = compact(v);
    let empty = matches!(v, Value::Array(a) if a.is_empty())
        || matches!(v, Value::Object(o) if o.is_empty());
    if empty
        || !matches!(v, Value::Array(_) | Value::Object(_))
        || (indent > 0 && flat.len() + indent <= INLINE_WIDTH)
    {
        out.push_str(&flat);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                pretty(x, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                pretty(x, indent + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        _ => unreachable!(),
    }
}

/// Canonical text: sorted keys, two-space indentation, short values inline,
/// trailing newline.
pub fn emit(doc: &Document) -> String {
    let mut out = String::new();
    pretty(&to_value(doc), 0, &mut out);
    out.push('\n');
    out
}

fn canonical_entries(entries: &[EntryDoc]) -> Vec<EntryDoc> {
    let mut merged: BTreeMap<(String, String), BTreeMap<usize, i64>> = BTreeMap::new();
    for e in entries {
        let slot = merged.entry((e.from.clone(), e.to.clone())).or_default();
        for &(c, r) in &e.terms {
            *slot.entry(r).or_insert(0) += c;
        }
    }
    merged
        .into_iter()
        .filter_map(|((from, to), terms)| {
            let terms: Vec<(i64, usize)> = terms
                .into_iter()
                .filter(|&(_, c)| c != 0)
                .map(|(r, c)| (c, r))
                .collect();
            (!terms.is_empty()).then_some(EntryDoc { from, to, terms })
        })
        .collect()
}

fn canonical_complex(c: &ComplexDoc) -> ComplexDoc {
    let mut cells = c.cells.clone();
    cells.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
    ComplexDoc {
        group: c.group.clone(),
        cells,
        differential: canonical_entries(&c.differential),
    }
}

fn canonical_ref<T>(r: &Ref<T>, f: impl Fn(&T) -> T) -> Ref<T> {
    match r {
        Ref::Path(p) => Ref::Path(p.clone()),
        Ref::Inline(d) => Ref::Inline(Box::new(f(d))),
    }
}

fn canonical_map(m: &MapDoc) -> MapDoc {
    MapDoc {
        domain: canonical_ref(&m.domain, canonical_complex),
        codomain: canonical_ref(&m.codomain, canonical_complex),
        blocks: canonical_entries(&m.blocks),
    }
}

/// Sorts cells by `(dim, id)`, entries by `(from, to)` and terms by rep,
/// merging repeated terms and dropping zeros. Element indices are not
/// rewritten (that needs the group; see [`Resolver`]).
pub fn canonicalize(doc: &Document) -> Document {
    match doc {
        Document::Group(g) => {
            let mut g = g.clone();
            g.labels.sort();
            Document::Group(g)
        }
        Document::Complex(c) => Document::Complex(canonical_complex(c)),
        Document::Map(m) => Document::Map(canonical_map(m)),
        Document::Suite(s) => Document::Suite(SuiteDoc {
            maps: s
                .maps
                .iter()
                .map(|r| canonical_ref(r, canonical_map))
                .collect(),
        }),
    }
}

// -------------------------------------------------------- objects to docs

pub fn group_doc(lattice: &Lattice) -> GroupDoc {
    let g = lattice.group();
    GroupDoc {
        names: g.names().to_vec(),
        table: g.table_rows(),
        labels: Vec::new(),
    }
}

fn entry_docs(
    m: &crate::complexes::BlockMatrix,
    from: &CellComplex,
    to: &CellComplex,
) -> Vec<EntryDoc> {
    let mut out: Vec<EntryDoc> = m
        .entries()
        .map(|(r, c, s)| EntryDoc {
            from: from.cell(c).id.clone(),
            to: to.cell(r).id.clone(),
            terms: s.terms().map(|(g, k)| (k, g)).collect(),
        })
        .collect();
    out.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
    out
}

/// A self-contained complex document (inline group, representative types).
pub fn complex_doc(c: &CellComplex) -> ComplexDoc {
    let lat = c.lattice();
    let mut cells: Vec<CellDoc> = c
        .cells()
        .iter()
        .map(|cell| CellDoc {
            id: cell.id.clone(),
            dim: cell.dim,
            cell_type: lat.subgroup(cell.cell_type).elements().to_vec(),
        })
        .collect();
    cells.sort_by(|a, b| (a.dim, &a.id).cmp(&(b.dim, &b.id)));
    ComplexDoc {
        group: Ref::Inline(Box::new(group_doc(lat))),
        cells,
        differential: entry_docs(c.differential(), c, c),
    }
}

/// A self-contained map document.
pub fn map_doc(f: &CellMap) -> MapDoc {
    let domain = Ref::Inline(Box::new(complex_doc(f.domain())));
    let codomain = if f.is_endo() {
        domain.clone()
    } else {
        Ref::Inline(Box::new(complex_doc(f.codomain())))
    };
    MapDoc {
        domain,
        codomain,
        blocks: entry_docs(f.blocks(), f.domain(), f.codomain()),
    }
}

// ---------------------------------------------------------------- resolving

/// Loads documents into validated objects, resolving file references
/// relative to the referring file and caching every file it loads.
pub struct Resolver {
    cap: usize,
    lattices: HashMap<PathBuf, Arc<Lattice>>,
    complexes: HashMap<PathBuf, Arc<CellComplex>>,
}

impl Default for Resolver {
    fn default() -> Self {
        Self::new(DEFAULT_GROUP_CAP)
    }
}

/// Group-order cap from `EQUILEF_GROUP_CAP`, or the default.
pub fn group_cap_from_env() -> usize {
    std::env::var("EQUILEF_GROUP_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_GROUP_CAP)
}

pub fn read_document(path: &Path) -> Result<Document, IoError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read {
        file: file.clone(),
        message: e.to_string(),
    })?;
    parse(&text, &file)
}

/// Reads a document named by a reference; an unreadable file is reported
/// as unresolved at `at`, or as a read error for top-level files.
fn read_referenced(full: &Path, at: Option<&str>) -> Result<Document, IoError> {
    match (read_document(full), at) {
        (Err(IoError::Read { file, .. }), Some(path)) => Err(IoError::UnresolvedReference {
            path: path.to_string(),
            reference: format!("file {file:?}"),
        }),
        (r, _) => r,
    }
}

fn base_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

impl Resolver {
    pub fn new(cap: usize) -> Self {
        Self {
            cap,
            lattices: HashMap::new(),
            complexes: HashMap::new(),
        }
    }

    pub fn group(&mut self, doc: &GroupDoc) -> Result<Arc<Lattice>, IoError> {
        let g = FiniteGroup::from_table(doc.table.clone(), doc.names.clone())?;
        let mut lat = Lattice::with_cap(Arc::new(g), self.cap)?;
        for (i, (elems, label)) in doc.labels.iter().enumerate() {
            let path = format!("$.labels[{i}].subgroup");
            let id = self.subgroup_id(&lat, elems, &path)?;
            let class = lat.class_of(id);
            lat.set_label(class, label.clone());
        }
        Ok(Arc::new(lat))
    }

    fn subgroup_id(
        &self,
        lat: &Lattice,
        elems: &[usize],
        path: &str,
    ) -> Result<crate::group::SubgroupId, IoError> {
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&x| x >= lat.group().order()) {
            return Err(schema(path, format!("element {bad} is out of range")));
        }
        match lat.id_of_elements(&sorted) {
            Some(id) if sorted == elems => Ok(id),
            Some(_) => Err(IoError::NonCanonicalSubgroup {
                path: path.to_string(),
                given: elems.to_vec(),
                suggestion: sorted,
            }),
            None => Err(IoError::UnresolvedReference {
                path: path.to_string(),
                reference: format!("{elems:?} is not a subgroup"),
            }),
        }
    }

    fn group_ref(
        &mut self,
        r: &Ref<GroupDoc>,
        base: &Path,
        at: Option<&str>,
    ) -> Result<Arc<Lattice>, IoError> {
        match r {
            Ref::Inline(d) => self.group(d),
            Ref::Path(p) => {
                let full = base.join(p);
                if let Some(l) = self.lattices.get(&full) {
                    return Ok(l.clone());
                }
                let lat = match read_referenced(&full, at)? {
                    Document::Group(g) => self.group(&g)?,
                    other => {
                        return Err(IoError::WrongKind {
                            expected: "group",
                            found: other.kind().into(),
                        })
                    }
                };
                self.lattices.insert(full, lat.clone());
                Ok(lat)
            }
        }
    }

    fn entries(
        lat: &Lattice,
        entries: &[EntryDoc],
        from: &dyn Fn(&str) -> Option<usize>,
        to: &dyn Fn(&str) -> Option<usize>,
        path: &str,
    ) -> Result<Vec<RawEntry>, IoError> {
        entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let p = format!("{path}[{i}]");
                let unresolved = |field: &str, id: &str| IoError::UnresolvedReference {
                    path: format!("{p}.{field}"),
                    reference: format!("cell {id:?}"),
                };
                let f = from(&e.from).ok_or_else(|| unresolved("from", &e.from))?;
                let t = to(&e.to).ok_or_else(|| unresolved("to", &e.to))?;
                for (j, &(_, rep)) in e.terms.iter().enumerate() {
                    if rep >= lat.group().order() {
                        return Err(schema(
                            &format!("{p}.terms[{j}].rep"),
                            "element out of range",
                        ));
                    }
                }
                Ok(RawEntry {
                    from: f,
                    to: t,
                    terms: e.terms.iter().map(|&(c, r)| (r, c)).collect(),
                })
            })
            .collect()
    }

    /// Builds a complex; `base` resolves a group path.
    pub fn complex(&mut self, doc: &ComplexDoc, base: &Path) -> Result<Arc<CellComplex>, IoError> {
        let lat = self.group_ref(&doc.group, base, Some("$.group"))?;
        let mut specs = Vec::with_capacity(doc.cells.len());
        for (i, c) in doc.cells.iter().enumerate() {
            let id = self.subgroup_id(&lat, &c.cell_type, &format!("$.cells[{i}].type"))?;
            specs.push(CellSpec::new(c.id.clone(), c.dim, id));
        }
        let index: HashMap<&str, usize> = doc
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.as_str(), i))
            .collect();
        let lookup = |id: &str| index.get(id).copied();
        let raw = Self::entries(&lat, &doc.differential, &lookup, &lookup, "$.differential")?;
        Ok(Arc::new(CellComplex::new(lat, specs, &raw)?))
    }

    fn complex_ref(
        &mut self,
        r: &Ref<ComplexDoc>,
        base: &Path,
        at: Option<&str>,
    ) -> Result<Arc<CellComplex>, IoError> {
        match r {
            Ref::Inline(d) => self.complex(d, base),
            Ref::Path(p) => {
                let full = base.join(p);
                if let Some(c) = self.complexes.get(&full) {
                    return Ok(c.clone());
                }
                let c = match read_referenced(&full, at)? {
                    Document::Complex(d) => self.complex(&d, &base_of(&full))?,
                    other => {
                        return Err(IoError::WrongKind {
                            expected: "complex",
                            found: other.kind().into(),
                        })
                    }
                };
                self.complexes.insert(full, c.clone());
                Ok(c)
            }
        }
    }

    pub fn map(&mut self, doc: &MapDoc, base: &Path) -> Result<CellMap, IoError> {
        let domain = self.complex_ref(&doc.domain, base, Some("$.domain"))?;
        let codomain = if doc.codomain == doc.domain {
            domain.clone()
        } else {
            self.complex_ref(&doc.codomain, base, Some("$.codomain"))?
        };
        let raw = Self::entries(
            domain.lattice(),
            &doc.blocks,
            &|id| domain.index_of(id),
            &|id| codomain.index_of(id),
            "$.blocks",
        )?;
        Ok(CellMap::new(domain, codomain, &raw)?)
    }

    /// Every map of a suite, in order.
    pub fn suite(&mut self, doc: &SuiteDoc, base: &Path) -> Result<Vec<CellMap>, IoError> {
        doc.maps
            .iter()
            .enumerate()
            .map(|(i, r)| match r {
                Ref::Inline(m) => self.map(m, base),
                Ref::Path(p) => {
                    let full = base.join(p);
                    match read_referenced(&full, Some(&format!("$.maps[{i}]")))? {
                        Document::Map(m) => self.map(&m, &base_of(&full)),
                        other => Err(IoError::WrongKind {
                            expected: "map",
                            found: other.kind().into(),
                        }),
                    }
                }
            })
            .collect()
    }

    pub fn load_complex(&mut self, path: &Path) -> Result<Arc<CellComplex>, IoError> {
        self.complex_ref(&Ref::Path(path.display().to_string()), Path::new(""), None)
    }

    /// A map file, or every map of a suite file.
    pub fn load_maps(&mut self, path: &Path) -> Result<Vec<CellMap>, IoError> {
        match read_document(path)? {
            Document::Map(m) => Ok(vec![self.map(&m, &base_of(path))?]),
            Document::Suite(s) => self.suite(&s, &base_of(path)),
            other => Err(IoError::WrongKind {
                expected: "map",
                found: other.kind().into(),
            }),
        }
    }

    pub fn load_group(&mut self, path: &Path) -> Result<Arc<Lattice>, IoError> {
        self.group_ref(&Ref::Path(path.display().to_string()), Path::new(""), None)
    }
}

// ------------------------------------------------------ tom Dieck grammar

/// Parses the printed form of a tom Dieck element: `0`, or terms
/// `{abs}*({label})` joined by ` + ` / ` - `, with an optional leading `-`.
pub fn parse_tom_dieck(lattice: &Arc<Lattice>, s: &str) -> Result<TomDieckElement, IoError> {
    let bad = |m: &str| schema("$", format!("{m} in {s:?}"));
    let s = s.trim();
    if s == "0" {
        return Ok(TomDieckElement::zero(lattice.clone()));
    }
    let mut out = Vec::new();
    let (mut rest, mut negative) = match s.strip_prefix('-') {
        Some(r) => (r, true),
        None => (s, false),
    };
    loop {
        let (num, after) = rest
            .split_once("*(")
            .ok_or_else(|| bad("expected {n}*({label})"))?;
        let k: i64 = num.parse().map_err(|_| bad("bad coefficient"))?;
        let close = after.find(')').ok_or_else(|| bad("unclosed label"))?;
        let label = &after[..close];
        let class = lattice
            .class_by_label(label)
            .ok_or_else(|| IoError::UnresolvedReference {
                path: "$".into(),
                reference: format!("class label {label:?}"),
            })?;
        out.push((class, if negative { -k } else { k }));
        rest = &after[close + 1..];
        if rest.is_empty() {
            break;
        }
        if let Some(r) = rest.strip_prefix(" + ") {
            rest = r;
            negative = false;
        } else if let Some(r) = rest.strip_prefix(" - ") {
            rest = r;
            negative = true;
        } else {
            return Err(bad("expected ' + ' or ' - '"));
        }
    }
    Ok(TomDieckElement::from_coeffs(lattice.clone(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric3};

    const CIRCLE: &str = r#"{
  "cells": [{"dim": 0, "id": "v", "type": [0, 1]}, {"dim": 1, "id": "a", "type": [0]}],
  "differential": [{"from": "a", "terms": [{"coeff": 1, "rep": 0}], "to": "v"}],
  "group": {"kind": "group", "names": ["e", "a"], "table": [[0, 1], [1, 0]]},
  "kind": "complex"
}
"#;

    #[test]
    fn complex_round_trip() {
        let doc = parse(CIRCLE, "circle").unwrap();
        assert_eq!(emit(&doc), CIRCLE);
        let Document::Complex(c) = &doc else { panic!() };
        let cx = Resolver::default().complex(c, Path::new("")).unwrap();
        assert_eq!(cx.num_cells(), 2);
        crate::complexes::validate_complex(&cx).unwrap();
        assert_eq!(Document::Complex(complex_doc(&cx)), canonicalize(&doc));
    }

    #[test]
    fn schema_errors_carry_paths() {
        let text = CIRCLE.replace(r#""dim": 1"#, r#""dim": -1"#);
        assert_eq!(
            parse(&text, "x").unwrap_err(),
            IoError::Schema {
                path: "$.cells[1].dim".into(),
                message: "expected a non-negative integer".into()
            }
        );
        let text = CIRCLE.replace(r#""kind": "complex""#, r#""kind": "blob""#);
        assert!(matches!(parse(&text, "x"), Err(IoError::Schema { .. })));
    }

    #[test]
    fn references_must_resolve() {
        let text = CIRCLE.replace(r#""to": "v""#, r#""to": "w""#);
        let Document::Complex(c) = parse(&text, "x").unwrap() else {
            panic!()
        };
        assert_eq!(
            Resolver::default().complex(&c, Path::new("")).unwrap_err(),
            IoError::UnresolvedReference {
                path: "$.differential[0].to".into(),
                reference: "cell \"w\"".into()
            }
        );
        let text = CIRCLE.replace("[0, 1]}", "[1, 0]}");
        let Document::Complex(c) = parse(&text, "x").unwrap() else {
            panic!()
        };
        assert_eq!(
            Resolver::default().complex(&c, Path::new("")).unwrap_err(),
            IoError::NonCanonicalSubgroup {
                path: "$.cells[0].type".into(),
                given: vec![1, 0],
                suggestion: vec![0, 1]
            }
        );
    }

    #[test]
    fn empty_complex() {
        let text = r#"{"cells": [], "group": {"kind": "group", "names": ["e"], "table": [[0]]}, "kind": "complex"}"#;
        let Document::Complex(c) = parse(text, "x").unwrap() else {
            panic!()
        };
        let cx = Resolver::default().complex(&c, Path::new("")).unwrap();
        assert_eq!(cx.num_cells(), 0);
    }

    #[test]
    fn tom_dieck_grammar() {
        let lat = Arc::new(Lattice::new(symmetric3()).unwrap());
        for s in ["0", "-1*(H1_0) + 1*(H2_0)", "3*(H3_0) - 2*(H6_0)"] {
            assert_eq!(parse_tom_dieck(&lat, s).unwrap().to_string(), s);
        }
        assert!(parse_tom_dieck(&lat, "1*(H9_9)").is_err());
        assert!(parse_tom_dieck(&lat, "1*(H1_0) +").is_err());
        let z2 = Arc::new(Lattice::new(cyclic(2)).unwrap());
        assert_eq!(parse_tom_dieck(&z2, "2*(H2_0)").unwrap().project(1), 2);
    }
}
