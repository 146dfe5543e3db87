//! JSON text formats: colored and choice hypergraphs, forbidden and BI
//! families, partite bound graphs and slack functions. Every reader
//! produces located error messages and every writer round-trips.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hypercore::{
    binomial, rank_edge, unrank_edge, ChoiceHypergraph, ColorMask, ColorSet, ColoredHypergraph,
};
use crate::property::{BIFamily, ForbiddenFamily};
use crate::regdiag::{
    edge_offset, enumerate_edges, BoundGraph, DeltaFunction, IndexSet, PartiteGround, TotalColor,
};

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::input(format!("{what} must be a JSON object")))
}

fn field<'a>(m: &'a Map<String, Value>, name: &str, what: &str) -> Result<&'a Value> {
    m.get(name).ok_or_else(|| Error::input(format!("{what} is missing the field \"{name}\"")))
}

fn usize_field(m: &Map<String, Value>, name: &str, what: &str) -> Result<usize> {
    field(m, name, what)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| Error::input(format!("field \"{name}\" of {what} must be a nonnegative integer")))
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    let arr = v.as_array().ok_or_else(|| Error::input(format!("{what} must be an array")))?;
    arr.iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::input(format!("{what} must contain strings")))
        })
        .collect()
}

fn color_set(m: &Map<String, Value>, what: &str) -> Result<ColorSet> {
    ColorSet::new(string_list(field(m, "colors", what)?, &format!("\"colors\" of {what}"))?)
}

/// "1,2,5" -> sorted 1-based vertex list.
fn parse_edge_key(key: &str, k: usize, n: usize) -> Result<Vec<usize>> {
    let verts: Vec<usize> = key
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::input(format!("edge key \"{key}\": \"{t}\" is not a vertex")))
        })
        .collect::<Result<_>>()?;
    if verts.len() != k {
        return Err(Error::input(format!("edge key \"{key}\" must list {k} vertices")));
    }
    if verts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input(format!("edge key \"{key}\" must be strictly increasing")));
    }
    if verts[0] < 1 || verts[verts.len() - 1] > n {
        return Err(Error::input(format!("edge key \"{key}\" must use vertices 1..={n}")));
    }
    Ok(verts)
}

fn edge_key(rank: usize, k: usize) -> String {
    unrank_edge(rank, k).iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Read the shared shell of both hypergraph formats and hand each edge
/// value to `put(rank, value)`.
fn read_edges(
    m: &Map<String, Value>,
    what: &str,
    put: &mut dyn FnMut(usize, &Value, &str) -> Result<()>,
) -> Result<(usize, usize)> {
    let k = usize_field(m, "k", what)?;
    let n = usize_field(m, "n", what)?;
    if k == 0 {
        return Err(Error::input(format!("{what}: k must be positive")));
    }
    let edges = obj(field(m, "edges", what)?, &format!("\"edges\" of {what}"))?;
    let want = binomial(n, k) as usize;
    if edges.len() != want {
        return Err(Error::input(format!(
            "{what} must color every k-subset: expected {want} edges, found {}",
            edges.len()
        )));
    }
    for (key, value) in edges {
        let verts = parse_edge_key(key, k, n)?;
        put(rank_edge(&verts)?, value, key)?;
    }
    Ok((k, n))
}

pub fn colored_from_json(v: &Value) -> Result<ColoredHypergraph> {
    let what = "a colored hypergraph";
    let m = obj(v, what)?;
    let colors = color_set(m, what)?;
    let mut word: Vec<Option<u32>> = Vec::new();
    let (k, n) = read_edges(m, what, &mut |rank, value, key| {
        let label = value
            .as_str()
            .ok_or_else(|| Error::input(format!("edge \"{key}\" must map to a color string")))?;
        let idx = colors
            .index_of(label)
            .ok_or_else(|| Error::input(format!("edge \"{key}\": unknown color \"{label}\"")))?;
        if word.len() <= rank {
            word.resize(rank + 1, None);
        }
        word[rank] = Some(idx);
        Ok(())
    })?;
    let word = word.into_iter().map(|c| c.expect("every rank seen")).collect();
    ColoredHypergraph::new(k, n, colors, word)
}

pub fn colored_to_json(h: &ColoredHypergraph) -> Value {
    let mut edges = Map::new();
    for rank in 0..h.edge_count() {
        edges.insert(
            edge_key(rank, h.k()),
            Value::String(h.colors().label(h.color_at_rank(rank)).to_string()),
        );
    }
    json!({
        "k": h.k(),
        "colors": h.colors().labels(),
        "n": h.n(),
        "edges": edges,
    })
}

pub fn choice_from_json(v: &Value) -> Result<ChoiceHypergraph> {
    let what = "a choice hypergraph";
    let m = obj(v, what)?;
    let colors = color_set(m, what)?;
    let mut word: Vec<Option<ColorMask>> = Vec::new();
    let (k, n) = read_edges(m, what, &mut |rank, value, key| {
        let labels = string_list(value, &format!("edge \"{key}\""))?;
        if labels.is_empty() {
            return Err(Error::input(format!("edge \"{key}\" needs a nonempty color set")));
        }
        let indices: Vec<u32> = labels
            .iter()
            .map(|l| {
                colors
                    .index_of(l)
                    .ok_or_else(|| Error::input(format!("edge \"{key}\": unknown color \"{l}\"")))
            })
            .collect::<Result<_>>()?;
        if word.len() <= rank {
            word.resize(rank + 1, None);
        }
        word[rank] = Some(ColorMask::from_indices(&indices)?);
        Ok(())
    })?;
    let word = word.into_iter().map(|c| c.expect("every rank seen")).collect();
    ChoiceHypergraph::new(k, n, colors, word)
}

pub fn choice_to_json(h: &ChoiceHypergraph) -> Value {
    let mut edges = Map::new();
    for rank in 0..h.edge_count() {
        let labels: Vec<&str> =
            h.choice_at_rank(rank).iter().map(|c| h.colors().label(c)).collect();
        edges.insert(edge_key(rank, h.k()), json!(labels));
    }
    json!({
        "k": h.k(),
        "colors": h.colors().labels(),
        "n": h.n(),
        "edges": edges,
    })
}

pub fn family_from_json(v: &Value) -> Result<ForbiddenFamily> {
    let what = "a forbidden family";
    let m = obj(v, what)?;
    let k = usize_field(m, "k", what)?;
    let colors = color_set(m, what)?;
    let graphs = field(m, "graphs", what)?
        .as_array()
        .ok_or_else(|| Error::input("\"graphs\" must be an array"))?;
    let members = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            colored_from_json(g)
                .map_err(|e| Error::input(format!("graphs[{i}]: {}", e.message())))
        })
        .collect::<Result<Vec<_>>>()?;
    ForbiddenFamily::new(k, colors, members)
}

pub fn family_to_json(fam: &ForbiddenFamily) -> Value {
    json!({
        "k": fam.k(),
        "colors": fam.colors().labels(),
        "graphs": fam.members().iter().map(colored_to_json).collect::<Vec<_>>(),
    })
}

pub fn bi_family_from_json(v: &Value) -> Result<BIFamily> {
    let what = "a BI family";
    let m = obj(v, what)?;
    let k = usize_field(m, "k", what)?;
    let ell = usize_field(m, "ell", what)?;
    let colors = color_set(m, what)?;
    if colors.labels() != ["black", "invisible"] {
        return Err(Error::input(
            "a BI family's colors must be exactly [\"black\", \"invisible\"]",
        ));
    }
    let graphs = field(m, "graphs", what)?
        .as_array()
        .ok_or_else(|| Error::input("\"graphs\" must be an array"))?;
    let members = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| {
            colored_from_json(g)
                .map_err(|e| Error::input(format!("graphs[{i}]: {}", e.message())))
        })
        .collect::<Result<Vec<_>>>()?;
    BIFamily::new(k, ell, members)
}

pub fn bi_family_to_json(fam: &BIFamily) -> Value {
    json!({
        "k": fam.k(),
        "ell": fam.ell(),
        "colors": ["black", "invisible"],
        "graphs": fam.members().iter().map(colored_to_json).collect::<Vec<_>>(),
    })
}

/// "1,3" -> index set over 1-based part labels.
fn parse_index_key(key: &str, r: usize) -> Result<IndexSet> {
    let parts: Vec<usize> = key
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .ok()
                .filter(|&p| p >= 1 && p <= r)
                .ok_or_else(|| Error::input(format!("index key \"{key}\": bad part \"{t}\"")))
        })
        .collect::<Result<_>>()?;
    let zero: Vec<usize> = parts.iter().map(|p| p - 1).collect();
    IndexSet::from_parts(&zero)
}

/// "2|1" -> per-part 1-based vertex ids of an edge, in index part order.
fn parse_bound_edge_key(key: &str, index: IndexSet, ground: &PartiteGround) -> Result<Vec<usize>> {
    let ids: Vec<usize> = key
        .split('|')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::input(format!("edge key \"{key}\": \"{t}\" is not a vertex")))
        })
        .collect::<Result<_>>()?;
    if ids.len() != index.size() {
        return Err(Error::input(format!(
            "edge key \"{key}\" at index {{{}}} must list {} vertices",
            index.label(),
            index.size()
        )));
    }
    for (&id, p) in ids.iter().zip(index.parts()) {
        if id < 1 || id > ground.part_size(p) {
            return Err(Error::input(format!(
                "edge key \"{key}\": vertex {id} outside part {} of size {}",
                p + 1,
                ground.part_size(p)
            )));
        }
    }
    Ok(ids.iter().map(|id| id - 1).collect())
}

fn bound_edge_key(coords: &[usize]) -> String {
    coords.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>().join("|")
}

pub fn bound_graph_from_json(v: &Value) -> Result<BoundGraph> {
    let what = "a bound graph";
    let m = obj(v, what)?;
    let r = usize_field(m, "r", what)?;
    let k = usize_field(m, "k", what)?;
    let sizes = field(m, "partSizes", what)?
        .as_array()
        .ok_or_else(|| Error::input("\"partSizes\" must be an array"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| Error::input("\"partSizes\" must contain nonnegative integers"))
        })
        .collect::<Result<Vec<_>>>()?;
    if sizes.len() != r {
        return Err(Error::input(format!(
            "\"partSizes\" lists {} parts but r = {r}",
            sizes.len()
        )));
    }
    let ground = PartiteGround::new(sizes)?;

    let mut colors = BTreeMap::new();
    for (key, value) in obj(field(m, "colorSets", what)?, "\"colorSets\"")? {
        let index = parse_index_key(key, r)?;
        let labels = string_list(value, &format!("colorSets[\"{key}\"]"))?;
        colors.insert(index, labels);
    }

    let mut coloring = BTreeMap::new();
    for (key, value) in obj(field(m, "coloring", what)?, "\"coloring\"")? {
        let index = parse_index_key(key, r)?;
        let palette = colors.get(&index).ok_or_else(|| {
            Error::input(format!("coloring for index \"{key}\" has no color set"))
        })?;
        let edges = obj(value, &format!("coloring[\"{key}\"]"))?;
        let want = ground.edge_count(index) as usize;
        let mut gamma = vec![None; want];
        for (ek, ev) in edges {
            let coords = parse_bound_edge_key(ek, index, &ground)?;
            let label = ev.as_str().ok_or_else(|| {
                Error::input(format!("coloring[\"{key}\"][\"{ek}\"] must be a color string"))
            })?;
            let c = palette.iter().position(|l| l == label).ok_or_else(|| {
                Error::input(format!(
                    "coloring[\"{key}\"][\"{ek}\"]: unknown color \"{label}\""
                ))
            })?;
            gamma[edge_offset(&ground, index, &coords)] = Some(c as u32);
        }
        if let Some(missing) = gamma.iter().position(Option::is_none) {
            let coords = &enumerate_edges(&ground, index)[missing];
            return Err(Error::input(format!(
                "coloring[\"{key}\"] is missing edge \"{}\"",
                bound_edge_key(coords)
            )));
        }
        coloring.insert(index, gamma.into_iter().flatten().collect());
    }
    BoundGraph::new(ground, k, colors, coloring)
}

pub fn bound_graph_to_json(g: &BoundGraph) -> Value {
    let mut color_sets = Map::new();
    let mut coloring = Map::new();
    for index in g.indices() {
        color_sets.insert(index.label(), json!(g.color_set(index)));
        let mut edges = Map::new();
        for coords in enumerate_edges(g.ground(), index) {
            let c = g.color_at(index, &coords);
            edges.insert(
                bound_edge_key(&coords),
                Value::String(g.color_set(index)[c as usize].clone()),
            );
        }
        coloring.insert(index.label(), Value::Object(edges));
    }
    json!({
        "r": g.ground().r(),
        "k": g.k(),
        "partSizes": g.ground().part_sizes(),
        "colorSets": color_sets,
        "coloring": coloring,
    })
}

/// A total color against a graph's palettes, with labels resolved.
pub fn total_color_to_json(g: &BoundGraph, tc: &TotalColor) -> Value {
    let mut components = Map::new();
    for (sub, &c) in &tc.components {
        components.insert(
            sub.label(),
            Value::String(g.color_set(*sub)[c as usize].clone()),
        );
    }
    json!({ "index": tc.index.label(), "components": components })
}

pub fn total_color_from_json(g: &BoundGraph, v: &Value) -> Result<TotalColor> {
    let what = "a total color";
    let m = obj(v, what)?;
    let index = parse_index_key(
        field(m, "index", what)?
            .as_str()
            .ok_or_else(|| Error::input("\"index\" must be a string like \"1,2\""))?,
        g.ground().r(),
    )?;
    let comp = obj(field(m, "components", what)?, "\"components\"")?;
    let mut components = BTreeMap::new();
    for sub in index.nonempty_subsets() {
        let label = comp
            .get(&sub.label())
            .and_then(Value::as_str)
            .ok_or_else(|| {
                Error::input(format!(
                    "total color at index {{{}}} is missing the component \"{}\"",
                    index.label(),
                    sub.label()
                ))
            })?;
        let c = g
            .color_set(sub)
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| {
                Error::input(format!(
                    "component \"{}\": unknown color \"{label}\"",
                    sub.label()
                ))
            })?;
        components.insert(sub, c as u32);
    }
    if comp.len() != components.len() {
        return Err(Error::input(format!(
            "total color at index {{{}}} has stray components",
            index.label()
        )));
    }
    Ok(TotalColor { index, components })
}

pub fn delta_from_json(g: &BoundGraph, v: &Value) -> Result<DeltaFunction> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::input("a slack function must be an array of records"))?;
    let mut entries = Vec::new();
    for (i, rec) in arr.iter().enumerate() {
        let m = obj(rec, &format!("slack record {i}"))?;
        let tc = total_color_from_json(g, field(m, "totalColor", &format!("slack record {i}"))?)
            .map_err(|e| Error::input(format!("slack record {i}: {}", e.message())))?;
        let value = field(m, "value", &format!("slack record {i}"))?
            .as_f64()
            .ok_or_else(|| Error::input(format!("slack record {i}: \"value\" must be a number")))?;
        entries.push((tc, value));
    }
    DeltaFunction::new(entries)
}

pub fn delta_to_json(g: &BoundGraph, delta: &DeltaFunction) -> Value {
    Value::Array(
        delta
            .entries()
            .map(|(tc, v)| json!({ "totalColor": total_color_to_json(g, tc), "value": v }))
            .collect(),
    )
}
