//! Browser bindings. Each exported function has a plain Rust twin returning
//! `Result<String, String>` so it can be tested off the browser.

use glmn_crystal::combicrystal::{Block, Dir, KacCrystal, Lusztig, OddSet, OddSetCrystal};
use glmn_crystal::graph::{self, CrystalGraph};
use glmn_crystal::limitcrystal::{
    binf_op, component_label, components, is_dominant, BInfCrystal, BInfElt,
};
use glmn_crystal::verify::sample_element;
use wasm_bindgen::prelude::*;

const MAX_NODES: usize = 4000;

fn parse_pair(tok: &str) -> Result<(usize, usize), String> {
    let digits: Vec<usize> = tok
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()
        .ok_or(format!(
            "bad root `{tok}`: write roots as two digits, e.g. 14"
        ))?;
    match digits[..] {
        [a, b] => Ok((a, b)),
        _ => Err(format!(
            "bad root `{tok}`: write roots as two digits, e.g. 14"
        )),
    }
}

fn parse_lusztig(block: Block, m: usize, n: usize, text: &str) -> Result<Lusztig, String> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Lusztig::zero(block, m, n));
    }
    let mut entries = Vec::new();
    for item in text.split(',') {
        let (root, k) = item
            .trim()
            .split_once(':')
            .ok_or(format!("bad entry `{item}`: expected ab:k"))?;
        let k: u32 = k
            .trim()
            .parse()
            .map_err(|_| format!("bad multiplicity in `{item}`"))?;
        entries.push((parse_pair(root.trim())?, k));
    }
    Lusztig::from_entries(block, m, n, &entries).map_err(|e| e.to_string())
}

/// Parses the text form `{14,25} | 12:1 | 45:2` of a triple.
pub fn parse_triple(m: usize, n: usize, text: &str) -> Result<BInfElt, String> {
    let parts: Vec<&str> = text.split('|').collect();
    let [s, p, q] = parts[..] else {
        return Err("expected three parts separated by |".into());
    };
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    let pairs = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_pair(t.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BInfElt {
        s: OddSet::from_pairs(m, n, &pairs).map_err(|e| e.to_string())?,
        plus: parse_lusztig(Block::Plus, m, n, p)?,
        minus: parse_lusztig(Block::Minus, m, n, q)?,
    })
}

fn parse_lambda(m: usize, n: usize, text: &str) -> Result<Vec<i64>, String> {
    let v: Vec<i64> = text
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad weight entry `{x}`"))
        })
        .collect::<Result<_, _>>()?;
    if v.len() != m + n {
        return Err(format!("lambda needs {} entries", m + n));
    }
    if !is_dominant(m, &v) {
        return Err("lambda is not dominant".into());
    }
    Ok(v)
}

fn check_rank(m: usize, n: usize) -> Result<(), String> {
    if m == 0 || n == 0 || m + n > 9 {
        return Err("need 1 <= m, n and m + n <= 9".into());
    }
    Ok(())
}

fn render(g: CrystalGraph, format: &str) -> Result<String, String> {
    if g.nodes.len() > MAX_NODES {
        return Err(format!("{} nodes; reduce the parameters", g.nodes.len()));
    }
    match format {
        "dot" => Ok(g.to_dot()),
        "json" => Ok(g.to_json().to_string()),
        _ => Err(format!("unknown format `{format}`")),
    }
}

/// Applies e_i or f_i to a triple in B(infinity). Returns the JSON
/// `{ "result": label or null, "eps": .., "phi": .., "component": .. }`.
pub fn apply_operator_impl(
    m: usize,
    n: usize,
    element: &str,
    i: usize,
    op: &str,
) -> Result<String, String> {
    check_rank(m, n)?;
    if i == 0 || i >= m + n {
        return Err(format!("index must be in 1..{}", m + n - 1));
    }
    let dir = match op {
        "e" => Dir::E,
        "f" => Dir::F,
        _ => return Err("operator must be e or f".into()),
    };
    let b = parse_triple(m, n, element)?;
    let out = binf_op(&b, i, dir);
    let c = BInfCrystal { m, n };
    use glmn_crystal::combicrystal::Crystal;
    let eps = c.eps(&b, i);
    let phi = c.phi(&b, i);
    Ok(serde_json::json!({
        "input": graph::binf_label(&b),
        "result": out.as_ref().map(graph::binf_label),
        "eps": eps,
        "phi": phi,
        "weight": c.weight(&b),
        "component": graph::oddset_label(&component_label(&b)),
    })
    .to_string())
}

/// Crystal graph of a Kac module, of the odd sets, or of the ball around
/// the sample element.
pub fn crystal_graph_impl(
    kind: &str,
    m: usize,
    n: usize,
    lambda: &str,
    depth: usize,
    format: &str,
) -> Result<String, String> {
    match kind {
        "kac" => {
            check_rank(m, n)?;
            let kc = KacCrystal {
                m,
                n,
                lambda: parse_lambda(m, n, lambda)?,
            };
            let elts = kc.elements().map_err(|e| e.to_string())?;
            if elts.len() > MAX_NODES {
                return Err(format!("{} elements; reduce the parameters", elts.len()));
            }
            render(graph::build(&kc, &elts, graph::kac_label), format)
        }
        "oddset" => {
            check_rank(m, n)?;
            if m * n > 12 {
                return Err("odd set graph needs m * n <= 12".into());
            }
            let all: Vec<OddSet> = OddSet::all(m, n).collect();
            render(
                graph::build(&OddSetCrystal { m, n }, &all, graph::oddset_label),
                format,
            )
        }
        "example" => {
            let (b, _) = sample_element();
            let c = BInfCrystal { m: 3, n: 4 };
            let elts = graph::ball(&c, b, depth.min(3));
            render(graph::build(&c, &elts, graph::binf_label), format)
        }
        _ => Err(format!("unknown graph kind `{kind}`")),
    }
}

/// Component census of B(infinity) as JSON.
pub fn component_census_impl(m: usize, n: usize, cap: usize) -> Result<String, String> {
    check_rank(m, n)?;
    if m * (n - 1) > 6 || cap > 5 {
        return Err("need m(n-1) <= 6 and cap <= 5".into());
    }
    let c = components(m, n, cap).map_err(|e| e.to_string())?;
    let sizes: Vec<_> = c
        .sizes
        .iter()
        .map(|(k, v)| serde_json::json!([graph::oddset_label(k), v]))
        .collect();
    let mut v = serde_json::to_value(&c).map_err(|e| e.to_string())?;
    v["sizes"] = serde_json::Value::Array(sizes);
    Ok(v.to_string())
}

#[wasm_bindgen]
pub fn apply_operator(
    m: usize,
    n: usize,
    element: &str,
    i: usize,
    op: &str,
) -> Result<String, JsError> {
    apply_operator_impl(m, n, element, i, op).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn crystal_graph(
    kind: &str,
    m: usize,
    n: usize,
    lambda: &str,
    depth: usize,
    format: &str,
) -> Result<String, JsError> {
    crystal_graph_impl(kind, m, n, lambda, depth, format).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn component_census(m: usize, n: usize, cap: usize) -> Result<String, JsError> {
    component_census_impl(m, n, cap).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sample_triple() -> String {
    graph::binf_label(&sample_element().0)
}
