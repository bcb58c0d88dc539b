//! Browser bindings for the demo page in `www/`.
//!
//! Each exported function takes text and returns text (JSON or SVG), so the
//! page needs no glue beyond the generated module. The plain Rust versions
//! are public too and carry the tests.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nervelab::constructions::star_cover;
use nervelab::covers::classify_cover;
use nervelab::homology::homology;
use nervelab::io::{facet_labels, parse_complex};
use nervelab::label::{parse, LabelTerm};
use nervelab::neighborhoods::DerivedAmbient;
use nervelab::SimplicialComplex;
use serde_json::json;
use wasm_bindgen::prelude::*;

const SIZE: f64 = 480.0;

/// Corners of the drawn triangle, keyed by the vertices of `Δ²`.
fn corners() -> BTreeMap<&'static str, (f64, f64)> {
    let h = SIZE * 3f64.sqrt() / 2.0;
    let top = (SIZE - h) / 2.0 + 10.0;
    BTreeMap::from([
        ("1", (10.0, top + h - 20.0)),
        ("2", (SIZE - 10.0, top + h - 20.0)),
        ("3", (SIZE / 2.0, top)),
    ])
}

/// Subdivision vertices sit at the barycenter of what they list.
fn position(label: &str, corners: &BTreeMap<&str, (f64, f64)>) -> Option<(f64, f64)> {
    match parse(label).ok()? {
        LabelTerm::Atom(a) => corners.get(a).copied(),
        LabelTerm::List(items) => {
            let pts: Option<Vec<_>> = items.iter().map(|i| position(i, corners)).collect();
            let pts = pts?;
            let n = pts.len() as f64;
            Some((pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n))
        }
    }
}

/// Reads a core such as `1,2; 3` as a list of facets.
fn parse_core(text: &str) -> Result<SimplicialComplex, String> {
    let facets: Vec<Vec<&str>> = text
        .split(';')
        .map(|f| f.split(',').map(str::trim).filter(|s| !s.is_empty()).collect::<Vec<_>>())
        .filter(|f| !f.is_empty())
        .collect();
    SimplicialComplex::from_facets(facets).map_err(|e| e.to_string())
}

/// Homology, f-vector and Euler characteristic of a complex given as JSON.
pub fn homology_report(text: &str) -> Result<String, String> {
    let (name, k) = parse_complex(text).map_err(|e| e.to_string())?;
    let h = homology(&k, false);
    let groups: Vec<String> = h.groups.iter().map(ToString::to_string).collect();
    Ok(json!({
        "name": name,
        "f_vector": k.f_vector(),
        "euler_characteristic": k.euler_characteristic(),
        "homology": groups,
    })
    .to_string())
}

/// Nerve of the vertex-star cover of `sd K`, with its classification.
pub fn star_nerve_report(text: &str) -> Result<String, String> {
    let (_, k) = parse_complex(text).map_err(|e| e.to_string())?;
    let cover = star_cover(&k).map_err(|e| e.to_string())?;
    let class = classify_cover(&cover).map_err(|e| e.to_string())?;
    let nerve = cover.nerve();
    Ok(json!({
        "members": cover.members().len(),
        "nerve_facets": facet_labels(&nerve),
        "nerve_equals_complex": nerve == k,
        "class": class.class,
    })
    .to_string())
}

/// SVG of the second subdivision of the triangle on `1, 2, 3`, shading the
/// derived neighborhood of `core` and drawing the core itself on top.
pub fn neighborhood_svg(core: &str) -> Result<String, String> {
    let triangle = SimplicialComplex::simplex(2);
    let core = parse_core(core)?;
    if !core.is_subcomplex_of(&triangle) {
        return Err("core must use only the vertices 1, 2, 3".into());
    }
    let amb = DerivedAmbient::new(&triangle).map_err(|e| e.to_string())?;
    let nbhd = amb.neighborhood(&core).map_err(|e| e.to_string())?;
    let c = corners();
    let at = |label: &str| position(label, &c).expect("labels of the subdivided triangle");

    let mut svg = format!(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}">"#);
    for t in amb.sd2().faces_of_dim(2) {
        let fill = if nbhd.contains(t) { "#9ecae1" } else { "#ffffff" };
        let pts: Vec<String> = t
            .vertices()
            .iter()
            .map(|v| {
                let (x, y) = at(v.as_str());
                format!("{x:.1},{y:.1}")
            })
            .collect();
        let _ = write!(svg, r##"<polygon points="{}" fill="{fill}" stroke="#888" stroke-width="0.5"/>"##, pts.join(" "));
    }
    for e in core.faces_of_dim(1) {
        let (a, b) = (at(e.vertices()[0].as_str()), at(e.vertices()[1].as_str()));
        let _ = write!(
            svg,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#d62728" stroke-width="3"/>"##,
            a.0, a.1, b.0, b.1
        );
    }
    for v in core.vertices() {
        let (x, y) = at(v.as_str());
        let _ = write!(svg, r##"<circle cx="{x:.1}" cy="{y:.1}" r="5" fill="#d62728"/>"##);
    }
    if let Some(t) = core.faces_of_dim(2).next() {
        let pts: Vec<String> = t.vertices().iter().map(|v| {
            let (x, y) = at(v.as_str());
            format!("{x:.1},{y:.1}")
        }).collect();
        let _ = write!(svg, r##"<polygon points="{}" fill="#d62728" fill-opacity="0.25"/>"##, pts.join(" "));
    }
    svg.push_str("</svg>");
    Ok(svg)
}

#[wasm_bindgen(js_name = homologyReport)]
pub fn homology_report_js(text: &str) -> Result<String, JsValue> {
    homology_report(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = starNerveReport)]
pub fn star_nerve_report_js(text: &str) -> Result<String, JsValue> {
    star_nerve_report(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = neighborhoodSvg)]
pub fn neighborhood_svg_js(core: &str) -> Result<String, JsValue> {
    neighborhood_svg(core).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPHERE: &str = r#"{"name":"s2","facets":[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]}"#;

    #[test]
    fn sphere_homology() {
        let v: serde_json::Value = serde_json::from_str(&homology_report(SPHERE).unwrap()).unwrap();
        assert_eq!(v["homology"], json!(["Z", "0", "Z"]));
        assert_eq!(v["euler_characteristic"], 2);
    }

    #[test]
    fn star_nerve_recovers_complex() {
        let v: serde_json::Value = serde_json::from_str(&star_nerve_report(SPHERE).unwrap()).unwrap();
        assert_eq!(v["nerve_equals_complex"], true);
        assert_eq!(v["members"], 4);
        assert_eq!(v["class"], "certified-good");
    }

    #[test]
    fn vertex_neighborhood_picture() {
        let svg = neighborhood_svg("1").unwrap();
        // sd² of the triangle has 36 triangles, 4 of them at each corner.
        assert_eq!(svg.matches("<polygon").count(), 36);
        assert_eq!(svg.matches("#9ecae1").count(), 4);
        assert_eq!(svg.matches("<circle").count(), 1);
        let whole = neighborhood_svg("1,2,3").unwrap();
        assert_eq!(whole.matches("#9ecae1").count(), 36);
    }

    #[test]
    fn barycenters() {
        let c = corners();
        let mid = position("[1,2]", &c).unwrap();
        assert!((mid.0 - (c["1"].0 + c["2"].0) / 2.0).abs() < 1e-9);
        assert!(position("[[1],[4]]", &c).is_none());
    }

    #[test]
    fn bad_input() {
        assert!(neighborhood_svg("1,4").is_err());
        assert!(homology_report("not json").is_err());
    }
}
