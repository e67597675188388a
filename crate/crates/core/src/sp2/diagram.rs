//! The closure diagram of the `K_C`-orbits: an arrow `X → Y` labelled `k`
//! means `X P_k = Y P_k` with `dim Y = dim X + 1`.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

use super::flag::{classify_kc, flag_of};
use super::label::{Orbit, OrbitLabel};
use super::matrix::random_parabolic;
use super::table::representative;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DiagramEdge {
    #[serde(serialize_with = "kc_label")]
    pub from: Orbit,
    #[serde(serialize_with = "kc_label")]
    pub to: Orbit,
    pub parabolic: u8,
}

fn kc_label<S: serde::Serializer>(o: &Orbit, s: S) -> std::result::Result<S::Ok, S::Error> {
    OrbitLabel::kc(*o).serialize(s)
}

pub fn closure_diagram() -> Vec<DiagramEdge> {
    use Orbit::*;
    [
        (S1, S5, 2),
        (S3, S5, 2),
        (S3, S7, 1),
        (S4, S7, 1),
        (S4, S6, 2),
        (S2, S6, 2),
        (S5, S8, 1),
        (S7, S10, 2),
        (S6, S9, 1),
        (S8, Op, 2),
        (S9, Op, 2),
        (S10, Op, 1),
    ]
    .into_iter()
    .map(|(from, to, parabolic)| DiagramEdge { from, to, parabolic })
    .collect()
}

fn node_id(o: Orbit) -> String {
    OrbitLabel::kc(o).to_string()
}

pub fn to_dot(edges: &[DiagramEdge]) -> String {
    let mut out = String::from("digraph orbits {\n");
    for o in Orbit::ALL {
        out.push_str(&format!("  {};\n", node_id(o)));
    }
    for e in edges {
        out.push_str(&format!(
            "  {} -> {} [label=\"{}\"];\n",
            node_id(e.from),
            node_id(e.to),
            e.parabolic
        ));
    }
    out.push_str("}\n");
    out
}

fn parse_node(tok: &str) -> Result<Orbit> {
    let t = tok.trim().trim_matches('"');
    let label: OrbitLabel = t.parse()?;
    if label.side != super::label::Side::Kc {
        return Err(Error::Parse(format!("{t} is not a K_C orbit")));
    }
    Ok(label.orbit)
}

/// Read back the edge statements of a digraph in the shape written by
/// [`to_dot`]: `A -> B [label="k"];`, one or more per line.
pub fn parse_dot(text: &str) -> Result<Vec<DiagramEdge>> {
    let body = text
        .find('{')
        .and_then(|a| text.rfind('}').map(|b| &text[a + 1..b]))
        .ok_or_else(|| Error::Parse("missing digraph body".into()))?;
    let mut edges = Vec::new();
    for stmt in body.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((lhs, rhs)) = stmt.split_once("->") else {
            continue;
        };
        let (target, attrs) = match rhs.split_once('[') {
            Some((t, a)) => (t, a.trim_end().trim_end_matches(']')),
            None => (rhs, ""),
        };
        let label = attrs
            .split(',')
            .filter_map(|kv| kv.split_once('='))
            .find(|(k, _)| k.trim() == "label")
            .map(|(_, v)| v.trim().trim_matches('"').to_string())
            .ok_or_else(|| Error::Parse(format!("edge without label: {stmt}")))?;
        let parabolic: u8 = label
            .parse()
            .ok()
            .filter(|k| *k == 1 || *k == 2)
            .ok_or_else(|| Error::Parse(format!("bad edge label {label:?}")))?;
        edges.push(DiagramEdge {
            from: parse_node(lhs)?,
            to: parse_node(target)?,
            parabolic,
        });
    }
    Ok(edges)
}

/// `{Y} ∪ {Z : Z → Y labelled k}`: the orbits making up `Y P_k`.
pub fn saturation_set(edges: &[DiagramEdge], e: &DiagramEdge) -> Vec<Orbit> {
    let mut allowed = vec![e.to];
    allowed.extend(
        edges
            .iter()
            .filter(|f| f.to == e.to && f.parabolic == e.parabolic)
            .map(|f| f.from),
    );
    allowed
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SaturationReport {
    pub edge: DiagramEdge,
    pub allowed: Vec<OrbitLabel>,
    pub counts: BTreeMap<String, usize>,
    pub outside: usize,
    pub resampled_degenerate: usize,
}

impl SaturationReport {
    pub fn ok(&self) -> bool {
        self.outside == 0 && self.counts.get(&OrbitLabel::kc(self.edge.to).to_string()).copied().unwrap_or(0) > 0
    }
}

/// Classify `g_X · p` for random `p ∈ P_k`. Degenerate draws are replaced by
/// fresh ones (at most as many again as requested).
pub fn saturation_check(edges: &[DiagramEdge], e: &DiagramEdge, samples: usize, seed: u64, tol: f64) -> Result<SaturationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let allowed = saturation_set(edges, e);
    let g = representative(e.from).1;
    let mut counts = BTreeMap::new();
    let mut outside = 0;
    let mut degenerate = 0;
    let mut done = 0;
    while done < samples {
        let p = random_parabolic(&mut rng, e.parabolic)?;
        match classify_kc(&flag_of(&(&g * &p)), tol) {
            Ok(label) => {
                if !allowed.contains(&label.orbit) {
                    outside += 1;
                }
                *counts.entry(label.to_string()).or_insert(0) += 1;
                done += 1;
            }
            Err(Error::Degenerate { .. }) if degenerate < samples => degenerate += 1,
            Err(err) => return Err(err),
        }
    }
    Ok(SaturationReport {
        edge: *e,
        allowed: allowed.into_iter().map(OrbitLabel::kc).collect(),
        counts,
        outside,
        resampled_degenerate: degenerate,
    })
}

/// Parabolic indices along the diagram from `o` up to `S_op`, taking the
/// first listed arrow out of each orbit.
pub fn lift_sequence(o: Orbit) -> Result<Vec<u8>> {
    let edges = closure_diagram();
    let mut cur = o;
    let mut seq = Vec::new();
    while cur != Orbit::Op {
        let e = edges
            .iter()
            .find(|e| e.from == cur)
            .ok_or_else(|| Error::Internal(format!("no arrow leaves {}", node_id(cur))))?;
        seq.push(e.parabolic);
        cur = e.to;
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp2::dims::orbit_dimension;
    use crate::sp2::flag::DEFAULT_TOL;

    #[test]
    fn twelve_edges_and_labels() {
        let d = closure_diagram();
        assert_eq!(d.len(), 12);
        assert!(d.contains(&DiagramEdge {
            from: Orbit::S10,
            to: Orbit::Op,
            parabolic: 1
        }));
    }

    #[test]
    fn dot_round_trip() {
        let d = closure_diagram();
        let text = to_dot(&d);
        assert!(text.contains("S10 -> Sop [label=\"1\"];"));
        assert_eq!(parse_dot(&text).unwrap(), d);
        assert!(parse_dot("digraph { S1 -> S5; }").is_err());
        assert!(parse_dot("digraph { S1 -> S5 [label=\"3\"]; }").is_err());
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_sequence(Orbit::S1).unwrap(), vec![2, 1, 2]);
        assert_eq!(lift_sequence(Orbit::S7).unwrap(), vec![2, 1]);
        assert_eq!(lift_sequence(Orbit::S10).unwrap(), vec![1]);
        for o in Orbit::ALL {
            assert_eq!(lift_sequence(o).unwrap().len(), 4 - orbit_dimension(o).unwrap());
        }
    }

    #[test]
    fn saturation_small_sample() {
        let d = closure_diagram();
        for e in &d {
            let r = saturation_check(&d, e, 50, 11, DEFAULT_TOL).unwrap();
            assert!(r.ok(), "{r:?}");
        }
    }
}
