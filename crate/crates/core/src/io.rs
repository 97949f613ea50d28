//! Plain-text complex format.
//!
//! One facet per line as whitespace-separated positive ids, `#` starts a comment,
//! an optional `ground 1 2 … n` line extends the ground set, and `{}` stands for
//! the empty facet.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::{SimplicialComplex, Vertex, VertexSet};

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    let mut ground: Option<VertexSet> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "{}" {
            facets.push(VertexSet::new());
            continue;
        }
        let (is_ground, body) = match line.strip_prefix("ground") {
            Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => (true, rest),
            _ => (false, line),
        };
        let mut set = VertexSet::new();
        for tok in body.split_whitespace() {
            let v: i64 = tok.parse().map_err(|_| Error::Parse {
                line: k + 1,
                message: format!("`{tok}` is not an integer"),
            })?;
            if v <= 0 || v > Vertex::MAX as i64 {
                return Err(Error::Parse {
                    line: k + 1,
                    message: format!("vertex id {v} is not a positive 32-bit id"),
                });
            }
            set.insert(v as Vertex);
        }
        if is_ground {
            ground = Some(ground.map_or(set.clone(), |g| g.union(&set)));
        } else {
            facets.push(set);
        }
    }
    let support = facets.iter().fold(VertexSet::new(), |a, f| a.union(f));
    let ground = ground.map(|g| g.union(&support));
    SimplicialComplex::new(facets, ground)
}

/// Inverse of [`parse_complex`]; writes a `ground` line only for ghost vertices.
pub fn format_complex(delta: &SimplicialComplex) -> String {
    let mut out = String::new();
    if delta.ground_set() != &delta.vertex_support() {
        let ids: Vec<String> = delta.ground_set().iter().map(|v| v.to_string()).collect();
        writeln!(out, "ground {}", ids.join(" ")).unwrap();
    }
    for f in delta.facets() {
        if f.is_empty() {
            out.push_str("{}\n");
        } else {
            let ids: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", ids.join(" ")).unwrap();
        }
    }
    out
}
