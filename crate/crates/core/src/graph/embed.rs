use serde::{Deserialize, Serialize};

use super::build_graph;
use crate::adjacency::adjacent_brute;
use crate::error::{Error, Result};
use crate::ring::{is_vertex, Modulus, Quat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbedOutcome {
    pub edges_checked: usize,
    pub violations: usize,
    pub first_violation: Option<(String, String)>,
}

impl EmbedOutcome {
    pub fn preserved(&self) -> bool {
        self.violations == 0
    }
}

/// Maps each vertex of the smaller graph to the quaternion with the same
/// component values in the larger ring and checks that every edge survives.
pub fn embed_check(small: Modulus, large: Modulus) -> Result<EmbedOutcome> {
    if small > large {
        return Err(Error::Unsupported(format!(
            "embedding needs n1 <= n2, got {} > {}",
            small.exponent(),
            large.exponent()
        )));
    }
    large.ensure_at_most(3, "embedding checks")?;
    let g = build_graph(small)?;
    let lift = |q: Quat| Quat::new(q.components(), large).expect("values below 2^n1 are canonical");

    let mut out = EmbedOutcome {
        edges_checked: 0,
        violations: 0,
        first_violation: None,
    };
    for i in 0..g.len() {
        for j in g.neighbors(i).filter(|&j| j > i) {
            out.edges_checked += 1;
            let (a, b) = (lift(g.vertex(i)), lift(g.vertex(j)));
            let kept = is_vertex(&a) && is_vertex(&b) && adjacent_brute(&a, &b)?;
            if !kept {
                out.violations += 1;
                out.first_violation.get_or_insert((a.to_string(), b.to_string()));
            }
        }
    }
    Ok(out)
}
