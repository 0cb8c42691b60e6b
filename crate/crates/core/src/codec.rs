//! The prefix-free bitstring language for labeled graphs.
//!
//! A description is `n` ones, a separating zero, then the `n(n-1)/2` link
//! bits: `1110100` is the 3-node graph with the single edge (0,1). Every
//! relabeling of the nodes yields a description of the same topology; the
//! number of distinct descriptions of a graph is its omega.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::bits::BitString;
use crate::error::Error;
use crate::graph::{link_field_len, pair_index, Graph};
use crate::perm;
use crate::Result;

/// Largest node count for which `all_descriptions` will enumerate the `n!`
/// relabelings unless the caller raises the bound.
pub const DEFAULT_PERMUTATION_BOUND: usize = 10;

/// A well-formed description: unary header plus link field.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Description {
    n: usize,
    links: BitString,
}

impl Description {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn link_field(&self) -> &BitString {
        &self.links
    }

    /// Total length in bits: `n + 1 + n(n-1)/2`.
    pub fn len(&self) -> usize {
        self.n + 1 + self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the separator bit is always present
    }

    /// The full bit sequence, header included.
    pub fn bits(&self) -> BitString {
        let mut out = BitString::new();
        out.extend_repeat(true, self.n);
        out.push(false);
        out.extend_from(&self.links);
        out
    }

    pub fn from_bits(bits: &BitString) -> Result<Description> {
        let mut n = 0;
        while n < bits.len() && bits.get(n) {
            n += 1;
        }
        if n == bits.len() {
            return Err(Error::MalformedDescription(
                "header has no terminating 0".into(),
            ));
        }
        let body = bits.len() - n - 1;
        if body != link_field_len(n) {
            return Err(Error::MalformedDescription(format!(
                "link field has {} bits, expected {} for {} nodes",
                body,
                link_field_len(n),
                n
            )));
        }
        Ok(Description {
            n,
            links: bits.slice(n + 1, bits.len()),
        })
    }

    /// The described graph.
    pub fn graph(&self) -> Graph {
        Graph::from_link_field(self.n, self.links.clone()).expect("invariant: lengths match")
    }
}

impl fmt::Display for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits())
    }
}

impl fmt::Debug for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Description({self})")
    }
}

impl FromStr for Description {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Description::from_bits(&s.parse()?)
    }
}

/// Encodes `g` under the given relabeling: edge `(i,j)` of `g` sets the link
/// bit of the pair `(perm[i], perm[j])`.
pub fn encode(g: &Graph, perm: &[usize]) -> Result<Description> {
    let relabeled = g.apply_permutation(perm)?;
    Ok(Description {
        n: g.n(),
        links: relabeled.link_field().clone(),
    })
}

/// The description under the identity labeling.
pub fn identity_description(g: &Graph) -> Description {
    Description {
        n: g.n(),
        links: g.link_field().clone(),
    }
}

/// Decodes a description back to its graph.
pub fn decode(d: &Description) -> Graph {
    d.graph()
}

/// Every distinct description of `g` over all `n!` relabelings. Refuses node
/// counts above `max_n`; the enumeration is the caller's responsibility
/// beyond that.
pub fn all_descriptions(g: &Graph, max_n: usize) -> Result<HashSet<Description>> {
    let n = g.n();
    if n > max_n {
        return Err(Error::InfeasibleSize {
            what: "permutation enumeration",
            n,
            bound: max_n,
        });
    }
    let mut out = HashSet::new();
    if n <= 11 {
        for field in distinct_link_fields_u64(g)? {
            out.insert(Description {
                n,
                links: BitString::from_lsb_u64(link_field_len(n), field),
            });
        }
        return Ok(out);
    }
    perm::for_each_permutation(n, |p| {
        out.insert(encode(g, p).expect("valid permutation"));
    });
    Ok(out)
}

/// Sorted, deduplicated link fields of `g` over all relabelings, packed
/// least-significant-first into `u64`s. Only valid for `n <= 11`.
pub(crate) fn distinct_link_fields_u64(g: &Graph) -> Result<Vec<u64>> {
    let n = g.n();
    if n > 11 {
        return Err(Error::InfeasibleSize {
            what: "u64 link fields",
            n,
            bound: 11,
        });
    }
    let edges = g.edges();
    let mut fields = Vec::new();
    perm::for_each_permutation(n, |p| {
        let mut field = 0u64;
        for &(i, j) in &edges {
            let (a, b) = if p[i] < p[j] { (p[i], p[j]) } else { (p[j], p[i]) };
            field |= 1u64 << pair_index(a, b);
        }
        fields.push(field);
    });
    fields.sort_unstable();
    fields.dedup();
    Ok(fields)
}
