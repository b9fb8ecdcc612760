use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::EdgeColouring;
use crate::algebra::Signature;
use crate::error::{Error, Result};

/// Named DOT colours for proper colours `1..=12`; later colours cycle with a
/// numeric suffix (`red2`, `blue2`, ...).
pub const DOT_PALETTE: [&str; 12] = [
    "red",
    "blue",
    "green",
    "orange",
    "purple",
    "brown",
    "magenta",
    "cyan",
    "gold",
    "gray",
    "olivedrab",
    "deeppink",
];

/// DOT colour name for proper colour `c >= 1`.
pub fn dot_colour_name(c: usize) -> String {
    assert!(c >= 1, "colour indices start at 1");
    let base = DOT_PALETTE[(c - 1) % DOT_PALETTE.len()];
    let round = (c - 1) / DOT_PALETTE.len();
    if round == 0 {
        base.to_string()
    } else {
        format!("{base}{}", round + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureDocument {
    pub s: Vec<usize>,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColouringDocument {
    pub signature: SignatureDocument,
    pub vertices: usize,
    pub edges: Vec<[usize; 3]>,
}

impl ColouringDocument {
    pub fn signature(&self) -> Result<Signature> {
        Signature::new(&self.signature.s, self.signature.n)
    }

    pub fn colouring(&self) -> Result<EdgeColouring> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1], e[2])).collect();
        EdgeColouring::from_edges(self.vertices, self.signature.n, &edges)
    }
}

impl EdgeColouring {
    pub fn to_document(&self, sig: Signature) -> Result<ColouringDocument> {
        if sig.n() != self.n {
            return Err(Error::ColourCountMismatch {
                colouring: self.n,
                signature: sig.n(),
            });
        }
        Ok(ColouringDocument {
            signature: SignatureDocument {
                s: sig.s(),
                n: sig.n(),
            },
            vertices: self.m,
            edges: self
                .edges()
                .into_iter()
                .map(|(i, j, c)| [i, j, c])
                .collect(),
        })
    }

    /// Compact JSON with edges `[i, j, c]`, `i < j`, sorted.
    pub fn to_json(&self, sig: Signature) -> Result<String> {
        Ok(serde_json::to_string(&self.to_document(sig)?)?)
    }

    /// Parses a colouring document, returning the colouring and its signature.
    pub fn from_json(text: &str) -> Result<(EdgeColouring, Signature)> {
        let doc: ColouringDocument = serde_json::from_str(text)?;
        Ok((doc.colouring()?, doc.signature()?))
    }

    /// Undirected DOT graph with one coloured edge per vertex pair.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph colouring {\n  node [shape=circle];\n");
        for v in 0..self.m {
            let _ = writeln!(out, "  {v};");
        }
        for (i, j, c) in self.edges() {
            let _ = writeln!(
                out,
                "  {i} -- {j} [color={}, label=\"{c}\"];",
                dot_colour_name(c)
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn palette_cycles_with_suffix() {
        assert_eq!(dot_colour_name(1), "red");
        assert_eq!(dot_colour_name(12), "deeppink");
        assert_eq!(dot_colour_name(13), "red2");
        assert_eq!(dot_colour_name(26), "blue3");
    }

    #[test]
    fn json_round_trip() {
        let sig = Signature::new(&[2], 2).unwrap();
        let c = EdgeColouring::from_fn(
            5,
            2,
            |i, j| if (j - i) % 5 == 1 || j - i == 4 { 1 } else { 2 },
        )
        .unwrap();
        let text = c.to_json(sig).unwrap();
        assert!(text.starts_with(r#"{"signature":{"s":[2],"n":2},"vertices":5,"edges":[[0,1,1],"#));
        let (back, sig2) = EdgeColouring::from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(sig2, sig);
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(EdgeColouring::from_json("{").is_err());
        let missing = r#"{"signature":{"s":[2],"n":2},"vertices":3,"edges":[[0,1,1]]}"#;
        assert!(EdgeColouring::from_json(missing).is_err());
        let bad_colour = r#"{"signature":{"s":[2],"n":1},"vertices":2,"edges":[[0,1,2]]}"#;
        assert!(EdgeColouring::from_json(bad_colour).is_err());
    }

    #[test]
    fn dot_lists_every_edge() {
        let dot = EdgeColouring::monochromatic(3).to_dot();
        assert!(dot.starts_with("graph colouring {"));
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert!(dot.contains("0 -- 1 [color=red"));
    }
}
