//! On-disk instance formats.
//!
//! Text: one face per line as whitespace-separated positive integers, `#`
//! starts a comment. The ground-set size defaults to the maximal vertex and
//! can be pinned with a `# n=<int>` directive line. JSON: an object
//! `{"n": ..., "faces": [[...], ...]}` with `n` optional.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use exshift::hypergraphs::{KSet, SimplicialComplex, UniformHypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub faces: Vec<Vec<u32>>,
}

impl InstanceFile {
    pub fn from_path(path: &Path) -> Result<Self> {
        let raw = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        let looks_like_json = raw.trim_start().starts_with('{');
        let inst = if looks_like_json {
            Self::parse_json(&raw)?
        } else {
            Self::parse_text(&raw)?
        };
        if inst.faces.is_empty() {
            bail!("{}: no faces", path.display());
        }
        Ok(inst)
    }

    pub fn parse_text(raw: &str) -> Result<Self> {
        let mut n = None;
        let mut faces = Vec::new();
        for (lineno, line) in raw.lines().enumerate() {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("n=") {
                    n = Some(
                        v.trim()
                            .parse::<u32>()
                            .with_context(|| format!("line {}: bad n directive", lineno + 1))?,
                    );
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let verts: Result<Vec<u32>, _> =
                line.split_whitespace().map(|t| t.parse::<u32>()).collect();
            let verts =
                verts.with_context(|| format!("line {}: expected integers", lineno + 1))?;
            faces.push(verts);
        }
        Ok(InstanceFile { n, faces })
    }

    pub fn parse_json(raw: &str) -> Result<Self> {
        serde_json::from_str(raw).context("malformed JSON instance")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = self.n {
            let _ = writeln!(out, "# n={n}");
        }
        for face in &self.faces {
            let strs: Vec<String> = face.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "{}", strs.join(" "));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }

    pub fn ground_set_size(&self) -> Result<u32> {
        let max = self
            .faces
            .iter()
            .flat_map(|f| f.iter().copied())
            .max()
            .unwrap_or(0);
        match self.n {
            Some(n) if n >= max => Ok(n),
            Some(n) => bail!("declared n={n} but a vertex equals {max}"),
            None => Ok(max),
        }
    }

    pub fn to_hypergraph(&self) -> Result<UniformHypergraph> {
        let n = self.ground_set_size()?;
        let faces: Result<Vec<KSet>, _> = self
            .faces
            .iter()
            .map(|f| KSet::from_unsorted(f.clone()))
            .collect();
        Ok(UniformHypergraph::new(n, faces?)?)
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        let n = self.ground_set_size()?;
        let faces: Result<Vec<KSet>, _> = self
            .faces
            .iter()
            .map(|f| KSet::from_unsorted(f.clone()))
            .collect();
        Ok(SimplicialComplex::from_generators(n, faces?)?)
    }

    /// The complete bipartite graph with sides {1..m} and {m+1..m+n}.
    pub fn bipartite(m: u32, n: u32) -> Self {
        assert!(m >= 1 && n >= 1);
        let mut faces = Vec::with_capacity((m * n) as usize);
        for a in 1..=m {
            for b in 1..=n {
                faces.push(vec![a, m + b]);
            }
        }
        InstanceFile {
            n: Some(m + n),
            faces,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_roundtrip() {
        let inst = InstanceFile {
            n: Some(6),
            faces: vec![vec![1, 2], vec![3, 5]],
        };
        assert_eq!(InstanceFile::parse_text(&inst.to_text()).unwrap(), inst);
        let bare = InstanceFile {
            n: None,
            faces: vec![vec![2, 4]],
        };
        assert_eq!(InstanceFile::parse_text(&bare.to_text()).unwrap(), bare);
    }

    #[test]
    fn json_roundtrip() {
        let inst = InstanceFile {
            n: Some(4),
            faces: vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]],
        };
        assert_eq!(InstanceFile::parse_json(&inst.to_json()).unwrap(), inst);
    }

    #[test]
    fn comments_and_blank_lines() {
        let raw = "# a comment\n# n=5\n\n1 2\n# another\n4 5\n";
        let inst = InstanceFile::parse_text(raw).unwrap();
        assert_eq!(inst.n, Some(5));
        assert_eq!(inst.faces, vec![vec![1, 2], vec![4, 5]]);
        assert_eq!(inst.ground_set_size().unwrap(), 5);
    }

    #[test]
    fn ground_set_inference() {
        let inst = InstanceFile {
            n: None,
            faces: vec![vec![2, 6], vec![1, 3]],
        };
        assert_eq!(inst.ground_set_size().unwrap(), 6);
        let bad = InstanceFile {
            n: Some(3),
            faces: vec![vec![2, 6]],
        };
        assert!(bad.ground_set_size().is_err());
    }

    #[test]
    fn bipartite_generator() {
        let k22 = InstanceFile::bipartite(2, 2);
        assert_eq!(k22.faces, vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]);
        let k11 = InstanceFile::bipartite(1, 1);
        assert_eq!(k11.faces, vec![vec![1, 2]]);
        let k33 = InstanceFile::bipartite(3, 3);
        assert_eq!(k33.faces.len(), 9);
        assert_eq!(k33.ground_set_size().unwrap(), 6);
    }

    #[test]
    fn non_uniform_rejected_for_hypergraphs_allowed_for_complexes() {
        let inst = InstanceFile {
            n: None,
            faces: vec![vec![1, 2, 3], vec![3, 4]],
        };
        assert!(inst.to_hypergraph().is_err());
        let complex = inst.to_complex().unwrap();
        assert_eq!(complex.dim(), 2);
    }
}
