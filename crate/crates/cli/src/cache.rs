//! On-disk corpus cache. Each vertex count gets a directory named by a hash
//! of the generator parameters; every graph is an edge-list file named by the
//! hash of its contents, and a manifest lists the files in corpus order.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use sha2::{Digest, Sha256};

use recolour_core::corpus::all_graphs_max_degree;
use recolour_core::{parse_edge_list, to_edge_list, Graph};

const GENERATOR: &str = "connected-graphs-v1";
const MANIFEST: &str = "manifest";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Generated,
    Regenerated(String),
}

fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn default_dir() -> PathBuf {
    std::env::temp_dir().join("recolour-corpus")
}

fn dir_for(root: &Path, n: usize, max_degree: Option<usize>) -> PathBuf {
    let key = match max_degree {
        Some(cap) => format!("{GENERATOR} n={n} max-degree={cap}"),
        None => format!("{GENERATOR} n={n}"),
    };
    root.join(&digest(&key)[..16])
}

/// Connected graphs on `n` vertices, optionally with bounded maximum degree,
/// read from `root` when a complete and uncorrupted copy is there,
/// regenerated and rewritten otherwise.
pub fn connected_graphs_cached(
    root: &Path,
    n: usize,
    max_degree: Option<usize>,
) -> Result<(Vec<Graph>, CacheStatus)> {
    let dir = dir_for(root, n, max_degree);
    let status = if dir.exists() {
        match read_dir(&dir) {
            Ok(graphs) => return Ok((graphs, CacheStatus::Hit)),
            Err(e) => {
                fs::remove_dir_all(&dir)
                    .with_context(|| format!("cannot clear {}", dir.display()))?;
                CacheStatus::Regenerated(format!("{e:#}"))
            }
        }
    } else {
        CacheStatus::Generated
    };
    let graphs: Vec<Graph> = all_graphs_max_degree(n, max_degree.unwrap_or(usize::MAX))
        .into_iter()
        .filter(Graph::is_connected)
        .collect();
    write_dir(&dir, &graphs)?;
    Ok((graphs, status))
}

fn read_dir(dir: &Path) -> Result<Vec<Graph>> {
    let manifest = fs::read_to_string(dir.join(MANIFEST)).context("manifest missing")?;
    manifest
        .lines()
        .map(|name| {
            let text = fs::read_to_string(dir.join(format!("{name}.edges")))
                .with_context(|| format!("graph {name} missing"))?;
            if digest(&text) != name {
                bail!("graph {name} does not match its hash");
            }
            parse_edge_list(&text).with_context(|| format!("graph {name} does not parse"))
        })
        .collect()
}

fn write_dir(dir: &Path, graphs: &[Graph]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let mut manifest = String::new();
    for g in graphs {
        let text = to_edge_list(g);
        let name = digest(&text);
        fs::write(dir.join(format!("{name}.edges")), &text)?;
        manifest.push_str(&name);
        manifest.push('\n');
    }
    // The manifest goes last so an interrupted write reads as corrupt.
    fs::write(dir.join(MANIFEST), manifest)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let root = tempfile::tempdir().unwrap();
        let (first, status) = connected_graphs_cached(root.path(), 4, None).unwrap();
        assert_eq!((first.len(), status), (6, CacheStatus::Generated));
        let (again, status) = connected_graphs_cached(root.path(), 4, None).unwrap();
        assert_eq!((again, status), (first.clone(), CacheStatus::Hit));

        let dir = dir_for(root.path(), 4, None);
        let victim = fs::read_dir(&dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .find(|p| p.extension().is_some_and(|x| x == "edges"))
            .unwrap();
        fs::write(&victim, "4 1\n0 1\n").unwrap();
        let (repaired, status) = connected_graphs_cached(root.path(), 4, None).unwrap();
        assert_eq!(repaired, first);
        assert!(matches!(status, CacheStatus::Regenerated(_)));

        let (capped, status) = connected_graphs_cached(root.path(), 4, Some(2)).unwrap();
        assert_eq!((capped.len(), status), (2, CacheStatus::Generated));
    }
}
