//! Vertex partitions in canonical form.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Disjoint vertex blocks. Canonical form: members ascending, blocks ordered
/// by their minimum member, so structural equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Canonicalizes arbitrary disjoint blocks; empty blocks are dropped.
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Partition {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .filter(|b| !b.is_empty())
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_unstable_by_key(|b| b[0]);
        debug_assert!(
            {
                let top = blocks.iter().flatten().max().map_or(0, |&v| v + 1);
                let mut seen = vec![false; top];
                blocks
                    .iter()
                    .flatten()
                    .all(|&v| !std::mem::replace(&mut seen[v], true))
            },
            "blocks overlap"
        );
        Partition { blocks }
    }

    /// Groups the vertices of `ground` (ascending) by `label`.
    pub fn from_labels<L: Copy + Eq + std::hash::Hash>(
        ground: impl IntoIterator<Item = usize>,
        label: impl Fn(usize) -> L,
    ) -> Partition {
        let mut index: HashMap<L, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut last = None;
        let mut sorted = true;
        for v in ground {
            if let Some(p) = last {
                if v <= p {
                    sorted = false;
                }
            }
            last = Some(v);
            let id = *index.entry(label(v)).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[id].push(v);
        }
        if sorted {
            Partition { blocks }
        } else {
            Partition::from_blocks(blocks)
        }
    }

    /// Groups `0..labels.len()` by dense labels; `usize::MAX` entries are left out.
    pub fn from_dense_labels(labels: &[usize]) -> Partition {
        let k = labels
            .iter()
            .filter(|&&l| l != usize::MAX)
            .map(|&l| l + 1)
            .max()
            .unwrap_or(0);
        let mut slot = vec![usize::MAX; k];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            if l == usize::MAX {
                continue;
            }
            if slot[l] == usize::MAX {
                slot[l] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[l]].push(v);
        }
        Partition { blocks }
    }

    pub fn single(ground: impl IntoIterator<Item = usize>) -> Partition {
        Partition::from_blocks(vec![ground.into_iter().collect()])
    }

    pub fn singletons(ground: impl IntoIterator<Item = usize>) -> Partition {
        Partition::from_blocks(ground.into_iter().map(|v| vec![v]).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn into_blocks(self) -> Vec<Vec<usize>> {
        self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Ground set, ascending.
    pub fn ground(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.blocks.iter().flatten().copied().collect();
        g.sort_unstable();
        g
    }

    pub fn ground_len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every vertex below `n`; `usize::MAX` outside the ground set.
    pub fn labels(&self, n: usize) -> Vec<usize> {
        let mut lab = vec![usize::MAX; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                lab[v] = i;
            }
        }
        lab
    }

    /// Mutual refinement: nonempty pairwise intersections of blocks.
    pub fn refine(&self, other: &Partition) -> Result<Partition> {
        let n = self
            .max_vertex()
            .max(other.max_vertex())
            .map_or(0, |m| m + 1);
        let lp = self.labels(n);
        let lq = other.labels(n);
        let ground = self.ground();
        if ground.len() != other.ground_len() || ground.iter().any(|&v| lq[v] == usize::MAX) {
            return Err(Error::GroundSetMismatch);
        }
        Ok(refine_by_labels(&ground, &lp, &lq))
    }

    /// True if every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        let n = self
            .max_vertex()
            .max(coarser.max_vertex())
            .map_or(0, |m| m + 1);
        let lq = coarser.labels(n);
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&v| lq[v] != usize::MAX && lq[v] == lq[b[0]]))
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.blocks
            .iter()
            .any(|blk| blk.binary_search(&a).is_ok() && blk.binary_search(&b).is_ok())
    }

    /// Renames every vertex through `map` and re-canonicalizes.
    pub fn mapped(&self, map: impl Fn(usize) -> usize) -> Partition {
        Partition::from_blocks(
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&v| map(v)).collect())
                .collect(),
        )
    }

    /// Disjoint union of partitions over disjoint ground sets.
    pub fn union_disjoint(parts: impl IntoIterator<Item = Partition>) -> Partition {
        Partition::from_blocks(parts.into_iter().flat_map(|p| p.blocks).collect())
    }

    /// Restriction to the vertices accepted by `keep`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Partition {
        Partition::from_blocks(
            self.blocks
                .iter()
                .map(|b| b.iter().copied().filter(|&v| keep(v)).collect())
                .collect(),
        )
    }

    fn max_vertex(&self) -> Option<usize> {
        self.blocks.iter().filter_map(|b| b.last().copied()).max()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.blocks).expect("serializable")
    }

    /// One block per line, members separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.blocks {
            let line: Vec<String> = b.iter().map(|v| v.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Refines by two label arrays over an ascending ground set, linear in its size.
pub(crate) fn refine_by_labels(ground: &[usize], lp: &[usize], lq: &[usize]) -> Partition {
    // Vertices grouped first by p-label, then within a p-block by q-label
    // using a stamp array keyed by q-label.
    let kq = ground.iter().map(|&v| lq[v] + 1).max().unwrap_or(0);
    let mut stamp = vec![usize::MAX; kq];
    let mut slot = vec![0usize; kq];
    let kp = ground.iter().map(|&v| lp[v] + 1).max().unwrap_or(0);
    let mut by_p: Vec<Vec<usize>> = vec![Vec::new(); kp];
    for &v in ground {
        by_p[lp[v]].push(v);
    }
    let mut new_label = vec![usize::MAX; lp.len()];
    let mut next = 0;
    for (pi, members) in by_p.iter().enumerate() {
        for &v in members {
            let q = lq[v];
            if stamp[q] != pi {
                stamp[q] = pi;
                slot[q] = next;
                next += 1;
            }
            new_label[v] = slot[q];
        }
    }
    // Ascending scan restores canonical block order.
    let mut order = vec![usize::MAX; next];
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(next);
    for &v in ground {
        let l = new_label[v];
        if order[l] == usize::MAX {
            order[l] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[order[l]].push(v);
    }
    Partition { blocks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(blocks: &[&[usize]]) -> Partition {
        Partition::from_blocks(blocks.iter().map(|b| b.to_vec()).collect())
    }

    #[test]
    fn refine_examples() {
        assert_eq!(
            p(&[&[1, 2, 3]]).refine(&p(&[&[1, 2], &[3]])).unwrap(),
            p(&[&[1, 2], &[3]])
        );
        let q = p(&[&[1, 2], &[3, 4]]);
        assert_eq!(q.refine(&q).unwrap(), q);
        assert_eq!(
            q.refine(&p(&[&[1, 3], &[2, 4]])).unwrap(),
            p(&[&[1], &[2], &[3], &[4]])
        );
    }

    #[test]
    fn refine_rejects_mismatch() {
        assert_eq!(
            p(&[&[1, 2]]).refine(&p(&[&[1, 3]])),
            Err(Error::GroundSetMismatch)
        );
    }

    #[test]
    fn canonical_order() {
        let a = p(&[&[5, 3], &[4, 0]]);
        assert_eq!(a.blocks(), &[vec![0, 4], vec![3, 5]]);
        assert_eq!(a.to_json(), "[[0,4],[3,5]]");
    }
}
