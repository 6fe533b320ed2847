//! Exact clique and independence numbers for small graphs.

use thiserror::Error;

use crate::graph::Graph;

/// Largest order accepted by the exact searches.
pub const EXACT_SEARCH_CAP: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("exact search is capped at {cap} vertices, graph has {order}")]
pub struct CapExceeded {
    pub order: usize,
    pub cap: usize,
}

struct MaxCliques<'a> {
    adj: &'a [u64],
    best: usize,
    found: Vec<u64>,
}

impl MaxCliques<'_> {
    // Bron–Kerbosch with pivoting; keeps every clique of the best size seen.
    fn expand(&mut self, r: u64, mut p: u64, mut x: u64) {
        let size = r.count_ones() as usize;
        if p == 0 {
            if x == 0 {
                if size > self.best {
                    self.best = size;
                    self.found.clear();
                }
                if size == self.best {
                    self.found.push(r);
                }
            }
            return;
        }
        if size + (p.count_ones() as usize) < self.best {
            return;
        }
        let pivot = {
            let ux = p | x;
            let mut best_u = ux.trailing_zeros() as usize;
            let mut best_cnt = 0;
            let mut rest = ux;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let cnt = (p & self.adj[u]).count_ones();
                if cnt > best_cnt {
                    best_cnt = cnt;
                    best_u = u;
                }
            }
            best_u
        };
        let mut cand = p & !self.adj[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let bit = 1u64 << v;
            self.expand(r | bit, p & self.adj[v], x & self.adj[v]);
            p &= !bit;
            x |= bit;
        }
    }
}

fn check_cap(g: &Graph) -> Result<(), CapExceeded> {
    if g.order() > EXACT_SEARCH_CAP {
        return Err(CapExceeded {
            order: g.order(),
            cap: EXACT_SEARCH_CAP,
        });
    }
    Ok(())
}

fn all_maximum_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let adj: Vec<u64> = (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | (1 << u)))
        .collect();
    let all = if g.order() == 64 { u64::MAX } else { (1u64 << g.order()) - 1 };
    let mut search = MaxCliques {
        adj: &adj,
        best: 0,
        found: Vec::new(),
    };
    search.expand(0, all, 0);
    let mut cliques: Vec<Vec<usize>> = search
        .found
        .into_iter()
        .map(|mask| (0..g.order()).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    cliques.sort();
    cliques
}

/// The clique number together with every clique attaining it, each sorted,
/// listed in lexicographic order.
pub fn clique_number(g: &Graph) -> Result<(usize, Vec<Vec<usize>>), CapExceeded> {
    check_cap(g)?;
    let cliques = all_maximum_cliques(g);
    Ok((cliques[0].len(), cliques))
}

/// The independence number and the lexicographically first maximum
/// independent set.
pub fn independence_number(g: &Graph) -> Result<(usize, Vec<usize>), CapExceeded> {
    check_cap(g)?;
    let mut sets = all_maximum_cliques(&g.complement());
    let first = sets.swap_remove(0);
    Ok((first.len(), first))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;
    use proptest::prelude::*;

    fn family(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    // Exhaustive oracle over all vertex subsets.
    fn brute(g: &Graph) -> (usize, Vec<Vec<usize>>, usize) {
        let n = g.order();
        let mut best_clique = 0;
        let mut cliques = Vec::new();
        let mut best_ind = 0;
        for mask in 1u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let pairs = || vs.iter().flat_map(|&u| vs.iter().map(move |&v| (u, v))).filter(|(u, v)| u < v);
            if pairs().all(|(u, v)| g.has_edge(u, v)) {
                if vs.len() > best_clique {
                    best_clique = vs.len();
                    cliques.clear();
                }
                if vs.len() == best_clique {
                    cliques.push(vs.clone());
                }
            }
            if pairs().all(|(u, v)| !g.has_edge(u, v)) {
                best_ind = best_ind.max(vs.len());
            }
        }
        cliques.sort();
        (best_clique, cliques, best_ind)
    }

    #[test]
    fn named_graphs() {
        let k23 = family("kbip:2,3");
        assert_eq!(clique_number(&k23).unwrap().0, 2);
        assert_eq!(independence_number(&k23).unwrap(), (3, vec![2, 3, 4]));
        let c5 = family("cycle:5");
        assert_eq!(clique_number(&c5).unwrap().0, 2);
        assert_eq!(clique_number(&c5).unwrap().1.len(), 5);
        assert_eq!(independence_number(&c5).unwrap().0, 2);
        let cs = family("split:2,5");
        let (w, all) = clique_number(&cs).unwrap();
        assert_eq!(w, 3);
        assert_eq!(all, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]);
        assert_eq!(independence_number(&cs).unwrap().0, 3);
        assert_eq!(brute(&cs).0, 3);
        assert_eq!(brute(&cs).2, 3);
        assert_eq!(clique_number(&Graph::new(1, []).unwrap()).unwrap(), (1, vec![vec![0]]));
    }

    #[test]
    fn cap_is_enforced() {
        let g = family("path:41");
        assert_eq!(clique_number(&g), Err(CapExceeded { order: 41, cap: 40 }));
        assert!(independence_number(&g).is_err());
        assert!(independence_number(&family("path:40")).is_ok());
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..10, bits in any::<u64>()) {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits >> (k % 64) & 1 == 1 {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let g = Graph::new(n, edges).unwrap();
            let (w, cl, t) = brute(&g);
            prop_assert_eq!(clique_number(&g).unwrap(), (w, cl));
            prop_assert_eq!(independence_number(&g).unwrap().0, t);
        }
    }
}
