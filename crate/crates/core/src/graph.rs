//! Strongly connected components over adjacency lists (iterative Tarjan).

/// Components in reverse topological order. `comp[v]` gives the component
/// index of `v`. Only vertices reachable from `roots` are visited; the rest
/// keep `usize::MAX`.
pub(crate) struct Sccs {
    pub comp: Vec<usize>,
    pub count: usize,
}

pub(crate) fn tarjan<E>(adj: &[Vec<(usize, E)>], roots: &[usize]) -> Sccs {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    // (vertex, next edge to look at)
    let mut work: Vec<(usize, usize)> = Vec::new();

    for &root in roots {
        if index[root] != UNSEEN {
            continue;
        }
        work.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = work.last_mut() {
            if *edge == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some((w, _)) = adj[v].get(*edge) {
                let w = *w;
                *edge += 1;
                if index[w] == UNSEEN {
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    Sccs { comp, count }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, ())>> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push((b, ()));
        }
        adj
    }

    #[test]
    fn two_cycles_and_a_bridge() {
        let adj = graph(6, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 4), (4, 2), (5, 0)]);
        let s = tarjan(&adj, &[0]);
        assert_eq!(s.count, 2);
        assert_eq!(s.comp[0], s.comp[1]);
        assert_eq!(s.comp[2], s.comp[3]);
        assert_eq!(s.comp[3], s.comp[4]);
        assert_ne!(s.comp[0], s.comp[2]);
        assert_eq!(s.comp[5], usize::MAX);
    }

    #[test]
    fn singletons_and_self_loop() {
        let adj = graph(3, &[(0, 1), (1, 1), (1, 2)]);
        let s = tarjan(&adj, &[0]);
        assert_eq!(s.count, 3);
        // reverse topological: sink first
        assert!(s.comp[2] < s.comp[1] && s.comp[1] < s.comp[0]);
    }

    #[test]
    fn long_chain_does_not_recurse() {
        let n = 200_000;
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).chain([(n - 1, 0)]).collect();
        let s = tarjan(&graph(n, &edges), &[0]);
        assert_eq!(s.count, 1);
    }
}
