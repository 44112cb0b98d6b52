use std::collections::BTreeSet;

use geodetic::apollonian::{apollonian, apollonian_witness, dual_map, simplicial_is_last_level};
use geodetic::sierpinski::sierpinski;
use geodetic::verify_witness;

fn pow3(k: usize) -> usize {
    3usize.pow(k as u32)
}

#[test]
fn sierpinski_invariants() {
    for n in 1..=6 {
        let s = sierpinski(n).unwrap();
        let g = &s.graph;
        assert_eq!(g.n(), pow3(n));
        assert_eq!(g.edge_count(), 3 * (pow3(n) - 1) / 2);
        assert!(g.is_connected());
        assert_eq!(g.diameter(), Some((1 << n) - 1));

        // Extremal vertices have degree 2, the rest degree 3.
        for v in 0..g.n() {
            let expected = if s.extremal.contains(&v) { 2 } else { 3 };
            assert_eq!(g.degree(v), expected);
        }

        // Euler: V - E + F = 2 with F = inner faces + outer face.
        let faces = s.inner_faces().unwrap();
        assert_eq!(g.n() + faces.len() + 1, g.edge_count() + 2);

        // Horizontal edges are exactly the edges whose ends share a height.
        let horizontal: BTreeSet<[usize; 2]> = s
            .horizontal_edges()
            .iter()
            .map(|h| {
                let [a, b] = h.endpoints;
                [a.min(b), a.max(b)]
            })
            .collect();
        let level: BTreeSet<[usize; 2]> = g
            .edges()
            .filter(|&(u, v)| s.height(u) == s.height(v))
            .map(|(u, v)| [u, v])
            .collect();
        assert_eq!(horizontal, level);

        // Each face sits on its own horizontal edge, which lies on its boundary.
        let used: BTreeSet<usize> = faces.iter().map(|f| f.sits_on).collect();
        assert_eq!(used.len(), faces.len());
        assert_eq!(faces.len(), s.horizontal_edges().len());
        for f in &faces {
            let [a, b] = s.horizontal_edges()[f.sits_on].endpoints;
            assert!(f.boundary.contains(&a) && f.boundary.contains(&b));
            let k = f.boundary.len();
            for i in 0..k {
                assert!(g.has_edge(f.boundary[i], f.boundary[(i + 1) % k]));
            }
        }
    }
}

#[test]
fn apollonian_invariants() {
    for r in 2..=5 {
        let net = apollonian(r).unwrap();
        let g = &net.graph;
        let n = 3 + (pow3(r + 1) - 1) / 2;
        assert_eq!(g.n(), n);
        // Planar triangulation.
        assert_eq!(g.edge_count(), 3 * n - 6);
        assert_eq!(net.faces.len() + 1, 2 * n - 4);
        assert!(simplicial_is_last_level(&net));
        for k in 0..=r {
            assert_eq!(net.level_range(k).len(), pow3(k));
        }
        for v in net.last_level() {
            assert_eq!(g.degree(v), 3);
        }

        let map = dual_map(&net).unwrap();
        assert_eq!(map.vertex_map.len(), pow3(r));
        let w = apollonian_witness(&net).unwrap();
        assert_eq!(w.set, net.last_level());
        assert_eq!(w.geodesics.len(), (pow3(r) - 1) / 2 + 3);
        let last = net.last_level();
        for (i, &x) in last.iter().enumerate() {
            assert!(last[i + 1..].iter().all(|&y| !g.has_edge(x, y)));
        }
        assert!(verify_witness(g, &w).is_ok());
    }
}

#[test]
fn apollonian_small_levels() {
    let a0 = apollonian(0).unwrap();
    assert_eq!(a0.graph.n(), 4);
    assert!(a0.graph.is_clique(&[0, 1, 2, 3]));
    let a1 = apollonian(1).unwrap();
    assert_eq!(a1.graph.n(), 7);
    let w = apollonian_witness(&a1).unwrap();
    assert_eq!(w.size(), 4);
    assert!(verify_witness(&a1.graph, &w).is_ok());
}
