use petgraph::graph::UnGraph;
use petgraph::graph6::{FromGraph6, ToGraph6};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wiener_core::enumeration::{canonical_code, free_trees};
use wiener_core::io::{read_graph, read_graph6, write_graph, write_graph6, GraphFormat};
use wiener_core::Graph;

fn random_graph(rng: &mut StdRng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn random_tree(rng: &mut StdRng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    Graph::from_edges(n, edges).unwrap().relabel(&perm).unwrap()
}

fn to_petgraph(g: &Graph) -> UnGraph<(), ()> {
    let mut p = UnGraph::<(), ()>::default();
    for _ in 0..g.order() {
        p.add_node(());
    }
    for (u, v) in g.edges() {
        p.add_edge((u as u32).into(), (v as u32).into(), ());
    }
    p
}

fn petgraph_edges(p: &UnGraph<(), ()>) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = p
        .edge_indices()
        .map(|e| {
            let (a, b) = p.edge_endpoints(e).unwrap();
            (a.index().min(b.index()), a.index().max(b.index()))
        })
        .collect();
    edges.sort();
    edges
}

#[test]
fn graph6_agrees_with_petgraph() {
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..500 {
        let g = random_graph(&mut rng, 10);
        let ours = write_graph6(&g);
        assert_eq!(ours, to_petgraph(&g).graph6_string());
        let theirs = UnGraph::<(), ()>::from_graph6_string(ours.clone());
        assert_eq!(theirs.node_count(), g.order());
        assert_eq!(petgraph_edges(&theirs), g.edges().collect::<Vec<_>>());
        assert_eq!(read_graph6(ours.as_bytes()).unwrap(), g);
    }
}

#[test]
fn graph6_agrees_with_petgraph_past_62_vertices() {
    let mut rng = StdRng::seed_from_u64(63);
    for n in [62, 63, 64, 100] {
        let g = random_tree(&mut rng, n);
        assert_eq!(write_graph6(&g), to_petgraph(&g).graph6_string());
    }
}

#[test]
fn random_trees_round_trip() {
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=12);
        let t = random_tree(&mut rng, n);
        for format in [GraphFormat::EdgeList, GraphFormat::Graph6] {
            let back = read_graph(&write_graph(&t, format), format).unwrap();
            assert_eq!(back, t, "{format}");
        }
    }
}

#[test]
fn enumerated_trees_round_trip_up_to_isomorphism() {
    for t in free_trees(9).unwrap() {
        let back = read_graph6(write_graph6(&t).as_bytes()).unwrap();
        assert_eq!(canonical_code(&back).unwrap(), canonical_code(&t).unwrap());
    }
}
