//! Weighted dual graphs of curve configurations: vertices carry
//! self-intersections, edges carry intersection multiplicities. Supports
//! the intersection matrix, exact determinants, and iterated contraction
//! of (-1)-vertices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub self_intersection: Rational,
}

/// Dual graph of a configuration of curves. Parallel edges merge by
/// summing multiplicities; loops are not allowed.
#[derive(Debug, Clone, Default)]
pub struct ResolutionGraph {
    vertices: Vec<Vertex>,
    edges: BTreeMap<(usize, usize), i64>,
}

impl ResolutionGraph {
    pub fn new() -> ResolutionGraph {
        ResolutionGraph::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, self_intersection: Rational) -> usize {
        let name = name.into();
        assert!(self.vertices.iter().all(|v| v.name != name), "duplicate vertex name {name}");
        self.vertices.push(Vertex { name, self_intersection });
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize, multiplicity: i64) {
        assert!(a != b, "loops are not part of a dual graph");
        assert!(a < self.vertices.len() && b < self.vertices.len());
        assert!(multiplicity > 0);
        *self.edges.entry((a.min(b), a.max(b))).or_insert(0) += multiplicity;
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Edges as (low index, high index, multiplicity), sorted.
    pub fn edges(&self) -> Vec<(usize, usize, i64)> {
        self.edges.iter().map(|(&(a, b), &m)| (a, b, m)).collect()
    }

    pub fn edge_multiplicity(&self, a: usize, b: usize) -> i64 {
        self.edges.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    /// Symmetric intersection matrix in vertex order. Fails when a
    /// self-intersection is not an integer.
    pub fn intersection_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.vertices.len();
        let mut mat = vec![vec![0i64; n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            let d = v
                .self_intersection
                .to_integer()
                .ok_or(Error::NonIntegralSelfIntersection(v.self_intersection))?;
            mat[i][i] = i64::try_from(d).expect("self-intersection fits in i64");
        }
        for (&(a, b), &m) in &self.edges {
            mat[a][b] = m;
            mat[b][a] = m;
        }
        Ok(mat)
    }

    /// Absolute value of the intersection matrix determinant.
    pub fn det_abs(&self) -> Result<u64> {
        let det = det_i128(&self.intersection_matrix()?);
        Ok(u64::try_from(det.unsigned_abs()).expect("determinant fits in u64"))
    }
}

/// Determinant by the Bareiss fraction-free elimination; every division is
/// exact. The empty matrix has determinant 1.
pub(crate) fn det_i128(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> =
        rows.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

#[derive(Debug, Clone)]
pub enum BlowDownOutcome {
    /// The whole configuration contracts to nothing; `sequence` lists the
    /// vertices in contraction order.
    Contracted { sequence: Vec<String> },
    /// Contraction stalls with no (-1)-vertex left. Carries the absolute
    /// determinant of the original intersection matrix, which contraction
    /// preserves, and the graph at the point it stalled.
    Obstructed { det_abs: u64, stuck: ResolutionGraph },
}

/// Contract (-1)-vertices until none remain, lexicographically least name
/// first. Contracting a vertex adds the squared edge multiplicity to each
/// neighbor's self-intersection and the product of multiplicities to each
/// pair of neighbors.
pub fn blow_down(graph: &ResolutionGraph) -> Result<BlowDownOutcome> {
    let original_det = graph.det_abs()?;
    let matrix = graph.intersection_matrix()?;

    let n = graph.vertex_count();
    let mut selves: Vec<i128> = (0..n).map(|i| matrix[i][i] as i128).collect();
    let mut mult: Vec<Vec<i128>> =
        matrix.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    for (i, row) in mult.iter_mut().enumerate() {
        row[i] = 0;
    }
    let mut alive: Vec<bool> = vec![true; n];
    let mut sequence = Vec::new();

    loop {
        let next = (0..n)
            .filter(|&i| alive[i] && selves[i] == -1)
            .min_by(|&a, &b| graph.vertex(a).name.cmp(&graph.vertex(b).name));
        let Some(v) = next else { break };
        let neighbors: Vec<usize> =
            (0..n).filter(|&j| alive[j] && j != v && mult[v][j] != 0).collect();
        for &a in &neighbors {
            selves[a] += mult[v][a] * mult[v][a];
        }
        for (idx, &a) in neighbors.iter().enumerate() {
            for &b in &neighbors[idx + 1..] {
                let extra = mult[v][a] * mult[v][b];
                mult[a][b] += extra;
                mult[b][a] += extra;
            }
        }
        for row in mult.iter_mut() {
            row[v] = 0;
        }
        mult[v].fill(0);
        alive[v] = false;
        sequence.push(graph.vertex(v).name.clone());
    }

    if alive.iter().all(|&a| !a) {
        return Ok(BlowDownOutcome::Contracted { sequence });
    }

    let mut stuck = ResolutionGraph::new();
    let survivors: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let mut new_index = vec![usize::MAX; n];
    for &i in &survivors {
        new_index[i] =
            stuck.add_vertex(graph.vertex(i).name.clone(), Rational::from_integer(selves[i]));
    }
    for (idx, &a) in survivors.iter().enumerate() {
        for &b in &survivors[idx + 1..] {
            if mult[a][b] != 0 {
                stuck.add_edge(
                    new_index[a],
                    new_index[b],
                    i64::try_from(mult[a][b]).expect("multiplicity fits in i64"),
                );
            }
        }
    }
    debug_assert_eq!(stuck.det_abs()?, original_det, "contraction preserves the determinant");
    Ok(BlowDownOutcome::Obstructed { det_abs: original_det, stuck })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(selves: &[i64]) -> ResolutionGraph {
        let mut g = ResolutionGraph::new();
        let zt = g.add_vertex("Zt", Rational::from_integer(selves[0] as i128));
        let mut prev = zt;
        for (k, &s) in selves[1..].iter().enumerate() {
            let v = g.add_vertex(format!("E{}", k + 1), Rational::from_integer(s as i128));
            g.add_edge(prev, v, 1);
            prev = v;
        }
        g
    }

    fn expect_contracted(g: &ResolutionGraph) -> Vec<String> {
        match blow_down(g).unwrap() {
            BlowDownOutcome::Contracted { sequence } => sequence,
            BlowDownOutcome::Obstructed { det_abs, .. } => {
                panic!("expected full contraction, stalled with |det| = {det_abs}")
            }
        }
    }

    #[test]
    fn lone_minus_one_contracts() {
        assert_eq!(expect_contracted(&chain(&[-1])), ["Zt"]);
    }

    #[test]
    fn chain_of_length_two_contracts() {
        assert_eq!(expect_contracted(&chain(&[-1, -2])), ["Zt", "E1"]);
    }

    #[test]
    fn chain_of_length_three_contracts() {
        assert_eq!(expect_contracted(&chain(&[-1, -2, -2])), ["Zt", "E1", "E2"]);
    }

    #[test]
    fn minus_three_chain_obstructs() {
        let g = chain(&[-1, -3]);
        match blow_down(&g).unwrap() {
            BlowDownOutcome::Obstructed { det_abs, stuck } => {
                assert_eq!(det_abs, 2);
                assert_eq!(stuck.vertex_count(), 1);
                assert_eq!(stuck.vertex(0).name, "E1");
                assert_eq!(stuck.vertex(0).self_intersection, Rational::from_integer(-2));
            }
            BlowDownOutcome::Contracted { .. } => panic!("a (-2)-vertex cannot contract"),
        }
    }

    #[test]
    fn star_with_no_minus_one_obstructs_immediately() {
        let mut g = ResolutionGraph::new();
        let zt = g.add_vertex("Zt", Rational::from_integer(-4));
        for (k, s) in [-3i64, -3, -2, -2].iter().enumerate() {
            let v = g.add_vertex(format!("E{}", k + 1), Rational::from_integer(*s as i128));
            g.add_edge(zt, v, 1);
        }
        match blow_down(&g).unwrap() {
            BlowDownOutcome::Obstructed { det_abs, stuck } => {
                assert_eq!(det_abs, 84);
                assert_eq!(stuck.vertex_count(), 5);
            }
            BlowDownOutcome::Contracted { .. } => panic!("no (-1)-vertex to contract"),
        }
    }

    #[test]
    fn multiplicity_two_edge_contracts_in_two_steps() {
        let mut g = ResolutionGraph::new();
        let zt = g.add_vertex("Zt", Rational::from_integer(-1));
        let e = g.add_vertex("E1", Rational::from_integer(-5));
        g.add_edge(zt, e, 2);
        assert_eq!(g.det_abs().unwrap(), 1);
        assert_eq!(expect_contracted(&g), ["Zt", "E1"]);
    }

    #[test]
    fn contraction_spawns_edges_between_neighbors() {
        // Two (-2)-vertices hanging off one (-1): contracting the center
        // joins them and raises both to -1.
        let mut g = ResolutionGraph::new();
        let c = g.add_vertex("Zt", Rational::from_integer(-1));
        let a = g.add_vertex("E1", Rational::from_integer(-2));
        let b = g.add_vertex("E2", Rational::from_integer(-2));
        g.add_edge(c, a, 1);
        g.add_edge(c, b, 1);
        assert_eq!(g.det_abs().unwrap(), 0);
        match blow_down(&g).unwrap() {
            BlowDownOutcome::Obstructed { det_abs, stuck } => {
                assert_eq!(det_abs, 0);
                // E1 and E2 became a (-1)-pair joined by an edge, then one
                // contraction turns the other into a 0-vertex.
                assert_eq!(stuck.vertex_count(), 1);
                assert_eq!(stuck.vertex(0).self_intersection, Rational::ZERO);
            }
            BlowDownOutcome::Contracted { sequence } => {
                panic!("0-determinant graph cannot vanish, got {sequence:?}")
            }
        }
    }

    #[test]
    fn parallel_edges_merge() {
        let mut g = ResolutionGraph::new();
        let a = g.add_vertex("Zt", Rational::from_integer(-2));
        let b = g.add_vertex("E1", Rational::from_integer(-2));
        g.add_edge(a, b, 1);
        g.add_edge(b, a, 1);
        assert_eq!(g.edge_multiplicity(a, b), 2);
        assert_eq!(g.edges(), [(0, 1, 2)]);
        assert_eq!(g.det_abs().unwrap(), 0);
    }

    #[test]
    fn non_integral_self_intersection_is_rejected() {
        let mut g = ResolutionGraph::new();
        g.add_vertex("Zt", Rational::new(-7, 3));
        assert_eq!(
            g.intersection_matrix(),
            Err(Error::NonIntegralSelfIntersection(Rational::new(-7, 3)))
        );
        assert!(blow_down(&g).is_err());
    }

    #[test]
    fn hirzebruch_jung_chain_determinant_is_m() {
        use crate::factor::gcd_u64;
        use crate::weights::hj_expand;
        for m in 2..=30u64 {
            for q in 1..m {
                if gcd_u64(m, q) != 1 {
                    continue;
                }
                let selves = hj_expand(m, q);
                let mut g = ResolutionGraph::new();
                let mut prev = None;
                for (k, &s) in selves.iter().enumerate() {
                    let v = g.add_vertex(format!("E{}", k + 1), Rational::from_integer(s as i128));
                    if let Some(p) = prev {
                        g.add_edge(p, v, 1);
                    }
                    prev = Some(v);
                }
                assert_eq!(g.det_abs().unwrap(), m, "m = {m}, q = {q}");
            }
        }
    }

    #[test]
    fn contractible_graphs_are_negative_definite() {
        for selves in [&[-1i64][..], &[-1, -2], &[-1, -2, -2]] {
            let mat = chain(selves).intersection_matrix().unwrap();
            for k in 1..=mat.len() {
                let minor: Vec<Vec<i64>> = mat[..k].iter().map(|row| row[..k].to_vec()).collect();
                let d = det_i128(&minor);
                let expected_sign = if k % 2 == 0 { 1 } else { -1 };
                assert_eq!(d.signum() as i64, expected_sign, "minor {k} of {selves:?}");
            }
        }
    }
}
