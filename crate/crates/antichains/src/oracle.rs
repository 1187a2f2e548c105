//! Independent ground truth on small instances: exhaustive rank enumeration,
//! explicit poset construction, and maximum-antichain computation via
//! Dilworth's theorem (minimum chain cover by bipartite matching).
//!
//! Nothing here shares code with the counting formulas or the convolution
//! machinery; that independence is the point. The Dilworth route in
//! particular does not assume the Sperner property, so it verifies it.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::numeric::ExactInteger;
use crate::rank::{max_rank_size, median_rank, RankProfile, ShapeVector};
use crate::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;
pub const DEFAULT_DILWORTH_CAP: u64 = 2000;

/// Explicit small chain product: all coordinate tuples with componentwise
/// dominance.
#[derive(Debug, Clone)]
pub struct PosetInstance {
    shape: ShapeVector,
    elements: Vec<Vec<u32>>,
}

/// A set of pairwise incomparable coordinate tuples.
#[derive(Debug, Clone)]
pub struct AntichainWitness {
    elements: Vec<Vec<u32>>,
}

/// `x` is dominated by `y` componentwise.
pub fn dominates(x: &[u32], y: &[u32]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b)
}

fn check_cap(shape: &ShapeVector, cap: u64) -> Result<u64> {
    let size = shape.product();
    match size.to_u64() {
        Some(s) if s <= cap => Ok(s),
        _ => Err(Error::CapExceeded { size, cap }),
    }
}

/// Iterate the full Cartesian product in odometer order.
fn for_each_tuple(shape: &ShapeVector, mut f: impl FnMut(&[u32])) {
    let bounds = shape.entries();
    let mut tuple = vec![1u32; bounds.len()];
    loop {
        f(&tuple);
        let mut pos = bounds.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if tuple[pos] < bounds[pos] {
                tuple[pos] += 1;
                for t in &mut tuple[pos + 1..] {
                    *t = 1;
                }
                break;
            }
        }
    }
}

impl PosetInstance {
    pub fn new(shape: ShapeVector, cap: u64) -> Result<Self> {
        let size = check_cap(&shape, cap)? as usize;
        let mut elements = Vec::with_capacity(size);
        for_each_tuple(&shape, |t| elements.push(t.to_vec()));
        Ok(PosetInstance { shape, elements })
    }

    pub fn shape(&self) -> &ShapeVector {
        &self.shape
    }

    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

impl AntichainWitness {
    pub fn elements(&self) -> &[Vec<u32>] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Pairwise incomparability under componentwise dominance.
    pub fn verify(&self) -> bool {
        for (i, x) in self.elements.iter().enumerate() {
            for y in &self.elements[i + 1..] {
                if dominates(x, y) || dominates(y, x) {
                    return false;
                }
            }
        }
        true
    }

    /// JSON form: a list of integer tuples.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.elements).expect("witness serialization cannot fail")
    }
}

/// Exact histogram of coordinate sums over the full Cartesian product.
/// The brute-force counterpart of `rank::product_profile`.
pub fn enumerate_rank_profile(shape: &ShapeVector, cap: u64) -> Result<RankProfile> {
    check_cap(shape, cap)?;
    let min_rank = shape.n() as i64;
    let width = (shape.sum() - min_rank + 1) as usize;
    let mut counts = vec![BigInt::from(0u32); width];
    for_each_tuple(shape, |t| {
        let r: i64 = t.iter().map(|&x| x as i64).sum();
        counts[(r - min_rank) as usize] += 1u32;
    });
    Ok(RankProfile::new(min_rank, counts))
}

/// Hopcroft-Karp maximum matching on a bipartite graph given as left
/// adjacency lists. Returns (matching size, match_left, match_right).
struct HopcroftKarp<'a> {
    adj: &'a [Vec<usize>],
    n_right: usize,
    match_left: Vec<Option<usize>>,
    match_right: Vec<Option<usize>>,
    dist: Vec<u32>,
}

impl<'a> HopcroftKarp<'a> {
    const INF: u32 = u32::MAX;

    fn new(adj: &'a [Vec<usize>], n_right: usize) -> Self {
        HopcroftKarp {
            adj,
            n_right,
            match_left: vec![None; adj.len()],
            match_right: vec![None; n_right],
            dist: vec![Self::INF; adj.len()],
        }
    }

    fn bfs(&mut self) -> bool {
        let mut queue = std::collections::VecDeque::new();
        for u in 0..self.adj.len() {
            if self.match_left[u].is_none() {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = Self::INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                match self.match_right[v] {
                    None => found = true,
                    Some(w) if self.dist[w] == Self::INF => {
                        self.dist[w] = self.dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        for idx in 0..self.adj[u].len() {
            let v = self.adj[u][idx];
            let next = self.match_right[v];
            let ok = match next {
                None => true,
                Some(w) => self.dist[w] == self.dist[u] + 1 && self.dfs(w),
            };
            if ok {
                self.match_left[u] = Some(v);
                self.match_right[v] = Some(u);
                return true;
            }
        }
        self.dist[u] = Self::INF;
        false
    }

    fn run(mut self) -> (usize, Vec<Option<usize>>, Vec<Option<usize>>) {
        let mut size = 0;
        while self.bfs() {
            for u in 0..self.adj.len() {
                if self.match_left[u].is_none() && self.dfs(u) {
                    size += 1;
                }
            }
        }
        let _ = self.n_right;
        (size, self.match_left, self.match_right)
    }
}

/// Maximum antichain by Dilworth duality: split every element into a left
/// and a right copy, connect `x_L -> y_R` for every strict dominance
/// `x < y`, and match. The minimum chain cover has `|P| - |matching|`
/// chains, which bounds every antichain; a Koenig vertex cover yields a
/// witness of exactly that size.
pub fn max_antichain_dilworth(
    poset: &PosetInstance,
    _cap: u64,
) -> Result<(ExactInteger, AntichainWitness)> {
    let elems = poset.elements();
    let n = elems.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            if i != j && dominates(x, y) {
                adj[i].push(j);
            }
        }
    }
    let (matching, match_left, match_right) = HopcroftKarp::new(&adj, n).run();

    // Koenig: alternating reachability from unmatched left vertices.
    let mut left_reached = vec![false; n];
    let mut right_reached = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| match_left[u].is_none()).collect();
    for &u in &stack {
        left_reached[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !right_reached[v] {
                right_reached[v] = true;
                if let Some(w) = match_right[v] {
                    if !left_reached[w] {
                        left_reached[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
    }
    // cover = (L not reached) + (R reached); antichain = both copies uncovered
    let witness_elems: Vec<Vec<u32>> = (0..n)
        .filter(|&i| left_reached[i] && !right_reached[i])
        .map(|i| elems[i].clone())
        .collect();
    let witness = AntichainWitness { elements: witness_elems };
    let size = n - matching;
    if witness.size() != size {
        return Err(Error::UnsupportedParameter(format!(
            "internal: witness size {} does not match Dilworth bound {}",
            witness.size(),
            size
        )));
    }
    if !witness.verify() {
        return Err(Error::UnsupportedParameter(
            "internal: extracted witness is not an antichain".into(),
        ));
    }
    Ok((BigInt::from(size), witness))
}

/// Outcome of checking the Sperner property on one instance.
#[derive(Debug, Clone)]
pub struct SpernerReport {
    pub shape: ShapeVector,
    pub dilworth_size: ExactInteger,
    pub median_rank_size: ExactInteger,
    pub sizes_equal: bool,
    pub median_slice_is_antichain: bool,
    pub witness: AntichainWitness,
}

/// Verifies on an explicit instance that the median-rank slice is an
/// antichain and that its size equals the true maximum antichain size
/// from the Dilworth oracle.
pub fn sperner_witness_check(shape: &ShapeVector, cap: u64) -> Result<SpernerReport> {
    let poset = PosetInstance::new(shape.clone(), cap)?;
    let (dilworth_size, witness) = max_antichain_dilworth(&poset, cap)?;
    let median_size = max_rank_size(shape);
    let h = median_rank(shape);
    let slice: Vec<Vec<u32>> = poset
        .elements()
        .iter()
        .filter(|t| t.iter().map(|&x| x as i64).sum::<i64>() == h)
        .cloned()
        .collect();
    let slice_witness = AntichainWitness { elements: slice };
    Ok(SpernerReport {
        shape: shape.clone(),
        sizes_equal: dilworth_size == median_size,
        median_slice_is_antichain: slice_witness.verify()
            && BigInt::from(slice_witness.size()) == median_size,
        dilworth_size,
        median_rank_size: median_size,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank::product_profile;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn shape(entries: &[u32]) -> ShapeVector {
        ShapeVector::new(entries.to_vec()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<ExactInteger> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn enumerate_examples() {
        let p = enumerate_rank_profile(&shape(&[2, 2]), 100).unwrap();
        assert_eq!(p.min_rank(), 2);
        assert_eq!(p.counts(), &ints(&[1, 2, 1])[..]);

        let p = enumerate_rank_profile(&shape(&[2, 3]), 100).unwrap();
        assert_eq!(p.counts(), &ints(&[1, 2, 2, 1])[..]);

        let p = enumerate_rank_profile(&shape(&[5, 5, 5]), 1000).unwrap();
        assert_eq!(p.get(9), BigInt::from(19));
    }

    #[test]
    fn enumerate_refuses_over_cap() {
        let err = enumerate_rank_profile(&shape(&[100, 100, 100]), 1000).unwrap_err();
        match err {
            Error::CapExceeded { size, cap } => {
                assert_eq!(size, BigInt::from(1_000_000));
                assert_eq!(cap, 1000);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn enumerate_matches_convolution() {
        for entries in [vec![2, 2, 4], vec![3, 4, 5], vec![1, 3], vec![6, 6, 6]] {
            let s = shape(&entries);
            assert_eq!(
                enumerate_rank_profile(&s, DEFAULT_ENUMERATION_CAP).unwrap(),
                product_profile(&s),
                "profiles differ for {entries:?}"
            );
        }
    }

    #[test]
    fn dominance_relation_properties() {
        // spot-check reflexivity, antisymmetry, transitivity on random triples
        let poset = PosetInstance::new(shape(&[3, 3, 3]), 1000).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let mut pick = || poset.elements().choose(&mut rng).unwrap();
            let (x, y, z) = (pick(), pick(), pick());
            assert!(dominates(x, x));
            if dominates(x, y) && dominates(y, x) {
                assert_eq!(x, y);
            }
            if dominates(x, y) && dominates(y, z) {
                assert!(dominates(x, z));
            }
        }
    }

    #[test]
    fn dilworth_examples() {
        let p = PosetInstance::new(shape(&[3, 3]), 2000).unwrap();
        let (size, witness) = max_antichain_dilworth(&p, 2000).unwrap();
        assert_eq!(size, BigInt::from(3));
        assert!(witness.verify());

        let p = PosetInstance::new(shape(&[2, 2, 2]), 2000).unwrap();
        let (size, _) = max_antichain_dilworth(&p, 2000).unwrap();
        assert_eq!(size, BigInt::from(3));

        // a chain has maximum antichain 1
        let p = PosetInstance::new(shape(&[1, 50]), 2000).unwrap();
        let (size, witness) = max_antichain_dilworth(&p, 2000).unwrap();
        assert_eq!(size, BigInt::from(1));
        assert_eq!(witness.size(), 1);
    }

    #[test]
    fn dilworth_matches_exhaustive_antichain_search() {
        // independent route: enumerate all subsets of the 9-element grid
        let p = PosetInstance::new(shape(&[3, 3]), 2000).unwrap();
        let elems = p.elements();
        let mut best = 0usize;
        for mask in 0u32..(1 << elems.len()) {
            let chosen: Vec<&Vec<u32>> = (0..elems.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| &elems[i])
                .collect();
            let ok = chosen.iter().enumerate().all(|(i, x)| {
                chosen[i + 1..]
                    .iter()
                    .all(|y| !dominates(x, y) && !dominates(y, x))
            });
            if ok {
                best = best.max(chosen.len());
            }
        }
        assert_eq!(best, 3);
    }

    #[test]
    fn dilworth_size_stable_under_element_permutation() {
        let base = PosetInstance::new(shape(&[2, 3, 3]), 2000).unwrap();
        let (size, _) = max_antichain_dilworth(&base, 2000).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..5 {
            let mut shuffled = base.clone();
            shuffled.elements.shuffle(&mut rng);
            let (s2, w2) = max_antichain_dilworth(&shuffled, 2000).unwrap();
            assert_eq!(s2, size);
            assert!(w2.verify());
        }
    }

    #[test]
    fn sperner_check_examples() {
        let r = sperner_witness_check(&shape(&[5, 5]), 2000).unwrap();
        assert!(r.sizes_equal && r.median_slice_is_antichain);
        assert_eq!(r.dilworth_size, BigInt::from(5));

        let r = sperner_witness_check(&shape(&[2, 2, 4]), 2000).unwrap();
        assert!(r.sizes_equal);
        assert_eq!(r.dilworth_size, BigInt::from(4));

        let r = sperner_witness_check(&shape(&[4, 4, 4]), 2000).unwrap();
        assert!(r.sizes_equal && r.median_slice_is_antichain);
        assert_eq!(r.dilworth_size, BigInt::from(12));
    }

    #[test]
    fn witness_json_is_tuple_list() {
        let p = PosetInstance::new(shape(&[2, 2]), 100).unwrap();
        let (_, w) = max_antichain_dilworth(&p, 100).unwrap();
        let v = w.to_json();
        assert!(v.is_array());
        assert_eq!(v.as_array().unwrap().len(), 2);
    }
}
