//! Graph constructors: LCF notation, Haar graphs, ladders, prisms,
//! generalized Petersen graphs and vertex expansions.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, HamiltonDecomposition};

/// `[o1,o2,...]^k` or, in extended form, `[(a,b,c),(d,e,f),...]^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcfNotation {
    pub groups: Vec<Vec<i64>>,
    pub exponent: usize,
}

impl LcfNotation {
    pub fn plain(offsets: &[i64], exponent: usize) -> Self {
        LcfNotation {
            groups: offsets.iter().map(|&o| vec![o]).collect(),
            exponent,
        }
    }

    pub fn positions(&self) -> usize {
        self.groups.len() * self.exponent
    }

    pub fn is_plain(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }

    /// Accepts an optional pair of outer parentheses, `−` for minus, and the
    /// exponent either bare or in braces. Whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidLcf(format!("{m} in `{}`", text.trim()));
        let s: String = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '−' { '-' } else { c })
            .collect();
        let s = match s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            Some(inner) if inner.starts_with('[') => inner.to_string(),
            _ => s,
        };
        let body_end = s.rfind(']').ok_or_else(|| bad("missing `]`"))?;
        let body = s
            .strip_prefix('[')
            .ok_or_else(|| bad("missing `[`"))?
            .get(..body_end - 1)
            .ok_or_else(|| bad("malformed brackets"))?;
        let tail = &s[body_end + 1..];
        let exponent = if tail.is_empty() {
            1
        } else {
            let e = tail.strip_prefix('^').ok_or_else(|| bad("expected `^`"))?;
            let e = e
                .strip_prefix('{')
                .and_then(|x| x.strip_suffix('}'))
                .unwrap_or(e);
            e.parse::<usize>().map_err(|_| bad("bad exponent"))?
        };
        if exponent == 0 {
            return Err(bad("exponent must be positive"));
        }
        let number = |t: &str| t.parse::<i64>().map_err(|_| bad(&format!("bad offset `{t}`")));
        let mut groups = Vec::new();
        if body.starts_with('(') {
            let mut rest = body;
            while !rest.is_empty() {
                let inner_end = rest.find(')').ok_or_else(|| bad("unclosed `(`"))?;
                let inner = rest
                    .strip_prefix('(')
                    .ok_or_else(|| bad("expected `(`"))?
                    .get(..inner_end - 1)
                    .unwrap_or("");
                let group = inner.split(',').map(number).collect::<Result<Vec<_>>>()?;
                groups.push(group);
                rest = &rest[inner_end + 1..];
                rest = rest.strip_prefix(',').unwrap_or(rest);
            }
        } else {
            groups = body
                .split(',')
                .map(|t| number(t).map(|o| vec![o]))
                .collect::<Result<_>>()?;
        }
        if groups.is_empty() || groups.iter().any(Vec::is_empty) {
            return Err(bad("empty offset list"));
        }
        Ok(LcfNotation { groups, exponent })
    }
}

impl FromStr for LcfNotation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        LcfNotation::parse(s)
    }
}

impl fmt::Display for LcfNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = if self.is_plain() {
            self.groups.iter().map(|g| g[0].to_string()).collect()
        } else {
            self.groups
                .iter()
                .map(|g| {
                    let inner: Vec<String> = g.iter().map(i64::to_string).collect();
                    format!("({})", inner.join(","))
                })
                .collect()
        };
        write!(f, "[{}]^{}", parts.join(","), self.exponent)
    }
}

/// Builds the cycle `0..n` plus, at position `i`, a chord to `i + o (mod n)`
/// for every offset `o` of group `i mod groups`. A chord named from both
/// ends is added once.
fn build_lcf(notation: &LcfNotation, n: usize) -> Result<(Graph, HamiltonDecomposition)> {
    if n < 3 {
        return Err(Error::InvalidLcf(format!("need at least 3 vertices, got {n}")));
    }
    let mut edges: BTreeSet<(usize, usize)> = (0..n).map(|i| canon(i, (i + 1) % n)).collect();
    let cycle_edges = edges.clone();
    for i in 0..n {
        for &o in &notation.groups[i % notation.groups.len()] {
            let j = (i as i64 + o).rem_euclid(n as i64) as usize;
            if j == i {
                return Err(Error::InvalidLcf(format!(
                    "offset {o} at position {i} is 0 mod {n}"
                )));
            }
            let e = canon(i, j);
            if cycle_edges.contains(&e) {
                return Err(Error::InvalidLcf(format!(
                    "offset {o} at position {i} duplicates a cycle edge"
                )));
            }
            edges.insert(e);
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let g = Graph::new(n, &edges)?;
    let cycle: Vec<usize> = (0..n).collect();
    let h = g.verify_hamilton(&cycle)?;
    Ok((g, h))
}

fn canon(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Plain LCF: one offset per position, `n` equal to the number of positions.
pub fn from_lcf(notation: &LcfNotation, n: usize) -> Result<(Graph, HamiltonDecomposition)> {
    if !notation.is_plain() {
        return Err(Error::InvalidLcf(
            "plain LCF needs one offset per position; use from_extended_lcf".into(),
        ));
    }
    if notation.positions() != n {
        return Err(Error::InvalidLcf(format!(
            "notation has {} positions, expected {n}",
            notation.positions()
        )));
    }
    build_lcf(notation, n)
}

/// Parses plain LCF text and builds it on as many vertices as it names.
pub fn lcf(text: &str) -> Result<(Graph, HamiltonDecomposition)> {
    let notation = LcfNotation::parse(text)?;
    let n = notation.positions();
    from_lcf(&notation, n)
}

/// Structural facts measured on an extended-LCF build.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcfValidation {
    pub regular_degree: Option<usize>,
    pub girth: Option<usize>,
    /// `2 + group size` when all groups have the same size.
    pub expected_degree: Option<usize>,
}

impl LcfValidation {
    pub fn is_regular_as_expected(&self) -> bool {
        self.expected_degree.is_some() && self.regular_degree == self.expected_degree
    }

    pub fn meets(&self, degree: usize, girth: usize) -> bool {
        self.regular_degree == Some(degree) && self.girth == Some(girth)
    }
}

#[derive(Debug, Clone)]
pub struct ExtendedLcf {
    pub graph: Graph,
    pub hamilton: HamiltonDecomposition,
    pub validation: LcfValidation,
}

/// Extended LCF: groups are applied cyclically over `n` positions. The
/// result is returned together with what it actually is (regularity and
/// girth), so a notation that misses its target graph is visible rather
/// than silently accepted.
pub fn from_extended_lcf(notation: &LcfNotation, n: usize) -> Result<ExtendedLcf> {
    let (graph, hamilton) = build_lcf(notation, n)?;
    let sizes: BTreeSet<usize> = notation.groups.iter().map(Vec::len).collect();
    let validation = LcfValidation {
        regular_degree: graph.regular_degree(),
        girth: graph.girth(),
        expected_degree: (sizes.len() == 1).then(|| 2 + sizes.first().unwrap()),
    };
    Ok(ExtendedLcf {
        graph,
        hamilton,
        validation,
    })
}

/// Haar graph H(N). With `N = b_0 b_1 ... b_{n-1}` in binary (b_0 the most
/// significant bit), `u_i = i` is joined to `w_j = n + j` for
/// `j = i + t (mod n)` whenever `b_t = 1`.
pub fn haar(number: u64) -> Result<Graph> {
    if number == 0 {
        return Err(Error::InvalidParameter("Haar number must be positive".into()));
    }
    let n = 64 - number.leading_zeros() as usize;
    let offsets: Vec<usize> = (0..n).filter(|t| number >> (n - 1 - t) & 1 == 1).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for &t in &offsets {
            edges.push((i, n + (i + t) % n));
        }
    }
    Ok(Graph::new(2 * n, &edges)?.with_name(format!("H({number})")))
}

/// Cycle `0..2r` plus the rungs `(i, i + r)`.
pub fn mobius_ladder(r: usize) -> Result<(Graph, HamiltonDecomposition)> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("Möbius ladder needs r ≥ 2, got {r}")));
    }
    let n = 2 * r;
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..r).map(|i| (i, i + r)));
    let g = Graph::new(n, &edges)?.with_name(format!("Mob{r}"));
    let h = identity_hamilton(&g)?;
    Ok((g, h))
}

pub fn fat_mobius_number(r: usize) -> Result<u64> {
    if !(3..=32).contains(&r) {
        return Err(Error::InvalidParameter(format!(
            "fat Möbius ladder needs 3 ≤ r ≤ 32, got {r}"
        )));
    }
    Ok((1u64 << (2 * r - 1)) + (1u64 << (r - 1)) + 1)
}

/// FMob_r, the Haar graph H(2^(2r-1) + 2^(r-1) + 1) on 4r vertices.
pub fn fat_mobius(r: usize) -> Result<Graph> {
    let number = fat_mobius_number(r)?;
    Ok(haar(number)?.with_name(format!("FMob{r}")))
}

/// The replacement construction of FMob_r from Mob_r: every ladder vertex
/// becomes an edge and every rung a pair of crossing edges, which comes out
/// as LCF `[-(2r-1), 2r-1]^(2r)`.
pub fn fat_mobius_constructive(r: usize) -> Result<Graph> {
    fat_mobius_number(r)?;
    let o = 2 * r as i64 - 1;
    let (g, _) = from_lcf(&LcfNotation::plain(&[-o, o], 2 * r), 4 * r)?;
    Ok(g)
}

/// `C_m □ K_2` with outer vertices `0..m` and inner `m..2m`; a Hamilton
/// cycle is attached when `m` is even.
pub fn prism(m: usize) -> Result<(Graph, Option<HamiltonDecomposition>)> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("prism needs m ≥ 3, got {m}")));
    }
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((i, (i + 1) % m));
        edges.push((m + i, m + (i + 1) % m));
        edges.push((i, m + i));
    }
    let g = Graph::new(2 * m, &edges)?.with_name(format!("C{m}xK2"));
    let h = if m % 2 == 0 {
        let cycle: Vec<usize> = (0..m)
            .flat_map(|i| if i % 2 == 0 { [i, m + i] } else { [m + i, i] })
            .collect();
        Some(g.verify_hamilton(&cycle)?)
    } else {
        None
    };
    Ok((g, h))
}

/// GP(m, k): outer cycle `0..m`, spokes `i ~ m + i`, inner `m+i ~ m+i+k`.
pub fn generalized_petersen(m: usize, k: usize) -> Result<Graph> {
    if m < 3 || k == 0 || 2 * k >= m {
        return Err(Error::InvalidParameter(format!(
            "GP(m, k) needs m ≥ 3 and 1 ≤ k < m/2, got ({m}, {k})"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push((i, (i + 1) % m));
        edges.push((i, m + i));
        edges.push((m + i, m + (i + k) % m));
    }
    Ok(Graph::new(2 * m, &edges)?.with_name(format!("GP({m},{k})")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionVariant {
    K23,
    K23WithOneTriangle,
}

/// Replaces every vertex `v` of a cubic graph by a K_{2,3} block whose three
/// degree-2 vertices ("ports") take over `v`'s edges, one each, in sorted
/// neighbor order. In each block the ports come first, then the two hubs.
/// The triangle variant uses a K_3 for vertex 0 instead.
pub fn vertex_expand(g: &Graph, variant: ExpansionVariant) -> Result<Graph> {
    if !g.is_cubic() {
        return Err(Error::NotCubic);
    }
    let n = g.vertex_count();
    let triangle = variant == ExpansionVariant::K23WithOneTriangle;
    let block_size = |v: usize| if triangle && v == 0 { 3 } else { 5 };
    let mut base = vec![0; n + 1];
    for v in 0..n {
        base[v + 1] = base[v] + block_size(v);
    }
    let mut edges = Vec::new();
    for v in 0..n {
        let b = base[v];
        if block_size(v) == 3 {
            edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
        } else {
            for port in 0..3 {
                edges.push((b + port, b + 3));
                edges.push((b + port, b + 4));
            }
        }
    }
    for &(u, v) in g.edges() {
        let pu = g.neighbors(u).iter().position(|&x| x == v).unwrap();
        let pv = g.neighbors(v).iter().position(|&x| x == u).unwrap();
        edges.push((base[u] + pu, base[v] + pv));
    }
    Graph::new(base[n], &edges)
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n ≥ 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Graph::new(n, &edges)?.with_name(format!("C{n}")))
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("complete graph needs n ≥ 1".into()));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Ok(Graph::new(n, &edges)?.with_name(format!("K{n}")))
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameter("both parts must be nonempty".into()));
    }
    let edges: Vec<_> = (0..a)
        .flat_map(|i| (0..b).map(move |j| (i, a + j)))
        .collect();
    Ok(Graph::new(a + b, &edges)?.with_name(format!("K{a},{b}")))
}

/// The decomposition along `0, 1, ..., n-1`.
pub fn identity_hamilton(g: &Graph) -> Result<HamiltonDecomposition> {
    let cycle: Vec<usize> = (0..g.vertex_count()).collect();
    g.verify_hamilton(&cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iso(a: &Graph, b: &Graph) -> bool {
        a.is_isomorphic(b).expect("small connected graphs")
    }

    #[test]
    fn lcf_parse_forms() {
        let a = LcfNotation::parse("[5,-5]^7").unwrap();
        assert_eq!(a, LcfNotation::plain(&[5, -5], 7));
        let b = LcfNotation::parse("([17, −9, 37,-37,9,-17]^{15})").unwrap();
        assert_eq!(b.positions(), 90);
        let c = LcfNotation::parse("[(-11,-15,7),(11,15,-7)]^7").unwrap();
        assert_eq!(c.groups, vec![vec![-11, -15, 7], vec![11, 15, -7]]);
        assert!(!c.is_plain());
        assert_eq!(c.to_string(), "[(-11,-15,7),(11,15,-7)]^7");
        for bad in ["5,-5", "[5,x]^2", "[5,-5]^0", "[5,-5]7", "[]^3", "[(1,2]^2"] {
            assert!(LcfNotation::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn lcf_builds() {
        let (hea, h) = lcf("[5,-5]^7").unwrap();
        assert_eq!((hea.vertex_count(), hea.edge_count(), hea.girth()), (14, 21, Some(6)));
        assert_eq!(h.chords.len(), 7);
        let (des, _) = lcf("[5,-5,9,-9]^5").unwrap();
        assert_eq!((des.vertex_count(), des.edge_count()), (20, 30));
        let (q3, h) = lcf("[3,-3]^4").unwrap();
        assert_eq!((q3.vertex_count(), q3.edge_count(), q3.girth()), (8, 12, Some(4)));
        assert_eq!(h.chords.len(), 4);
    }

    #[test]
    fn lcf_errors() {
        assert!(from_lcf(&LcfNotation::plain(&[8], 8), 8).is_err());
        assert!(from_lcf(&LcfNotation::plain(&[3, -3], 4), 10).is_err());
        assert!(from_lcf(&LcfNotation::plain(&[1], 6), 6).is_err());
    }

    #[test]
    fn extended_matches_plain() {
        let ext = from_extended_lcf(&LcfNotation::parse("[(3),(-3)]^4").unwrap(), 8).unwrap();
        let (plain, _) = lcf("[3,-3]^4").unwrap();
        assert_eq!(ext.graph, plain);
        assert!(ext.validation.meets(3, 4));
        let zero = LcfNotation::parse("[(3,0)]^8").unwrap();
        assert!(from_extended_lcf(&zero, 8).is_err());
    }

    #[test]
    fn five_six_cage() {
        let n = LcfNotation::parse("[(-11,-15,7),(11,15,-7)]^7").unwrap();
        let ext = from_extended_lcf(&n, 42).unwrap();
        assert_eq!(ext.graph.edge_count(), 105);
        assert!(ext.validation.is_regular_as_expected());
        assert!(ext.validation.meets(5, 6));
    }

    #[test]
    fn haar_graphs() {
        let k33 = complete_bipartite(3, 3).unwrap();
        assert!(iso(&haar(7).unwrap(), &k33));
        assert!(iso(&haar(11).unwrap(), &lcf("[3,-3]^4").unwrap().0));
        assert!(iso(&haar(69).unwrap(), &lcf("[5,-5]^7").unwrap().0));
        assert!(iso(&haar(133).unwrap(), &generalized_petersen(8, 3).unwrap()));
        assert!(haar(0).is_err());
        let h = haar(69).unwrap();
        assert!(h.is_bipartite());
        assert_eq!(h.regular_degree(), Some(3));
    }

    #[test]
    fn ladders() {
        let (m3, _) = mobius_ladder(3).unwrap();
        assert!(iso(&m3, &complete_bipartite(3, 3).unwrap()));
        let (m6, _) = mobius_ladder(6).unwrap();
        assert_eq!((m6.vertex_count(), m6.edge_count()), (12, 18));
        let (m2, _) = mobius_ladder(2).unwrap();
        assert_eq!(m2, complete_graph(4).unwrap());
        assert!(mobius_ladder(1).is_err());
    }

    #[test]
    fn fat_mobius_variants() {
        assert_eq!(fat_mobius_number(3).unwrap(), 37);
        assert_eq!(fat_mobius_number(4).unwrap(), 137);
        assert_eq!(fat_mobius_number(5).unwrap(), 529);
        for r in 3..=5 {
            let f = fat_mobius(r).unwrap();
            assert_eq!(f.vertex_count(), 4 * r);
            assert!(f.is_cubic() && f.is_bipartite());
            assert!(iso(&f, &fat_mobius_constructive(r).unwrap()));
        }
        assert!(fat_mobius(2).is_err());
    }

    #[test]
    fn prisms() {
        let (p8, h) = prism(8).unwrap();
        assert_eq!((p8.vertex_count(), p8.edge_count()), (16, 24));
        assert!(h.is_some());
        let (p4, _) = prism(4).unwrap();
        assert!(iso(&p4, &haar(11).unwrap()));
        let (p3, h3) = prism(3).unwrap();
        assert_eq!(p3.edge_count(), 9);
        assert!(h3.is_none());
        assert!(prism(2).is_err());
    }

    #[test]
    fn petersen_family() {
        let pet = generalized_petersen(5, 2).unwrap();
        assert_eq!((pet.vertex_count(), pet.girth()), (10, Some(5)));
        let dod = generalized_petersen(10, 2).unwrap();
        assert_eq!((dod.vertex_count(), dod.girth()), (20, Some(5)));
        let (dod_lcf, _) = lcf("[10,7,4,-4,-7,10,-4,7,-7,4]^2").unwrap();
        assert!(iso(&dod, &dod_lcf));
        assert!(generalized_petersen(8, 4).is_err());
    }

    #[test]
    fn expansions() {
        let k4 = complete_graph(4).unwrap();
        let e = vertex_expand(&k4, ExpansionVariant::K23).unwrap();
        assert_eq!(e.vertex_count(), 20);
        assert!(e.is_cubic() && e.is_connected());
        let (p3, _) = prism(3).unwrap();
        let t = vertex_expand(&p3, ExpansionVariant::K23WithOneTriangle).unwrap();
        assert_eq!(t.vertex_count(), 28);
        assert!(t.is_cubic());
        let pet = vertex_expand(&generalized_petersen(5, 2).unwrap(), ExpansionVariant::K23).unwrap();
        assert_eq!(pet.vertex_count(), 50);
        assert!(pet.is_cubic());
        assert_eq!(pet.girth(), Some(4));
        assert_eq!(
            vertex_expand(&cycle_graph(5).unwrap(), ExpansionVariant::K23).unwrap_err(),
            Error::NotCubic
        );
    }
}
