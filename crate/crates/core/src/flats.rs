//! Affine `d`-flats in `ℚ^{2d}` written as graphs `y = A x + v`.
//!
//! Two flats meet in a single point exactly when `A_F - A_E` is nonsingular,
//! which ties point-intersection counts to the nonsingular-sum graph of the
//! families `{A_i}` and `{-B_j}`.

use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::algebra::{solve_consistency, FieldSpec, Matrix, Scalar};
use crate::constructions::Example2Family;
use crate::rng::{random_matrix, SplitMix64};
use crate::sumgraph::{greedy_maximal_matching, SimpleGraph};
use crate::{Error, Result};

const Q: FieldSpec = FieldSpec::Rationals;

/// The flat `{(x, A x + v) : x ∈ ℚ^d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFlat {
    a: Matrix,
    v: Matrix,
}

impl GraphFlat {
    pub fn new(a: Matrix, v: Matrix) -> Result<Self> {
        Q.ensure_same(a.field())?;
        Q.ensure_same(v.field())?;
        if !a.is_square() || a.rows() == 0 {
            return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
        }
        if v.rows() != a.rows() || v.cols() != 1 {
            return Err(Error::ShapeMismatch(format!(
                "offset {}x{} for a {}x{} slope",
                v.rows(),
                v.cols(),
                a.rows(),
                a.cols()
            )));
        }
        Ok(GraphFlat { a, v })
    }

    /// Integer slope rows and offset.
    pub fn from_ints(a: &[Vec<i64>], v: &[i64]) -> Result<Self> {
        let rows: Vec<Vec<i64>> = v.iter().map(|&x| vec![x]).collect();
        GraphFlat::new(Matrix::from_rows(Q, a)?, Matrix::from_rows(Q, &rows)?)
    }

    pub fn d(&self) -> usize {
        self.a.rows()
    }

    pub fn slope(&self) -> &Matrix {
        &self.a
    }

    pub fn offset(&self) -> &Matrix {
        &self.v
    }

    /// The `2d x d` block `[I; A]` spanning the direction space.
    pub fn direction(&self) -> Matrix {
        Matrix::vstack(&[&Matrix::identity(Q, self.d()), &self.a]).expect("matching widths")
    }

    /// The point `(0, v)`.
    pub fn base_point(&self) -> Matrix {
        Matrix::vstack(&[&Matrix::zero(Q, self.d(), 1), &self.v]).expect("matching widths")
    }

    /// Equal direction spaces, which in graph form means equal slopes.
    pub fn is_parallel_to(&self, other: &GraphFlat) -> bool {
        self.a == other.a
    }
}

fn same_d(f: &GraphFlat, e: &GraphFlat) -> Result<()> {
    if f.d() != e.d() {
        return Err(Error::DimensionMismatch { left: f.d(), right: e.d() });
    }
    Ok(())
}

/// Dimension of `F ∩ E`, or `-1` when they are disjoint.
pub fn intersection_dimension(f: &GraphFlat, e: &GraphFlat) -> Result<i64> {
    same_d(f, e)?;
    Ok(solve_consistency(&f.a.sub(&e.a)?, &e.v.sub(&f.v)?)?.dimension())
}

/// Dimension of the smallest flat containing both.
pub fn affine_span_dim(f: &GraphFlat, e: &GraphFlat) -> Result<usize> {
    same_d(f, e)?;
    let shift = f.base_point().sub(&e.base_point())?;
    Ok(Matrix::hstack(&[&f.direction(), &e.direction(), &shift])?.rank())
}

/// Flats common to three flats: `-1`, or the dimension of their intersection.
fn triple_intersection_dimension(f: &GraphFlat, e: &GraphFlat, g: &GraphFlat) -> Result<i64> {
    let lhs = Matrix::vstack(&[&f.a.sub(&e.a)?, &f.a.sub(&g.a)?])?;
    let rhs = Matrix::vstack(&[&e.v.sub(&f.v)?, &g.v.sub(&f.v)?])?;
    Ok(solve_consistency(&lhs, &rhs)?.dimension())
}

/// `n` pairs `(F_i, E_i)`, each meeting in exactly one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatPairFamily {
    pairs: Vec<(GraphFlat, GraphFlat)>,
}

impl FlatPairFamily {
    pub fn new(pairs: Vec<(GraphFlat, GraphFlat)>) -> Result<Self> {
        let d = pairs.first().ok_or(Error::EmptyFamily)?.0.d();
        for (i, (f, e)) in pairs.iter().enumerate() {
            for flat in [f, e] {
                if flat.d() != d {
                    return Err(Error::DimensionMismatch { left: d, right: flat.d() });
                }
            }
            if intersection_dimension(f, e)? != 0 {
                return Err(Error::InvariantViolation { index: i });
            }
        }
        Ok(FlatPairFamily { pairs })
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn d(&self) -> usize {
        self.pairs[0].0.d()
    }

    pub fn pairs(&self) -> &[(GraphFlat, GraphFlat)] {
        &self.pairs
    }

    /// All `F_i` followed by all `E_i`.
    pub fn arrangement(&self) -> Result<FlatArrangement> {
        let flats = self.pairs.iter().map(|p| p.0.clone()).chain(self.pairs.iter().map(|p| p.1.clone()));
        FlatArrangement::new(flats.collect())
    }
}

/// Flats of a common dimension `d` in `ℚ^{2d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatArrangement {
    flats: Vec<GraphFlat>,
}

impl FlatArrangement {
    pub fn new(flats: Vec<GraphFlat>) -> Result<Self> {
        let d = flats.first().ok_or(Error::EmptyFamily)?.d();
        if let Some(f) = flats.iter().find(|f| f.d() != d) {
            return Err(Error::DimensionMismatch { left: d, right: f.d() });
        }
        Ok(FlatArrangement { flats })
    }

    pub fn n(&self) -> usize {
        self.flats.len()
    }

    pub fn d(&self) -> usize {
        self.flats[0].d()
    }

    pub fn flats(&self) -> &[GraphFlat] {
        &self.flats
    }

    /// First parallel pair `(i, j)`, `i < j`, in lexicographic order.
    pub fn parallel_pair(&self) -> Option<(usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.flats[i].is_parallel_to(&self.flats[j]))
    }

    /// Symmetric table of pairwise intersection dimensions; the diagonal is `d`.
    pub fn intersection_table(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.n();
        let mut t = vec![vec![self.d() as i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let dim = intersection_dimension(&self.flats[i], &self.flats[j])?;
                t[i][j] = dim;
                t[j][i] = dim;
            }
        }
        Ok(t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.flats.iter().map(FlatWire::from).collect::<Vec<_>>()).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let wires: Vec<FlatWire> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        FlatArrangement::new(wires.into_iter().map(FlatWire::into_flat).collect::<Result<_>>()?)
    }
}

/// One entry of an arrangement file: `{"A": [[..], ..], "v": [..]}` with
/// entries as integers or `"p/q"` strings.
#[derive(Serialize, Deserialize)]
struct FlatWire {
    #[serde(rename = "A")]
    a: Vec<Vec<serde_json::Value>>,
    v: Vec<serde_json::Value>,
}

fn wire_entry(x: &serde_json::Value) -> Result<Scalar> {
    match x {
        serde_json::Value::String(s) => Scalar::parse_in(Q, s),
        serde_json::Value::Number(n) if n.is_i64() => Ok(Scalar::from_i64(Q, n.as_i64().expect("checked"))),
        other => Err(Error::Parse(format!("expected an integer or \"p/q\" string, got {other}"))),
    }
}

impl From<&GraphFlat> for FlatWire {
    fn from(f: &GraphFlat) -> Self {
        let cell = |m: &Matrix, i: usize, j: usize| serde_json::to_value(m.get(i, j)).expect("plain data");
        FlatWire {
            a: (0..f.d()).map(|i| (0..f.d()).map(|j| cell(&f.a, i, j)).collect()).collect(),
            v: (0..f.d()).map(|i| cell(&f.v, i, 0)).collect(),
        }
    }
}

impl FlatWire {
    fn into_flat(self) -> Result<GraphFlat> {
        let d = self.v.len();
        if self.a.len() != d || self.a.iter().any(|row| row.len() != d) {
            return Err(Error::ShapeMismatch(format!("slope must be {d}x{d} to match the offset")));
        }
        let a: Vec<Scalar> = self.a.iter().flatten().map(wire_entry).collect::<Result<_>>()?;
        let v: Vec<Scalar> = self.v.iter().map(wire_entry).collect::<Result<_>>()?;
        GraphFlat::new(Matrix::from_scalars(Q, d, d, a)?, Matrix::column(Q, v)?)
    }
}

/// A reduced fraction `numerator / denominator`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub numerator: u128,
    pub denominator: u128,
}

impl Fraction {
    pub fn new(numerator: u128, denominator: u128) -> Self {
        let g = numerator.gcd(&denominator).max(1);
        Fraction { numerator: numerator / g, denominator: denominator / g }
    }
}

fn four_pow(d: usize) -> u128 {
    1u128 << (2 * d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatPairsReport {
    pub n: usize,
    pub d: usize,
    /// Ordered `(i, j)` with `F_i ∩ E_j` a single point.
    pub single_point_cross_pairs: usize,
    /// Edges of the nonsingular-sum graph of `{A_i}` and `{-B_j}`.
    pub sum_graph_edges: usize,
    /// `⌈n² / 4^d⌉`.
    pub bound: u128,
    pub holds: bool,
}

pub fn verify_flat_pairs_lemma(family: &FlatPairFamily) -> Result<FlatPairsReport> {
    let n = family.n();
    let d = family.d();
    let mut count = 0;
    let mut sum_edges = 0;
    for (i, (f, _)) in family.pairs.iter().enumerate() {
        if intersection_dimension(f, &family.pairs[i].1)? != 0 {
            return Err(Error::InvariantViolation { index: i });
        }
        for (_, e) in &family.pairs {
            if intersection_dimension(f, e)? == 0 {
                count += 1;
            }
            if f.a.add(&e.a.neg())?.is_nonsingular()? {
                sum_edges += 1;
            }
        }
    }
    let n2 = (n * n) as u128;
    Ok(FlatPairsReport {
        n,
        d,
        single_point_cross_pairs: count,
        sum_graph_edges: sum_edges,
        bound: n2.div_ceil(four_pow(d)),
        holds: four_pow(d) * count as u128 >= n2 && count == sum_edges,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalReport {
    pub n: usize,
    pub d: usize,
    /// Unordered pairs meeting in a single point, over `n²`.
    pub delta: Fraction,
    pub zero_dim_pairs: usize,
    /// Unordered pairs with empty intersection; they are not edges.
    pub empty_pairs: usize,
    pub greedy_matching: usize,
    pub cover: Vec<usize>,
    pub cover_m: usize,
    pub cover_verified: bool,
    /// `⌊√δ · 2^{d+1} · n⌋`.
    pub bound: u128,
    /// `δn² ≥ M² / 4^d`.
    pub matching_step: bool,
    /// `2M ≥ m`.
    pub cover_step: bool,
    /// `m ≤ √δ · 2^{d+1} · n`.
    pub bound_step: bool,
    pub holds: bool,
}

/// Builds the point-intersection graph, covers it with the endpoints of a
/// greedy maximal matching, and checks the inequality chain bounding the
/// cover by `√δ · 2^{d+1} · n`. All comparisons are on squared integers.
pub fn removal_experiment(arr: &FlatArrangement) -> Result<RemovalReport> {
    if let Some((first, second)) = arr.parallel_pair() {
        return Err(Error::ParallelFlats { first, second });
    }
    let n = arr.n();
    let d = arr.d();
    let table = arr.intersection_table()?;
    let g = SimpleGraph::from_fn(n, |i, j| table[i][j] == 0);
    let empty_pairs = (0..n).map(|i| (i + 1..n).filter(|&j| table[i][j] < 0).count()).sum();
    let edges = g.edge_count() as u128;
    let matching = greedy_maximal_matching(&g);
    let certificate = matching.vertex_cover();
    let big_m = matching.len() as u128;
    let m = certificate.size as u128;
    Ok(RemovalReport {
        n,
        d,
        delta: Fraction::new(edges, (n * n) as u128),
        zero_dim_pairs: edges as usize,
        empty_pairs,
        greedy_matching: matching.len(),
        cover_verified: certificate.covers(&g),
        cover: certificate.vertices,
        cover_m: m as usize,
        bound: (four_pow(d + 1) * edges).sqrt(),
        matching_step: four_pow(d) * edges >= big_m * big_m,
        cover_step: 2 * big_m >= m,
        bound_step: m * m <= four_pow(d + 1) * edges,
        holds: four_pow(d) * edges >= big_m * big_m && 2 * big_m >= m && m * m <= four_pow(d + 1) * edges,
    })
}

/// The hyperplane `normal · z = offset` in `ℚ⁴`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
}

impl Hyperplane {
    fn through(f: &GraphFlat, e: &GraphFlat) -> Result<Self> {
        let shift = e.base_point().sub(&f.base_point())?;
        let span = Matrix::hstack(&[&f.direction(), &e.direction(), &shift])?;
        let normals = span.transpose().kernel();
        if normals.len() != 1 {
            return Err(Error::PreconditionViolated(format!(
                "chosen flats span a {}-dimensional flat, not a hyperplane",
                span.rank()
            )));
        }
        let normal = normals.into_iter().next().expect("one normal");
        let offset = dot(&normal, &f.base_point())?;
        Ok(Hyperplane { normal, offset })
    }

    pub fn contains(&self, f: &GraphFlat) -> Result<bool> {
        let dir = f.direction();
        for j in 0..dir.cols() {
            let col = Matrix::from_scalars(Q, dir.rows(), 1, (0..dir.rows()).map(|i| dir.get(i, j)).collect())?;
            if !dot(&self.normal, &col)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(dot(&self.normal, &f.base_point())? == self.offset)
    }
}

fn dot(row: &[Scalar], col: &Matrix) -> Result<Scalar> {
    let mut acc = Scalar::zero(Q);
    for (i, x) in row.iter().enumerate() {
        acc = acc.add(&x.mul(&col.get(i, 0))?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperplaneReport {
    pub n: usize,
    /// Unordered pairs spanning `ℚ⁴`, over `n²`.
    pub delta: Fraction,
    pub spanning_pairs: usize,
    /// Flats removed: the endpoints of a greedy maximal matching of the
    /// spanning-pair graph.
    pub removed: Vec<usize>,
    /// `⌊8√δ · n⌋`.
    pub removal_bound: u128,
    pub survivors: Vec<usize>,
    /// The two survivors whose span is the hyperplane.
    pub spanning_survivors: (usize, usize),
    pub hyperplane: Hyperplane,
    pub contained_count: usize,
    /// `⌈(1 - 8√δ) n⌉`, floored at zero.
    pub bound: u128,
    /// Every other survivor meets both spanning survivors in a line, and the
    /// two lines differ.
    pub survivor_lines_verified: bool,
    pub survivors_contained: bool,
    pub holds: bool,
}

/// For 2-flats in `ℚ⁴` with no parallel pair and no three through a common
/// line: removes the flats covering every `ℚ⁴`-spanning pair, spans a
/// hyperplane from the first two survivors and counts the flats inside it.
pub fn hyperplane_cover_check(arr: &FlatArrangement) -> Result<HyperplaneReport> {
    if arr.d() != 2 {
        return Err(Error::InvalidParameter(format!("hyperplane check needs 2-flats, got d = {}", arr.d())));
    }
    if let Some((i, j)) = arr.parallel_pair() {
        return Err(Error::PreconditionViolated(format!("flats {i} and {j} are parallel")));
    }
    let n = arr.n();
    let flats = &arr.flats;
    let table = arr.intersection_table()?;
    for i in 0..n {
        for j in i + 1..n {
            if table[i][j] != 1 {
                continue;
            }
            for l in j + 1..n {
                if triple_intersection_dimension(&flats[i], &flats[j], &flats[l])? == 1 {
                    return Err(Error::PreconditionViolated(format!("flats {i}, {j} and {l} share a line")));
                }
            }
        }
    }
    let mut span = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let s = affine_span_dim(&flats[i], &flats[j])? == 4;
            span[i][j] = s;
            span[j][i] = s;
        }
    }
    let g = SimpleGraph::from_fn(n, |i, j| span[i][j]);
    let spanning = g.edge_count() as u128;
    let removed = greedy_maximal_matching(&g).vertex_cover().vertices;
    let survivors: Vec<usize> = (0..n).filter(|v| !removed.contains(v)).collect();
    let (a, b) = match survivors[..] {
        [a, b, ..] => (a, b),
        _ => return Err(Error::TooFewSurvivors),
    };
    let hyperplane = Hyperplane::through(&flats[a], &flats[b])?;
    let mut contained_count = 0;
    let mut survivors_contained = true;
    for (v, f) in flats.iter().enumerate() {
        let inside = hyperplane.contains(f)?;
        contained_count += inside as usize;
        if survivors.contains(&v) {
            survivors_contained &= inside;
        }
    }
    let mut lines = true;
    for &e in &survivors[2..] {
        lines &= table[a][e] == 1
            && table[b][e] == 1
            && triple_intersection_dimension(&flats[a], &flats[b], &flats[e])? < 1;
    }
    let removal_bound = (64 * spanning).sqrt();
    let bound = (n as u128).saturating_sub(removal_bound);
    Ok(HyperplaneReport {
        n,
        delta: Fraction::new(spanning, (n * n) as u128),
        spanning_pairs: spanning as usize,
        removal_bound,
        survivors_contained,
        survivor_lines_verified: lines,
        holds: contained_count as u128 >= bound && survivors_contained && lines,
        contained_count,
        bound,
        hyperplane,
        spanning_survivors: (a, b),
        survivors,
        removed,
    })
}

/// A flat with slope and offset entries in `[-9, 9]`.
pub fn random_flat(rng: &mut SplitMix64, d: usize) -> GraphFlat {
    let a = random_matrix(rng, Q, d, d);
    let v = random_matrix(rng, Q, d, 1);
    GraphFlat { a, v }
}

/// `n` random pairs, redrawing `E_i` until it meets `F_i` in a point.
pub fn random_pair_family(rng: &mut SplitMix64, n: usize, d: usize) -> Result<FlatPairFamily> {
    let mut pairs = Vec::with_capacity(n);
    for _ in 0..n {
        let f = random_flat(rng, d);
        let e = loop {
            let e = random_flat(rng, d);
            if f.a.sub(&e.a)?.is_nonsingular()? {
                break e;
            }
        };
        pairs.push((f, e));
    }
    FlatPairFamily::new(pairs)
}

/// `generic` random flats followed by flats whose slope has a zero last
/// row; two such slopes always differ by a singular matrix. Slopes are
/// redrawn until no two flats are parallel.
pub fn random_arrangement(rng: &mut SplitMix64, n: usize, d: usize, generic: usize) -> Result<FlatArrangement> {
    if d < 2 && generic < n {
        return Err(Error::InvalidParameter("degenerate flats need d >= 2".into()));
    }
    let mut flats: Vec<GraphFlat> = Vec::with_capacity(n);
    while flats.len() < n {
        let mut f = random_flat(rng, d);
        if flats.len() >= generic {
            let a = Matrix::from_fn(Q, d, d, |i, j| if i + 1 == d { 0 } else { int_entry(&f.a, i, j) });
            f.a = a;
        }
        if flats.iter().all(|g| !g.is_parallel_to(&f)) {
            flats.push(f);
        }
    }
    FlatArrangement::new(flats)
}

fn int_entry(m: &Matrix, i: usize, j: usize) -> i64 {
    let x = m.get(i, j);
    let r = x.as_rational().expect("rational entry");
    i64::try_from(r.to_integer()).expect("small entry")
}

/// `inside` flats lying in the hyperplane `y₂ = 0` of `ℚ⁴`, then `outliers`
/// generic flats, each redrawn until the arrangement stays free of parallel
/// pairs and of three flats through one line. Outliers are also kept out of
/// the hyperplane.
pub fn hyperplane_with_outliers(rng: &mut SplitMix64, inside: usize, outliers: usize) -> Result<FlatArrangement> {
    let mut flats: Vec<GraphFlat> = Vec::with_capacity(inside + outliers);
    let plane = Hyperplane { normal: [0, 0, 0, 1].map(|x| Scalar::from_i64(Q, x)).to_vec(), offset: Scalar::zero(Q) };
    while flats.len() < inside + outliers {
        let f = if flats.len() < inside {
            let (a, b, c) = (rng.range(-9, 9), rng.range(-9, 9), rng.range(-9, 9));
            GraphFlat::from_ints(&[vec![a, b], vec![0, 0]], &[c, 0])?
        } else {
            random_flat(rng, 2)
        };
        if flats.len() >= inside && plane.contains(&f)? {
            continue;
        }
        if fits(&flats, &f)? {
            flats.push(f);
        }
    }
    FlatArrangement::new(flats)
}

fn fits(flats: &[GraphFlat], f: &GraphFlat) -> Result<bool> {
    for (i, g) in flats.iter().enumerate() {
        if g.is_parallel_to(f) {
            return Ok(false);
        }
        for h in &flats[i + 1..] {
            if triple_intersection_dimension(g, h, f)? == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Pairs `F_i: y = L_i x + v_i`, `E_i: y = -R_i x + w_i` from the two
/// families of an embedded-identity construction, with random offsets. `F_i`
/// meets `E_j` in a point exactly when `L_i + R_j` is nonsingular.
pub fn example2_flats(family: &Example2Family, rng: &mut SplitMix64) -> Result<FlatPairFamily> {
    let d = family.k;
    let pairs = family
        .left
        .iter()
        .zip(&family.right)
        .map(|(l, r)| {
            let f = GraphFlat::new(l.clone(), random_matrix(rng, Q, d, 1))?;
            let e = GraphFlat::new(r.neg(), random_matrix(rng, Q, d, 1))?;
            Ok((f, e))
        })
        .collect::<Result<_>>()?;
    FlatPairFamily::new(pairs)
}
