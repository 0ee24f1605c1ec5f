//! Finite metric spaces, set maps between them, and morphism classification.
//!
//! A map `f` is *distance non-increasing* when `d(f(x), f(x')) <= d(x, x')`
//! for all pairs; *monic* when additionally injective; an *isometry* when
//! bijective and distance preserving. These three classes nest:
//! isometry implies monic implies distance non-increasing.

use crate::error::{Error, Result};
use crate::{approx_eq, approx_le, TOL};
use serde::{Deserialize, Serialize};

/// A finite (pseudo)metric space: ordered point labels plus a symmetric
/// distance matrix with zero diagonal satisfying the triangle inequality.
///
/// When `pseudo` is false, distinct points must have positive distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<f64>, // row-major n*n
    pseudo: bool,
}

impl FiniteMetricSpace {
    /// Validates and wraps a distance matrix.
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<f64>>, pseudo: bool) -> Result<Self> {
        let n = labels.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(Error::BadMatrix(format!(
                "expected a {n}x{n} matrix for {n} labels"
            )));
        }
        {
            let mut seen = std::collections::HashSet::new();
            for l in &labels {
                if !seen.insert(l) {
                    return Err(Error::BadMatrix(format!("duplicate label {l:?}")));
                }
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for row in &matrix {
            for &v in row {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::BadMatrix(format!("entry {v} is not a finite length")));
                }
                dist.push(v);
            }
        }
        let space = FiniteMetricSpace { labels, dist, pseudo };
        space.check()?;
        Ok(space)
    }

    /// Builds a space from planar points under the Euclidean metric.
    pub fn from_points(labels: Vec<String>, points: &[[f64; 2]]) -> Result<Self> {
        let n = points.len();
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = ((points[i][0] - points[j][0]).powi(2)
                    + (points[i][1] - points[j][1]).powi(2))
                .sqrt();
                m[i][j] = d;
                m[j][i] = d;
            }
        }
        FiniteMetricSpace::new(labels, m, true)
    }

    /// Three points with prescribed pairwise distances `d(a,b)`, `d(a,c)`, `d(b,c)`.
    pub fn triangle(labels: [&str; 3], ab: f64, ac: f64, bc: f64) -> Result<Self> {
        FiniteMetricSpace::new(
            labels.iter().map(|s| s.to_string()).collect(),
            vec![vec![0.0, ab, ac], vec![ab, 0.0, bc], vec![ac, bc, 0.0]],
            false,
        )
    }

    /// The two-point space with distance `delta` and labels `p`, `q`.
    pub fn two_point(delta: f64) -> Self {
        FiniteMetricSpace {
            labels: vec!["p".into(), "q".into()],
            dist: vec![0.0, delta, delta, 0.0],
            pseudo: delta == 0.0,
        }
    }

    fn check(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            let dii = self.d(i, i);
            if dii != 0.0 {
                return Err(Error::NonzeroDiagonal { i, value: dii });
            }
            for j in (i + 1)..n {
                if !approx_eq(self.d(i, j), self.d(j, i), TOL) {
                    return Err(Error::Asymmetric {
                        i,
                        j,
                        forward: self.d(i, j),
                        backward: self.d(j, i),
                    });
                }
                if !self.pseudo && self.d(i, j) == 0.0 {
                    return Err(Error::ZeroOffDiagonal { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !approx_le(self.d(i, j), self.d(i, k) + self.d(k, j), TOL) {
                        return Err(Error::TriangleViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_pseudo(&self) -> bool {
        self.pseudo
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Distance between points `i` and `j`.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.len() + j]
    }

    pub fn matrix(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.d(i, j)).collect()).collect()
    }

    /// Largest pairwise distance; 0 for spaces with fewer than two points.
    pub fn diameter(&self) -> f64 {
        let n = self.len();
        let mut best: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.max(self.d(i, j));
            }
        }
        best
    }

    /// The subspace on the given point indices, keeping their labels.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let m = indices
            .iter()
            .map(|&i| indices.iter().map(|&j| self.d(i, j)).collect())
            .collect();
        FiniteMetricSpace::new(labels, m, self.pseudo)
    }

    /// Relabels the points in place order; lengths are untouched.
    pub fn with_labels(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::LabelMismatch(format!(
                "{} labels for {} points",
                labels.len(),
                self.len()
            )));
        }
        Ok(FiniteMetricSpace { labels, dist: self.dist.clone(), pseudo: self.pseudo })
    }
}

/// Validates a raw matrix as a metric space with labels `0..n`.
pub fn validate_metric(matrix: Vec<Vec<f64>>, pseudo: bool) -> Result<FiniteMetricSpace> {
    let labels = (0..matrix.len()).map(|i| i.to_string()).collect();
    FiniteMetricSpace::new(labels, matrix, pseudo)
}

/// The minimum off-diagonal distance `sep(X)`.
pub fn separation(space: &FiniteMetricSpace) -> Result<f64> {
    let n = space.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let mut best = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            best = best.min(space.d(i, j));
        }
    }
    Ok(best)
}

/// Multiplies every distance by `lambda > 0`.
pub fn scale_metric(space: &FiniteMetricSpace, lambda: f64) -> Result<FiniteMetricSpace> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonpositiveScale(lambda));
    }
    Ok(FiniteMetricSpace {
        labels: space.labels.clone(),
        dist: space.dist.iter().map(|&v| v * lambda).collect(),
        pseudo: space.pseudo,
    })
}

/// All-pairs shortest-path closure of a symmetric non-negative weight matrix:
/// the maximal (pseudo)metric pointwise below the weights.
pub fn path_metric(weights: &[Vec<f64>]) -> Result<FiniteMetricSpace> {
    let n = weights.len();
    if weights.iter().any(|row| row.len() != n) {
        return Err(Error::BadMatrix("weight matrix is not square".into()));
    }
    let mut d = vec![0.0f64; n * n];
    for i in 0..n {
        if weights[i][i] != 0.0 {
            return Err(Error::NonzeroDiagonal { i, value: weights[i][i] });
        }
        for j in 0..n {
            let w = weights[i][j];
            if !w.is_finite() || w < 0.0 {
                return Err(Error::BadMatrix(format!("weight {w} is not a finite length")));
            }
            if !approx_eq(w, weights[j][i], TOL) {
                return Err(Error::Asymmetric { i, j, forward: w, backward: weights[j][i] });
            }
            d[i * n + j] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i * n + k];
            for j in 0..n {
                let via = dik + d[k * n + j];
                if via < d[i * n + j] {
                    d[i * n + j] = via;
                }
            }
        }
    }
    // Symmetrize exactly: closure of a symmetric matrix is symmetric, but the
    // float loop above may pick different representatives for (i,j) and (j,i).
    for i in 0..n {
        for j in (i + 1)..n {
            let v = d[i * n + j].min(d[j * n + i]);
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    Ok(FiniteMetricSpace { labels, dist: d, pseudo: true })
}

/// Result of collapsing a space at scale `r`: the space of chain-equivalence
/// classes plus the projection map onto class labels.
pub struct QuotientAtScale {
    pub space: FiniteMetricSpace,
    pub projection: SetMap,
}

/// Quotients `X` by the relation "joined by a chain with gaps `<= r`".
///
/// Class distances are the path-metric closure of the minimum cross-pair
/// distances, so the result always has separation strictly above `r`.
pub fn quotient_at_scale(space: &FiniteMetricSpace, r: f64) -> Result<QuotientAtScale> {
    if r < 0.0 {
        return Err(Error::NegativeScale(r));
    }
    if space.is_empty() {
        return Err(Error::EmptySpace);
    }
    let n = space.len();
    let mut class = components_at_scale(space, r);
    let k = normalize_classes(&mut class);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, &c) in class.iter().enumerate() {
        members[c].push(i);
    }
    let mut weights = vec![vec![0.0; k]; k];
    for a in 0..k {
        for b in (a + 1)..k {
            let mut w = f64::INFINITY;
            for &i in &members[a] {
                for &j in &members[b] {
                    w = w.min(space.d(i, j));
                }
            }
            weights[a][b] = w;
            weights[b][a] = w;
        }
    }
    let closed = path_metric(&weights)?;
    let labels: Vec<String> = members
        .iter()
        .map(|m| {
            m.iter().map(|&i| space.label(i)).collect::<Vec<_>>().join("+")
        })
        .collect();
    let quotient = FiniteMetricSpace {
        labels: labels.clone(),
        dist: closed.dist,
        pseudo: false,
    };
    let projection = SetMap {
        domain: space.labels.clone(),
        codomain: labels,
        image: class,
    };
    Ok(QuotientAtScale { space: quotient, projection })
}

/// Connected components of the graph with edges `d(i,j) <= r`, as a class
/// index per point (classes unnormalized).
pub(crate) fn components_at_scale(space: &FiniteMetricSpace, r: f64) -> Vec<usize> {
    let n = space.len();
    let mut class = vec![usize::MAX; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if class[start] != usize::MAX {
            continue;
        }
        class[start] = next;
        stack.push(start);
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if class[j] == usize::MAX && space.d(i, j) <= r {
                    class[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    class
}

/// Renumbers class ids by first appearance; returns the class count.
pub(crate) fn normalize_classes(class: &mut [usize]) -> usize {
    let mut remap = std::collections::HashMap::new();
    let mut next = 0;
    for c in class.iter_mut() {
        let id = *remap.entry(*c).or_insert_with(|| {
            let id = next;
            next += 1;
            id
        });
        *c = id;
    }
    next
}

/// A total map between labeled point sets, stored as an image index per
/// domain point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SetMap {
    domain: Vec<String>,
    codomain: Vec<String>,
    image: Vec<usize>,
}

impl SetMap {
    pub fn new(domain: Vec<String>, codomain: Vec<String>, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.len() {
            return Err(Error::LabelMismatch(format!(
                "map assigns {} images to {} domain points",
                image.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&t| t >= codomain.len()) {
            return Err(Error::LabelMismatch(format!(
                "image index {bad} outside codomain of size {}",
                codomain.len()
            )));
        }
        Ok(SetMap { domain, codomain, image })
    }

    /// Builds a map from `(domain label, codomain label)` pairs.
    pub fn from_pairs(
        domain: &FiniteMetricSpace,
        codomain: &FiniteMetricSpace,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let mut image = vec![usize::MAX; domain.len()];
        for (from, to) in pairs {
            let i = domain
                .index_of(from)
                .ok_or_else(|| Error::LabelMismatch(format!("unknown domain label {from:?}")))?;
            let j = codomain
                .index_of(to)
                .ok_or_else(|| Error::LabelMismatch(format!("unknown codomain label {to:?}")))?;
            image[i] = j;
        }
        if let Some(i) = image.iter().position(|&t| t == usize::MAX) {
            return Err(Error::LabelMismatch(format!(
                "domain point {:?} has no image",
                domain.label(i)
            )));
        }
        SetMap::new(domain.labels().to_vec(), codomain.labels().to_vec(), image)
    }

    pub fn identity(labels: &[String]) -> Self {
        SetMap {
            domain: labels.to_vec(),
            codomain: labels.to_vec(),
            image: (0..labels.len()).collect(),
        }
    }

    pub fn domain_labels(&self) -> &[String] {
        &self.domain
    }

    pub fn codomain_labels(&self) -> &[String] {
        &self.codomain
    }

    /// Image index of domain point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain.len()];
        for &t in &self.image {
            if seen[t] {
                return false;
            }
            seen[t] = true;
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.len() == self.codomain.len() && self.is_injective()
    }

    /// `g` after `self`; domains must line up.
    pub fn compose(&self, g: &SetMap) -> Result<SetMap> {
        if self.codomain != g.domain {
            return Err(Error::LabelMismatch(
                "codomain of the first map differs from domain of the second".into(),
            ));
        }
        Ok(SetMap {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            image: self.image.iter().map(|&t| g.image[t]).collect(),
        })
    }
}

/// How a set map interacts with the two metrics: not a morphism at all,
/// distance non-increasing, additionally injective, or a full isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MorphismClass {
    None,
    General,
    Monic,
    Isometry,
}

/// Classifies `f` into the finest morphism class whose condition holds.
pub fn classify_morphism(
    f: &SetMap,
    domain: &FiniteMetricSpace,
    codomain: &FiniteMetricSpace,
) -> Result<MorphismClass> {
    if f.domain != domain.labels {
        return Err(Error::LabelMismatch("map domain differs from space labels".into()));
    }
    if f.codomain != codomain.labels {
        return Err(Error::LabelMismatch("map codomain differs from space labels".into()));
    }
    let n = domain.len();
    let mut non_increasing = true;
    let mut preserving = true;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = domain.d(i, j);
            let dy = codomain.d(f.apply(i), f.apply(j));
            if !approx_le(dy, dx, TOL) {
                non_increasing = false;
            }
            if !approx_eq(dy, dx, TOL) {
                preserving = false;
            }
        }
    }
    if !non_increasing {
        return Ok(MorphismClass::None);
    }
    if f.is_bijective() && preserving {
        return Ok(MorphismClass::Isometry);
    }
    if f.is_injective() {
        return Ok(MorphismClass::Monic);
    }
    Ok(MorphismClass::General)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_0_1_3() -> FiniteMetricSpace {
        FiniteMetricSpace::from_points(
            vec!["0".into(), "1".into(), "3".into()],
            &[[0.0, 0.0], [1.0, 0.0], [3.0, 0.0]],
        )
        .unwrap()
    }

    #[test]
    fn validate_accepts_two_point_space() {
        let x = validate_metric(vec![vec![0.0, 1.0], vec![1.0, 0.0]], false).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.d(0, 1), 1.0);
    }

    #[test]
    fn validate_rejects_asymmetry() {
        let err = validate_metric(vec![vec![0.0, 1.0], vec![2.0, 0.0]], false).unwrap_err();
        assert_eq!(err.name(), "Asymmetric");
    }

    #[test]
    fn validate_reports_triangle_violation() {
        let err = validate_metric(
            vec![vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0], vec![3.0, 1.0, 0.0]],
            false,
        )
        .unwrap_err();
        assert_eq!(err, Error::TriangleViolation { i: 0, j: 2, k: 1 });
    }

    #[test]
    fn validate_rejects_zero_off_diagonal_when_strict() {
        let m = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
        assert_eq!(
            validate_metric(m.clone(), false).unwrap_err().name(),
            "ZeroOffDiagonal"
        );
        assert!(validate_metric(m, true).is_ok());
    }

    #[test]
    fn separation_examples() {
        assert_eq!(separation(&FiniteMetricSpace::two_point(0.5)).unwrap(), 0.5);
        assert_eq!(separation(&line_0_1_3()).unwrap(), 1.0);
        let x = FiniteMetricSpace::triangle(["A", "B", "C"], 4.0, 3.0, 5.0).unwrap();
        assert_eq!(separation(&x).unwrap(), 3.0);
        let one = validate_metric(vec![vec![0.0]], false).unwrap();
        assert_eq!(separation(&one).unwrap_err().name(), "TooFewPoints");
    }

    #[test]
    fn scale_metric_examples() {
        let z = FiniteMetricSpace::two_point(1.0);
        assert_eq!(scale_metric(&z, 2.0).unwrap().d(0, 1), 2.0);
        assert_eq!(scale_metric(&z, 1.0).unwrap(), z);
        let l = scale_metric(&line_0_1_3(), 0.5).unwrap();
        assert_eq!((l.d(0, 1), l.d(1, 2), l.d(0, 2)), (0.5, 1.0, 1.5));
        assert_eq!(scale_metric(&z, 0.0).unwrap_err().name(), "NonpositiveScale");
    }

    #[test]
    fn scale_roundtrip_is_exact() {
        let x = line_0_1_3();
        let back = scale_metric(&scale_metric(&x, 4.0).unwrap(), 0.25).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(approx_eq(back.d(i, j), x.d(i, j), TOL));
            }
        }
    }

    #[test]
    fn path_metric_shortcuts() {
        let w = vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ];
        let d = path_metric(&w).unwrap();
        assert_eq!(d.d(0, 2), 2.0);
    }

    #[test]
    fn path_metric_fixes_large_direct_weight() {
        // Component-gap configuration: direct weight above the two-hop path.
        let (w13, w23, w12) = (2.0, 3.0, 7.0);
        let w = vec![
            vec![0.0, w12, w13],
            vec![w12, 0.0, w23],
            vec![w13, w23, 0.0],
        ];
        let d = path_metric(&w).unwrap();
        assert_eq!(d.d(0, 1), w13 + w23);
    }

    #[test]
    fn path_metric_idempotent_and_below_weights() {
        let w = vec![
            vec![0.0, 4.0, 1.0, 9.0],
            vec![4.0, 0.0, 2.0, 2.0],
            vec![1.0, 2.0, 0.0, 6.0],
            vec![9.0, 2.0, 6.0, 0.0],
        ];
        let d1 = path_metric(&w).unwrap();
        let d2 = path_metric(&d1.matrix()).unwrap();
        assert_eq!(d1, d2.with_labels(d1.labels().to_vec()).unwrap());
        for i in 0..4 {
            for j in 0..4 {
                assert!(d1.d(i, j) <= w[i][j]);
            }
        }
    }

    #[test]
    fn quotient_below_separation_is_identity() {
        let x = line_0_1_3();
        let q = quotient_at_scale(&x, 0.5).unwrap();
        assert_eq!(q.space.len(), 3);
        assert!(q.projection.is_bijective());
    }

    #[test]
    fn quotient_merges_chain_classes() {
        let x = line_0_1_3();
        let q = quotient_at_scale(&x, 1.0).unwrap();
        assert_eq!(q.space.len(), 2);
        assert_eq!(q.space.d(0, 1), 2.0);
        assert!(separation(&q.space).unwrap() > 1.0);
        let all = quotient_at_scale(&x, 2.0).unwrap();
        assert_eq!(all.space.len(), 1);
    }

    #[test]
    fn classify_identity_is_isometry() {
        let x = line_0_1_3();
        let id = SetMap::identity(x.labels());
        assert_eq!(classify_morphism(&id, &x, &x).unwrap(), MorphismClass::Isometry);
    }

    #[test]
    fn classify_strict_contraction_is_monic() {
        let x = FiniteMetricSpace::triangle(["A", "B", "C"], 4.0, 3.0, 5.0).unwrap();
        let y = FiniteMetricSpace::triangle(["A'", "B'", "C'"], 2.0, 3.0, 4.0).unwrap();
        let f = SetMap::from_pairs(&x, &y, &[("A", "A'"), ("B", "B'"), ("C", "C'")]).unwrap();
        assert_eq!(classify_morphism(&f, &x, &y).unwrap(), MorphismClass::Monic);
    }

    #[test]
    fn classify_constant_map_is_general() {
        let z = FiniteMetricSpace::two_point(1.0);
        let f = SetMap::new(z.labels().to_vec(), z.labels().to_vec(), vec![0, 0]).unwrap();
        assert_eq!(classify_morphism(&f, &z, &z).unwrap(), MorphismClass::General);
    }

    #[test]
    fn classify_expansion_is_none() {
        let a = FiniteMetricSpace::two_point(1.0);
        let b = FiniteMetricSpace::two_point(2.0);
        let f = SetMap::identity(a.labels());
        assert_eq!(classify_morphism(&f, &a, &b).unwrap(), MorphismClass::None);
    }

    #[test]
    fn composition_closures() {
        // Distance non-increasing maps compose; isometries compose.
        let x = line_0_1_3();
        let q1 = quotient_at_scale(&x, 1.0).unwrap();
        let f = q1.projection.clone();
        let q2 = quotient_at_scale(&q1.space, 2.0).unwrap();
        let g = q2.projection.clone();
        let gf = f.compose(&g).unwrap();
        assert!(classify_morphism(&f, &x, &q1.space).unwrap() >= MorphismClass::General);
        assert!(classify_morphism(&g, &q1.space, &q2.space).unwrap() >= MorphismClass::General);
        assert!(classify_morphism(&gf, &x, &q2.space).unwrap() >= MorphismClass::General);

        let id = SetMap::identity(x.labels());
        let idid = id.compose(&id).unwrap();
        assert_eq!(classify_morphism(&idid, &x, &x).unwrap(), MorphismClass::Isometry);
    }
}
