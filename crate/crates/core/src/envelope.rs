//! The enveloping algebra W^e = W ⊗ W^op, matrices over it, and the
//! differentials of the homotopy double complex resolving W.
//!
//! Free-module elements are row vectors and a map with matrix M sends v to
//! v·M, so a matrix has one row per basis element of its source. The
//! composite f∘g therefore has matrix M(g)·M(f).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::calculus::{delta, nc_diff, nc_jacobian, twist_tensor, twisted_diff, TwistLabel};
use crate::error::{Error, Result};
use crate::gwa::{GwaAlgebra, GwaElem};
use crate::poly::{Poly2, Poly4, Rational};
use crate::report::{Check, Report};

/// Σ p'·m_a ⊗ p''·m_b, keyed by (a, b) with the B⊗B coefficient Σ p'⊗p''.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct EnvElem {
    parts: BTreeMap<(i64, i64), Poly4>,
}

impl EnvElem {
    pub fn zero() -> Self {
        EnvElem { parts: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_tensor(Poly4::one())
    }

    /// Embeds B⊗B.
    pub fn from_tensor(t: Poly4) -> Self {
        Self::monomial(t, 0, 0)
    }

    pub fn monomial(t: Poly4, a: i64, b: i64) -> Self {
        let mut e = Self::zero();
        e.add_at((a, b), &t);
        e
    }

    /// u ⊗ v.
    pub fn tensor(u: &GwaElem, v: &GwaElem) -> Self {
        let mut e = Self::zero();
        for (a, p) in u.parts() {
            for (b, q) in v.parts() {
                e.add_at((*a, *b), &p.tensor(q));
            }
        }
        e
    }

    /// u ⊗ 1.
    pub fn left(u: &GwaElem) -> Self {
        Self::tensor(u, &GwaElem::one())
    }

    /// 1 ⊗ v.
    pub fn right(v: &GwaElem) -> Self {
        Self::tensor(&GwaElem::one(), v)
    }

    pub fn add_at(&mut self, key: (i64, i64), t: &Poly4) {
        if t.is_zero() {
            return;
        }
        let slot = self.parts.entry(key).or_default();
        *slot += t;
        if slot.is_zero() {
            self.parts.remove(&key);
        }
    }

    pub fn parts(&self) -> &BTreeMap<(i64, i64), Poly4> {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        EnvElem { parts: self.parts.iter().map(|(k, t)| (*k, t.scale(c))).collect() }
    }

    /// Number of stored (basis ⊗ basis) terms.
    pub fn term_count(&self) -> usize {
        self.parts.values().map(|t| t.len()).sum()
    }

    /// Largest |degree| on either side.
    pub fn max_power(&self) -> i64 {
        self.parts.keys().map(|(a, b)| a.abs().max(b.abs())).max().unwrap_or(0)
    }
}

impl std::ops::Add for &EnvElem {
    type Output = EnvElem;
    fn add(self, rhs: &EnvElem) -> EnvElem {
        let mut out = self.clone();
        for (k, t) in &rhs.parts {
            out.add_at(*k, t);
        }
        out
    }
}

impl std::ops::Sub for &EnvElem {
    type Output = EnvElem;
    fn sub(self, rhs: &EnvElem) -> EnvElem {
        let mut out = self.clone();
        for (k, t) in &rhs.parts {
            out.add_at(*k, &-t);
        }
        out
    }
}

impl std::ops::Neg for &EnvElem {
    type Output = EnvElem;
    fn neg(self) -> EnvElem {
        self.scale(&-Rational::one())
    }
}

impl std::ops::AddAssign<&EnvElem> for EnvElem {
    fn add_assign(&mut self, rhs: &EnvElem) {
        for (k, t) in &rhs.parts {
            self.add_at(*k, t);
        }
    }
}

fn power_name(n: i64) -> String {
    match n {
        0 => String::new(),
        1 => "x".into(),
        -1 => "y".into(),
        n if n > 0 => format!("x^{n}"),
        n => format!("y^{}", -n),
    }
}

impl fmt::Display for EnvElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((a, b), t) in &self.parts {
            for (l, r) in t.split_by_left().into_iter().flat_map(|(lm, rp)| {
                rp.terms()
                    .map(|(rm, c)| (Poly2::monomial(lm, c.clone()), Poly2::monomial(*rm, Rational::one())))
                    .collect::<Vec<_>>()
            }) {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                let side = |p: &Poly2, n: i64| {
                    let m = power_name(n);
                    match (p.to_string().as_str(), m.is_empty()) {
                        ("1", false) => m,
                        (s, true) => s.to_string(),
                        (s, false) => format!("{s}*{m}"),
                    }
                };
                write!(f, "({})⊗({})", side(&l, *a), side(&r, *b))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for EnvElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EnvElem({self})")
    }
}

/// (w₁⊗w₂)(w₃⊗w₄) = w₁w₃ ⊗ w₄w₂.
pub fn env_mul(w: &GwaAlgebra, u: &EnvElem, v: &EnvElem) -> EnvElem {
    let sigma = w.sigma();
    let mut out = EnvElem::zero();
    // (id⊗σ^d)(P) is shared by all right-hand terms with the same d, and
    // (σ^a⊗id)(Q) by all left-hand terms with the same a.
    let mut left_twisted: BTreeMap<((i64, i64), i64), Poly4> = BTreeMap::new();
    let mut right_twisted: BTreeMap<((i64, i64), i64), Poly4> = BTreeMap::new();
    for (&(a, b), p) in &u.parts {
        for (&(c, d), q) in &v.parts {
            let pt = left_twisted.entry(((a, b), d)).or_insert_with(|| twist_tensor(sigma, p, 0, d)).clone();
            let qt = right_twisted.entry(((c, d), a)).or_insert_with(|| twist_tensor(sigma, q, a, 0)).clone();
            let cl = w.mixed_coeff(a, c);
            let cr = w.mixed_coeff(d, b);
            let mut t = &pt * &qt;
            if !cl.is_constant() || !cr.is_constant() || !cl.is_one() || !cr.is_one() {
                t = &t * &cl.tensor(&cr);
            }
            out.add_at((a + c, d + b), &t);
        }
    }
    out
}

/// μ(a⊗b) = ab, the augmentation W^e → W.
pub fn env_mu(w: &GwaAlgebra, u: &EnvElem) -> GwaElem {
    let mut out = GwaElem::zero();
    for ((a, b), t) in &u.parts {
        for (l, rp) in t.split_by_left() {
            let left = GwaElem::monomial(Poly2::monomial(l, Rational::one()), *a);
            let right = GwaElem::monomial(rp, *b);
            out = &out + &w.multiply(&left, &right);
        }
    }
    out
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for Poly2 {
    fn is_one(&self) -> bool {
        self.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct EnvMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<EnvElem>,
}

impl EnvMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        EnvMatrix { rows, cols, entries: vec![EnvElem::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, EnvElem::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<EnvElem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        EnvMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &EnvElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: EnvElem) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &EnvMatrix) -> Result<EnvMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(EnvMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    /// Plain matrix product self·other with entries multiplied in W^e.
    pub fn product(&self, w: &GwaAlgebra, other: &EnvMatrix) -> Result<EnvMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = EnvMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = EnvElem::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc += &env_mul(w, a, b);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Matrix of f∘g for f = self, g = inner.
    pub fn compose(&self, w: &GwaAlgebra, inner: &EnvMatrix) -> Result<EnvMatrix> {
        inner.product(w, self)
    }

    /// The induced map on cochains Hom(target, M) → Hom(source, M) for
    /// M = W^e: (Dm)ᵢ = Σⱼ Dᵢⱼ·mⱼ.
    pub fn act(&self, w: &GwaAlgebra, m: &[EnvElem]) -> Result<Vec<EnvElem>> {
        if m.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cochain of length {} for a map with {} target generators",
                m.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = EnvElem::zero();
                for (j, mj) in m.iter().enumerate() {
                    let d = self.get(i, j);
                    if !d.is_zero() && !mj.is_zero() {
                        acc += &env_mul(w, d, mj);
                    }
                }
                acc
            })
            .collect())
    }
}

impl fmt::Debug for EnvMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "EnvMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Kind of structure map in the double complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapKind {
    /// d^v_{pq}: P_{p,q+1} → P_{pq}
    V,
    /// d^h_{pq}: P_{p+1,q} → P_{pq}
    H,
    /// t_{pq}: P_{p+2,q−1} → P_{pq}
    T,
}

impl MapKind {
    pub fn source(self, p: usize, q: usize) -> Option<(usize, usize)> {
        match self {
            MapKind::V => (q < 2).then_some((p, q + 1)),
            MapKind::H => Some((p + 1, q)),
            MapKind::T => (q >= 1).then_some((p + 2, q - 1)),
        }
    }

    fn label(self) -> &'static str {
        match self {
            MapKind::V => "dv",
            MapKind::H => "dh",
            MapKind::T => "t",
        }
    }
}

/// Rank of P_{pq} as a free W^e-module.
pub fn rank(p: usize, q: usize) -> usize {
    match (p, q) {
        (0, 0) | (0, 2) => 1,
        (0, 1) => 2,
        (_, 1) => 4,
        (_, 0) | (_, 2) => 2,
        _ => 0,
    }
}

/// Column of the base data a column p is copied from.
fn base_column(p: usize) -> usize {
    if p <= 2 {
        p
    } else {
        1 + (p - 1) % 2
    }
}

/// Matrices d^v, d^h, t for columns 0..=depth.
pub struct DifferentialSet {
    depth: usize,
    maps: BTreeMap<(MapKind, usize, usize), EnvMatrix>,
}

/// The B⊗B and W^e building blocks of the differentials.
struct Blocks {
    x1: EnvElem,
    one_x: EnvElem,
    y1: EnvElem,
    one_y: EnvElem,
    dz: [EnvElem; 2],
    sdz: [EnvElem; 2],
    dsz: [EnvElem; 2],
    sdsz: [EnvElem; 2],
    d_phi: [EnvElem; 2],
    sd_phi: [EnvElem; 2],
    ds_phi: [EnvElem; 2],
    sds_phi: [EnvElem; 2],
    /// Δᵢ(fⱼ) at [i−1][j−1].
    d_f: [[EnvElem; 2]; 2],
    j_nc: EnvElem,
}

impl Blocks {
    fn new(w: &GwaAlgebra) -> Self {
        let s = w.sigma();
        let phi = w.phi();
        let z = [Poly2::z1(), Poly2::z2()];
        let t = EnvElem::from_tensor;
        let sig = TwistLabel::sigma();
        let id = TwistLabel::id();
        let twisted = |u: &TwistLabel, v: &TwistLabel| -> [EnvElem; 2] {
            [1u8, 2].map(|i| t(crate::calculus::twisted_delta(s, phi, i, u, v)))
        };
        let f = s.images();
        Blocks {
            x1: EnvElem::left(&GwaElem::x()),
            one_x: EnvElem::right(&GwaElem::x()),
            y1: EnvElem::left(&GwaElem::y()),
            one_y: EnvElem::right(&GwaElem::y()),
            dz: [0, 1].map(|i| t(nc_diff(&z[i]))),
            sdz: [0, 1].map(|i| t(twisted_diff(s, &z[i], &sig, &id))),
            dsz: [0, 1].map(|i| t(twisted_diff(s, &z[i], &id, &sig))),
            sdsz: [0, 1].map(|i| t(twisted_diff(s, &z[i], &sig, &sig))),
            d_phi: twisted(&id, &id),
            sd_phi: twisted(&sig, &id),
            ds_phi: twisted(&id, &sig),
            sds_phi: twisted(&sig, &sig),
            d_f: [1u8, 2].map(|i| [0, 1].map(|j| t(delta(&f[j], i)))),
            j_nc: t(nc_jacobian(s)),
        }
    }
}

impl DifferentialSet {
    pub fn build(w: &GwaAlgebra, depth: usize) -> Result<Self> {
        if w.phi().is_zero() {
            return Err(Error::ZeroPhi);
        }
        if depth < 4 {
            return Err(Error::InvalidDepth(depth));
        }
        let b = Blocks::new(w);
        let z = EnvElem::zero;
        let m = |e: &EnvElem, f: &EnvElem| env_mul(w, e, f);
        let neg = |e: &EnvElem| -e;

        let mut base: BTreeMap<(MapKind, usize, usize), EnvMatrix> = BTreeMap::new();
        use MapKind::*;

        base.insert((V, 0, 0), EnvMatrix::from_rows(vec![vec![b.dz[0].clone()], vec![b.dz[1].clone()]]));
        base.insert((V, 0, 1), EnvMatrix::from_rows(vec![vec![neg(&b.dz[1]), b.dz[0].clone()]]));
        base.insert(
            (V, 1, 0),
            EnvMatrix::from_rows(vec![
                vec![b.sdz[0].clone(), z()],
                vec![b.sdz[1].clone(), z()],
                vec![z(), b.dsz[0].clone()],
                vec![z(), b.dsz[1].clone()],
            ]),
        );
        base.insert(
            (V, 1, 1),
            EnvMatrix::from_rows(vec![
                vec![neg(&b.sdz[1]), b.sdz[0].clone(), z(), z()],
                vec![z(), z(), neg(&b.dsz[1]), b.dsz[0].clone()],
            ]),
        );
        base.insert(
            (V, 2, 0),
            EnvMatrix::from_rows(vec![
                vec![b.dz[0].clone(), z()],
                vec![b.dz[1].clone(), z()],
                vec![z(), b.sdsz[0].clone()],
                vec![z(), b.sdsz[1].clone()],
            ]),
        );
        base.insert(
            (V, 2, 1),
            EnvMatrix::from_rows(vec![
                vec![neg(&b.dz[1]), b.dz[0].clone(), z(), z()],
                vec![z(), z(), neg(&b.sdsz[1]), b.sdsz[0].clone()],
            ]),
        );

        base.insert((H, 0, 0), EnvMatrix::from_rows(vec![vec![&b.one_x - &b.x1], vec![&b.one_y - &b.y1]]));
        let xd = |i: usize, j: usize| m(&b.one_x, &b.d_f[i][j]);
        let yd = |i: usize, j: usize| m(&b.y1, &b.d_f[i][j]);
        base.insert(
            (H, 0, 1),
            EnvMatrix::from_rows(vec![
                vec![&b.x1 - &xd(0, 0), neg(&xd(1, 0))],
                vec![neg(&xd(0, 1)), &b.x1 - &xd(1, 1)],
                vec![&yd(0, 0) - &b.one_y, yd(1, 0)],
                vec![yd(0, 1), &yd(1, 1) - &b.one_y],
            ]),
        );
        base.insert(
            (H, 0, 2),
            EnvMatrix::from_rows(vec![vec![&m(&b.one_x, &b.j_nc) - &b.x1], vec![&b.one_y - &m(&b.y1, &b.j_nc)]]),
        );
        let h10 = EnvMatrix::from_rows(vec![vec![b.y1.clone(), b.one_x.clone()], vec![b.one_y.clone(), b.x1.clone()]]);
        base.insert((H, 1, 0), h10.clone());
        base.insert((H, 1, 2), h10);
        base.insert(
            (H, 1, 1),
            EnvMatrix::from_rows(vec![
                vec![neg(&b.y1), z(), neg(&b.one_x), z()],
                vec![z(), neg(&b.y1), z(), neg(&b.one_x)],
                vec![neg(&b.one_y), z(), neg(&b.x1), z()],
                vec![z(), neg(&b.one_y), z(), neg(&b.x1)],
            ]),
        );
        let h20 = EnvMatrix::from_rows(vec![vec![neg(&b.x1), b.one_x.clone()], vec![b.one_y.clone(), neg(&b.y1)]]);
        base.insert((H, 2, 0), h20.clone());
        base.insert((H, 2, 2), h20);
        base.insert(
            (H, 2, 1),
            EnvMatrix::from_rows(vec![
                vec![b.x1.clone(), z(), neg(&b.one_x), z()],
                vec![z(), b.x1.clone(), z(), neg(&b.one_x)],
                vec![neg(&b.one_y), z(), b.y1.clone(), z()],
                vec![z(), neg(&b.one_y), z(), b.y1.clone()],
            ]),
        );

        let sds_df = |j: usize| &m(&b.sds_phi[0], &b.d_f[j][0]) + &m(&b.sds_phi[1], &b.d_f[j][1]);
        base.insert(
            (T, 0, 1),
            EnvMatrix::from_rows(vec![vec![b.d_phi[0].clone(), b.d_phi[1].clone()], vec![sds_df(0), sds_df(1)]]),
        );
        base.insert(
            (T, 0, 2),
            EnvMatrix::from_rows(vec![
                vec![neg(&b.d_phi[1])],
                vec![b.d_phi[0].clone()],
                vec![neg(&m(&b.j_nc, &b.sds_phi[1]))],
                vec![m(&b.j_nc, &b.sds_phi[0])],
            ]),
        );
        base.insert(
            (T, 1, 1),
            EnvMatrix::from_rows(vec![
                vec![b.sd_phi[0].clone(), b.sd_phi[1].clone(), z(), z()],
                vec![z(), z(), b.ds_phi[0].clone(), b.ds_phi[1].clone()],
            ]),
        );
        base.insert(
            (T, 1, 2),
            EnvMatrix::from_rows(vec![
                vec![neg(&b.sd_phi[1]), z()],
                vec![b.sd_phi[0].clone(), z()],
                vec![z(), neg(&b.ds_phi[1])],
                vec![z(), b.ds_phi[0].clone()],
            ]),
        );
        base.insert(
            (T, 2, 1),
            EnvMatrix::from_rows(vec![
                vec![b.d_phi[0].clone(), b.d_phi[1].clone(), z(), z()],
                vec![z(), z(), b.sds_phi[0].clone(), b.sds_phi[1].clone()],
            ]),
        );
        base.insert(
            (T, 2, 2),
            EnvMatrix::from_rows(vec![
                vec![neg(&b.d_phi[1]), z()],
                vec![b.d_phi[0].clone(), z()],
                vec![z(), neg(&b.sds_phi[1])],
                vec![z(), b.sds_phi[0].clone()],
            ]),
        );

        let mut maps = BTreeMap::new();
        for p in 0..=depth {
            for ((kind, bp, q), mat) in &base {
                if *bp == base_column(p) {
                    debug_assert_eq!(mat.rows(), {
                        let (sp, sq) = kind.source(p, *q).expect("source exists");
                        rank(sp, sq)
                    });
                    debug_assert_eq!(mat.cols(), rank(p, *q));
                    maps.insert((*kind, p, *q), mat.clone());
                }
            }
        }
        Ok(DifferentialSet { depth, maps })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The map of the given kind with target P_{pq}, if it is nonzero.
    pub fn get(&self, kind: MapKind, p: usize, q: usize) -> Option<&EnvMatrix> {
        self.maps.get(&(kind, p, q))
    }

    pub fn dv(&self, p: usize, q: usize) -> Option<&EnvMatrix> {
        self.get(MapKind::V, p, q)
    }

    pub fn dh(&self, p: usize, q: usize) -> Option<&EnvMatrix> {
        self.get(MapKind::H, p, q)
    }

    pub fn t(&self, p: usize, q: usize) -> Option<&EnvMatrix> {
        self.get(MapKind::T, p, q)
    }

    /// Every identity instance whose maps all fit within the depth.
    fn identity_instances(&self) -> Vec<Instance> {
        use MapKind::*;
        let mut out = Vec::new();
        let d = self.depth;
        for p in 0..=d {
            for q in 0..=2usize {
                // d_v d_v: P_{p,q+2} → P_{pq}
                if q == 0 {
                    out.push(Instance::new("dv∘dv = 0", (p, q + 2), (p, q), vec![[(V, p, q), (V, p, q + 1)]]));
                }
                // d_h d_v + d_v d_h: P_{p+1,q+1} → P_{pq}
                if q <= 1 && p < d {
                    out.push(Instance::new(
                        "dh∘dv + dv∘dh = 0",
                        (p + 1, q + 1),
                        (p, q),
                        vec![[(H, p, q), (V, p + 1, q)], [(V, p, q), (H, p, q + 1)]],
                    ));
                }
                // d_h d_h + d_v t + t d_v: P_{p+2,q} → P_{pq}
                if p + 2 <= d {
                    let mut terms = vec![[(H, p, q), (H, p + 1, q)]];
                    if q < 2 {
                        terms.push([(V, p, q), (T, p, q + 1)]);
                    }
                    if q >= 1 {
                        terms.push([(T, p, q), (V, p + 2, q - 1)]);
                    }
                    out.push(Instance::new("dh∘dh + dv∘t + t∘dv = 0", (p + 2, q), (p, q), terms));
                }
                // d_h t + t d_h: P_{p+3,q−1} → P_{pq}
                if q >= 1 && p + 3 <= d {
                    out.push(Instance::new(
                        "dh∘t + t∘dh = 0",
                        (p + 3, q - 1),
                        (p, q),
                        vec![[(H, p, q), (T, p + 1, q)], [(T, p, q), (H, p + 2, q - 1)]],
                    ));
                }
                // t t: P_{p+4,q−2} → P_{pq}
                if q == 2 && p + 4 <= d {
                    out.push(Instance::new("t∘t = 0", (p + 4, 0), (p, 2), vec![[(T, p, 2), (T, p + 2, 1)]]));
                }
            }
        }
        out
    }

    fn evaluate(&self, w: &GwaAlgebra, inst: &Instance) -> Result<EnvMatrix> {
        let mut acc = EnvMatrix::zero(rank(inst.source.0, inst.source.1), rank(inst.target.0, inst.target.1));
        for [outer, inner] in &inst.terms {
            let f = self.maps.get(outer).expect("outer map present");
            let g = self.maps.get(inner).expect("inner map present");
            acc = acc.add(&f.compose(w, g)?)?;
        }
        Ok(acc)
    }

    /// Checks every instance of the five homotopy identities.
    pub fn verify_homotopy(&self, w: &GwaAlgebra) -> Report {
        let instances = self.identity_instances();
        let checks: Vec<Check> = instances
            .par_iter()
            .map(|inst| {
                let label = format!(
                    "{} at P{}{} → P{}{}",
                    inst.anchor, inst.source.0, inst.source.1, inst.target.0, inst.target.1
                );
                match self.evaluate(w, inst) {
                    Ok(m) if m.is_zero() => Check::pass(inst.anchor, label),
                    Ok(m) => Check::fail(inst.anchor, label, format!("nonzero matrix {m:?}")),
                    Err(e) => Check::fail(inst.anchor, label, e.to_string()),
                }
            })
            .collect();
        Report::new("homotopy double complex identities", checks)
    }

    /// The matrix of Tot d : Tot_n → Tot_{n−1}, with blocks ordered by q.
    pub fn total_differential(&self, n: usize) -> Result<EnvMatrix> {
        if n == 0 || n > self.depth {
            return Err(Error::DimensionMismatch(format!("total degree {n} outside 1..={}", self.depth)));
        }
        let blocks =
            |deg: usize| -> Vec<(usize, usize)> { (0..=2usize).filter(|q| *q <= deg).map(|q| (deg - q, q)).collect() };
        let src = blocks(n);
        let tgt = blocks(n - 1);
        let offsets = |bs: &[(usize, usize)]| {
            let mut off = Vec::new();
            let mut acc = 0;
            for &(p, q) in bs {
                off.push(acc);
                acc += rank(p, q);
            }
            (off, acc)
        };
        let (so, srows) = offsets(&src);
        let (to, tcols) = offsets(&tgt);
        let mut m = EnvMatrix::zero(srows, tcols);
        for (si, &(p, q)) in src.iter().enumerate() {
            for (ti, &(tp, tq)) in tgt.iter().enumerate() {
                let map = if tp == p && tq + 1 == q {
                    self.dv(tp, tq)
                } else if tp + 1 == p && tq == q {
                    self.dh(tp, tq)
                } else if tp + 2 == p && tq == q + 1 {
                    self.t(tp, tq)
                } else {
                    None
                };
                if let Some(mat) = map {
                    for i in 0..mat.rows() {
                        for j in 0..mat.cols() {
                            m.set(so[si] + i, to[ti] + j, mat.get(i, j).clone());
                        }
                    }
                }
            }
        }
        Ok(m)
    }

    /// d∘d = 0 on Tot at every degree up to the depth, plus μ∘d₁ = 0.
    pub fn total_d_squared(&self, w: &GwaAlgebra) -> Report {
        let mut checks: Vec<Check> = (2..=self.depth)
            .into_par_iter()
            .map(|n| {
                let anchor = "Tot d∘d = 0";
                let label = format!("Tot degree {n} → {}", n - 2);
                let r = self
                    .total_differential(n)
                    .and_then(|dn| self.total_differential(n - 1).and_then(|dm| dm.compose(w, &dn)));
                match r {
                    Ok(m) if m.is_zero() => Check::pass(anchor, label),
                    Ok(m) => Check::fail(anchor, label, format!("nonzero matrix {m:?}")),
                    Err(e) => Check::fail(anchor, label, e.to_string()),
                }
            })
            .collect();
        let anchor = "μ∘d = 0 on Tot degree 1";
        let aug = self.total_differential(1).map(|d1| (0..d1.rows()).all(|i| env_mu(w, d1.get(i, 0)).is_zero()));
        checks.push(match aug {
            Ok(true) => Check::pass(anchor, "augmentation kills the image of Tot degree 1".into()),
            Ok(false) => Check::fail(anchor, "augmentation".into(), "μ of an entry is nonzero".into()),
            Err(e) => Check::fail(anchor, "augmentation".into(), e.to_string()),
        });
        Report::new("total complex d∘d = 0", checks)
    }
}

struct Instance {
    anchor: &'static str,
    source: (usize, usize),
    target: (usize, usize),
    /// Pairs (outer, inner) of map keys, each contributing outer∘inner.
    terms: Vec<[(MapKind, usize, usize); 2]>,
}

impl Instance {
    fn new(
        anchor: &'static str,
        source: (usize, usize),
        target: (usize, usize),
        terms: Vec<[(MapKind, usize, usize); 2]>,
    ) -> Self {
        Instance { anchor, source, target, terms }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{AutGenerator, AutWord};

    fn alg() -> GwaAlgebra {
        let s = AutWord::new(vec![AutGenerator::affine_int([[1, 1], [0, 1]], [1, 0])]);
        GwaAlgebra::new(s, Poly2::z1() * Poly2::z2() + Poly2::z2())
    }

    #[test]
    fn opposite_order_in_right_factor() {
        let w = alg();
        let x = GwaElem::x();
        let y = GwaElem::y();
        assert_eq!(env_mul(&w, &EnvElem::left(&x), &EnvElem::right(&x)), EnvElem::tensor(&x, &x));
        assert_eq!(
            env_mul(&w, &EnvElem::right(&x), &EnvElem::right(&y)),
            EnvElem::right(&GwaElem::from_poly(w.phi().clone()))
        );
        let a = EnvElem::left(&GwaElem::from_poly(Poly2::z1()));
        let b = EnvElem::right(&GwaElem::from_poly(Poly2::z2()));
        assert_eq!(env_mul(&w, &a, &b), env_mul(&w, &b, &a));
        assert_eq!(env_mul(&w, &a, &b), EnvElem::from_tensor(Poly2::z1().tensor(&Poly2::z2())));
    }

    #[test]
    fn compose_with_identity() {
        let w = alg();
        let ds = DifferentialSet::build(&w, 4).unwrap();
        let m = ds.dh(0, 1).unwrap();
        assert_eq!(&m.compose(&w, &EnvMatrix::identity(4)).unwrap(), m);
        assert!(m.compose(&w, &EnvMatrix::identity(3)).is_err());
    }

    #[test]
    fn zero_phi_is_rejected() {
        let w = GwaAlgebra::new(AutWord::identity(), Poly2::zero());
        assert!(matches!(DifferentialSet::build(&w, 5), Err(Error::ZeroPhi)));
    }
}
