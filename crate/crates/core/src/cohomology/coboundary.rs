//! Degree-4 cocycles of Hom(Tot 𝒫, W^e) and the explicit 3-cochain n with
//! d(n) = m built from a certificate αφ + β₁φ₁ + β₂φ₂ = 1.
//!
//! Cochains are indexed like the modules they live on: n¹² ∈ Hom(𝒫₁₂, M)
//! has two components, and so on. A map with matrix D acts on a cochain by
//! left multiplication, (Dm)ᵢ = Σⱼ Dᵢⱼ·mⱼ.

use crate::calculus::{nc_diff, twisted_delta, twisted_diff, TwistLabel, TwistSymbol};
use crate::envelope::{env_mul, DifferentialSet, EnvElem, EnvMatrix};
use crate::error::{Error, Result};
use crate::gwa::{GwaAlgebra, GwaElem};
use crate::ideal::Certificate;
use crate::poly::Poly2;
use crate::report::{Check, Report};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cochain3 {
    pub n12: [EnvElem; 2],
    pub n21: [EnvElem; 4],
    pub n30: [EnvElem; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cochain4 {
    pub m22: [EnvElem; 2],
    pub m31: [EnvElem; 4],
    pub m40: [EnvElem; 2],
}

impl Cochain3 {
    pub fn is_zero(&self) -> bool {
        self.n12.iter().chain(&self.n21).chain(&self.n30).all(|e| e.is_zero())
    }
}

impl Cochain4 {
    pub fn is_zero(&self) -> bool {
        self.m22.iter().chain(&self.m31).chain(&self.m40).all(|e| e.is_zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = &EnvElem> {
        self.m22.iter().chain(&self.m31).chain(&self.m40)
    }

    pub fn entries_mut(&mut self) -> impl Iterator<Item = &mut EnvElem> {
        self.m22.iter_mut().chain(self.m31.iter_mut()).chain(self.m40.iter_mut())
    }
}

fn to_array<const N: usize>(v: Vec<EnvElem>) -> [EnvElem; N] {
    v.try_into().expect("length fixed by matrix shape")
}

fn sum(terms: impl IntoIterator<Item = EnvElem>) -> EnvElem {
    terms.into_iter().fold(EnvElem::zero(), |acc, t| &acc + &t)
}

/// A GWA together with its differentials, enough to reach cochain degree 4.
pub struct CochainComplex<'a> {
    pub w: &'a GwaAlgebra,
    pub ds: DifferentialSet,
}

impl<'a> CochainComplex<'a> {
    pub fn new(w: &'a GwaAlgebra) -> Result<Self> {
        Ok(CochainComplex { w, ds: DifferentialSet::build(w, 5)? })
    }

    fn map(&self, kind: crate::envelope::MapKind, p: usize, q: usize) -> &EnvMatrix {
        self.ds.get(kind, p, q).expect("map exists within depth 5")
    }

    fn act(&self, m: &EnvMatrix, v: &[EnvElem]) -> Vec<EnvElem> {
        m.act(self.w, v).expect("shapes fixed by construction")
    }

    fn add(a: Vec<EnvElem>, b: Vec<EnvElem>) -> Vec<EnvElem> {
        a.iter().zip(&b).map(|(x, y)| x + y).collect()
    }
}

/// d(n) for a 3-cochain:
/// m²² = d^h₁₂·n¹² + d^v₂₁·n²¹,
/// m³¹ = t₁₂·n¹² + d^h₂₁·n²¹ + d^v₃₀·n³⁰,
/// m⁴⁰ = t₂₁·n²¹ + d^h₃₀·n³⁰.
pub fn cochain_d3(cx: &CochainComplex, n: &Cochain3) -> Cochain4 {
    use crate::envelope::MapKind::*;
    let m22 = CochainComplex::add(cx.act(cx.map(H, 1, 2), &n.n12), cx.act(cx.map(V, 2, 1), &n.n21));
    let m31 = CochainComplex::add(
        CochainComplex::add(cx.act(cx.map(T, 1, 2), &n.n12), cx.act(cx.map(H, 2, 1), &n.n21)),
        cx.act(cx.map(V, 3, 0), &n.n30),
    );
    let m40 = CochainComplex::add(cx.act(cx.map(T, 2, 1), &n.n21), cx.act(cx.map(H, 3, 0), &n.n30));
    Cochain4 { m22: to_array(m22), m31: to_array(m31), m40: to_array(m40) }
}

/// Structure elements of the eight cocycle equations and of n.
struct Pieces {
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
}

impl Pieces {
    fn new(w: &GwaAlgebra) -> Self {
        let s = w.sigma();
        let phi = w.phi();
        let z = [Poly2::z1(), Poly2::z2()];
        let t = EnvElem::from_tensor;
        let id = TwistLabel::id();
        let sig = TwistLabel::sigma();
        let dl = |u: &TwistLabel, v: &TwistLabel| [1u8, 2].map(|i| t(twisted_delta(s, phi, i, u, v)));
        Pieces {
            x1: EnvElem::left(&GwaElem::x()),
            one_x: EnvElem::right(&GwaElem::x()),
            y1: EnvElem::left(&GwaElem::y()),
            one_y: EnvElem::right(&GwaElem::y()),
            dz: [0, 1].map(|i| t(nc_diff(&z[i]))),
            sdz: [0, 1].map(|i| t(twisted_diff(s, &z[i], &sig, &id))),
            dsz: [0, 1].map(|i| t(twisted_diff(s, &z[i], &id, &sig))),
            sdsz: [0, 1].map(|i| t(twisted_diff(s, &z[i], &sig, &sig))),
            d_phi: dl(&id, &id),
            sd_phi: dl(&sig, &id),
            ds_phi: dl(&id, &sig),
            sds_phi: dl(&sig, &sig),
        }
    }
}

/// Left-hand sides of the eight cocycle equations, transcribed term by term.
pub fn cocycle_residuals(w: &GwaAlgebra, m: &Cochain4) -> [EnvElem; 8] {
    let p = Pieces::new(w);
    let mul = |a: &EnvElem, b: &EnvElem| env_mul(w, a, b);
    let [a1, a2] = &m.m22;
    let [b1, b2, b3, b4] = &m.m31;
    let [c1, c2] = &m.m40;
    [
        sum([-&mul(&p.x1, a1), mul(&p.one_x, a2), -&mul(&p.sdz[1], b1), mul(&p.sdz[0], b2)]),
        sum([mul(&p.one_y, a1), -&mul(&p.y1, a2), -&mul(&p.dsz[1], b3), mul(&p.dsz[0], b4)]),
        sum([-&mul(&p.d_phi[1], a1), -&mul(&p.y1, b1), -&mul(&p.one_x, b3), mul(&p.dz[0], c1)]),
        sum([mul(&p.d_phi[0], a1), -&mul(&p.y1, b2), -&mul(&p.one_x, b4), mul(&p.dz[1], c1)]),
        sum([-&mul(&p.sds_phi[1], a2), -&mul(&p.one_y, b1), -&mul(&p.x1, b3), mul(&p.sdsz[0], c2)]),
        sum([mul(&p.sds_phi[0], a2), -&mul(&p.one_y, b2), -&mul(&p.x1, b4), mul(&p.sdsz[1], c2)]),
        sum([mul(&p.sd_phi[0], b1), mul(&p.sd_phi[1], b2), -&mul(&p.x1, c1), mul(&p.one_x, c2)]),
        sum([mul(&p.ds_phi[0], b3), mul(&p.ds_phi[1], b4), mul(&p.one_y, c1), -&mul(&p.y1, c2)]),
    ]
}

pub fn is_cocycle4(w: &GwaAlgebra, m: &Cochain4) -> Report {
    let checks = cocycle_residuals(w, m)
        .iter()
        .enumerate()
        .map(|(k, r)| {
            Check::from_bool("d(m) = 0 in cochain degree 5", format!("cocycle equation {}", k + 1), r.is_zero(), || {
                format!("residual {r}")
            })
        })
        .collect();
    Report::new("4-cocycle equations", checks)
}

/// The same test through the generic Hom differential:
/// d^h₂₂m²² + d^v₃₁m³¹, t₂₂m²² + d^h₃₁m³¹ + d^v₄₀m⁴⁰, t₃₁m³¹ + d^h₄₀m⁴⁰.
pub fn is_cocycle4_generic(cx: &CochainComplex, m: &Cochain4) -> bool {
    use crate::envelope::MapKind::*;
    let parts = [
        CochainComplex::add(cx.act(cx.map(H, 2, 2), &m.m22), cx.act(cx.map(V, 3, 1), &m.m31)),
        CochainComplex::add(
            CochainComplex::add(cx.act(cx.map(T, 2, 2), &m.m22), cx.act(cx.map(H, 3, 1), &m.m31)),
            cx.act(cx.map(V, 4, 0), &m.m40),
        ),
        CochainComplex::add(cx.act(cx.map(T, 3, 1), &m.m31), cx.act(cx.map(H, 4, 0), &m.m40)),
    ];
    parts.iter().flatten().all(|e| e.is_zero())
}

/// The 3-cochain n with d(n) = m, for a 4-cocycle m and a certificate.
pub fn build_n(w: &GwaAlgebra, cert: &Certificate, m: &Cochain4) -> Result<Cochain3> {
    if !cert.verify(w.phi()) {
        return Err(Error::InvalidCertificate);
    }
    if !is_cocycle4(w, m).all_passed() {
        return Err(Error::NotACocycle);
    }
    let s = w.sigma();
    let phi = w.phi();
    let mul = |a: &EnvElem, b: &EnvElem| env_mul(w, a, b);
    let right = |p: &Poly2| EnvElem::right(&GwaElem::from_poly(p.clone()));
    let b1 = right(&cert.beta1);
    let b2 = right(&cert.beta2);
    let sb1 = right(&w.twist(&cert.beta1, 1));
    let sb2 = right(&w.twist(&cert.beta2, 1));
    let ay = EnvElem::right(&GwaElem::monomial(cert.alpha.clone(), -1));
    let t = EnvElem::from_tensor;
    let lab = |syms: &[TwistSymbol]| TwistLabel(syms.to_vec());
    use TwistSymbol::{Partial, Sigma};
    // Δᵢ^{∂ᵢ}, ^σΔᵢ^{σ∂ᵢ}, ^σΔᵢ^{∂ᵢ}, Δᵢ^{σ∂ᵢ} applied to φ.
    let d_p = |i: u8| t(twisted_delta(s, phi, i, &TwistLabel::id(), &lab(&[Partial(i)])));
    let sd_sp = |i: u8| t(twisted_delta(s, phi, i, &lab(&[Sigma]), &lab(&[Sigma, Partial(i)])));
    let sd_p = |i: u8| t(twisted_delta(s, phi, i, &lab(&[Sigma]), &lab(&[Partial(i)])));
    let d_sp = |i: u8| t(twisted_delta(s, phi, i, &TwistLabel::id(), &lab(&[Sigma, Partial(i)])));

    let [m22_1, m22_2] = &m.m22;
    let [m31_1, m31_2, m31_3, m31_4] = &m.m31;
    let [m40_1, m40_2] = &m.m40;
    let mul3 = |a: &EnvElem, b: &EnvElem, c: &EnvElem| mul(&mul(a, b), c);

    let n12 = [&mul(&b1, m31_2) - &mul(&b2, m31_1), sum([mul(&sb1, m31_4), -&mul(&sb2, m31_3), mul(&ay, m22_1)])];
    let n21 = [
        &mul(&b1, m40_1) + &mul3(&b2, &d_p(2), m22_1),
        &mul(&b2, m40_1) - &mul3(&b1, &d_p(1), m22_1),
        sum([mul(&sb1, m40_2), -&mul(&ay, m31_1), mul3(&sb2, &sd_sp(2), m22_2)]),
        sum([mul(&sb2, m40_2), -&mul(&ay, m31_2), -&mul3(&sb1, &sd_sp(1), m22_2)]),
    ];
    let n30 = [
        -&(&mul3(&b1, &sd_p(1), m31_1) + &mul3(&b2, &sd_p(2), m31_2)),
        sum([mul(&ay, m40_1), -&mul3(&sb1, &d_sp(1), m31_3), -&mul3(&sb2, &d_sp(2), m31_4)]),
    ];
    Ok(Cochain3 { n12, n21, n30 })
}
