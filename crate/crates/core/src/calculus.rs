//! Noncommutative differential calculus on B: d g, Δ₁, Δ₂, their twists,
//! J_nc and the multiplication map μ. Everything lives in the commutative
//! ring B⊗B.

use std::fmt;

use num_traits::One;

use crate::aut::AutWord;
use crate::poly::{Mono, Poly2, Poly4, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwistSymbol {
    Id,
    Sigma,
    SigmaInv,
    /// ∂/∂z₁ or ∂/∂z₂.
    Partial(u8),
}

/// A composite map written like `σ∂₁`, applied rightmost first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TwistLabel(pub Vec<TwistSymbol>);

impl TwistLabel {
    pub fn id() -> Self {
        TwistLabel(Vec::new())
    }

    pub fn sigma() -> Self {
        TwistLabel(vec![TwistSymbol::Sigma])
    }

    pub fn sigma_inv() -> Self {
        TwistLabel(vec![TwistSymbol::SigmaInv])
    }

    pub fn partial(axis: u8) -> Self {
        TwistLabel(vec![TwistSymbol::Partial(axis)])
    }

    /// σ∘∂ᵢ.
    pub fn sigma_partial(axis: u8) -> Self {
        TwistLabel(vec![TwistSymbol::Sigma, TwistSymbol::Partial(axis)])
    }

    pub fn is_id(&self) -> bool {
        self.0.iter().all(|s| *s == TwistSymbol::Id)
    }

    pub fn apply(&self, sigma: &AutWord, p: &Poly2) -> Poly2 {
        let mut out = p.clone();
        for s in self.0.iter().rev() {
            out = match s {
                TwistSymbol::Id => out,
                TwistSymbol::Sigma => sigma.apply(&out, 1),
                TwistSymbol::SigmaInv => sigma.apply(&out, -1),
                TwistSymbol::Partial(a) => out.partial(*a as usize - 1),
            };
        }
        out
    }
}

impl fmt::Display for TwistLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_id() {
            return f.write_str("id");
        }
        for s in &self.0 {
            match s {
                TwistSymbol::Id => {}
                TwistSymbol::Sigma => f.write_str("σ")?,
                TwistSymbol::SigmaInv => f.write_str("σ⁻¹")?,
                TwistSymbol::Partial(a) => write!(f, "∂{a}")?,
            }
        }
        Ok(())
    }
}

/// d g = g⊗1 − 1⊗g.
pub fn nc_diff(g: &Poly2) -> Poly4 {
    g.tensor_left() - g.tensor_right()
}

/// Δ₁ or Δ₂ (axis 1 or 2).
pub fn delta(g: &Poly2, axis: u8) -> Poly4 {
    let mut out = Poly4::zero();
    for (m, c) in g.terms() {
        let [a, b] = m.0;
        match axis {
            1 => {
                for j in 1..=a {
                    out.add_term(Mono([a - j, 0, j - 1, b]), c.clone());
                }
            }
            2 => {
                for j in 1..=b {
                    out.add_term(Mono([a, b - j, 0, j - 1]), c.clone());
                }
            }
            _ => panic!("axis must be 1 or 2"),
        }
    }
    out
}

/// The telescoped value of Δᵢ(g) − Δᵢ^{∂ᵢ}(g) d zᵢ. For i = 1 this is
/// 1⊗∂₁g. Δ₂ keeps the z₁ factor on the left, so for i = 2 a monomial
/// z₁ᵃz₂ᵇ gives z₁ᵃ⊗b·z₂ᵇ⁻¹ rather than 1⊗∂₂g; both have μ-image ∂ᵢg.
pub fn delta_residue(g: &Poly2, axis: u8) -> Poly4 {
    let mut out = Poly4::zero();
    for (m, c) in g.terms() {
        let [a, b] = m.0;
        match axis {
            1 if a > 0 => out.add_term(Mono([0, 0, a - 1, b]), c * Rational::from_integer(a.into())),
            2 if b > 0 => out.add_term(Mono([a, 0, 0, b - 1]), c * Rational::from_integer(b.into())),
            1 | 2 => {}
            _ => panic!("axis must be 1 or 2"),
        }
    }
    out
}

/// ^uΔᵢ^v = (u⊗v)∘Δᵢ.
pub fn twisted_delta(sigma: &AutWord, g: &Poly2, axis: u8, u: &TwistLabel, v: &TwistLabel) -> Poly4 {
    let d = delta(g, axis);
    if u.is_id() && v.is_id() {
        return d;
    }
    d.map_factors(|p| u.apply(sigma, p), |p| v.apply(sigma, p))
}

/// Twisted form ^u d^v z = u(z)⊗1 − 1⊗v(z).
pub fn twisted_diff(sigma: &AutWord, g: &Poly2, u: &TwistLabel, v: &TwistLabel) -> Poly4 {
    u.apply(sigma, g).tensor_left() - v.apply(sigma, g).tensor_right()
}

/// J_nc = Δ₁(f₁)Δ₂(f₂) − Δ₁(f₂)Δ₂(f₁).
pub fn nc_jacobian(sigma: &AutWord) -> Poly4 {
    let [f1, f2] = sigma.images();
    &delta(f1, 1) * &delta(f2, 2) - &delta(f2, 1) * &delta(f1, 2)
}

pub fn mu(t: &Poly4) -> Poly2 {
    t.mu()
}

/// (u⊗v) applied to an element of B⊗B, for u, v ring endomorphisms given as
/// powers of σ.
pub fn twist_tensor(sigma: &AutWord, t: &Poly4, left_power: i64, right_power: i64) -> Poly4 {
    if left_power == 0 && right_power == 0 {
        return t.clone();
    }
    t.map_factors(|p| sigma.apply(p, left_power), |p| sigma.apply(p, right_power))
}

/// 1⊗1 in B⊗B.
pub fn one_tensor() -> Poly4 {
    Poly4::constant(Rational::one())
}
