//! Polynomial automorphisms of Q[z1,z2] given as words in elementary and
//! affine generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{format_rational, rat, Poly2, Rational};

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutGenerator {
    /// `z_axis ↦ z_axis + shift`, where `shift` only involves the other variable.
    Elementary { axis: u8, shift: Poly2 },
    /// `z ↦ matrix·z + translation`.
    Affine { matrix: [[Rational; 2]; 2], translation: [Rational; 2] },
}

impl AutGenerator {
    pub fn elementary(axis: u8, shift: Poly2) -> Result<Self> {
        if axis != 1 && axis != 2 {
            return Err(Error::InvalidGenerator(format!("axis {axis} is not 1 or 2")));
        }
        if shift.uses_var(axis as usize - 1) {
            return Err(Error::InvalidGenerator(format!("elem{axis} shift must not involve z{axis}")));
        }
        Ok(AutGenerator::Elementary { axis, shift })
    }

    pub fn affine(matrix: [[Rational; 2]; 2], translation: [Rational; 2]) -> Result<Self> {
        let g = AutGenerator::Affine { matrix, translation };
        if g.determinant().is_zero() {
            return Err(Error::InvalidGenerator("affine matrix is singular".into()));
        }
        Ok(g)
    }

    /// Convenience constructor for integer data; panics on a singular matrix.
    pub fn affine_int(m: [[i64; 2]; 2], t: [i64; 2]) -> Self {
        Self::affine([[rat(m[0][0]), rat(m[0][1])], [rat(m[1][0]), rat(m[1][1])]], [rat(t[0]), rat(t[1])])
            .expect("nonsingular matrix")
    }

    pub fn determinant(&self) -> Rational {
        match self {
            AutGenerator::Elementary { .. } => Rational::one(),
            AutGenerator::Affine { matrix: m, .. } => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        }
    }

    /// Images of z1 and z2.
    pub fn images(&self) -> [Poly2; 2] {
        match self {
            AutGenerator::Elementary { axis, shift } => {
                let mut imgs = [Poly2::z1(), Poly2::z2()];
                let k = *axis as usize - 1;
                imgs[k] = &imgs[k] + shift;
                imgs
            }
            AutGenerator::Affine { matrix: m, translation: t } => {
                let row = |r: usize| {
                    &(&Poly2::z1().scale(&m[r][0]) + &Poly2::z2().scale(&m[r][1])) + &Poly2::constant(t[r].clone())
                };
                [row(0), row(1)]
            }
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            AutGenerator::Elementary { axis, shift } => AutGenerator::Elementary { axis: *axis, shift: -shift },
            AutGenerator::Affine { matrix: m, translation: t } => {
                let det = self.determinant();
                let inv = [[&m[1][1] / &det, -(&m[0][1] / &det)], [-(&m[1][0] / &det), &m[0][0] / &det]];
                let shift = [-(&inv[0][0] * &t[0] + &inv[0][1] * &t[1]), -(&inv[1][0] * &t[0] + &inv[1][1] * &t[1])];
                AutGenerator::Affine { matrix: inv, translation: shift }
            }
        }
    }
}

impl fmt::Display for AutGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutGenerator::Elementary { axis, shift } => write!(f, "elem{axis}({shift})"),
            AutGenerator::Affine { matrix: m, translation: t } => write!(
                f,
                "affine([[{},{}],[{},{}]],[{},{}])",
                format_rational(&m[0][0]),
                format_rational(&m[0][1]),
                format_rational(&m[1][0]),
                format_rational(&m[1][1]),
                format_rational(&t[0]),
                format_rational(&t[1])
            ),
        }
    }
}

/// σ = g₁ ∘ g₂ ∘ … ∘ gₙ, so gₙ acts first.
pub struct AutWord {
    factors: Vec<AutGenerator>,
    images: [Poly2; 2],
    inverse_images: [Poly2; 2],
    jacobian: Rational,
    powers: RwLock<HashMap<i64, Arc<[Poly2; 2]>>>,
}

fn compose_images(factors: &[AutGenerator]) -> [Poly2; 2] {
    let mut imgs = [Poly2::z1(), Poly2::z2()];
    for g in factors.iter().rev() {
        let gi = g.images();
        imgs = [imgs[0].substitute(&gi), imgs[1].substitute(&gi)];
    }
    imgs
}

impl AutWord {
    pub fn new(factors: Vec<AutGenerator>) -> Self {
        let images = compose_images(&factors);
        let inv: Vec<AutGenerator> = factors.iter().rev().map(|g| g.inverse()).collect();
        let inverse_images = compose_images(&inv);
        let jacobian = factors.iter().fold(Rational::one(), |acc, g| acc * g.determinant());
        AutWord { factors, images, inverse_images, jacobian, powers: RwLock::new(HashMap::new()) }
    }

    pub fn identity() -> Self {
        Self::new(Vec::new())
    }

    pub fn factors(&self) -> &[AutGenerator] {
        &self.factors
    }

    /// f₁ = σ(z₁), f₂ = σ(z₂).
    pub fn images(&self) -> &[Poly2; 2] {
        &self.images
    }

    pub fn jacobian(&self) -> Rational {
        self.jacobian.clone()
    }

    pub fn inverse(&self) -> AutWord {
        AutWord::new(self.factors.iter().rev().map(|g| g.inverse()).collect())
    }

    /// σ ∘ τ.
    pub fn compose(&self, tau: &AutWord) -> AutWord {
        let mut f = self.factors.clone();
        f.extend(tau.factors.iter().cloned());
        AutWord::new(f)
    }

    /// det(∂fᵢ/∂zⱼ) computed symbolically from the images.
    pub fn symbolic_jacobian(&self) -> Poly2 {
        let [f1, f2] = &self.images;
        &f1.partial(0) * &f2.partial(1) - &f1.partial(1) * &f2.partial(0)
    }

    pub fn is_identity_map(&self) -> bool {
        self.images[0] == Poly2::z1() && self.images[1] == Poly2::z2()
    }

    /// Images of z1, z2 under σⁿ, memoized.
    pub fn power_images(&self, n: i64) -> Arc<[Poly2; 2]> {
        if n == 0 {
            return Arc::new([Poly2::z1(), Poly2::z2()]);
        }
        if let Some(p) = self.powers.read().expect("power cache poisoned").get(&n) {
            return p.clone();
        }
        let base = if n > 0 { &self.images } else { &self.inverse_images };
        let step = if n > 0 { 1 } else { -1 };
        let imgs = if n == step {
            base.clone()
        } else {
            let prev = self.power_images(n - step);
            [base[0].substitute(&prev), base[1].substitute(&prev)]
        };
        let arc = Arc::new(imgs);
        self.powers.write().expect("power cache poisoned").insert(n, arc.clone());
        arc
    }

    /// σⁿ(p).
    pub fn apply(&self, p: &Poly2, n: i64) -> Poly2 {
        if n == 0 || p.is_constant() {
            return p.clone();
        }
        p.substitute(&self.power_images(n))
    }
}

impl Clone for AutWord {
    fn clone(&self) -> Self {
        AutWord {
            factors: self.factors.clone(),
            images: self.images.clone(),
            inverse_images: self.inverse_images.clone(),
            jacobian: self.jacobian.clone(),
            powers: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for AutWord {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl fmt::Debug for AutWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AutWord({self})")
    }
}

impl fmt::Display for AutWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("affine([[1,0],[0,1]],[0,0])");
        }
        let parts: Vec<String> = self.factors.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn elementary_apply() {
        let s = AutWord::new(vec![AutGenerator::elementary(1, Poly2::z2().pow(2)).unwrap()]);
        assert_eq!(s.apply(&Poly2::z1(), 1), Poly2::z1() + Poly2::z2().pow(2));
        let p = Poly2::z1() * Poly2::z2();
        assert_eq!(s.apply(&p, 0), p);
    }

    #[test]
    fn diagonal_inverse_power() {
        let s = AutWord::new(vec![AutGenerator::affine_int([[2, 0], [0, 3]], [0, 0])]);
        let p = Poly2::z1() * Poly2::z2();
        assert_eq!(s.apply(&p, -1), p.scale(&ratio(1, 6)));
        assert_eq!(s.jacobian(), rat(6));
    }

    #[test]
    fn generator_inverses() {
        let e = AutGenerator::elementary(1, Poly2::z2().pow(2)).unwrap();
        assert_eq!(e.inverse(), AutGenerator::elementary(1, -Poly2::z2().pow(2)).unwrap());
        let a = AutGenerator::affine_int([[1, 1], [0, 1]], [1, 0]);
        assert_eq!(a.inverse(), AutGenerator::affine_int([[1, -1], [0, 1]], [-1, 0]));
        assert!(AutWord::identity().inverse().factors().is_empty());
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(AutGenerator::elementary(1, Poly2::z1()).is_err());
        assert!(AutGenerator::affine([[rat(1), rat(2)], [rat(2), rat(4)]], [rat(0), rat(0)]).is_err());
    }

    #[test]
    fn word_order_is_right_to_left() {
        // σ = elem1(z2) ∘ affine(swap): z1 ↦ z2 ↦ z2, z2 ↦ z1 ↦ z1 + z2.
        let swap = AutGenerator::affine_int([[0, 1], [1, 0]], [0, 0]);
        let e = AutGenerator::elementary(1, Poly2::z2()).unwrap();
        let s = AutWord::new(vec![e, swap]);
        assert_eq!(s.images()[0], Poly2::z2());
        assert_eq!(s.images()[1], Poly2::z1() + Poly2::z2());
    }
}
