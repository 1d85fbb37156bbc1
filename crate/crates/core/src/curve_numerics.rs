//! Test curves built from pencils on surfaces, their lifts to spaces with more
//! markings, and the uniruledness / Kodaira-bound certificates.
//!
//! A pencil of genus-g curves on a smooth surface S with C² base points gives a
//! fibration of Bl_{C²}S over ℙ¹, hence a curve Γ in the moduli space. Its
//! intersection numbers come from the Euler characteristics of the fibration:
//!
//! ```text
//! (Γ·λ)  = χ(𝒪_Y) − χ(𝒪_ℙ¹)(1 − g)
//! (Γ·δ)  = χ_top(Y) − χ_top(ℙ¹)(2 − 2g)
//! (Γ·ψᵢ) = −(sᵢ²)
//! ```
//!
//! Curves D₁…D_k on S away from the base locus lift Γ to the fibre product
//! Θ = D₁ ×_Γ … ×_Γ D_k in the space with k more markings.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::divisor_algebra::{
    canonical_class, gluing_pullback_delta_irr, gluing_pullback_k, pair, BoundaryIndex,
    CurveClass, Markings, ModuliSig,
};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    #[serde(rename = "chi_O")]
    pub chi_o: i64,
    #[serde(rename = "K2")]
    pub k2: i64,
    #[serde(default)]
    pub label: String,
}

impl SurfaceData {
    pub fn new(chi_o: i64, k2: i64, label: impl Into<String>) -> Self {
        SurfaceData {
            chi_o,
            k2,
            label: label.into(),
        }
    }

    /// Noether: χ_top(S) = 12χ(𝒪_S) − K_S².
    pub fn chi_top(&self) -> i64 {
        12 * self.chi_o - self.k2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilData {
    pub surface: SurfaceData,
    #[serde(rename = "C2")]
    pub c2: i64,
    #[serde(rename = "CK")]
    pub ck: i64,
    pub n_marked: u32,
    pub star_star: bool,
}

impl PencilData {
    pub fn new(surface: SurfaceData, c2: i64, ck: i64, n_marked: u32) -> Self {
        PencilData {
            surface,
            c2,
            ck,
            n_marked,
            star_star: true,
        }
    }

    pub fn genus(&self) -> Result<i64> {
        genus_from_adjunction(self.c2, self.ck)
    }

    /// χ_top of the surface blown up at the C² base points.
    pub fn chi_top_blown_up(&self) -> i64 {
        self.surface.chi_top() + self.c2
    }

    pub fn validate(&self) -> Result<()> {
        if self.c2 < 1 {
            return Err(Error::InvalidInput(format!("C^2 = {} must be >= 1", self.c2)));
        }
        if i64::from(self.n_marked) > self.c2 {
            return Err(Error::InvalidInput(format!(
                "{} marked base points but only C^2 = {}",
                self.n_marked, self.c2
            )));
        }
        let g = self.genus()?;
        if g < 2 {
            return Err(Error::InvalidInput(format!("pencil genus {g} < 2")));
        }
        Ok(())
    }
}

/// A curve D ⊂ S avoiding the base locus of the pencil.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxCurveData {
    #[serde(rename = "DC")]
    pub dc: i64,
    #[serde(rename = "DK")]
    pub dk: i64,
}

impl AuxCurveData {
    pub fn new(dc: i64, dk: i64) -> Result<Self> {
        if dc < 1 {
            return Err(Error::InvalidInput(format!("(D.C) = {dc} must be >= 1")));
        }
        Ok(AuxCurveData { dc, dk })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaInput {
    pub pencil: PencilData,
    pub gamma: CurveClass,
    pub aux: Vec<AuxCurveData>,
    /// (Dᵢ·Dⱼ); the diagonal is ignored.
    pub pairwise: Vec<Vec<i64>>,
}

impl ThetaInput {
    pub fn new(
        pencil: PencilData,
        gamma: CurveClass,
        aux: Vec<AuxCurveData>,
        pairwise: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let input = ThetaInput {
            pencil,
            gamma,
            aux,
            pairwise,
        };
        input.validate()?;
        Ok(input)
    }

    pub fn k(&self) -> usize {
        self.aux.len()
    }

    pub fn validate(&self) -> Result<()> {
        validate_aux(&self.aux, &self.pairwise)
    }
}

fn validate_aux(aux: &[AuxCurveData], pairwise: &[Vec<i64>]) -> Result<()> {
    let k = aux.len();
    if k == 0 {
        return Err(Error::InvalidInput("need at least one auxiliary curve".into()));
    }
    if let Some(a) = aux.iter().find(|a| a.dc < 1) {
        return Err(Error::InvalidInput(format!("(D.C) = {} must be >= 1", a.dc)));
    }
    if pairwise.len() != k || pairwise.iter().any(|row| row.len() != k) {
        return Err(Error::InvalidInput(format!(
            "pairwise intersection matrix must be {k}x{k}"
        )));
    }
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            if pairwise[a][b] != pairwise[b][a] {
                return Err(Error::InvalidInput("pairwise matrix is not symmetric".into()));
            }
            if pairwise[a][b] < 0 {
                return Err(Error::InvalidInput(
                    "pairwise intersections must be non-negative".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Square k×k matrix with every off-diagonal entry equal to `value`.
pub fn uniform_pairwise(k: usize, value: i64) -> Vec<Vec<i64>> {
    (0..k)
        .map(|a| (0..k).map(|b| if a == b { 0 } else { value }).collect())
        .collect()
}

/// Adjunction on a smooth surface: g = 1 + (C² + C·K)/2.
pub fn genus_from_adjunction(c2: i64, ck: i64) -> Result<i64> {
    let s = c2 + ck;
    if s % 2 != 0 {
        return Err(Error::ParityError {
            what: "C^2 + C.K",
            value: s,
        });
    }
    Ok(1 + s / 2)
}

/// Test curve over a rational base from the Euler characteristics of the total
/// space and the self-intersections of the sections.
pub fn test_curve_from_euler(
    g: i64,
    chi_o_total: i64,
    chi_top_total: i64,
    section_self_ints: &[i64],
) -> Result<CurveClass> {
    let sig = ModuliSig::new(g, section_self_ints.len() as i64)?;
    CurveClass::new(
        sig,
        int(chi_o_total - (1 - g)),
        section_self_ints.iter().map(|s| int(-s)).collect(),
        int(chi_top_total - 2 * (2 - 2 * g)),
        BTreeMap::new(),
        false,
    )
}

/// Curve class of a pencil under (⋆⋆).
///
/// Records (Γ·δ_{1:∅}) = 0. With `assume_rest_zero` every other δ_{i:S} is
/// also taken to vanish, so (Γ·δ_irr) = (Γ·δ).
pub fn pencil_curve_class(p: &PencilData, assume_rest_zero: bool) -> Result<CurveClass> {
    if !p.star_star {
        return Err(Error::StarStarRequired);
    }
    p.validate()?;
    let g = p.genus()?;
    // The exceptional curves over the marked base points are sections with self-intersection −1.
    let sections = vec![-1; p.n_marked as usize];
    let base = test_curve_from_euler(g, p.surface.chi_o, p.chi_top_blown_up(), &sections)?;
    let sig = base.sig();
    let mut known = BTreeMap::new();
    known.insert(BoundaryIndex::new(sig, 1, &[])?, Rational::zero());
    CurveClass::new(
        sig,
        base.lambda().clone(),
        base.psi_values().to_vec(),
        base.delta_total().clone(),
        known,
        assume_rest_zero,
    )
}

/// (D′·K) on the space with one more marking: (D·C)((Γ·K) + 2) + (D·K_S).
pub fn lift_one_point(gamma_k: &Rational, aux: AuxCurveData) -> Rational {
    int(aux.dc) * (gamma_k + int(2)) + int(aux.dk)
}

/// Full numerical class of the lift D′ of Γ along one auxiliary curve.
pub fn lift_one_point_components(gamma: &CurveClass, aux: AuxCurveData) -> Result<CurveClass> {
    lift_components(gamma, &[aux], &[vec![0]])
}

/// (Θ·K) = ∏(Dᵢ·C)·((Γ·K) + 2k + Σ(K_S·Dᵢ)/(Dᵢ·C)) − Σ_{i<j}(Dᵢ·Dⱼ).
pub fn theta_k(input: &ThetaInput, gamma_k: &Rational) -> Result<Rational> {
    input.validate()?;
    Ok(theta_k_raw(&input.aux, &input.pairwise, gamma_k))
}

pub(crate) fn theta_k_raw(aux: &[AuxCurveData], pairwise: &[Vec<i64>], gamma_k: &Rational) -> Rational {
    let k = aux.len() as i64;
    let prod: i64 = aux.iter().map(|a| a.dc).product();
    let ratio_sum: Rational = aux
        .iter()
        .map(|a| Rational::new(a.dk.into(), a.dc.into()))
        .sum();
    int(prod) * (gamma_k + int(2 * k) + ratio_sum) - int(pair_sum(pairwise))
}

fn pair_sum(pairwise: &[Vec<i64>]) -> i64 {
    let k = pairwise.len();
    (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .map(|(a, b)| pairwise[a][b])
        .sum()
}

/// Numerical class of Θ on the space with k more markings.
///
/// Pulled-back values scale by ∏(Dᵢ·C); ψ_{n+i} and δ_{0:{n+i,n+j}} follow
/// the lifting formulas verbatim, including the Σ(D_a·D_b) term added to every
/// new ψ.
pub fn theta_components(input: &ThetaInput) -> Result<CurveClass> {
    input.validate()?;
    lift_components(&input.gamma, &input.aux, &input.pairwise)
}

fn lift_components(
    gamma: &CurveClass,
    aux: &[AuxCurveData],
    pairwise: &[Vec<i64>],
) -> Result<CurveClass> {
    validate_aux(aux, pairwise)?;
    let k = aux.len() as u32;
    let sig = gamma.sig();
    let n = sig.n();
    let up = sig.with_extra_markings(k)?;
    let prod: i64 = aux.iter().map(|a| a.dc).product();
    let p = int(prod);
    let dd = pair_sum(pairwise);

    let mut psi: Vec<Rational> = gamma.psi_values().iter().map(|v| v * &p).collect();
    for (i, a) in aux.iter().enumerate() {
        let others: i64 = aux
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, b)| b.dc)
            .product();
        psi.push(int(others * (a.dk + 2 * a.dc) + dd));
    }

    let mut known: BTreeMap<BoundaryIndex, Rational> = BTreeMap::new();
    let mut record = |idx: BoundaryIndex, v: Rational| -> Result<()> {
        if let Some(prev) = known.insert(idx, v.clone()) {
            if prev != v {
                return Err(Error::InvalidInput(format!(
                    "conflicting lifted values for {idx}: {prev} vs {v}"
                )));
            }
        }
        Ok(())
    };

    let new_set = Markings::from_bits(Markings::full(n + k).bits() & !Markings::full(n).bits());
    for (idx, v) in gamma.delta_known() {
        if !v.is_zero() {
            return Err(Error::Unsupported(format!(
                "lifting a nonzero boundary value {idx} = {v}; its split over the lifted divisors is not determined"
            )));
        }
        for t in Markings::all_subsets(n + k) {
            if t.bits() & !new_set.bits() != 0 {
                continue;
            }
            let lifted = BoundaryIndex::of_set(up, idx.genus_part(), idx.markings().union(t))?;
            record(lifted, Rational::zero())?;
        }
    }
    for i in 1..=n {
        for j in 1..=k {
            record(BoundaryIndex::new(up, 0, &[i, n + j])?, Rational::zero())?;
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            let v = pairwise[a as usize][b as usize];
            record(BoundaryIndex::new(up, 0, &[n + a + 1, n + b + 1])?, int(v))?;
        }
    }

    CurveClass::new(
        up,
        gamma.lambda() * &p,
        psi,
        gamma.delta_total() * &p + int(dd),
        known,
        gamma.assume_rest_zero(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictKind {
    Uniruled,
    KodairaBound,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateVerdict {
    pub kind: VerdictKind,
    #[serde(rename = "K_value", with = "crate::rational::serde_str")]
    pub k_value: Rational,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub witness: Option<Rational>,
    pub bound: Option<i64>,
}

/// Certificate from a nef class γ on (g−1, n+2) pushed into the δ_irr boundary
/// of (g, n) by the gluing map.
///
/// (γ·θ*δ_irr) > 0 together with (γ·θ*K) < 0 certifies uniruledness; with
/// (γ·θ*K) = 0 the Kodaira dimension is at most dim of the source minus one,
/// i.e. dim M̄_{g,n} − 2.
pub fn glued_certificate(gamma: &CurveClass, target: ModuliSig) -> Result<CertificateVerdict> {
    let expected = ModuliSig::new(i64::from(target.g()) - 1, i64::from(target.n()) + 2)?;
    if gamma.sig() != expected {
        return Err(Error::SignatureMismatch {
            left: gamma.sig(),
            right: expected,
        });
    }
    let w = pair(gamma, &gluing_pullback_delta_irr(target)?)?;
    let v = pair(gamma, &gluing_pullback_k(target)?)?;
    let positive = w.is_positive();
    let (kind, bound) = if positive && v.is_negative() {
        (VerdictKind::Uniruled, None)
    } else if positive && v.is_zero() {
        (
            VerdictKind::KodairaBound,
            Some(moduli_dim(expected.g().into(), expected.n().into()) - 1),
        )
    } else {
        (VerdictKind::Inconclusive, None)
    };
    Ok(CertificateVerdict {
        kind,
        k_value: v,
        witness: Some(w),
        bound,
    })
}

/// A nef covering class with negative K-degree certifies uniruledness.
pub fn direct_certificate(value: &Rational, nef_declared: bool) -> CertificateVerdict {
    let kind = if nef_declared && value.is_negative() {
        VerdictKind::Uniruled
    } else {
        VerdictKind::Inconclusive
    };
    CertificateVerdict {
        kind,
        k_value: value.clone(),
        witness: None,
        bound: None,
    }
}

pub fn moduli_dim(g: i64, n: i64) -> i64 {
    3 * g - 3 + n
}

/// Spaces that inherit uniruledness from `sig` through the forgetful maps.
pub fn uniruled_by_forgetting(sig: ModuliSig) -> Vec<ModuliSig> {
    (0..sig.n())
        .rev()
        .filter_map(|m| ModuliSig::new(sig.g().into(), m.into()).ok())
        .collect()
}

/// (Γ·K) for a pencil class.
pub fn pencil_k(gamma: &CurveClass) -> Result<Rational> {
    pair(gamma, &canonical_class(gamma.sig()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor_algebra::{k_forgetful_correction, ForgetfulVariant};

    fn quintic() -> PencilData {
        PencilData::new(SurfaceData::new(5, 5, "quintic in P3"), 11, 13, 3)
    }

    fn ci2222(c2: i64, ck: i64, n: u32) -> PencilData {
        PencilData::new(SurfaceData::new(8, 16, "(2,2,2,2) in P6"), c2, ck, n)
    }

    #[test]
    fn adjunction_examples() {
        assert_eq!(genus_from_adjunction(8, 18).unwrap(), 14);
        assert_eq!(genus_from_adjunction(20, 0).unwrap(), 11);
        assert_eq!(genus_from_adjunction(0, -2).unwrap(), 0);
        assert!(matches!(
            genus_from_adjunction(1, 2),
            Err(Error::ParityError { value: 3, .. })
        ));
    }

    #[test]
    fn euler_test_curve_examples() {
        let c = test_curve_from_euler(14, 8, 88, &[-1]).unwrap();
        assert_eq!((c.lambda(), c.delta_total(), c.psi(1)), (&int(21), &int(140), int(1)));
        let c = test_curve_from_euler(13, 5, 110, &[-1, -1, -1]).unwrap();
        assert_eq!((c.lambda(), c.delta_total()), (&int(17), &int(158)));
        // with the blown-up quintic's χ_top = 66 the pencil value 114 comes out
        let c = test_curve_from_euler(13, 5, 66, &[-1, -1, -1]).unwrap();
        assert_eq!(c.delta_total(), &int(114));
        let c = test_curve_from_euler(2, 1, 0, &[]).unwrap();
        assert_eq!((c.lambda(), c.delta_total()), (&int(2), &int(4)));
    }

    #[test]
    fn pencil_classes() {
        let g = pencil_curve_class(&quintic(), true).unwrap();
        assert_eq!(g.sig(), ModuliSig::new(13, 3).unwrap());
        assert_eq!((g.lambda(), g.delta_total()), (&int(17), &int(114)));
        assert_eq!(g.psi_values(), &[int(1), int(1), int(1)]);
        assert_eq!(pencil_k(&g).unwrap(), int(-4));

        let g = pencil_curve_class(&ci2222(8, 18, 1), false).unwrap();
        assert_eq!((g.lambda(), g.delta_total(), g.psi(1)), (&int(21), &int(140), int(1)));
        assert_eq!(pencil_k(&g).unwrap(), int(-6));

        let k3 = PencilData::new(SurfaceData::new(2, 0, "K3 genus 11"), 20, 0, 9);
        let g = pencil_curve_class(&k3, true).unwrap();
        assert_eq!((g.lambda(), g.delta_irr().unwrap()), (&int(12), int(84)));

        let g = pencil_curve_class(&ci2222(9, 19, 2), true).unwrap();
        assert_eq!((g.lambda(), g.delta_total()), (&int(22), &int(145)));
        assert_eq!(g.psi_values(), &[int(1), int(1)]);
    }

    #[test]
    fn pencil_requires_star_star() {
        let mut p = quintic();
        p.star_star = false;
        assert!(matches!(pencil_curve_class(&p, true), Err(Error::StarStarRequired)));
        let mut p = quintic();
        p.n_marked = 12;
        assert!(pencil_curve_class(&p, true).is_err());
    }

    #[test]
    fn lift_one_point_examples() {
        let aux = AuxCurveData::new(13, 5).unwrap();
        assert_eq!(lift_one_point(&int(-4), aux), int(-21));
        assert_eq!(lift_one_point(&int(-2), AuxCurveData::new(7, 0).unwrap()), int(0));
        assert_eq!(lift_one_point(&int(0), AuxCurveData::new(1, -3).unwrap()), int(-1));
        assert!(AuxCurveData::new(0, 1).is_err());
    }

    #[test]
    fn lift_components_genus13() {
        let gamma = pencil_curve_class(&quintic(), true).unwrap();
        let aux = AuxCurveData::new(13, 5).unwrap();
        let lifted = lift_one_point_components(&gamma, aux).unwrap();
        assert_eq!(lifted.psi(4), int(31));
        assert_eq!(lifted.lambda(), &int(221));
        let s = lifted.sig();
        assert_eq!(pair(&lifted, &canonical_class(s)).unwrap(), int(-21));
        for v in [ForgetfulVariant::Printed, ForgetfulVariant::Standard] {
            let corr = k_forgetful_correction(gamma.sig(), 1, v).unwrap();
            let via = int(aux.dc) * pencil_k(&gamma).unwrap() + pair(&lifted, &corr).unwrap();
            assert_eq!(via, int(-21));
        }
    }

    #[test]
    fn lift_with_unit_aux_is_identity_on_pullbacks() {
        let gamma = pencil_curve_class(&quintic(), true).unwrap();
        let lifted = lift_one_point_components(&gamma, AuxCurveData::new(1, 0).unwrap()).unwrap();
        assert_eq!(lifted.lambda(), gamma.lambda());
        assert_eq!(lifted.delta_total(), gamma.delta_total());
        assert_eq!(&lifted.psi_values()[..3], gamma.psi_values());
        assert_eq!(lifted.psi(4), int(2));
    }

    fn genus14_theta() -> ThetaInput {
        let p = ci2222(8, 18, 1);
        let gamma = pencil_curve_class(&p, false).unwrap();
        let aux = vec![AuxCurveData::new(18, 16).unwrap(); 2];
        ThetaInput::new(p, gamma, aux, uniform_pairwise(2, 16)).unwrap()
    }

    #[test]
    fn theta_k_examples() {
        let t = genus14_theta();
        assert_eq!(theta_k(&t, &int(-6)).unwrap(), int(-88));
        let aux = [AuxCurveData::new(13, 5).unwrap()];
        assert_eq!(theta_k_raw(&aux, &[vec![0]], &int(-4)), int(-21));
        let aux = [AuxCurveData::new(3, -6).unwrap(), AuxCurveData::new(3, -6).unwrap()];
        assert_eq!(theta_k_raw(&aux, &uniform_pairwise(2, 0), &int(7)), int(63));
    }

    #[test]
    fn theta_components_genus14() {
        let t = genus14_theta();
        let th = theta_components(&t).unwrap();
        assert_eq!(th.sig(), ModuliSig::new(14, 3).unwrap());
        assert_eq!(th.psi(2), int(952));
        assert_eq!(th.psi(3), int(952));
        assert_eq!(th.psi(1), int(324));
        let d23 = BoundaryIndex::new(th.sig(), 0, &[2, 3]).unwrap();
        assert_eq!(th.delta_value(&d23), Some(int(16)));
        let d12 = BoundaryIndex::new(th.sig(), 0, &[1, 2]).unwrap();
        assert_eq!(th.delta_value(&d12), Some(int(0)));
        // composing the component formulas with K does not give the closed form
        let via = pair(&th, &canonical_class(th.sig())).unwrap();
        assert_eq!(via, int(-72));
        assert_ne!(via, theta_k(&t, &int(-6)).unwrap());
    }

    #[test]
    fn theta_input_validation() {
        let t = genus14_theta();
        let bad = ThetaInput::new(
            t.pencil.clone(),
            t.gamma.clone(),
            t.aux.clone(),
            vec![vec![0, 16], vec![15, 0]],
        );
        assert!(bad.is_err());
        let bad = ThetaInput::new(t.pencil.clone(), t.gamma.clone(), vec![], vec![]);
        assert!(bad.is_err());
        let bad = ThetaInput::new(t.pencil, t.gamma, t.aux, uniform_pairwise(2, -1));
        assert!(bad.is_err());
    }

    fn k3_gamma(n: u32) -> CurveClass {
        let p = PencilData::new(SurfaceData::new(2, 0, "K3 genus 11"), 20, 0, n);
        pencil_curve_class(&p, true).unwrap()
    }

    #[test]
    fn glued_certificates() {
        let v = glued_certificate(&k3_gamma(9), ModuliSig::new(12, 7).unwrap()).unwrap();
        assert_eq!(v.kind, VerdictKind::Uniruled);
        assert_eq!((v.k_value.clone(), v.witness.clone()), (int(-1), Some(int(82))));

        let v = glued_certificate(&k3_gamma(10), ModuliSig::new(12, 8).unwrap()).unwrap();
        assert_eq!(v.kind, VerdictKind::KodairaBound);
        assert_eq!(v.bound, Some(39));
        assert_eq!(v.bound, Some(moduli_dim(12, 8) - 2));

        let g15 = pencil_curve_class(&ci2222(9, 19, 2), true).unwrap();
        let v = glued_certificate(&g15, ModuliSig::new(16, 0).unwrap()).unwrap();
        assert_eq!(v.kind, VerdictKind::KodairaBound);
        assert_eq!((v.k_value.clone(), v.witness.clone()), (int(0), Some(int(143))));
        assert_eq!(v.bound, Some(43));

        assert!(matches!(
            glued_certificate(&k3_gamma(9), ModuliSig::new(12, 8).unwrap()),
            Err(Error::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn glued_certificate_inconclusive_without_positive_witness() {
        let s = ModuliSig::new(11, 9).unwrap();
        let v = glued_certificate(&CurveClass::zero(s), ModuliSig::new(12, 7).unwrap()).unwrap();
        assert_eq!(v.kind, VerdictKind::Inconclusive);
    }

    #[test]
    fn direct_certificates() {
        assert_eq!(direct_certificate(&int(-88), true).kind, VerdictKind::Uniruled);
        assert_eq!(direct_certificate(&int(-21), true).kind, VerdictKind::Uniruled);
        assert_eq!(direct_certificate(&int(-1), false).kind, VerdictKind::Inconclusive);
        assert_eq!(direct_certificate(&int(0), true).kind, VerdictKind::Inconclusive);
    }

    #[test]
    fn certificate_json() {
        let v = direct_certificate(&crate::rational::frac(-3, 2), true);
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"kind":"Uniruled","K_value":"-3/2","witness":null,"bound":null})
        );
        let back: CertificateVerdict = serde_json::from_value(j).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn dims() {
        assert_eq!(moduli_dim(12, 8), 41);
        assert_eq!(moduli_dim(16, 0), 45);
        assert_eq!(moduli_dim(11, 10), 40);
        let down = uniruled_by_forgetting(ModuliSig::new(12, 7).unwrap());
        assert_eq!(down[0], ModuliSig::new(12, 6).unwrap());
        assert_eq!(down.len(), 7);
    }

    #[test]
    fn pencil_json_field_names() {
        let j = serde_json::to_value(quintic()).unwrap();
        assert_eq!(j["surface"]["chi_O"], 5);
        assert_eq!(j["C2"], 11);
        assert_eq!(j["CK"], 13);
        let a = serde_json::to_value(AuxCurveData::new(13, 5).unwrap()).unwrap();
        assert_eq!(a, serde_json::json!({"DC": 13, "DK": 5}));
    }
}
