//! Divisor classes on the rational Picard group of the moduli space of stable
//! n-pointed genus-g curves.
//!
//! Classes are written in the generators λ, ψ₁…ψₙ, δ_irr and δ_{i:S}, where
//! δ_{i:S} = δ_{g−i:Sᶜ}. Boundary indices are always stored in a canonical
//! representative (see [`normalize_boundary_index`]), so two classes can be
//! compared coefficient by coefficient.
//!
//! Numerical curve classes ([`CurveClass`]) record the intersection numbers of
//! a test curve with the generators. Only finitely many δ_{i:S} values are
//! listed; the rest are either declared zero or unknown, and a pairing that
//! would need an unknown value fails instead of guessing.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

/// Upper bound on the number of markings (markings are stored as a bitmask).
pub const MAX_MARKINGS: u32 = 30;

/// Moduli signature (g, n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SigWire", into = "SigWire")]
pub struct ModuliSig {
    g: u32,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct SigWire {
    g: i64,
    n: i64,
}

impl TryFrom<SigWire> for ModuliSig {
    type Error = Error;
    fn try_from(w: SigWire) -> Result<Self> {
        ModuliSig::new(w.g, w.n)
    }
}

impl From<ModuliSig> for SigWire {
    fn from(s: ModuliSig) -> Self {
        SigWire {
            g: s.g.into(),
            n: s.n.into(),
        }
    }
}

impl ModuliSig {
    pub fn new(g: i64, n: i64) -> Result<Self> {
        if g < 2 {
            return Err(Error::InvalidSignature {
                g,
                n,
                reason: "genus must be at least 2",
            });
        }
        if n < 0 || n > i64::from(MAX_MARKINGS) {
            return Err(Error::InvalidSignature {
                g,
                n,
                reason: "number of markings out of range",
            });
        }
        let g = u32::try_from(g).map_err(|_| Error::InvalidSignature {
            g,
            n,
            reason: "genus too large",
        })?;
        Ok(ModuliSig { g, n: n as u32 })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// λ, ψᵢ, δ_irr, δ_{i:S} form a free basis only from genus 3 on.
    pub fn basis_certified(&self) -> bool {
        self.g >= 3
    }

    pub fn dim(&self) -> i64 {
        3 * i64::from(self.g) - 3 + i64::from(self.n)
    }

    /// Signature after adding `k` markings.
    pub fn with_extra_markings(&self, k: u32) -> Result<Self> {
        ModuliSig::new(self.g.into(), i64::from(self.n) + i64::from(k))
    }
}

impl fmt::Display for ModuliSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{})", self.g, self.n)
    }
}

/// A set of marking labels drawn from {1, …, n}.
///
/// Ordered lexicographically on the ascending list of labels, which is the
/// order used for the tie-break between δ_{i:S} and δ_{g−i:Sᶜ} when i = g−i.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Markings(u32);

impl Markings {
    pub fn empty() -> Self {
        Markings(0)
    }

    /// All labels 1..=n.
    pub fn full(n: u32) -> Self {
        if n == 0 {
            Markings(0)
        } else {
            Markings(u32::MAX >> (32 - n))
        }
    }

    pub fn from_labels<I: IntoIterator<Item = u32>>(labels: I) -> Option<Self> {
        let mut bits = 0u32;
        for l in labels {
            if l == 0 || l > MAX_MARKINGS {
                return None;
            }
            bits |= 1 << (l - 1);
        }
        Some(Markings(bits))
    }

    pub(crate) fn from_bits(bits: u32) -> Self {
        Markings(bits)
    }

    pub fn bits(&self) -> u32 {
        self.0
    }

    pub fn len(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, label: u32) -> bool {
        (1..=32).contains(&label) && self.0 & (1 << (label - 1)) != 0
    }

    pub fn with(&self, label: u32) -> Self {
        Markings(self.0 | (1 << (label - 1)))
    }

    pub fn union(&self, other: Markings) -> Self {
        Markings(self.0 | other.0)
    }

    pub fn complement(&self, n: u32) -> Self {
        Markings(!self.0 & Markings::full(n).0)
    }

    pub fn max_label(&self) -> u32 {
        32 - self.0.leading_zeros()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=32u32).filter(move |l| self.contains(*l))
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Every subset of {1..=n}.
    pub fn all_subsets(n: u32) -> impl Iterator<Item = Markings> {
        (0..(1u64 << n)).map(|b| Markings(b as u32))
    }
}

impl Ord for Markings {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Markings {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Markings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Markings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let labels: Vec<String> = self.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

/// Canonical index (i, S) of a boundary generator δ_{i:S}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryIndex {
    i: u32,
    set: Markings,
}

impl BoundaryIndex {
    pub fn genus_part(&self) -> u32 {
        self.i
    }

    pub fn markings(&self) -> Markings {
        self.set
    }

    /// Canonical index of δ_{i:S} on `sig`.
    pub fn new(sig: ModuliSig, i: u32, labels: &[u32]) -> Result<Self> {
        normalize_boundary_index(sig.g.into(), sig.n.into(), i.into(), labels)
    }

    pub(crate) fn of_set(sig: ModuliSig, i: u32, set: Markings) -> Result<Self> {
        normalize_set(sig.g, sig.n, i, set)
    }
}

impl fmt::Display for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "delta_{{{}:{}}}", self.i, self.set)
    }
}

pub(crate) fn rep_is_valid(g: u32, n: u32, i: u32, set: Markings) -> bool {
    if i > g {
        return false;
    }
    if i == 0 && set.len() < 2 {
        return false;
    }
    if i == g && i64::from(set.len()) > i64::from(n) - 2 {
        return false;
    }
    true
}

pub(crate) fn normalize_set(g: u32, n: u32, i: u32, set: Markings) -> Result<BoundaryIndex> {
    let invalid = || Error::InvalidIndex {
        g,
        n,
        i: i.into(),
        set: set.to_vec(),
    };
    if i > g || set.max_label() > n {
        return Err(invalid());
    }
    let comp = set.complement(n);
    let other = g - i;
    if !rep_is_valid(g, n, i, set) && !rep_is_valid(g, n, other, comp) {
        return Err(invalid());
    }
    let (ci, cs) = match i.cmp(&other) {
        Ordering::Less => (i, set),
        Ordering::Greater => (other, comp),
        Ordering::Equal => {
            if (set.len(), set) <= (comp.len(), comp) {
                (i, set)
            } else {
                (i, comp)
            }
        }
    };
    Ok(BoundaryIndex { i: ci, set: cs })
}

/// Canonical representative of δ_{i:S} = δ_{g−i:Sᶜ}.
///
/// The representative has i < g−i; when i = g−i the side with fewer markings
/// wins, and on equal sizes the lexicographically smaller marking set.
pub fn normalize_boundary_index(g: i64, n: i64, i: i64, labels: &[u32]) -> Result<BoundaryIndex> {
    let sig = ModuliSig::new(g, n)?;
    let invalid = || Error::InvalidIndex {
        g: sig.g,
        n: sig.n,
        i,
        set: labels.to_vec(),
    };
    let i = u32::try_from(i).map_err(|_| invalid())?;
    let set = Markings::from_labels(labels.iter().copied()).ok_or_else(invalid)?;
    normalize_set(sig.g, sig.n, i, set)
}

/// All canonical boundary indices of `sig`, in canonical order.
pub fn boundary_indices(sig: ModuliSig) -> BTreeSet<BoundaryIndex> {
    let mut out = BTreeSet::new();
    for i in 0..=sig.g / 2 {
        for set in Markings::all_subsets(sig.n) {
            if let Ok(idx) = normalize_set(sig.g, sig.n, i, set) {
                out.insert(idx);
            }
        }
    }
    out
}

/// A divisor class λ·a + Σψᵢ·bᵢ + δ_irr·c + Σδ_{i:S}·d_{i:S} with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    sig: ModuliSig,
    lambda: Rational,
    psi: Vec<Rational>,
    delta_irr: Rational,
    delta: BTreeMap<BoundaryIndex, Rational>,
}

impl DivisorClass {
    pub fn zero(sig: ModuliSig) -> Self {
        DivisorClass {
            sig,
            lambda: Rational::zero(),
            psi: vec![Rational::zero(); sig.n as usize],
            delta_irr: Rational::zero(),
            delta: BTreeMap::new(),
        }
    }

    pub fn lambda_class(sig: ModuliSig) -> Self {
        let mut d = DivisorClass::zero(sig);
        d.lambda = int(1);
        d
    }

    pub fn psi_class(sig: ModuliSig, marking: u32) -> Result<Self> {
        let mut d = DivisorClass::zero(sig);
        d.add_psi(marking, &int(1))?;
        Ok(d)
    }

    pub fn delta_irr_class(sig: ModuliSig) -> Self {
        let mut d = DivisorClass::zero(sig);
        d.delta_irr = int(1);
        d
    }

    pub fn delta_class(sig: ModuliSig, idx: BoundaryIndex) -> Self {
        let mut d = DivisorClass::zero(sig);
        d.add_delta(idx, &int(1));
        d
    }

    pub fn sig(&self) -> ModuliSig {
        self.sig
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// Coefficient of ψ_marking (1-based).
    pub fn psi(&self, marking: u32) -> Rational {
        marking
            .checked_sub(1)
            .and_then(|k| self.psi.get(k as usize))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn psi_coeffs(&self) -> &[Rational] {
        &self.psi
    }

    pub fn delta_irr(&self) -> &Rational {
        &self.delta_irr
    }

    pub fn delta(&self, idx: &BoundaryIndex) -> Rational {
        self.delta.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero δ_{i:S} coefficients.
    pub fn delta_terms(&self) -> impl Iterator<Item = (&BoundaryIndex, &Rational)> {
        self.delta.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.is_zero()
            && self.delta_irr.is_zero()
            && self.psi.iter().all(Zero::is_zero)
            && self.delta.is_empty()
    }

    pub fn add_lambda(&mut self, c: &Rational) {
        self.lambda += c;
    }

    pub fn add_psi(&mut self, marking: u32, c: &Rational) -> Result<()> {
        if marking == 0 || marking > self.sig.n {
            return Err(Error::InvalidInput(format!(
                "psi_{marking} does not exist on {}",
                self.sig
            )));
        }
        self.psi[(marking - 1) as usize] += c;
        Ok(())
    }

    pub fn add_delta_irr(&mut self, c: &Rational) {
        self.delta_irr += c;
    }

    pub fn add_delta(&mut self, idx: BoundaryIndex, c: &Rational) {
        let slot = self.delta.entry(idx).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.delta.remove(&idx);
        }
    }

    /// Adds `c·δ_{i:S}`, normalizing the index first.
    pub fn add_delta_at(&mut self, i: u32, labels: &[u32], c: &Rational) -> Result<()> {
        let idx = BoundaryIndex::new(self.sig, i, labels)?;
        self.add_delta(idx, c);
        Ok(())
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = DivisorClass::zero(self.sig);
        out.lambda = &self.lambda * c;
        out.psi = self.psi.iter().map(|p| p * c).collect();
        out.delta_irr = &self.delta_irr * c;
        for (idx, v) in &self.delta {
            out.add_delta(*idx, &(v * c));
        }
        out
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<Self> {
        self.combine(other, &int(1))
    }

    pub fn checked_sub(&self, other: &DivisorClass) -> Result<Self> {
        self.combine(other, &int(-1))
    }

    /// `self + c·other`
    pub fn combine(&self, other: &DivisorClass, c: &Rational) -> Result<Self> {
        ensure_same_sig(self.sig, other.sig)?;
        let mut out = self.clone();
        out.lambda += &other.lambda * c;
        for (a, b) in out.psi.iter_mut().zip(&other.psi) {
            *a += b * c;
        }
        out.delta_irr += &other.delta_irr * c;
        for (idx, v) in &other.delta {
            out.add_delta(*idx, &(v * c));
        }
        Ok(out)
    }
}

fn ensure_same_sig(left: ModuliSig, right: ModuliSig) -> Result<()> {
    if left != right {
        return Err(Error::SignatureMismatch { left, right });
    }
    Ok(())
}

/// Numerical class of a test curve: its intersection numbers with the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClass {
    sig: ModuliSig,
    lambda: Rational,
    psi: Vec<Rational>,
    delta_total: Rational,
    delta_known: BTreeMap<BoundaryIndex, Rational>,
    assume_rest_zero: bool,
}

impl CurveClass {
    /// The zero class: every intersection number vanishes.
    pub fn zero(sig: ModuliSig) -> Self {
        CurveClass {
            sig,
            lambda: Rational::zero(),
            psi: vec![Rational::zero(); sig.n as usize],
            delta_total: Rational::zero(),
            delta_known: BTreeMap::new(),
            assume_rest_zero: true,
        }
    }

    pub fn new(
        sig: ModuliSig,
        lambda: Rational,
        psi: Vec<Rational>,
        delta_total: Rational,
        delta_known: BTreeMap<BoundaryIndex, Rational>,
        assume_rest_zero: bool,
    ) -> Result<Self> {
        if psi.len() != sig.n as usize {
            return Err(Error::InvalidInput(format!(
                "curve class on {sig} needs {} psi values, got {}",
                sig.n,
                psi.len()
            )));
        }
        for idx in delta_known.keys() {
            // Keys must be canonical for this signature.
            let canon = BoundaryIndex::of_set(sig, idx.i, idx.set)?;
            if canon != *idx {
                return Err(Error::InvalidInput(format!("{idx} is not canonical on {sig}")));
            }
        }
        Ok(CurveClass {
            sig,
            lambda,
            psi,
            delta_total,
            delta_known,
            assume_rest_zero,
        })
    }

    pub fn sig(&self) -> ModuliSig {
        self.sig
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn psi(&self, marking: u32) -> Rational {
        marking
            .checked_sub(1)
            .and_then(|k| self.psi.get(k as usize))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn psi_values(&self) -> &[Rational] {
        &self.psi
    }

    pub fn delta_total(&self) -> &Rational {
        &self.delta_total
    }

    pub fn delta_known(&self) -> &BTreeMap<BoundaryIndex, Rational> {
        &self.delta_known
    }

    pub fn assume_rest_zero(&self) -> bool {
        self.assume_rest_zero
    }

    /// Value against δ_{i:S}: the listed value, zero when unlisted values are
    /// declared zero, otherwise `None`.
    pub fn delta_value(&self, idx: &BoundaryIndex) -> Option<Rational> {
        match self.delta_known.get(idx) {
            Some(v) => Some(v.clone()),
            None if self.assume_rest_zero => Some(Rational::zero()),
            None => None,
        }
    }

    /// Value against δ_irr, derivable only when unlisted boundary values vanish.
    pub fn delta_irr(&self) -> Option<Rational> {
        if !self.assume_rest_zero {
            return None;
        }
        let listed: Rational = self.delta_known.values().sum();
        Some(&self.delta_total - listed)
    }
}

/// Intersection number of a curve class with a divisor class.
///
/// The boundary part c_irr·δ_irr + Σ c_{i:S}·δ_{i:S} is rewritten as
/// c_irr·δ + Σ (c_{i:S} − c_irr)·δ_{i:S}, so only the indices whose coefficient
/// differs from the δ_irr coefficient need an individual curve value. This is
/// what lets the canonical class pair against a curve that only records
/// (Γ·δ) and (Γ·δ_{1:∅}).
pub fn pair(curve: &CurveClass, div: &DivisorClass) -> Result<Rational> {
    ensure_same_sig(curve.sig, div.sig)?;
    let mut total = &curve.lambda * &div.lambda;
    for (v, c) in curve.psi.iter().zip(&div.psi) {
        total += v * c;
    }
    let c_irr = &div.delta_irr;
    total += &curve.delta_total * c_irr;

    if c_irr.is_zero() || curve.assume_rest_zero {
        // Indices outside div.delta ∪ known contribute (0 − c_irr)·0 or are
        // skipped because c_irr = 0.
        let keys: BTreeSet<&BoundaryIndex> =
            div.delta.keys().chain(curve.delta_known.keys()).collect();
        for idx in keys {
            let diff = div.delta(idx) - c_irr;
            if diff.is_zero() {
                continue;
            }
            match curve.delta_value(idx) {
                Some(v) => total += diff * v,
                None => return Err(Error::UnknownBoundaryValue(*idx)),
            }
        }
    } else {
        for idx in boundary_indices(curve.sig) {
            let diff = div.delta(&idx) - c_irr;
            if diff.is_zero() {
                continue;
            }
            match curve.delta_value(&idx) {
                Some(v) => total += diff * v,
                None => return Err(Error::UnknownBoundaryValue(idx)),
            }
        }
    }
    Ok(total)
}

/// δ = δ_irr + Σ δ_{i:S} over all canonical indices.
pub fn total_boundary(sig: ModuliSig) -> DivisorClass {
    let mut d = DivisorClass::delta_irr_class(sig);
    for idx in boundary_indices(sig) {
        d.add_delta(idx, &int(1));
    }
    d
}

fn one_empty(sig: ModuliSig) -> BoundaryIndex {
    BoundaryIndex::of_set(sig, 1, Markings::empty()).expect("delta_{1:{}} is valid for g >= 2")
}

/// K = 13λ + Σψᵢ − 2δ − δ_{1:∅}.
pub fn canonical_class(sig: ModuliSig) -> DivisorClass {
    let mut k = total_boundary(sig).scaled(&int(-2));
    k.lambda = int(13);
    k.psi = vec![int(1); sig.n as usize];
    k.add_delta(one_empty(sig), &int(-1));
    k
}

/// Coefficient on the δ_{0:{i,n+j}} terms of the forgetful correction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForgetfulVariant {
    /// −2, as printed alongside the one-point lifting formula.
    #[default]
    Printed,
    /// −1, what composing the one-point pullbacks of ψᵢ and δ gives.
    Standard,
}

impl ForgetfulVariant {
    pub fn coefficient(&self) -> Rational {
        match self {
            ForgetfulVariant::Printed => int(-2),
            ForgetfulVariant::Standard => int(-1),
        }
    }
}

/// Correction term with K_{g,n+k} = π*K_{g,n} + correction, π forgetting the
/// last k markings:
///
/// Σψ_{n+i} − 2Σ_{i<j} δ_{0:{n+i,n+j}} + Σ_{∅≠T⊆new} δ_{1:T} + c·Σ δ_{0:{i,n+j}}
///
/// with i ≤ n in the last sum and c chosen by `variant`. For k = 1 this is
/// ψ_{n+1} + c·Σδ_{0:{i,n+1}} + δ_{1:{n+1}}.
///
/// Only pairs appear in the genus-0 sums. For k ≥ 2 the exact difference also
/// has δ_{0:T} with |T| ≥ 3 and at least two new markings in T; those are not
/// included.
pub fn k_forgetful_correction(
    sig: ModuliSig,
    k: u32,
    variant: ForgetfulVariant,
) -> Result<DivisorClass> {
    if k == 0 {
        return Err(Error::InvalidInput("forgetful correction needs k >= 1".into()));
    }
    let up = sig.with_extra_markings(k)?;
    let n = sig.n;
    let mut d = DivisorClass::zero(up);
    let new_labels: Vec<u32> = (n + 1..=n + k).collect();
    for &m in &new_labels {
        d.add_psi(m, &int(1))?;
    }
    for (a, &p) in new_labels.iter().enumerate() {
        for &q in &new_labels[a + 1..] {
            d.add_delta_at(0, &[p, q], &int(-2))?;
        }
    }
    let new_set = Markings::from_labels(new_labels.iter().copied())
        .ok_or_else(|| Error::InvalidInput("too many markings".into()))?;
    for t in Markings::all_subsets(n + k) {
        if t.is_empty() || t.bits() & !new_set.bits() != 0 {
            continue;
        }
        d.add_delta(BoundaryIndex::of_set(up, 1, t)?, &int(1));
    }
    let c = variant.coefficient();
    for i in 1..=n {
        for &m in &new_labels {
            d.add_delta_at(0, &[i, m], &c)?;
        }
    }
    Ok(d)
}

fn glued_source(sig: ModuliSig) -> Result<ModuliSig> {
    if sig.g < 3 {
        return Err(Error::InvalidInput(format!(
            "gluing map into {sig} needs source genus g-1 >= 2"
        )));
    }
    ModuliSig::new(i64::from(sig.g) - 1, i64::from(sig.n) + 2)
}

/// θ*δ_irr on (g−1, n+2), θ gluing the last two markings:
/// δ_irr − ψ_{n+1} − ψ_{n+2} + Σᵢ δ_{i:{n+1}} (sum over the valid i).
pub fn gluing_pullback_delta_irr(sig: ModuliSig) -> Result<DivisorClass> {
    let src = glued_source(sig)?;
    let n = sig.n;
    let mut d = DivisorClass::delta_irr_class(src);
    d.add_psi(n + 1, &int(-1))?;
    d.add_psi(n + 2, &int(-1))?;
    let single = Markings::from_labels([n + 1]).expect("label in range");
    let mut seen = BTreeSet::new();
    for i in 0..=src.g {
        if let Ok(idx) = BoundaryIndex::of_set(src, i, single) {
            if seen.insert(idx) {
                d.add_delta(idx, &int(1));
            }
        }
    }
    Ok(d)
}

/// θ*K_{g,n} = 13λ + ψ₁+…+ψₙ + 2ψ_{n+1} + 2ψ_{n+2} − 2δ − δ_{1:∅} − δ_{0:{n+1,n+2}}.
pub fn gluing_pullback_k(sig: ModuliSig) -> Result<DivisorClass> {
    let src = glued_source(sig)?;
    let n = sig.n;
    let mut d = total_boundary(src).scaled(&int(-2));
    d.lambda = int(13);
    for m in 1..=n {
        d.add_psi(m, &int(1))?;
    }
    d.add_psi(n + 1, &int(2))?;
    d.add_psi(n + 2, &int(2))?;
    d.add_delta(one_empty(src), &int(-1));
    d.add_delta_at(0, &[n + 1, n + 2], &int(-1))?;
    Ok(d)
}

/// Generators and K, as targets for a gluing pullback.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PullbackTarget {
    Lambda,
    Psi(u32),
    DeltaIrr,
    Delta(BoundaryIndex),
    Canonical,
}

/// θ* of a class on (g, n). Only δ_irr and K are supported.
pub fn gluing_pullback(sig: ModuliSig, target: PullbackTarget) -> Result<DivisorClass> {
    match target {
        PullbackTarget::DeltaIrr => gluing_pullback_delta_irr(sig),
        PullbackTarget::Canonical => gluing_pullback_k(sig),
        other => Err(Error::Unsupported(format!(
            "gluing pullback of {other:?} on {sig}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// JSON wire format

#[derive(Serialize, Deserialize)]
struct DeltaEntryWire {
    i: u32,
    #[serde(rename = "S")]
    set: Vec<u32>,
    c: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorWire {
    sig: ModuliSig,
    lambda: String,
    #[serde(default)]
    psi: BTreeMap<u32, String>,
    delta_irr: String,
    #[serde(default)]
    delta: Vec<DeltaEntryWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveWire {
    sig: ModuliSig,
    lambda: String,
    #[serde(default)]
    psi: BTreeMap<u32, String>,
    delta_total: String,
    #[serde(default)]
    delta: Vec<DeltaEntryWire>,
    assume_rest_zero: bool,
}

fn delta_wire(map: &BTreeMap<BoundaryIndex, Rational>) -> Vec<DeltaEntryWire> {
    map.iter()
        .map(|(idx, c)| DeltaEntryWire {
            i: idx.i,
            set: idx.set.to_vec(),
            c: rational::to_wire(c),
        })
        .collect()
}

fn psi_from_wire(sig: ModuliSig, psi: &BTreeMap<u32, String>) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); sig.n as usize];
    for (m, v) in psi {
        if *m == 0 || *m > sig.n {
            return Err(Error::InvalidInput(format!("psi_{m} does not exist on {sig}")));
        }
        out[(*m - 1) as usize] = rational::from_wire(v)?;
    }
    Ok(out)
}

impl Serialize for DivisorClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DivisorWire {
            sig: self.sig,
            lambda: rational::to_wire(&self.lambda),
            psi: self
                .psi
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as u32 + 1, rational::to_wire(c)))
                .collect(),
            delta_irr: rational::to_wire(&self.delta_irr),
            delta: delta_wire(&self.delta),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = DivisorWire::deserialize(d)?;
        let build = || -> Result<DivisorClass> {
            let mut out = DivisorClass::zero(w.sig);
            out.lambda = rational::from_wire(&w.lambda)?;
            out.psi = psi_from_wire(w.sig, &w.psi)?;
            out.delta_irr = rational::from_wire(&w.delta_irr)?;
            for e in &w.delta {
                out.add_delta_at(e.i, &e.set, &rational::from_wire(&e.c)?)?;
            }
            Ok(out)
        };
        build().map_err(serde::de::Error::custom)
    }
}

impl Serialize for CurveClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveWire {
            sig: self.sig,
            lambda: rational::to_wire(&self.lambda),
            psi: self
                .psi
                .iter()
                .enumerate()
                .map(|(k, c)| (k as u32 + 1, rational::to_wire(c)))
                .collect(),
            delta_total: rational::to_wire(&self.delta_total),
            delta: delta_wire(&self.delta_known),
            assume_rest_zero: self.assume_rest_zero,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CurveWire::deserialize(d)?;
        let build = || -> Result<CurveClass> {
            let mut known = BTreeMap::new();
            for e in &w.delta {
                let idx = BoundaryIndex::new(w.sig, e.i, &e.set)?;
                let v = rational::from_wire(&e.c)?;
                if let Some(prev) = known.insert(idx, v.clone()) {
                    if prev != v {
                        return Err(Error::InvalidInput(format!(
                            "conflicting values for {idx}: {prev} and {v}"
                        )));
                    }
                }
            }
            CurveClass::new(
                w.sig,
                rational::from_wire(&w.lambda)?,
                psi_from_wire(w.sig, &w.psi)?,
                rational::from_wire(&w.delta_total)?,
                known,
                w.assume_rest_zero,
            )
        };
        build().map_err(serde::de::Error::custom)
    }
}

/// Human-readable expansion of a divisor class, used by `--explain`.
pub fn describe(div: &DivisorClass) -> String {
    let mut parts = Vec::new();
    let mut push = |c: &Rational, name: String| {
        if c.is_zero() {
            return;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        parts.push(format!("{sign} {}*{name}", c.abs()));
    };
    push(&div.lambda, "lambda".into());
    for (k, c) in div.psi.iter().enumerate() {
        push(c, format!("psi_{}", k + 1));
    }
    push(&div.delta_irr, "delta_irr".into());
    for (idx, c) in &div.delta {
        push(c, idx.to_string());
    }
    if parts.is_empty() {
        return "0".into();
    }
    let s = parts.join(" ");
    s.strip_prefix("+ ").map(str::to_owned).unwrap_or(s)
}
