//! Picard lattices of blow-ups of ℙ² and of ℙ¹×ℙ¹.
//!
//! On Bl_r ℙ² a class is written aL + c₁E₁ + … + c_rE_r with L² = 1, Eᵢ² = −1,
//! and K = −3L + ΣEᵢ. On the quadric a class (a, b) pairs by the hyperbolic
//! form and K = (−2, −2).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lattice {
    BlowupOfPlane(usize),
    Quadric,
}

impl Lattice {
    pub fn rank(&self) -> usize {
        match self {
            Lattice::BlowupOfPlane(r) => r + 1,
            Lattice::Quadric => 2,
        }
    }

    fn form(&self, i: usize, j: usize) -> i64 {
        match self {
            Lattice::BlowupOfPlane(_) => match (i, j) {
                (0, 0) => 1,
                (a, b) if a == b => -1,
                _ => 0,
            },
            Lattice::Quadric => i64::from(i != j),
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Lattice::BlowupOfPlane(r) => format!("bl_{r}"),
            Lattice::Quadric => "quadric".into(),
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        if tag == "quadric" {
            return Ok(Lattice::Quadric);
        }
        tag.strip_prefix("bl_")
            .and_then(|r| r.parse().ok())
            .map(Lattice::BlowupOfPlane)
            .ok_or_else(|| Error::InvalidInput(format!("unknown lattice {tag:?}")))
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ClassWire", into = "ClassWire")]
pub struct LatticeClass {
    lattice: Lattice,
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct ClassWire {
    lattice: String,
    coeffs: Vec<i64>,
}

impl TryFrom<ClassWire> for LatticeClass {
    type Error = Error;
    fn try_from(w: ClassWire) -> Result<Self> {
        LatticeClass::new(Lattice::from_tag(&w.lattice)?, w.coeffs)
    }
}

impl From<LatticeClass> for ClassWire {
    fn from(c: LatticeClass) -> Self {
        ClassWire {
            lattice: c.lattice.tag(),
            coeffs: c.coeffs,
        }
    }
}

impl LatticeClass {
    pub fn new(lattice: Lattice, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != lattice.rank() {
            return Err(Error::InvalidInput(format!(
                "{lattice} has rank {}, got {} coefficients",
                lattice.rank(),
                coeffs.len()
            )));
        }
        Ok(LatticeClass { lattice, coeffs })
    }

    /// aL − m(E₁+…+E_r) on Bl_r ℙ².
    pub fn uniform_plane(r: usize, a: i64, m: i64) -> Self {
        let mut coeffs = vec![-m; r + 1];
        coeffs[0] = a;
        LatticeClass {
            lattice: Lattice::BlowupOfPlane(r),
            coeffs,
        }
    }

    /// (a, b) on ℙ¹×ℙ¹.
    pub fn quadric(a: i64, b: i64) -> Self {
        LatticeClass {
            lattice: Lattice::Quadric,
            coeffs: vec![a, b],
        }
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn checked_add(&self, other: &LatticeClass) -> Result<Self> {
        same_lattice(self, other)?;
        Ok(LatticeClass {
            lattice: self.lattice,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &LatticeClass) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LatticeClass {
            lattice: self.lattice,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn self_intersection(&self) -> i64 {
        intersect(self, self).expect("same lattice")
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.lattice, self.coeffs)
    }
}

fn same_lattice(a: &LatticeClass, b: &LatticeClass) -> Result<()> {
    if a.lattice != b.lattice {
        return Err(Error::LatticeMismatch {
            left: a.lattice.tag(),
            right: b.lattice.tag(),
        });
    }
    Ok(())
}

pub fn intersect(a: &LatticeClass, b: &LatticeClass) -> Result<i64> {
    same_lattice(a, b)?;
    let rank = a.lattice.rank();
    let mut s = 0;
    for i in 0..rank {
        for j in 0..rank {
            let f = a.lattice.form(i, j);
            if f != 0 {
                s += a.coeffs[i] * f * b.coeffs[j];
            }
        }
    }
    Ok(s)
}

pub fn canonical(lattice: Lattice) -> LatticeClass {
    match lattice {
        Lattice::BlowupOfPlane(r) => LatticeClass::uniform_plane(r, -3, -1),
        Lattice::Quadric => LatticeClass::quadric(-2, -2),
    }
}

/// 1 + (C² + C·K)/2.
pub fn arithmetic_genus(c: &LatticeClass) -> Result<i64> {
    let k = canonical(c.lattice);
    let s = c.self_intersection() + intersect(c, &k)?;
    if s % 2 != 0 {
        return Err(Error::ParityError {
            what: "C^2 + C.K",
            value: s,
        });
    }
    Ok(1 + s / 2)
}

pub fn degree(c: &LatticeClass, h: &LatticeClass) -> Result<i64> {
    intersect(c, h)
}

/// Largest |a| among (−1)-classes on Bl_r ℙ² for r ≤ 8 (reached by 6L − 3E₁ − 2ΣE).
const LINE_DEGREE_BOUND: i64 = 6;

/// All classes ℓ with ℓ² = −1 and ℓ·K = −1 on Bl_r ℙ², r ≤ 8, sorted.
pub fn enumerate_lines(lattice: Lattice) -> Result<Vec<LatticeClass>> {
    let r = match lattice {
        Lattice::BlowupOfPlane(r) => r,
        Lattice::Quadric => {
            return Err(Error::Unsupported("line enumeration on the quadric".into()))
        }
    };
    if r > 8 {
        return Err(Error::UnsupportedRank(r));
    }
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; r];
    for a in -LINE_DEGREE_BOUND..=LINE_DEGREE_BOUND {
        // a² − Σcᵢ² = −1 and −3a − Σcᵢ = −1
        let squares = a * a + 1;
        let sum = 1 - 3 * a;
        search(&mut coeffs, 0, squares, sum, &mut |cs| {
            let mut v = Vec::with_capacity(r + 1);
            v.push(a);
            v.extend_from_slice(cs);
            out.push(LatticeClass { lattice, coeffs: v });
        });
    }
    out.sort();
    Ok(out)
}

/// Fills `coeffs[pos..]` with integers whose squares sum to `squares` and whose
/// sum is `sum`.
fn search(coeffs: &mut Vec<i64>, pos: usize, squares: i64, sum: i64, emit: &mut dyn FnMut(&[i64])) {
    let left = (coeffs.len() - pos) as i64;
    if left == 0 {
        if squares == 0 && sum == 0 {
            emit(coeffs);
        }
        return;
    }
    // Cauchy-Schwarz on the remaining entries.
    if squares < 0 || sum * sum > left * squares {
        return;
    }
    let bound = isqrt(squares);
    for c in -bound..=bound {
        coeffs[pos] = c;
        search(coeffs, pos + 1, squares - c * c, sum - c, emit);
    }
    coeffs[pos] = 0;
}

fn isqrt(v: i64) -> i64 {
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// Pairs (F², M²) with F², M² ≥ 1, F²·M² ≤ 1 and F² + M² + 2 = c2.
pub fn hodge_index_pairs(c2: i64) -> Vec<(i64, i64)> {
    (1..=c2 - 3)
        .map(|f| (f, c2 - 2 - f))
        .filter(|&(f, m)| m >= 1 && f * m <= 1)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitValue {
    pub line: LatticeClass,
    pub value: i64,
}

/// Outcome of testing whether C splits as F + M with F·M = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub class: LatticeClass,
    pub c_squared: i64,
    /// C² > 0; otherwise the case split does not apply and exclusion is not claimed.
    pub applicable: bool,
    /// (a): (F², M²) pairs with both positive allowed by Hodge index.
    pub positive_genus_pairs: Vec<(i64, i64)>,
    pub case_a_contradiction: bool,
    /// (b): ℓ·(C − ℓ) for every line ℓ.
    pub line_values: Vec<SplitValue>,
    pub lines_meeting_once: Vec<LatticeClass>,
    /// (c): (−K − ℓ)·(C + K + ℓ) for every line ℓ.
    pub conic_values: Vec<SplitValue>,
    pub conics_meeting_once: Vec<LatticeClass>,
    pub exclusion_holds: bool,
}

/// The three splitting cases on the cubic surface: both parts of positive
/// genus, F a line, F = −K − ℓ.
pub fn check_onenode_splittings(c: &LatticeClass) -> Result<SplittingReport> {
    let cubic = Lattice::BlowupOfPlane(6);
    if c.lattice != cubic {
        return Err(Error::LatticeMismatch {
            left: c.lattice.tag(),
            right: cubic.tag(),
        });
    }
    let c2 = c.self_intersection();
    let pairs = hodge_index_pairs(c2);
    let k = canonical(cubic);

    let mut line_values = Vec::new();
    let mut conic_values = Vec::new();
    for line in enumerate_lines(cubic)? {
        let rest = c.checked_sub(&line)?;
        line_values.push(SplitValue {
            value: intersect(&line, &rest)?,
            line: line.clone(),
        });
        let f = k.neg().checked_sub(&line)?;
        let m = c.checked_sub(&f)?;
        conic_values.push(SplitValue {
            value: intersect(&f, &m)?,
            line,
        });
    }
    let once = |vals: &[SplitValue]| -> Vec<LatticeClass> {
        vals.iter()
            .filter(|s| s.value == 1)
            .map(|s| s.line.clone())
            .collect()
    };
    let lines_meeting_once = once(&line_values);
    let conics_meeting_once = once(&conic_values);
    let applicable = c2 > 0;
    let case_a_contradiction = pairs.is_empty();
    let exclusion_holds = applicable
        && case_a_contradiction
        && lines_meeting_once.is_empty()
        && conics_meeting_once.is_empty();
    Ok(SplittingReport {
        class: c.clone(),
        c_squared: c2,
        applicable,
        positive_genus_pairs: pairs,
        case_a_contradiction,
        line_values,
        lines_meeting_once,
        conic_values,
        conics_meeting_once,
        exclusion_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bl(r: usize, coeffs: &[i64]) -> LatticeClass {
        LatticeClass::new(Lattice::BlowupOfPlane(r), coeffs.to_vec()).unwrap()
    }

    #[test]
    fn intersection_form() {
        let l = bl(6, &[1, 0, 0, 0, 0, 0, 0]);
        let e1 = bl(6, &[0, 1, 0, 0, 0, 0, 0]);
        let e2 = bl(6, &[0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(intersect(&l, &l).unwrap(), 1);
        assert_eq!(intersect(&e1, &e1).unwrap(), -1);
        assert_eq!(intersect(&e1, &e2).unwrap(), 0);
        assert_eq!(intersect(&l, &e1).unwrap(), 0);
        let c1 = LatticeClass::uniform_plane(6, 13, 5);
        assert_eq!(c1.self_intersection(), 19);
        for g in 0..12 {
            assert_eq!(LatticeClass::quadric(2, g + 1).self_intersection(), 4 * (g + 1));
        }
        assert!(matches!(
            intersect(&l, &LatticeClass::quadric(1, 0)),
            Err(Error::LatticeMismatch { .. })
        ));
    }

    #[test]
    fn canonical_classes() {
        assert_eq!(canonical(Lattice::BlowupOfPlane(6)).coeffs(), &[-3, 1, 1, 1, 1, 1, 1]);
        assert_eq!(canonical(Lattice::Quadric).coeffs(), &[-2, -2]);
        assert_eq!(canonical(Lattice::BlowupOfPlane(0)).coeffs(), &[-3]);
    }

    #[test]
    fn genus_and_degree() {
        let c1 = LatticeClass::uniform_plane(6, 13, 5);
        assert_eq!(arithmetic_genus(&c1).unwrap(), 6);
        let antik = canonical(Lattice::BlowupOfPlane(6)).neg();
        assert_eq!(degree(&c1, &antik).unwrap(), 9);

        for g in 0..15 {
            assert_eq!(arithmetic_genus(&LatticeClass::quadric(2, g + 1)).unwrap(), g);
        }
        let rational_quartic = LatticeClass::quadric(3, 1);
        assert_eq!(arithmetic_genus(&rational_quartic).unwrap(), 0);
        assert_eq!(degree(&rational_quartic, &LatticeClass::quadric(1, 1)).unwrap(), 4);

        let sextic = LatticeClass::uniform_plane(3, 6, 2);
        assert_eq!(arithmetic_genus(&sextic).unwrap(), 7);
        let antik3 = canonical(Lattice::BlowupOfPlane(3)).neg();
        assert_eq!(degree(&sextic, &antik3).unwrap(), 12);
    }

    #[test]
    fn genus_is_always_integral() {
        // K is characteristic on both lattices, so C² + C·K is always even
        assert_eq!(arithmetic_genus(&LatticeClass::quadric(1, 0)).unwrap(), 0);
        for a in -3..3 {
            for b in -3..3 {
                assert!(arithmetic_genus(&LatticeClass::quadric(a, b)).is_ok());
                assert!(arithmetic_genus(&bl(2, &[a, b, a - b])).is_ok());
            }
        }
    }

    #[test]
    fn line_counts() {
        let counts: Vec<usize> = (0..=8)
            .map(|r| enumerate_lines(Lattice::BlowupOfPlane(r)).unwrap().len())
            .collect();
        assert_eq!(counts, vec![0, 1, 3, 6, 10, 16, 27, 56, 240]);
        assert!(matches!(
            enumerate_lines(Lattice::BlowupOfPlane(9)),
            Err(Error::UnsupportedRank(9))
        ));
    }

    #[test]
    fn cubic_lines_are_the_classical_27() {
        let lines = enumerate_lines(Lattice::BlowupOfPlane(6)).unwrap();
        let by_degree = |a: i64| lines.iter().filter(|l| l.coeffs()[0] == a).count();
        assert_eq!((by_degree(0), by_degree(1), by_degree(2)), (6, 15, 6));
        let antik = canonical(Lattice::BlowupOfPlane(6)).neg();
        for l in &lines {
            assert_eq!(arithmetic_genus(l).unwrap(), 0);
            assert_eq!(degree(l, &antik).unwrap(), 1);
        }
        let r3 = enumerate_lines(Lattice::BlowupOfPlane(3)).unwrap();
        assert_eq!(r3.len(), 6);
    }

    #[test]
    fn exclusion_for_genus6_curve() {
        let c1 = LatticeClass::uniform_plane(6, 13, 5);
        let rep = check_onenode_splittings(&c1).unwrap();
        assert_eq!(rep.c_squared, 19);
        assert!(rep.case_a_contradiction);
        assert!(rep.lines_meeting_once.is_empty());
        assert!(rep.conics_meeting_once.is_empty());
        assert!(rep.exclusion_holds);
        assert_eq!(rep.line_values.len(), 27);
        let mut vals: Vec<i64> = rep.line_values.iter().map(|s| s.value).collect();
        vals.sort();
        vals.dedup();
        assert_eq!(vals, vec![2, 4, 6]);
        assert_eq!(rep, check_onenode_splittings(&c1).unwrap());
    }

    #[test]
    fn exclusion_fails_for_reducible_conic() {
        let c = bl(6, &[2, -1, -1, -1, -1, 0, 0]);
        let rep = check_onenode_splittings(&c).unwrap();
        let a = bl(6, &[1, -1, -1, 0, 0, 0, 0]);
        let b = bl(6, &[1, 0, 0, -1, -1, 0, 0]);
        assert!(rep.lines_meeting_once.contains(&a));
        assert!(rep.lines_meeting_once.contains(&b));
        assert!(!rep.exclusion_holds);
    }

    #[test]
    fn exclusion_degenerate_input() {
        let e1 = bl(6, &[0, 1, 0, 0, 0, 0, 0]);
        let rep = check_onenode_splittings(&e1).unwrap();
        assert!(!rep.applicable);
        assert!(!rep.exclusion_holds);
        assert!(check_onenode_splittings(&LatticeClass::quadric(1, 1)).is_err());
    }

    #[test]
    fn hodge_pairs() {
        assert_eq!(hodge_index_pairs(4), vec![(1, 1)]);
        assert!(hodge_index_pairs(19).is_empty());
        assert!(hodge_index_pairs(3).is_empty());
    }

    #[test]
    fn class_json() {
        let c = LatticeClass::uniform_plane(6, 13, 5);
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j, serde_json::json!({"lattice":"bl_6","coeffs":[13,-5,-5,-5,-5,-5,-5]}));
        let q: LatticeClass =
            serde_json::from_str(r#"{"lattice":"quadric","coeffs":[2,5]}"#).unwrap();
        assert_eq!(q, LatticeClass::quadric(2, 5));
        assert!(serde_json::from_str::<LatticeClass>(r#"{"lattice":"bl_6","coeffs":[1]}"#).is_err());
    }
}
