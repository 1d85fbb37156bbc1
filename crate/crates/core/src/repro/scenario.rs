//! Scenario documents and their evaluation into named outputs.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::curve_numerics::{
    direct_certificate, glued_certificate, lift_one_point, moduli_dim, pencil_curve_class,
    pencil_k, theta_components, theta_k, uniform_pairwise, uniruled_by_forgetting, AuxCurveData,
    PencilData, ThetaInput, VerdictKind,
};
use crate::divisor_algebra::{
    canonical_class, describe, gluing_pullback_delta_irr, gluing_pullback_k,
    k_forgetful_correction, pair, CurveClass, ForgetfulVariant, ModuliSig,
};
use crate::dual_graph::{lies_in_boundary, paper_graph_fixtures, Stratum};
use crate::error::{Error, Result};
use crate::rational::{from_wire, int, to_wire, Rational};
use crate::surface_lattice::{
    arithmetic_genus, canonical, check_onenode_splittings, degree, enumerate_lines, Lattice,
    LatticeClass,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub id: String,
    pub provenance: String,
    pub task: Task,
    pub expected: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub key: String,
    /// A rational in wire form, an integer, a boolean, or a verdict name.
    pub value: serde_json::Value,
    pub citation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Task {
    /// Curve class of a pencil and its canonical degree.
    Pencil {
        pencil: PencilData,
        #[serde(default)]
        assume_rest_zero: bool,
    },
    /// Lift of a pencil along auxiliary curves D₁…D_k.
    Lift {
        pencil: PencilData,
        #[serde(default)]
        assume_rest_zero: bool,
        aux: Vec<AuxCurveData>,
        /// Defaults to all zeros.
        #[serde(default)]
        pairwise: Option<Vec<Vec<i64>>>,
        nef_declared: bool,
    },
    /// Pencil class on (g−1, n+2) pushed into δ_irr of `target`.
    Gluing {
        pencil: PencilData,
        target: ModuliSig,
        nef_declared: bool,
    },
    /// The classes (2, g+1) on ℙ¹×ℙ¹.
    Hyperelliptic { g_min: u32, g_max: u32 },
    Lines { r: usize },
    Exclusion { class: LatticeClass },
    /// The genus-13 degeneration families against Δ_irr and Δ₁…Δ₆.
    GraphAvoidance {},
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(Rational),
    Bool(bool),
    Text(String),
}

impl Value {
    pub fn from_expected(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::Bool(b) => Ok(Value::Bool(*b)),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|i| Value::Rational(int(i)))
                .ok_or_else(|| Error::MalformedScenario(format!("non-integral number {n}; write rationals as strings"))),
            serde_json::Value::String(s) => Ok(match from_wire(s) {
                Ok(r) => Value::Rational(r),
                Err(_) => Value::Text(s.clone()),
            }),
            other => Err(Error::MalformedScenario(format!("unsupported expected value {other}"))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Rational(r) => serde_json::Value::String(to_wire(r)),
            Value::Bool(b) => serde_json::Value::Bool(*b),
            Value::Text(s) => serde_json::Value::String(s.clone()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => write!(f, "{}", to_wire(r)),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Text(s) => f.write_str(s),
        }
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Rational(r)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Rational(int(v))
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub value: Value,
    pub explain: String,
}

/// Named outputs of one task, in key order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outputs(pub BTreeMap<String, Output>);

impl Outputs {
    fn put(&mut self, key: impl Into<String>, value: impl Into<Value>, explain: impl Into<String>) {
        self.0.insert(
            key.into(),
            Output {
                value: value.into(),
                explain: explain.into(),
            },
        );
    }

    pub fn get(&self, key: &str) -> Option<&Output> {
        self.0.get(key)
    }
}

fn verdict_name(k: VerdictKind) -> String {
    format!("{k:?}")
}

fn curve_summary(c: &CurveClass) -> String {
    let psi: Vec<String> = c.psi_values().iter().map(to_wire).collect();
    format!(
        "{}: lambda={}, psi=[{}], delta={}",
        c.sig(),
        c.lambda(),
        psi.join(","),
        c.delta_total()
    )
}

fn pencil_outputs(out: &mut Outputs, p: &PencilData, gamma: &CurveClass) -> Result<Rational> {
    let g = p.genus()?;
    out.put("genus", g, format!("1 + (C^2 + C.K)/2 = 1 + ({} + {})/2", p.c2, p.ck));
    out.put(
        "lambda",
        gamma.lambda().clone(),
        format!("chi_O + g - 1 = {} + {g} - 1", p.surface.chi_o),
    );
    out.put(
        "delta",
        gamma.delta_total().clone(),
        format!(
            "12 chi_O - K^2 + C^2 + 4(g-1) = 12*{} - {} + {} + 4*{}",
            p.surface.chi_o,
            p.surface.k2,
            p.c2,
            g - 1
        ),
    );
    if let Some(d) = gamma.delta_irr() {
        out.put("delta_irr", d, "all delta_{i:S} vanish, so delta_irr = delta");
    }
    for (i, v) in gamma.psi_values().iter().enumerate() {
        out.put(format!("psi_{}", i + 1), v.clone(), "exceptional section, self-intersection -1");
    }
    let k = pencil_k(gamma)?;
    out.put(
        "gamma_K",
        k.clone(),
        format!("({}) . ({})", curve_summary(gamma), describe(&canonical_class(gamma.sig()))),
    );
    Ok(k)
}

/// Evaluates a task into its named outputs.
pub fn evaluate(task: &Task) -> Result<Outputs> {
    let mut out = Outputs::default();
    match task {
        Task::Pencil {
            pencil,
            assume_rest_zero,
        } => {
            let gamma = pencil_curve_class(pencil, *assume_rest_zero)?;
            pencil_outputs(&mut out, pencil, &gamma)?;
        }
        Task::Lift {
            pencil,
            assume_rest_zero,
            aux,
            pairwise,
            nef_declared,
        } => {
            let gamma = pencil_curve_class(pencil, *assume_rest_zero)?;
            let gk = pencil_outputs(&mut out, pencil, &gamma)?;
            let k = aux.len();
            let pairwise = pairwise.clone().unwrap_or_else(|| uniform_pairwise(k, 0));
            let input = ThetaInput::new(pencil.clone(), gamma.clone(), aux.clone(), pairwise)?;
            lift_outputs(&mut out, &input, &gk, *nef_declared)?;
        }
        Task::Gluing {
            pencil,
            target,
            nef_declared,
        } => {
            let gamma = pencil_curve_class(pencil, true)?;
            pencil_outputs(&mut out, pencil, &gamma)?;
            gluing_outputs(&mut out, &gamma, *target, *nef_declared)?;
        }
        Task::Hyperelliptic { g_min, g_max } => {
            if g_min > g_max {
                return Err(Error::MalformedScenario(format!("empty genus range {g_min}..{g_max}")));
            }
            let mut all = true;
            for g in *g_min..=*g_max {
                let c = LatticeClass::quadric(2, i64::from(g) + 1);
                let pa = arithmetic_genus(&c)?;
                let c2 = c.self_intersection();
                all &= pa == i64::from(g) && c2 == 4 * i64::from(g) + 4;
                out.put(format!("genus_{g}"), pa, format!("(2,{}) on the quadric: 1 + (C^2 + C.K)/2", g + 1));
                out.put(format!("base_points_{g}"), c2, format!("C^2 = 2*2*{}", g + 1));
            }
            out.put("all_match", all, "genus g and 4g+4 base points for every g in range");
        }
        Task::Lines { r } => {
            let lattice = Lattice::BlowupOfPlane(*r);
            let lines = enumerate_lines(lattice)?;
            let antik = canonical(lattice).neg();
            let mut genus0 = true;
            let mut degree1 = true;
            let mut by_degree: BTreeMap<i64, i64> = BTreeMap::new();
            for l in &lines {
                genus0 &= arithmetic_genus(l)? == 0;
                degree1 &= degree(l, &antik)? == 1;
                *by_degree.entry(l.coeffs()[0]).or_default() += 1;
            }
            out.put("count", lines.len() as i64, format!("l^2 = -1 and l.K = -1 on bl_{r}"));
            out.put("all_genus_0", genus0, "1 + (l^2 + l.K)/2 = 0");
            out.put("all_degree_1", degree1, "l.(-K) = 1");
            for (a, c) in by_degree {
                out.put(format!("count_with_L_coeff_{a}"), c, "lines with this coefficient of L");
            }
        }
        Task::Exclusion { class } => {
            let rep = check_onenode_splittings(class)?;
            let k = canonical(class.lattice());
            out.put("c_squared", rep.c_squared, "C^2");
            out.put("genus", arithmetic_genus(class)?, "1 + (C^2 + C.K)/2");
            out.put("anticanonical_degree", degree(class, &k.neg())?, "C.(-K)");
            out.put(
                "case_a_contradiction",
                rep.case_a_contradiction,
                "no F^2, M^2 >= 1 with F^2 M^2 <= 1 and F^2 + M^2 + 2 = C^2",
            );
            let set = |vals: &[crate::surface_lattice::SplitValue]| {
                let s: std::collections::BTreeSet<i64> = vals.iter().map(|v| v.value).collect();
                s.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
            };
            out.put("line_values", Value::Text(set(&rep.line_values)), "l.(C - l) over all lines");
            out.put("conic_values", Value::Text(set(&rep.conic_values)), "(-K - l).(C + K + l) over all lines");
            out.put("lines_meeting_once", rep.lines_meeting_once.len() as i64, "lines with l.(C - l) = 1");
            out.put(
                "conics_meeting_once",
                rep.conics_meeting_once.len() as i64,
                "conics with (-K - l).(C + K + l) = 1",
            );
            out.put("exclusion_holds", rep.exclusion_holds, "C^2 > 0 and all three cases empty");
        }
        Task::GraphAvoidance {} => {
            let fixtures = paper_graph_fixtures();
            let mut genus13 = true;
            let mut in_irr = true;
            let mut avoids = true;
            let mut unstable = Vec::new();
            for fx in &fixtures {
                genus13 &= fx.graph.arithmetic_genus()? == 13;
                in_irr &= lies_in_boundary(&fx.graph, Stratum::DeltaIrr)?;
                for i in 1..=6 {
                    avoids &= !lies_in_boundary(&fx.graph, Stratum::Delta(i))?;
                }
                if !fx.graph.is_stable() {
                    let (a, b) = fx.split.unwrap_or_default();
                    unstable.push(format!("family {} (a={a}, b={b})", fx.family));
                }
            }
            out.put("instances", fixtures.len() as i64, "2 fixed graphs + 2 families x 9 splits a+b=8");
            out.put("all_genus_13", genus13, "sum g(v) + |E| - |V| + 1");
            out.put("all_in_delta_irr", in_irr, "a one-loop genus-12 graph is reachable by smoothing");
            out.put("avoids_delta_1_to_6", avoids, "no two-vertex one-edge graph of genera (i, 13-i) is reachable");
            out.put("all_stable", unstable.is_empty(), "2g(v) - 2 + deg(v) > 0 at every vertex");
            out.put(
                "unstable_instances",
                unstable.len() as i64,
                if unstable.is_empty() {
                    "none".to_string()
                } else {
                    format!("rational vertex of valence <= 2 in: {}", unstable.join("; "))
                },
            );
        }
    }
    Ok(out)
}

fn lift_outputs(out: &mut Outputs, input: &ThetaInput, gk: &Rational, nef_declared: bool) -> Result<()> {
    let k = input.k();
    let tk = theta_k(input, gk)?;
    let prod: i64 = input.aux.iter().map(|a| a.dc).product();
    let ratios: Vec<String> = input.aux.iter().map(|a| format!("{}/{}", a.dk, a.dc)).collect();
    out.put(
        "theta_K",
        tk.clone(),
        format!(
            "prod DC * (gamma_K + 2k + sum DK/DC) - sum DiDj = {prod} * ({gk} + {} + {}) - {}",
            2 * k,
            ratios.join(" + "),
            pair_sum(&input.pairwise)
        ),
    );
    if k == 1 {
        let l = lift_one_point(gk, input.aux[0]);
        out.put(
            "lift_K",
            l,
            format!("DC*(gamma_K + 2) + DK = {}*({gk} + 2) + {}", input.aux[0].dc, input.aux[0].dk),
        );
    }

    let theta = theta_components(input)?;
    let up = theta.sig();
    out.put("lift_lambda", theta.lambda().clone(), "prod DC * lambda");
    out.put("lift_delta", theta.delta_total().clone(), "prod DC * delta + sum DiDj");
    let n = input.gamma.sig().n();
    for j in 1..=k as u32 {
        out.put(
            format!("lift_psi_{}", n + j),
            theta.psi(n + j),
            "prod_{j != i} DC_j * (DK_i + 2 DC_i) + sum DiDj",
        );
    }
    let kup = canonical_class(up);
    let via = pair(&theta, &kup)?;
    out.put(
        "components_K",
        via.clone(),
        format!("({}) . ({})", curve_summary(&theta), describe(&kup)),
    );
    out.put(
        "consistency_delta",
        &via - &tk,
        "components_K - theta_K; reported, not reconciled",
    );
    for (key, variant) in [
        ("forgetful_printed_K", ForgetfulVariant::Printed),
        ("forgetful_standard_K", ForgetfulVariant::Standard),
    ] {
        let corr = k_forgetful_correction(input.gamma.sig(), k as u32, variant)?;
        let v = int(prod) * gk + pair(&theta, &corr)?;
        out.put(
            key,
            v,
            format!("prod DC * gamma_K + theta . ({})", describe(&corr)),
        );
    }
    let cert = direct_certificate(&tk, nef_declared);
    out.put("K_value", tk, "theta_K");
    out.put("target", Value::Text(up.to_string()), "lifted space");
    out.put(
        "verdict",
        Value::Text(verdict_name(cert.kind)),
        format!("nef declared: {nef_declared}; negative K-degree certifies uniruledness"),
    );
    Ok(())
}

fn pair_sum(pairwise: &[Vec<i64>]) -> i64 {
    let k = pairwise.len();
    (0..k).flat_map(|a| (a + 1..k).map(move |b| pairwise[a][b])).sum()
}

fn gluing_outputs(out: &mut Outputs, gamma: &CurveClass, target: ModuliSig, nef_declared: bool) -> Result<()> {
    let dirr = gluing_pullback_delta_irr(target)?;
    let kk = gluing_pullback_k(target)?;
    let cert = glued_certificate(gamma, target)?;
    let kind = if nef_declared { cert.kind } else { VerdictKind::Inconclusive };
    out.put(
        "witness",
        cert.witness.clone().unwrap_or_else(Rational::zero),
        format!("({}) . ({})", curve_summary(gamma), describe(&dirr)),
    );
    out.put(
        "K_value",
        cert.k_value.clone(),
        format!("({}) . ({})", curve_summary(gamma), describe(&kk)),
    );
    out.put("target", Value::Text(target.to_string()), "glued space");
    out.put("target_dim", moduli_dim(target.g().into(), target.n().into()), "3g - 3 + n");
    out.put(
        "verdict",
        Value::Text(verdict_name(kind)),
        format!("nef declared: {nef_declared}; witness > 0 with K < 0 uniruled, K = 0 bounds Kodaira dimension"),
    );
    if let (VerdictKind::KodairaBound, Some(b)) = (kind, cert.bound) {
        out.put("bound", b, "dim of the source - 1 = dim of the target - 2");
    }
    if kind == VerdictKind::Uniruled {
        for s in uniruled_by_forgetting(target) {
            out.put(
                format!("uniruled_{}_{}", s.g(), s.n()),
                true,
                format!("dominated by {target} through the forgetful map"),
            );
        }
    }
    Ok(())
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| Error::MalformedScenario(e.to_string()))?;
        s.check()?;
        Ok(s)
    }

    /// Structural checks beyond the JSON shape.
    pub fn check(&self) -> Result<()> {
        if self.id.trim().is_empty() {
            return Err(Error::MalformedScenario("empty id".into()));
        }
        if self.expected.is_empty() {
            return Err(Error::MalformedScenario(format!("{}: no expected values", self.id)));
        }
        let mut keys = std::collections::BTreeSet::new();
        for e in &self.expected {
            if e.citation.trim().is_empty() {
                return Err(Error::MalformedScenario(format!("{}: {} has no citation", self.id, e.key)));
            }
            if !keys.insert(&e.key) {
                return Err(Error::MalformedScenario(format!("{}: duplicate key {}", self.id, e.key)));
            }
            Value::from_expected(&e.value)?;
        }
        Ok(())
    }
}
