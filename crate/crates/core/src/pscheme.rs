//! Linear p-schemes: finitely many sequences `A_0 = A, A_1, ..., A_{s-1}`
//! with `A_i(pn + k) = sum_j M_k[i][j] A_j(n) mod p^r`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arith::{Modulus, Prime};
use crate::congruence::{digits, glc, lucas_check, Source};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, ResiduePoly};
use crate::report::{CongruenceReport, Counterexample, ReportKind};
use crate::sequences::{ct_residues, ct_sequence, CtSpec, DigitEvaluator, Method};

pub const DEFAULT_MAX_STATES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawScheme")]
pub struct LinearPScheme {
    p: u64,
    r: u32,
    states: usize,
    matrices: Vec<Vec<Vec<u64>>>,
    init: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct RawScheme {
    p: u64,
    r: u32,
    states: usize,
    matrices: Vec<Vec<Vec<u64>>>,
    init: Vec<u64>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl TryFrom<RawScheme> for LinearPScheme {
    type Error = Error;
    fn try_from(raw: RawScheme) -> Result<Self> {
        let sch = LinearPScheme {
            p: raw.p,
            r: raw.r,
            states: raw.states,
            matrices: raw.matrices,
            init: raw.init,
            labels: raw.labels,
        };
        sch.validate()?;
        Ok(sch)
    }
}

impl LinearPScheme {
    pub fn new(p: Prime, r: u32, matrices: Vec<Vec<Vec<u64>>>, init: Vec<u64>) -> Result<Self> {
        let sch = LinearPScheme {
            p: p.get(),
            r,
            states: init.len(),
            matrices,
            init,
            labels: None,
        };
        sch.validate()?;
        Ok(sch)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.states {
            return Err(Error::InvalidScheme(format!(
                "{} labels for {} states",
                labels.len(),
                self.states
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScheme(msg));
        let p = Prime::new(self.p).map_err(|_| Error::InvalidScheme(format!("{} is not prime", self.p)))?;
        let m = p.power(self.r).map_err(|e| Error::InvalidScheme(e.to_string()))?;
        if self.states == 0 {
            return bad("a scheme needs at least one state".into());
        }
        if self.init.len() != self.states {
            return bad(format!("init has {} entries for {} states", self.init.len(), self.states));
        }
        if self.matrices.len() != self.p as usize {
            return bad(format!("expected {} matrices, got {}", self.p, self.matrices.len()));
        }
        for (k, mat) in self.matrices.iter().enumerate() {
            if mat.len() != self.states || mat.iter().any(|row| row.len() != self.states) {
                return bad(format!("matrix {k} is not {0}x{0}", self.states));
            }
        }
        let entries = self.matrices.iter().flatten().flatten().chain(&self.init);
        if entries.into_iter().any(|&v| v >= m.get()) {
            return bad(format!("entries must be residues in 0..{}", m.get()));
        }
        if let Some(l) = &self.labels {
            if l.len() != self.states {
                return bad(format!("{} labels for {} states", l.len(), self.states));
            }
        }
        Ok(())
    }

    pub fn p(&self) -> Prime {
        Prime::new(self.p).expect("validated")
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> Modulus {
        self.p().power(self.r).expect("validated")
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn matrix(&self, k: usize) -> &[Vec<u64>] {
        &self.matrices[k]
    }

    pub fn init(&self) -> &[u64] {
        &self.init
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `M_k v mod p^r`.
    pub fn apply(&self, k: usize, v: &[u64]) -> Vec<u64> {
        let m = self.modulus();
        self.matrices[k]
            .iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| m.add(acc, m.mul(*a, *b))))
            .collect()
    }

    /// `(A_0(n), ..., A_{s-1}(n)) = M_{n_0} M_{n_1} ... M_{n_r} c`.
    pub fn state_vector(&self, n: u64) -> Vec<u64> {
        let ds = digits(n, self.p()).digits;
        ds.iter().rev().fold(self.init.clone(), |v, &d| self.apply(d as usize, &v))
    }

    pub fn evaluate(&self, n: u64) -> u64 {
        self.state_vector(n)[0]
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("scheme serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidScheme(e.to_string()))
    }
}

/// One-state scheme `M_k = [A(k)]`, `c = (1)`.
pub fn from_lucas_table(base: &[u64], p: Prime) -> Result<LinearPScheme> {
    if base.len() != p.get() as usize {
        return Err(Error::InvalidInput(format!("need {} base residues", p.get())));
    }
    let m = p.modulus();
    if m.reduce_i64(base[0] as i64) != 1 {
        return Err(Error::InvalidInput("the first base residue must be 1".into()));
    }
    let matrices = base.iter().map(|&a| vec![vec![a % p.get()]]).collect();
    LinearPScheme::new(p, 1, matrices, vec![1])
}

/// Two states `A` and `B = ct[P^n]` encoding the simplified generalized
/// Lucas congruences.
pub fn two_state_from_glc(p_poly: &LaurentPoly, q_poly: &LaurentPoly, p: Prime) -> Result<LinearPScheme> {
    let data = glc::glc_data(p_poly, q_poly, p)?;
    glc::check_simple_hypotheses(&data)?;
    let m = p.modulus();
    let pv = p.get();
    let spec = CtSpec::new(p_poly.clone(), q_poly.clone())?;
    let a = ct_sequence(&spec, pv - 1, Some(m))?.residues(m)?;
    let b = ct_sequence(&spec.with_q(LaurentPoly::one(spec.dim())?)?, pv - 1, Some(m))?.residues(m)?;
    let matrices = (0..pv as usize)
        .map(|k| {
            let row0 = if k + 1 < pv as usize {
                vec![0, a[k]]
            } else {
                vec![1, m.sub(a[k], a[0])]
            };
            vec![row0, vec![0, b[k]]]
        })
        .collect();
    LinearPScheme::new(p, 1, matrices, vec![a[0], 1])?.with_labels(vec![q_poly.to_string(), "1".into()])
}

/// Splits a residue polynomial into a unit scale and a normal form.
fn normalize(r: &ResiduePoly) -> (u64, ResiduePoly) {
    let m = r.modulus;
    match r.terms.iter().find(|(_, c)| m.is_unit(*c)) {
        Some(&(_, c)) => {
            let inv = m.inv(c).expect("unit");
            (c, r.scale(inv))
        }
        None => (1, r.clone()),
    }
}

/// Breadth-first closure of the states `G_{R,j}`, starting from `Q`.
///
/// Each state is a pair (level `j`, polynomial `R`) standing for
/// `ct[P^(p^j n) R] mod p^r`, as in [`DigitEvaluator`]. A new polynomial is
/// matched against known states at the same level up to a unit factor.
pub fn synthesize(spec: &CtSpec, p: Prime, r: u32, max_states: usize) -> Result<LinearPScheme> {
    let ev = DigitEvaluator::new(spec, p, r)?;
    let m = ev.modulus();
    let pv = p.get() as usize;
    let rad_p = spec.p().max_abs_exponent();
    let rad_q = spec.q().max_abs_exponent();
    let cap = rad_q + rad_p * (p.get() as i64).pow(r) + 1;

    let mut polys: Vec<(u32, ResiduePoly)> = Vec::new();
    let mut scales: Vec<u64> = Vec::new();
    let mut index: HashMap<(u32, ResiduePoly), usize> = HashMap::new();
    // rows[i][k]: nonzero entries (state, coefficient) of row i of M_k.
    let mut rows: Vec<Vec<Option<(usize, u64)>>> = Vec::new();

    let start = spec.q().to_residues(m);
    let (s0, n0) = normalize(&start);
    index.insert((0, n0), 0);
    polys.push((0, start));
    scales.push(s0);

    let mut i = 0;
    while i < polys.len() {
        let (level, poly) = polys[i].clone();
        let next_level = (level + 1).min(r - 1);
        let mut row_k = Vec::with_capacity(pv);
        for k in 0..pv {
            let next = ev.step(&poly, level, k as u64);
            let mut entry = None;
            if !next.is_zero() {
                let radius = next.max_abs_exponent();
                if radius > cap {
                    return Err(Error::SupportCapExceeded { exponent: radius, cap });
                }
                let (s, normal) = normalize(&next);
                let key = (next_level, normal);
                let t = match index.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = polys.len();
                        if t >= max_states {
                            return Err(Error::StateExplosion { max_states });
                        }
                        index.insert(key, t);
                        polys.push((next_level, next));
                        scales.push(s);
                        t
                    }
                };
                let coef = m.mul(s, m.inv(scales[t]).expect("scales are units or 1"));
                entry = Some((t, coef));
            }
            row_k.push(entry);
        }
        rows.push(row_k);
        i += 1;
    }

    let s = polys.len();
    let mut matrices = vec![vec![vec![0u64; s]; s]; pv];
    for (i, per_k) in rows.iter().enumerate() {
        for (k, entry) in per_k.iter().enumerate() {
            if let Some((t, c)) = *entry {
                matrices[k][i][t] = c;
            }
        }
    }
    let init = polys.iter().map(|(_, poly)| poly.constant_term()).collect();
    let labels = polys
        .iter()
        .map(|(level, poly)| {
            let text = poly.to_laurent().to_string();
            if r > 1 {
                format!("{text} @{level}")
            } else {
                text
            }
        })
        .collect();
    LinearPScheme::new(p, r, matrices, init)?.with_labels(labels)
}

/// Compares `evaluate(n)` with `ct[P^n Q] mod p^r` for `n <= n_max`.
pub fn verify(sch: &LinearPScheme, spec: &CtSpec, n_max: u64) -> Result<CongruenceReport> {
    let want = ct_residues(spec, n_max, sch.p(), sch.r(), Method::Auto)?;
    let mut report = CongruenceReport::new(ReportKind::SchemeVerify)
        .param("P", spec.p().to_string())
        .param("Q", spec.q().to_string())
        .param("p", sch.p().get())
        .param("r", sch.r())
        .param("states", sch.states() as u64)
        .param("n_max", n_max);
    for (n, &w) in want.iter().enumerate() {
        let got = sch.evaluate(n as u64);
        report.checked += 1;
        if got != w {
            return Ok(report.fail(Counterexample::new(&[("n", n as i64)], w, got)));
        }
    }
    Ok(report)
}

/// Outcome of the single-state test.
#[derive(Clone, Debug)]
pub struct SingleState {
    pub reducible: bool,
    /// The one-state scheme, when the Lucas check passed.
    pub witness: Option<LinearPScheme>,
    pub report: CongruenceReport,
}

/// Finite certification that `A mod p` has a one-state scheme, i.e. that it
/// satisfies the Lucas congruences on `n <= n_max` (default `p^3`).
pub fn is_single_state_reducible(source: Source<'_>, p: Prime, n_max: Option<u64>) -> Result<SingleState> {
    let pv = p.get();
    let n_max = n_max.unwrap_or(pv * pv * pv).max(pv - 1);
    let a = source.residues(n_max, p, 1)?;
    if a[0] != 1 {
        return Err(Error::InvalidInput("A(0) must be 1 mod p".into()));
    }
    let mut report = lucas_check(&a, p, n_max);
    report.kind = ReportKind::SingleStateFiniteRange;
    let witness = if report.passed() {
        Some(from_lucas_table(&a[..pv as usize], p)?)
    } else {
        None
    };
    Ok(SingleState {
        reducible: witness.is_some(),
        witness,
        report,
    })
}

/// The 2-state mod-3 Catalan scheme with states `C(n)` and `C(2n, n)`.
pub fn catalan_mod3_scheme() -> LinearPScheme {
    LinearPScheme::new(
        Prime::new(3).expect("prime"),
        1,
        vec![
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0, 1], vec![0, 2]],
            vec![vec![1, 1], vec![0, 0]],
        ],
        vec![1, 1],
    )
    .expect("valid scheme")
}
