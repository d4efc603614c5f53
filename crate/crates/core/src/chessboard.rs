//! The chessboard state family.
//!
//! A state is `ρ = N Σ_j |V_j⟩⟨V_j|` over four unnormalized, mutually
//! orthogonal vectors (components in the order `00, 10, 20; 01, …`):
//!
//! ```text
//! V1 = (m,  0,  s;  0,  n,  0;  0, 0, 0)
//! V2 = (0,  a,  0;  b,  0,  c;  0, 0, 0)
//! V3 = (n*, 0,  0;  0, -m*, 0;  t, 0, 0)
//! V4 = (0,  b*, 0; -a*, 0,  0;  0, d, 0)
//! ```
//!
//! with `N = 1 / Σ_j ⟨V_j|V_j⟩`. V1 and V3 live on the odd (1-based) linear
//! indices and V2, V4 on the even ones, which gives the chessboard zero
//! pattern; index 9 is never populated.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, local_operator, phase_diag, MatrixC};
use crate::tolerance;
use crate::{C64, DIM, QUTRIT};

/// The eight parameters with arbitrary complex values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RawParams {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub m: C64,
    pub n: C64,
    pub s: C64,
    pub t: C64,
}

/// Parameters in the canonical gauge: six nonnegative reals, `s` and `t`
/// carrying the remaining phases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub m: f64,
    pub n: f64,
    pub s: C64,
    pub t: C64,
}

/// Either parameter form; the serialized shapes are distinguishable
/// (`a` is a number for canonical, a `[re, im]` pair for raw).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Params {
    Canonical(CanonicalParams),
    Raw(RawParams),
}

/// Anything that can be read as the eight complex parameters.
pub trait ParamSet {
    fn raw(&self) -> RawParams;
}

impl ParamSet for RawParams {
    fn raw(&self) -> RawParams {
        *self
    }
}

impl ParamSet for CanonicalParams {
    fn raw(&self) -> RawParams {
        let r = |x: f64| C64::new(x, 0.0);
        RawParams {
            a: r(self.a),
            b: r(self.b),
            c: r(self.c),
            d: r(self.d),
            m: r(self.m),
            n: r(self.n),
            s: self.s,
            t: self.t,
        }
    }
}

impl ParamSet for Params {
    fn raw(&self) -> RawParams {
        match self {
            Params::Canonical(p) => p.raw(),
            Params::Raw(p) => *p,
        }
    }
}

impl From<CanonicalParams> for Params {
    fn from(p: CanonicalParams) -> Self {
        Params::Canonical(p)
    }
}

impl From<RawParams> for Params {
    fn from(p: RawParams) -> Self {
        Params::Raw(p)
    }
}

impl RawParams {
    /// Order `a, b, c, d, m, n, s, t`.
    pub fn from_array(v: [C64; 8]) -> Self {
        let [a, b, c, d, m, n, s, t] = v;
        Self { a, b, c, d, m, n, s, t }
    }

    pub fn to_array(&self) -> [C64; 8] {
        [self.a, self.b, self.c, self.d, self.m, self.n, self.s, self.t]
    }

    pub fn all_finite(&self) -> bool {
        self.to_array().iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Multiplies every parameter by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self::from_array(self.to_array().map(|z| z * k))
    }
}

impl CanonicalParams {
    /// Validating constructor: the six real parameters must be finite and
    /// nonnegative, `s` and `t` finite.
    #[allow(clippy::too_many_arguments)]
    pub fn new(a: f64, b: f64, c: f64, d: f64, m: f64, n: f64, s: C64, t: C64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d), ("m", m), ("n", n)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} = {v} must be finite and nonnegative"
                )));
            }
        }
        for (name, z) in [("s", s), ("t", t)] {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} is not finite")));
            }
        }
        Ok(Self { a, b, c, d, m, n, s, t })
    }

    /// All eight parameters real.
    #[allow(clippy::too_many_arguments)]
    pub fn real(a: f64, b: f64, c: f64, d: f64, m: f64, n: f64, s: f64, t: f64) -> Result<Self> {
        Self::new(a, b, c, d, m, n, C64::new(s, 0.0), C64::new(t, 0.0))
    }

    pub fn reals(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.m, self.n]
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            d: self.d * k,
            m: self.m * k,
            n: self.n * k,
            s: self.s * k,
            t: self.t * k,
        }
    }
}

/// The four vectors `V1..V4` as 9-component arrays.
pub fn build_vectors<P: ParamSet + ?Sized>(p: &P) -> [Vec<C64>; 4] {
    let RawParams { a, b, c, d, m, n, s, t } = p.raw();
    let z = C64::new(0.0, 0.0);
    [
        vec![m, z, s, z, n, z, z, z, z],
        vec![z, a, z, b, z, c, z, z, z],
        vec![n.conj(), z, z, z, -m.conj(), z, t, z, z],
        vec![z, b.conj(), z, -a.conj(), z, z, z, d, z],
    ]
}

/// A normalized member of the family.
#[derive(Debug, Clone)]
pub struct StateMatrix {
    pub rho: MatrixC,
    /// `N = 1 / Σ ⟨V_j|V_j⟩`
    pub norm_constant: f64,
    pub params: Params,
}

impl StateMatrix {
    pub fn vectors(&self) -> [Vec<C64>; 4] {
        build_vectors(&self.params)
    }

    /// `N·⟨V_j|V_j⟩` for `j = 1..4`: the nonzero eigenvalues of `ρ`.
    pub fn formula_eigenvalues(&self) -> [f64; 4] {
        self.vectors()
            .map(|v| self.norm_constant * linalg::norm(&v).powi(2))
    }

    /// `σ`, the partial transpose on the first qutrit.
    pub fn partial_transpose(&self) -> MatrixC {
        linalg::partial_transpose_first(&self.rho, QUTRIT, QUTRIT)
            .expect("state matrices are 9x9")
    }
}

/// `ρ = N Σ |V_j⟩⟨V_j|`. Entries outside the chessboard pattern are never
/// written, so they are exact zeros.
pub fn build_rho<P: ParamSet + Into<Params> + Copy>(p: P) -> Result<StateMatrix> {
    let raw = p.raw();
    if !raw.all_finite() {
        return Err(Error::InvalidParams("parameters must be finite".into()));
    }
    let vs = build_vectors(&raw);
    let total: f64 = vs.iter().map(|v| linalg::norm(v).powi(2)).sum();
    if total == 0.0 {
        return Err(Error::InvalidParams(
            "all vectors vanish; normalization undefined".into(),
        ));
    }
    let norm_constant = 1.0 / total;
    let mut rho = MatrixC::zeros(DIM, DIM);
    for v in &vs {
        for i in 0..DIM {
            if v[i] == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..DIM {
                if v[j] == C64::new(0.0, 0.0) {
                    continue;
                }
                rho[(i, j)] += v[i] * v[j].conj() * norm_constant;
            }
        }
    }
    Ok(StateMatrix {
        rho,
        norm_constant,
        params: p.into(),
    })
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::InvalidParams(format!("{name} = {v} must be positive")));
    }
    Ok(())
}

fn require_nonnegative(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(Error::InvalidParams(format!(
            "{name} = {v} must be nonnegative"
        )));
    }
    Ok(())
}

/// The sub-family whose partial transpose equals the state itself:
/// `s = ac/n`, `t = ad/m`, both real.
pub fn family_a(a: f64, b: f64, c: f64, d: f64, m: f64, n: f64) -> Result<CanonicalParams> {
    family_b(a, b, c, d, m, n, 0.0, 0.0)
}

/// `|s| = ac/n`, `|t| = ad/m` with free phases `phi_s`, `phi_t`. Zero
/// phases give exactly [`family_a`].
#[allow(clippy::too_many_arguments)]
pub fn family_b(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    m: f64,
    n: f64,
    phi_s: f64,
    phi_t: f64,
) -> Result<CanonicalParams> {
    for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        require_nonnegative(name, v)?;
    }
    require_positive("m", m)?;
    require_positive("n", n)?;
    if !(phi_s.is_finite() && phi_t.is_finite()) {
        return Err(Error::InvalidParams("phases must be finite".into()));
    }
    let s_abs = a * c / n;
    let t_abs = a * d / m;
    let polar = |r: f64, phi: f64| {
        if phi == 0.0 {
            C64::new(r, 0.0)
        } else {
            C64::from_polar(r, phi)
        }
    };
    CanonicalParams::new(a, b, c, d, m, n, polar(s_abs, phi_s), polar(t_abs, phi_t))
}

/// Maps `x` into `(−π, π]`.
pub fn wrap_phase(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Local phase changes of the two qutrit bases plus an overall phase per
/// vector.
///
/// Under the transform the state becomes `(U_A⊗U_B) ρ (U_A⊗U_B)†` with
/// `U_A = diag(e^{iα_k})`, `U_B = diag(e^{iβ_λ})`, and each vector becomes
/// `e^{iγ_j} (U_A⊗U_B) V_j`. Keeping the conjugated entries of `V3` and `V4`
/// in form ties `γ3 = −(α0+α1+β0+β1) − γ1` and `γ4 = −(α0+α1+β0+β1) − γ2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaugeTransform {
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
    pub gamma: [f64; 4],
}

impl GaugeTransform {
    pub fn identity() -> Self {
        Self {
            alpha: [0.0; 3],
            beta: [0.0; 3],
            gamma: [0.0; 4],
        }
    }

    /// Builds a transform from the seven free phases, deriving `γ3`, `γ4`.
    pub fn from_free(alpha: [f64; 3], beta: [f64; 3], gamma12: [f64; 2]) -> Self {
        let base = alpha[0] + alpha[1] + beta[0] + beta[1];
        let gamma = [
            gamma12[0],
            gamma12[1],
            -base - gamma12[0],
            -base - gamma12[1],
        ]
        .map(wrap_phase);
        Self {
            alpha: alpha.map(wrap_phase),
            beta: beta.map(wrap_phase),
            gamma,
        }
    }

    /// Whether `γ3`, `γ4` satisfy the constraints (mod 2π).
    pub fn is_consistent(&self) -> bool {
        let base = self.alpha[0] + self.alpha[1] + self.beta[0] + self.beta[1];
        let close = |x: f64| wrap_phase(x).abs() < 1e-12;
        close(self.gamma[2] + base + self.gamma[0]) && close(self.gamma[3] + base + self.gamma[1])
    }

    pub fn u_a(&self) -> MatrixC {
        phase_diag(&self.alpha)
    }

    pub fn u_b(&self) -> MatrixC {
        phase_diag(&self.beta)
    }

    /// `U_A ⊗ U_B` in the crate's index convention.
    pub fn local_unitary(&self) -> MatrixC {
        local_operator(&self.u_a(), &self.u_b())
    }

    /// Parameter phase shifts in the order `a, b, c, d, m, n, s, t`.
    pub fn shifts(&self) -> [f64; 8] {
        let [a0, a1, a2] = self.alpha;
        let [b0, b1, b2] = self.beta;
        let [g1, g2, g3, g4] = self.gamma;
        [
            a1 + b0 + g2, // a
            a0 + b1 + g2, // b
            a2 + b1 + g2, // c
            a1 + b2 + g4, // d
            a0 + b0 + g1, // m
            a1 + b1 + g1, // n
            a2 + b0 + g1, // s
            a0 + b2 + g3, // t
        ]
    }

    /// The parameters describing the transformed state.
    pub fn apply(&self, p: &RawParams) -> RawParams {
        let shifts = self.shifts();
        let mut out = p.to_array();
        for (z, sh) in out.iter_mut().zip(shifts) {
            *z *= C64::from_polar(1.0, sh);
        }
        RawParams::from_array(out)
    }
}

/// Brings raw parameters into the canonical gauge.
///
/// The phases of `a, b, c, d, m, n` are removed with `α0 = β0 = 0` and the
/// remaining six phases solved in the order `γ1, α1, β1, γ2, α2, β2`; the
/// two invariant combinations end up in the phases of `s` and `t`.
pub fn canonicalize(raw: &RawParams) -> Result<(CanonicalParams, GaugeTransform)> {
    if !raw.all_finite() {
        return Err(Error::InvalidParams("parameters must be finite".into()));
    }
    let mags = [
        ("a", raw.a),
        ("b", raw.b),
        ("c", raw.c),
        ("d", raw.d),
        ("m", raw.m),
        ("n", raw.n),
    ];
    for (name, z) in mags {
        if z.norm() <= tolerance::GENERIC {
            return Err(Error::Degenerate(format!(
                "|{name}| = {:e}; canonical gauge is not unique",
                z.norm()
            )));
        }
    }
    let arg = |z: C64| z.arg();
    let (th_a, th_b, th_c, th_d) = (arg(raw.a), arg(raw.b), arg(raw.c), arg(raw.d));
    let (th_m, th_n) = (arg(raw.m), arg(raw.n));

    let g1 = -th_m;
    let a1 = 0.5 * (th_m - th_n - th_a + th_b);
    let b1 = 0.5 * (th_m - th_n + th_a - th_b);
    let g2 = -th_a - a1;
    let a2 = th_b - th_c;
    let b2 = -th_b - th_d;

    let gauge = GaugeTransform::from_free([0.0, a1, a2], [0.0, b1, b2], [g1, g2]);
    let moved = gauge.apply(raw);
    let canon = CanonicalParams {
        a: raw.a.norm(),
        b: raw.b.norm(),
        c: raw.c.norm(),
        d: raw.d.norm(),
        m: raw.m.norm(),
        n: raw.n.norm(),
        s: moved.s,
        t: moved.t,
    };
    Ok((canon, gauge))
}

/// The gauge-invariant combinations `(cm/(bs), b̄t/(n̄d))`.
pub fn invariants<P: ParamSet + ?Sized>(p: &P) -> Result<(C64, C64)> {
    let RawParams { b, c, d, m, n, s, t, .. } = p.raw();
    for (name, z) in [("b", b), ("s", s), ("n", n), ("d", d)] {
        if z.norm() <= tolerance::GENERIC {
            return Err(Error::InvalidParams(format!(
                "{name} vanishes; invariants undefined"
            )));
        }
    }
    Ok((c * m / (b * s), b.conj() * t / (n.conj() * d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigen, inner, norm};

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn ones() -> CanonicalParams {
        CanonicalParams::real(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap()
    }

    fn sample_raw() -> RawParams {
        RawParams::from_array([
            C64::new(0.3, -1.2),
            C64::new(-2.0, 0.4),
            C64::new(0.9, 0.9),
            C64::new(1.7, -0.2),
            C64::new(-0.5, -0.8),
            C64::new(0.2, 1.4),
            C64::new(-1.1, 0.6),
            C64::new(0.7, 2.2),
        ])
    }

    #[test]
    fn vectors_by_direct_substitution() {
        let v = build_vectors(&ones());
        assert_eq!(v[0], [1., 0., 1., 0., 1., 0., 0., 0., 0.].map(r).to_vec());

        let p = CanonicalParams::real(1.0, 2.0, 3.0, 1.0, 1.0, 1.0, 3.0, 1.0).unwrap();
        let v = build_vectors(&p);
        assert_eq!(v[1], [0., 1., 0., 2., 0., 3., 0., 0., 0.].map(r).to_vec());
        assert_eq!(v[3], [0., 2., 0., -1., 0., 0., 0., 1., 0.].map(r).to_vec());
    }

    #[test]
    fn vectors_orthogonal_for_complex_params() {
        let v = build_vectors(&sample_raw());
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let ip = inner(&v[i], &v[j]).norm();
                    assert!(ip <= 1e-12 * norm(&v[i]) * norm(&v[j]), "({i},{j}) overlap {ip}");
                }
            }
        }
    }

    #[test]
    fn family_a_closed_form() {
        let p = family_a(1.0, 2.0, 3.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.s, r(3.0));
        assert_eq!(p.t, r(1.0));
        assert_eq!(family_a(1.0, 1.0, 1.0, 1.0, 1.0, 1.0).unwrap(), ones());
        assert!(family_a(1.0, 2.0, 3.0, 1.0, 0.0, 1.0).is_err());
        assert!(family_a(1.0, 2.0, 3.0, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn family_b_moduli_and_phases() {
        assert_eq!(
            family_b(1.0, 2.0, 3.0, 1.0, 1.0, 1.0, 0.0, 0.0).unwrap(),
            family_a(1.0, 2.0, 3.0, 1.0, 1.0, 1.0).unwrap()
        );
        let p = family_b(1.0, 2.0, 3.0, 1.0, 1.0, 1.0, PI / 2.0, 0.7).unwrap();
        assert!((p.s.norm() - 3.0).abs() < 1e-15);
        assert!((p.t.norm() - 1.0).abs() < 1e-15);
        assert!((p.s.arg() - PI / 2.0).abs() < 1e-15);
        assert!((p.t.arg() - 0.7).abs() < 1e-15);
        assert!(family_b(1.0, 2.0, 3.0, 1.0, 0.0, 1.0, 0.1, 0.2).is_err());
    }

    #[test]
    fn rho_all_ones_has_four_equal_eigenvalues() {
        let st = build_rho(ones()).unwrap();
        assert!((st.norm_constant - 1.0 / 12.0).abs() < 1e-16);
        let eig = hermitian_eigen(&st.rho).unwrap();
        for l in &eig.eigenvalues[..4] {
            assert!((l - 0.25).abs() < 1e-12);
        }
        for l in &eig.eigenvalues[4..] {
            assert!(l.abs() < 1e-12);
        }
    }

    #[test]
    fn rho_family_a_spectrum() {
        let st = build_rho(family_a(1.0, 2.0, 3.0, 1.0, 1.0, 1.0).unwrap()).unwrap();
        let eig = hermitian_eigen(&st.rho).unwrap();
        let want = [14.0, 11.0, 6.0, 3.0].map(|x| x / 34.0);
        for (l, w) in eig.eigenvalues.iter().zip(want) {
            assert!((l - w).abs() < 1e-12, "{l} vs {w}");
        }
        let mut formula = st.formula_eigenvalues().to_vec();
        formula.sort_by(|x, y| y.total_cmp(x));
        for (f, w) in formula.iter().zip(want) {
            assert!((f - w).abs() < 1e-15);
        }
    }

    #[test]
    fn rho_structure() {
        let st = build_rho(sample_raw()).unwrap();
        assert!((st.rho.trace() - r(1.0)).norm() < 1e-12);
        assert!(st.rho.hermitian_deviation() < 1e-12);
        for i in 0..DIM {
            assert_eq!(st.rho[(8, i)], r(0.0));
            assert_eq!(st.rho[(i, 8)], r(0.0));
            for j in 0..DIM {
                if (i + 1) % 2 != (j + 1) % 2 {
                    assert_eq!(st.rho[(i, j)], r(0.0), "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn rho_rejects_all_zero() {
        let z = RawParams::from_array([r(0.0); 8]);
        assert!(build_rho(z).is_err());
    }

    #[test]
    fn invariants_by_hand() {
        let p = CanonicalParams::real(1.0, 2.0, 3.0, 1.0, 1.0, 1.0, 3.0, 1.0).unwrap();
        let (i1, i2) = invariants(&p).unwrap();
        assert!((i1 - r(0.5)).norm() < 1e-15);
        assert!((i2 - r(2.0)).norm() < 1e-15);
        let (i1, i2) = invariants(&ones()).unwrap();
        assert_eq!((i1, i2), (r(1.0), r(1.0)));
        let mut zero_b = ones();
        zero_b.b = 0.0;
        assert!(invariants(&zero_b).is_err());
    }

    #[test]
    fn canonical_input_gets_identity_transform() {
        let p = CanonicalParams::new(1.0, 2.0, 3.0, 1.5, 0.7, 1.1, C64::new(0.3, 2.0), C64::new(-1.0, 0.5))
            .unwrap();
        let (canon, gauge) = canonicalize(&p.raw()).unwrap();
        assert_eq!(gauge, GaugeTransform::identity());
        assert_eq!(canon, p);
    }

    #[test]
    fn canonicalize_rephased_first_vector() {
        // V1 → e^{iθ}V1 and V3 → e^{-iθ}V3 leave ρ unchanged
        let p = family_b(1.0, 2.0, 3.0, 1.0, 1.0, 1.0, 0.4, -1.3).unwrap();
        let theta = 0.9;
        let ph = C64::from_polar(1.0, theta);
        let mut raw = p.raw();
        raw.m *= ph;
        raw.n *= ph;
        raw.s *= ph;
        raw.t *= ph.conj();
        let before = build_rho(p).unwrap().rho;
        let after = build_rho(raw).unwrap().rho;
        assert!((&before - &after).frobenius_norm() < 1e-15);

        let (canon, gauge) = canonicalize(&raw).unwrap();
        assert!((gauge.gamma[0] + theta).abs() < 1e-12);
        for (x, y) in canon.raw().to_array().iter().zip(p.raw().to_array()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn canonicalize_preserves_invariants_and_state() {
        let raw = sample_raw();
        let (canon, gauge) = canonicalize(&raw).unwrap();
        assert!(gauge.is_consistent());
        for (x, y) in raw.to_array().iter().zip(canon.raw().to_array()) {
            assert!((x.norm() - y.norm()).abs() < 1e-12);
        }
        let (r1, r2) = invariants(&raw).unwrap();
        let (c1, c2) = invariants(&canon).unwrap();
        assert!((r1 - c1).norm() <= 1e-10 * r1.norm());
        assert!((r2 - c2).norm() <= 1e-10 * r2.norm());

        let u = gauge.local_unitary();
        let moved = &(&u * &build_rho(raw).unwrap().rho) * &u.adjoint();
        let rebuilt = build_rho(canon).unwrap().rho;
        assert!((&moved - &rebuilt).frobenius_norm() < 1e-12);
    }

    #[test]
    fn gauge_acts_on_vectors() {
        let raw = sample_raw();
        let g = GaugeTransform::from_free([0.3, -1.0, 2.0], [0.5, 0.1, -2.5], [1.2, -0.4]);
        let u = g.local_unitary();
        let before = build_vectors(&raw);
        let after = build_vectors(&g.apply(&raw));
        for j in 0..4 {
            let want: Vec<C64> = u
                .mul_vec(&before[j])
                .iter()
                .map(|z| z * C64::from_polar(1.0, g.gamma[j]))
                .collect();
            for (x, y) in after[j].iter().zip(&want) {
                assert!((x - y).norm() < 1e-12, "vector {j}");
            }
        }
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let (once, _) = canonicalize(&sample_raw()).unwrap();
        let (twice, gauge) = canonicalize(&once.raw()).unwrap();
        assert_eq!(once, twice);
        assert_eq!(gauge, GaugeTransform::identity());
    }

    #[test]
    fn canonicalize_lifts_negative_reals() {
        assert!(CanonicalParams::real(-1.0, 2.0, 3.0, 1.0, 1.0, 1.0, 3.0, 1.0).is_err());
        let raw = RawParams::from_array([-1.0, 2.0, -3.0, 1.0, 1.0, -1.0, 3.0, 1.0].map(r));
        let (canon, gauge) = canonicalize(&raw).unwrap();
        assert_eq!(canon.reals(), [1.0, 2.0, 3.0, 1.0, 1.0, 1.0]);
        let u = gauge.local_unitary();
        let moved = &(&u * &build_rho(raw).unwrap().rho) * &u.adjoint();
        assert!((&moved - &build_rho(canon).unwrap().rho).frobenius_norm() < 1e-12);
    }

    #[test]
    fn canonicalize_rejects_degenerate() {
        let mut raw = sample_raw();
        raw.c = r(0.0);
        assert!(matches!(canonicalize(&raw), Err(Error::Degenerate(_))));
    }

    #[test]
    fn common_scaling_leaves_rho_unchanged() {
        let raw = sample_raw();
        let a = build_rho(raw).unwrap().rho;
        let b = build_rho(raw.scaled(7.5)).unwrap().rho;
        assert!((&a - &b).frobenius_norm() < 1e-12);
    }

    #[test]
    fn wrap_phase_range() {
        assert_eq!(wrap_phase(PI), PI);
        assert!((wrap_phase(-PI) - PI).abs() < 1e-15);
        assert!((wrap_phase(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        assert_eq!(wrap_phase(0.0), 0.0);
    }
}
