//! Unit rescaling, circuit-to-dimensionless mapping, and resistor-network
//! synthesis.
//!
//! The toolkit works internally in rescaled units (mA, kΩ, kH, mF, V,
//! seconds); SI values appear only at I/O boundaries through [`rescale`].
//! Keeping the currents at the milliampere level makes the circuit equations
//! numerically identical to the dimensionless ones.

use crate::error::{Error, Result};
use crate::model::{ChuaParams, CircuitParams, OpAmpResistor};

/// Default op-amp headroom: saturated output sits this far below the supply.
/// The 4.6 V stage-2 supply then clips at 3 V, which places the inner
/// breakpoint at exactly 1 mA for the reference network.
pub const DEFAULT_V_HEADROOM: f64 = 1.6;

/// Default stage-1 supply (V); stage 1 must stay linear through the middle
/// segments, which the high supply guarantees.
pub const DEFAULT_VCC1: f64 = 18.0;

/// Physical quantity kinds with a fixed rescaling factor each.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Volts, unchanged.
    Voltage,
    /// Amperes to milliamperes (×10³).
    Current,
    /// Ohms to kiloohms (×10⁻³).
    Resistance,
    /// Farads to millifarads (×10³).
    Capacitance,
    /// Henries to kilohenries (×10⁻³).
    Inductance,
    /// Seconds, unchanged.
    Time,
}

impl Quantity {
    /// Rescaled-unit symbol.
    pub fn unit(self) -> &'static str {
        match self {
            Quantity::Voltage => "V",
            Quantity::Current => "mA",
            Quantity::Resistance => "kohm",
            Quantity::Capacitance => "mF",
            Quantity::Inductance => "kH",
            Quantity::Time => "s",
        }
    }

    fn apply(self, si: f64) -> f64 {
        match self {
            Quantity::Voltage | Quantity::Time => si,
            Quantity::Current | Quantity::Capacitance => si * 1000.0,
            Quantity::Resistance | Quantity::Inductance => si / 1000.0,
        }
    }
}

/// A magnitude in rescaled units, remembering its SI origin so the
/// conversion inverts without rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaledValue {
    magnitude: f64,
    quantity: Quantity,
    si: f64,
}

impl RescaledValue {
    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn quantity(&self) -> Quantity {
        self.quantity
    }

    /// The original SI magnitude, exactly.
    pub fn to_si(&self) -> f64 {
        self.si
    }
}

/// Converts an SI magnitude into rescaled units.
pub fn rescale(si_value: f64, quantity: Quantity) -> Result<RescaledValue> {
    if !si_value.is_finite() {
        return Err(Error::NonFinite("si magnitude"));
    }
    Ok(RescaledValue {
        magnitude: quantity.apply(si_value),
        quantity,
        si: si_value,
    })
}

/// Dimensionless parameters implied by a circuit:
/// `alpha = l2/l1`, `beta = l2/(c·r0²)`, and the seconds-per-τ factor
/// `time_scale = l2/r0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedDimensionless {
    pub alpha: f64,
    pub beta: f64,
    pub time_scale: f64,
}

pub fn derive_dimensionless(c: &CircuitParams) -> DerivedDimensionless {
    DerivedDimensionless {
        alpha: c.l2() / c.l1(),
        beta: c.l2() / (c.c() * c.r0() * c.r0()),
        time_scale: c.l2() / c.r0(),
    }
}

/// Full dimensionless equivalent of a circuit, with the five-segment
/// nonlinearity `g = u/r0` taken from the combined resistor.
pub fn dimensionless_params(c: &CircuitParams) -> Result<ChuaParams> {
    let d = derive_dimensionless(c);
    let g = c.combined_resistor()?.values_divided(c.r0())?;
    ChuaParams::with_g(d.alpha, d.beta, g)
}

/// Request for a resistor network realizing given dimensionless segment
/// slopes around a series resistance `r0` (kΩ), with the inner breakpoint at
/// `i_break` (mA).
///
/// The three slope equations leave the network under-determined; the split
/// of the feedback resistance, the divider inputs `r_a1`/`r_a2`, the op-amp
/// headroom and the stage-1 supply are free choices whose defaults reproduce
/// the reference component list.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisRequest {
    /// Middle-segment slope (dimensionless), `m1 < m0 < 0`.
    pub m0: f64,
    /// Inner-segment slope (dimensionless).
    pub m1: f64,
    /// Outermost (bounding) slope, > 0.
    pub s_out: f64,
    /// Series resistance, kΩ.
    pub r0: f64,
    /// Inner breakpoint, mA.
    pub i_break: f64,
    /// Fraction of the total feedback resistance assigned to stage 1.
    pub rf_split: f64,
    /// Stage-1 divider input, kΩ.
    pub r_a1: f64,
    /// Stage-2 divider input, kΩ.
    pub r_a2: f64,
    /// Supply-to-saturation headroom, V.
    pub v_headroom: f64,
    /// Stage-1 supply, V.
    pub vcc1: f64,
}

impl Default for SynthesisRequest {
    fn default() -> Self {
        SynthesisRequest {
            m0: -0.6,
            m1: -1.2,
            s_out: 0.6,
            r0: 5.0,
            i_break: 1.0,
            rf_split: 0.5,
            r_a1: 6.0,
            r_a2: 10.0,
            v_headroom: DEFAULT_V_HEADROOM,
            vcc1: DEFAULT_VCC1,
        }
    }
}

/// Synthesized network: the two stages, their supplies, and the segment
/// report predicted for the result.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub resistor1: OpAmpResistor,
    pub resistor2: OpAmpResistor,
    pub vcc1: f64,
    pub vcc2: f64,
    pub report: NetworkReport,
}

/// Segment slopes (dimensionless, outermost to outermost) and breakpoints
/// (mA) of a combined resistor over its series resistance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkReport {
    /// Five slopes in left-to-right segment order: `(s_out, m0, m1, m0, s_out)`.
    pub slopes: [f64; 5],
    /// Stage-2 inflection current, mA.
    pub inner_breakpoint: f64,
    /// Stage-1 inflection current, mA.
    pub outer_breakpoint: f64,
}

fn network_report(r1: &OpAmpResistor, r2: &OpAmpResistor, r0: f64) -> NetworkReport {
    let k1 = r1.r_b() * r1.r_f() / r1.r_a();
    let k2 = r2.r_b() * r2.r_f() / r2.r_a();
    let outer = (r1.r_f() + r2.r_f()) / r0;
    let mid = (r2.r_f() - k1) / r0;
    let inner = -(k1 + k2) / r0;
    NetworkReport {
        slopes: [outer, mid, inner, mid, outer],
        inner_breakpoint: r2.band_edge(),
        outer_breakpoint: r1.band_edge(),
    }
}

/// Computes the per-segment slopes over `r0` and both inflection currents of
/// a circuit's combined resistor from the component values alone.
pub fn verify_network(c: &CircuitParams) -> NetworkReport {
    network_report(c.resistor1(), c.resistor2(), c.r0())
}

/// Solves the network for a request:
/// `r_f1 + r_f2 = s_out·r0`,
/// `r_f2 − r_b1·r_f1/r_a1 = m0·r0`,
/// `r_b1·r_f1/r_a1 + r_b2·r_f2/r_a2 = −m1·r0`,
/// then sizes the stage-2 saturation so its band edge lands on `i_break` and
/// reports the supplies.
pub fn synthesize_network(req: &SynthesisRequest) -> Result<SynthesisResult> {
    let infeasible = |msg: String| Err(Error::Infeasible(msg));
    if !(req.m1 < req.m0 && req.m0 < 0.0 && req.s_out > 0.0) {
        return infeasible(format!(
            "slopes must satisfy m1 < m0 < 0 < s_out (got m1={}, m0={}, s_out={})",
            req.m1, req.m0, req.s_out
        ));
    }
    if !(req.r0 > 0.0 && req.i_break > 0.0 && req.r_a1 > 0.0 && req.r_a2 > 0.0) {
        return infeasible("r0, i_break, r_a1 and r_a2 must be > 0".into());
    }
    if !(req.rf_split > 0.0 && req.rf_split < 1.0) {
        return infeasible(format!("rf_split must lie in (0, 1), got {}", req.rf_split));
    }
    if !(req.v_headroom >= 0.0 && req.vcc1 > req.v_headroom) {
        return infeasible("vcc1 must exceed the headroom".into());
    }

    let rf_total = req.s_out * req.r0;
    let r_f1 = req.rf_split * rf_total;
    let r_f2 = rf_total - r_f1;
    let r_b1 = req.r_a1 * (r_f2 - req.m0 * req.r0) / r_f1;
    let r_b2 = req.r_a2 * ((req.m0 - req.m1) * req.r0 - r_f2) / r_f2;
    for (name, v) in [("r_f1", r_f1), ("r_f2", r_f2), ("r_b1", r_b1), ("r_b2", r_b2)] {
        if !(v.is_finite() && v > 0.0) {
            return infeasible(format!("solved {name} = {v} kohm is not positive"));
        }
    }

    let u_sat2 = req.i_break * r_f2 * (req.r_a2 + r_b2) / req.r_a2;
    let vcc2 = u_sat2 + req.v_headroom;
    let u_sat1 = req.vcc1 - req.v_headroom;
    let resistor1 = OpAmpResistor::new(r_f1, req.r_a1, r_b1, u_sat1)?;
    let resistor2 = OpAmpResistor::new(r_f2, req.r_a2, r_b2, u_sat2)?;
    if resistor2.band_edge() >= resistor1.band_edge() {
        return infeasible(format!(
            "stage 1 saturates before stage 2 (band edges {} >= {} mA); raise vcc1",
            resistor2.band_edge(),
            resistor1.band_edge()
        ));
    }
    let report = network_report(&resistor1, &resistor2, req.r0);
    Ok(SynthesisResult {
        resistor1,
        resistor2,
        vcc1: req.vcc1,
        vcc2,
        report,
    })
}

/// Named component presets, both using the reference resistor network.
///
/// `multisim`: l1 = 5·10⁻⁵ kH, l2 = 4·10⁻⁴ kH, c = 1.28·10⁻⁶ mF, r0 = 5 kΩ.
/// `experimental`: the bench-scaled reactive values l1 = 1.2 mH,
/// l2 = 10 mH, c = 86 pF with the same r0.
pub fn preset(name: &str) -> Result<CircuitParams> {
    // Saturations are the supplies (18 V and 4.6 V) minus the default
    // headroom, stored directly so the segment arithmetic stays exact.
    let resistor1 = OpAmpResistor::new(1.5, 6.0, 18.0, 16.4)?;
    let resistor2 = OpAmpResistor::new(1.5, 10.0, 10.0, 3.0)?;
    match name {
        "multisim" => CircuitParams::new(5e-5, 4e-4, 1.28e-6, 5.0, resistor1, resistor2),
        "experimental" => CircuitParams::new(1.2e-6, 1e-5, 8.6e-8, 5.0, resistor1, resistor2),
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rescale_reference_values() {
        assert_eq!(rescale(5000.0, Quantity::Resistance).unwrap().magnitude(), 5.0);
        assert_eq!(rescale(0.001, Quantity::Current).unwrap().magnitude(), 1.0);
        assert_eq!(rescale(0.4, Quantity::Inductance).unwrap().magnitude(), 4e-4);
        assert_eq!(rescale(1.28e-9, Quantity::Capacitance).unwrap().magnitude(), 1.28e-6);
        assert_eq!(rescale(3.3, Quantity::Voltage).unwrap().magnitude(), 3.3);
        assert_eq!(rescale(2.0, Quantity::Time).unwrap().magnitude(), 2.0);
        assert!(rescale(f64::NAN, Quantity::Voltage).is_err());
    }

    #[test]
    fn derive_reference_circuit() {
        let d = derive_dimensionless(&preset("multisim").unwrap());
        assert_eq!(d.alpha, 8.0);
        assert!((d.beta - 12.5).abs() / 12.5 < 1e-12);
        assert_eq!(d.time_scale, 8e-5);
    }

    #[test]
    fn derive_is_one_when_inductances_match() {
        let c = preset("multisim").unwrap();
        let eq = CircuitParams::new(
            c.l2(),
            c.l2(),
            c.c(),
            c.r0(),
            c.resistor1().clone(),
            c.resistor2().clone(),
        )
        .unwrap();
        assert_eq!(derive_dimensionless(&eq).alpha, 1.0);
    }

    #[test]
    fn derive_experimental_circuit() {
        let d = derive_dimensionless(&preset("experimental").unwrap());
        assert!((d.alpha - 8.3333333333).abs() < 1e-3);
        assert!((d.beta - 4.6511627907).abs() < 1e-3);
    }

    #[test]
    fn synthesis_reproduces_reference_network() {
        let out = synthesize_network(&SynthesisRequest::default()).unwrap();
        assert_eq!(out.resistor1.r_f(), 1.5);
        assert_eq!(out.resistor2.r_f(), 1.5);
        assert_eq!(out.resistor1.r_a(), 6.0);
        assert_eq!(out.resistor1.r_b(), 18.0);
        assert_eq!(out.resistor2.r_a(), 10.0);
        assert_eq!(out.resistor2.r_b(), 10.0);
        assert_eq!(out.resistor2.u_sat(), 3.0);
        assert_eq!(out.vcc2, 4.6);
        assert_eq!(out.vcc1, 18.0);
        assert_eq!(out.report.inner_breakpoint, 1.0);
    }

    #[test]
    fn synthesis_rejects_equal_slopes() {
        let req = SynthesisRequest {
            m0: -1.2,
            m1: -1.2,
            ..SynthesisRequest::default()
        };
        assert!(matches!(synthesize_network(&req), Err(Error::Infeasible(_))));
        // even bypassing the ordering check, the solved r_b2 would be negative
        let req = SynthesisRequest {
            m0: -1.2,
            m1: -1.2000000001,
            ..SynthesisRequest::default()
        };
        assert!(matches!(synthesize_network(&req), Err(Error::Infeasible(_))));
    }

    #[test]
    fn synthesis_scale_invariance() {
        let base = synthesize_network(&SynthesisRequest::default()).unwrap();
        let scaled = synthesize_network(&SynthesisRequest {
            r0: 10.0,
            r_a1: 12.0,
            r_a2: 20.0,
            ..SynthesisRequest::default()
        })
        .unwrap();
        assert_eq!(scaled.resistor1.r_f(), 2.0 * base.resistor1.r_f());
        assert_eq!(scaled.resistor1.r_b(), 2.0 * base.resistor1.r_b());
        assert_eq!(scaled.resistor2.r_b(), 2.0 * base.resistor2.r_b());
        for (a, b) in scaled.report.slopes.iter().zip(base.report.slopes.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn verify_reference_network() {
        let report = verify_network(&preset("multisim").unwrap());
        assert_eq!(report.slopes, [0.6, -0.6, -1.2, -0.6, 0.6]);
        assert_eq!(report.inner_breakpoint, 1.0);
        assert!((report.outer_breakpoint - 98.4 / 36.0).abs() < 1e-12);
    }

    #[test]
    fn verify_matches_combined_curve_slopes() {
        // Table-style algebra and the summed stage curves are two routes to
        // the same segments.
        let c = preset("multisim").unwrap();
        let report = verify_network(&c);
        let u = c.combined_resistor().unwrap();
        assert!((u.slopes()[0] / c.r0() - report.slopes[2]).abs() < 1e-15);
        assert!((u.slopes()[1] / c.r0() - report.slopes[1]).abs() < 1e-15);
        assert!((u.slopes()[2] / c.r0() - report.slopes[0]).abs() < 1e-15);
        assert_eq!(u.breakpoints(), &[report.inner_breakpoint, report.outer_breakpoint]);
    }

    #[test]
    fn preset_lookup() {
        assert!(preset("multisim").is_ok());
        let c = preset("multisim").unwrap();
        assert_eq!((c.l1(), c.l2(), c.c(), c.r0()), (5e-5, 4e-4, 1.28e-6, 5.0));
        let e = preset("experimental").unwrap();
        assert_eq!((e.l1(), e.l2(), e.c(), e.r0()), (1.2e-6, 1e-5, 8.6e-8, 5.0));
        assert!(matches!(preset("bogus"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn dimensionless_params_reference() {
        let p = dimensionless_params(&preset("multisim").unwrap()).unwrap();
        assert_eq!(p.alpha(), 8.0);
        assert_eq!(p.g().slopes(), &[-1.2, -0.6, 0.6]);
    }

    proptest! {
        #[test]
        fn rescale_roundtrip_is_exact(si in -1e12_f64..1e12, pick in 0_usize..6) {
            let q = [
                Quantity::Voltage,
                Quantity::Current,
                Quantity::Resistance,
                Quantity::Capacitance,
                Quantity::Inductance,
                Quantity::Time,
            ][pick];
            let r = rescale(si, q).unwrap();
            prop_assert_eq!(r.to_si(), si);
        }

        #[test]
        fn synthesis_roundtrip(
            m0 in -0.9_f64..-0.2,
            drop in 0.05_f64..1.0,
            s_out in 0.2_f64..1.0,
            r0 in 1.0_f64..20.0,
            i_break in 0.1_f64..4.0,
            split in 0.2_f64..0.8,
        ) {
            let req = SynthesisRequest {
                m0,
                m1: m0 - drop,
                s_out,
                r0,
                i_break,
                rf_split: split,
                vcc1: 400.0, // generous so stage 1 always saturates last
                ..SynthesisRequest::default()
            };
            if let Ok(out) = synthesize_network(&req) {
                let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-12);
                prop_assert!(rel(out.report.slopes[2], req.m1) < 1e-9);
                prop_assert!(rel(out.report.slopes[1], req.m0) < 1e-9);
                prop_assert!(rel(out.report.slopes[0], req.s_out) < 1e-9);
                prop_assert!(rel(out.report.inner_breakpoint, req.i_break) < 1e-9);
            }
        }
    }
}
