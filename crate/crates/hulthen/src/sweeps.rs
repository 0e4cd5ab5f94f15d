//! Parameter sweeps over energy or barrier strength, cross-engine
//! comparison, and transmission-resonance detection with golden-section
//! refinement and FWHM measurement.

use rayon::prelude::*;

use crate::analytic;
use crate::analytic::ScatteringCoefficients;
use crate::error::{Error, Result};
use crate::oracle::{self, IntegrationConfig};
use crate::potential::PotentialParams;

/// Which quantity the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Energy,
    Strength,
}

/// Which computation backs each sweep point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Analytic,
    Oracle,
    Both,
}

/// A uniformly gridded sweep over the half-open interval (lo, hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    /// (lo, hi], sampled at lo + (hi−lo)(i+1)/points
    pub range: (f64, f64),
    pub points: usize,
    /// Fixed barrier parameters; for strength sweeps the stored strength is
    /// replaced point by point.
    pub params: PotentialParams,
    /// Fixed energy, required when sweeping strength.
    pub fixed_energy: Option<f64>,
    pub engine: Engine,
}

/// Classification threshold: a refined local maximum counts as a
/// transmission resonance when T reaches this close to unity.
pub const RESONANCE_THRESHOLD: f64 = 0.99;

/// Tolerance, in the sweep variable, of peak refinement and FWHM bisection.
pub const REFINE_TOL: f64 = 1e-8;

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.range;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(Error::InvalidSweep {
                reason: "range must satisfy lo < hi with finite bounds",
            });
        }
        if self.points < 2 {
            return Err(Error::InvalidSweep {
                reason: "sweep needs at least 2 points",
            });
        }
        match self.variable {
            SweepVariable::Energy => {
                // half-open grid: every sampled energy exceeds lo
                if lo < self.params.m() {
                    return Err(Error::InvalidSweep {
                        reason: "energy sweeps must start at or above the mass",
                    });
                }
            }
            SweepVariable::Strength => {
                if lo < 0.0 {
                    return Err(Error::InvalidSweep {
                        reason: "strength sweeps must start at or above zero",
                    });
                }
                let energy = self.fixed_energy.ok_or(Error::InvalidSweep {
                    reason: "strength sweeps need a fixed energy",
                })?;
                if energy <= self.params.m() {
                    return Err(Error::InvalidSweep {
                        reason: "fixed energy must exceed the mass",
                    });
                }
            }
        }
        Ok(())
    }

    /// Grid points of the half-open interval (lo, hi].
    pub fn grid(&self) -> Vec<f64> {
        let (lo, hi) = self.range;
        (0..self.points)
            .map(|i| lo + (hi - lo) * (i + 1) as f64 / self.points as f64)
            .collect()
    }

    fn point_params(&self, value: f64) -> Result<PotentialParams> {
        match self.variable {
            SweepVariable::Energy => Ok(self.params),
            SweepVariable::Strength => PotentialParams::new(
                value,
                self.params.a(),
                self.params.q(),
                self.params.m(),
            ),
        }
    }

    fn point_energy(&self, value: f64) -> f64 {
        match self.variable {
            SweepVariable::Energy => value,
            SweepVariable::Strength => self.fixed_energy.expect("validated"),
        }
    }

    /// Transmission at one point of this sweep, using the analytic engine
    /// unless the sweep is oracle-only.
    fn transmission_at(&self, value: f64) -> Result<f64> {
        let params = self.point_params(value)?;
        let energy = self.point_energy(value);
        match self.engine {
            Engine::Oracle => {
                let cfg = IntegrationConfig::for_params(&params);
                Ok(oracle::oracle_transmission(&params, energy, &cfg)?.transmission)
            }
            Engine::Analytic | Engine::Both => {
                Ok(analytic::transmission(&params, energy)?.transmission)
            }
        }
    }
}

/// The six captioned parameter sets. Energy presets sweep E over (1, 10]
/// at m = 1; strength presets sweep V₀ over (0, 20] at E = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigurePreset {
    /// V₀ = 4, a = 1, q = 0.9, energy sweep
    Fig1,
    /// V₀ = 4, a = 0.5, q = 0.9, energy sweep
    Fig2,
    /// V₀ = 4, a = 1, q = 0.5, energy sweep
    Fig3,
    /// V₀ = 4, a = 0.5, q = 0.5, energy sweep
    Fig4,
    /// E = 2, a = 1, q = 0.9, strength sweep
    Fig5,
    /// E = 2, a = 0.5, q = 0.9, strength sweep
    Fig6,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 6] = [
        FigurePreset::Fig1,
        FigurePreset::Fig2,
        FigurePreset::Fig3,
        FigurePreset::Fig4,
        FigurePreset::Fig5,
        FigurePreset::Fig6,
    ];

    pub fn from_name(name: &str) -> Option<FigurePreset> {
        match name {
            "fig1" => Some(FigurePreset::Fig1),
            "fig2" => Some(FigurePreset::Fig2),
            "fig3" => Some(FigurePreset::Fig3),
            "fig4" => Some(FigurePreset::Fig4),
            "fig5" => Some(FigurePreset::Fig5),
            "fig6" => Some(FigurePreset::Fig6),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FigurePreset::Fig1 => "fig1",
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
            FigurePreset::Fig5 => "fig5",
            FigurePreset::Fig6 => "fig6",
        }
    }

    /// The sweep this preset expands to, with the given grid size.
    pub fn spec(&self, points: usize, engine: Engine) -> SweepSpec {
        let energy_sweep = |v0: f64, a: f64, q: f64| SweepSpec {
            variable: SweepVariable::Energy,
            range: (1.0, 10.0),
            points,
            params: PotentialParams::new(v0, a, q, 1.0).expect("preset parameters are valid"),
            fixed_energy: None,
            engine,
        };
        let strength_sweep = |a: f64, q: f64| SweepSpec {
            variable: SweepVariable::Strength,
            range: (0.0, 20.0),
            points,
            // stored strength is a placeholder; it is swept point by point
            params: PotentialParams::new(1.0, a, q, 1.0).expect("preset parameters are valid"),
            fixed_energy: Some(2.0),
            engine,
        };
        match self {
            FigurePreset::Fig1 => energy_sweep(4.0, 1.0, 0.9),
            FigurePreset::Fig2 => energy_sweep(4.0, 0.5, 0.9),
            FigurePreset::Fig3 => energy_sweep(4.0, 1.0, 0.5),
            FigurePreset::Fig4 => energy_sweep(4.0, 0.5, 0.5),
            FigurePreset::Fig5 => strength_sweep(1.0, 0.9),
            FigurePreset::Fig6 => strength_sweep(0.5, 0.9),
        }
    }
}

/// One sweep grid point. On per-point failure the numeric fields are NaN
/// (or taken from the surviving engine under `Engine::Both`) and `failure`
/// carries the reason.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub reflection: f64,
    pub transmission: f64,
    pub unitarity_residual: f64,
    /// |T_analytic − T_oracle|, present under `Engine::Both`
    pub t_discrepancy: Option<f64>,
    pub failure: Option<String>,
}

/// Sweep result; rows are ordered by ascending variable value.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

fn failed_row(value: f64, failure: String) -> SweepRow {
    SweepRow {
        value,
        reflection: f64::NAN,
        transmission: f64::NAN,
        unitarity_residual: f64::NAN,
        t_discrepancy: None,
        failure: Some(failure),
    }
}

fn row_from(value: f64, coeffs: &ScatteringCoefficients) -> SweepRow {
    SweepRow {
        value,
        reflection: coeffs.reflection,
        transmission: coeffs.transmission,
        unitarity_residual: coeffs.unitarity_residual,
        t_discrepancy: None,
        failure: None,
    }
}

fn evaluate_point(spec: &SweepSpec, value: f64) -> SweepRow {
    let params = match spec.point_params(value) {
        Ok(p) => p,
        Err(e) => return failed_row(value, format!("{}: {e}", e.code())),
    };
    let energy = spec.point_energy(value);

    match spec.engine {
        Engine::Analytic => match analytic::transmission(&params, energy) {
            Ok(c) => row_from(value, &c),
            Err(e) => failed_row(value, format!("analytic {}: {e}", e.code())),
        },
        Engine::Oracle => {
            let cfg = IntegrationConfig::for_params(&params);
            match oracle::oracle_transmission(&params, energy, &cfg) {
                Ok(c) => row_from(value, &c),
                Err(e) => failed_row(value, format!("oracle {}: {e}", e.code())),
            }
        }
        Engine::Both => {
            let cfg = IntegrationConfig::for_params(&params);
            let analytic_result = analytic::transmission(&params, energy);
            let oracle_result = oracle::oracle_transmission(&params, energy, &cfg);
            match (analytic_result, oracle_result) {
                (Ok(a), Ok(o)) => {
                    let mut row = row_from(value, &a);
                    row.t_discrepancy = Some((a.transmission - o.transmission).abs());
                    row
                }
                (Ok(a), Err(e)) => {
                    let mut row = row_from(value, &a);
                    row.failure = Some(format!("oracle {}: {e}", e.code()));
                    row
                }
                (Err(e), Ok(o)) => {
                    let mut row = row_from(value, &o);
                    row.failure = Some(format!("analytic {}: {e}", e.code()));
                    row
                }
                (Err(ea), Err(eo)) => failed_row(
                    value,
                    format!("analytic {}: {ea}; oracle {}: {eo}", ea.code(), eo.code()),
                ),
            }
        }
    }
}

/// Evaluates the sweep grid. Points are independent and may run in
/// parallel; the output ordering and values are identical either way.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let rows: Vec<SweepRow> = spec
        .grid()
        .par_iter()
        .map(|&value| evaluate_point(spec, value))
        .collect();
    Ok(SweepTable { spec: *spec, rows })
}

/// A located transmission resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonancePeak {
    /// E or V₀ at the (refined) maximum
    pub location: f64,
    pub peak_transmission: f64,
    /// full width at half maximum of T − baseline, with the baseline taken
    /// from the higher of the two adjacent minima
    pub fwhm: f64,
    pub refined: bool,
}

/// Golden-section maximization of `f` on [lo, hi] to within `tol` in x.
fn golden_max(f: &mut impl FnMut(f64) -> Result<f64>, lo: f64, hi: f64, tol: f64) -> Result<(f64, f64)> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

/// Bisection for f(x) = level on [lo, hi], assuming f(lo) and f(hi)
/// straddle the level.
fn bisect_crossing(
    f: &mut impl FnMut(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    level: f64,
    tol: f64,
) -> Result<f64> {
    let mut g_lo = f(lo)? - level;
    while (hi - lo).abs() > tol {
        let mid = 0.5 * (lo + hi);
        let g_mid = f(mid)? - level;
        if g_lo * g_mid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            g_lo = g_mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Finds transmission resonances in a sweep.
///
/// Candidates are strict local maxima of the gridded T. With `refine` each
/// candidate is polished by golden-section maximization inside its
/// bracketing grid interval, and the 0.99 classification threshold applies
/// to the refined peak height (narrow resonances undersample on the grid);
/// without refinement the grid value decides. FWHM is measured by bisection
/// from the peak toward each adjacent minimum at the half level
/// (peak + baseline)/2.
pub fn find_resonances(table: &SweepTable, refine: bool) -> Result<Vec<ResonancePeak>> {
    if table.rows.len() < 16 {
        return Err(Error::InvalidSweep {
            reason: "resonance detection needs at least 16 sweep points",
        });
    }
    let rows = &table.rows;
    let spec = &table.spec;
    let usable: Vec<bool> = rows
        .iter()
        .map(|r| r.failure.is_none() && r.transmission.is_finite())
        .collect();

    let mut eval = |x: f64| spec.transmission_at(x);
    let mut peaks = Vec::new();

    for i in 1..rows.len() - 1 {
        if !(usable[i - 1] && usable[i] && usable[i + 1]) {
            continue;
        }
        let t_i = rows[i].transmission;
        if !(t_i > rows[i - 1].transmission && t_i > rows[i + 1].transmission) {
            continue;
        }

        let (location, peak_t) = if refine {
            golden_max(&mut eval, rows[i - 1].value, rows[i + 1].value, REFINE_TOL)?
        } else {
            (rows[i].value, t_i)
        };
        if peak_t < RESONANCE_THRESHOLD {
            continue;
        }

        // walk to the adjacent minima (or the usable boundary)
        let mut left = i;
        while left > 0 && usable[left - 1] && rows[left - 1].transmission < rows[left].transmission
        {
            left -= 1;
        }
        let mut right = i;
        while right + 1 < rows.len()
            && usable[right + 1]
            && rows[right + 1].transmission < rows[right].transmission
        {
            right += 1;
        }
        let baseline = rows[left].transmission.max(rows[right].transmission);
        if peak_t <= baseline + 1e-9 {
            continue;
        }
        let half = 0.5 * (peak_t + baseline);

        let x_left = bisect_crossing(&mut eval, rows[left].value, location, half, REFINE_TOL)?;
        let x_right = bisect_crossing(&mut eval, location, rows[right].value, half, REFINE_TOL)?;

        peaks.push(ResonancePeak {
            location,
            peak_transmission: peak_t,
            fwhm: x_right - x_left,
            refined: refine,
        });
    }
    Ok(peaks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1_coarse(points: usize) -> SweepTable {
        run_sweep(&FigurePreset::Fig1.spec(points, Engine::Analytic)).unwrap()
    }

    #[test]
    fn grid_is_half_open_and_ascending() {
        let spec = FigurePreset::Fig1.spec(10, Engine::Analytic);
        let grid = spec.grid();
        assert_eq!(grid.len(), 10);
        assert!(grid[0] > 1.0);
        assert_eq!(grid[9], 10.0);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn validation_rejects_bad_specs() {
        let mut spec = FigurePreset::Fig1.spec(10, Engine::Analytic);
        spec.range = (5.0, 2.0);
        assert!(spec.validate().is_err());

        let mut spec = FigurePreset::Fig1.spec(1, Engine::Analytic);
        spec.points = 1;
        assert!(spec.validate().is_err());

        let mut spec = FigurePreset::Fig1.spec(10, Engine::Analytic);
        spec.range = (0.5, 10.0); // below the mass
        assert!(spec.validate().is_err());

        let mut spec = FigurePreset::Fig5.spec(10, Engine::Analytic);
        spec.fixed_energy = None;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn sweep_rows_are_ordered_and_unitary() {
        let table = fig1_coarse(48);
        assert_eq!(table.rows.len(), 48);
        for w in table.rows.windows(2) {
            assert!(w[0].value < w[1].value);
        }
        for row in &table.rows {
            assert!(row.failure.is_none(), "row {row:?}");
            assert!(row.unitarity_residual < 1e-8);
        }
    }

    #[test]
    fn sweep_output_is_identical_across_parallelism() {
        let spec = FigurePreset::Fig1.spec(24, Engine::Analytic);
        let parallel = run_sweep(&spec).unwrap();
        // serial reference evaluation
        let serial: Vec<SweepRow> = spec
            .grid()
            .iter()
            .map(|&v| evaluate_point(&spec, v))
            .collect();
        for (a, b) in parallel.rows.iter().zip(&serial) {
            assert_eq!(a.transmission.to_bits(), b.transmission.to_bits());
            assert_eq!(a.reflection.to_bits(), b.reflection.to_bits());
        }
    }

    #[test]
    fn monotone_curve_has_no_resonances() {
        // above-barrier tail: T rises monotonically toward 1 at high energy
        let spec = SweepSpec {
            variable: SweepVariable::Energy,
            range: (30.0, 60.0),
            points: 24,
            params: PotentialParams::new(0.5, 1.0, 0.5, 1.0).unwrap(),
            fixed_energy: None,
            engine: Engine::Analytic,
        };
        let table = run_sweep(&spec).unwrap();
        let peaks = find_resonances(&table, true).unwrap();
        assert!(peaks.is_empty(), "{peaks:?}");
    }

    #[test]
    fn too_few_points_is_an_error() {
        let table = fig1_coarse(20);
        let mut truncated = table.clone();
        truncated.rows.truncate(10);
        assert!(find_resonances(&truncated, false).is_err());
    }

    #[test]
    fn refinement_stays_inside_the_bracketing_interval() {
        let table = fig1_coarse(128);
        let peaks = find_resonances(&table, true).unwrap();
        assert!(!peaks.is_empty());
        for p in &peaks {
            let i = table
                .rows
                .iter()
                .position(|r| (r.value - p.location).abs() < (9.0 / 128.0))
                .expect("peak near a grid point");
            let lo = table.rows[i.saturating_sub(1)].value - 9.0 / 128.0;
            let hi = table.rows[(i + 1).min(table.rows.len() - 1)].value + 9.0 / 128.0;
            assert!(p.location >= lo && p.location <= hi);
            assert!(p.fwhm > 0.0);
            assert!(p.peak_transmission <= 1.0 + 1e-8);
        }
    }

    #[test]
    fn refined_peak_height_matches_direct_evaluation() {
        let table = fig1_coarse(128);
        let peaks = find_resonances(&table, true).unwrap();
        for p in &peaks {
            let direct = table.spec.transmission_at(p.location).unwrap();
            assert!((p.peak_transmission - direct).abs() <= 1e-8);
        }
    }
}
