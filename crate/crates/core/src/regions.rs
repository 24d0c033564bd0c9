//! Parameter-plane analysis for two sectors.
//!
//! With `alpha_1 = alpha`, `alpha_2 = 1 - alpha`, `beta_1 = beta`,
//! `beta_2 = 1 - beta` and `cos^2 theta_1 > cos^2 theta_2`, four hyperbolas
//! `beta = b1(alpha) .. b4(alpha)` split the unit square into five regions
//! according to how the intervals `I_1` and `I_2` overlap:
//!
//! | region | pattern                      |
//! |--------|------------------------------|
//! | I      | `d1 < c2` (disjoint, left)   |
//! | II     | `c1 < c2 < d1 < d2`          |
//! | III    | `I1` inside `I2`             |
//! | IV     | `c2 <= c1`, `d2 <= d1`       |
//! | V      | `d2 < c1` (disjoint, right)  |

use serde::Serialize;

use crate::discriminate::{Regime, SectorInterval, SectorParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Region {
    I,
    II,
    III,
    IV,
    V,
}

impl Region {
    pub const ALL: [Region; 5] = [Region::I, Region::II, Region::III, Region::IV, Region::V];

    /// Region obtained by exchanging the roles of the two hypotheses.
    pub fn dual(self) -> Region {
        match self {
            Region::I => Region::V,
            Region::II => Region::IV,
            Region::III => Region::III,
            Region::IV => Region::II,
            Region::V => Region::I,
        }
    }

    pub fn has_overlap(self) -> bool {
        !matches!(self, Region::I | Region::V)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RegionClassification {
    pub region: Region,
    pub dividers: [f64; 4],
    pub intervals: [SectorInterval; 2],
    pub intersection: Option<SectorInterval>,
}

fn check_angle_pair(cos2_theta1: f64, cos2_theta2: f64) -> Result<()> {
    if !(cos2_theta2 > 0.0 && cos2_theta2 <= cos2_theta1 && cos2_theta1 < 1.0) {
        return Err(Error::InvalidAngles(format!(
            "need 0 < cos^2 theta_2 <= cos^2 theta_1 < 1, got ({cos2_theta1}, {cos2_theta2})"
        )));
    }
    Ok(())
}

fn check_open_unit(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidWeights(format!("{name} = {x} must lie in (0, 1)")))
    }
}

/// The four divider curves evaluated at `alpha`.
pub fn dividers(cos2_theta1: f64, cos2_theta2: f64, alpha: f64) -> Result<[f64; 4]> {
    check_angle_pair(cos2_theta1, cos2_theta2)?;
    check_open_unit("alpha", alpha)?;
    Ok(dividers_unchecked(cos2_theta1, cos2_theta2, alpha))
}

fn dividers_unchecked(x1: f64, x2: f64, a: f64) -> [f64; 4] {
    let p = x1 * x2;
    [
        a * p / (1.0 - a * (1.0 - p)),
        a * x2 / (x1 - a * (x1 - x2)),
        a * x1 / (x2 + a * (x1 - x2)),
        a / (p + a * (1.0 - p)),
    ]
}

fn sector_pair(cos2_theta1: f64, cos2_theta2: f64, alpha: f64, beta: f64) -> [SectorParams; 2] {
    [
        SectorParams {
            cos_angle: cos2_theta1.sqrt(),
            alpha,
            beta,
        },
        SectorParams {
            cos_angle: cos2_theta2.sqrt(),
            alpha: 1.0 - alpha,
            beta: 1.0 - beta,
        },
    ]
}

/// Region of the weight point `(alpha, beta)`. A point exactly on a divider
/// goes to the lower-numbered region.
pub fn classify(
    cos2_theta1: f64,
    cos2_theta2: f64,
    alpha: f64,
    beta: f64,
) -> Result<RegionClassification> {
    check_angle_pair(cos2_theta1, cos2_theta2)?;
    check_open_unit("alpha", alpha)?;
    check_open_unit("beta", beta)?;
    let dividers = dividers_unchecked(cos2_theta1, cos2_theta2, alpha);
    let region = Region::ALL[dividers.iter().take_while(|&&b| beta > b).count()];
    let [s1, s2] = sector_pair(cos2_theta1, cos2_theta2, alpha, beta);
    let intervals = [s1.interval(), s2.interval()];
    Ok(RegionClassification {
        region,
        dividers,
        intervals,
        intersection: intervals[0].intersect(&intervals[1]),
    })
}

/// How the optimal measurement acts across both sectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementKind {
    /// Both sectors projective.
    Projective,
    /// Both sectors need the three-outcome POVM.
    Povm,
    /// One of each.
    Mixed,
}

impl MeasurementKind {
    pub fn from_regimes(r1: Regime, r2: Regime) -> Self {
        match (r1.is_projective(), r2.is_projective()) {
            (true, true) => MeasurementKind::Projective,
            (false, false) => MeasurementKind::Povm,
            _ => MeasurementKind::Mixed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusCase {
    pub region: Region,
    pub alpha: f64,
    pub beta: f64,
    /// Index of the prior subinterval, 0..5 from left to right.
    pub placement: usize,
    pub eta_range: [f64; 2],
    pub eta: f64,
    pub regimes: [Regime; 2],
    pub saturates: bool,
    pub measurement_kind: MeasurementKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CensusCounts {
    pub total: usize,
    pub saturating: usize,
    pub projective: usize,
    pub povm: usize,
    pub mixed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseCensus {
    pub cos2_theta1: f64,
    pub cos2_theta2: f64,
    pub cases: Vec<CensusCase>,
    pub counts: CensusCounts,
}

/// Representative `beta` for each region at this `alpha`, or `None` if some
/// region has zero width there.
fn representatives(x1: f64, x2: f64, alpha: f64) -> Option<[f64; 5]> {
    let d = dividers_unchecked(x1, x2, alpha);
    let edges = [0.0, d[0], d[1], d[2], d[3], 1.0];
    let mut reps = [0.0; 5];
    for i in 0..5 {
        if edges[i + 1] <= edges[i] {
            return None;
        }
        reps[i] = 0.5 * (edges[i] + edges[i + 1]);
    }
    Some(reps)
}

/// All `(region, prior placement)` cases for a fixed non-degenerate angle pair.
///
/// Each region is sampled at `alpha = 0.5` (or the first point of a 99-point
/// grid where all five regions have positive width) with `beta` midway
/// between its dividers. The prior axis is cut at the sorted interval
/// endpoints and every nonempty piece is probed at its midpoint.
pub fn census(cos2_theta1: f64, cos2_theta2: f64) -> Result<CaseCensus> {
    check_angle_pair(cos2_theta1, cos2_theta2)?;
    if cos2_theta1 == cos2_theta2 {
        return Err(Error::DegenerateAngles(cos2_theta1));
    }
    let (alpha, reps) = std::iter::once(0.5)
        .chain((1..100).map(|i| i as f64 / 100.0))
        .find_map(|a| representatives(cos2_theta1, cos2_theta2, a).map(|r| (a, r)))
        .ok_or_else(|| Error::InvalidAngles("no probe alpha realizes all five regions".into()))?;

    let mut cases = Vec::with_capacity(25);
    let mut counts = CensusCounts::default();
    for (region, &beta) in Region::ALL.iter().zip(&reps) {
        let sectors = sector_pair(cos2_theta1, cos2_theta2, alpha, beta);
        let [i1, i2] = [sectors[0].interval(), sectors[1].interval()];
        let mut cuts = [0.0, i1.c, i1.d, i2.c, i2.d, 1.0];
        cuts.sort_by(f64::total_cmp);
        let mut placement = 0;
        for w in cuts.windows(2) {
            if w[1] <= w[0] {
                continue;
            }
            let eta = 0.5 * (w[0] + w[1]);
            let regimes = [sectors[0].regime(eta), sectors[1].regime(eta)];
            let kind = MeasurementKind::from_regimes(regimes[0], regimes[1]);
            let saturates = i1.contains(eta) && i2.contains(eta);
            counts.total += 1;
            counts.saturating += usize::from(saturates);
            match kind {
                MeasurementKind::Projective => counts.projective += 1,
                MeasurementKind::Povm => counts.povm += 1,
                MeasurementKind::Mixed => counts.mixed += 1,
            }
            cases.push(CensusCase {
                region: *region,
                alpha,
                beta,
                placement,
                eta_range: [w[0], w[1]],
                eta,
                regimes,
                saturates,
                measurement_kind: kind,
            });
            placement += 1;
        }
    }
    Ok(CaseCensus {
        cos2_theta1,
        cos2_theta2,
        cases,
        counts,
    })
}

/// One row of divider data: `alpha` and the four dividers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DividerRow {
    pub alpha: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub beta4: f64,
}

/// Dividers on `alpha = j / (n + 1)`, `j = 1..=n`.
pub fn divider_curves(cos2_theta1: f64, cos2_theta2: f64, grid_points: usize) -> Result<Vec<DividerRow>> {
    check_angle_pair(cos2_theta1, cos2_theta2)?;
    if grid_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least 2 points, got {grid_points}"
        )));
    }
    let step = 1.0 / (grid_points + 1) as f64;
    Ok((1..=grid_points)
        .map(|j| {
            let alpha = j as f64 * step;
            let [beta1, beta2, beta3, beta4] = dividers_unchecked(cos2_theta1, cos2_theta2, alpha);
            DividerRow {
                alpha,
                beta1,
                beta2,
                beta3,
                beta4,
            }
        })
        .collect())
}
