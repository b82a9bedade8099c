//! Figure scenarios: curve families over a fixed control polygon, and the
//! monotone interpolants of the logistic sample with their error curves.

use serde::Serialize;

use super::svg::{SceneItem, SceneSpec, Style, PALETTE};
use crate::auxiliary::AuxiliaryFunction;
use crate::blending::BlendingSystem;
use crate::curve::{ControlPolygon, ParametricCurve};
use crate::enhanced::EnhancedBasis;
use crate::error::{Error, Result};
use crate::interp::{
    c1_feasible_solution, c1_interpolant, c2_feasible_solution_appendix, c2_feasible_solution_remark, c2_interpolant,
    logistic, reference_table, MonotoneDataset, PiecewiseCurve,
};

/// Control polygon shared by the curve-family figures.
pub const FIGURE_POLYGON: [[f64; 2]; 4] = [[0.0, 0.0], [1.0, 2.0], [3.0, 2.5], [4.0, 0.5]];
pub const SIGMA_SWEEP: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
pub const INTERP_SIGMAS: [f64; 4] = [0.1, 0.5, 0.9, 1.0];
pub const FIGURE_IDS: std::ops::RangeInclusive<u8> = 1..=7;

const CURVE_SAMPLES: usize = 201;
const SEGMENT_SAMPLES: usize = 41;
const ERROR_SAMPLES: usize = 1001;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FigureFile {
    pub name: String,
    pub scene: SceneSpec,
}

type Member = (String, BlendingSystem, AuxiliaryFunction, f64);

pub fn figure(which: u8) -> Result<Vec<FigureFile>> {
    let cubic = AuxiliaryFunction::cubic_smoothstep;
    let trig = || AuxiliaryFunction::trig(1).expect("odd k");
    let expo = AuxiliaryFunction::expo_rational;
    match which {
        1 => Ok(vec![
            panel(
                "fig1a",
                "p-Bezier curves, sigma = 1",
                [0.0, 0.25, 0.5, 0.75, 1.0]
                    .iter()
                    .map(|&g| Ok((format!("gamma = {g}"), BlendingSystem::p_bezier(g)?, cubic(), 1.0)))
                    .collect::<Result<_>>()?,
            )?,
            panel(
                "fig1b",
                "p-Bezier, gamma = 1",
                sigma_members(BlendingSystem::p_bezier(1.0)?, cubic()),
            )?,
            panel(
                "fig1c",
                "p-Bezier, gamma = 0.01",
                sigma_members(BlendingSystem::p_bezier(0.01)?, cubic()),
            )?,
        ]),
        2 => Ok(vec![
            panel(
                "fig2a",
                "lambda-mu curves, mu = 0, sigma = 1",
                [0.0, 1.0, 2.0, 5.0, 10.0]
                    .iter()
                    .map(|&l| {
                        Ok((
                            format!("lambda = {l}"),
                            BlendingSystem::lambda_mu(l, 0.0)?,
                            cubic(),
                            1.0,
                        ))
                    })
                    .collect::<Result<_>>()?,
            )?,
            panel(
                "fig2b",
                "lambda-mu curves, lambda = 0, sigma = 1",
                [0.0, 1.0, 2.0, 5.0, 10.0]
                    .iter()
                    .map(|&m| Ok((format!("mu = {m}"), BlendingSystem::lambda_mu(0.0, m)?, cubic(), 1.0)))
                    .collect::<Result<_>>()?,
            )?,
            panel(
                "fig2c",
                "lambda = 0, mu = 0",
                sigma_members(BlendingSystem::lambda_mu(0.0, 0.0)?, cubic()),
            )?,
            panel(
                "fig2d",
                "lambda = 10, mu = 10",
                sigma_members(BlendingSystem::lambda_mu(10.0, 10.0)?, cubic()),
            )?,
        ]),
        3 => Ok(vec![
            panel(
                "fig3a",
                "Yan cubic with sin^2 auxiliary, sigma = 1",
                [-1.0, 0.0, 1.0]
                    .iter()
                    .map(|&l| Ok((format!("lambda = {l}"), BlendingSystem::yan_cubic(l)?, trig(), 1.0)))
                    .collect::<Result<_>>()?,
            )?,
            panel(
                "fig3b",
                "sin^2 auxiliary, lambda = 0",
                sigma_members(BlendingSystem::yan_cubic(0.0)?, trig()),
            )?,
            panel(
                "fig3c",
                "sin^2 auxiliary, lambda = -1",
                sigma_members(BlendingSystem::yan_cubic(-1.0)?, trig()),
            )?,
            panel(
                "fig3d",
                "sin^2 auxiliary, lambda = 1",
                sigma_members(BlendingSystem::yan_cubic(1.0)?, trig()),
            )?,
        ]),
        4 => (1..=10)
            .map(|k| {
                let sigma = k as f64 / 10.0;
                let members = [-1.0, 0.0, 1.0]
                    .iter()
                    .map(|&l| Ok((format!("lambda = {l}"), BlendingSystem::yan_cubic(l)?, expo(), sigma)))
                    .collect::<Result<_>>()?;
                panel(
                    &format!("fig4_sigma{sigma:.1}"),
                    &format!("Yan cubic with expo-rational auxiliary, sigma = {sigma:.1}"),
                    members,
                )
            })
            .collect(),
        5 => {
            let data = MonotoneDataset::logistic_sample();
            let sol = c1_feasible_solution(&data, 0.05)?;
            let curves = INTERP_SIGMAS
                .iter()
                .map(|&s| Ok((s, c1_interpolant(&data, &sol, &cubic(), s)?)))
                .collect::<Result<Vec<_>>>()?;
            interp_panels("fig5", "C1 interpolant, s = 0.05", &data, &curves)
        }
        6 => {
            let data = MonotoneDataset::logistic_sample();
            let sol = c2_feasible_solution_appendix(&data, 0.03)?;
            let quintic = AuxiliaryFunction::quintic_smoothstep();
            let curves = INTERP_SIGMAS
                .iter()
                .map(|&s| Ok((s, c2_interpolant(&data, &sol, &quintic, s)?)))
                .collect::<Result<Vec<_>>>()?;
            interp_panels("fig6", "C2 interpolant, s = 0.03", &data, &curves)
        }
        7 => {
            let data = MonotoneDataset::logistic_sample();
            let sol = c2_feasible_solution_remark(&data, 0.02, 0.003)?;
            let quintic = AuxiliaryFunction::quintic_smoothstep();
            let curves = INTERP_SIGMAS
                .iter()
                .map(|&s| Ok((s, c2_interpolant(&data, &sol, &quintic, s)?)))
                .collect::<Result<Vec<_>>>()?;
            interp_panels("fig7", "C2 interpolant, zeta = 0.02, eta = 0.003", &data, &curves)
        }
        other => Err(Error::param("which", other as f64, "figure id must be between 1 and 7")),
    }
}

fn sigma_members(system: BlendingSystem, aux: AuxiliaryFunction) -> Vec<Member> {
    SIGMA_SWEEP
        .iter()
        .map(|&s| (format!("sigma = {s}"), system.clone(), aux.clone(), s))
        .collect()
}

fn polygon_item(points: Vec<[f64; 2]>, label: &str) -> SceneItem {
    SceneItem {
        points,
        style: Style::dashed("#7f7f7f", 1.0),
        label: Some(label.into()),
    }
}

fn to_xy(points: &[Vec<f64>]) -> Vec<[f64; 2]> {
    points.iter().map(|p| [p[0], p[1]]).collect()
}

fn panel(name: &str, title: &str, members: Vec<Member>) -> Result<FigureFile> {
    let polygon = ControlPolygon::from_xy(&FIGURE_POLYGON)?;
    let mut items = vec![polygon_item(FIGURE_POLYGON.to_vec(), "control polygon")];
    for (k, (label, system, aux, sigma)) in members.into_iter().enumerate() {
        let curve = ParametricCurve::new(EnhancedBasis::build(system, aux, sigma)?, polygon.clone())?;
        let samples = curve.sample(CURVE_SAMPLES)?;
        items.push(SceneItem {
            points: to_xy(&samples.points),
            style: Style::solid(PALETTE[k % PALETTE.len()], 1.5),
            label: Some(label),
        });
    }
    Ok(FigureFile {
        name: format!("{name}.svg"),
        scene: SceneSpec::new(items).with_title(title),
    })
}

fn interp_panels(
    prefix: &str,
    title: &str,
    data: &MonotoneDataset,
    curves: &[(f64, PiecewiseCurve)],
) -> Result<Vec<FigureFile>> {
    let knots: Vec<[f64; 2]> = data.pairs().into_iter().map(|(x, f)| [x, f]).collect();
    let mut shapes = vec![polygon_item(knots, "data")];
    let mut errors = Vec::new();
    let x = data.x();
    let reference = reference_table(x[0], x[x.len() - 1], ERROR_SAMPLES, logistic);
    for (k, (sigma, curve)) in curves.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let samples = curve.sample(SEGMENT_SAMPLES)?;
        shapes.push(SceneItem {
            points: to_xy(&samples.points),
            style: Style::solid(color, 1.5),
            label: Some(format!("sigma = {sigma}")),
        });
        let profile = curve.error_profile(&reference)?;
        errors.push(SceneItem {
            points: reference
                .iter()
                .zip(&profile.errors)
                .map(|((x, _), e)| [*x, *e])
                .collect(),
            style: Style::solid(color, 1.5),
            label: Some(format!("sigma = {sigma}, max error {:.6}", profile.max_error)),
        });
    }
    Ok(vec![
        FigureFile {
            name: format!("{prefix}a.svg"),
            scene: SceneSpec::new(shapes).with_title(title),
        },
        FigureFile {
            name: format!("{prefix}b.svg"),
            scene: SceneSpec::new(errors).with_title(format!("{title}: error against 1/(1+exp(-x))")),
        },
    ])
}
