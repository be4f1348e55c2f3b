//! Figure presets. Each figure is a list of experiment segments given as
//! settings; command-line flags are applied on top of every segment.

use crate::config::{Experiment, Kind, Settings};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::Fig1,
        Figure::Fig2,
        Figure::Fig3,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig6,
    ];

    pub fn parse(s: &str) -> Result<Self, CliError> {
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| CliError::config(format!("unknown figure `{s}` (fig1..fig6)")))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
        }
    }

    fn description(self) -> &'static str {
        match self {
            Figure::Fig1 => "uplink coverage, ISP vs MSP ranking",
            Figure::Fig2 => "downlink coverage, ISP vs MSP ranking",
            Figure::Fig3 => "accuracy vs path-loss exponent, Rayleigh fading",
            Figure::Fig4 => "accuracy vs path-loss exponent, Nakagami-m fading",
            Figure::Fig5 => "accuracy vs Nakagami parameter m at alpha=4",
            Figure::Fig6 => "accuracy of user selection rules",
        }
    }
}

const ALPHAS: &str = "2.5, 3, 3.5, 4, 4.5, 5, 5.5, 6";
const THETA_DB: &str = "-10, -7.5, -5, -2.5, 0, 2.5, 5, 7.5, 10, 12.5, 15, 17.5, 20";
const SELECTIONS: &str = "3:1-3; 3:1-2; 4:1-4; 6:1-6";

fn segments(fig: Figure) -> Vec<(Kind, Vec<(&'static str, &'static str)>)> {
    let coverage = |dir: &'static str| {
        vec![(
            Kind::Coverage,
            vec![
                ("direction", dir),
                ("model", "mcp"),
                ("lambda", "1e-4"),
                ("radius", "10"),
                ("noise", "0"),
                ("alpha", "4"),
                ("m", "1"),
                ("a1", "0.3"),
                ("a2", "0.7"),
                ("beta", "0, 0.5"),
                ("theta_db", THETA_DB),
                ("msp_mode", "first-term, unconditional"),
            ],
        )]
    };
    match fig {
        Figure::Fig1 => coverage("uplink"),
        Figure::Fig2 => coverage("downlink"),
        Figure::Fig3 => vec![
            (
                Kind::Analytic,
                vec![
                    ("model", "ppp, mcp, tcp"),
                    ("alpha", ALPHAS),
                    ("n_users", "2, 3"),
                    ("m", "1"),
                ],
            ),
            (
                Kind::Mc,
                vec![
                    ("model", "ppp-voronoi"),
                    ("alpha", ALPHAS),
                    ("n_users", "2, 3"),
                    ("m", "1"),
                ],
            ),
        ],
        Figure::Fig4 => vec![(
            Kind::Analytic,
            vec![
                ("model", "ppp, mcp, tcp"),
                ("alpha", ALPHAS),
                ("n_users", "2, 3"),
                ("m", "0.5, 1, 2"),
            ],
        )],
        Figure::Fig5 => vec![(
            Kind::Analytic,
            vec![
                ("model", "ppp, mcp, tcp"),
                ("alpha", "4"),
                ("n_users", "2, 3"),
                ("m", "0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4"),
            ],
        )],
        Figure::Fig6 => vec![
            (
                Kind::Analytic,
                vec![
                    ("model", "ppp, mcp, tcp"),
                    ("alpha", ALPHAS),
                    ("n_users", "2"),
                    ("m", "1"),
                ],
            ),
            (
                Kind::Analytic,
                vec![
                    ("model", "ppp, mcp, tcp"),
                    ("alpha", ALPHAS),
                    ("select", SELECTIONS),
                    ("m", "1"),
                ],
            ),
            (
                Kind::Mc,
                vec![
                    ("model", "ppp-voronoi"),
                    ("alpha", "4"),
                    ("select", SELECTIONS),
                    ("m", "1"),
                ],
            ),
        ],
    }
}

/// The experiments behind `fig`, with `overrides` applied to each.
pub fn preset(fig: Figure, overrides: &Settings) -> Result<Vec<Experiment>, CliError> {
    let mut out = Vec::new();
    for (kind, pairs) in segments(fig) {
        let mut s = Settings::new();
        for (k, v) in &pairs {
            s.set(k, *v)?;
        }
        s.merge(overrides);
        let mut e = s.resolve(Some(kind))?;
        e.notes.push(format!("preset {}: {}", fig.as_str(), fig.description()));
        e.notes.push(format!(
            "preset grid: {}",
            pairs
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" | ")
        ));
        out.push(e);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_resolves() {
        for f in Figure::ALL {
            let exps = preset(f, &Settings::new()).unwrap();
            assert!(!exps.is_empty());
            assert_eq!(Figure::parse(f.as_str()).unwrap(), f);
        }
        assert!(Figure::parse("fig7").is_err());
    }

    #[test]
    fn coverage_presets_use_caption_parameters() {
        let e = &preset(Figure::Fig2, &Settings::new()).unwrap()[0];
        assert_eq!((e.lambda, e.radius, e.a1, e.a2, e.noise), (1e-4, 10.0, 0.3, 0.7, 0.0));
        assert_eq!(e.msp_modes.len(), 2);
        assert_eq!(e.thetas.len(), 13);
        assert!((e.thetas[4] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn flags_override_presets() {
        let mut o = Settings::new();
        o.set("samples", "20000").unwrap();
        o.set("alpha", "4").unwrap();
        for e in preset(Figure::Fig3, &o).unwrap() {
            assert_eq!(e.samples, 20_000);
            assert_eq!(e.alphas, vec![4.0]);
        }
    }
}
