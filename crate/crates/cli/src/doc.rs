//! JSON documents read and written by the command-line tool.

use anyhow::{bail, Context, Result};
use rebit::{AffineChannel, CanonicalForm, ChannelClass, ImageEllipse, Mat2, Vec2};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// `{"A": [[a11, a12], [a21, a22]], "w": [w1, w2], "name": optional}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDocument {
    #[serde(rename = "A")]
    pub a: [[f64; 2]; 2],
    pub w: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ChannelDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: ChannelDocument = serde_json::from_str(text)?;
        let finite = doc
            .a
            .iter()
            .flatten()
            .chain(doc.w.iter())
            .all(|x| x.is_finite());
        if !finite {
            bail!("channel entries must be finite");
        }
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("invalid channel document {}", path.display()))
    }

    pub fn channel(&self) -> AffineChannel {
        AffineChannel::new(Mat2(self.a), Vec2::from(self.w))
    }

    pub fn from_channel(c: &AffineChannel) -> Self {
        Self {
            a: c.a.0,
            w: c.w.to_array(),
            name: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DecomposeOut {
    pub theta1: f64,
    pub theta2: f64,
    pub lambda: [f64; 2],
    pub shift: [f64; 2],
    pub residual: f64,
}

impl DecomposeOut {
    pub fn new(f: &CanonicalForm, residual: f64) -> Self {
        Self {
            theta1: f.theta1,
            theta2: f.theta2,
            lambda: [f.lambda.0, f.lambda.1],
            // R₁ᵗw can produce -0.0 entries
            shift: f.shift.to_array().map(|x| x + 0.0),
            residual,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum ClassParams {
    None {},
    PhaseFlip {
        fixed_axis: &'static str,
        p: f64,
    },
    Depolarizing {
        r: f64,
        reflect_1: bool,
        reflect_2: bool,
    },
    Linear {
        axis: &'static str,
        q: f64,
    },
    General {
        rank: u8,
        unital: bool,
    },
}

#[derive(Debug, Serialize)]
pub struct ClassificationOut {
    pub class: &'static str,
    pub params: ClassParams,
    pub kraus_rank: u8,
}

impl ClassificationOut {
    pub fn new(class: &ChannelClass, kraus_rank: u8) -> Self {
        let params = match *class {
            ChannelClass::Identity | ChannelClass::CompletelyDepolarizing => ClassParams::None {},
            ChannelClass::PhaseFlip { fixed_axis, p } => ClassParams::PhaseFlip {
                fixed_axis: fixed_axis.as_str(),
                p,
            },
            ChannelClass::Depolarizing {
                r,
                reflect_1,
                reflect_2,
            } => ClassParams::Depolarizing {
                r,
                reflect_1,
                reflect_2,
            },
            ChannelClass::Linear { axis, q } => ClassParams::Linear {
                axis: axis.as_str(),
                q,
            },
            ChannelClass::General { rank, unital } => ClassParams::General { rank, unital },
        };
        Self {
            class: class.name(),
            params,
            kraus_rank,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EllipseOut {
    pub center: [f64; 2],
    pub axes: [f64; 2],
    pub tilt: f64,
}

impl From<&ImageEllipse> for EllipseOut {
    fn from(e: &ImageEllipse) -> Self {
        Self {
            center: e.center.to_array(),
            axes: [e.semi_axes.0, e.semi_axes.1],
            tilt: e.tilt,
        }
    }
}
