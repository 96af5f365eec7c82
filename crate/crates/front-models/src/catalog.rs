//! Model catalog: build any local model by name and parameter map.

use std::collections::BTreeMap;
use std::sync::Arc;

use front_jets::{MapRef, ParamDomain};

use crate::error::ModelError;
use crate::lagrangian::{CuspModel, FoldModel, LagrangianWrinkle, ZeroSection};
use crate::regularize::{RegBump, RegularizedWrinkle};
use crate::sharpening::{CuspSharpening, Swallowtail, SwallowtailSharpening};
use crate::wrinkle::{Embryo, FiberedWrinkle, SmoothWrinkle};

pub type Params = BTreeMap<String, f64>;

/// Names of all catalog models.
pub const MODEL_NAMES: &[&str] = &[
    "zero-section",
    "smooth-wrinkle",
    "embryo",
    "lagrangian-wrinkle",
    "legendrian-wrinkle",
    "fibered-wrinkle",
    "legendrian-fibered-wrinkle",
    "cusp",
    "legendrian-cusp",
    "cusp-sharpening",
    "legendrian-cusp-sharpening",
    "swallowtail",
    "legendrian-swallowtail",
    "swallowtail-sharpening",
    "legendrian-swallowtail-sharpening",
    "fold",
    "legendrian-fold",
    "regularized-wrinkle",
    "regularized-legendrian-wrinkle",
];

struct ParamReader<'a> {
    model: &'a str,
    params: &'a Params,
    used: Vec<String>,
}

impl<'a> ParamReader<'a> {
    fn new(model: &'a str, params: &'a Params) -> Self {
        Self {
            model,
            params,
            used: Vec::new(),
        }
    }

    fn opt(&mut self, key: &str, default: f64) -> f64 {
        self.used.push(key.to_string());
        self.params.get(key).copied().unwrap_or(default)
    }

    fn usize_opt(&mut self, key: &str, default: usize) -> Result<usize, ModelError> {
        let v = self.opt(key, default as f64);
        if v < 1.0 || v.fract() != 0.0 {
            return Err(ModelError::ParamOutOfRange {
                param: "integer parameter",
                value: v,
                expected: "positive integer",
            });
        }
        Ok(v as usize)
    }

    fn finish(self) -> Result<(), ModelError> {
        for key in self.params.keys() {
            if !self.used.iter().any(|u| u == key) {
                return Err(ModelError::UnknownParam {
                    model: self.model.to_string(),
                    key: key.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Build a catalog model. Unknown names and unknown parameter keys are
/// rejected; absent parameters take the documented defaults.
pub fn build_model(name: &str, params: &Params) -> Result<MapRef, ModelError> {
    let mut rd = ParamReader::new(name, params);
    let map: MapRef = match name {
        "zero-section" => {
            let n = rd.usize_opt("n", 2)?;
            Arc::new(ZeroSection::new(n, false))
        }
        "smooth-wrinkle" => {
            let n = rd.usize_opt("n", 2)?;
            let r = rd.opt("r", n as f64) as usize;
            Arc::new(SmoothWrinkle::new(n, r))
        }
        "embryo" => {
            let n = rd.usize_opt("n", 2)?;
            let r = rd.usize_opt("r", n)?;
            Arc::new(Embryo::new(n, r))
        }
        "lagrangian-wrinkle" => {
            let n = rd.usize_opt("n", 2)?;
            Arc::new(LagrangianWrinkle::new(n, false))
        }
        "legendrian-wrinkle" => {
            let n = rd.usize_opt("n", 2)?;
            Arc::new(LagrangianWrinkle::new(n, true))
        }
        "fibered-wrinkle" | "legendrian-fibered-wrinkle" => {
            let n = rd.usize_opt("n", 1)?;
            let m = rd.usize_opt("m", 1)?;
            Arc::new(FiberedWrinkle::new(n, m, name.starts_with("legendrian")))
        }
        "cusp" | "legendrian-cusp" => {
            let n = rd.usize_opt("n", 2)?;
            let eps = rd.opt("eps", 1.0);
            Arc::new(CuspModel::new(n, eps, name.starts_with("legendrian")))
        }
        "cusp-sharpening" | "legendrian-cusp-sharpening" => {
            let n = rd.usize_opt("n", 2)?;
            let delta = rd.opt("delta", 0.1);
            let eps = rd.opt("eps", 0.1);
            let t = rd.opt("t", 1.0);
            Arc::new(CuspSharpening::new(
                n,
                delta,
                eps,
                t,
                name.starts_with("legendrian"),
            )?)
        }
        "swallowtail" | "legendrian-swallowtail" => {
            let n = rd.usize_opt("n", 2)?;
            let eps = rd.opt("eps", 1.0);
            Arc::new(Swallowtail::new(n, eps, name.starts_with("legendrian")))
        }
        "swallowtail-sharpening" | "legendrian-swallowtail-sharpening" => {
            let n = rd.usize_opt("n", 2)?;
            let delta = rd.opt("delta", 0.1);
            let eps = rd.opt("eps", 0.1);
            let t = rd.opt("t", 1.0);
            Arc::new(SwallowtailSharpening::new(
                n,
                delta,
                eps,
                t,
                name.starts_with("legendrian"),
            )?)
        }
        "fold" | "legendrian-fold" => {
            let n = rd.usize_opt("n", 2)?;
            Arc::new(FoldModel::new(n, name.starts_with("legendrian")))
        }
        "regularized-wrinkle" | "regularized-legendrian-wrinkle" => {
            let n = rd.usize_opt("n", 2)?;
            let shell = rd.opt("shell", 0.15);
            let amp = rd.opt("amp", 0.05);
            let bump = RegBump::build(shell, amp)?;
            Arc::new(RegularizedWrinkle::new(
                n,
                bump,
                name.starts_with("regularized-legendrian"),
            ))
        }
        other => return Err(ModelError::UnknownModel(other.to_string())),
    };
    rd.finish()?;
    Ok(map)
}

/// A sensible evaluation domain for each catalog model.
pub fn default_domain(name: &str, map: &MapRef, grid: usize) -> ParamDomain {
    let n = map.domain_dim();
    match name {
        "cusp-sharpening" | "legendrian-cusp-sharpening" | "cusp" | "legendrian-cusp"
        | "fold" | "legendrian-fold" => ParamDomain::cube(n, 1.2, grid),
        "swallowtail" | "legendrian-swallowtail" | "swallowtail-sharpening"
        | "legendrian-swallowtail-sharpening" => ParamDomain::cube(n, 0.8, grid),
        _ => ParamDomain::cube(n, 1.3, grid),
    }
}

/// Parse `k=v` pairs into a parameter map.
pub fn parse_params(pairs: &[String]) -> Result<Params, ModelError> {
    let mut out = Params::new();
    for p in pairs {
        let (k, v) = p.split_once('=').ok_or_else(|| ModelError::UnknownParam {
            model: "<cli>".to_string(),
            key: p.clone(),
        })?;
        let val: f64 = v.parse().map_err(|_| ModelError::ParamOutOfRange {
            param: "parameter",
            value: f64::NAN,
            expected: "a number",
        })?;
        out.insert(k.trim().to_string(), val);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_every_catalog_model() {
        for name in MODEL_NAMES {
            let map = build_model(name, &Params::new()).unwrap_or_else(|e| {
                panic!("model {name}: {e}");
            });
            let d = default_domain(name, &map, 3);
            assert_eq!(d.dim(), map.domain_dim());
        }
    }

    #[test]
    fn unknown_model_and_param_are_rejected() {
        assert!(build_model("nonsense", &Params::new()).is_err());
        let mut p = Params::new();
        p.insert("bogus".into(), 1.0);
        assert!(matches!(
            build_model("cusp", &p),
            Err(ModelError::UnknownParam { .. })
        ));
    }
}
