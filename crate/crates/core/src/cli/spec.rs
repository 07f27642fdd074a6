//! JSON input files. Rationals are strings such as `"3/4"`; numbers are
//! rejected wherever an exact value is expected.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use crate::exact_moments::{GaussPolyLaw, LatticeDistribution, MomentSequence};
use crate::ferro::{SiteMeasure, SpinSystem};
use crate::rational::{parse_rational, Rational};
use crate::seq_tools::NonnegSequence;

/// An exact rational read from a JSON string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational as a string, e.g. \"3/4\"")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Q, E> {
                parse_rational(s).map(Q).map_err(E::custom)
            }

            fn visit_f64<E: de::Error>(self, x: f64) -> std::result::Result<Q, E> {
                Err(E::custom(format!("number {x} is not accepted; write rationals as strings")))
            }

            fn visit_i64<E: de::Error>(self, x: i64) -> std::result::Result<Q, E> {
                Err(E::custom(format!("number {x} is not accepted; write \"{x}\"")))
            }

            fn visit_u64<E: de::Error>(self, x: u64) -> std::result::Result<Q, E> {
                Err(E::custom(format!("number {x} is not accepted; write \"{x}\"")))
            }
        }
        d.deserialize_any(V)
    }
}

fn qs(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Lattice,
    Gausspoly,
    SpinSystem,
    Sequence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    /// Even moments `m_0, m_2, ...`.
    #[default]
    Moments,
    /// Normalized moments `r_0, r_1, ...`.
    R,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum SiteSpec {
    Named(String),
    Atoms(Vec<(Q, Q)>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub alpha: Option<Vec<Q>>,
    pub precision: Option<u32>,
    pub seed: Option<u64>,
    pub tolerance: Option<Q>,
}

/// Raw file contents; [`SpecFile::payload`] checks that the fields match the kind.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub kind: Kind,
    /// lattice: `p_0, p_1, ..., p_n`.
    pub p: Option<Vec<Q>>,
    /// gausspoly: Gaussian parameter.
    pub a: Option<Q>,
    /// gausspoly: quadratic factor parameters.
    pub b: Option<Vec<Q>>,
    pub sites: Option<Vec<SiteSpec>>,
    #[serde(rename = "J")]
    pub j: Option<Vec<Vec<Q>>>,
    pub h: Option<Vec<Q>>,
    /// spin-system: coefficients of the linear combination.
    pub weights: Option<Vec<Q>>,
    pub values: Option<Vec<Q>>,
    pub role: Option<Role>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Lattice(LatticeDistribution),
    GaussPoly(GaussPolyLaw),
    SpinSystem { system: SpinSystem, weights: Option<Vec<Rational>> },
    Sequence { values: Vec<Rational>, role: Role },
}

#[derive(Debug)]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// Position of the first `"key"` in the source, for errors found after parsing.
fn locate(src: &str, key: &str) -> (usize, usize) {
    let needle = format!("\"{key}\"");
    match src.find(&needle) {
        Some(off) => {
            let before = &src[..off];
            let line = before.matches('\n').count() + 1;
            let column = off - before.rfind('\n').map_or(0, |i| i + 1) + 1;
            (line, column)
        }
        None => (1, 1),
    }
}

impl SpecFile {
    pub fn parse(src: &str) -> Result<(SpecFile, Payload), SpecError> {
        let spec: SpecFile = serde_json::from_str(src).map_err(|e| {
            let full = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            SpecError { line: e.line(), column: e.column(), message: full.trim_end_matches(&suffix).to_string() }
        })?;
        let payload = spec.payload().map_err(|(key, message)| {
            let (line, column) = locate(src, key);
            SpecError { line, column, message }
        })?;
        Ok((spec, payload))
    }

    fn present(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let fields: [(&'static str, bool); 9] = [
            ("p", self.p.is_some()),
            ("a", self.a.is_some()),
            ("b", self.b.is_some()),
            ("sites", self.sites.is_some()),
            ("J", self.j.is_some()),
            ("h", self.h.is_some()),
            ("weights", self.weights.is_some()),
            ("values", self.values.is_some()),
            ("role", self.role.is_some()),
        ];
        for (name, set) in fields {
            if set {
                out.push(name);
            }
        }
        out
    }

    fn payload(&self) -> Result<Payload, (&'static str, String)> {
        let (allowed, required): (&[&str], &[&str]) = match self.kind {
            Kind::Lattice => (&["p"], &["p"]),
            Kind::Gausspoly => (&["a", "b"], &["a"]),
            Kind::SpinSystem => (&["sites", "J", "h", "weights"], &["sites"]),
            Kind::Sequence => (&["values", "role"], &["values"]),
        };
        for f in self.present() {
            if !allowed.contains(&f) {
                return Err((f, format!("field `{f}` does not belong to this kind")));
            }
        }
        for f in required {
            if !self.present().contains(f) {
                return Err(("kind", format!("missing field `{f}`")));
            }
        }
        let err = |key: &'static str| move |e: crate::Error| (key, e.to_string());
        Ok(match self.kind {
            Kind::Lattice => Payload::Lattice(LatticeDistribution::new(qs(self.p.as_ref().unwrap())).map_err(err("p"))?),
            Kind::Gausspoly => {
                let b = self.b.as_deref().map(qs).unwrap_or_default();
                Payload::GaussPoly(GaussPolyLaw::new(self.a.as_ref().unwrap().0.clone(), b).map_err(err("a"))?)
            }
            Kind::SpinSystem => {
                let specs = self.sites.as_ref().unwrap();
                let mut sites = Vec::with_capacity(specs.len());
                for s in specs {
                    sites.push(match s {
                        SiteSpec::Named(n) if n == "rademacher" => SiteMeasure::rademacher(),
                        SiteSpec::Named(n) => return Err(("sites", format!("unknown site measure `{n}`"))),
                        SiteSpec::Atoms(atoms) => {
                            SiteMeasure::new(atoms.iter().map(|(x, w)| (x.0.clone(), w.0.clone())).collect()).map_err(err("sites"))?
                        }
                    });
                }
                let n = sites.len();
                let j = match &self.j {
                    Some(rows) => rows.iter().map(|r| qs(r)).collect(),
                    None => vec![vec![Rational::from_integer(0.into()); n]; n],
                };
                let h = self.h.as_deref().map(qs).unwrap_or_else(|| vec![Rational::from_integer(0.into()); n]);
                let system = SpinSystem::new(sites, j, h).map_err(err("sites"))?;
                let weights = self.weights.as_deref().map(qs);
                if let Some(w) = &weights {
                    if w.len() != n {
                        return Err(("weights", format!("need {n} weights, got {}", w.len())));
                    }
                }
                Payload::SpinSystem { system, weights }
            }
            Kind::Sequence => {
                let values = qs(self.values.as_ref().unwrap());
                NonnegSequence::new(values.clone()).map_err(err("values"))?;
                Payload::Sequence { values, role: self.role.unwrap_or_default() }
            }
        })
    }
}

impl Payload {
    /// Exact even moments up to `m_{2N}`, where the payload has them.
    pub fn moments(&self, n_max: usize) -> crate::Result<MomentSequence> {
        use crate::exact_moments::{even_moments_gausspoly, even_moments_lattice};
        match self {
            Payload::Lattice(d) => Ok(even_moments_lattice(d, n_max)),
            Payload::GaussPoly(l) => Ok(even_moments_gausspoly(l, n_max)),
            Payload::Sequence { values, role } => {
                let s = match role {
                    Role::Moments => MomentSequence::from_even_moments(values.clone())?,
                    Role::R => MomentSequence::from_r(values.clone())?,
                };
                Ok(if s.len() > n_max + 1 { s.truncated(n_max) } else { s })
            }
            Payload::SpinSystem { .. } => Err(crate::Error::Precondition("spin systems have no exact moments; use `ferro`".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let (_, p) = SpecFile::parse(r#"{"kind": "lattice", "p": ["0", "1/2"]}"#).unwrap();
        assert!(matches!(p, Payload::Lattice(_)));
        let (_, p) = SpecFile::parse(r#"{"kind": "gausspoly", "a": "1", "b": ["1"]}"#).unwrap();
        assert!(matches!(p, Payload::GaussPoly(_)));
        let src = r#"{"kind": "spin-system", "sites": ["rademacher", [["-1","1"],["0","1"],["1","1"]]],
                      "J": [["0","1/2"],["1/2","0"]], "h": ["1","0"], "options": {"N": 5}}"#;
        let (s, p) = SpecFile::parse(src).unwrap();
        assert_eq!(s.options.n, Some(5));
        assert!(matches!(p, Payload::SpinSystem { .. }));
        let (_, p) = SpecFile::parse(r#"{"kind": "sequence", "values": ["1","1","2"], "role": "r"}"#).unwrap();
        assert!(matches!(p, Payload::Sequence { role: Role::R, .. }));
    }

    #[test]
    fn errors_carry_positions() {
        let e = SpecFile::parse("{\"kind\": \"lattice\",\n \"p\": [\"1/0\"]}").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("1/0"), "{}", e.message);
        let e = SpecFile::parse(r#"{"kind": "lattice", "p": [0.5, 0.25]}"#).unwrap_err();
        assert!(e.message.contains("not accepted"), "{}", e.message);
        let e = SpecFile::parse(r#"{"kind": "lattice", "p": ["1"], "colour": "red"}"#).unwrap_err();
        assert!(e.message.contains("colour"));
        let e = SpecFile::parse("{\"kind\": \"lattice\",\n\n   \"b\": [\"1\"]}").unwrap_err();
        assert_eq!((e.line, e.column), (3, 4));
        assert!(SpecFile::parse(r#"{"kind": "lattice", "p": ["1/2"]}"#).is_err());
    }
}
