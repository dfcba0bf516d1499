//! Run configuration: defaults, then config-file entries, then
//! command-line flags, later layers overriding earlier ones.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;

use num_complex::Complex64;
use rhqm::algebra::{PhysicalConstants, Quaternion};
use rhqm::complex_delta::Sign;
use rhqm::state::EquationForm;

use crate::CommonArgs;

/// Usage/config problems exit with 2, solver failures with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Solver(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Solver(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Solver(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<rhqm::Error> for CliError {
    fn from(err: rhqm::Error) -> Self {
        CliError::Solver(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub form: EquationForm,
    pub consts: PhysicalConstants,
    pub q: Option<Complex64>,
    pub big_q: Option<Quaternion>,
    pub v: Option<Complex64>,
    pub u: Option<Quaternion>,
    pub e: Option<Complex64>,
    pub k: Option<Complex64>,
    pub eig: Sign,
    pub window: (f64, f64),
    pub t: f64,
    pub out: Option<String>,
    pub format: Option<OutputFormat>,
    pub seed: u64,
    pub draws: usize,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs) -> CliResult<Self> {
        let file = match &args.config {
            Some(path) => parse_config_file(path)?,
            None => BTreeMap::new(),
        };
        let get = |key: &str| file.get(key).cloned();
        let pick = |flag: &Option<String>, key: &str| flag.clone().or_else(|| get(key));
        let pick_f64 = |flag: Option<f64>, key: &str| -> CliResult<Option<f64>> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => get(key)
                    .map(|s| parse_f64(&s, key))
                    .transpose(),
            }
        };

        let form = match pick(&args.form, "form").as_deref() {
            None | Some("complex") => EquationForm::Complex,
            Some("left") => EquationForm::Left,
            Some("right") => EquationForm::Right,
            Some(other) => {
                return Err(CliError::usage(format!(
                    "unknown form '{other}' (expected complex, left, or right)"
                )))
            }
        };
        let hbar = pick_f64(args.hbar, "hbar")?.unwrap_or(1.0);
        let mass = pick_f64(args.mass, "mass")?.unwrap_or(1.0);
        let consts = PhysicalConstants::new(hbar, mass)
            .map_err(|e| CliError::usage(e.to_string()))?;

        let q0 = pick_f64(args.q0, "q0")?;
        let q1 = pick_f64(args.q1, "q1")?;
        let q = match (q0, q1) {
            (None, None) => None,
            (re, im) => Some(Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0))),
        };
        let big_q = pick(&args.big_q, "Q").map(|s| parse_quat(&s, "Q")).transpose()?;
        let v = pick(&args.v, "V").map(|s| parse_complex(&s, "V")).transpose()?;
        let u = pick(&args.u, "U").map(|s| parse_quat(&s, "U")).transpose()?;
        let e = pick(&args.e, "E").map(|s| parse_complex(&s, "E")).transpose()?;
        let k = pick(&args.k, "K").map(|s| parse_complex(&s, "K")).transpose()?;
        let eig = match pick(&args.eig, "eig").as_deref() {
            None | Some("plus") => Sign::Plus,
            Some("minus") => Sign::Minus,
            Some(other) => {
                return Err(CliError::usage(format!(
                    "unknown eigenvalue branch '{other}' (expected plus or minus)"
                )))
            }
        };
        let window = match pick(&args.window, "window") {
            Some(s) => parse_window(&s)?,
            None => (-10.0, 10.0),
        };
        let t = pick_f64(args.t, "t")?.unwrap_or(0.0);
        let format = match pick(&args.format, "format").as_deref() {
            None => None,
            Some("csv") => Some(OutputFormat::Csv),
            Some("json") => Some(OutputFormat::Json),
            Some(other) => {
                return Err(CliError::usage(format!(
                    "unknown format '{other}' (expected csv or json)"
                )))
            }
        };
        let seed = match args.seed {
            Some(s) => s,
            None => get("seed")
                .map(|s| {
                    s.parse::<u64>()
                        .map_err(|_| CliError::usage(format!("invalid seed '{s}'")))
                })
                .transpose()?
                .unwrap_or(42),
        };
        let draws = match args.draws {
            Some(d) => d,
            None => get("draws")
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| CliError::usage(format!("invalid draws '{s}'")))
                })
                .transpose()?
                .unwrap_or(10_000),
        };
        Ok(RunConfig {
            form,
            consts,
            q,
            big_q,
            v,
            u,
            e,
            k,
            eig,
            window,
            t,
            out: pick(&args.out, "out"),
            format,
            seed,
            draws,
        })
    }

    /// Background potential as a quaternion, whatever the form.
    pub fn background(&self) -> Quaternion {
        match self.form {
            EquationForm::Complex => {
                Quaternion::from_complex(self.v.unwrap_or(Complex64::new(0.0, 0.0)))
            }
            _ => self.u.unwrap_or(Quaternion::ZERO),
        }
    }

    /// Delta strength as a quaternion, whatever the form.
    pub fn strength(&self) -> Quaternion {
        match self.form {
            EquationForm::Complex => {
                Quaternion::from_complex(self.q.unwrap_or(Complex64::new(0.0, 0.0)))
            }
            _ => self
                .big_q
                .or(self.q.map(Quaternion::from_complex))
                .unwrap_or(Quaternion::ZERO),
        }
    }
}

fn parse_config_file(path: &str) -> CliResult<BTreeMap<String, String>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config '{path}': {e}")))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::usage(format!(
                "config '{path}' line {}: expected key = value",
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn parse_f64(s: &str, what: &str) -> CliResult<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| CliError::usage(format!("invalid number '{s}' for {what}")))
}

/// "re,im" or a bare real.
pub fn parse_complex(s: &str, what: &str) -> CliResult<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [re] => Ok(Complex64::new(parse_f64(re, what)?, 0.0)),
        [re, im] => Ok(Complex64::new(parse_f64(re, what)?, parse_f64(im, what)?)),
        _ => Err(CliError::usage(format!(
            "invalid value '{s}' for {what}: expected re,im"
        ))),
    }
}

/// "a,b,c,d" components of a + bi + cj + dk.
pub fn parse_quat(s: &str, what: &str) -> CliResult<Quaternion> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::usage(format!(
            "invalid value '{s}' for {what}: expected a,b,c,d"
        )));
    }
    Ok(Quaternion::from_components(
        parse_f64(parts[0], what)?,
        parse_f64(parts[1], what)?,
        parse_f64(parts[2], what)?,
        parse_f64(parts[3], what)?,
    ))
}

fn parse_window(s: &str) -> CliResult<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::usage(format!(
            "invalid window '{s}': expected lo,hi"
        )));
    }
    let lo = parse_f64(parts[0], "window")?;
    let hi = parse_f64(parts[1], "window")?;
    if lo >= hi {
        return Err(CliError::usage(format!("invalid window '{s}': lo >= hi")));
    }
    Ok((lo, hi))
}
