//! Built-in sequence generators for the test corpus and the CLI.

use super::{Scale, SequenceWindow};
use crate::error::{Error, Result};
use crate::ideal::Arity;
use crate::scalar::Real;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Description of a built-in generator. Generation is a pure function of the
/// spec and the scale.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    /// `x_n = (-1)^n`
    Alt,
    /// `x_n = (-1)^n + 1/n`
    AltDecay,
    /// `x_n = (-1)^n · n` (the canonical unbounded example)
    AltLinear,
    /// `x_n = 1` on perfect squares, `0` elsewhere.
    SparseSpike,
    /// Cycles through a finite point list.
    Cycle { points: Vec<Vec<f64>> },
    /// Base generator plus seeded uniform noise in `[-amplitude, amplitude]^k`
    /// at every index.
    Noisy {
        base: Box<GeneratorSpec>,
        amplitude: f64,
        seed: u64,
    },
    /// Base generator plus seeded noise only at perfect-square indices
    /// (a density-zero support).
    SpikeNoisy {
        base: Box<GeneratorSpec>,
        amplitude: f64,
        seed: u64,
    },
    /// Double sequence `x_{n,m} = (-1)^{n+m}`.
    DoubleAltSum,
    /// Double sequence `x_{n,m} = (-1)^n` (constant along rows' columns).
    DoubleAltRow,
    /// Double sequence `x_{n,m} = 1/(n+m)`.
    DoubleDecay,
}

impl GeneratorSpec {
    pub fn arity(&self) -> Arity {
        match self {
            GeneratorSpec::Alt
            | GeneratorSpec::AltDecay
            | GeneratorSpec::AltLinear
            | GeneratorSpec::SparseSpike
            | GeneratorSpec::Cycle { .. } => Arity::Single,
            GeneratorSpec::Noisy { base, .. } | GeneratorSpec::SpikeNoisy { base, .. } => {
                base.arity()
            }
            GeneratorSpec::DoubleAltSum
            | GeneratorSpec::DoubleAltRow
            | GeneratorSpec::DoubleDecay => Arity::Double,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            GeneratorSpec::Cycle { points } => points.first().map_or(1, |p| p.len()),
            GeneratorSpec::Noisy { base, .. } | GeneratorSpec::SpikeNoisy { base, .. } => {
                base.dim()
            }
            _ => 1,
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            GeneratorSpec::Cycle { points } => {
                if points.is_empty() {
                    return Err(Error::parameter("cycle", "needs at least one point"));
                }
                let dim = points[0].len();
                if dim == 0 || points.iter().any(|p| p.len() != dim) {
                    return Err(Error::parameter(
                        "cycle",
                        "points must share a positive dimension",
                    ));
                }
                if points.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(Error::parameter("cycle", "points must be finite"));
                }
                Ok(())
            }
            GeneratorSpec::Noisy {
                base, amplitude, ..
            }
            | GeneratorSpec::SpikeNoisy {
                base, amplitude, ..
            } => {
                if !(amplitude.is_finite() && *amplitude >= 0.0) {
                    return Err(Error::parameter("amplitude", "must be finite and >= 0"));
                }
                base.validate()
            }
            _ => Ok(()),
        }
    }
}

fn is_square(n: usize) -> bool {
    let r = (n as f64).sqrt().round() as usize;
    r * r == n
}

/// Base value at a 1-based single index.
fn single_value(spec: &GeneratorSpec, n: usize) -> Vec<f64> {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    match spec {
        GeneratorSpec::Alt => vec![sign],
        GeneratorSpec::AltDecay => vec![sign + 1.0 / n as f64],
        GeneratorSpec::AltLinear => vec![sign * n as f64],
        GeneratorSpec::SparseSpike => vec![if is_square(n) { 1.0 } else { 0.0 }],
        GeneratorSpec::Cycle { points } => points[(n - 1) % points.len()].clone(),
        _ => unreachable!("single_value on non-single generator"),
    }
}

/// Base value at a 1-based pair index.
fn pair_value(spec: &GeneratorSpec, n: usize, m: usize) -> Vec<f64> {
    match spec {
        GeneratorSpec::DoubleAltSum => vec![if (n + m) % 2 == 0 { 1.0 } else { -1.0 }],
        GeneratorSpec::DoubleAltRow => vec![if n % 2 == 0 { 1.0 } else { -1.0 }],
        GeneratorSpec::DoubleDecay => vec![1.0 / (n + m) as f64],
        _ => unreachable!("pair_value on non-double generator"),
    }
}

/// Produce the window of the first `scale` terms (or the `[1, scale]^2`
/// square for double generators). Deterministic: the same spec and scale
/// always yield the same window.
pub fn generate<T: Real>(spec: &GeneratorSpec, scale: usize) -> Result<SequenceWindow<T>> {
    spec.validate()?;
    if scale == 0 {
        return Err(Error::parameter("scale", "must be at least 1"));
    }

    // Peel noise wrappers so noise is applied after base generation.
    let (base, noise) = match spec {
        GeneratorSpec::Noisy {
            base,
            amplitude,
            seed,
        } => (base.as_ref(), Some((*amplitude, *seed, false))),
        GeneratorSpec::SpikeNoisy {
            base,
            amplitude,
            seed,
        } => (base.as_ref(), Some((*amplitude, *seed, true))),
        other => (other, None),
    };
    if matches!(
        base,
        GeneratorSpec::Noisy { .. } | GeneratorSpec::SpikeNoisy { .. }
    ) {
        return Err(Error::parameter("noisy", "noise wrappers do not nest"));
    }

    let dim = base.dim();
    let window_scale = match base.arity() {
        Arity::Single => Scale::Single { n: scale },
        Arity::Double => Scale::Double { m: scale },
    };

    let mut values: Vec<f64> = Vec::with_capacity(dim * window_scale.count());
    match window_scale {
        Scale::Single { n } => {
            for i in 1..=n {
                values.extend(single_value(base, i));
            }
        }
        Scale::Double { m } => {
            for n in 1..=m {
                for k in 1..=m {
                    values.extend(pair_value(base, n, k));
                }
            }
        }
    }

    if let Some((amplitude, seed, on_squares_only)) = noise {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let count = window_scale.count();
        for pos in 0..count {
            // Draw unconditionally so the stream is independent of the mask.
            let draws: Vec<f64> = (0..dim)
                .map(|_| rng.gen_range(-1.0f64..=1.0))
                .collect();
            let noisy_here = if on_squares_only {
                match window_scale {
                    Scale::Single { .. } => is_square(pos + 1),
                    Scale::Double { m } => {
                        // Square indices in the row-major enumeration: a
                        // density-zero set of the corner window as well.
                        is_square(pos / m + 1) && is_square(pos % m + 1)
                    }
                }
            } else {
                true
            };
            if noisy_here && amplitude > 0.0 {
                for j in 0..dim {
                    values[pos * dim + j] += amplitude * draws[j];
                }
            }
        }
    }

    SequenceWindow::new(
        dim,
        window_scale,
        values.into_iter().map(T::of_f64).collect(),
        describe(spec),
    )
}

fn describe(spec: &GeneratorSpec) -> String {
    match spec {
        GeneratorSpec::Alt => "alt".to_string(),
        GeneratorSpec::AltDecay => "alt_decay".to_string(),
        GeneratorSpec::AltLinear => "alt_linear".to_string(),
        GeneratorSpec::SparseSpike => "sparse_spike".to_string(),
        GeneratorSpec::Cycle { points } => {
            let pts: Vec<String> = points
                .iter()
                .map(|p| {
                    let coords: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                    format!("({})", coords.join(","))
                })
                .collect();
            format!("cycle({})", pts.join(";"))
        }
        GeneratorSpec::Noisy {
            base,
            amplitude,
            seed,
        } => format!("noisy({},{amplitude},{seed})", describe(base)),
        GeneratorSpec::SpikeNoisy {
            base,
            amplitude,
            seed,
        } => format!("spike_noisy({},{amplitude},{seed})", describe(base)),
        GeneratorSpec::DoubleAltSum => "double_alt".to_string(),
        GeneratorSpec::DoubleAltRow => "double_row_alt".to_string(),
        GeneratorSpec::DoubleDecay => "double_decay".to_string(),
    }
}

/// Parse a generator spec string, e.g. `alt`, `cycle((0,0);(1,0);(0,1))`,
/// `noisy(alt,0.25,42)`.
pub fn parse_generator(s: &str) -> Result<GeneratorSpec> {
    let s = s.trim();
    let unknown = || Error::UnknownGenerator {
        name: s.to_string(),
    };
    match s.to_ascii_lowercase().as_str() {
        "alt" => return Ok(GeneratorSpec::Alt),
        "alt_decay" => return Ok(GeneratorSpec::AltDecay),
        "alt_linear" => return Ok(GeneratorSpec::AltLinear),
        "sparse_spike" => return Ok(GeneratorSpec::SparseSpike),
        "double_alt" => return Ok(GeneratorSpec::DoubleAltSum),
        "double_row_alt" => return Ok(GeneratorSpec::DoubleAltRow),
        "double_decay" => return Ok(GeneratorSpec::DoubleDecay),
        _ => {}
    }
    let open = s.find('(').ok_or_else(unknown)?;
    if !s.ends_with(')') {
        return Err(unknown());
    }
    let head = s[..open].to_ascii_lowercase();
    let args = &s[open + 1..s.len() - 1];
    match head.as_str() {
        "cycle" => {
            let mut points = Vec::new();
            for part in args.split(';') {
                let part = part.trim();
                let inner = part
                    .strip_prefix('(')
                    .and_then(|p| p.strip_suffix(')'))
                    .unwrap_or(part);
                let coords: Result<Vec<f64>> = inner
                    .split(',')
                    .map(|c| {
                        c.trim().parse::<f64>().map_err(|_| Error::parameter(
                            "cycle",
                            format!("`{c}` is not a number"),
                        ))
                    })
                    .collect();
                points.push(coords?);
            }
            let spec = GeneratorSpec::Cycle { points };
            spec.validate()?;
            Ok(spec)
        }
        "noisy" | "spike_noisy" => {
            // base spec may contain commas; the last two fields are numbers.
            let mut depth = 0i32;
            let mut cuts = Vec::new();
            for (i, c) in args.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => cuts.push(i),
                    _ => {}
                }
            }
            if cuts.len() < 2 {
                return Err(Error::parameter(
                    "noisy",
                    "expected noisy(base,amplitude,seed)",
                ));
            }
            let (c1, c2) = (cuts[cuts.len() - 2], cuts[cuts.len() - 1]);
            let base = parse_generator(&args[..c1])?;
            let amplitude: f64 = args[c1 + 1..c2]
                .trim()
                .parse()
                .map_err(|_| Error::parameter("amplitude", "not a number"))?;
            let seed: u64 = args[c2 + 1..]
                .trim()
                .parse()
                .map_err(|_| Error::parameter("seed", "not an integer"))?;
            let spec = if head == "noisy" {
                GeneratorSpec::Noisy {
                    base: Box::new(base),
                    amplitude,
                    seed,
                }
            } else {
                GeneratorSpec::SpikeNoisy {
                    base: Box::new(base),
                    amplitude,
                    seed,
                }
            };
            spec.validate()?;
            Ok(spec)
        }
        _ => Err(unknown()),
    }
}
