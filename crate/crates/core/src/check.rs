//! Randomized equivalence between the closed-form interval operations and
//! their grid computations.
//!
//! Endpoints are integers in `[-5, 5]`. Rays and lines are truncated at the
//! edges of padded windows, so results are compared on the integer points of
//! `[-10, 10]` only, where truncation cannot reach.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::barcode::Barcode;
use crate::error::{Error, Result};
use crate::interval::{self, Endpoint, Interval, MaybeInterval, Shape};
use crate::oracle::{
    decompose, grid_gr_tensor, grid_nat_hom_dim, grid_resolution_ext1, grid_resolution_sh_ext1,
    grid_resolution_tor1, grid_sh_tensor, grid_sheaf_hom, grid_underline_hom, Fp, Layout, Window,
};

/// Endpoints are drawn from `[-ENDPOINT_RANGE, ENDPOINT_RANGE]`.
pub const ENDPOINT_RANGE: i64 = 5;
/// Results are compared on the integer points of `[-COMPARE_RANGE, COMPARE_RANGE]`.
pub const COMPARE_RANGE: i64 = 10;

/// The operations covered by the equivalence suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckedOp {
    GrTensor,
    ShTensor,
    UnderlineHom,
    HomDim,
    GrTor1,
    GrExt1,
    ShExt1,
    SheafHom,
}

impl CheckedOp {
    pub const ALL: [CheckedOp; 8] = [
        CheckedOp::GrTensor,
        CheckedOp::ShTensor,
        CheckedOp::UnderlineHom,
        CheckedOp::HomDim,
        CheckedOp::GrTor1,
        CheckedOp::GrExt1,
        CheckedOp::ShExt1,
        CheckedOp::SheafHom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckedOp::GrTensor => "gr_tensor",
            CheckedOp::ShTensor => "sh_tensor",
            CheckedOp::UnderlineHom => "underline_hom",
            CheckedOp::HomDim => "hom_dim",
            CheckedOp::GrTor1 => "gr_tor1",
            CheckedOp::GrExt1 => "gr_ext1",
            CheckedOp::ShExt1 => "sh_ext1",
            CheckedOp::SheafHom => "sheaf_hom",
        }
    }

    /// Padding for each operand. Tensors move supports up, so both factors
    /// extend far to the right; homs subtract the source from the target, so
    /// the target extends far to the left instead.
    pub fn layout(self) -> Layout {
        match self {
            CheckedOp::GrTensor | CheckedOp::GrTor1 => Layout::uniform(Window::line(-16, 27)),
            CheckedOp::UnderlineHom | CheckedOp::GrExt1 => Layout {
                first: Window::line(-16, 27),
                second: Window::line(-27, 16),
                ambient: Window::line(-27, 27),
            },
            CheckedOp::ShTensor | CheckedOp::HomDim | CheckedOp::SheafHom | CheckedOp::ShExt1 => {
                Layout::uniform(Window::line(-16, 16))
            }
        }
    }

    /// Whether the closed form covers the pair of shapes.
    fn supports(self, first: Shape, second: Shape) -> bool {
        match self {
            CheckedOp::GrTor1 => !(first == Shape::DownRay && second == Shape::DownRay),
            CheckedOp::GrExt1 | CheckedOp::ShExt1 => matches!(first, Shape::Bar | Shape::UpRay),
            _ => true,
        }
    }

    /// The closed form, as a barcode on the comparison grid or a dimension.
    pub fn formula(self, i: &Interval, j: &Interval) -> Result<Outcome> {
        let bars = |m: MaybeInterval| Outcome::Bars(to_barcode(m).restrict_to_grid(-COMPARE_RANGE, COMPARE_RANGE));
        Ok(match self {
            CheckedOp::GrTensor => bars(interval::gr_tensor(i, j)?),
            CheckedOp::ShTensor => bars(interval::sh_tensor(i, j)),
            CheckedOp::UnderlineHom => bars(interval::underline_hom(i, j)?),
            CheckedOp::HomDim => Outcome::Dim(interval::hom_dim(i, j)?),
            CheckedOp::GrTor1 => bars(interval::gr_tor1(i, j)?),
            CheckedOp::GrExt1 => bars(interval::gr_ext1(i, j)?),
            CheckedOp::ShExt1 => bars(interval::sh_ext1(i, j)?),
            CheckedOp::SheafHom => bars(interval::sheaf_hom(i, j)?),
        })
    }

    /// The grid computation, read back on the comparison grid.
    pub fn oracle(self, i: &Interval, j: &Interval, field: Fp) -> Result<Outcome> {
        let layout = self.layout();
        let first = || layout.realize_first(&Barcode::new(vec![*i]), field);
        let second = || layout.realize_second(&Barcode::new(vec![*j]), field);
        let module = match self {
            CheckedOp::GrTensor => grid_gr_tensor(&first()?, &second()?)?,
            CheckedOp::ShTensor => grid_sh_tensor(&first()?, &second()?)?,
            CheckedOp::UnderlineHom => grid_underline_hom(&first()?, &second()?)?,
            CheckedOp::HomDim => return Ok(Outcome::Dim(grid_nat_hom_dim(&first()?, &second()?)?)),
            CheckedOp::GrTor1 => grid_resolution_tor1(i, j, &layout, field)?,
            CheckedOp::GrExt1 => grid_resolution_ext1(i, j, &layout, field)?,
            CheckedOp::ShExt1 => grid_resolution_sh_ext1(i, j, &layout, field)?,
            CheckedOp::SheafHom => grid_sheaf_hom(&first()?, &second()?)?,
        };
        Ok(Outcome::Bars(decompose(&module).restrict_to_grid(-COMPARE_RANGE, COMPARE_RANGE)))
    }
}

impl fmt::Display for CheckedOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckedOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckedOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown operation {s:?}")))
    }
}

fn to_barcode(m: MaybeInterval) -> Barcode {
    match m {
        MaybeInterval::Zero => Barcode::empty(),
        MaybeInterval::Interval(i) => Barcode::new(vec![i]),
    }
}

/// What one side of a comparison produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Bars(Barcode),
    Dim(usize),
}

impl Outcome {
    pub fn to_json(&self) -> Value {
        match self {
            Outcome::Bars(b) => Value::Array(b.iter().map(|i| Value::String(i.to_string())).collect()),
            Outcome::Dim(d) => json!(d),
        }
    }
}

/// A random interval with integer endpoints in the sampling range. Only
/// `sh_tensor` sees closedness other than `[lo,hi)`.
pub fn random_interval(rng: &mut impl Rng, shape: Shape, any_closedness: bool) -> Interval {
    let r = ENDPOINT_RANGE;
    let (lo, hi) = loop {
        let (x, y) = (rng.random_range(-r..=r), rng.random_range(-r..=r));
        if x < y || shape != Shape::Bar {
            break (x, y);
        }
    };
    let (lo, hi) = match shape {
        Shape::Bar => (Endpoint::from(lo), Endpoint::from(hi)),
        Shape::UpRay => (Endpoint::from(lo), Endpoint::PosInf),
        Shape::DownRay => (Endpoint::NegInf, Endpoint::from(hi)),
        Shape::Line => (Endpoint::NegInf, Endpoint::PosInf),
    };
    if !any_closedness {
        return Interval::new(lo, lo.is_finite(), hi, false).expect("lo < hi");
    }
    loop {
        let lo_closed = lo.is_finite() && rng.random_bool(0.5);
        let hi_closed = hi.is_finite() && rng.random_bool(0.5);
        if let Ok(i) = Interval::new(lo, lo_closed, hi, hi_closed) {
            return i;
        }
    }
}

fn random_shape(rng: &mut impl Rng) -> Shape {
    // Bars carry most of the case analysis, so they are drawn half the time.
    match rng.random_range(0..6) {
        0..=2 => Shape::Bar,
        3 => Shape::UpRay,
        4 => Shape::DownRay,
        _ => Shape::Line,
    }
}

/// A random operand pair for `op` within its supported shapes.
pub fn random_pair(op: CheckedOp, rng: &mut impl Rng) -> (Interval, Interval) {
    let (s, t) = loop {
        let (s, t) = (random_shape(rng), random_shape(rng));
        if op.supports(s, t) {
            break (s, t);
        }
    };
    let any = op == CheckedOp::ShTensor;
    (random_interval(rng, s, any), random_interval(rng, t, any))
}

/// Suite parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub cases: usize,
    pub seed: u64,
    pub primes: Vec<u32>,
    pub ops: Vec<CheckedOp>,
}

impl CheckConfig {
    pub fn new(cases: usize, seed: u64, primes: Vec<u32>) -> Self {
        CheckConfig {
            cases,
            seed,
            primes,
            ops: CheckedOp::ALL.to_vec(),
        }
    }
}

/// The first disagreement found for an operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub op: CheckedOp,
    pub prime: u32,
    pub case: usize,
    pub first: Interval,
    pub second: Interval,
    pub formula: Outcome,
    pub oracle: Outcome,
}

impl Mismatch {
    pub fn to_json(&self) -> Value {
        json!({
            "op": self.op.name(),
            "prime": self.prime,
            "case": self.case,
            "first": self.first.to_string(),
            "second": self.second.to_string(),
            "formula": self.formula.to_json(),
            "oracle": self.oracle.to_json(),
        })
    }
}

/// Per-operation tallies for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpResult {
    pub op: CheckedOp,
    pub prime: u32,
    pub agreed: usize,
    pub cases: usize,
    pub first_mismatch: Option<Mismatch>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub seed: u64,
    pub results: Vec<OpResult>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.agreed == r.cases)
    }

    pub fn first_mismatch(&self) -> Option<&Mismatch> {
        self.results.iter().find_map(|r| r.first_mismatch.as_ref())
    }

    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .results
            .iter()
            .map(|r| {
                json!({
                    "op": r.op.name(),
                    "prime": r.prime,
                    "cases": r.cases,
                    "agreed": r.agreed,
                })
            })
            .collect();
        json!({
            "generator": "ChaCha8",
            "seed": self.seed,
            "results": results,
            "first_mismatch": self.first_mismatch().map(Mismatch::to_json),
            "passed": self.passed(),
        })
    }
}

/// The case stream for `op`: ChaCha8 seeded with `seed`, on a stream chosen
/// by the operation, so each operation's cases do not depend on which other
/// operations run.
pub fn case_rng(seed: u64, op: CheckedOp) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stream = CheckedOp::ALL.iter().position(|&o| o == op).expect("listed") as u64;
    rng.set_stream(stream);
    rng
}

fn run_op(op: CheckedOp, prime: u32, config: &CheckConfig) -> Result<OpResult> {
    let field = Fp::new(prime)?;
    let mut rng = case_rng(config.seed, op);
    let mut result = OpResult {
        op,
        prime,
        agreed: 0,
        cases: config.cases,
        first_mismatch: None,
    };
    for case in 0..config.cases {
        let (i, j) = random_pair(op, &mut rng);
        let formula = op.formula(&i, &j)?;
        let oracle = op.oracle(&i, &j, field)?;
        if formula == oracle {
            result.agreed += 1;
        } else if result.first_mismatch.is_none() {
            result.first_mismatch = Some(Mismatch {
                op,
                prime,
                case,
                first: i,
                second: j,
                formula,
                oracle,
            });
        }
    }
    Ok(result)
}

/// Runs every (operation, prime) pair on its own thread; results are listed
/// in configuration order regardless of completion order.
pub fn run_check(config: &CheckConfig) -> Result<CheckReport> {
    let jobs: Vec<(CheckedOp, u32)> = config
        .primes
        .iter()
        .flat_map(|&p| config.ops.iter().map(move |&op| (op, p)))
        .collect();
    let results = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(op, p)| scope.spawn(move || run_op(op, p, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(CheckReport {
        seed: config.seed,
        results,
    })
}
