//! Cross-checks π algorithms against each other digit for digit.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use picalc_core::{fx_to_decimal, BigInt, FixedReal, Natural, PrecisionContext};

use crate::algo::{compute_pi, PiAlgorithm};
use crate::error::CliError;

const NEIGHBORHOOD: usize = 10;

/// Number of leading fractional digits on which two renderings agree; zero
/// when the integer parts differ.
pub fn agreement_prefix(a: &str, b: &str) -> u64 {
    let (Some((ai, af)), Some((bi, bf))) = (a.split_once('.'), b.split_once('.')) else {
        return 0;
    };
    if ai != bi {
        return 0;
    }
    af.bytes().zip(bf.bytes()).take_while(|(x, y)| x == y).count() as u64
}

/// One algorithm's digits and timing.
#[derive(Debug, Clone)]
pub struct Rendering {
    pub label: String,
    pub digits: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAgreement {
    pub left: usize,
    pub right: usize,
    pub agreement: u64,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub digits: u64,
    pub renderings: Vec<Rendering>,
    pub pairs: Vec<PairAgreement>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(|p| p.agreement >= self.digits)
    }

    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "verify: {} digits, {} algorithms", self.digits, self.renderings.len())?;
        let width = self.renderings.iter().map(|r| r.label.len()).max().unwrap_or(0);
        for r in &self.renderings {
            writeln!(out, "  {:<width$}  {:>9.3} s", r.label, r.seconds)?;
        }
        writeln!(out, "pairwise agreement (fractional digits):")?;
        for p in &self.pairs {
            let (l, r) = (&self.renderings[p.left], &self.renderings[p.right]);
            let mark = if p.agreement >= self.digits { "ok" } else { "MISMATCH" };
            writeln!(out, "  {:<width$}  {:<width$}  {:>8}  {mark}", l.label, r.label, p.agreement)?;
        }
        for p in self.pairs.iter().filter(|p| p.agreement < self.digits) {
            let (l, r) = (&self.renderings[p.left], &self.renderings[p.right]);
            let pos = p.agreement as usize + 1;
            writeln!(out, "first difference between {} and {} at fractional digit {pos}:", l.label, r.label)?;
            writeln!(out, "  {:<width$}  {}", l.label, neighborhood(&l.digits, pos))?;
            writeln!(out, "  {:<width$}  {}", r.label, neighborhood(&r.digits, pos))?;
        }
        if self.passed() {
            writeln!(out, "PASS: all {} pairs agree on {} digits", self.pairs.len(), self.digits)
        } else {
            let bad = self.pairs.iter().filter(|p| p.agreement < self.digits).count();
            writeln!(out, "FAIL: {bad} of {} pairs disagree", self.pairs.len())
        }
    }
}

// Digits around fractional position `pos` (1-based), the differing digit bracketed.
fn neighborhood(s: &str, pos: usize) -> String {
    let frac = s.split_once('.').map_or(s, |(_, f)| f);
    if pos > frac.len() {
        return "(integer part differs)".into();
    }
    let start = pos.saturating_sub(NEIGHBORHOOD + 1);
    let end = (pos + NEIGHBORHOOD).min(frac.len());
    format!("...{}[{}]{}...", &frac[start..pos - 1], &frac[pos - 1..pos], &frac[pos..end])
}

/// Flips one whole limb in the middle of the mantissa; used to prove that
/// verification notices a corrupted result.
pub fn inject_fault(x: &FixedReal) -> FixedReal {
    let mut limbs = x.mantissa().magnitude().limbs().to_vec();
    let i = limbs.len() / 2;
    if let Some(l) = limbs.get_mut(i) {
        *l = !*l;
    }
    let mag = Natural::from_limbs(limbs);
    FixedReal::from_parts(BigInt::from_parts(x.is_negative(), mag), x.scale_bits())
}

/// Computes π with every algorithm (up to `jobs` at a time) and compares
/// all pairs. `fault` names an algorithm whose result gets corrupted.
pub fn run_verify(
    algos: &[PiAlgorithm],
    ctx: &PrecisionContext,
    jobs: usize,
    fault: Option<&str>,
) -> Result<VerifyReport, CliError> {
    if algos.is_empty() {
        return Err(CliError::Usage("no algorithms selected".into()));
    }
    if let Some(target) = fault {
        if !algos.iter().any(|a| a.label() == target) {
            return Err(CliError::Usage(format!("fault target `{target}` is not among the selected algorithms")));
        }
    }
    let digits = ctx.decimal_digits();
    let render = |algo: &PiAlgorithm| -> Result<Rendering, CliError> {
        let start = Instant::now();
        let mut value = compute_pi(algo, ctx)?.value;
        let seconds = start.elapsed().as_secs_f64();
        if fault == Some(algo.label().as_str()) {
            value = inject_fault(&value);
        }
        Ok(Rendering { label: algo.label(), digits: fx_to_decimal(&value, digits)?, seconds })
    };

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<Rendering, CliError>>>> = Mutex::new(vec![None; algos.len()]);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, algos.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(algo) = algos.get(i) else { break };
                let r = render(algo);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let renderings = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every algorithm was scheduled"))
        .collect::<Result<Vec<_>, _>>()?;

    let mut pairs = Vec::new();
    for left in 0..renderings.len() {
        for right in left + 1..renderings.len() {
            let agreement = agreement_prefix(&renderings[left].digits, &renderings[right].digits);
            pairs.push(PairAgreement { left, right, agreement });
        }
    }
    Ok(VerifyReport { digits, renderings, pairs })
}
