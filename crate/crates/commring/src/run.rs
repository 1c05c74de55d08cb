//! Dispatch from a [`Request`] to the core operations.
//!
//! Every answer is checked again from scratch before the report says
//! `pass`: decompositions are recomposed, witnesses are re-evaluated and
//! certificates carry their own verdicts.

use commring_core::matrix::{
    bounded_decomposition, corner_combine, corollary_bound, is_sum_of_commutators_iff_trace,
    trace_of_commutator_sum, trace_witness, two_commutator_decomposition,
};
use commring_core::shift::{commutator_preimage, shift_model_certificate, shift_operators, verify_window};
use commring_core::{obstruction, weyl};
use commring_core::{CommutatorSum, Element, FiniteOperator, IdempotentSplit, MatrixElement, Ring, RingKind};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::parse::{parse_element, parse_ring, parse_sizes, parse_sum, parse_triples};
use crate::report::{Report, SEPARATOR};
use crate::request::{Command, Request};
use crate::InputError;

type Run = Result<Report, InputError>;

/// Top-left corner of a lazy operator shown in shift reports.
const PREVIEW: usize = 6;

pub fn run(req: &Request) -> Run {
    let mut report = Report::new(req);
    match req.command {
        Command::Decompose => decompose(req, &mut report)?,
        Command::TraceSum => trace_sum(req, &mut report)?,
        Command::TraceWitness => witness(req, &mut report)?,
        Command::Bounded => bounded(req, &mut report)?,
        Command::Corner => corner(req, &mut report)?,
        Command::WeylEval => weyl_eval(req, &mut report)?,
        Command::WeylWitness => weyl_witness(req, &mut report)?,
        Command::WeylIntegrate => weyl_integrate(req, &mut report)?,
        Command::ModpCheck => modp(req, &mut report)?,
        Command::LemmaCheck => lemma(req, &mut report)?,
        Command::Counterexample => counterexample(req, &mut report)?,
        Command::ShiftVerify => shift(req, &mut report)?,
        Command::Replay => replay(req, &mut report)?,
    }
    Ok(report)
}

fn need(msg: &str) -> InputError {
    InputError::Request(msg.to_string())
}

fn ring_of(req: &Request) -> Result<Ring, InputError> {
    let text = req.ring.as_deref().ok_or_else(|| need("--ring is required"))?;
    Ok(parse_ring(text)?)
}

fn inputs(req: &Request, min: usize, max: usize, what: &str) -> Result<Vec<String>, InputError> {
    let n = req.inputs.len();
    if n < min || n > max {
        return Err(InputError::Request(format!("{} expects {what}; got {n} input field(s)", req.command)));
    }
    Ok(req.inputs.clone())
}

fn matrix_ring(req: &Request) -> Result<(Ring, Ring, usize), InputError> {
    let ring = ring_of(req)?;
    match ring.kind() {
        RingKind::Matrix { base, n } => Ok((ring.clone(), base.clone(), *n)),
        _ => Err(InputError::Request(format!("{} needs a matrix ring, got {ring}", req.command))),
    }
}

fn weyl_ring(req: &Request) -> Result<Ring, InputError> {
    let ring = ring_of(req)?;
    match ring.kind() {
        RingKind::Weyl { .. } => Ok(ring),
        _ => Err(InputError::Request(format!("{} needs a Weyl ring, got {ring}", req.command))),
    }
}

fn parse_matrix(text: &str, ring: &Ring) -> Result<MatrixElement, InputError> {
    Ok(MatrixElement::from_element(&parse_element(text, ring)?)?)
}

fn pair(p: &MatrixElement, q: &MatrixElement) -> String {
    format!("({p}, {q})")
}

fn decompose(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let (ring, _, _) = matrix_ring(req)?;
    let fields = inputs(req, 1, 1, "one matrix")?;
    let a = parse_matrix(&fields[0], &ring)?;
    let d = two_commutator_decomposition(&a)?;
    out.line("c", &d.c);
    out.line("pair 1", pair(&d.first.0, &d.first.1));
    out.line("pair 2", pair(&d.second.0, &d.second.1));
    out.line("sum", d.to_sum());
    out.check("recomposition", d.recompose()? == a && d.to_sum().evaluate() == *a.element());
    Ok(())
}

fn trace_sum(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let (ring, base, _) = matrix_ring(req)?;
    let fields = inputs(req, 2, 2, "two matrices A; B")?;
    let a = parse_matrix(&fields[0], &ring)?;
    let b = parse_matrix(&fields[1], &ring)?;
    let sum = trace_of_commutator_sum(&a, &b)?;
    let value = sum.evaluate();
    out.line("sum", &sum);
    out.line("length", sum.len());
    out.line("value", &value);
    let direct = a.commutator(&b)?.trace();
    out.check("value equals trace([A, B])", *value.value() == direct);
    out.line("trace([A, B])", base.display(&direct));
    Ok(())
}

fn witness(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let (_, base, n) = matrix_ring(req)?;
    let fields = inputs(req, 1, 1, "one commutator sum over the base ring")?;
    let sum = parse_sum(&fields[0], &base)?;
    let (a, b) = trace_witness(&sum, n)?;
    let value = sum.evaluate();
    out.line("a", &a);
    out.line("b", &b);
    out.line("value", &value);
    out.check("trace([A, B]) equals sum", a.commutator(&b)?.trace() == *value.value());
    Ok(())
}

fn bounded(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let (ring, base, n) = matrix_ring(req)?;
    let fields = inputs(req, 2, 2, "a matrix and a commutator sum for its trace")?;
    let a = parse_matrix(&fields[0], &ring)?;
    let trace_sum = parse_sum(&fields[1], &base)?;
    let sum = bounded_decomposition(&a, &trace_sum)?;
    let bound = corollary_bound(trace_sum.len(), n);
    out.line("sum", &sum);
    out.line("length", sum.len());
    out.line("bound", bound);
    out.check("recomposition", sum.evaluate() == *a.element());
    out.check("length within bound", sum.len() <= bound);
    let cert = is_sum_of_commutators_iff_trace(&a, Some(&sum), Some(&trace_sum))?;
    out.certificate(&cert);
    Ok(())
}

fn corner(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let (ring, base, n) = matrix_ring(req)?;
    if req.inputs.len() < 2 {
        return Err(need("corner expects r; block sizes; one commutator sum per corner"));
    }
    let r = parse_element(&req.inputs[0], &ring)?;
    let blocks = parse_sizes(&req.inputs[1])?;
    let split = IdempotentSplit::diagonal_blocks(&base, n, &blocks)?;
    if req.inputs.len() != 2 + split.len() {
        return Err(InputError::Request(format!(
            "corner expects {} corner sums, got {}",
            split.len(),
            req.inputs.len() - 2
        )));
    }
    let sums: Vec<CommutatorSum> = req.inputs[2..]
        .iter()
        .map(|t| parse_sum(t, &ring))
        .collect::<Result<_, _>>()?;
    let combined = corner_combine(&r, &split, &sums)?;
    let longest = sums.iter().map(CommutatorSum::len).max().unwrap_or(0);
    let bound = longest + split.len() - 1;
    out.line("sum", &combined);
    out.line("length", combined.len());
    out.line("bound", bound);
    out.check("recomposition", combined.evaluate() == r);
    out.check("length within bound", combined.len() <= bound);
    Ok(())
}

fn weyl_eval(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let ring = weyl_ring(req)?;
    let fields = inputs(req, 1, usize::MAX, "one or more expressions")?;
    let mut stable = true;
    for f in &fields {
        let e = parse_element(f, &ring)?;
        let printed = e.to_string();
        stable &= parse_element(&printed, &ring)? == e;
        out.line("value", printed);
    }
    out.check("normal form reparses", stable);
    Ok(())
}

fn weyl_witness(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let ring = weyl_ring(req)?;
    let fields = inputs(req, 1, 1, "one element s")?;
    let s = parse_element(&fields[0], &ring)?;
    let (n, t) = weyl::fresh_variable_witness(&s)?;
    out.line("index", n);
    out.line("t", &t);
    out.line("sum", format!("{{(x{n}, {t})}}"));
    let xn = weyl::x(&ring, n)?;
    out.check("[x_n, t] equals s", commring_core::commutator(&xn, &t)? == s);
    Ok(())
}

fn weyl_integrate(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let ring = weyl_ring(req)?;
    let fields = inputs(req, 1, 1, "one element f")?;
    let mut f = parse_element(&fields[0], &ring)?;
    if req.scaled {
        let d = weyl::antiderivative_denominator(&f)?;
        f = Element::new(ring.clone(), ring.scale_int(f.value(), &d))?;
        out.line("scale", &d);
        out.line("scaled f", &f);
    }
    let g = weyl::single_commutator_over_q(&f)?;
    out.line("g", &g);
    out.check("[x0, g] equals f", commring_core::commutator(&weyl::x(&ring, 0)?, &g)? == f);
    Ok(())
}

fn prime(req: &Request) -> Result<u64, InputError> {
    req.p.ok_or_else(|| need("--p is required"))
}

fn modp(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let p = prime(req)?;
    let ring = match &req.ring {
        Some(_) => weyl_ring(req)?,
        None => Ring::weyl(Ring::prime_field(p)?, Some(1))?,
    };
    let RingKind::Weyl { base, .. } = ring.kind() else {
        unreachable!("checked above")
    };
    let fields = inputs(req, 0, 1, "an optional coefficient r")?;
    let r = match fields.first() {
        Some(t) => parse_element(t, base)?,
        None => Element::one(base),
    };
    let cert = weyl::obstruction_certificate(&ring, &r, p)?;
    let (xm, ym) = weyl::mod_p_generators(base, p as usize)?;
    let size = p as usize;
    let bracket = xm.commutator(&ym)? == MatrixElement::identity(base, size)?;
    let tr = xm.mul(&ym)?.pow(p as u32 - 1).trace();
    out.line("x", &xm);
    out.line("y", &ym);
    out.line("trace((XY)^(p-1))", base.display(&tr));
    out.check("[X, Y] equals I", bracket);
    out.check("trace((XY)^(p-1)) equals p-1", tr == base.from_int(&BigInt::from(p - 1)));
    out.certificate(&cert);
    Ok(())
}

fn lemma(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let p = prime(req)?;
    inputs(req, 0, 0, "no input")?;
    let cert = if p <= obstruction::EXHAUSTIVE_MAX_PRIME {
        obstruction::lemma_exhaustive_check(p)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(req.seed);
        obstruction::lemma_sampled_check(p, req.samples, &mut rng)?
    };
    out.certificate(&cert);
    Ok(())
}

fn counterexample(req: &Request, out: &mut Report) -> Result<(), InputError> {
    if req.ring.is_none() {
        inputs(req, 0, 0, "no input without --ring")?;
        let cert = obstruction::not_commutator_certificate(req.p.unwrap_or(2))?;
        out.certificate(&cert);
        return Ok(());
    }
    let ring = ring_of(req)?;
    let fields = inputs(req, 3, 3, "three ideal elements x; y; z")?;
    let el = |t: &String| parse_element(t, &ring);
    let (x, y, z) = (el(&fields[0])?, el(&fields[1])?, el(&fields[2])?);
    let cert = obstruction::counterexample_certificate(&ring, &x, &y, &z)?;
    out.line("matrix", obstruction::build_counterexample_matrix(&ring, &x, &y, &z)?);
    out.certificate(&cert);
    Ok(())
}

fn shift(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let base = match &req.ring {
        Some(_) => ring_of(req)?,
        None => Ring::integers(),
    };
    let fields = inputs(req, 0, 1, "sparse triples (row, col, value), ...")?;
    let triples = match fields.first() {
        Some(t) => parse_triples(t, &base)?,
        None => Vec::new(),
    };
    let f = FiniteOperator::from_triples(&base, triples)?;
    let y = commutator_preimage(&f);
    let (x, _) = shift_operators(&base);
    out.line("f", &f);
    let k = PREVIEW.min(req.window);
    for i in 0..k {
        let row: Vec<String> = (0..k).map(|j| base.show(&y.entry(i, j))).collect();
        out.line(&format!("y row {i}"), row.join(" "));
    }
    let cert = verify_window(&x.commutator(&y), &f.to_lazy(), req.window)?;
    out.certificate(&cert);
    out.certificate(&shift_model_certificate(&base, req.window)?);
    Ok(())
}

/// Re-runs the request echoed in a saved report and compares the output
/// byte for byte.
fn replay(req: &Request, out: &mut Report) -> Result<(), InputError> {
    let path = req.replay.as_deref().ok_or_else(|| need("replay needs --replay FILE"))?;
    let saved = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_string(),
        source,
    })?;
    let header: Vec<&str> = saved.lines().take_while(|l| *l != SEPARATOR).collect();
    let original = Request::from_echo(header)?;
    if original.command == Command::Replay {
        return Err(need("a replay report cannot be replayed"));
    }
    let fresh = run(&original)?;
    let text = fresh.to_string();
    let saved_status = saved.lines().last().unwrap_or_default();
    out.line("replayed command", original.command);
    out.line("replayed status", fresh.outcome().as_str());
    out.line("recorded status", saved_status.strip_prefix("status: ").unwrap_or(saved_status));
    if let Some((line, (a, b))) = saved.lines().zip(text.lines()).enumerate().find(|(_, (a, b))| a != b) {
        out.line("first difference", format!("line {}: '{a}' vs '{b}'", line + 1));
    }
    out.check("byte-identical", saved == text);
    Ok(())
}
