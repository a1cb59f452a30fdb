//! Deterministic finite automata with output (DFAOs) over base-`k` digits.
//!
//! Reading direction is explicit. [`Direction::LsbFirst`] feeds the digits of
//! `n` from the `k^0` digit upward, [`Direction::MsbFirst`] from the leading
//! digit downward. Digit strings never carry leading zeros, so the value for
//! `n = 0` is undefined and states reached on zeros alone carry no output.
//!
//! LSB-first automata come from exploring the `k`-kernel of the sequence:
//! the state for the subsequence `n -> a(k^i n + j)` moves on digit `d` to
//! `n -> a(k^{i+1} n + j + d k^i)` and outputs `a(j)`. MSB-first automata
//! are derived from them by reversal and then minimized.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::inverse_mod_prime;
use crate::congruence::{CheckReport, ReportBuilder, StatementKind};
use crate::error::{Error, Result};
use crate::partitions::{d_minus1, require_odd_prime, s_km_fast};
use crate::series::TruncatedSeries;
use crate::valuation::{nu_p_i64, small_residue, y_z_sequences};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    LsbFirst,
    MsbFirst,
}

impl Direction {
    pub fn short_name(self) -> &'static str {
        match self {
            Direction::LsbFirst => "lsb",
            Direction::MsbFirst => "msb",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dfao {
    base: usize,
    outputs: Vec<Option<u32>>,
    transitions: Vec<Vec<usize>>,
    initial: usize,
    direction: Direction,
}

impl Dfao {
    /// Validates that the transition table is total over `0..base`.
    pub fn new(
        base: usize,
        outputs: Vec<Option<u32>>,
        transitions: Vec<Vec<usize>>,
        initial: usize,
        direction: Direction,
    ) -> Result<Self> {
        if base < 2 {
            return Err(Error::usage(format!("base must be at least 2, got {base}")));
        }
        let n = outputs.len();
        if transitions.len() != n || initial >= n {
            return Err(Error::usage("transition table does not match the state list"));
        }
        for row in &transitions {
            if row.len() != base || row.iter().any(|&t| t >= n) {
                return Err(Error::usage("transition table is not total"));
            }
        }
        Ok(Dfao { base, outputs, transitions, initial, direction })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn num_states(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn output(&self, state: usize) -> Option<u32> {
        self.outputs[state]
    }

    pub fn step(&self, state: usize, digit: usize) -> usize {
        self.transitions[state][digit]
    }

    /// Runs the canonical digits of `n >= 1` in the automaton's direction.
    pub fn eval(&self, n: u64) -> Result<Option<u32>> {
        if n == 0 {
            return Err(Error::usage("automata are evaluated on n >= 1"));
        }
        let k = self.base as u64;
        let mut ds = Vec::with_capacity(64);
        let mut rest = n;
        while rest > 0 {
            ds.push((rest % k) as usize);
            rest /= k;
        }
        if self.direction == Direction::MsbFirst {
            ds.reverse();
        }
        let end = ds.iter().fold(self.initial, |q, &d| self.transitions[q][d]);
        Ok(self.outputs[end])
    }

    /// Moore minimization followed by renumbering in breadth-first order
    /// from the initial state. Unreachable states are dropped.
    pub fn minimize(&self) -> Dfao {
        let reachable = self.reachable();
        let mut class: HashMap<usize, usize> = HashMap::new();
        let mut labels: BTreeMap<Option<u32>, usize> = BTreeMap::new();
        for &q in &reachable {
            let next = labels.len();
            let c = *labels.entry(self.outputs[q]).or_insert(next);
            class.insert(q, c);
        }
        let mut count = labels.len();
        loop {
            let mut signatures: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut refined = HashMap::new();
            for &q in &reachable {
                let sig = (class[&q], self.transitions[q].iter().map(|t| class[t]).collect());
                let next = signatures.len();
                refined.insert(q, *signatures.entry(sig).or_insert(next));
            }
            let new_count = signatures.len();
            class = refined;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut reps: HashMap<usize, usize> = HashMap::new();
        for &q in &reachable {
            reps.entry(class[&q]).or_insert(q);
        }
        let quotient_transitions: Vec<Vec<usize>> = (0..count)
            .map(|c| self.transitions[reps[&c]].iter().map(|t| class[t]).collect())
            .collect();
        let quotient_outputs: Vec<Option<u32>> = (0..count).map(|c| self.outputs[reps[&c]]).collect();
        renumber(self.base, &quotient_outputs, &quotient_transitions, class[&self.initial], self.direction)
    }

    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            for &t in &self.transitions[order[i]] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// MSB-first automaton for the same sequence.
    ///
    /// A state is the map `q -> out(δ(q, u^R))` for the prefix `u` read so
    /// far; reading `d` sends `F` to `q -> F(δ(q, d))`.
    pub fn to_msb_first(&self) -> Result<Dfao> {
        if self.direction != Direction::LsbFirst {
            return Err(Error::usage("reversal expects an LSB-first automaton"));
        }
        let start: Vec<Option<u32>> = self.outputs.clone();
        let mut index: HashMap<Vec<Option<u32>>, usize> = HashMap::new();
        let mut states = vec![start.clone()];
        index.insert(start, 0);
        let mut transitions: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let mut row = Vec::with_capacity(self.base);
            for d in 0..self.base {
                let f: Vec<Option<u32>> =
                    (0..self.num_states()).map(|q| states[i][self.transitions[q][d]]).collect();
                let id = match index.get(&f) {
                    Some(&id) => id,
                    None => {
                        states.push(f.clone());
                        index.insert(f, states.len() - 1);
                        states.len() - 1
                    }
                };
                row.push(id);
            }
            transitions.push(row);
            i += 1;
        }
        let outputs = states.iter().map(|f| f[self.initial]).collect();
        Ok(Dfao::new(self.base, outputs, transitions, 0, Direction::MsbFirst)?.minimize())
    }

    /// For an MSB-first automaton whose leading digit can be pre-applied:
    /// if `s = δ(start, 1)` satisfies `δ(s, d) = δ(start, d)` for every
    /// nonzero `d`, starting in `s` gives the same values on `n >= 1`.
    pub fn absorb_start(&self) -> Option<Dfao> {
        if self.direction != Direction::MsbFirst {
            return None;
        }
        let s = self.transitions[self.initial][1];
        let ok = (1..self.base).all(|d| self.transitions[s][d] == self.transitions[self.initial][d]);
        ok.then(|| {
            let moved = Dfao { initial: s, ..self.clone() };
            moved.minimize()
        })
    }
}

fn renumber(
    base: usize,
    outputs: &[Option<u32>],
    transitions: &[Vec<usize>],
    initial: usize,
    direction: Direction,
) -> Dfao {
    let mut order = vec![initial];
    let mut id: HashMap<usize, usize> = HashMap::from([(initial, 0)]);
    let mut i = 0;
    while i < order.len() {
        for &t in &transitions[order[i]] {
            if let std::collections::hash_map::Entry::Vacant(e) = id.entry(t) {
                e.insert(order.len());
                order.push(t);
            }
        }
        i += 1;
    }
    let outs = order.iter().map(|&q| outputs[q]).collect();
    let trans = order.iter().map(|&q| transitions[q].iter().map(|t| id[t]).collect()).collect();
    Dfao { base, outputs: outs, transitions: trans, initial: 0, direction }
}

/// Comparison horizon for kernel exploration.
const KERNEL_HORIZON: u64 = 256;

/// LSB-first automaton for `eval` by exploring its `k`-kernel, identifying
/// kernel sequences by their first [`KERNEL_HORIZON`] values. `eval(0)` is
/// expected to be `None`.
pub fn kernel_automaton(base: usize, max_states: usize, eval: impl Fn(u64) -> Option<u32>) -> Result<Dfao> {
    let k = base as u64;
    let sample = |power: u64, j: u64| -> Vec<Option<u32>> {
        (0..KERNEL_HORIZON).map(|n| eval(power * n + j)).collect()
    };
    let mut index: HashMap<Vec<Option<u32>>, usize> = HashMap::new();
    let mut queue: VecDeque<(u64, u64)> = VecDeque::new();
    let mut outputs = Vec::new();
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    index.insert(sample(1, 0), 0);
    queue.push_back((1, 0));
    outputs.push(eval(0));
    transitions.push(Vec::new());
    while let Some((power, j)) = queue.pop_front() {
        let state = index[&sample(power, j)];
        let next_power = power
            .checked_mul(k)
            .filter(|p| p.checked_mul(KERNEL_HORIZON).is_some())
            .ok_or_else(|| Error::domain("kernel exploration exceeded the index range"))?;
        let mut row = Vec::with_capacity(base);
        for d in 0..k {
            let jj = j + d * power;
            let key = sample(next_power, jj);
            let id = match index.get(&key) {
                Some(&id) => id,
                None => {
                    if outputs.len() == max_states {
                        return Err(Error::domain(format!("kernel has more than {max_states} elements")));
                    }
                    index.insert(key, outputs.len());
                    outputs.push(eval(jj));
                    transitions.push(Vec::new());
                    queue.push_back((next_power, jj));
                    outputs.len() - 1
                }
            };
            row.push(id);
        }
        transitions[state] = row;
    }
    Ok(Dfao::new(base, outputs, transitions, 0, Direction::LsbFirst)?.minimize())
}

/// `w_m(n)` for odd `m`: `w(2n+1) = 1`, `w(4n) = w(n)`, `w(4n+2) = ν_2(m+1) + 1`.
fn w_m(n: u64, top: u32) -> Option<u32> {
    let mut n = n;
    if n == 0 {
        return None;
    }
    loop {
        match n % 4 {
            1 | 3 => return Some(1),
            2 => return Some(top),
            _ => n /= 4,
        }
    }
}

/// Automaton for `ν_2(c_m(n))`, odd `m ≠ -1`. The MSB-first version starts
/// in the state reached after the leading 1.
pub fn build_nu2_automaton(m: i64, direction: Direction) -> Result<Dfao> {
    if m % 2 == 0 {
        return Err(Error::domain(format!("m must be odd, got {m}; for even m the valuation is constant")));
    }
    if m == -1 {
        return Err(Error::domain("m = -1 has infinite valuations"));
    }
    let top = nu_p_i64(m + 1, 2) as u32 + 1;
    let lsb = kernel_automaton(2, 64, |n| w_m(n, top))?;
    match direction {
        Direction::LsbFirst => Ok(lsb),
        Direction::MsbFirst => {
            let msb = lsb.to_msb_first()?;
            Ok(msb.absorb_start().unwrap_or(msb))
        }
    }
}

/// `y_p(n)` from `y(n) = n^{-1}` for `n < p`, `y(n) = y(n mod p)` for
/// `p ∤ n`, `y(pn) = y(n)`.
fn y_rec(n: u64, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    Some(inverse_mod_prime(n % p, p) as u32)
}

/// Automaton for `y_p(n)` with `p` states in either direction.
pub fn build_yp_automaton(p: u64, direction: Direction) -> Result<Dfao> {
    require_odd_prime(p)?;
    let lsb = kernel_automaton(p as usize, 4 * p as usize, |n| y_rec(n, p))?;
    match direction {
        Direction::LsbFirst => Ok(lsb),
        Direction::MsbFirst => lsb.to_msb_first(),
    }
}

pub fn dfao_eval(a: &Dfao, n: u64) -> Result<Option<u32>> {
    a.eval(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelProbe {
    pub k: usize,
    pub depth: u32,
    pub prefix_len: usize,
    /// Distinct subsequences found up to each depth `0..=depth`.
    pub counts_by_depth: Vec<usize>,
    pub count: usize,
    /// No new subsequence appeared at the last depth.
    pub saturated: bool,
}

/// Minimum number of shared terms before two subsequences count as equal.
pub const KERNEL_MIN_OVERLAP: usize = 32;

/// Counts distinct subsequences `n -> seq[k^i n + j]`, `i <= depth`,
/// `0 <= j < k^i`, comparing each pair on their common index range.
pub fn kernel_probe<T: Eq + Clone>(seq: &[T], k: usize, depth: u32) -> Result<KernelProbe> {
    if k < 2 {
        return Err(Error::usage(format!("k must be at least 2, got {k}")));
    }
    let top = k.checked_pow(depth).ok_or_else(|| Error::usage("depth too large"))?;
    if seq.len() < top * KERNEL_MIN_OVERLAP {
        return Err(Error::usage(format!(
            "prefix of length {} gives fewer than {KERNEL_MIN_OVERLAP} terms at depth {depth}",
            seq.len()
        )));
    }
    let mut classes: Vec<Vec<T>> = Vec::new();
    let mut counts = Vec::with_capacity(depth as usize + 1);
    let mut power = 1usize;
    for _ in 0..=depth {
        for j in 0..power {
            let sub: Vec<T> = seq.iter().skip(j).step_by(power).cloned().collect();
            let known = classes.iter().any(|c| {
                let common = c.len().min(sub.len());
                c[..common] == sub[..common]
            });
            if !known {
                classes.push(sub);
            }
        }
        counts.push(classes.len());
        power *= k;
    }
    let saturated = counts.len() < 2 || counts[counts.len() - 1] == counts[counts.len() - 2];
    Ok(KernelProbe { k, depth, prefix_len: seq.len(), count: classes.len(), counts_by_depth: counts, saturated })
}

/// Smallest `q <= max_period` with `values[i] = values[i + q]` throughout.
pub fn find_period<T: PartialEq>(values: &[T], max_period: usize) -> Option<usize> {
    (1..=max_period.min(values.len().saturating_sub(1)))
        .find(|&q| values.iter().zip(&values[q..]).all(|(a, b)| a == b))
}

fn series_from(values: impl IntoIterator<Item = u64>) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(values.into_iter().map(BigInt::from).collect()).expect("nonempty")
}

fn pow_mod_p(f: &TruncatedSeries, e: u64, modulus: &BigInt) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(f.order());
    let mut base = f.reduce_mod(modulus);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).expect("same order").reduce_mod(modulus);
        }
        base = base.mul(&base).expect("same order").reduce_mod(modulus);
        e >>= 1;
    }
    acc
}

/// `W_p(x) / (1 - x^p)` truncated at `order`.
fn w_over_one_minus_xp(p: u64, order: usize) -> TruncatedSeries {
    let w: Vec<u64> = (1..p).map(|n| inverse_mod_prime(n, p)).collect();
    let mut f = TruncatedSeries::from_poly(&w, order);
    f.div_one_minus_monomial(p as usize, 1);
    f
}

/// Checks the algebraic equations for `Y_p` and `Z_p` over `F_p`, the integer
/// functional equation for `Y_p`, and that `y_p`, `z_p` agree with `d_1` and
/// `d_{-1}`, all up to `x^order`.
pub fn verify_functional_equations(p: u64, order: usize) -> Result<CheckReport> {
    require_odd_prime(p)?;
    let (y, z) = y_z_sequences(p, order + 1)?;
    let to_u64 = |s: &crate::partitions::SequencePrefix| -> Vec<u64> {
        s.values.iter().map(|v| v.to_u64().expect("small value")).collect()
    };
    let mut report = verify_functional_equations_for(p, &to_u64(&y), &to_u64(&z), order)?;

    // y_p(n) = d_1(n) / p mod p and z_p(n) = d_{-1}(n) / p mod p
    let d1 = s_km_fast(p, 1, order + 1)?;
    let dm1 = d_minus1(p, order + 1)?;
    let pb = BigInt::from(p);
    let mut b = ReportBuilder::new("residues-from-coefficients", StatementKind::Theorem);
    b.grid("p", p).grid("n", format!("1..={}", order + 1));
    for n in 1..=order + 1 {
        let from_d = small_residue(&(&d1[n] / &pb), p);
        let from_dm = small_residue(&(&dm1[n] / &pb), p);
        let ok = BigInt::from(from_d) == y[n] && BigInt::from(from_dm) == z[n] && (&d1[n] % &pb) == BigInt::from(0);
        b.record(&[("n", n as i64)], ok, || {
            vec![("d_1(n)", d1[n].to_string()), ("d_-1(n)", dm1[n].to_string())]
        });
    }
    report.absorb(b.finish());
    Ok(report)
}

/// The equation checks of [`verify_functional_equations`] on explicit
/// sequences `y[1..=order+1]`, `z[1..=order+1]` (index 0 ignored).
pub fn verify_functional_equations_for(p: u64, y: &[u64], z: &[u64], order: usize) -> Result<CheckReport> {
    require_odd_prime(p)?;
    if y.len() < order + 2 || z.len() < order + 2 {
        return Err(Error::usage("y and z must cover indices 1..=order+1"));
    }
    let modulus = BigInt::from(p);
    let big_y = series_from(y[1..=order + 1].iter().copied());
    let big_z = series_from(z[1..=order + 1].iter().copied());
    let rhs = w_over_one_minus_xp(p, order);
    let shift = TruncatedSeries::monomial(1, p as usize - 1, order);

    let mut b = ReportBuilder::new("functional-equations", StatementKind::Theorem);
    b.grid("p", p).grid("order", order);
    b.note("x^{p-1} Y^p - Y + W/(1-x^p) = 0 and x^{p-1} Z^p - Z - W/(1-x^p) = 0 mod p");
    b.note("Y = x^{p-1} Y(x^p) + W/(1-x^p) over the integers");

    let eq_y = shift.mul(&pow_mod_p(&big_y, p, &modulus))?.sub(&big_y)?.add(&rhs)?;
    let eq_z = shift.mul(&pow_mod_p(&big_z, p, &modulus))?.sub(&big_z)?.sub(&rhs)?;
    let eq_int = shift.mul(&big_y.substitute_power(p as usize)?)?.add(&rhs)?.sub(&big_y)?;
    let zero = TruncatedSeries::zero(order);
    for (name, eq, m) in [("equY", &eq_y, &modulus), ("equZ", &eq_z, &modulus)] {
        let fail = eq.first_incongruence(&zero, m)?;
        b.record(&[("order", order as i64)], fail.is_none(), || {
            vec![("equation", name.to_string()), ("first_failing_index", fail.unwrap_or(0).to_string())]
        });
    }
    let fail = eq_int.coeffs().iter().position(|c| *c != BigInt::from(0));
    b.record(&[("order", order as i64)], fail.is_none(), || {
        vec![("equation", "integer".to_string()), ("first_failing_index", fail.unwrap_or(0).to_string())]
    });
    for n in 1..=order + 1 {
        b.record(&[("n", n as i64)], y[n] + z[n] == p, || {
            vec![("y", y[n].to_string()), ("z", z[n].to_string())]
        });
    }
    Ok(b.finish())
}

/// Index of the first failing equation coefficient in a report produced by
/// [`verify_functional_equations_for`], if any.
pub fn first_failing_index(report: &CheckReport) -> Option<usize> {
    report
        .counterexamples
        .iter()
        .filter_map(|c| c.witness.get("first_failing_index"))
        .filter_map(|s| s.parse().ok())
        .min()
}

/// Deterministic Graphviz text for an automaton.
pub fn export_dot(a: &Dfao) -> String {
    let mut out = String::new();
    out.push_str("digraph dfao {\n");
    let _ = writeln!(
        out,
        "  graph [base={}, direction=\"{}\", initial=\"q{}\"];",
        a.base,
        a.direction.short_name(),
        a.initial
    );
    out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    for (q, o) in a.outputs.iter().enumerate() {
        let label = o.map_or_else(|| "-".to_string(), |v| v.to_string());
        let extra = if q == a.initial { ", peripheries=2" } else { "" };
        let _ = writeln!(out, "  q{q} [label=\"{label}\"{extra}];");
    }
    for (q, row) in a.transitions.iter().enumerate() {
        for (d, t) in row.iter().enumerate() {
            let _ = writeln!(out, "  q{q} -> q{t} [label=\"{d}\"];");
        }
    }
    out.push_str("}\n");
    out
}

fn attr<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    let start = text.find(&format!("{key}="))? + key.len() + 1;
    let rest = &text[start..];
    let rest = rest.strip_prefix('"').unwrap_or(rest);
    let end = rest.find(['"', ',', ']']).unwrap_or(rest.len());
    Some(&rest[..end])
}

fn state_id(token: &str) -> Result<usize> {
    token
        .trim()
        .strip_prefix('q')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::usage(format!("bad state name {token:?}")))
}

/// Parses the output of [`export_dot`].
pub fn from_dot(text: &str) -> Result<Dfao> {
    let bad = |what: &str| Error::usage(format!("malformed DOT: {what}"));
    let header = text.lines().find(|l| l.trim_start().starts_with("graph [")).ok_or_else(|| bad("no graph line"))?;
    let base: usize = attr(header, "base").and_then(|b| b.parse().ok()).ok_or_else(|| bad("base"))?;
    let direction = match attr(header, "direction") {
        Some("lsb") => Direction::LsbFirst,
        Some("msb") => Direction::MsbFirst,
        _ => return Err(bad("direction")),
    };
    let initial = state_id(attr(header, "initial").ok_or_else(|| bad("initial"))?)?;
    let mut outputs: BTreeMap<usize, Option<u32>> = BTreeMap::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for line in text.lines().map(str::trim) {
        if !line.starts_with('q') {
            continue;
        }
        let label = attr(line, "label").ok_or_else(|| bad("label"))?;
        let head = &line[..line.find('[').ok_or_else(|| bad("attributes"))?];
        if let Some((from, to)) = head.split_once("->") {
            let d = label.parse().map_err(|_| bad("digit"))?;
            edges.push((state_id(from)?, d, state_id(to)?));
        } else {
            let out = if label == "-" { None } else { Some(label.parse().map_err(|_| bad("output"))?) };
            outputs.insert(state_id(head)?, out);
        }
    }
    let n = outputs.len();
    if outputs.keys().copied().ne(0..n) {
        return Err(bad("state numbering"));
    }
    let mut transitions = vec![vec![usize::MAX; base]; n];
    for (from, d, to) in edges {
        if from >= n || d >= base {
            return Err(bad("edge"));
        }
        transitions[from][d] = to;
    }
    Dfao::new(base, outputs.into_values().collect(), transitions, initial, direction)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_topologies() {
        for m in [1i64, 3, 5, -3] {
            let lsb = build_nu2_automaton(m, Direction::LsbFirst).unwrap();
            assert_eq!(lsb.num_states(), 4, "m={m}");
            let msb = build_nu2_automaton(m, Direction::MsbFirst).unwrap();
            assert_eq!(msb.num_states(), 2, "m={m}");
            assert_eq!(msb.output(msb.initial()), Some(1));
        }
        for p in [3u64, 5, 7] {
            assert_eq!(build_yp_automaton(p, Direction::LsbFirst).unwrap().num_states(), p as usize);
            assert_eq!(build_yp_automaton(p, Direction::MsbFirst).unwrap().num_states(), p as usize);
        }
    }

    #[test]
    fn lsb_initial_state_has_no_output() {
        let a = build_nu2_automaton(1, Direction::LsbFirst).unwrap();
        assert_eq!(a.output(a.initial()), None);
        let zero = a.step(a.initial(), 0);
        assert_eq!(a.output(zero), None);
        assert_eq!(a.step(zero, 0), a.initial());
    }

    #[test]
    fn evaluation_examples() {
        let lsb = build_nu2_automaton(1, Direction::LsbFirst).unwrap();
        let msb = build_nu2_automaton(1, Direction::MsbFirst).unwrap();
        assert_eq!(lsb.eval(2).unwrap(), Some(2));
        assert_eq!(lsb.eval(6).unwrap(), Some(2));
        assert_eq!(msb.eval(6).unwrap(), Some(2));
        let a3 = build_nu2_automaton(3, Direction::LsbFirst).unwrap();
        assert_eq!(a3.eval(5).unwrap(), Some(1));
        assert_eq!(a3.eval(8).unwrap(), Some(3));
        let y3 = build_yp_automaton(3, Direction::MsbFirst).unwrap();
        assert_eq!(y3.eval(2).unwrap(), Some(2));
        assert_eq!(build_yp_automaton(5, Direction::LsbFirst).unwrap().eval(10).unwrap(), Some(3));
        assert_eq!(build_yp_automaton(7, Direction::MsbFirst).unwrap().eval(49).unwrap(), Some(1));
        assert!(lsb.eval(0).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(build_nu2_automaton(4, Direction::LsbFirst), Err(Error::Domain(_))));
        assert!(build_nu2_automaton(-1, Direction::LsbFirst).is_err());
        assert!(build_yp_automaton(9, Direction::LsbFirst).is_err());
        assert!(Dfao::new(2, vec![None], vec![vec![0]], 0, Direction::LsbFirst).is_err());
    }

    #[test]
    fn msb_yp_matches_paper_description() {
        // 0 loops, digit d goes to the state labelled d^{-1}
        let p = 5;
        let a = build_yp_automaton(p, Direction::MsbFirst).unwrap();
        for q in 0..a.num_states() {
            if q != a.initial() {
                assert_eq!(a.step(q, 0), q);
            }
            for d in 1..p as usize {
                let t = a.step(q, d);
                assert_eq!(a.output(t), Some(inverse_mod_prime(d as u64, p) as u32));
            }
        }
    }

    #[test]
    fn dot_round_trip() {
        let a = build_nu2_automaton(1, Direction::MsbFirst).unwrap();
        let dot = export_dot(&a);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert_eq!(from_dot(&dot).unwrap(), a);
        assert_eq!(export_dot(&a), dot);
        let one = Dfao::new(3, vec![Some(7)], vec![vec![0, 0, 0]], 0, Direction::LsbFirst).unwrap();
        let dot = export_dot(&one);
        assert_eq!(dot.matches("q0 -> q0").count(), 3);
        assert_eq!(from_dot(&dot).unwrap(), one);
        let y = build_yp_automaton(3, Direction::LsbFirst).unwrap();
        assert_eq!(from_dot(&export_dot(&y)).unwrap(), y);
        assert!(from_dot("digraph {}").is_err());
    }

    #[test]
    fn kernel_probe_basics() {
        let constant = vec![5u8; 4096];
        let probe = kernel_probe(&constant, 2, 6).unwrap();
        assert_eq!(probe.count, 1);
        assert!(probe.saturated);
        assert!(kernel_probe(&constant, 2, 8).is_err());
        let top = 3;
        let seq: Vec<Option<u32>> = (0..10_000u64).map(|n| w_m(n, top)).collect();
        let probe = kernel_probe(&seq, 2, 6).unwrap();
        assert!(probe.saturated);
        assert_eq!(probe.count, 4);
    }

    #[test]
    fn periods() {
        assert_eq!(find_period(&[1, 2, 1, 2, 1], 3), Some(2));
        assert_eq!(find_period(&[1, 2, 3], 2), None);
        let y: Vec<Option<u32>> = (1..=10_000u64).map(|n| y_rec(n, 3)).collect();
        assert_eq!(find_period(&y, 2000), None);
    }

    #[test]
    fn functional_equations_detect_perturbation() {
        let p = 3;
        let order = 300;
        let (y, z) = y_z_sequences(p, order + 1).unwrap();
        let mut yv: Vec<u64> = y.values.iter().map(|v| small_residue(v, 10)).collect();
        let zv: Vec<u64> = z.values.iter().map(|v| small_residue(v, 10)).collect();
        assert!(verify_functional_equations_for(p, &yv, &zv, order).unwrap().passed());
        yv[101] = (yv[101] % 2) + 1;
        let report = verify_functional_equations_for(p, &yv, &zv, order).unwrap();
        assert!(!report.passed());
        // Y's coefficient at x^100 is y(101)
        assert_eq!(first_failing_index(&report), Some(100));
    }
}
