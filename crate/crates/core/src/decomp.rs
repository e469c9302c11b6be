//! Monotone decompositions `f = f_1 ⊕ f_2 ⊕ … ⊕ f_m`.
//!
//! Components are always stored in ascending implication order
//! (`f_i ⇒ f_{i+1}`), so on every input the component values read
//! `0…0 1…1`. When `f(0^n) = 1` a trailing constant-1 component keeps the
//! plain XOR identity.

use std::fmt;

use crate::boolfn::{
    alt_profile, alternation, is_monotone, is_uniform_alternation, parse_arity_header, TruthTable,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneDecomposition {
    components: Vec<TruthTable>,
    target: TruthTable,
}

impl MonotoneDecomposition {
    /// Wraps components without checking any decomposition property.
    pub fn new(target: TruthTable, components: Vec<TruthTable>) -> Result<Self> {
        for c in &components {
            target.check_same_arity(c)?;
        }
        Ok(MonotoneDecomposition { components, target })
    }

    pub fn arity(&self) -> usize {
        self.target.arity()
    }

    pub fn components(&self) -> &[TruthTable] {
        &self.components
    }

    pub fn into_components(self) -> Vec<TruthTable> {
        self.components
    }

    pub fn target(&self) -> &TruthTable {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn xor(&self) -> TruthTable {
        let mut acc = TruthTable::zeros(self.arity()).expect("arity already validated");
        for c in &self.components {
            acc = acc.xor(c);
        }
        acc
    }

    /// First adjacent pair `(i, i+1)` (0-based) where `f_i ⇒ f_{i+1}` fails.
    pub fn implication_violation(&self) -> Option<(usize, usize)> {
        self.components
            .windows(2)
            .position(|w| !w[0].implies(&w[1]))
            .map(|i| (i, i + 1))
    }

    /// Components with a constant-0 prepended when the count is odd.
    pub fn padded_even(&self) -> Vec<TruthTable> {
        let mut out = Vec::with_capacity(self.len() + 1);
        if self.len() % 2 == 1 {
            out.push(TruthTable::zeros(self.arity()).expect("arity already validated"));
        }
        out.extend(self.components.iter().cloned());
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n={} m={} dir=asc\n", self.arity(), self.len());
        for c in &self.components {
            s.push_str(&c.to_hex());
            s.push('\n');
        }
        s.push_str(&self.target.to_hex());
        s.push('\n');
        s
    }

    pub fn parse_text(text: &str, max_n: usize) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let mut n = None;
        let mut m = None;
        let mut dir = None;
        for field in header.split_whitespace() {
            if field.starts_with("n=") {
                n = Some(parse_arity_header(field, hl)?);
            } else if let Some(v) = field.strip_prefix("m=") {
                m = Some(
                    v.parse::<usize>()
                        .map_err(|_| Error::parse(hl, format!("bad count {v:?}")))?,
                );
            } else if let Some(v) = field.strip_prefix("dir=") {
                dir = Some(v);
            } else {
                return Err(Error::parse(hl, format!("unknown header field {field:?}")));
            }
        }
        let n = n.ok_or_else(|| Error::parse(hl, "missing n=<k>"))?;
        let m = m.ok_or_else(|| Error::parse(hl, "missing m=<count>"))?;
        if n > max_n {
            return Err(Error::ArityTooLarge { n, max: max_n });
        }
        match dir {
            Some("asc") | None => {}
            Some(other) => {
                return Err(Error::parse(hl, format!("unsupported direction {other:?}")))
            }
        }
        let mut tables = Vec::with_capacity(m + 1);
        for _ in 0..=m {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(hl, format!("expected {} table lines", m + 1)))?;
            let t = TruthTable::from_hex(n, line).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(ln, msg),
                other => other,
            })?;
            tables.push(t);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing content"));
        }
        let target = tables.pop().expect("m+1 tables read");
        MonotoneDecomposition::new(target, tables)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub xor_equals_target: bool,
    pub all_monotone: bool,
    pub implication_holds: bool,
    pub length: usize,
    pub alternation: usize,
    /// Length is `alt(f)` when `f(0^n) = 0` and `alt(f) + 1` otherwise.
    pub is_optimal_length: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.xor_equals_target && self.all_monotone && self.implication_holds
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "xor_equals_target={} all_monotone={} implication_holds={} length={} alt={} optimal_length={}",
            self.xor_equals_target,
            self.all_monotone,
            self.implication_holds,
            self.length,
            self.alternation,
            self.is_optimal_length
        )
    }
}

pub fn verify_decomposition(
    f: &TruthTable,
    d: &MonotoneDecomposition,
) -> Result<VerificationReport> {
    f.check_same_arity(d.target())?;
    let alt = alternation(f);
    let optimal = alt + usize::from(f.get(0));
    Ok(VerificationReport {
        xor_equals_target: d.xor() == *f,
        all_monotone: d.components().iter().all(is_monotone),
        implication_holds: d.implication_violation().is_none(),
        length: d.len(),
        alternation: alt,
        is_optimal_length: d.len() == optimal,
    })
}

/// `g_i = [a_f(x) < i]` for `i = 1..alt(f)`, then constant-1 if `f(0^n) = 1`.
pub fn alternation_decomposition(f: &TruthTable) -> MonotoneDecomposition {
    let n = f.arity();
    let profile = alt_profile(f);
    let alt = profile.alternation();
    let mut components: Vec<TruthTable> = (1..=alt)
        .map(|i| TruthTable::from_fn(n, |x| profile.at(x) < i).expect("arity of f"))
        .collect();
    if f.get(0) {
        components.push(TruthTable::ones(n).expect("arity of f"));
    }
    MonotoneDecomposition {
        components,
        target: f.clone(),
    }
}

/// `2n+1` components built from thresholds: in descending order
/// `f_{2k} = Th_k` and `f_{2k+1} = Th_{k+1} ∨ (Th_k ∧ f)`.
pub fn threshold_interleaved_decomposition(f: &TruthTable) -> MonotoneDecomposition {
    let n = f.arity();
    let th: Vec<TruthTable> = (0..=n + 1)
        .map(|k| TruthTable::from_fn(n, |x| x.count_ones() as usize >= k).expect("arity of f"))
        .collect();
    let mut desc = Vec::with_capacity(2 * n + 1);
    for k in 0..=n {
        if k > 0 {
            desc.push(th[k].clone());
        }
        desc.push(th[k + 1].or(&th[k].and(f)));
    }
    desc.reverse();
    MonotoneDecomposition {
        components: desc,
        target: f.clone(),
    }
}

/// Number of value flips along the chain from `x` down to `0^n` obtained
/// by clearing the lowest-indexed set variable at each step.
fn flips_to_bottom(f: &TruthTable) -> Vec<u8> {
    let mut flips = vec![0u8; f.len()];
    for x in 1..f.len() {
        let y = x & (x - 1);
        flips[x] = flips[y] + u8::from(f.get(x) != f.get(y));
    }
    flips
}

/// The decomposition read off one fixed chain per input. Only defined for
/// functions whose maximal chains all alternate equally often, where it
/// coincides with [`alternation_decomposition`].
pub fn uniform_chain_decomposition(f: &TruthTable) -> Result<MonotoneDecomposition> {
    if !is_uniform_alternation(f) {
        return Err(Error::NotUniform);
    }
    let n = f.arity();
    let k = alternation(f);
    let flips = flips_to_bottom(f);
    let mut components: Vec<TruthTable> = (1..=k)
        .map(|i| TruthTable::from_fn(n, |x| usize::from(flips[x]) + i > k).expect("arity of f"))
        .collect();
    if f.get(0) {
        components.push(TruthTable::ones(n).expect("arity of f"));
    }
    Ok(MonotoneDecomposition {
        components,
        target: f.clone(),
    })
}

/// The XOR, decision-list, DNF-of-pairs and CNF-of-pairs readings of a
/// decomposition (padded to even length), in that order.
pub fn four_forms(d: &MonotoneDecomposition) -> Result<[TruthTable; 4]> {
    if let Some((i, j)) = d.implication_violation() {
        return Err(Error::ImplicationViolated(i + 1, j + 1));
    }
    let n = d.arity();
    let fs = d.padded_even();
    let zero = TruthTable::zeros(n)?;
    let one = TruthTable::ones(n)?;

    let xor = fs.iter().fold(zero.clone(), |acc, g| acc.xor(g));

    // (f_1,0)(f_2,1)…(f_k,1)(1,0), folded from the tail
    let mut list = zero.clone();
    for (i, g) in fs.iter().enumerate().rev() {
        let c = if i % 2 == 1 { &one } else { &zero };
        list = g.and(c).or(&g.complement().and(&list));
    }

    let dnf = fs
        .chunks(2)
        .fold(zero.clone(), |acc, p| acc.or(&p[0].complement().and(&p[1])));

    // (0 ∨ ¬f_1) ∧ (f_2 ∨ ¬f_3) ∧ … ∧ (f_k ∨ ¬1)
    let mut cnf = one.clone();
    for j in 0..=fs.len() / 2 {
        let lo = if j == 0 { &zero } else { &fs[2 * j - 1] };
        let hi = fs.get(2 * j).unwrap_or(&one);
        cnf = cnf.and(&lo.or(&hi.complement()));
    }
    Ok([xor, list, dnf, cnf])
}

pub fn four_forms_check(d: &MonotoneDecomposition) -> Result<bool> {
    let [a, b, c, e] = four_forms(d)?;
    Ok(a == b && b == c && c == e)
}
