//! CNF formulas under "at least one" / "at least two" true-literal semantics.

use std::fmt;

use crate::error::{Error, Result};

/// Signed variable index: `+v` or `-v` with `v >= 1`.
pub type Literal = i32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    AtLeast1,
    AtLeast2,
}

impl Mode {
    pub fn threshold(self) -> usize {
        match self {
            Mode::AtLeast1 => 1,
            Mode::AtLeast2 => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
    mode: Mode,
}

/// Truth value per variable; `values[i]` belongs to variable `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, lit: Literal) -> bool {
        let v = self.0[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            v
        } else {
            !v
        }
    }
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>, mode: Mode) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::Formula("need at least one variable".into()));
        }
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Formula(format!("clause {} is empty", i + 1)));
            }
            let mut vars: Vec<u32> = c.iter().map(|l| l.unsigned_abs()).collect();
            if vars.iter().any(|&v| v == 0 || v as usize > num_vars) {
                return Err(Error::Formula(format!("clause {} uses an undeclared variable", i + 1)));
            }
            vars.sort_unstable();
            vars.dedup();
            if vars.len() != c.len() {
                return Err(Error::Formula(format!("clause {} repeats a variable", i + 1)));
            }
        }
        let phi = CnfFormula { num_vars, clauses, mode };
        if mode == Mode::AtLeast2 && !phi.clauses.is_empty() {
            match phi.width() {
                Some(k) if k >= 4 => {}
                _ => {
                    return Err(Error::Formula(
                        "at-least-two formulas need a uniform clause width of at least 4".into(),
                    ))
                }
            }
        }
        Ok(phi)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        CnfFormula::new(self.num_vars, self.clauses.clone(), mode)
    }

    /// Common clause length, if all clauses have the same length.
    pub fn width(&self) -> Option<usize> {
        let k = self.clauses.first()?.len();
        self.clauses.iter().all(|c| c.len() == k).then_some(k)
    }

    /// Errors unless the mode matches and every clause has `width` literals.
    pub fn require_shape(&self, width: usize, mode: Mode) -> Result<()> {
        if self.mode != mode {
            return Err(Error::Formula(format!("expected mode {mode:?}, got {:?}", self.mode)));
        }
        if !self.clauses.is_empty() && self.width() != Some(width) {
            return Err(Error::Formula(format!("expected every clause to have width {width}")));
        }
        Ok(())
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c
                    .iter()
                    .map(|&l| if l > 0 { format!("x{l}") } else { format!("~x{}", -l) })
                    .collect();
                format!("({})", lits.join(" | "))
            })
            .collect();
        write!(f, "{}", parts.join(" & "))
    }
}

pub fn true_count(clause: &[Literal], a: &Assignment) -> usize {
    clause.iter().filter(|&&l| a.value(l)).count()
}

pub fn evaluate(phi: &CnfFormula, a: &Assignment) -> Result<bool> {
    if a.0.len() != phi.num_vars {
        return Err(Error::Arity { got: a.0.len(), expected: phi.num_vars });
    }
    let t = phi.mode.threshold();
    Ok(phi.clauses.iter().all(|c| true_count(c, a) >= t))
}

/// Append one fresh variable positively to every 3-clause; the result needs two true literals.
pub fn lift_3sat_to_4satge2(phi: &CnfFormula) -> Result<CnfFormula> {
    phi.require_shape(3, Mode::AtLeast1)?;
    let fresh = (phi.num_vars + 1) as Literal;
    let clauses = phi
        .clauses
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.push(fresh);
            c
        })
        .collect();
    CnfFormula::new(phi.num_vars + 1, clauses, Mode::AtLeast2)
}

/// Pad each 4-clause with `k - 4` fresh variables of its own, in every sign pattern.
/// Pattern `p` negates fresh variable `j` iff bit `j` of `p` is set.
pub fn lift_4satge2_to_ksatge2(phi: &CnfFormula, k: usize) -> Result<CnfFormula> {
    phi.require_shape(4, Mode::AtLeast2)?;
    if k < 5 {
        return Err(Error::InvalidParameter(format!("target width {k} must be at least 5")));
    }
    let extra = k - 4;
    if extra >= 20 {
        return Err(Error::InvalidParameter(format!("target width {k} is too large")));
    }
    let mut next = phi.num_vars;
    let mut clauses = Vec::new();
    for c in &phi.clauses {
        let base = next;
        next += extra;
        for p in 0..(1usize << extra) {
            let mut out = c.clone();
            for j in 0..extra {
                let v = (base + j + 1) as Literal;
                out.push(if p >> j & 1 == 1 { -v } else { v });
            }
            clauses.push(out);
        }
    }
    CnfFormula::new(next.max(1), clauses, Mode::AtLeast2)
}

pub const MAX_BRUTE_VARS: usize = 24;

/// First satisfying assignment in lexicographic order (x1 most significant, false before true).
pub fn brute_sat(phi: &CnfFormula) -> Result<Option<Assignment>> {
    let n = phi.num_vars;
    if n > MAX_BRUTE_VARS {
        return Err(Error::BudgetExceeded { needed: 1u128 << n, budget: 1u128 << MAX_BRUTE_VARS });
    }
    let mut a = Assignment(vec![false; n]);
    for mask in 0u64..(1u64 << n) {
        for i in 0..n {
            a.0[i] = mask >> (n - 1 - i) & 1 == 1;
        }
        if evaluate(phi, &a)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// DIMACS CNF: `c` comments, one `p cnf V C` header, literals terminated by `0`.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') {
            continue;
        }
        if t.starts_with('p') {
            if header.is_some() {
                return Err(Error::Parse { line: ln, msg: "second problem line".into() });
            }
            let f: Vec<&str> = t.split_whitespace().collect();
            if f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(Error::Parse { line: ln, msg: "expected `p cnf <vars> <clauses>`".into() });
            }
            let v = f[2].parse().map_err(|_| Error::Parse { line: ln, msg: "bad variable count".into() })?;
            let c = f[3].parse().map_err(|_| Error::Parse { line: ln, msg: "bad clause count".into() })?;
            header = Some((v, c));
            continue;
        }
        if header.is_none() {
            return Err(Error::Parse { line: ln, msg: "clause before the problem line".into() });
        }
        for tok in t.split_whitespace() {
            let l: Literal = tok
                .parse()
                .map_err(|_| Error::Parse { line: ln, msg: format!("bad literal {tok:?}") })?;
            if l == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(l);
            }
        }
    }
    let (v, c) = header.ok_or(Error::Parse { line: 0, msg: "missing problem line".into() })?;
    if !current.is_empty() {
        return Err(Error::Parse { line: 0, msg: "last clause is not terminated by 0".into() });
    }
    if clauses.len() != c {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {c} clauses, found {}", clauses.len()),
        });
    }
    CnfFormula::new(v, clauses, Mode::AtLeast1)
}

pub fn write_dimacs(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.num_vars, phi.clauses.len());
    for c in &phi.clauses {
        for l in c {
            out.push_str(&format!("{l} "));
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let phi = CnfFormula::new(3, vec![vec![1, 2, 3]], Mode::AtLeast1).unwrap();
        assert!(evaluate(&phi, &Assignment(vec![true; 3])).unwrap());
        let phi = CnfFormula::new(4, vec![vec![1, 2, 3, 4]], Mode::AtLeast2).unwrap();
        assert!(!evaluate(&phi, &Assignment(vec![true, false, false, false])).unwrap());
        let empty = CnfFormula::new(2, vec![], Mode::AtLeast2).unwrap();
        assert!(evaluate(&empty, &Assignment(vec![false, false])).unwrap());
        assert!(evaluate(&empty, &Assignment(vec![false])).is_err());
    }

    #[test]
    fn invariants_enforced() {
        assert!(CnfFormula::new(3, vec![vec![1, -1, 2]], Mode::AtLeast1).is_err());
        assert!(CnfFormula::new(3, vec![vec![1, 2, 3]], Mode::AtLeast2).is_err());
        assert!(CnfFormula::new(2, vec![vec![1, 3]], Mode::AtLeast1).is_err());
    }

    #[test]
    fn lifts_shape() {
        let phi = CnfFormula::new(3, vec![vec![1, 2, 3]], Mode::AtLeast1).unwrap();
        let l = lift_3sat_to_4satge2(&phi).unwrap();
        assert_eq!(l.clauses(), &[vec![1, 2, 3, 4]]);
        assert_eq!(l.num_vars(), 4);
        let k6 = lift_4satge2_to_ksatge2(&l, 6).unwrap();
        assert_eq!(k6.clauses().len(), 4);
        assert_eq!(k6.num_vars(), 6);
        assert_eq!(lift_4satge2_to_ksatge2(&l, 5).unwrap().clauses().len(), 2);
        assert!(lift_4satge2_to_ksatge2(&phi, 5).is_err());
        assert!(lift_3sat_to_4satge2(&l).is_err());
    }

    #[test]
    fn brute_examples() {
        let phi = CnfFormula::new(1, vec![vec![1], vec![-1]], Mode::AtLeast1).unwrap();
        assert_eq!(brute_sat(&phi).unwrap(), None);
    }

    #[test]
    fn dimacs_roundtrip() {
        let text = "c demo\np cnf 3 2\n1 -2 3 0\n-1 2\n 3 0\n";
        let phi = parse_dimacs(text).unwrap();
        assert_eq!(phi.clauses(), &[vec![1, -2, 3], vec![-1, 2, 3]]);
        assert_eq!(parse_dimacs(&write_dimacs(&phi)).unwrap(), phi);
        assert!(parse_dimacs("p cnf 2 2\n1 2 0\n").is_err());
        assert!(parse_dimacs("1 2 0\n").is_err());
    }
}
