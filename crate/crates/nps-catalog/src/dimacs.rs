//! DIMACS CNF reading and writing (`p cnf <vars> <clauses>` header, clause
//! lines terminated by 0). Comments and blank lines are skipped; literals may
//! wrap across lines.

use nps_core::CoreError;

use crate::payload::CnfFormula;

pub fn parse_dimacs(input: &str) -> Result<CnfFormula, CoreError> {
    let mut num_vars: Option<usize> = None;
    let mut declared_clauses = 0usize;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();

    for line in input.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if num_vars.is_some() {
                return Err(CoreError::InvalidInstance("duplicate DIMACS header".into()));
            }
            let mut parts = rest.split_whitespace();
            if parts.next() != Some("cnf") {
                return Err(CoreError::InvalidInstance("header is not `p cnf`".into()));
            }
            let n: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| CoreError::InvalidInstance("bad variable count".into()))?;
            let m: usize = parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| CoreError::InvalidInstance("bad clause count".into()))?;
            num_vars = Some(n);
            declared_clauses = m;
            continue;
        }
        if num_vars.is_none() {
            return Err(CoreError::InvalidInstance(
                "clause before `p cnf` header".into(),
            ));
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|_| CoreError::InvalidInstance(format!("bad literal `{tok}`")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(CoreError::InvalidInstance("empty clause".into()));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        clauses.push(current);
    }
    let num_vars = num_vars.ok_or_else(|| CoreError::InvalidInstance("missing header".into()))?;
    if clauses.len() != declared_clauses {
        return Err(CoreError::InvalidInstance(format!(
            "header declares {declared_clauses} clauses, found {}",
            clauses.len()
        )));
    }
    let cnf = CnfFormula { num_vars, clauses };
    cnf.validate()?;
    Ok(cnf)
}

pub fn write_dimacs(cnf: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", cnf.num_vars, cnf.clauses.len());
    for clause in &cnf.clauses {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "c comment\np cnf 3 2\n-1 -2 3 0\n1 0\n";
        let cnf = parse_dimacs(text).unwrap();
        assert_eq!(cnf.num_vars, 3);
        assert_eq!(cnf.clauses, vec![vec![-1, -2, 3], vec![1]]);
        assert_eq!(parse_dimacs(&write_dimacs(&cnf)).unwrap(), cnf);
    }

    #[test]
    fn clause_spanning_lines() {
        let cnf = parse_dimacs("p cnf 2 1\n1\n2 0\n").unwrap();
        assert_eq!(cnf.clauses, vec![vec![1, 2]]);
    }

    #[test]
    fn rejects_count_mismatch() {
        assert!(parse_dimacs("p cnf 2 2\n1 0\n").is_err());
        assert!(parse_dimacs("1 0\n").is_err());
    }
}
