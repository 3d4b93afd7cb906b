//! Critical-pair (overlap and inclusion ambiguity) checking for a fixed
//! rule set. With a terminating order, resolving every ambiguity makes
//! normal forms independent of the reduction strategy.

use super::element::{Element, Word};
use super::presentation::Presentation;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPair {
    /// The ambiguous word.
    pub word: Word,
    pub rules: (usize, usize),
    /// `NF(first reduction) − NF(second reduction)`.
    pub residual: Element,
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub pairs_checked: usize,
    pub violations: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every overlap and inclusion ambiguity whose word has length at most `max_degree`.
pub fn overlap_confluence(p: &Presentation, max_degree: usize) -> Result<ConfluenceReport> {
    let max_rule = p.rules().iter().map(|r| r.lhs.len()).max().unwrap_or(0);
    if max_degree < max_rule {
        return Err(Error::Usage(format!(
            "degree bound {max_degree} is below the longest rule ({max_rule})"
        )));
    }
    let mut report = ConfluenceReport::default();
    let rules = p.rules();
    for (i, r1) in rules.iter().enumerate() {
        let l1 = r1.lhs.letters();
        for (j, r2) in rules.iter().enumerate() {
            let l2 = r2.lhs.letters();
            // Overlaps: a proper suffix of l1 equals a proper prefix of l2.
            for k in 1..l1.len().min(l2.len()) {
                if l1[l1.len() - k..] != l2[..k] {
                    continue;
                }
                let word = r1.lhs.concat(&Word::from_slice(&l2[k..]));
                if word.len() > max_degree {
                    continue;
                }
                let left = r1.rhs.free_mul(&Element::from_word(Word::from_slice(&l2[k..])));
                let right =
                    Element::from_word(Word::from_slice(&l1[..l1.len() - k])).free_mul(&r2.rhs);
                check(p, &mut report, word, (i, j), &left, &right)?;
            }
            // Inclusions: l2 is a proper subword of l1.
            if i != j && l2.len() < l1.len() {
                for start in 0..=l1.len() - l2.len() {
                    if l1[start..start + l2.len()] != *l2 {
                        continue;
                    }
                    if r1.lhs.len() > max_degree {
                        continue;
                    }
                    let left = r1.rhs.clone();
                    let right = Element::from_word(Word::from_slice(&l1[..start]))
                        .free_mul(&r2.rhs)
                        .free_mul(&Element::from_word(Word::from_slice(&l1[start + l2.len()..])));
                    check(p, &mut report, r1.lhs.clone(), (i, j), &left, &right)?;
                }
            }
        }
    }
    Ok(report)
}

fn check(
    p: &Presentation,
    report: &mut ConfluenceReport,
    word: Word,
    rules: (usize, usize),
    left: &Element,
    right: &Element,
) -> Result<()> {
    report.pairs_checked += 1;
    let residual = p.normal_form(&(left - right))?;
    if !residual.is_zero() {
        report.violations.push(CriticalPair {
            word,
            rules,
            residual,
        });
    }
    Ok(())
}
