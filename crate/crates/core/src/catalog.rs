//! Isomorphism classes of small polyadic groups.
//!
//! Every polyadic group of order `m` is `der_{θ,b}(G)` for some group `G` of
//! order `m`, so running over the built-in groups, their automorphisms and the
//! admissible `b` reaches every class. Where the full table space is small
//! enough the result is checked against a scan of all tables.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::budget;
use crate::error::{Error, Result};
use crate::group::{automorphisms, library};
use crate::polyadic::{
    find_polyadic_isomorphism, fingerprint, next_tuple, table_index, verify_polyadic, ElementInvariant, PolyadicGroup,
    Violation,
};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub group: PolyadicGroup,
    /// Name of the base group in the small-groups library.
    pub base: &'static str,
    pub theta: Vec<usize>,
    pub b: usize,
    /// Some `a` with `f(a, .., a, x, a, .., a) = x` in every position.
    pub nary_identity: Option<usize>,
    /// Number of `(G, θ, b)` parameter choices landing in this class.
    pub parametrizations: usize,
}

impl CatalogEntry {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn reducible(&self) -> bool {
        self.nary_identity.is_some()
    }

    pub fn label(&self) -> String {
        format!("{} theta={:?} b={}", self.base, self.theta, self.b)
    }
}

/// Outcome of the exhaustive table scan for one carrier size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub order: usize,
    pub tables_scanned: u128,
    pub polyadic_tables: usize,
    pub brute_force_classes: usize,
    pub hg_classes: usize,
    /// Each scanned class matches exactly one catalog entry and vice versa.
    pub agree: bool,
    /// Tables where the Latin-cube test and direct solving of every
    /// one-variable equation disagree.
    pub solvability_mismatches: usize,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub arity: usize,
    pub max_order: usize,
    pub entries: Vec<CatalogEntry>,
    pub cross_validation: Vec<CrossValidation>,
}

impl Catalog {
    pub fn cross_validated(&self) -> bool {
        self.cross_validation.iter().all(|c| c.agree && c.solvability_mismatches == 0)
    }
}

type Fingerprint = (usize, usize, Vec<ElementInvariant>);

/// Isomorphism classes bucketed by fingerprint.
#[derive(Default)]
struct Classes {
    buckets: BTreeMap<Fingerprint, Vec<usize>>,
    reps: Vec<PolyadicGroup>,
}

impl Classes {
    /// Index of the class of `p`, inserting a new class when none matches.
    fn classify(&mut self, p: &PolyadicGroup) -> (usize, bool) {
        let bucket = self.buckets.entry(fingerprint(p)).or_default();
        if let Some(&i) = bucket.iter().find(|&&i| find_polyadic_isomorphism(p, &self.reps[i]).is_some()) {
            return (i, false);
        }
        bucket.push(self.reps.len());
        self.reps.push(p.clone());
        (self.reps.len() - 1, true)
    }
}

/// All classes of `(θ, b)`-derived `n`-ary groups on base groups of order
/// `2..=max_order`, with the exhaustive cross-check wherever
/// `m^(m^n)` is within [`budget::TABLE_SCAN`].
pub fn catalog(arity: usize, max_order: usize) -> Result<Catalog> {
    if arity < 2 {
        return Err(Error::BadArity(arity));
    }
    budget::check("catalog base order", max_order as u128, budget::CATALOG_ORDER)?;
    if max_order as u128 > budget::CATALOG_ORDER {
        return Err(Error::InvalidParams(format!(
            "the small-groups library stops at order {}, asked for {max_order}",
            budget::CATALOG_ORDER
        )));
    }

    let mut classes = Classes::default();
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for sg in library::small_groups() {
        let g = &sg.group;
        if g.order() < 2 || g.order() > max_order {
            continue;
        }
        for theta in automorphisms(g) {
            for b in g.elements() {
                let Ok(p) = PolyadicGroup::derive_theta(g, &theta, b, arity) else { continue };
                let (i, fresh) = classes.classify(&p);
                if fresh {
                    entries.push(CatalogEntry {
                        nary_identity: p.find_nary_identity(),
                        group: p,
                        base: sg.name,
                        theta: theta.map().to_vec(),
                        b,
                        parametrizations: 0,
                    });
                }
                entries[i].parametrizations += 1;
            }
        }
    }
    entries.sort_by_key(CatalogEntry::order);

    let mut cross_validation = Vec::new();
    for m in 2..=max_order {
        let cells = budget::saturating_pow(m, arity);
        let Ok(cells) = usize::try_from(cells) else { break };
        let tables = budget::saturating_pow(m, cells);
        if tables > budget::limit(budget::TABLE_SCAN) {
            break;
        }
        let hg: Vec<&PolyadicGroup> = entries.iter().filter(|e| e.order() == m).map(|e| &e.group).collect();
        cross_validation.push(scan_tables(arity, m, cells, tables, &hg)?);
    }

    Ok(Catalog { arity, max_order, entries, cross_validation })
}

fn scan_tables(arity: usize, m: usize, cells: usize, tables: u128, hg: &[&PolyadicGroup]) -> Result<CrossValidation> {
    let mut table = vec![0usize; cells];
    let mut classes = Classes::default();
    let mut polyadic_tables = 0;
    let mut solvability_mismatches = 0;
    loop {
        let verdict = verify_polyadic(&table, m, arity)?;
        let latin = !matches!(verdict.violation(), Some(Violation::NotLatin { .. }));
        if latin != uniquely_solvable(&table, m, arity) {
            solvability_mismatches += 1;
        }
        if verdict.is_valid() {
            polyadic_tables += 1;
            classes.classify(&PolyadicGroup::from_table(arity, m, table.clone())?);
        }
        if !next_tuple(&mut table, m) {
            break;
        }
    }
    let mut matched = vec![0usize; hg.len()];
    let mut every_scanned_matched = true;
    for rep in &classes.reps {
        let hits: Vec<usize> = (0..hg.len()).filter(|&i| find_polyadic_isomorphism(rep, hg[i]).is_some()).collect();
        every_scanned_matched &= hits.len() == 1;
        for i in hits {
            matched[i] += 1;
        }
    }
    Ok(CrossValidation {
        order: m,
        tables_scanned: tables,
        polyadic_tables,
        brute_force_classes: classes.reps.len(),
        hg_classes: hg.len(),
        agree: every_scanned_matched && matched.iter().all(|&c| c == 1),
        solvability_mismatches,
    })
}

/// Every equation `f(.., x_i = ?, ..) = c` has exactly one solution, found by
/// trying all values rather than by looking at lines.
fn uniquely_solvable(table: &[usize], m: usize, arity: usize) -> bool {
    let mut args = vec![0usize; arity];
    for pos in 0..arity {
        let mut others = vec![0usize; arity - 1];
        loop {
            for c in 0..m {
                let mut solutions = 0;
                for x in 0..m {
                    args[..pos].copy_from_slice(&others[..pos]);
                    args[pos] = x;
                    args[pos + 1..].copy_from_slice(&others[pos..]);
                    if table[table_index(&args, m)] == c {
                        solutions += 1;
                    }
                }
                if solutions != 1 {
                    return false;
                }
            }
            if !next_tuple(&mut others, m) {
                break;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyadic::for_each_tuple;

    #[test]
    fn ternary_order_two_has_two_classes() {
        let c = catalog(3, 2).unwrap();
        assert_eq!(c.entries.len(), 2);
        let cv = &c.cross_validation[0];
        assert_eq!((cv.order, cv.tables_scanned, cv.brute_force_classes, cv.hg_classes), (2, 256, 2, 2));
        assert!(c.cross_validated());
        // x+y+z and x+y+z+1: the first has an n-ary identity, the second none.
        let mut sums: Vec<(usize, bool)> =
            c.entries.iter().map(|e| (e.group.apply(&[0, 0, 0]), e.reducible())).collect();
        sums.sort();
        assert_eq!(sums, vec![(0, true), (1, false)]);
    }

    #[test]
    fn alternating_z4_is_irreducible() {
        let c = catalog(3, 4).unwrap();
        let alt = crate::fixtures::alternating(4);
        let hit: Vec<&CatalogEntry> =
            c.entries.iter().filter(|e| find_polyadic_isomorphism(&e.group, &alt).is_some()).collect();
        assert_eq!(hit.len(), 1);
        assert!(!hit[0].reducible());
        assert!(c.entries.windows(2).all(|w| w[0].order() <= w[1].order()));
    }

    #[test]
    fn entries_pairwise_non_isomorphic_and_complete() {
        let c = catalog(3, 4).unwrap();
        for (i, a) in c.entries.iter().enumerate() {
            for b in &c.entries[i + 1..] {
                assert!(find_polyadic_isomorphism(&a.group, &b.group).is_none(), "{} ~ {}", a.label(), b.label());
            }
        }
        let total: usize = c.entries.iter().map(|e| e.parametrizations).sum();
        let samples = crate::fixtures::hg_samples(3, 2, 4);
        assert_eq!(total, samples.len());
        for (name, p) in &samples {
            let n = c.entries.iter().filter(|e| find_polyadic_isomorphism(&e.group, p).is_some()).count();
            assert_eq!(n, 1, "{name}");
        }
    }

    #[test]
    fn binary_scans_agree_up_to_three() {
        let c = catalog(2, 3).unwrap();
        // Groups of order 2 and 3 are cyclic, one class each.
        assert_eq!(c.entries.len(), 2);
        assert_eq!(c.cross_validation.iter().map(|v| v.order).collect::<Vec<_>>(), vec![2, 3]);
        assert!(c.cross_validated());
    }

    #[test]
    fn quaternary_order_two() {
        let c = catalog(4, 2).unwrap();
        assert_eq!(c.cross_validation.len(), 1);
        assert_eq!(c.cross_validation[0].tables_scanned, 65536);
        assert!(c.cross_validated());
    }

    #[test]
    fn solvability_oracle_on_a_non_latin_table() {
        let mut t = vec![0usize; 8];
        for_each_tuple(2, 3, |a| {
            t[table_index(a, 2)] = (a[0] + a[1] + a[2]) % 2;
            true
        });
        assert!(uniquely_solvable(&t, 2, 3));
        t[0] = 1;
        assert!(!uniquely_solvable(&t, 2, 3));
    }

    #[test]
    fn order_limits() {
        assert!(matches!(catalog(3, 9), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(catalog(1, 2), Err(Error::BadArity(1))));
    }
}
