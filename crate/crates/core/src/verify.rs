// SPDX-License-Identifier: Apache-2.0

//! Exact finite-instance checks of the structural claims.
//!
//! Each check sweeps instances up to a size bound, compares against
//! independent computations, and collects per-case diagnostics.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::analysis::{classify, count_crossings, count_dips, Monotonicity};
use crate::families::closed_forms::{gij_pk, gij_prefix_triple, gij_through_triple, path_pk, path_pkv};
use crate::families::{make_broom, make_double_broom, make_gij, make_path, make_tell, FamilyError, TellStrategy};
use crate::paths::{path_counts_fast, path_counts_naive};
use crate::profile::{all_profiles, ProfileBuilder};
use crate::scale_free::{
    enumerate_histories, exact_expected_pk_table, injection_f, injection_path, path_probability,
    sequence_probability, signature_of_path, valley_paths,
};
use crate::Rational;

const MAX_LISTED: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown check {0:?}; expected one of prop1, corollary1, gij-tables, theorem1, tell, prop2, lemma1, theorem3")]
pub struct UnknownCheck(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Check {
    Prop1,
    Corollary1,
    GijTables,
    Theorem1,
    Tell,
    Prop2,
    Lemma1,
    Theorem3,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Prop1,
        Check::Corollary1,
        Check::GijTables,
        Check::Theorem1,
        Check::Tell,
        Check::Prop2,
        Check::Lemma1,
        Check::Theorem3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Prop1 => "prop1",
            Check::Corollary1 => "corollary1",
            Check::GijTables => "gij-tables",
            Check::Theorem1 => "theorem1",
            Check::Tell => "tell",
            Check::Prop2 => "prop2",
            Check::Lemma1 => "lemma1",
            Check::Theorem3 => "theorem3",
        }
    }

    /// Size bound used when none is given: path length, largest `i`,
    /// largest `l`, or largest `n`, depending on the check.
    pub fn default_size(self) -> usize {
        match self {
            Check::Prop1 => 200,
            Check::Corollary1 => 50,
            Check::GijTables => 5,
            Check::Theorem1 => 10,
            Check::Tell => 3,
            Check::Prop2 => 0,
            Check::Lemma1 => 7,
            Check::Theorem3 => 7,
        }
    }

    pub fn run(self, max_size: Option<usize>) -> CheckReport {
        let size = max_size.unwrap_or(self.default_size());
        let mut r = CheckReport::new(self, size);
        match self {
            Check::Prop1 => prop1(size, &mut r),
            Check::Corollary1 => corollary1(size, &mut r),
            Check::GijTables => gij_tables(size, &mut r),
            Check::Theorem1 => theorem1(size, &mut r),
            Check::Tell => tell(size, &mut r),
            Check::Prop2 => prop2(&mut r),
            Check::Lemma1 => lemma1(size, &mut r),
            Check::Theorem3 => theorem3(size, &mut r),
        }
        r
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: Check,
    pub max_size: usize,
    pub cases: usize,
    pub failed: usize,
    /// The first few failures.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(check: Check, max_size: usize) -> Self {
        CheckReport {
            check,
            max_size,
            cases: 0,
            failed: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0 && self.cases > 0
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(what());
            }
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} cases, {} failed",
            self.check,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases,
            self.failed
        )?;
        if self.check.default_size() > 0 {
            write!(f, ", max size {}", self.max_size)?;
        }
        writeln!(f, ")")?;
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        for fail in &self.failures {
            writeln!(f, "  fail: {fail}")?;
        }
        Ok(())
    }
}

fn prop1(max_len: usize, r: &mut CheckReport) {
    for n in 2..=max_len {
        let ps = all_profiles::<u64>(&make_path(n)).expect("path of length >= 2");
        for p in &ps {
            let class = classify(&p.entries);
            r.expect(matches!(class, Monotonicity::Constant | Monotonicity::NonDecreasing), || {
                format!("path {n}: vertex {} is {class:?}", p.vertex)
            });
        }
        let mut crossing_pairs = 0usize;
        for (u, pu) in ps.iter().enumerate() {
            for pv in &ps[u + 1..] {
                if count_crossings(pu, pv).expect("same tree").count > 0 {
                    crossing_pairs += 1;
                }
            }
        }
        r.expect(crossing_pairs == 0, || format!("path {n}: {crossing_pairs} crossing pairs"));
    }
}

fn corollary1(max_len: usize, r: &mut CheckReport) {
    for n in 2..=max_len {
        let table = path_counts_naive::<BigUint>(&make_path(n));
        for k in 2..=n {
            let total = path_pk(n as u64, k as u64).expect("in domain");
            r.expect(total == table.count_up_to(k), || format!("P_{k} on path {n}"));
            for i in 0..=n / 2 {
                let got = path_pkv(n as u64, i as u64, k as u64).expect("in domain");
                r.expect(got == table.count_through_up_to(i, k), || {
                    format!("P_{k}({i}) on path {n}: closed form {got}, oracle {}", table.count_through_up_to(i, k))
                });
            }
        }
    }
}

fn gij_tables(max_i: usize, r: &mut CheckReport) {
    for i in 3..=max_i.max(3) {
        for j in 5..=7 {
            let (tree, v) = make_gij(i, j).expect("valid parameters");
            let table = path_counts_fast::<BigUint>(&tree);
            let last = i * (j + 1) + 1;
            for k in 2..=table.diameter() {
                match gij_pk(i as u64, j as u64, k as u64) {
                    Ok(x) => r.expect(k <= last && x == table.count(k), || {
                        format!("G_{i},{j}: p_{k} table {x}, oracle {}", table.count(k))
                    }),
                    Err(FamilyError::OutOfTabulatedRange { .. }) => {
                        r.expect(k > last, || format!("G_{i},{j}: p_{k} missing from the table"))
                    }
                    Err(e) => r.expect(false, || format!("G_{i},{j}: p_{k}: {e}")),
                }
            }
            for rr in 2..i {
                let base = rr * (j + 1);
                let totals = gij_prefix_triple(i as u64, j as u64, rr as u64).expect("in domain");
                let through = gij_through_triple(i as u64, j as u64, rr as u64).expect("in domain");
                for (off, (t, p)) in totals.iter().zip(&through).enumerate() {
                    let k = base + 2 + off;
                    r.expect(*t == table.count_up_to(k), || {
                        format!("G_{i},{j} r={rr}: P_{k} row {t}, oracle {}", table.count_up_to(k))
                    });
                    r.expect(*p == table.count_through_up_to(v, k), || {
                        format!("G_{i},{j} r={rr}: P_{k}(v) row {p}, oracle {}", table.count_through_up_to(v, k))
                    });
                }
            }
        }
    }
}

fn theorem1(max_i: usize, r: &mut CheckReport) {
    for i in 3..=max_i.max(3) {
        let (tree, v) = make_gij(i, 5).expect("valid parameters");
        let p = ProfileBuilder::<u128>::new(&tree)
            .and_then(|b| b.profile(v))
            .expect("diameter >= 2");
        for rr in 2..i {
            let k = 6 * rr + 2;
            r.expect(p.at(k) > p.at(k + 1) && p.at(k + 1) < p.at(k + 2), || {
                format!("G_{i},5 r={rr}: no dip at k={k}..{}", k + 2)
            });
        }
        let dips = count_dips(&p).count;
        r.expect(dips + 2 >= i, || format!("G_{i},5: {dips} dips, want >= {}", i - 2));
    }
}

fn check_tell(l: usize, strategy: TellStrategy, r: &mut CheckReport) {
    let built = match make_tell(l, strategy) {
        Ok(b) => b,
        Err(e @ FamilyError::SearchCapExceeded { .. }) if strategy == TellStrategy::PaperBound => {
            r.notes.push(format!("l={l} {strategy}: {e}"));
            return;
        }
        Err(e) => return r.expect(false, || format!("l={l} {strategy}: {e}")),
    };
    let b = ProfileBuilder::<u128>::new(&built.tree).expect("diameter >= 2");
    let (pu, pv) = (b.profile(built.u).expect("u"), b.profile(built.v).expect("v"));
    for i in 1..l {
        let (even, odd) = (2 * i, 2 * i + 1);
        r.expect(pu.at(even).through > pv.at(even).through, || {
            format!("l={l} {strategy}: P_{even}(u) <= P_{even}(v)")
        });
        r.expect(pv.at(odd).through > pu.at(odd).through, || {
            format!("l={l} {strategy}: P_{odd}(v) <= P_{odd}(u)")
        });
    }
    let crossings = count_crossings(&pu, &pv).expect("same tree").count;
    r.expect(crossings + 3 >= 2 * l, || format!("l={l} {strategy}: {crossings} crossings"));
    r.notes.push(format!(
        "l={l} {strategy}: n={} a={:?} b={:?} crossings={crossings}",
        built.tree.n(),
        built.choice.a,
        built.choice.b
    ));
}

fn tell(max_l: usize, r: &mut CheckReport) {
    for l in 1..=max_l.max(1) {
        check_tell(l, TellStrategy::MinimalSearch, r);
        check_tell(l, TellStrategy::PaperBound, r);
    }
}

fn prop2(r: &mut CheckReport) {
    let (tree, mid) = make_double_broom(10, 1000).expect("valid parameters");
    let b = ProfileBuilder::<u128>::new(&tree).expect("diameter >= 2");
    let p = b.profile(mid).expect("in range");
    let d = b.diameter();
    let last = p.at(d);
    for k in 2..d {
        let e = p.at(k);
        // BC_k / BC_d < 1/10
        r.expect(10 * e.through * last.total < e.total * last.through, || {
            format!("K_10,1000: BC_{k}/BC_{d} = {:.4}", e.to_f64() / last.to_f64())
        });
    }
    r.notes.push(format!("K_10,1000: d={d}, BC_2/BC_d = {:.5}", p.at(2).to_f64() / last.to_f64()));

    let (tree, center) = make_broom(1000, 50).expect("valid parameters");
    let b = ProfileBuilder::<u128>::new(&tree).expect("diameter >= 2");
    let p = b.profile(center).expect("in range");
    let d = b.diameter();
    let last = p.at(d);
    let e = p.at(2);
    r.expect(e.through * last.total > 2 * e.total * last.through, || {
        format!("H_1000,50: BC_2/BC_{d} = {:.4}", e.to_f64() / last.to_f64())
    });
    r.notes.push(format!("H_1000,50: d={d}, BC_2/BC_d = {:.3}", e.to_f64() / last.to_f64()));
}

/// Calls `f` on every sequence of distinct labels from `1..=n` with at
/// least two entries and first < last.
fn for_each_sequence(n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, seq: &mut Vec<usize>, used: &mut [bool], f: &mut impl FnMut(&[usize])) {
        if seq.len() >= 2 && seq[0] < seq[seq.len() - 1] {
            f(seq);
        }
        for x in 1..=n {
            if !used[x] {
                used[x] = true;
                seq.push(x);
                rec(n, seq, used, f);
                seq.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut Vec::new(), &mut vec![false; n + 1], f);
}

fn lemma1(max_n: usize, r: &mut CheckReport) {
    for n in 2..=max_n.max(2) {
        let h = match enumerate_histories(n) {
            Ok(h) => h,
            Err(e) => return r.expect(false, || e.to_string()),
        };
        r.expect(h.total() == Rational::from_integer(1u32.into()), || {
            format!("n={n}: history probabilities sum to {}", h.total())
        });
        let mut zero = 0usize;
        for_each_sequence(n, &mut |seq| {
            let want = sequence_probability(seq).expect("simple sequence");
            if want == Rational::from_integer(0u32.into()) {
                zero += 1;
            }
            let got = h.presence(seq);
            r.expect(got == want, || format!("n={n} {seq:?}: enumeration {got}, formula {want}"));
        });
        r.notes.push(format!("n={n}: {} histories, {zero} non-valley sequences with probability 0", h.len()));
    }
}

fn theorem3(max_n: usize, r: &mut CheckReport) {
    let mut per_case: BTreeMap<usize, usize> = BTreeMap::new();
    for n in 3..=max_n.max(3) {
        let table = match exact_expected_pk_table(n) {
            Ok(t) => t,
            Err(e) => return r.expect(false, || e.to_string()),
        };
        for k in 2..n {
            for v in 1..n {
                r.expect(table[v - 1][k] > table[v][k], || {
                    format!("n={n} k={k}: E[p_k({v})] = {} <= E[p_k({})] = {}", table[v - 1][k], v + 1, table[v][k])
                });
            }
            for v in 1..n {
                let w = v + 1;
                let mut images: HashSet<Vec<usize>> = HashSet::new();
                let mut preimage: HashMap<_, _> = HashMap::new();
                for path in valley_paths(n, k) {
                    if !path[1..k].contains(&w) {
                        continue;
                    }
                    let sig = signature_of_path(&path).expect("valley path");
                    let (case, fsig) = injection_f(&sig, v).expect("w interior");
                    *per_case.entry(case.number()).or_default() += 1;
                    let image = injection_path(&path, v).expect("w interior");
                    let ratio = path_probability(&fsig) / path_probability(&sig);
                    let ok = signature_of_path(&image).as_ref() == Ok(&fsig)
                        && image.len() == path.len()
                        && fsig.len() == k
                        && fsig.is_interior(v)
                        && ratio == case.factor(v)
                        && images.insert(image.clone())
                        && preimage.insert(fsig.clone(), sig.clone()).is_none_or(|old| old == sig);
                    r.expect(ok, || {
                        format!("n={n} k={k} v={v}: {path:?} -> {image:?} (case {}, ratio {ratio})", case.number())
                    });
                }
            }
        }
        let col: Vec<String> = (1..=n).map(|v| table[v - 1][2].to_string()).collect();
        r.notes.push(format!("n={n}: E[p_2(v)] = {}", col.join(", ")));
    }
    let seen: Vec<String> = per_case.iter().map(|(c, m)| format!("case {c}: {m}")).collect();
    r.notes.push(format!("injection cases seen: {}", seen.join(", ")));
    for case in 1..=6 {
        r.expect(per_case.contains_key(&case), || format!("injection case {case} never exercised"));
    }
}
