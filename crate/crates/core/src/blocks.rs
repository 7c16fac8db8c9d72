//! Block dimensions of the two central subalgebras and of their intersection and sum,
//! read off from the shifted Weyl orbits: each orbit `W . mu` contributes a block
//! in which both subalgebras have dimension `[W : W_mu]` and meet in the unit.

use std::io::Write;

use serde::Serialize;

use crate::affine_orbits::{orbit_table, Action, OrbitTable, ResWeight, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, RootType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub rep: ResWeight,
    pub index: u64,
    pub ztilde: u64,
    pub zprime: u64,
    pub intersection: u64,
    pub sum: u64,
    pub steinberg: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockTotals {
    pub ztilde: u64,
    pub zprime: u64,
    pub intersection: u64,
    pub sum: u64,
    pub xbar: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub l: u32,
    pub r#type: String,
    pub blocks: Vec<Block>,
    pub totals: BlockTotals,
}

impl BlockReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Output(e.to_string());
        w.write_record(["rep", "index", "ztilde", "zprime", "intersection", "sum", "steinberg"])
            .map_err(io)?;
        for b in &self.blocks {
            let rep: Vec<String> = b.rep.0.iter().map(u32::to_string).collect();
            w.write_record([
                rep.join(" "),
                b.index.to_string(),
                b.ztilde.to_string(),
                b.zprime.to_string(),
                b.intersection.to_string(),
                b.sum.to_string(),
                b.steinberg.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Output(e.to_string()))?;
        Ok(())
    }

    pub fn steinberg_block(&self) -> Option<&Block> {
        self.blocks.iter().find(|b| b.steinberg)
    }
}

/// Block report for a table of shifted-action orbits.
pub fn block_report(table: &OrbitTable) -> Result<BlockReport> {
    if table.action() != Action::BulletOnP {
        return Err(Error::Unsupported(format!(
            "block report needs the bullet action, got {}",
            table.action()
        )));
    }
    let steinberg = ResWeight(vec![table.l() - 1; table.rank()]);
    let blocks: Vec<Block> = table
        .orbits()
        .iter()
        .map(|o| Block {
            rep: o.representative.clone(),
            index: o.size,
            ztilde: o.size,
            zprime: o.size,
            intersection: 1,
            sum: 2 * o.size - 1,
            steinberg: o.representative == steinberg,
        })
        .collect();
    let points = table.total_points();
    let xbar = blocks.len() as u64;
    let totals = BlockTotals {
        ztilde: blocks.iter().map(|b| b.ztilde).sum(),
        zprime: blocks.iter().map(|b| b.zprime).sum(),
        intersection: blocks.iter().map(|b| b.intersection).sum(),
        sum: blocks.iter().map(|b| b.sum).sum(),
        xbar,
    };
    let consistent = totals.ztilde == points
        && totals.zprime == points
        && totals.intersection == xbar
        && totals.sum == 2 * points - xbar
        && blocks.iter().filter(|b| b.steinberg).count() == 1;
    if !consistent {
        return Err(Error::Verification(format!("block totals inconsistent: {totals:?}")));
    }
    Ok(BlockReport {
        l: table.l(),
        r#type: table.type_label().to_string(),
        blocks,
        totals,
    })
}

/// Closed-form totals for rank one and two of type A.
pub fn closed_form_totals(root_type: RootType, rank: usize, l: u32) -> Result<BlockTotals> {
    let l = l as u64;
    match (root_type, rank) {
        (RootType::A, 1) => {
            let regular = (l - 1) / 2;
            Ok(BlockTotals {
                ztilde: 2 * regular + 1,
                zprime: 2 * regular + 1,
                intersection: regular + 1,
                sum: 3 * regular + 1,
                xbar: regular + 1,
            })
        }
        (RootType::A, 2) => {
            let three = l - 1;
            let six = (l - 1) * (l - 2) / 6;
            let dim = 1 + 3 * three + 6 * six;
            Ok(BlockTotals {
                ztilde: dim,
                zprime: dim,
                intersection: 1 + three + six,
                sum: 1 + 5 * three + 11 * six,
                xbar: 1 + three + six,
            })
        }
        _ => Err(Error::Unsupported(format!(
            "closed forms exist only for A1 and A2, not {root_type}{rank}"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckRow {
    pub l: u32,
    pub admissible: bool,
    pub enumerated: Option<BlockTotals>,
    pub closed_form: Option<BlockTotals>,
    pub pass: bool,
}

/// Compares enumerated totals with the closed forms for every odd `l` in `3..=max_l`.
/// Inadmissible `l` are listed but not checked.
pub fn closed_form_crosscheck(root_type: RootType, rank: usize, max_l: u32) -> Result<Vec<CrosscheckRow>> {
    let datum = RootDatum::build(root_type, rank)?;
    let mut rows = vec![];
    for l in (3..=max_l).step_by(2) {
        if !datum.check_l(l as i64).is_ok() {
            rows.push(CrosscheckRow { l, admissible: false, enumerated: None, closed_form: None, pass: true });
            continue;
        }
        let table = orbit_table(&datum, l, Action::BulletOnP, DEFAULT_BUDGET)?;
        let enumerated = block_report(&table)?.totals;
        let closed = closed_form_totals(root_type, rank, l)?;
        rows.push(CrosscheckRow {
            l,
            admissible: true,
            pass: enumerated == closed,
            enumerated: Some(enumerated),
            closed_form: Some(closed),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(r: usize, l: u32) -> BlockReport {
        let d = RootDatum::build(RootType::A, r).unwrap();
        block_report(&orbit_table(&d, l, Action::BulletOnP, DEFAULT_BUDGET).unwrap()).unwrap()
    }

    #[test]
    fn sl2_l5() {
        let rep = report(1, 5);
        let dims: Vec<u64> = rep.blocks.iter().map(|b| b.ztilde).collect();
        assert_eq!(dims, vec![2, 2, 1]);
        assert_eq!(rep.totals.ztilde, 5);
        assert_eq!(rep.totals.sum, 7);
        let st = rep.steinberg_block().unwrap();
        assert_eq!((st.ztilde, st.zprime, st.intersection, st.sum), (1, 1, 1, 1));
    }

    #[test]
    fn sl3_sums() {
        let r7 = report(2, 7);
        assert_eq!(r7.totals.sum, 1 + 5 * 6 + 11 * 5);
        assert_eq!(r7.totals.sum, 86);
        let r5 = report(2, 5);
        assert_eq!(r5.totals.sum, 43);
        assert_eq!(r5.totals.sum, 2 * 25 - r5.totals.xbar);
    }

    #[test]
    fn crosschecks() {
        let a1 = closed_form_crosscheck(RootType::A, 1, 13).unwrap();
        assert_eq!(a1.len(), 6);
        assert!(a1.iter().all(|r| r.admissible && r.pass));
        let a2 = closed_form_crosscheck(RootType::A, 2, 13).unwrap();
        let checked: Vec<u32> = a2.iter().filter(|r| r.admissible).map(|r| r.l).collect();
        assert_eq!(checked, vec![5, 7, 11, 13]);
        assert!(a2.iter().all(|r| r.pass));
        assert!(closed_form_crosscheck(RootType::D, 4, 9).is_err());
    }

    #[test]
    fn a2_l9_is_rejected() {
        let d = RootDatum::build(RootType::A, 2).unwrap();
        assert!(matches!(
            orbit_table(&d, 9, Action::BulletOnP, DEFAULT_BUDGET),
            Err(Error::Inadmissible { .. })
        ));
    }

    #[test]
    fn invariants_over_types() {
        for (ty, r, ls) in [
            (RootType::A, 3, vec![5u32, 7]),
            (RootType::D, 4, vec![7]),
            (RootType::A, 1, vec![3, 15, 21]),
        ] {
            let d = RootDatum::build(ty, r).unwrap();
            for l in ls {
                let t = orbit_table(&d, l, Action::BulletOnP, DEFAULT_BUDGET).unwrap();
                let rep = block_report(&t).unwrap();
                assert_eq!(rep.totals.intersection as usize, t.len());
                assert_eq!(rep.totals.ztilde, rep.totals.zprime);
                assert_eq!(rep.totals.ztilde, (l as u64).pow(r as u32));
            }
        }
    }

    #[test]
    fn rejects_natural_action() {
        let d = RootDatum::build(RootType::A, 1).unwrap();
        let t = orbit_table(&d, 5, Action::CircOnP, DEFAULT_BUDGET).unwrap();
        assert!(block_report(&t).is_err());
    }

    #[test]
    fn csv_and_json() {
        let rep = report(1, 3);
        let mut buf = vec![];
        rep.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "rep,index,ztilde,zprime,intersection,sum,steinberg\n0,2,2,2,1,3,false\n2,1,1,1,1,1,true\n"
        );
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["totals"]["sum"], 4);
        assert_eq!(json["totals"]["xbar"], 2);
    }
}
