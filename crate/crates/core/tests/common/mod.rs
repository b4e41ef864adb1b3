#![allow(dead_code)]

use std::sync::OnceLock;

use ais_core::pipeline::{CatalogRun, NetworkAnalysis};
use ais_core::{Row, RunConfig};
use rayon::prelude::*;

/// Every AIS normal form by brute force: all 11! orderings of the intervals
/// 1..=11, keeping those whose partial sums hit 12 distinct pitch classes.
pub fn brute_force_normal_forms() -> Vec<Row> {
    let mut rows: Vec<Row> = (1u8..=11)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut rest: Vec<u8> = (1..=11).filter(|&i| i != first).collect();
            let mut found = Vec::new();
            loop {
                if let Some(row) = row_if_all_interval(first, &rest) {
                    found.push(row);
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            found
        })
        .collect();
    rows.sort();
    rows
}

fn row_if_all_interval(first: u8, rest: &[u8]) -> Option<Row> {
    let mut pitches = [0u8; 12];
    let mut seen = 1u16;
    let mut pc = 0u8;
    for (k, &step) in std::iter::once(&first).chain(rest).enumerate() {
        pc = (pc + step) % 12;
        if seen & (1 << pc) != 0 {
            return None;
        }
        seen |= 1 << pc;
        pitches[k + 1] = pc;
    }
    Some(Row::from_array(pitches).expect("twelve distinct pitch classes"))
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn catalog_run() -> &'static CatalogRun {
    static RUN: OnceLock<CatalogRun> = OnceLock::new();
    RUN.get_or_init(|| CatalogRun::generate().unwrap())
}

/// Default configuration: threshold 20, inverse-d² weights, seed 0.
pub fn default_network() -> &'static NetworkAnalysis {
    static NET: OnceLock<NetworkAnalysis> = OnceLock::new();
    NET.get_or_init(|| NetworkAnalysis::run(&catalog_run().catalog, &RunConfig::default()).unwrap())
}

pub fn row(s: &str) -> Row {
    s.parse().unwrap()
}

/// (label, row, intervals) for every reference catalog entry whose printed row is
/// an all-interval normal form consistent with its printed interval column.
pub fn reference_catalog() -> Vec<(String, Row, String)> {
    include_str!("../fixtures/catalog_reference.tsv")
        .lines()
        .skip(1)
        .map(|line| {
            let mut f = line.split('\t');
            let label = f.next().unwrap().to_owned();
            let row = row(f.next().unwrap());
            let intervals = f.next().unwrap().to_owned();
            (label, row, intervals)
        })
        .collect()
}

/// Nodes with no neighbour at d² <= 20.
pub const HERMITS: [&str; 111] = [
    "12-22", "12-32", "12-46L", "12-62", "12-118", "12-135", "12-138", "12-140", "12-154L",
    "12-168", "12-184", "12-201", "12-232", "12-235", "12-236", "12-274L", "12-275", "12-279",
    "12-298", "12-311L", "12-330", "12-349", "12-370L", "12-374", "12-378", "12-383", "12-384",
    "12-391", "12-392", "12-397", "12-398", "12-399", "12-425", "12-429", "12-433", "12-442",
    "12-455", "12-465", "12-470", "12-476L", "12-495L", "12-497L", "12-527L", "12-533", "12-543",
    "12-544", "12-560", "12-561", "12-568", "12-582", "12-601", "12-608", "12-616", "12-621",
    "12-635", "12-636", "12-655", "12-661", "12-685", "12-716", "12-721", "12-733", "12-737",
    "12-743", "12-759", "12-762S", "12-772", "12-773", "12-775", "12-785", "12-787", "12-789",
    "12-797", "12-804", "12-807L", "12-811", "12-812", "12-813", "12-814", "12-824S", "12-825",
    "12-829L", "12-830", "12-838", "12-839", "12-845L", "12-849", "12-851", "12-852", "12-853",
    "12-855", "12-857", "12-860", "12-861L", "12-863", "12-868", "12-869", "12-870L", "12-871",
    "12-872", "12-875", "12-878", "12-881L", "12-883", "12-889", "12-890", "12-898", "12-903",
    "12-907S", "12-909", "12-912",
];

/// Pairs at d² = 2, in catalog order.
pub const CLOSE_COUPLED: [(&str, &str); 42] = [
    ("12-5", "12-7"),
    ("12-8", "12-380"),
    ("12-13", "12-17"),
    ("12-18", "12-19"),
    ("12-24", "12-25S"),
    ("12-24", "12-393S"),
    ("12-48", "12-111"),
    ("12-52", "12-57"),
    ("12-53", "12-58"),
    ("12-82", "12-84"),
    ("12-95", "12-96"),
    ("12-114L", "12-125"),
    ("12-159", "12-167"),
    ("12-172", "12-214L"),
    ("12-175", "12-215"),
    ("12-176", "12-182"),
    ("12-176", "12-216"),
    ("12-219", "12-252"),
    ("12-244L", "12-248"),
    ("12-367", "12-369P"),
    ("12-389", "12-390"),
    ("12-389", "12-394"),
    ("12-430", "12-432S"),
    ("12-430", "12-688S"),
    ("12-459", "12-483L"),
    ("12-462", "12-485"),
    ("12-644", "12-645"),
    ("12-648", "12-649"),
    ("12-654", "12-656"),
    ("12-656", "12-657"),
    ("12-694", "12-777P"),
    ("12-701", "12-782"),
    ("12-707", "12-786L"),
    ("12-711", "12-712S"),
    ("12-711", "12-793S"),
    ("12-718", "12-796"),
    ("12-723", "12-727"),
    ("12-734L", "12-741L"),
    ("12-753", "12-754"),
    ("12-821", "12-823S"),
    ("12-828L", "12-843"),
    ("12-893L", "12-917L"),
];

/// Six mutually close rows and their squared distances.
pub const NEIGHBOURHOOD: [&str; 6] = ["12-657", "12-656", "12-654", "12-125", "12-114L", "12-59L"];
pub const NEIGHBOURHOOD_D2: [[u32; 6]; 6] = [
    [0, 2, 4, 16, 18, 8],
    [2, 0, 2, 14, 16, 10],
    [4, 2, 0, 16, 14, 8],
    [16, 14, 16, 0, 2, 12],
    [18, 16, 14, 2, 0, 10],
    [8, 10, 8, 12, 10, 0],
];
