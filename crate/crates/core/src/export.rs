//! File writers: catalog CSV/JSON, edge lists, GEXF and GraphML.

use std::fmt::Write as _;
use std::io::Write;

use csv::{QuoteStyle, WriterBuilder};

use crate::classify::Catalog;
use crate::error::Result;
use crate::metric::DistanceMatrix;
use crate::network::{AisGraph, CommunityAssignment};

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// Columns: label, row, intervals, s, p, l, link_windows.
pub fn write_catalog_csv<W: Write>(out: W, catalog: &Catalog) -> Result<()> {
    let mut w = WriterBuilder::new()
        .quote_style(QuoteStyle::NonNumeric)
        .from_writer(out);
    w.write_record(["label", "row", "intervals", "s", "p", "l", "link_windows"])?;
    for e in catalog.entries() {
        let windows = e
            .link_windows
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(";");
        w.write_record([
            e.label.as_str(),
            &e.row.to_string(),
            &e.intervals.to_string(),
            flag(e.s),
            flag(e.p),
            flag(e.l),
            &windows,
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_catalog_json<W: Write>(mut out: W, catalog: &Catalog) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, catalog.entries())?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Columns: source, target, d_squared, weight.
pub fn write_edgelist_csv<W: Write>(out: W, graph: &AisGraph, catalog: &Catalog) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(out);
    w.write_record(["source", "target", "d_squared", "weight"])?;
    for e in graph.edges() {
        w.write_record([
            catalog.entries()[e.a].label.as_str(),
            &catalog.entries()[e.b].label,
            &e.d_squared.to_string(),
            &e.weight.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Columns: label_a, label_b, d_squared, for every pair with `0 < d² <= cap`.
pub fn write_distances_csv<W: Write>(
    out: W,
    matrix: &DistanceMatrix,
    catalog: &Catalog,
    cap: u32,
) -> Result<()> {
    let mut w = WriterBuilder::new().from_writer(out);
    w.write_record(["label_a", "label_b", "d_squared"])?;
    for (i, j, d) in matrix.pairs_within(cap) {
        w.write_record([
            catalog.entries()[i].label.as_str(),
            &catalog.entries()[j].label,
            &d.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn community_of(communities: Option<&CommunityAssignment>, node: usize) -> i64 {
    communities.map_or(-1, |c| c.partition[node] as i64)
}

/// GEXF 1.3. Nodes carry label, degree, community (-1 when not computed),
/// s/p/l flags and the row; edges carry d_squared and weight.
pub fn write_gexf<W: Write>(
    mut out: W,
    graph: &AisGraph,
    catalog: &Catalog,
    communities: Option<&CommunityAssignment>,
) -> Result<()> {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<gexf xmlns=\"http://gexf.net/1.3\" version=\"1.3\">\n");
    writeln!(
        s,
        "  <meta>\n    <creator>ais</creator>\n    <description>all-interval prime forms, d^2 &lt;= {}, weight {}</description>\n  </meta>",
        graph.threshold_sq(),
        graph.weight_mode()
    )
    .unwrap();
    s.push_str("  <graph mode=\"static\" defaultedgetype=\"undirected\">\n");
    s.push_str("    <attributes class=\"node\">\n");
    for (id, title, ty) in [
        ("degree", "degree", "integer"),
        ("community", "community", "integer"),
        ("s", "s", "boolean"),
        ("p", "p", "boolean"),
        ("l", "l", "boolean"),
        ("row", "row", "string"),
    ] {
        writeln!(
            s,
            "      <attribute id=\"{id}\" title=\"{title}\" type=\"{ty}\"/>"
        )
        .unwrap();
    }
    s.push_str("    </attributes>\n");
    s.push_str("    <attributes class=\"edge\">\n");
    s.push_str("      <attribute id=\"d_squared\" title=\"d_squared\" type=\"integer\"/>\n");
    s.push_str("    </attributes>\n");
    s.push_str("    <nodes>\n");
    for e in catalog.entries() {
        writeln!(
            s,
            "      <node id=\"{}\" label=\"{}\">\n        <attvalues>\n          <attvalue for=\"degree\" value=\"{}\"/>\n          <attvalue for=\"community\" value=\"{}\"/>\n          <attvalue for=\"s\" value=\"{}\"/>\n          <attvalue for=\"p\" value=\"{}\"/>\n          <attvalue for=\"l\" value=\"{}\"/>\n          <attvalue for=\"row\" value=\"{}\"/>\n        </attvalues>\n      </node>",
            e.index,
            xml_escape(&e.label),
            graph.degree(e.index),
            community_of(communities, e.index),
            e.s,
            e.p,
            e.l,
            e.row,
        )
        .unwrap();
    }
    s.push_str("    </nodes>\n");
    s.push_str("    <edges>\n");
    for (id, e) in graph.edges().iter().enumerate() {
        writeln!(
            s,
            "      <edge id=\"{id}\" source=\"{}\" target=\"{}\" weight=\"{}\">\n        <attvalues>\n          <attvalue for=\"d_squared\" value=\"{}\"/>\n        </attvalues>\n      </edge>",
            e.a, e.b, e.weight, e.d_squared
        )
        .unwrap();
    }
    s.push_str("    </edges>\n  </graph>\n</gexf>\n");
    out.write_all(s.as_bytes())?;
    Ok(())
}

pub fn write_graphml<W: Write>(
    mut out: W,
    graph: &AisGraph,
    catalog: &Catalog,
    communities: Option<&CommunityAssignment>,
) -> Result<()> {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n");
    for (id, target, name, ty) in [
        ("label", "node", "label", "string"),
        ("degree", "node", "degree", "int"),
        ("community", "node", "community", "int"),
        ("s", "node", "s", "boolean"),
        ("p", "node", "p", "boolean"),
        ("l", "node", "l", "boolean"),
        ("row", "node", "row", "string"),
        ("d_squared", "edge", "d_squared", "int"),
        ("weight", "edge", "weight", "double"),
    ] {
        writeln!(
            s,
            "  <key id=\"{id}\" for=\"{target}\" attr.name=\"{name}\" attr.type=\"{ty}\"/>"
        )
        .unwrap();
    }
    s.push_str("  <graph id=\"ais\" edgedefault=\"undirected\">\n");
    for e in catalog.entries() {
        writeln!(
            s,
            "    <node id=\"n{}\">\n      <data key=\"label\">{}</data>\n      <data key=\"degree\">{}</data>\n      <data key=\"community\">{}</data>\n      <data key=\"s\">{}</data>\n      <data key=\"p\">{}</data>\n      <data key=\"l\">{}</data>\n      <data key=\"row\">{}</data>\n    </node>",
            e.index,
            xml_escape(&e.label),
            graph.degree(e.index),
            community_of(communities, e.index),
            e.s,
            e.p,
            e.l,
            e.row,
        )
        .unwrap();
    }
    for (id, e) in graph.edges().iter().enumerate() {
        writeln!(
            s,
            "    <edge id=\"e{id}\" source=\"n{}\" target=\"n{}\">\n      <data key=\"d_squared\">{}</data>\n      <data key=\"weight\">{}</data>\n    </edge>",
            e.a, e.b, e.d_squared, e.weight
        )
        .unwrap();
    }
    s.push_str("  </graph>\n</graphml>\n");
    out.write_all(s.as_bytes())?;
    Ok(())
}
