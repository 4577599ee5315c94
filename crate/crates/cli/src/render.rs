//! Plain-text exporters: ascii level dumps, Graphviz dot and csv.

use std::fmt::Write;

use fibtree_core::tree::level_interval;
use fibtree_core::{word, FibTree, Letter, Result, WythoffArray};
use num_bigint::BigInt;

/// One line per level: index, letter pattern, then the labels.
pub fn ascii_tree(t: &FibTree, levels: u32) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "{t}").unwrap();
    for n in 0..=levels {
        let iv = level_interval(t, n);
        let pattern = word(n)?;
        let labels: Vec<String> = (0..pattern.len())
            .map(|i| (&iv.lo + BigInt::from(i)).to_string())
            .collect();
        writeln!(out, "{n:>3}  {pattern}  {}", labels.join(" ")).unwrap();
    }
    Ok(out)
}

/// Graphviz digraph. Nodes are named `n{level}_{pos}`; u-nodes are ellipses
/// and v-nodes triangles.
pub fn dot_tree(t: &FibTree, levels: u32) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "digraph \"{t}\" {{").unwrap();
    for n in 0..=levels {
        let iv = level_interval(t, n);
        let pattern = word(n)?;
        let mut seen_u = 0usize;
        for (i, &letter) in pattern.letters.iter().enumerate() {
            let pos = i + 1;
            let label = &iv.lo + BigInt::from(i);
            let shape = match letter {
                Letter::U => "ellipse",
                Letter::V => "triangle",
            };
            if letter == Letter::U {
                seen_u += 1;
            }
            writeln!(out, "  n{n}_{pos} [label=\"{label}\", shape={shape}];").unwrap();
            if n > 0 {
                // the parent's position is the u-count up to and including this node
                writeln!(out, "  n{}_{seen_u} -> n{n}_{pos};", n - 1).unwrap();
            }
        }
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}

pub fn csv_array(arr: &WythoffArray) -> String {
    let mut out = String::new();
    for row in &arr.rows {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    out
}

pub fn csv_wythoff(rows: &[(BigInt, BigInt, BigInt)]) -> String {
    let mut out = String::from("n,u,v\n");
    for (n, u, v) in rows {
        writeln!(out, "{n},{u},{v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_edges_follow_parent_positions() {
        let dot = dot_tree(&FibTree::new(0, 1), 3).unwrap();
        assert!(dot.contains("n0_1 [label=\"0\", shape=ellipse];"));
        assert!(dot.contains("n1_2 [label=\"1\", shape=triangle];"));
        assert!(dot.contains("n0_1 -> n1_1;"));
        assert!(dot.contains("n0_1 -> n1_2;"));
        // W_3 = uvuuv: positions 4 and 5 hang from position 3 of W_2
        assert!(dot.contains("n2_3 -> n3_4;"));
        assert!(dot.contains("n2_3 -> n3_5;"));
        assert!(dot.contains("n2_2 -> n3_3;"));
        assert_eq!(dot.matches("->").count(), 2 + 3 + 5);
    }

    #[test]
    fn ascii_lines() {
        let s = ascii_tree(&FibTree::new(0, 1), 2).unwrap();
        assert_eq!(s, "F^{0,1}\n  0  u  0\n  1  uv  0 1\n  2  uvu  -1 0 1\n");
    }
}
