//! CSV and LaTeX renderings of type records.

use super::{centralizer_label, centralizer_label_latex, TypeRecord};

pub fn to_csv(records: &[TypeRecord]) -> String {
    let mut out = String::from("type,n_A,centralizer,centralizer_order,index\n");
    for r in records {
        out.push_str(&format!(
            "\"{}\",\"{}\",\"{}\",\"{}\",\"{}\"\n",
            r.ty,
            r.n_a.factored(),
            centralizer_label(&r.ty),
            r.z_a.factored(),
            r.index.factored()
        ));
    }
    out
}

/// A four-column `array` with one row per type.
pub fn to_latex(records: &[TypeRecord]) -> String {
    let mut out = String::from(
        "\\begin{array}{|c|c|c|c|}\n\\hline\nA & n_{A} & Z(A) & \\text{index} \\\\\n\\hline\n",
    );
    for r in records {
        out.push_str(&format!(
            "\\mathtt{{{}}} & {} & {} & {} \\\\\n",
            r.ty,
            r.n_a.factored().latex(),
            centralizer_label_latex(&r.ty),
            r.index.factored().latex()
        ));
    }
    out.push_str("\\hline\n\\end{array}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_types, reference_table};
    use super::*;
    use crate::polyq::PolyQ;

    /// Each emitted row carries the printed `n_A` and index of its type.
    #[test]
    fn latex_rows_match_reference() {
        for n in 2..=3 {
            let latex = to_latex(&enumerate_types(n, false));
            let rows: Vec<Vec<String>> = latex
                .lines()
                .filter(|l| l.starts_with("\\mathtt"))
                .map(|l| l.trim_end_matches("\\\\").split(" & ").map(|c| c.trim().to_string()).collect())
                .collect();
            let reference = reference_table(n).unwrap();
            assert_eq!(rows.len(), reference.len());
            for r in reference {
                let row = rows
                    .iter()
                    .find(|c| c[0] == format!("\\mathtt{{{}}}", r.ty))
                    .unwrap_or_else(|| panic!("{} missing", r.ty));
                assert_eq!(row.len(), 4);
                for (cell, printed) in [(&row[1], r.n_a), (&row[3], r.index)] {
                    assert_eq!(
                        PolyQ::parse_latex(cell).unwrap(),
                        PolyQ::parse_latex(printed).unwrap(),
                        "{} {cell}",
                        r.ty
                    );
                }
            }
        }
    }

    #[test]
    fn csv_has_a_row_per_type() {
        assert_eq!(to_csv(&enumerate_types(4, false)).lines().count(), 23);
    }
}
