use std::sync::Arc;

use crate::catmod::RepModule;
use crate::decomp::{decompose, Certificate, Summand};

use super::IoError;

/// An interval `[birth, death]` of positions `1..=n` along the linear order.
pub type Bar = (usize, usize);

/// Support of an interval summand, given vertex positions; `None` if the
/// summand is not an interval module.
fn interval_of(s: &Summand, position: &[usize]) -> Option<Bar> {
    let m = &s.module;
    if m.ranks().iter().any(|&r| r > 1) {
        return None;
    }
    let mut support: Vec<usize> = (0..position.len())
        .filter(|&v| m.rank(v) == 1)
        .map(|v| position[v])
        .collect();
    support.sort_unstable();
    let (&first, &last) = (support.first()?, support.last()?);
    if last - first + 1 != support.len() {
        return None;
    }
    for (ai, a) in m.quiver().arrows().iter().enumerate() {
        if m.rank(a.source) == 1 && m.rank(a.target) == 1 && m.map(ai).residue().get(0, 0).is_zero() {
            return None;
        }
    }
    Some((first + 1, last + 1))
}

/// Decomposes a module over a linearly oriented `A_n` and reads off its bars,
/// sorted by `(birth, death)`.
pub fn barcode(m: &Arc<RepModule>, seed: u64) -> Result<Vec<Bar>, IoError> {
    let order = m.quiver().linear_order().ok_or(IoError::NotTotallyOrdered)?;
    if !m.algebra().is_field() {
        return Err(IoError::NotTotallyOrdered);
    }
    let mut position = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let d = decompose(m, seed)?;
    let mut bars = Vec::with_capacity(d.len());
    for (index, (s, c)) in d.summands.iter().zip(&d.certificates).enumerate() {
        let bar = (*c == Certificate::ScalarRing)
            .then(|| interval_of(s, &position))
            .flatten()
            .ok_or(IoError::NonIntervalSummand { index })?;
        bars.push(bar);
    }
    bars.sort_unstable();
    Ok(bars)
}

/// One row per bar, three columns per vertex, `─` over covered vertices.
pub fn render_barcode(bars: &[Bar], labels: &[String]) -> String {
    let mut out = String::from("        ");
    for l in labels {
        out.push_str(&format!("{l:^3}"));
    }
    let mut out = out.trim_end().to_string();
    out.push('\n');
    for &(b, d) in bars {
        let mut line = format!("{:<8}", format!("[{b},{d}]"));
        for v in 1..=labels.len() {
            line.push_str(if (b..=d).contains(&v) { "───" } else { "   " });
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catmod::fixtures_for_tests::*;

    #[test]
    fn v_ex_has_two_bars() {
        let v = Arc::new(v_ex(2));
        assert_eq!(barcode(&v, 1).unwrap(), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn interval_is_one_bar() {
        let i = Arc::new(interval(3, 5, 2, 4));
        assert_eq!(barcode(&i, 1).unwrap(), vec![(2, 4)]);
    }

    #[test]
    fn zero_module_has_no_bars() {
        let v = v_ex(2);
        let z = Arc::new(RepModule::zero(v.algebra().clone(), v.quiver().clone()));
        assert!(barcode(&z, 1).unwrap().is_empty());
        assert_eq!(render_barcode(&[], v.quiver().vertices()), "         1  2  3\n");
    }

    #[test]
    fn loop_is_not_totally_ordered() {
        let (s1, _) = s1_and_p1(2);
        assert!(matches!(barcode(&Arc::new(s1), 1), Err(IoError::NotTotallyOrdered)));
    }

    #[test]
    fn rendering() {
        let labels: Vec<String> = ["1", "2", "3"].iter().map(|s| s.to_string()).collect();
        let text = render_barcode(&[(1, 2), (2, 3)], &labels);
        assert_eq!(text, "         1  2  3\n[1,2]   ──────\n[2,3]      ──────\n");
    }
}
