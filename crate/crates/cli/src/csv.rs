//! Shared CSV cell formatting: 17 significant digits, `divergent` for
//! infinite energies.

use qdot_erasure::Energy;

pub fn real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn energy(e: Energy) -> String {
    match e {
        Energy::Finite(v) => real(v),
        Energy::Divergent => "divergent".to_string(),
    }
}

pub fn row(cells: &[String]) -> String {
    let mut line = cells.join(",");
    line.push('\n');
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let x = 0.1 + 0.2;
        assert_eq!(real(x).parse::<f64>().unwrap(), x);
        assert_eq!(energy(Energy::Divergent), "divergent");
        assert_eq!(row(&["a".into(), "b".into()]), "a,b\n");
    }
}
