//! CSV emission. Floats are written with 17 significant digits.

use std::io::{self, Write};

use super::sweep::{InsetTable, SweepSummary};
use super::TrajectoryResult;

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_row<W: Write>(w: &mut W, values: &[f64]) -> io::Result<()> {
    let mut first = true;
    for v in values {
        if !first {
            w.write_all(b",")?;
        }
        first = false;
        w.write_all(format_float(*v).as_bytes())?;
    }
    w.write_all(b"\n")
}

/// Columns `t_over_tau, fidelity, rx, ry, rz, purity` with purity `2|r|`.
pub fn write_trajectory<W: Write>(traj: &TrajectoryResult, mut w: W) -> io::Result<()> {
    writeln!(w, "t_over_tau,fidelity,rx,ry,rz,purity")?;
    for ((t, f), r) in traj.times.iter().zip(&traj.fidelity).zip(&traj.bloch) {
        write_row(&mut w, &[*t, *f, r.x, r.y, r.z, 2.0 * r.norm()])?;
    }
    Ok(())
}

/// Columns `phi, theta, fidelity_tau`.
pub fn write_sweep<W: Write>(sweep: &SweepSummary, mut w: W) -> io::Result<()> {
    writeln!(w, "phi,theta,fidelity_tau")?;
    for c in &sweep.cells {
        write_row(&mut w, &[c.phi, c.theta, c.fidelity])?;
    }
    Ok(())
}

/// Rectangular table: one row per temperature, one column per cycle count.
pub fn write_inset_table<W: Write>(table: &InsetTable, mut w: W) -> io::Result<()> {
    write!(w, "T_kelvin")?;
    for n in &table.cycles {
        write!(w, ",n_{n}")?;
    }
    writeln!(w)?;
    for (t, row) in table.temperatures.iter().zip(&table.fidelity) {
        let mut values = vec![*t];
        values.extend(row);
        write_row(&mut w, &values)?;
    }
    Ok(())
}

/// Long form: columns `T_kelvin, n, fidelity_tau`.
pub fn write_inset_long<W: Write>(table: &InsetTable, mut w: W) -> io::Result<()> {
    writeln!(w, "T_kelvin,n,fidelity_tau")?;
    for (t, row) in table.temperatures.iter().zip(&table.fidelity) {
        for (n, f) in table.cycles.iter().zip(row) {
            writeln!(w, "{},{n},{}", format_float(*t), format_float(*f))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        let x = 0.719_895_549_076_539_f64;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn row_joins_with_commas() {
        let mut buf = Vec::new();
        write_row(&mut buf, &[1.0, -2.5]).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "1.0000000000000000e0,-2.5000000000000000e0\n"
        );
    }
}
