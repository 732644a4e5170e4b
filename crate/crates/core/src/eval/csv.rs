//! CSV output. Floats are written with 15 significant digits in exponent
//! form so identical inputs give byte-identical files.

use std::io::{self, Write};

use super::figures::{KldRow, PdfRow};
use super::scenario::RunMetrics;

fn num(x: f64) -> String {
    format!("{x:.14e}")
}

/// `step,run,err_bingham_rad,err_kalman_rad`, one row per run and step.
pub fn write_step_errors<W: Write>(out: &mut W, m: &RunMetrics) -> io::Result<()> {
    writeln!(out, "step,run,err_bingham_rad,err_kalman_rad")?;
    for (run, errs) in m.run_errors.iter().enumerate() {
        for (step, e) in errs.iter().enumerate() {
            writeln!(out, "{step},{run},{},{}", num(e.bingham), num(e.kalman))?;
        }
    }
    Ok(())
}

/// `step,mean_err_bingham_rad,mean_err_kalman_rad`, averaged over runs.
pub fn write_step_means<W: Write>(out: &mut W, m: &RunMetrics) -> io::Result<()> {
    writeln!(out, "step,mean_err_bingham_rad,mean_err_kalman_rad")?;
    for (step, e) in m.per_step_err.iter().enumerate() {
        writeln!(out, "{step},{},{}", num(e.bingham), num(e.kalman))?;
    }
    Ok(())
}

pub fn write_pdf_rows<W: Write>(out: &mut W, rows: &[PdfRow]) -> io::Result<()> {
    writeln!(out, "theta_rad,z1,pdf")?;
    for r in rows {
        writeln!(out, "{},{},{}", num(r.theta), num(r.z1), num(r.pdf))?;
    }
    Ok(())
}

pub fn write_kld_rows<W: Write>(out: &mut W, rows: &[KldRow]) -> io::Result<()> {
    writeln!(out, "z1,kld_nats")?;
    for r in rows {
        writeln!(out, "{},{}", num(r.z1), num(r.kld))?;
    }
    Ok(())
}
