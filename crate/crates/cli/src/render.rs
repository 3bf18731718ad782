//! Plain-text rendering helpers shared by the commands.

use rbhom_core::linalg::Matrix;
use rbhom_core::scalar::Scalar;
use rbhom_core::Report;

use crate::CmdError;

/// One violation per line, as `<label> @ (<indices>) lhs=.. rhs=..`.
pub fn print_report(report: &Report) {
    print!("{report}");
}

pub fn summary(name: &str, report: &Report) -> bool {
    if report.is_empty() {
        println!("{name}: ok");
        true
    } else {
        println!("{name}: {} violation(s)", report.len());
        print_report(report);
        false
    }
}

/// Parse `name=value` assignments with scalar literal values.
pub fn parse_assignments(set: &[String]) -> Result<rbhom_core::table2::Params, CmdError> {
    let mut params = rbhom_core::table2::Params::new();
    for entry in set {
        let Some((name, value)) = entry.split_once('=') else {
            return Err(CmdError::Usage(format!("--set needs NAME=VALUE, got `{entry}`")));
        };
        let scalar = rbhom_io::parse_scalar(value.trim())
            .map_err(|e| CmdError::Usage(format!("value of `{name}`: {e}")))?;
        params.insert(name.trim().to_string(), scalar);
    }
    Ok(params)
}

/// Column-major scalar list into a rows x cols matrix.
pub fn parse_matrix(text: &str, rows: usize, cols: usize, what: &str) -> Result<Matrix, CmdError> {
    let entries: Vec<Scalar> = text
        .split(',')
        .map(|part| {
            rbhom_io::parse_scalar(part.trim())
                .map_err(|e| CmdError::Usage(format!("{what}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if entries.len() != rows * cols {
        return Err(CmdError::Usage(format!(
            "{what}: expected {} entries ({rows} x {cols}, column-major), got {}",
            rows * cols,
            entries.len()
        )));
    }
    let mut m = Matrix::zeros(rows, cols);
    for (k, v) in entries.into_iter().enumerate() {
        m.set(k % rows, k / rows, v);
    }
    Ok(m)
}
