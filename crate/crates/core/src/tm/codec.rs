//! Inverse-unary input codec: the value `m` is `m` blank cells followed by
//! one divider cell.

use serde::{Deserialize, Serialize};

use super::TmError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cell {
    Blank,
    Divider,
}

/// Per-round chosen values, in round order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct InputAssignment(pub Vec<u64>);

pub fn encode_inputs(vals: &InputAssignment) -> Vec<Cell> {
    let mut cells = Vec::with_capacity(vals.0.iter().map(|&v| v as usize + 1).sum());
    for &v in &vals.0 {
        cells.extend(std::iter::repeat_n(Cell::Blank, v as usize));
        cells.push(Cell::Divider);
    }
    cells
}

pub fn decode_inputs(cells: &[Cell]) -> Result<InputAssignment, TmError> {
    let mut vals = Vec::new();
    let mut run = 0u64;
    for c in cells {
        match c {
            Cell::Blank => run += 1,
            Cell::Divider => {
                vals.push(run);
                run = 0;
            }
        }
    }
    if run > 0 {
        return Err(TmError::MalformedInput(format!("{run} trailing blank cells without a divider")));
    }
    Ok(InputAssignment(vals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Cell::{Blank, Divider};

    #[test]
    fn encodes_three() {
        assert_eq!(encode_inputs(&InputAssignment(vec![3])), vec![Blank, Blank, Blank, Divider]);
    }

    #[test]
    fn encodes_zero() {
        assert_eq!(encode_inputs(&InputAssignment(vec![0])), vec![Divider]);
    }

    #[test]
    fn decodes_examples() {
        assert_eq!(decode_inputs(&[Divider, Divider]).unwrap().0, vec![0, 0]);
        assert_eq!(decode_inputs(&[Blank, Divider]).unwrap().0, vec![1]);
        assert!(decode_inputs(&[Blank, Blank]).is_err());
    }

    #[test]
    fn round_trips_two_values() {
        let v = InputAssignment(vec![2, 5]);
        assert_eq!(decode_inputs(&encode_inputs(&v)).unwrap(), v);
    }

    proptest! {
        #[test]
        fn decode_inverts_encode(vals in proptest::collection::vec(0u64..=1000, 0..6)) {
            let v = InputAssignment(vals);
            prop_assert_eq!(decode_inputs(&encode_inputs(&v)).unwrap(), v);
        }
    }
}
