//! Serialisation of permutation tables as S-boxes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::table::MapTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SboxFormat {
    /// Little-endian unsigned integers of a fixed width.
    Binary,
    /// One zero-padded lowercase hex entry per line.
    Hex,
}

impl SboxFormat {
    /// `.bin` or `.hex`.
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext {
            "bin" => Some(SboxFormat::Binary),
            "hex" => Some(SboxFormat::Hex),
            _ => None,
        }
    }
}

/// Smallest width in bytes (1, 2 or 4) holding `size - 1`.
pub fn entry_width(size: u32) -> usize {
    match size - 1 {
        0..=0xff => 1,
        0x100..=0xffff => 2,
        _ => 4,
    }
}

pub fn encode(table: &MapTable, format: SboxFormat) -> Vec<u8> {
    let width = entry_width(table.field().size());
    match format {
        SboxFormat::Binary => table
            .values()
            .iter()
            .flat_map(|v| v.rank().to_le_bytes().into_iter().take(width))
            .collect(),
        SboxFormat::Hex => table
            .values()
            .iter()
            .map(|v| format!("{:0w$x}\n", v.rank(), w = 2 * width))
            .collect::<String>()
            .into_bytes(),
    }
}

pub fn decode(field: &Field, bytes: &[u8], format: SboxFormat) -> Result<MapTable> {
    let width = entry_width(field.size());
    let ranks: Vec<u32> = match format {
        SboxFormat::Binary => {
            if bytes.len() != width * field.size() as usize {
                return Err(Error::Parse(format!("expected {} bytes, got {}", width * field.size() as usize, bytes.len())));
            }
            bytes
                .chunks(width)
                .map(|c| {
                    let mut b = [0u8; 4];
                    b[..width].copy_from_slice(c);
                    u32::from_le_bytes(b)
                })
                .collect()
        }
        SboxFormat::Hex => std::str::from_utf8(bytes)
            .map_err(|e| Error::Parse(e.to_string()))?
            .lines()
            .map(|l| u32::from_str_radix(l.trim(), 16).map_err(|e| Error::Parse(format!("{l:?}: {e}"))))
            .collect::<Result<_>>()?,
    };
    MapTable::from_ranks(field, &ranks)
}

/// Sidecar metadata written next to an exported S-box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub field: String,
    pub poly: String,
    pub inverse_coeffs: String,
    pub involution: bool,
}
