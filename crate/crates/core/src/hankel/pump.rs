use std::fmt;
use std::fmt::Write as _;

use crate::decimal::sig12;
use crate::hankel::{HankelError, HankelShorthand};
use crate::lattice::PiSign;

/// Recorded in every pump file header: a block `−c·π^±` is emitted as the
/// same line as `+c·π^±` with its Y-polarized component phase-shifted by 180°.
pub const SIGN_CONVENTION: &str = "negative-block->yphase180";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarization {
    /// +45° in the (Z, Y) plane; couples with the π⁺ pattern.
    Plus45,
    /// −45°; couples with the π⁻ pattern.
    Minus45,
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarization::Plus45 => "+45",
            Polarization::Minus45 => "-45",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum YPhase {
    Zero,
    Pi,
}

impl fmt::Display for YPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            YPhase::Zero => "0",
            YPhase::Pi => "180",
        })
    }
}

/// One pump frequency. The line at skew index `d` couples block-frequency
/// pairs `(m, n)` with `m + n = d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PumpLine {
    pub frequency_index: usize,
    /// Relative amplitude; the largest line is 1.
    pub amplitude: f64,
    pub polarization: Polarization,
    pub y_phase: YPhase,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PumpSpectrum {
    pub lines: Vec<PumpLine>,
    pub n_qumodes: usize,
    pub block_side: usize,
}

impl PumpSpectrum {
    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// `max d − min d`, zero for an empty spectrum.
    pub fn bandwidth_span(&self) -> usize {
        match (self.lines.first(), self.lines.last()) {
            (Some(a), Some(b)) => b.frequency_index - a.frequency_index,
            _ => 0,
        }
    }
}

/// One line per nonzero shorthand entry, each of which must be `c·π^±`.
pub fn compile_pump(s: &HankelShorthand) -> Result<PumpSpectrum, HankelError> {
    if s.block_side() != 2 {
        return Err(HankelError::PumpBlockSide(s.block_side()));
    }
    let mut raw = Vec::new();
    for k in s.nonzero_positions() {
        let (pi, c) = s.entries()[k].as_pi_multiple().ok_or(HankelError::NotCompilable(k))?;
        raw.push((k, pi, c));
    }
    let max = raw.iter().map(|&(_, _, c)| c.abs().0).max().unwrap_or(1);
    let lines = raw
        .into_iter()
        .map(|(k, pi, c)| PumpLine {
            frequency_index: k,
            amplitude: f64::from(c.abs().0) / f64::from(max),
            polarization: match pi {
                PiSign::Plus => Polarization::Plus45,
                PiSign::Minus => Polarization::Minus45,
            },
            y_phase: if c.0 < 0 { YPhase::Pi } else { YPhase::Zero },
        })
        .collect();
    Ok(PumpSpectrum {
        lines,
        n_qumodes: s.n_blocks() * s.block_side(),
        block_side: s.block_side(),
    })
}

/// Block-frequency pairs `(m, n)`, `m ≤ n < n_blocks`, coupled by the line at `d`.
pub fn coupled_pairs(d: usize, n_blocks: usize) -> Vec<(usize, usize)> {
    (0..n_blocks)
        .filter_map(|m| {
            let n = d.checked_sub(m)?;
            (m <= n && n < n_blocks).then_some((m, n))
        })
        .collect()
}

pub fn write_pump_file(p: &PumpSpectrum) -> String {
    let mut out = format!(
        "n_qumodes={} block_side={} sign_convention={SIGN_CONVENTION}\n",
        p.n_qumodes, p.block_side
    );
    for l in &p.lines {
        let _ = writeln!(
            out,
            "d={} amp={} pol={} yphase={}",
            l.frequency_index,
            sig12(l.amplitude),
            l.polarization,
            l.y_phase
        );
    }
    out
}

pub fn parse_pump_file(text: &str) -> Result<PumpSpectrum, HankelError> {
    let bad = |m: &str| HankelError::BadPumpFile(m.to_string());
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let mut n_qumodes = None;
    let mut block_side = None;
    for field in header.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| bad(header))?;
        match key {
            "n_qumodes" => n_qumodes = Some(value.parse().map_err(|_| bad(header))?),
            "block_side" => block_side = Some(value.parse().map_err(|_| bad(header))?),
            "sign_convention" if value == SIGN_CONVENTION => {}
            _ => return Err(bad(header)),
        }
    }
    let mut out = Vec::new();
    for line in lines {
        let mut d = None;
        let mut amp = None;
        let mut pol = None;
        let mut phase = None;
        for field in line.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| bad(line))?;
            match key {
                "d" => d = value.parse().ok(),
                "amp" => amp = value.parse::<f64>().ok(),
                "pol" => {
                    pol = match value {
                        "+45" => Some(Polarization::Plus45),
                        "-45" => Some(Polarization::Minus45),
                        _ => None,
                    }
                }
                "yphase" => {
                    phase = match value {
                        "0" => Some(YPhase::Zero),
                        "180" => Some(YPhase::Pi),
                        _ => None,
                    }
                }
                _ => return Err(bad(line)),
            }
        }
        match (d, amp, pol, phase) {
            (Some(frequency_index), Some(amplitude), Some(polarization), Some(y_phase)) => out.push(PumpLine {
                frequency_index,
                amplitude,
                polarization,
                y_phase,
            }),
            _ => return Err(bad(line)),
        }
    }
    Ok(PumpSpectrum {
        lines: out,
        n_qumodes: n_qumodes.ok_or_else(|| bad("missing n_qumodes"))?,
        block_side: block_side.ok_or_else(|| bad("missing block_side"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{projector2, projector4, BlockWeight};

    fn shorthand(entries: Vec<BlockWeight>) -> HankelShorthand {
        HankelShorthand::new(entries[0].side(), entries).unwrap()
    }

    #[test]
    fn empty_spectrum() {
        let p = compile_pump(&shorthand(vec![BlockWeight::zeros(2); 7])).unwrap();
        assert!(p.lines.is_empty());
        assert_eq!(p.n_qumodes, 8);
        assert_eq!(p.bandwidth_span(), 0);
    }

    #[test]
    fn signs_and_polarizations() {
        let z = BlockWeight::zeros(2);
        let plus = projector2(PiSign::Plus).scaled(1, 2).unwrap();
        let minus = projector2(PiSign::Minus).scaled(-1, 2).unwrap();
        let p = compile_pump(&shorthand(vec![z.clone(), plus, z, minus.clone(), minus])).unwrap();
        assert_eq!(p.lines.len(), 3);
        assert_eq!(p.lines[0].polarization, Polarization::Plus45);
        assert_eq!(p.lines[0].y_phase, YPhase::Zero);
        assert_eq!(p.lines[1].frequency_index, 3);
        assert_eq!(p.lines[1].polarization, Polarization::Minus45);
        assert_eq!(p.lines[1].y_phase, YPhase::Pi);
        assert!(p.lines.iter().all(|l| l.amplitude == 1.0));
        assert_eq!(p.bandwidth_span(), 3);
        let text = write_pump_file(&p);
        assert!(text.starts_with("n_qumodes=6 block_side=2 sign_convention="));
        assert!(text.contains("d=3 amp=1.00000000000e0 pol=-45 yphase=180\n"));
        assert_eq!(parse_pump_file(&text).unwrap(), p);
    }

    #[test]
    fn rejects_non_pi_blocks() {
        let odd = BlockWeight::from_numerators(2, &[1, 0, 0, 1]).unwrap();
        let z = BlockWeight::zeros(2);
        assert_eq!(
            compile_pump(&shorthand(vec![z.clone(), odd, z])).unwrap_err(),
            HankelError::NotCompilable(1)
        );
        let four = shorthand(vec![projector4(0).unwrap()]);
        assert_eq!(compile_pump(&four).unwrap_err(), HankelError::PumpBlockSide(4));
    }

    #[test]
    fn pairs_on_a_skew_diagonal() {
        assert_eq!(coupled_pairs(0, 3), vec![(0, 0)]);
        assert_eq!(coupled_pairs(3, 3), vec![(1, 2)]);
        assert_eq!(coupled_pairs(4, 3), vec![(2, 2)]);
        assert!(coupled_pairs(5, 3).is_empty());
    }
}
