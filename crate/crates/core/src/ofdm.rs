//! CP-OFDM synthesis and demodulation on the common sampling grid.
//!
//! Every signal spans one alignment window: a single numerology-1 symbol with
//! its CP, which holds `2^(k2 - k1)` numerology-2 symbols. Each block is
//! generated at baseband with its own `n_fft`-point transform and then moved to
//! its place on the reference grid by a complex-exponential shift applied
//! sample by sample over the whole window. The receiver undoes the shift,
//! drops each CP and runs the forward transform.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rand::RngCore;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::numerology::{NumerologyIndex, SpectrumAllocation};

/// Unit-energy QPSK constellation point from two bits.
#[inline]
fn qpsk(bits: u64) -> Complex64 {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    Complex64::new(if bits & 1 == 0 { a } else { -a }, if bits & 2 == 0 { a } else { -a })
}

/// Data symbols and per-subcarrier amplitudes for one numerology block.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolGrid {
    numerology: NumerologyIndex,
    /// `[ofdm symbol][subcarrier]`, unit average energy.
    qam: Vec<Vec<Complex64>>,
    amplitude: Vec<f64>,
}

impl SymbolGrid {
    pub fn new(numerology: NumerologyIndex, qam: Vec<Vec<Complex64>>, amplitude: Vec<f64>) -> Result<Self> {
        for row in &qam {
            if row.len() != amplitude.len() {
                return Err(Error::Dimension {
                    context: "symbol grid row",
                    expected: amplitude.len(),
                    actual: row.len(),
                });
            }
        }
        Ok(SymbolGrid {
            numerology,
            qam,
            amplitude,
        })
    }

    /// Fresh uniform QPSK data for every cell of the block, amplitudes taken
    /// from the owning UEs.
    pub fn random_qpsk<R: RngCore + ?Sized>(alloc: &SpectrumAllocation, which: NumerologyIndex, rng: &mut R) -> Self {
        let amplitude = alloc.amplitudes(which);
        let symbols = alloc.symbols_per_window(which);
        let n = amplitude.len();
        let mut qam = Vec::with_capacity(symbols);
        for _ in 0..symbols {
            let mut row = Vec::with_capacity(n);
            let mut bits = 0u64;
            for i in 0..n {
                if i % 32 == 0 {
                    bits = rng.next_u64();
                }
                row.push(qpsk(bits));
                bits >>= 2;
            }
            qam.push(row);
        }
        SymbolGrid {
            numerology: which,
            qam,
            amplitude,
        }
    }

    pub fn zeros(alloc: &SpectrumAllocation, which: NumerologyIndex) -> Self {
        let amplitude = alloc.amplitudes(which);
        let qam = vec![vec![Complex64::new(0.0, 0.0); amplitude.len()]; alloc.symbols_per_window(which)];
        SymbolGrid {
            numerology: which,
            qam,
            amplitude,
        }
    }

    pub fn numerology(&self) -> NumerologyIndex {
        self.numerology
    }

    pub fn qam(&self) -> &[Vec<Complex64>] {
        &self.qam
    }

    pub fn amplitude(&self) -> &[f64] {
        &self.amplitude
    }

    pub fn n_symbols(&self) -> usize {
        self.qam.len()
    }

    pub fn n_subcarriers(&self) -> usize {
        self.amplitude.len()
    }

    /// Transmitted values: amplitude times data symbol.
    pub fn scaled(&self) -> Vec<Vec<Complex64>> {
        self.qam
            .iter()
            .map(|row| row.iter().zip(&self.amplitude).map(|(q, a)| q * a).collect())
            .collect()
    }
}

/// Time-domain samples over one alignment window at the common rate.
#[derive(Debug, Clone, PartialEq)]
pub struct BasebandSignal {
    samples: Vec<Complex64>,
    sample_rate_khz: f64,
}

impl BasebandSignal {
    pub fn new(samples: Vec<Complex64>, sample_rate_khz: f64) -> Self {
        BasebandSignal {
            samples,
            sample_rate_khz,
        }
    }

    pub fn zeros(len: usize, sample_rate_khz: f64) -> Self {
        BasebandSignal::new(vec![Complex64::new(0.0, 0.0); len], sample_rate_khz)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn sample_rate_khz(&self) -> f64 {
        self.sample_rate_khz
    }

    /// Mean power per sample.
    pub fn power(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }

    pub fn negated(&self) -> Self {
        BasebandSignal::new(self.samples.iter().map(|s| -s).collect(), self.sample_rate_khz)
    }
}

/// Element-wise superposition of two signals on the same grid.
pub fn compose(a: &BasebandSignal, b: &BasebandSignal) -> Result<BasebandSignal> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            context: "compose",
            expected: a.len(),
            actual: b.len(),
        });
    }
    if a.sample_rate_khz != b.sample_rate_khz {
        return Err(Error::argument(format!(
            "cannot compose signals at {} kHz and {} kHz",
            a.sample_rate_khz, b.sample_rate_khz
        )));
    }
    let samples = a.samples.iter().zip(&b.samples).map(|(x, y)| x + y).collect();
    Ok(BasebandSignal::new(samples, a.sample_rate_khz))
}

#[derive(Clone)]
struct Chain {
    n_fft: usize,
    cp: usize,
    symbols: usize,
    n_subcarriers: usize,
    inverse: Arc<dyn Fft<f64>>,
    forward: Arc<dyn Fft<f64>>,
    /// `exp(j 2 pi start_bin n / n_ref)` for every window sample.
    shift: Vec<Complex64>,
}

/// Transmit and receive chains for both blocks of one spectrum layout.
///
/// Only the geometry of the allocation is captured, so a modem can be reused
/// across allocations that differ only in UE powers.
#[derive(Clone)]
pub struct OfdmModem {
    window: usize,
    sample_rate_khz: f64,
    chains: [Chain; 2],
}

fn slot(which: NumerologyIndex) -> usize {
    match which {
        NumerologyIndex::One => 0,
        NumerologyIndex::Two => 1,
    }
}

impl OfdmModem {
    pub fn new(alloc: &SpectrumAllocation) -> Self {
        let mut planner = FftPlanner::new();
        let window = alloc.window_len();
        let n_ref = alloc.n_ref();
        let mut chain = |which: NumerologyIndex| {
            let num = alloc.numerology(which);
            let block = alloc.block(which);
            let start = block.start_bin;
            let shift = (0..window)
                .map(|n| {
                    // exact integer phase before going to floating point
                    let phase = ((start * n) % n_ref) as f64 / n_ref as f64;
                    Complex64::from_polar(1.0, TAU * phase)
                })
                .collect();
            Chain {
                n_fft: num.n_fft(),
                cp: num.cp_samples(),
                symbols: alloc.symbols_per_window(which),
                n_subcarriers: block.n_subcarriers,
                inverse: planner.plan_fft_inverse(num.n_fft()),
                forward: planner.plan_fft_forward(num.n_fft()),
                shift,
            }
        };
        let chains = [chain(NumerologyIndex::One), chain(NumerologyIndex::Two)];
        OfdmModem {
            window,
            sample_rate_khz: alloc.numerology(NumerologyIndex::One).sample_rate_khz(),
            chains,
        }
    }

    pub fn window_len(&self) -> usize {
        self.window
    }

    pub fn synthesize(&self, grid: &SymbolGrid) -> Result<BasebandSignal> {
        let c = &self.chains[slot(grid.numerology())];
        if grid.n_symbols() != c.symbols {
            return Err(Error::Dimension {
                context: "symbols per window",
                expected: c.symbols,
                actual: grid.n_symbols(),
            });
        }
        if grid.n_subcarriers() != c.n_subcarriers {
            return Err(Error::Dimension {
                context: "subcarriers per symbol",
                expected: c.n_subcarriers,
                actual: grid.n_subcarriers(),
            });
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut out = Vec::with_capacity(self.window);
        let mut buf = vec![zero; c.n_fft];
        let mut scratch = vec![zero; c.inverse.get_inplace_scratch_len()];
        for row in grid.qam() {
            buf.fill(zero);
            for ((b, q), a) in buf.iter_mut().zip(row).zip(grid.amplitude()) {
                *b = q * a;
            }
            c.inverse.process_with_scratch(&mut buf, &mut scratch);
            out.extend_from_slice(&buf[c.n_fft - c.cp..]);
            out.extend_from_slice(&buf);
        }
        for (x, s) in out.iter_mut().zip(&c.shift) {
            *x *= s;
        }
        Ok(BasebandSignal::new(out, self.sample_rate_khz))
    }

    /// Receiver of numerology `which`: returns `[symbol][subcarrier]` values
    /// for that block's allocated subcarriers.
    pub fn demodulate(&self, sig: &BasebandSignal, which: NumerologyIndex) -> Result<Vec<Vec<Complex64>>> {
        if sig.len() != self.window {
            return Err(Error::Dimension {
                context: "demodulate window",
                expected: self.window,
                actual: sig.len(),
            });
        }
        let c = &self.chains[slot(which)];
        let zero = Complex64::new(0.0, 0.0);
        let mut scratch = vec![zero; c.forward.get_inplace_scratch_len()];
        let mut buf = vec![zero; c.n_fft];
        let norm = 1.0 / c.n_fft as f64;
        let sym_len = c.n_fft + c.cp;
        let mut out = Vec::with_capacity(c.symbols);
        for s in 0..c.symbols {
            let start = s * sym_len + c.cp;
            let body = &sig.samples()[start..start + c.n_fft];
            let shift = &c.shift[start..start + c.n_fft];
            for ((b, x), w) in buf.iter_mut().zip(body).zip(shift) {
                *b = x * w.conj();
            }
            c.forward.process_with_scratch(&mut buf, &mut scratch);
            out.push(buf[..c.n_subcarriers].iter().map(|v| v * norm).collect());
        }
        Ok(out)
    }
}

/// One-shot synthesis; builds a throwaway [`OfdmModem`].
pub fn synthesize(alloc: &SpectrumAllocation, grid: &SymbolGrid, which: NumerologyIndex) -> Result<BasebandSignal> {
    if grid.numerology() != which {
        return Err(Error::argument(format!(
            "grid belongs to numerology {} but numerology {which} was requested",
            grid.numerology()
        )));
    }
    OfdmModem::new(alloc).synthesize(grid)
}

/// One-shot demodulation; builds a throwaway [`OfdmModem`].
pub fn demodulate(
    sig: &BasebandSignal,
    alloc: &SpectrumAllocation,
    which: NumerologyIndex,
) -> Result<Vec<Vec<Complex64>>> {
    OfdmModem::new(alloc).demodulate(sig, which)
}
