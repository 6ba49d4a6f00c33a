//! Clocked dataflow model of the combined generator. A round has two
//! phases: phase A runs the two XORshifts and the BBS in parallel,
//! phase B folds their words into the 16-bit state. The two-phase
//! schedule spends one clock per phase; the overlapped schedule runs
//! phase A of round n+1 during phase B of round n, emitting one word
//! per clock after a single fill cycle.

use crate::engines::{FpgaCiprng, FpgaProfile, SourceWords};
use crate::error::Result;
use crate::xorshift::ShiftTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleMode {
    TwoPhase,
    Overlapped,
}

impl ScheduleMode {
    pub fn name(&self) -> &'static str {
        match self {
            ScheduleMode::TwoPhase => "two-phase",
            ScheduleMode::Overlapped => "overlapped",
        }
    }

    /// Steady-state output rate in bits per clock cycle.
    pub fn bits_per_cycle(&self) -> f64 {
        match self {
            ScheduleMode::TwoPhase => 8.0,
            ScheduleMode::Overlapped => 16.0,
        }
    }
}

/// What happened during one clock cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleEvent {
    pub cycle: u64,
    /// Sub-generator words computed this cycle (phase A activity).
    pub drawn: Option<SourceWords>,
    /// Word emitted this cycle (phase B activity).
    pub emitted: Option<u16>,
}

impl CycleEvent {
    /// Waveform-style trace line: cycle index, phase letters, unit
    /// outputs in hex.
    pub fn trace_line(&self) -> String {
        let phase = match (self.drawn.is_some(), self.emitted.is_some()) {
            (true, true) => "AB",
            (true, false) => "A-",
            (false, true) => "-B",
            (false, false) => "--",
        };
        let units = match self.drawn {
            Some(w) => format!("xs1={:016x} xs2={:016x} bbs={:x}", w.x, w.y, w.t),
            None => "xs1=---------------- xs2=---------------- bbs=-".into(),
        };
        let out = match self.emitted {
            Some(z) => format!("out={z:04x}"),
            None => "out=----".into(),
        };
        format!("cycle={:<8} phase={} {} {}", self.cycle, phase, units, out)
    }
}

/// Default clock after the PLL: 400 MHz.
pub const DEFAULT_CLOCK_MHZ: f64 = 400.0;

#[derive(Debug, Clone)]
pub struct PipelineModel {
    mode: ScheduleMode,
    clock_mhz: f64,
    generator: FpgaCiprng,
    triple: ShiftTriple,
    cycles: u64,
    emitted_bits: u64,
    /// Words latched by phase A, waiting for phase B.
    latch: Option<SourceWords>,
}

impl PipelineModel {
    pub fn new(profile: &FpgaProfile, mode: ScheduleMode, clock_mhz: f64) -> Result<Self> {
        Ok(Self {
            mode,
            clock_mhz,
            generator: FpgaCiprng::from_profile(profile)?,
            triple: profile.triple,
            cycles: 0,
            emitted_bits: 0,
            latch: None,
        })
    }

    pub fn mode(&self) -> ScheduleMode {
        self.mode
    }

    pub fn cycles(&self) -> u64 {
        self.cycles
    }

    pub fn emitted_bits(&self) -> u64 {
        self.emitted_bits
    }

    pub fn completed_rounds(&self) -> u64 {
        self.emitted_bits / 16
    }

    /// Advances one clock cycle.
    pub fn step_cycle(&mut self) -> Result<CycleEvent> {
        self.cycles += 1;
        let event = match self.mode {
            ScheduleMode::TwoPhase => {
                if self.latch.is_none() {
                    // Phase A: the three sources fire in parallel.
                    let words = self.generator.draw_sources()?;
                    self.latch = Some(words);
                    CycleEvent {
                        cycle: self.cycles,
                        drawn: Some(words),
                        emitted: None,
                    }
                } else {
                    // Phase B: combine the latched words into the state.
                    let words = self.latch.take().expect("latch filled in phase A");
                    let z = self.generator.combine(words);
                    self.emitted_bits += 16;
                    CycleEvent {
                        cycle: self.cycles,
                        drawn: None,
                        emitted: Some(z),
                    }
                }
            }
            ScheduleMode::Overlapped => {
                // Phase B of the previous round (if filled) plus phase A
                // of the next round in the same clock.
                let emitted = match self.latch.take() {
                    Some(words) => {
                        let z = self.generator.combine(words);
                        self.emitted_bits += 16;
                        Some(z)
                    }
                    None => None,
                };
                let words = self.generator.draw_sources()?;
                self.latch = Some(words);
                CycleEvent {
                    cycle: self.cycles,
                    drawn: Some(words),
                    emitted,
                }
            }
        };
        Ok(event)
    }

    /// Runs `cycles` clocks, returning the emitted words in order.
    pub fn run(&mut self, cycles: u64) -> Result<Vec<u16>> {
        let mut out = Vec::new();
        for _ in 0..cycles {
            if let Some(z) = self.step_cycle()?.emitted {
                out.push(z);
            }
        }
        Ok(out)
    }

    pub fn throughput_report(&self) -> ThroughputReport {
        let bits_per_cycle = self.mode.bits_per_cycle();
        ThroughputReport {
            mode: self.mode,
            clock_mhz: self.clock_mhz,
            cycles: self.cycles,
            emitted_bits: self.emitted_bits,
            bits_per_cycle,
            mbps: bits_per_cycle * self.clock_mhz,
            xorshift_logic_elements: self.triple.logic_elements(),
        }
    }
}

/// Throughput and resource accounting for a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputReport {
    pub mode: ScheduleMode,
    pub clock_mhz: f64,
    pub cycles: u64,
    pub emitted_bits: u64,
    /// Steady-state bits per clock for the schedule.
    pub bits_per_cycle: f64,
    /// Steady-state megabits per second at the configured clock.
    pub mbps: f64,
    /// Shift-wiring estimate for one 64-bit xorshift,
    /// `192 - s1 - s2 - s3`.
    pub xorshift_logic_elements: u32,
}

impl std::fmt::Display for ThroughputReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "schedule:            {}", self.mode.name())?;
        writeln!(f, "clock:               {} MHz", self.clock_mhz)?;
        writeln!(f, "cycles run:          {}", self.cycles)?;
        writeln!(f, "bits emitted:        {}", self.emitted_bits)?;
        writeln!(f, "steady-state rate:   {} bits/cycle", self.bits_per_cycle)?;
        writeln!(f, "throughput:          {} Mbps", self.mbps)?;
        write!(
            f,
            "xorshift logic est.: {} elements",
            self.xorshift_logic_elements
        )
    }
}
