use serde::Serialize;

use crate::bloch::SystemParams;
use crate::spectra::rabi_frequencies;

/// Generalized Rabi frequencies and a filter bandwidth that can resolve the
/// sideband doublet without washing out its time dependence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BeatReport {
    pub omega1: f64,
    pub omega2: f64,
    pub omega_av: f64,
    pub omega_beat: f64,
    /// Open interval `(omega_beat / 4, omega2 - omega1)`, absent without a doublet.
    pub filter_window: Option<[f64; 2]>,
    pub suggested_filter: Option<f64>,
}

pub fn report_beats(params: &SystemParams) -> BeatReport {
    let b = rabi_frequencies(params);
    let split = b.omega2 - b.omega1;
    let doublet = split.abs() > 0.0;
    BeatReport {
        omega1: b.omega1,
        omega2: b.omega2,
        omega_av: b.omega_av,
        omega_beat: b.omega_beat,
        filter_window: doublet.then(|| {
            let (lo, hi) = (b.omega_beat.abs() / 4.0, split.abs());
            [lo, hi]
        }),
        suggested_filter: doublet.then(|| b.omega_beat.abs() / 2.0),
    }
}

impl BeatReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "Omega1     = {:.6}\nOmega2     = {:.6}\nOmega_av   = {:.6}\nOmega_beat = {:.6}\n",
            self.omega1, self.omega2, self.omega_av, self.omega_beat
        );
        match (self.filter_window, self.suggested_filter) {
            (Some([lo, hi]), Some(g)) => {
                s += &format!("filter window: {lo:.4} < Gamma < {hi:.4}\nsuggested Gamma ~ Omega_beat/2 = {g:.4}\n");
            }
            _ => s += "no doublet to resolve\n",
        }
        s
    }
}
