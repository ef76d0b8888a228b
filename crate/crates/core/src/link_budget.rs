//! Friis received power and the sensitivity test.

use crate::scalar::Scalar;

/// Transmit/receive chain of one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioTerminal<T> {
    pub tx_power_dbm: T,
    pub tx_gain_dbi: T,
    pub rx_gain_dbi: T,
    pub sensitivity_dbm: T,
}

impl<T: Scalar> RadioTerminal<T> {
    pub(crate) fn field_errors(&self) -> Vec<(&'static str, f64, &'static str)> {
        let fields = [
            ("tx_power_dBm", self.tx_power_dbm),
            ("tx_gain_dBi", self.tx_gain_dbi),
            ("rx_gain_dBi", self.rx_gain_dbi),
            ("sensitivity_dBm", self.sensitivity_dbm),
        ];
        fields
            .into_iter()
            .filter(|(_, v)| !v.is_finite())
            .map(|(name, v)| (name, v.as_f64(), "must be finite"))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudgetResult<T> {
    pub rssi_dbm: T,
    /// Vertical pattern gain applied; zero for satellite links.
    pub antenna_gain_db: T,
    pub path_loss_db: T,
    pub margin_db: T,
    pub covered: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict<T> {
    pub covered: bool,
    pub margin_db: T,
}

/// `P_tx + G_tx + G_rx + A_V − P_L`, all in dB units.
pub fn received_power<T: Scalar>(
    terminal: &RadioTerminal<T>,
    antenna_gain_db: T,
    path_loss_db: T,
) -> T {
    terminal.tx_power_dbm + terminal.tx_gain_dbi + terminal.rx_gain_dbi + antenna_gain_db
        - path_loss_db
}

/// A link is covered when RSSI reaches the sensitivity; the boundary counts.
pub fn coverage_verdict<T: Scalar>(rssi_dbm: T, sensitivity_dbm: T) -> Verdict<T> {
    Verdict {
        covered: rssi_dbm >= sensitivity_dbm,
        margin_db: rssi_dbm - sensitivity_dbm,
    }
}

pub fn evaluate_link_budget<T: Scalar>(
    terminal: &RadioTerminal<T>,
    antenna_gain_db: T,
    path_loss_db: T,
) -> LinkBudgetResult<T> {
    let rssi_dbm = received_power(terminal, antenna_gain_db, path_loss_db);
    let verdict = coverage_verdict(rssi_dbm, terminal.sensitivity_dbm);
    LinkBudgetResult {
        rssi_dbm,
        antenna_gain_db,
        path_loss_db,
        margin_db: verdict.margin_db,
        covered: verdict.covered,
    }
}
