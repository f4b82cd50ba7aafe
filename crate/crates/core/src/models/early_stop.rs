/// Patience-based early stopping on a score that should increase.
///
/// An evaluation counts as an improvement when it beats the best score so
/// far by at least `threshold`; training stops after `patience` consecutive
/// evaluations that do not.
#[derive(Debug, Clone, PartialEq)]
pub struct EarlyStopping {
    pub threshold: f64,
    pub patience: usize,
    best: Option<f64>,
    stale: usize,
}

/// Outcome of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Progress {
    Improved,
    Stale,
    Stop,
}

impl EarlyStopping {
    pub fn new(threshold: f64, patience: usize) -> Self {
        EarlyStopping {
            threshold,
            patience,
            best: None,
            stale: 0,
        }
    }

    pub fn observe(&mut self, score: f64) -> Progress {
        let improved = match self.best {
            None => true,
            Some(best) => score - best >= self.threshold,
        };
        if improved {
            self.best = Some(score);
            self.stale = 0;
            Progress::Improved
        } else {
            self.stale += 1;
            if self.stale >= self.patience {
                Progress::Stop
            } else {
                Progress::Stale
            }
        }
    }

    pub fn best(&self) -> Option<f64> {
        self.best
    }

    /// Consecutive evaluations without improvement so far.
    pub fn stale_evaluations(&self) -> usize {
        self.stale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stops_after_patience_stale_evaluations() {
        let mut es = EarlyStopping::new(0.001, 6);
        assert_eq!(es.observe(0.90), Progress::Improved);
        assert_eq!(es.observe(0.95), Progress::Improved);
        for _ in 0..5 {
            assert_eq!(es.observe(0.9505), Progress::Stale);
        }
        assert_eq!(es.observe(0.9509), Progress::Stop);
        assert_eq!(es.best(), Some(0.95));
    }

    #[test]
    fn improvement_resets_patience() {
        let mut es = EarlyStopping::new(0.001, 2);
        es.observe(0.5);
        assert_eq!(es.observe(0.5), Progress::Stale);
        assert_eq!(es.observe(0.502), Progress::Improved);
        assert_eq!(es.observe(0.4), Progress::Stale);
        assert_eq!(es.observe(0.4), Progress::Stop);
    }
}
