//! One JSON object per executed case.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A statement known not to hold as literally displayed; the witness documents the deviation.
    Xfail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub case: String,
    pub status: Status,
    pub witness: Value,
    pub timing_ms: u64,
}

impl Report {
    /// The report without timing, for determinism comparisons.
    pub fn untimed(&self) -> Report {
        Report { timing_ms: 0, ..self.clone() }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialise")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub xfail: usize,
    pub skip: usize,
}

impl Summary {
    pub fn of(reports: &[Report]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Xfail => s.xfail += 1,
                Status::Skip => s.skip += 1,
            }
        }
        s
    }

    pub fn ok(&self) -> bool {
        self.fail == 0
    }
}
