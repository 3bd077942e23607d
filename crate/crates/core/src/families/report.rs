use serde::Serialize;

/// One named condition of a family's permutation criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

/// Named condition checks plus free-form notes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub conditions: Vec<Condition>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn push(&mut self, name: &str, holds: bool) {
        self.conditions.push(Condition {
            name: name.to_string(),
            holds,
        });
    }

    pub fn note(&mut self, note: &str) {
        self.notes.push(note.to_string());
    }

    /// Conjunction of all conditions.
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.conditions.iter().find(|c| c.name == name).map(|c| c.holds)
    }
}
