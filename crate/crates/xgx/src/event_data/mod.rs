//! Shot-event ingestion, validation, one-hot encoding, and group selection.
//!
//! The canonical record is a [`ShotEvent`]: one shot with its seven model
//! features (minute, home/away, situation, shot type, last action, distance,
//! angle), the goal / on-target outcome pair, and the metadata used to slice
//! the data into player, team, and season groups.

mod csv_io;
mod encoding;

pub use csv_io::{parse_csv, parse_csv_reader, write_csv, write_csv_writer, CSV_HEADER};
pub use encoding::{build_encoding, encode, FeatureEncoding, FeatureKind, FeatureSpec, OTHER_LEVEL};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fingerprint::FingerprintHasher;
use crate::matrix::Matrix;

/// Upper bound accepted for `minute`.
pub const MAX_MINUTE: u32 = 130;
/// Upper bound accepted for `distance_to_goal`, in meters.
pub const MAX_DISTANCE: f64 = 120.0;
/// Sanity band for penalty-kick distances, in meters.
pub const PENALTY_DISTANCE_BAND: (f64, f64) = (10.5, 11.5);

#[derive(Debug, Error)]
pub enum DataError {
    #[error("missing column `{0}` in CSV header")]
    MissingColumn(String),
    #[error("unexpected column `{0}` in CSV header")]
    UnexpectedColumn(String),
    #[error("bad value at data row {row}, column `{column}`: `{token}` ({reason})")]
    BadValue {
        row: usize,
        column: String,
        token: String,
        reason: String,
    },
    #[error("CSV file contains no data rows")]
    EmptyFile,
    #[error("no events supplied")]
    EmptyInput,
    #[error("unknown level `{level}` for feature `{feature}` and no OTHER column to absorb it")]
    UnknownLevel { feature: String, level: String },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomeAway {
    Home,
    Away,
}

impl HomeAway {
    pub fn as_str(self) -> &'static str {
        match self {
            HomeAway::Home => "home",
            HomeAway::Away => "away",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "home" => Some(HomeAway::Home),
            "away" => Some(HomeAway::Away),
            _ => None,
        }
    }
}

impl fmt::Display for HomeAway {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Situation {
    OpenPlay,
    FromCorner,
    SetPiece,
    DirectFreekick,
    Penalty,
}

impl Situation {
    pub const ALL: [Situation; 5] = [
        Situation::OpenPlay,
        Situation::FromCorner,
        Situation::SetPiece,
        Situation::DirectFreekick,
        Situation::Penalty,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Situation::OpenPlay => "OpenPlay",
            Situation::FromCorner => "FromCorner",
            Situation::SetPiece => "SetPiece",
            Situation::DirectFreekick => "DirectFreekick",
            Situation::Penalty => "Penalty",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|v| v.as_str() == s)
    }
}

impl fmt::Display for Situation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShotType {
    Head,
    LeftFoot,
    RightFoot,
    OtherBodyPart,
}

impl ShotType {
    pub const ALL: [ShotType; 4] = [
        ShotType::Head,
        ShotType::LeftFoot,
        ShotType::RightFoot,
        ShotType::OtherBodyPart,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ShotType::Head => "Head",
            ShotType::LeftFoot => "LeftFoot",
            ShotType::RightFoot => "RightFoot",
            ShotType::OtherBodyPart => "OtherBodyPart",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|v| v.as_str() == s)
    }
}

impl fmt::Display for ShotType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One shot event: identity, grouping metadata, model features, and outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotEvent {
    pub match_id: String,
    pub player: String,
    pub team: String,
    pub opponent: String,
    pub season: String,
    pub league: String,
    pub minute: u32,
    pub home_away: HomeAway,
    pub situation: Situation,
    pub shot_type: ShotType,
    pub last_action: String,
    pub distance_to_goal: f64,
    pub angle_to_goal: f64,
    pub is_goal: bool,
    pub on_target: bool,
}

impl ShotEvent {
    /// Checks the record-level invariants; returns the violated rule on failure.
    pub fn validate(&self) -> Result<(), String> {
        if self.is_goal && !self.on_target {
            return Err("is_goal=1 requires on_target=1".into());
        }
        if self.minute > MAX_MINUTE {
            return Err(format!("minute {} outside [0, {MAX_MINUTE}]", self.minute));
        }
        if !self.distance_to_goal.is_finite() || self.distance_to_goal < 0.0 {
            return Err("distance_to_goal must be a finite non-negative number".into());
        }
        if self.distance_to_goal > MAX_DISTANCE {
            return Err(format!(
                "distance_to_goal {} exceeds {MAX_DISTANCE}",
                self.distance_to_goal
            ));
        }
        if !self.angle_to_goal.is_finite()
            || self.angle_to_goal <= 0.0
            || self.angle_to_goal > 180.0
        {
            return Err("angle_to_goal must lie in (0, 180]".into());
        }
        if self.situation == Situation::Penalty {
            let (lo, hi) = PENALTY_DISTANCE_BAND;
            if self.distance_to_goal < lo || self.distance_to_goal > hi {
                return Err(format!(
                    "penalty distance {} outside [{lo}, {hi}]",
                    self.distance_to_goal
                ));
            }
        }
        Ok(())
    }
}

/// Per-row grouping metadata carried alongside the encoded matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowMeta {
    pub match_id: String,
    pub player: String,
    pub team: String,
    pub opponent: String,
    pub season: String,
    pub league: String,
    pub home_away: HomeAway,
}

/// A validated, numerically encoded dataset: feature matrix, outcome vectors,
/// the encoding that produced the columns, and row-aligned grouping metadata.
#[derive(Debug, Clone)]
pub struct EncodedDataset {
    matrix: Matrix,
    y: Vec<bool>,
    on_target: Vec<bool>,
    encoding: FeatureEncoding,
    meta: Vec<RowMeta>,
}

impl EncodedDataset {
    /// Assembles a dataset from parts, checking the structural invariants.
    pub fn from_parts(
        matrix: Matrix,
        y: Vec<bool>,
        on_target: Vec<bool>,
        encoding: FeatureEncoding,
        meta: Vec<RowMeta>,
    ) -> Result<Self, DataError> {
        if matrix.n_rows() == 0 {
            return Err(DataError::EmptyInput);
        }
        assert_eq!(matrix.n_rows(), y.len(), "target length mismatch");
        assert_eq!(matrix.n_rows(), on_target.len(), "on_target length mismatch");
        assert_eq!(matrix.n_rows(), meta.len(), "metadata length mismatch");
        assert_eq!(
            matrix.n_cols(),
            encoding.n_columns(),
            "matrix width does not match encoding layout"
        );
        if !matrix.all_finite() {
            return Err(DataError::BadValue {
                row: 0,
                column: "<matrix>".into(),
                token: "non-finite".into(),
                reason: "encoded matrix contains non-finite entries".into(),
            });
        }
        Ok(Self { matrix, y, on_target, encoding, meta })
    }

    pub fn n_rows(&self) -> usize {
        self.matrix.n_rows()
    }

    pub fn n_cols(&self) -> usize {
        self.matrix.n_cols()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.matrix.row(i)
    }

    pub fn y(&self) -> &[bool] {
        &self.y
    }

    pub fn on_target(&self) -> &[bool] {
        &self.on_target
    }

    pub fn encoding(&self) -> &FeatureEncoding {
        &self.encoding
    }

    pub fn meta(&self) -> &[RowMeta] {
        &self.meta
    }

    /// SHA-256 over matrix bits, outcomes, metadata, and the encoding layout.
    pub fn fingerprint(&self) -> String {
        let mut h = FingerprintHasher::new();
        h.update(&(self.n_rows() as u64).to_le_bytes());
        h.update(&(self.n_cols() as u64).to_le_bytes());
        for v in self.matrix.as_slice() {
            h.update_f64(*v);
        }
        for (&g, &t) in self.y.iter().zip(&self.on_target) {
            h.update(&[u8::from(g), u8::from(t)]);
        }
        for m in &self.meta {
            h.update_str(&m.match_id);
            h.update_str(&m.player);
            h.update_str(&m.team);
            h.update_str(&m.opponent);
            h.update_str(&m.season);
            h.update_str(&m.league);
            h.update_str(m.home_away.as_str());
        }
        h.update_str(&self.encoding.layout_signature());
        h.finish_hex()
    }
}

/// Which side of the ball the selected group is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Role {
    /// Shots taken by the subject (subject appears in the `team` column).
    #[default]
    Taken,
    /// Shots conceded by the subject team (subject appears in the `opponent`
    /// column). The player filter is dropped: conceded shots are taken by
    /// opposing players.
    Conceded,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Taken => "taken",
            Role::Conceded => "conceded",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "taken" => Some(Role::Taken),
            "conceded" => Some(Role::Conceded),
            _ => None,
        }
    }
}

/// Conjunction of equality filters over shot metadata, plus a role flag.
///
/// All set fields must match for a row to be selected. Selection is a pure
/// function of (dataset, selector).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GroupSelector {
    pub player: Option<String>,
    pub team: Option<String>,
    pub opponent: Option<String>,
    pub season: Option<String>,
    pub league: Option<String>,
    pub home_away: Option<HomeAway>,
    pub on_target: Option<bool>,
    pub role: Role,
}

impl GroupSelector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn player(mut self, v: impl Into<String>) -> Self {
        self.player = Some(v.into());
        self
    }

    pub fn team(mut self, v: impl Into<String>) -> Self {
        self.team = Some(v.into());
        self
    }

    pub fn opponent(mut self, v: impl Into<String>) -> Self {
        self.opponent = Some(v.into());
        self
    }

    pub fn season(mut self, v: impl Into<String>) -> Self {
        self.season = Some(v.into());
        self
    }

    pub fn league(mut self, v: impl Into<String>) -> Self {
        self.league = Some(v.into());
        self
    }

    pub fn home_away(mut self, v: HomeAway) -> Self {
        self.home_away = Some(v);
        self
    }

    pub fn on_target(mut self, v: bool) -> Self {
        self.on_target = Some(v);
        self
    }

    pub fn role(mut self, v: Role) -> Self {
        self.role = v;
        self
    }

    /// The selector with team/opponent roles swapped and the player filter
    /// dropped, i.e. "shots the subject team conceded".
    pub fn conceded_view(&self) -> GroupSelector {
        GroupSelector {
            player: None,
            team: self.opponent.clone(),
            opponent: self.team.clone(),
            season: self.season.clone(),
            league: self.league.clone(),
            home_away: self.home_away,
            on_target: self.on_target,
            role: Role::Taken,
        }
    }

    fn matches(&self, meta: &RowMeta, on_target: bool) -> bool {
        let (team_col, opp_col) = match self.role {
            Role::Taken => (&meta.team, &meta.opponent),
            // Subject team sits in the opponent column for conceded shots.
            Role::Conceded => (&meta.opponent, &meta.team),
        };
        if self.role == Role::Taken {
            if let Some(p) = &self.player {
                if p != &meta.player {
                    return false;
                }
            }
        }
        if let Some(t) = &self.team {
            if t != team_col {
                return false;
            }
        }
        if let Some(o) = &self.opponent {
            if o != opp_col {
                return false;
            }
        }
        if let Some(s) = &self.season {
            if s != &meta.season {
                return false;
            }
        }
        if let Some(l) = &self.league {
            if l != &meta.league {
                return false;
            }
        }
        if let Some(ha) = self.home_away {
            if ha != meta.home_away {
                return false;
            }
        }
        if let Some(z) = self.on_target {
            if z != on_target {
                return false;
            }
        }
        true
    }

    /// Canonical `key=value` echo used in reports and JSON output.
    pub fn descriptor(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        if let Some(v) = &self.player {
            parts.push(format!("player={v}"));
        }
        if let Some(v) = &self.team {
            parts.push(format!("team={v}"));
        }
        if let Some(v) = &self.opponent {
            parts.push(format!("opponent={v}"));
        }
        if let Some(v) = &self.season {
            parts.push(format!("season={v}"));
        }
        if let Some(v) = &self.league {
            parts.push(format!("league={v}"));
        }
        if let Some(v) = self.home_away {
            parts.push(format!("home_away={v}"));
        }
        if let Some(v) = self.on_target {
            parts.push(format!("on_target={}", u8::from(v)));
        }
        if self.role != Role::Taken || parts.is_empty() {
            parts.push(format!("role={}", self.role.as_str()));
        }
        parts.join(",")
    }
}

impl fmt::Display for GroupSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// Sorted row indices matching every filter of `selector`.
pub fn select(dataset: &EncodedDataset, selector: &GroupSelector) -> Vec<usize> {
    dataset
        .meta()
        .iter()
        .enumerate()
        .filter(|(i, m)| selector.matches(m, dataset.on_target[*i]))
        .map(|(i, _)| i)
        .collect()
}

/// Level frequencies per categorical feature, with deterministic ordering.
pub(crate) fn level_counts<'a>(
    events: &'a [ShotEvent],
    feature: &str,
) -> BTreeMap<&'a str, usize> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for e in events {
        let level: &str = match feature {
            "home_away" => e.home_away.as_str(),
            "situation" => e.situation.as_str(),
            "shot_type" => e.shot_type.as_str(),
            "last_action" => &e.last_action,
            _ => unreachable!("not a categorical feature: {feature}"),
        };
        *counts.entry(level).or_insert(0) += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn event(player: &str, team: &str, opponent: &str, season: &str) -> ShotEvent {
        ShotEvent {
            match_id: "m1".into(),
            player: player.into(),
            team: team.into(),
            opponent: opponent.into(),
            season: season.into(),
            league: "EPL".into(),
            minute: 10,
            home_away: HomeAway::Home,
            situation: Situation::OpenPlay,
            shot_type: ShotType::RightFoot,
            last_action: "Pass".into(),
            distance_to_goal: 12.0,
            angle_to_goal: 40.0,
            is_goal: false,
            on_target: true,
        }
    }

    fn tiny_dataset() -> EncodedDataset {
        let events = vec![
            event("A", "T1", "T2", "2022/23"),
            event("B", "T2", "T1", "2022/23"),
            event("A", "T1", "T3", "2021/22"),
            ShotEvent { on_target: false, ..event("C", "T3", "T1", "2022/23") },
        ];
        let enc = build_encoding(&events, 0).unwrap();
        encode(&events, &enc).unwrap()
    }

    #[test]
    fn invariant_goal_requires_on_target() {
        let mut e = event("A", "T1", "T2", "2022/23");
        e.is_goal = true;
        e.on_target = false;
        assert!(e.validate().is_err());
        e.on_target = true;
        assert!(e.validate().is_ok());
    }

    #[test]
    fn invariant_penalty_band() {
        let mut e = event("A", "T1", "T2", "2022/23");
        e.situation = Situation::Penalty;
        e.distance_to_goal = 18.0;
        assert!(e.validate().is_err());
        e.distance_to_goal = 11.0;
        assert!(e.validate().is_ok());
    }

    #[test]
    fn select_by_player_and_season() {
        let ds = tiny_dataset();
        let sel = GroupSelector::new().player("A").season("2022/23");
        assert_eq!(select(&ds, &sel), vec![0]);
        let sel = GroupSelector::new().player("A");
        assert_eq!(select(&ds, &sel), vec![0, 2]);
    }

    #[test]
    fn select_conceded_uses_opponent_column() {
        let ds = tiny_dataset();
        let sel = GroupSelector::new().team("T1").role(Role::Conceded);
        // Rows where T1 appears as opponent: index 1 (team T2) and 3 (team T3).
        assert_eq!(select(&ds, &sel), vec![1, 3]);
        let sel = sel.on_target(true);
        assert_eq!(select(&ds, &sel), vec![1]);
    }

    #[test]
    fn select_nothing_is_empty() {
        let ds = tiny_dataset();
        let sel = GroupSelector::new().player("nobody");
        assert!(select(&ds, &sel).is_empty());
    }

    #[test]
    fn conjunction_is_intersection() {
        let ds = tiny_dataset();
        let a = GroupSelector::new().season("2022/23");
        let b = GroupSelector::new().player("A");
        let ab = GroupSelector::new().season("2022/23").player("A");
        let ia = select(&ds, &a);
        let ib = select(&ds, &b);
        let iab = select(&ds, &ab);
        let inter: Vec<usize> = ia.iter().copied().filter(|i| ib.contains(i)).collect();
        assert_eq!(iab, inter);
    }

    #[test]
    fn descriptor_is_canonical() {
        let sel = GroupSelector::new().season("2022/23").player("A");
        assert_eq!(sel.descriptor(), "player=A,season=2022/23");
        let sel = GroupSelector::new().team("T").role(Role::Conceded).on_target(true);
        assert_eq!(sel.descriptor(), "team=T,on_target=1,role=conceded");
    }
}
