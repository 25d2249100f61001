//! CSV ingestion and emission for shot events.
//!
//! The schema is a fixed 15-column header, comma separated, UTF-8, `.` decimal
//! point, booleans serialized as `0`/`1`:
//!
//! ```text
//! match_id,player,team,opponent,season,league,minute,home_away,situation,
//! shot_type,last_action,distance_to_goal,angle_to_goal,is_goal,on_target
//! ```

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::{DataError, HomeAway, ShotEvent, ShotType, Situation};

/// The exact expected header, in order.
pub const CSV_HEADER: [&str; 15] = [
    "match_id",
    "player",
    "team",
    "opponent",
    "season",
    "league",
    "minute",
    "home_away",
    "situation",
    "shot_type",
    "last_action",
    "distance_to_goal",
    "angle_to_goal",
    "is_goal",
    "on_target",
];

/// Parses a shot-event CSV file. Row order is preserved; every row is
/// validated against the record invariants.
pub fn parse_csv(path: impl AsRef<Path>) -> Result<Vec<ShotEvent>, DataError> {
    let file = File::open(path.as_ref())?;
    parse_csv_reader(file)
}

/// Same as [`parse_csv`] over any reader (used by tests and stdin pipelines).
pub fn parse_csv_reader(reader: impl Read) -> Result<Vec<ShotEvent>, DataError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);

    let headers = match rdr.headers() {
        Ok(h) if h.is_empty() || (h.len() == 1 && h[0].trim().is_empty()) => {
            return Err(DataError::EmptyFile)
        }
        Ok(h) => h.clone(),
        // An entirely empty input yields a CSV error on header read.
        Err(_) => return Err(DataError::EmptyFile),
    };

    for expected in CSV_HEADER {
        if !headers.iter().any(|h| h == expected) {
            return Err(DataError::MissingColumn(expected.to_string()));
        }
    }
    for (i, got) in headers.iter().enumerate() {
        if CSV_HEADER.get(i).copied() != Some(got) {
            return Err(DataError::UnexpectedColumn(got.to_string()));
        }
    }

    let mut events = Vec::new();
    for (row_idx, record) in rdr.records().enumerate() {
        let row = row_idx + 1; // 1-based data-row number, excludes header
        let record = record?;
        if record.len() != CSV_HEADER.len() {
            return Err(DataError::BadValue {
                row,
                column: "<row>".into(),
                token: format!("{} fields", record.len()),
                reason: format!("expected {} fields", CSV_HEADER.len()),
            });
        }
        let field = |i: usize| record[i].to_string();
        let bad = |column: &str, token: &str, reason: &str| DataError::BadValue {
            row,
            column: column.into(),
            token: token.into(),
            reason: reason.into(),
        };

        let minute: u32 = record[6]
            .parse()
            .map_err(|_| bad("minute", &record[6], "not a non-negative integer"))?;
        let home_away = HomeAway::parse(&record[7])
            .ok_or_else(|| bad("home_away", &record[7], "expected home|away"))?;
        let situation = Situation::parse(&record[8]).ok_or_else(|| {
            bad(
                "situation",
                &record[8],
                "expected OpenPlay|FromCorner|SetPiece|DirectFreekick|Penalty",
            )
        })?;
        let shot_type = ShotType::parse(&record[9]).ok_or_else(|| {
            bad("shot_type", &record[9], "expected Head|LeftFoot|RightFoot|OtherBodyPart")
        })?;
        let distance_to_goal: f64 = record[11]
            .parse()
            .map_err(|_| bad("distance_to_goal", &record[11], "not a number"))?;
        let angle_to_goal: f64 = record[12]
            .parse()
            .map_err(|_| bad("angle_to_goal", &record[12], "not a number"))?;
        let is_goal = parse_bool(&record[13]).ok_or_else(|| bad("is_goal", &record[13], "expected 0|1"))?;
        let on_target =
            parse_bool(&record[14]).ok_or_else(|| bad("on_target", &record[14], "expected 0|1"))?;

        let event = ShotEvent {
            match_id: field(0),
            player: field(1),
            team: field(2),
            opponent: field(3),
            season: field(4),
            league: field(5),
            minute,
            home_away,
            situation,
            shot_type,
            last_action: field(10),
            distance_to_goal,
            angle_to_goal,
            is_goal,
            on_target,
        };
        if let Err(reason) = event.validate() {
            return Err(bad("<record>", "", &reason));
        }
        events.push(event);
    }

    if events.is_empty() {
        return Err(DataError::EmptyFile);
    }
    Ok(events)
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "0" => Some(false),
        "1" => Some(true),
        _ => None,
    }
}

/// Writes events in the canonical schema. `parse_csv(write_csv(events))`
/// reproduces the events field-for-field.
pub fn write_csv(events: &[ShotEvent], path: impl AsRef<Path>) -> Result<(), DataError> {
    let file = File::create(path.as_ref())?;
    write_csv_writer(events, file)
}

pub fn write_csv_writer(events: &[ShotEvent], writer: impl Write) -> Result<(), DataError> {
    let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    wtr.write_record(CSV_HEADER)?;
    for e in events {
        wtr.write_record([
            e.match_id.as_str(),
            e.player.as_str(),
            e.team.as_str(),
            e.opponent.as_str(),
            e.season.as_str(),
            e.league.as_str(),
            &e.minute.to_string(),
            e.home_away.as_str(),
            e.situation.as_str(),
            e.shot_type.as_str(),
            e.last_action.as_str(),
            &e.distance_to_goal.to_string(),
            &e.angle_to_goal.to_string(),
            if e.is_goal { "1" } else { "0" },
            if e.on_target { "1" } else { "0" },
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD_ROW: &str =
        "m1,Kane,TOT,CHE,2022/23,EPL,23,home,OpenPlay,RightFoot,Pass,11.2,34.5,1,1";

    fn with_header(rows: &[&str]) -> String {
        let mut s = CSV_HEADER.join(",");
        s.push('\n');
        for r in rows {
            s.push_str(r);
            s.push('\n');
        }
        s
    }

    #[test]
    fn parses_direct_field_mapping() {
        let input = with_header(&[GOOD_ROW]);
        let events = parse_csv_reader(input.as_bytes()).unwrap();
        assert_eq!(events.len(), 1);
        let e = &events[0];
        assert_eq!(e.player, "Kane");
        assert_eq!(e.minute, 23);
        assert_eq!(e.home_away, HomeAway::Home);
        assert_eq!(e.situation, Situation::OpenPlay);
        assert_eq!(e.distance_to_goal, 11.2);
        assert!(e.is_goal);
        assert!(e.on_target);
    }

    #[test]
    fn goal_off_target_is_bad_value() {
        let row = "m1,Kane,TOT,CHE,2022/23,EPL,23,home,OpenPlay,RightFoot,Pass,11.2,34.5,1,0";
        let err = parse_csv_reader(with_header(&[row]).as_bytes()).unwrap_err();
        match err {
            DataError::BadValue { row, reason, .. } => {
                assert_eq!(row, 1);
                assert!(reason.contains("on_target"), "{reason}");
            }
            other => panic!("expected BadValue, got {other:?}"),
        }
    }

    #[test]
    fn missing_column_is_named() {
        let input = "match_id,player,team\nm1,Kane,TOT\n";
        let err = parse_csv_reader(input.as_bytes()).unwrap_err();
        match err {
            DataError::MissingColumn(name) => assert_eq!(name, "opponent"),
            other => panic!("expected MissingColumn, got {other:?}"),
        }
    }

    #[test]
    fn empty_inputs_are_rejected() {
        assert!(matches!(parse_csv_reader("".as_bytes()), Err(DataError::EmptyFile)));
        let header_only = with_header(&[]);
        assert!(matches!(
            parse_csv_reader(header_only.as_bytes()),
            Err(DataError::EmptyFile)
        ));
    }

    #[test]
    fn bad_enum_token_reports_row_and_column() {
        let row = "m1,Kane,TOT,CHE,2022/23,EPL,23,home,OpenPlay,Elbow,Pass,11.2,34.5,0,0";
        let err = parse_csv_reader(with_header(&[GOOD_ROW, row]).as_bytes()).unwrap_err();
        match err {
            DataError::BadValue { row, column, token, .. } => {
                assert_eq!(row, 2);
                assert_eq!(column, "shot_type");
                assert_eq!(token, "Elbow");
            }
            other => panic!("expected BadValue, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let rows = [
            GOOD_ROW,
            "m2,Köln Player,FC Köln,BVB,2021/22,Bundesliga,90,away,Penalty,LeftFoot,None,11,170.25,0,1",
            "m3,A B,Brighton & Hove Albion,CHE,2022/23,EPL,45,home,FromCorner,Head,Cross,5.5,120,0,0",
        ];
        let events = parse_csv_reader(with_header(&rows).as_bytes()).unwrap();
        let mut buf = Vec::new();
        write_csv_writer(&events, &mut buf).unwrap();
        let reparsed = parse_csv_reader(buf.as_slice()).unwrap();
        assert_eq!(events, reparsed);
    }
}
