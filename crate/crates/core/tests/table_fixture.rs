use sextic_index::engstrom::table_text;

#[test]
fn table_matches_transcription() {
    let fixture = include_str!("fixtures/engstrom_table.txt");
    assert_eq!(table_text(), fixture);
}
