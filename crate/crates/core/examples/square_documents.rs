//! Writes squares as JSON documents, reads them back and compares.

use supersquares::constructions::{complete_set_to_squares, type_i};
use supersquares::document::{documents_to_json, parse_documents, SquareDocument};
use supersquares::squares::mutually_orthogonal;
use supersquares::{FieldSpec, Square};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = FieldSpec::with_order(4)?;
    let cs = type_i(&f, f.parse_point("1,m^2")?, f.parse_point("0,m")?)?;
    let squares = complete_set_to_squares(&cs)?;
    let docs: Vec<SquareDocument> = squares.iter().map(SquareDocument::from_square).collect();
    let json = documents_to_json(&docs);
    println!("first document has {} blocks, field {:?}", docs[0].blocks.len(), docs[0].field);

    let back: Vec<Square> = parse_documents(&json)?.iter().map(|d| d.to_square()).collect::<Result<_, _>>()?;
    println!("{} documents, {} bytes", back.len(), json.len());
    println!("round trip equal: {}", back == squares);
    println!("mutually orthogonal: {}", mutually_orthogonal(&back)?);

    match parse_documents(&json[..json.len() / 2]) {
        Ok(_) => println!("truncated text parsed?"),
        Err(e) => println!("truncated: {e}"),
    }
    Ok(())
}
