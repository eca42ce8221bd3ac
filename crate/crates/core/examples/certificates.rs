//! Lower bounds on sec from cup products and from induced maps.

use confsec::certificates::{
    rp2_certificate, verify_cup_certificate, verify_induced_certificate, Coefficients, CupLengthCertificate,
    GradedRing, RawElement,
};

fn main() -> confsec::Result<()> {
    let ring = GradedRing::exterior(&["x", "y"], Coefficients::Z)?;
    let xy = ring.multiply_names("x", "y")?;
    println!("in the exterior algebra: x*y = {}, x*x = {}", ring.render(&xy), ring.render(&ring.multiply_names("x", "x")?));

    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/cup_s2_k3.json"))?;
    let mut cert = CupLengthCertificate::from_json_str(&text)?;
    match verify_cup_certificate(&cert)? {
        Ok(facts) => facts.iter().for_each(|f| println!("accepted: {f}")),
        Err(r) => println!("rejected: {r}"),
    }
    cert.classes.push(RawElement::Name("u".into()));
    match verify_cup_certificate(&cert)? {
        Ok(facts) => facts.iter().for_each(|f| println!("accepted: {f}")),
        Err(r) => println!("with u twice, rejected: {r}"),
    }

    for fact in verify_induced_certificate(&rp2_certificate())?.map_err(confsec::Error::from)? {
        println!("RP2: {fact}");
    }
    Ok(())
}
