//! Random instances written to and read back from the JSON file format.

use dcs::io::{parse_instance, serialize_instance};
use dcs::random::{random_instance, RandomKind};

pub fn main() -> dcs::Result<()> {
    for kind in RandomKind::ALL {
        let instance = random_instance(kind, 4, 2, 1)?;
        let bytes = serialize_instance(&instance, None);
        let back = parse_instance(&bytes)?;
        assert_eq!(serialize_instance(&back.instance, None), bytes);
        println!(
            "{kind}: {} bytes, start {}, target {}",
            bytes.len(),
            back.instance.start(),
            back.instance.target()
        );
    }
    let sample = serialize_instance(
        &random_instance(RandomKind::SingletonCongestion, 3, 2, 0)?,
        None,
    );
    print!("{}", String::from_utf8_lossy(&sample));
    Ok(())
}
