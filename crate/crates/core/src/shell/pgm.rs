use std::fs;
use std::path::Path;

use crate::dwt::ImagePlane;
use crate::error::{Error, Result};

/// Binary greymap with integer samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pgm {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub data: Vec<u16>,
}

impl Pgm {
    /// Samples divided by `maxval`.
    pub fn to_plane(&self) -> ImagePlane {
        let m = self.maxval as f64;
        ImagePlane {
            width: self.width,
            height: self.height,
            pixels: self.data.iter().map(|&v| v as f64 / m).collect(),
        }
    }

    /// Clamps to `[0, 1]` and rounds to the nearest level.
    pub fn from_plane(plane: &ImagePlane, maxval: u16) -> Result<Self> {
        if maxval == 0 {
            return Err(Error::Parse("maxval must be positive".into()));
        }
        let m = maxval as f64;
        let data = plane.pixels.iter().map(|&v| (v.clamp(0.0, 1.0) * m).round() as u16).collect();
        Ok(Pgm { width: plane.width, height: plane.height, maxval, data })
    }
}

fn bad(msg: &str) -> Error {
    Error::Parse(format!("PGM: {msg}"))
}

/// Reads one whitespace-delimited header token, skipping `#` comments.
fn token(bytes: &[u8], pos: &mut usize) -> Result<String> {
    loop {
        match bytes.get(*pos) {
            Some(b'#') => {
                while bytes.get(*pos).is_some_and(|&c| c != b'\n') {
                    *pos += 1;
                }
            }
            Some(c) if c.is_ascii_whitespace() => *pos += 1,
            Some(_) => break,
            None => return Err(bad("truncated header")),
        }
    }
    let start = *pos;
    while bytes.get(*pos).is_some_and(|c| !c.is_ascii_whitespace()) {
        *pos += 1;
    }
    Ok(String::from_utf8_lossy(&bytes[start..*pos]).into_owned())
}

pub fn parse_pgm(bytes: &[u8]) -> Result<Pgm> {
    let mut pos = 0;
    if token(bytes, &mut pos)? != "P5" {
        return Err(bad("magic number is not P5"));
    }
    let mut num = |what: &str| -> Result<usize> {
        token(bytes, &mut pos)?.parse().map_err(|_| bad(&format!("bad {what}")))
    };
    let width = num("width")?;
    let height = num("height")?;
    let maxval = num("maxval")?;
    if width == 0 || height == 0 {
        return Err(bad("empty image"));
    }
    if !(1..=65535).contains(&maxval) {
        return Err(bad("maxval outside 1..=65535"));
    }
    // Exactly one whitespace byte separates the header from the raster.
    if !bytes.get(pos).is_some_and(|c| c.is_ascii_whitespace()) {
        return Err(bad("missing separator before raster"));
    }
    pos += 1;
    let wide = maxval > 255;
    let n = width * height;
    let raster = &bytes[pos..];
    let need = if wide { 2 * n } else { n };
    if raster.len() < need {
        return Err(bad("raster shorter than header promises"));
    }
    let data: Vec<u16> = if wide {
        raster[..need].chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect()
    } else {
        raster[..need].iter().map(|&v| v as u16).collect()
    };
    if data.iter().any(|&v| v as usize > maxval) {
        return Err(bad("sample exceeds maxval"));
    }
    Ok(Pgm { width, height, maxval: maxval as u16, data })
}

pub fn render_pgm(img: &Pgm) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n{}\n", img.width, img.height, img.maxval).into_bytes();
    if img.maxval > 255 {
        for v in &img.data {
            out.extend_from_slice(&v.to_be_bytes());
        }
    } else {
        out.extend(img.data.iter().map(|&v| v as u8));
    }
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<Pgm> {
    parse_pgm(&fs::read(path)?)
}

pub fn write_pgm(path: impl AsRef<Path>, img: &Pgm) -> Result<()> {
    fs::write(path, render_pgm(img))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_8bit() {
        let mut bytes = b"P5\n2 2\n255\n".to_vec();
        bytes.extend([0, 255, 128, 64]);
        let img = parse_pgm(&bytes).unwrap();
        let p = img.to_plane();
        assert_eq!(p.pixels, vec![0.0, 1.0, 128.0 / 255.0, 64.0 / 255.0]);
        assert_eq!(render_pgm(&img), bytes);
    }

    #[test]
    fn comments_and_16bit() {
        let mut bytes = b"P5 # hi\n# more\n1 2 # size\n1000\n".to_vec();
        bytes.extend([0x03, 0xe8, 0x00, 0x01]);
        let img = parse_pgm(&bytes).unwrap();
        assert_eq!(img.data, vec![1000, 1]);
        assert_eq!(parse_pgm(&render_pgm(&img)).unwrap(), img);
    }

    #[test]
    fn malformed_headers() {
        for bad in [
            &b"P2\n1 1\n255\n\x00"[..],
            b"P5\n1\n",
            b"P5\nx 1\n255\n\x00",
            b"P5\n1 1\n0\n\x00",
            b"P5\n1 1\n70000\n\x00",
            b"P5\n2 2\n255\n\x00",
            b"P5\n1 1\n10\n\x0b",
            b"",
        ] {
            assert!(matches!(parse_pgm(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn disk_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.pgm");
        let img = Pgm { width: 3, height: 1, maxval: 255, data: vec![1, 2, 3] };
        write_pgm(&path, &img).unwrap();
        assert_eq!(read_pgm(&path).unwrap(), img);
    }

    proptest! {
        #[test]
        fn integer_roundtrip(w in 1usize..6, h in 1usize..6, maxval in 1u16..=65535, raw in proptest::collection::vec(any::<u16>(), 25)) {
            let data: Vec<u16> = raw[..w * h].iter().map(|v| (*v as u32 % (maxval as u32 + 1)) as u16).collect();
            let img = Pgm { width: w, height: h, maxval, data };
            let back = parse_pgm(&render_pgm(&img)).unwrap();
            prop_assert_eq!(&back, &img);
            prop_assert_eq!(Pgm::from_plane(&back.to_plane(), maxval).unwrap(), img);
        }
    }
}
