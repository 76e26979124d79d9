use std::io::{BufRead, BufReader, Read, Write};

use super::GrayImage;
use crate::error::{Error, Result};

fn header_token<R: BufRead>(r: &mut R) -> Result<String> {
    let mut token = String::new();
    let mut byte = [0u8; 1];
    loop {
        if r.read(&mut byte)? == 0 {
            return Err(Error::Format("truncated PGM header".into()));
        }
        match byte[0] {
            b'#' if token.is_empty() => {
                let mut comment = Vec::new();
                r.read_until(b'\n', &mut comment)?;
            }
            b if b.is_ascii_whitespace() => {
                if !token.is_empty() {
                    return Ok(token);
                }
            }
            b => token.push(b as char),
        }
    }
}

/// Read a binary (P5) PGM with maxval <= 255.
pub fn read_pgm<R: Read>(reader: R) -> Result<GrayImage> {
    let mut r = BufReader::new(reader);
    let magic = header_token(&mut r)?;
    if magic != "P5" {
        return Err(Error::Format(format!("expected binary PGM magic 'P5', got '{magic}'")));
    }
    let mut field = |name: &str| -> Result<usize> {
        let tok = header_token(&mut r)?;
        tok.parse()
            .map_err(|_| Error::Format(format!("bad PGM {name} '{tok}'")))
    };
    let width = field("width")?;
    let height = field("height")?;
    let maxval = field("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::Format(format!("unsupported PGM maxval {maxval} (8-bit only)")));
    }
    let mut pixels = vec![0u8; width * height];
    r.read_exact(&mut pixels)
        .map_err(|_| Error::Format("truncated PGM pixel data".into()))?;
    GrayImage::new(width, height, pixels)
}

pub fn write_pgm<W: Write>(img: &GrayImage, mut writer: W) -> Result<()> {
    write!(writer, "P5\n{} {}\n255\n", img.width(), img.height())?;
    writer.write_all(img.pixels())?;
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_comment() {
        let img = GrayImage::new(3, 2, vec![0, 1, 2, 253, 254, 255]).unwrap();
        let mut buf = Vec::new();
        write_pgm(&img, &mut buf).unwrap();
        assert_eq!(read_pgm(buf.as_slice()).unwrap(), img);

        let mut commented = b"P5\n# made by hand\n3 2\n255\n".to_vec();
        commented.extend_from_slice(img.pixels());
        assert_eq!(read_pgm(commented.as_slice()).unwrap(), img);
    }

    #[test]
    fn rejects_bad_headers() {
        assert!(read_pgm(&b"P2\n1 1\n255\n0"[..]).is_err());
        assert!(read_pgm(&b"P5\n1 1\n65535\n\0\0"[..]).is_err());
        assert!(read_pgm(&b"P5\n2 2\n255\n\0"[..]).is_err());
        assert!(read_pgm(&b"P5\nx 2\n255\n"[..]).is_err());
    }
}
