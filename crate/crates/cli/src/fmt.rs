//! Human-readable number and table formatting.

use hypermermin::Cplx;

/// Six significant digits, switching to exponent form for very large or small magnitudes.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // exponent after rounding to six digits, so 0.9999999 counts as 1
    let sci = format!("{x:.5e}");
    let mag: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if !(-4..6).contains(&mag) {
        return sci;
    }
    format!("{:.*}", (5 - mag).max(0) as usize, x)
}

/// Complex cell; parts below `1e-12` of the modulus (or of 1) print as zero.
pub fn sig_c(z: Cplx<f64>) -> String {
    let eps = 1e-12 * z.norm().max(1.0);
    if z.im.abs() <= eps {
        sig(if z.re.abs() <= eps { 0.0 } else { z.re })
    } else if z.re.abs() <= eps {
        format!("{}i", sig(z.im))
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", sig(z.re), sig(z.im.abs()))
    }
}

pub fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Left-aligned columns sized to their widest cell.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out += &line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig(1.7131), "1.71310");
        assert_eq!(sig(8.0), "8.00000");
        assert_eq!(sig(2.8284271247), "2.82843");
        assert_eq!(sig(-0.25), "-0.250000");
        assert_eq!(sig(123456.7), "123457");
        assert_eq!(sig(1234567.0), "1.23457e6");
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(-0.99999999), "-1.00000");
        assert_eq!(sig(0.414213562), "0.414214");
    }

    #[test]
    fn complex_cells() {
        assert_eq!(sig_c(Cplx::new(0.5, 0.0)), "0.500000");
        assert_eq!(sig_c(Cplx::new(1.0, -2.0)), "1.00000-2.00000i");
        assert_eq!(sig_c(Cplx::new(0.0, 3.0)), "3.00000i");
        assert_eq!(sig_c(Cplx::new(7e-18, 1e-20)), "0");
    }

    #[test]
    fn table_alignment() {
        let t = table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxyz  1\n");
    }
}
