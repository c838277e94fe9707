use crate::error::{Error, Result};

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Γ(n + 1/2), built up from Γ(1/2) = √π with Γ(y+1) = yΓ(y).
pub fn gamma_half(n: u32) -> Result<f64> {
    let mut value = SQRT_PI;
    for j in 0..n {
        value *= f64::from(j) + 0.5;
        if !value.is_finite() {
            return Err(Error::Overflow("gamma_half"));
        }
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(gamma_half(0).unwrap(), SQRT_PI);
        assert!((gamma_half(1).unwrap() - SQRT_PI / 2.0).abs() < 1e-16);
        // Γ(5.5) = (1/2)(3/2)(5/2)(7/2)(9/2)√π = 945√π/32
        let expected = 945.0 * SQRT_PI / 32.0;
        assert!((gamma_half(5).unwrap() - expected).abs() < 1e-13 * expected);
    }

    #[test]
    fn overflow_is_flagged() {
        assert!(gamma_half(170).is_ok());
        assert_eq!(gamma_half(200), Err(Error::Overflow("gamma_half")));
    }
}
