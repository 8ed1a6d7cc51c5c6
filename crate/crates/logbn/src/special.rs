//! Small closed-form geometric constants (gamma at half-integers, sphere areas).

use std::f64::consts::PI;

/// Gamma(two_x / 2) for two_x >= 1, exact recurrence from Γ(1/2) = √π and Γ(1) = 1.
pub fn gamma_half(two_x: u32) -> f64 {
    assert!(two_x >= 1, "gamma_half needs a positive half-integer");
    let (mut val, mut k) = if two_x % 2 == 0 {
        (1.0, 2u32)
    } else {
        (PI.sqrt(), 1u32)
    };
    while k + 2 <= two_x {
        val *= k as f64 / 2.0;
        k += 2;
    }
    val
}

/// Surface area of the unit sphere S^{n-1} in R^n: 2 π^{n/2} / Γ(n/2).
pub fn sphere_area(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma_half(n as u32)
}

/// Volume of the n-ball of radius r: π^{n/2} r^n / Γ(n/2 + 1).
pub fn ball_volume(n: usize, r: f64) -> f64 {
    PI.powf(n as f64 / 2.0) * r.powi(n as i32) / gamma_half(n as u32 + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_values() {
        assert_relative_eq!(gamma_half(1), PI.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(gamma_half(2), 1.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half(3), PI.sqrt() / 2.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half(6), 2.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half(8), 6.0, max_relative = 1e-15);
        assert_relative_eq!(gamma_half(10), 24.0, max_relative = 1e-15);
    }

    #[test]
    fn sphere_areas() {
        assert_relative_eq!(sphere_area(3), 4.0 * PI, max_relative = 1e-14);
        assert_relative_eq!(sphere_area(4), 2.0 * PI * PI, max_relative = 1e-14);
        assert_relative_eq!(sphere_area(5), 8.0 * PI * PI / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn ball_volumes() {
        assert_relative_eq!(ball_volume(3, 1.0), 4.0 * PI / 3.0, max_relative = 1e-14);
        assert_relative_eq!(ball_volume(4, 1.0), PI * PI / 2.0, max_relative = 1e-14);
        assert_relative_eq!(ball_volume(4, 2.0), PI * PI * 8.0, max_relative = 1e-14);
        assert_relative_eq!(ball_volume(5, 1.0), 8.0 * PI * PI / 15.0, max_relative = 1e-14);
    }
}
