#![allow(dead_code)]

/// Pseudo-Hermite polynomials written out by hand, lowest power first.
pub fn pseudo_hermite_table(m: usize) -> &'static [f64] {
    match m {
        0 => &[1.0],
        2 => &[2.0, 0.0, 4.0],
        4 => &[12.0, 0.0, 48.0, 0.0, 16.0],
        6 => &[120.0, 0.0, 720.0, 0.0, 480.0, 0.0, 64.0],
        _ => panic!("no table entry for m = {m}"),
    }
}

fn poly_and_derivatives(c: &[f64], z: f64) -> (f64, f64, f64) {
    let (mut p, mut d1, mut d2) = (0.0, 0.0, 0.0);
    for (k, &a) in c.iter().enumerate() {
        let k = k as i32;
        p += a * z.powi(k);
        if k >= 1 {
            d1 += a * k as f64 * z.powi(k - 1);
        }
        if k >= 2 {
            d2 += a * (k * (k - 1)) as f64 * z.powi(k - 2);
        }
    }
    (p, d1, d2)
}

/// `z^2 - 2 [H''/H - (H'/H)^2 + 1]` from the hand-written table.
pub fn partner_potential_oracle(m: usize, z: f64) -> f64 {
    let (p, d1, d2) = poly_and_derivatives(pseudo_hermite_table(m), z);
    let (r1, r2) = (d1 / p, d2 / p);
    z * z - 2.0 * (r2 - r1 * r1 + 1.0)
}

/// Value at `z_max` of the solution of `-psi'' + V psi = E psi` started at
/// `z = 0` with even (`psi = 1, psi' = 0`) or odd (`psi = 0, psi' = 1`)
/// data, by classical RK4.
pub fn shoot<V: Fn(f64) -> f64>(v: &V, e: f64, even: bool, z_max: f64, step: f64) -> f64 {
    let (mut y, mut dy) = if even { (1.0, 0.0) } else { (0.0, 1.0) };
    let n = (z_max / step).round() as usize;
    let f = |z: f64, y: f64| (v(z) - e) * y;
    for i in 0..n {
        let z = i as f64 * step;
        let k1y = dy;
        let k1d = f(z, y);
        let k2y = dy + 0.5 * step * k1d;
        let k2d = f(z + 0.5 * step, y + 0.5 * step * k1y);
        let k3y = dy + 0.5 * step * k2d;
        let k3d = f(z + 0.5 * step, y + 0.5 * step * k2y);
        let k4y = dy + step * k3d;
        let k4d = f(z + step, y + step * k3y);
        y += step / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        dy += step / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
        if !y.is_finite() {
            break;
        }
    }
    y
}

/// Bound-state energies of an even potential in `[lo, hi]`, located by sign
/// changes of the shooting endpoint and refined by bisection.
pub fn shooting_eigenvalues<V: Fn(f64) -> f64>(v: V, lo: f64, hi: f64) -> Vec<f64> {
    let (z_max, step, scan) = (6.0, 2e-3, 0.05);
    let mut out = Vec::new();
    for even in [true, false] {
        let g = |e: f64| shoot(&v, e, even, z_max, step);
        let mut a = lo;
        let mut ga = g(a);
        while a < hi {
            let b = (a + scan).min(hi);
            let gb = g(b);
            if ga.signum() != gb.signum() {
                let (mut x0, mut x1, mut g0) = (a, b, ga);
                for _ in 0..60 {
                    let mid = 0.5 * (x0 + x1);
                    let gm = g(mid);
                    if gm.signum() == g0.signum() {
                        x0 = mid;
                        g0 = gm;
                    } else {
                        x1 = mid;
                    }
                }
                out.push(0.5 * (x0 + x1));
            }
            a = b;
            ga = gb;
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Fifty expressions exercising every grammar production.
pub const ROUND_TRIP_CORPUS: [&str; 50] = [
    "A",
    "A'",
    "A''",
    "A^2",
    "A'^3",
    "(A^2)'",
    "-A",
    "--A",
    "-A'",
    "-(A + B)",
    "A + B",
    "A - B",
    "A - B - C",
    "A - (B - C)",
    "A + B * C",
    "(A + B) * C",
    "A * B * C",
    "A * (B * C)",
    "A * -B",
    "2 * A",
    "0.5 * A",
    "3/4 * A",
    "2.5e-3 * X",
    "1/2",
    "(1/2)^2",
    "3/4^2",
    "[A, B]",
    "[A, B]'",
    "[A, [B, C]]",
    "[[A, B], C]",
    "[A + B, C * D]",
    "-[A, B]",
    "[hplus, L] + twoOverJ*L",
    "[hplus, L] - twoOverJ*L",
    "[hplus, L'] - twoOverJ*L'",
    "LdagL - (J*hplus - JomegaHalf + JE - one)",
    "LLdag - (J*hplus - JomegaHalf + JE + one)",
    "K - A*L*A'",
    "hplus' - hplus",
    "eta*Hplus - Hplus'*eta",
    "Hplus - thetadag*theta - omega*1/2",
    "A * L * A'",
    "[h, [h, L]]",
    "X * D - D * X",
    "(X + D)^2 - X^2 - D^2",
    "a_1 + b2 * c_3'",
    "omega - 4 * alpha * beta",
    "(((A)))",
    "-(-(A))^2",
    "A \u{2212} B",
];
