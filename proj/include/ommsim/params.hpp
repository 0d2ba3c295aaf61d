#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "ommsim/constants.hpp"
#include "ommsim/errors.hpp"

namespace ommsim {

/// One opto-magnomechanical subsystem: microwave cavity (a), magnon (m),
/// phonon (b) and optical cavity (c). All frequencies and rates are
/// angular (rad/s); kappas are amplitude decay rates.
struct SubsystemParams {
    double omega_a = 0.0;
    double omega_m = 0.0;
    double omega_b = 0.0;
    double omega_c = 0.0;
    double kappa_a = 0.0;
    double kappa_m = 0.0;
    double kappa_c = 0.0;
    double gamma_b = 0.0;
    double g_a = 0.0;   // magnon-microwave coupling
    double G_mb = 0.0;  // effective magnomechanical coupling
    double G_bc = 0.0;  // effective optomechanical coupling

    bool operator==(const SubsystemParams&) const = default;
};

struct SystemParams {
    SubsystemParams sub1;
    SubsystemParams sub2;

    bool operator==(const SystemParams&) const = default;
};

struct EnvironmentParams {
    double temperature = 0.0;  // K
    double squeeze_r = 0.0;    // squeezing parameter of the injected field

    bool operator==(const EnvironmentParams&) const = default;
};

/// Stationary second moments of the squeezed input field.
struct SqueezeMoments {
    double n_sq = 0.0;  // sinh^2 r
    double m_sq = 0.0;  // sinh r cosh r
};

/// Inputs of the auxiliary drive calculator. Bare couplings and the YIG
/// geometry are not fixed by the reference parameter set and must be
/// supplied by the caller.
struct DriveParams {
    double drive_power = 0.0;      // W, microwave drive on the magnon
    double laser_power = 0.0;      // W
    double laser_wavelength = 0.0; // m
    double yig_length = 0.0;       // m
    double yig_width = 0.0;        // m
    double yig_height = 0.0;       // m
    double bias_field = 0.0;       // T
    double bare_g_m = 0.0;         // rad/s, single-quantum magnomechanical
    double bare_g_c = 0.0;         // rad/s, single-quantum optomechanical
    double delta_a = 0.0;          // rad/s
    double delta_m_tilde = 0.0;    // rad/s, includes the magnetostrictive shift
    double delta_c_tilde = 0.0;    // rad/s, includes the radiation-pressure shift
};

struct DerivedDrives {
    double rabi_omega = 0.0;   // rad/s
    double optical_E = 0.0;    // rad/s
    double h_drive = 0.0;      // T
    double total_spins = 0.0;
    std::complex<double> amp_a;
    std::complex<double> amp_m;
    std::complex<double> amp_b;
    std::complex<double> amp_c;
};

/// Mean thermal occupation [exp(hbar w / kB T) - 1]^-1; exactly 0 at T = 0.
inline double bose_occupation(double omega, double temperature,
                              const PhysicalConstants& pc = {}) {
    if (!(omega > 0.0)) throw std::domain_error("bose_occupation: omega must be > 0");
    if (temperature < 0.0) throw std::domain_error("bose_occupation: negative temperature");
    if (temperature == 0.0) return 0.0;
    const double x = pc.hbar * omega / (pc.k_boltzmann * temperature);
    if (x > 700.0) return 0.0;  // exp would overflow; occupation underflows anyway
    return 1.0 / std::expm1(x);
}

inline SqueezeMoments squeeze_moments(double r) {
    if (r < 0.0) throw std::domain_error("squeeze_moments: r must be >= 0");
    const double sh = std::sinh(r);
    return {sh * sh, sh * std::cosh(r)};
}

/// Kittel-mode frequency of the magnon under a bias field H: omega_m = gamma H.
inline double magnon_frequency(double bias_field, const PhysicalConstants& pc = {}) {
    if (bias_field < 0.0) throw std::domain_error("magnon_frequency: negative bias field");
    return pc.gyromagnetic_ratio * bias_field;
}

/// Amplitude (in tesla) of the drive field produced by feeding power P
/// across the micro-bridge cross-section l x w.
inline double drive_field_amplitude(double drive_power, double length, double width,
                                    const PhysicalConstants& pc = {}) {
    if (drive_power < 0.0) throw std::domain_error("drive_field_amplitude: negative power");
    if (!(length > 0.0) || !(width > 0.0))
        throw std::domain_error("drive_field_amplitude: non-positive dimension");
    return std::sqrt(2.0 * pc.mu0 * drive_power / (length * width * pc.c_light));
}

inline double total_spin_number(double volume, const PhysicalConstants& pc = {}) {
    if (!(volume > 0.0)) throw std::domain_error("total_spin_number: non-positive volume");
    return pc.spin_density * volume;
}

/// Collective-drive Rabi frequency (sqrt(5)/4) gamma sqrt(N_s) H_d.
inline double rabi_frequency(double h_drive, double volume,
                             const PhysicalConstants& pc = {}) {
    if (h_drive < 0.0) throw std::domain_error("rabi_frequency: negative drive field");
    const double n_spins = total_spin_number(volume, pc);
    return 0.25 * std::sqrt(5.0) * pc.gyromagnetic_ratio * std::sqrt(n_spins) * h_drive;
}

/// Input coupling amplitude of the laser drive, sqrt(2 kappa_c P / (hbar w_L)).
inline double optical_drive_amplitude(double laser_power, double kappa_c,
                                      double laser_wavelength,
                                      const PhysicalConstants& pc = {}) {
    if (laser_power < 0.0) throw std::domain_error("optical_drive_amplitude: negative power");
    if (!(kappa_c > 0.0) || !(laser_wavelength > 0.0))
        throw std::domain_error("optical_drive_amplitude: non-positive argument");
    const double omega_laser = two_pi * pc.c_light / laser_wavelength;
    return std::sqrt(2.0 * kappa_c * laser_power / (pc.hbar * omega_laser));
}

/// Classical steady-state amplitudes of the four driven modes.
/// With approximate = true the large-detuning limit kappa/|Delta| -> 0 is
/// used instead of the full expressions (useful as a cross-check).
inline DerivedDrives steady_state_amplitudes(const SubsystemParams& sub,
                                             const DriveParams& drives,
                                             bool approximate = false,
                                             const PhysicalConstants& pc = {}) {
    using cd = std::complex<double>;
    DerivedDrives out;
    out.h_drive = drive_field_amplitude(drives.drive_power, drives.yig_length,
                                        drives.yig_width, pc);
    const double volume = drives.yig_length * drives.yig_width * drives.yig_height;
    out.total_spins = total_spin_number(volume, pc);
    out.rabi_omega = rabi_frequency(out.h_drive, volume, pc);
    out.optical_E = optical_drive_amplitude(drives.laser_power, sub.kappa_c,
                                            drives.laser_wavelength, pc);

    const cd i(0.0, 1.0);
    const cd da(sub.kappa_a, drives.delta_a);
    const cd dm(sub.kappa_m, drives.delta_m_tilde);
    const cd dc(sub.kappa_c, drives.delta_c_tilde);

    if (approximate) {
        const double det = sub.g_a * sub.g_a - drives.delta_m_tilde * drives.delta_a;
        if (det == 0.0 || drives.delta_a == 0.0 || drives.delta_c_tilde == 0.0 ||
            sub.omega_b == 0.0)
            throw NumericError("steady_state_amplitudes: approximate branch singular");
        out.amp_m = i * out.rabi_omega * drives.delta_a / det;
        out.amp_a = -sub.g_a * out.amp_m / drives.delta_a;
        out.amp_c = out.optical_E / (i * drives.delta_c_tilde);
    } else {
        const cd denom_m = sub.g_a * sub.g_a + dm * da;
        if (std::abs(denom_m) == 0.0)
            throw NumericError("steady_state_amplitudes: magnon denominator vanishes");
        out.amp_m = out.rabi_omega * da / denom_m;
        out.amp_a = -i * sub.g_a * out.amp_m / da;
        if (std::abs(dc) == 0.0)
            throw NumericError("steady_state_amplitudes: optical denominator vanishes");
        out.amp_c = out.optical_E / dc;
    }
    const double m2 = std::norm(out.amp_m);
    const double c2 = std::norm(out.amp_c);
    const cd db = approximate ? cd(0.0, sub.omega_b) : cd(sub.gamma_b, sub.omega_b);
    if (std::abs(db) == 0.0)
        throw NumericError("steady_state_amplitudes: phonon denominator vanishes");
    out.amp_b = (-i * drives.bare_g_m * m2 + i * drives.bare_g_c * c2) / db;
    return out;
}

/// Effective coupling magnitudes |g_m <m>|, |g_c <c>|; phases are local
/// rotations and are absorbed.
inline std::pair<double, double> effective_couplings_from_drives(
    const DriveParams& drives, const DerivedDrives& derived) {
    if (!(drives.bare_g_m > 0.0) || !(drives.bare_g_c > 0.0))
        throw ConfigError("effective_couplings_from_drives: bare couplings not set");
    return {drives.bare_g_m * std::abs(derived.amp_m),
            drives.bare_g_c * std::abs(derived.amp_c)};
}

/// Reference parameter set used by all presets: experimentally feasible
/// rates with the couplings at the default operating point
/// G_mb = 2.8 kappa_a, G_bc = 1.6 kappa_c.
inline SubsystemParams default_subsystem() {
    SubsystemParams p;
    p.omega_a = two_pi * 10.0e9;
    p.omega_m = two_pi * 10.0e9;
    p.omega_b = two_pi * 40.0e6;
    p.omega_c = two_pi * (PhysicalConstants{}.c_light / 1550.0e-9);
    p.kappa_a = two_pi * 1.5e6;
    p.kappa_m = two_pi * 3.0e5;  // kappa_a / 5
    p.kappa_c = two_pi * 3.0e6;
    p.gamma_b = two_pi * 100.0;
    p.g_a = two_pi * 4.0e6;
    p.G_mb = two_pi * 4.2e6;  // 2.8 kappa_a
    p.G_bc = two_pi * 4.8e6;  // 1.6 kappa_c
    return p;
}

inline SystemParams default_system() {
    const SubsystemParams sub = default_subsystem();
    return {sub, sub};
}

inline EnvironmentParams default_environment() { return {10.0e-3, 1.0}; }

}  // namespace ommsim
