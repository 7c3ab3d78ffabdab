#pragma once

#include <vector>

#include "mcgpiston/eos.hpp"

namespace mcg {

enum class Direction {
    Proceeding, ///< piston pushes into the gas (piston speed -sqrt(2) in the lab frame)
    Receding,   ///< piston pulls back from the gas (piston speed +sqrt(2))
};

/// Normalized piston problem in the piston frame: gas occupies x < 0, the wall
/// sits at x = 0, initial state is (rho, u) = (1, -v0). All solver modules
/// work in this frame; use to_lab_frame to undo the Galilean shift.
struct PistonProblem {
    double m0;
    Direction direction;
    GasParams gas;

    double piston_speed() const { return direction == Direction::Proceeding ? -sqrt2 : sqrt2; }
    double upstream_velocity() const { return -piston_speed(); }
    double upstream_sound_speed() const { return sound_speed(gas, 1.0); }
};

inline PistonProblem make_problem(double m0, Direction direction, double alpha, double theta) {
    if (alpha == 1.0 && theta != 0.0)
        throw std::domain_error("make_problem: alpha = 1 requires theta = 0 (Chaplygin limit)");
    PistonProblem p{m0, direction, from_mach(m0, alpha, theta)};
    // structural check: the gas must reproduce m0 at the upstream state
    const double mach = mach_of(p.gas, p.piston_speed());
    if (std::abs(mach - m0) > 1e-12 * m0)
        throw std::domain_error("make_problem: Mach normalization failed");
    return p;
}

inline double initial_pressure(const PistonProblem& p) { return p.gas.A - p.gas.B; }

enum class WaveKind { Shock, Rarefaction1, MeasureLimit };

struct ProfileSample {
    double xi; ///< similarity coordinate x/t, always <= 0
    double rho;
    double u;
    double p;
};

/// Sampled self-similar solution, sorted strictly increasing in xi.
struct WaveProfile {
    WaveKind kind;
    std::vector<ProfileSample> samples;
};

struct LabSample {
    double x;
    double rho;
    double u;
    double p;
};

/// Undoes the Galilean shift: maps a piston-frame profile at time t back to
/// lab-frame positions and velocities.
inline std::vector<LabSample> to_lab_frame(const WaveProfile& profile, Direction direction, double t) {
    const double v0 = direction == Direction::Proceeding ? -sqrt2 : sqrt2;
    std::vector<LabSample> out;
    out.reserve(profile.samples.size());
    for (const auto& s : profile.samples) {
        out.push_back({(s.xi + v0) * t, s.rho, s.u + v0, s.p});
    }
    return out;
}

} // namespace mcg
