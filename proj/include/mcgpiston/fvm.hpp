#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mcgpiston/eos.hpp"
#include "mcgpiston/setup.hpp"

namespace mcg {
namespace fvm {

inline constexpr double density_floor = 1e-12;

struct Grid1D {
    double x_min; ///< left boundary, < 0; the wall sits at x = 0
    int n_cells;
    double dx;

    static Grid1D make(double x_min, int n_cells) {
        if (!(std::isfinite(x_min) && x_min < 0.0))
            throw std::domain_error("Grid1D: x_min must be finite and < 0");
        if (n_cells < 16) throw std::domain_error("Grid1D: need at least 16 cells");
        return {x_min, n_cells, -x_min / n_cells};
    }

    double center(int i) const { return x_min + (i + 0.5) * dx; }
};

struct ConservedState {
    std::vector<double> rho;
    std::vector<double> mom;
};

struct StepInfo {
    double dt;
    double mass_flux_left;  ///< mass flux through the left boundary (into the domain when > 0)
    double mom_flux_left;
    double mass_flux_wall;  ///< identically 0 by the mirror construction
    double mom_flux_wall;
    int floor_hits;
};

/// First-order finite-volume solver on x in [x_min, 0] with a reflecting wall
/// at x = 0 (mirrored ghost cells) and a far-field Dirichlet state on the
/// left. The interface flux is the single-speed dissipative two-wave flux with
/// signal speed |u| + c, which keeps the scheme stable through the negative
/// pressure regions of this gas.
class Solver {
public:
    Solver(Grid1D grid, GasParams gas, double rho0, double u0)
        : grid_(grid), gas_(gas), far_rho_(rho0), far_mom_(rho0 * u0) {
        state_.rho.assign(static_cast<std::size_t>(grid_.n_cells), rho0);
        state_.mom.assign(static_cast<std::size_t>(grid_.n_cells), far_mom_);
    }

    StepInfo step(double cfl, double dt_cap = std::numeric_limits<double>::infinity()) {
        if (!(cfl > 0.0 && cfl <= 1.0)) throw std::domain_error("fvm::step: cfl must lie in (0, 1]");
        const int n = grid_.n_cells;
        const int ng = 2;
        const int total = n + 2 * ng;
        ext_rho_.assign(static_cast<std::size_t>(total), 0.0);
        ext_mom_.assign(static_cast<std::size_t>(total), 0.0);
        for (int i = 0; i < n; ++i) {
            ext_rho_[static_cast<std::size_t>(ng + i)] = state_.rho[static_cast<std::size_t>(i)];
            ext_mom_[static_cast<std::size_t>(ng + i)] = state_.mom[static_cast<std::size_t>(i)];
        }
        for (int g = 0; g < ng; ++g) {
            // far field on the left
            ext_rho_[static_cast<std::size_t>(g)] = far_rho_;
            ext_mom_[static_cast<std::size_t>(g)] = far_mom_;
            // mirrored wall on the right: density copied, momentum negated
            ext_rho_[static_cast<std::size_t>(ng + n + g)] = state_.rho[static_cast<std::size_t>(n - 1 - g)];
            ext_mom_[static_cast<std::size_t>(ng + n + g)] = -state_.mom[static_cast<std::size_t>(n - 1 - g)];
        }

        double s_max = 0.0;
        for (int i = 0; i < total; ++i) {
            const double r = ext_rho_[static_cast<std::size_t>(i)];
            const double u = ext_mom_[static_cast<std::size_t>(i)] / r;
            s_max = std::max(s_max, std::abs(u) + sound_speed(gas_, r));
        }
        double dt = std::min(cfl * grid_.dx / s_max, dt_cap);

        // fluxes on the n+1 interfaces of the physical cells
        flux_rho_.assign(static_cast<std::size_t>(n + 1), 0.0);
        flux_mom_.assign(static_cast<std::size_t>(n + 1), 0.0);
        for (int i = 0; i <= n; ++i) {
            const int l = ng + i - 1;
            const int r = ng + i;
            const double rho_l = ext_rho_[static_cast<std::size_t>(l)];
            const double rho_r = ext_rho_[static_cast<std::size_t>(r)];
            const double mom_l = ext_mom_[static_cast<std::size_t>(l)];
            const double mom_r = ext_mom_[static_cast<std::size_t>(r)];
            const double u_l = mom_l / rho_l;
            const double u_r = mom_r / rho_r;
            const double s = std::max(std::abs(u_l) + sound_speed(gas_, rho_l),
                                      std::abs(u_r) + sound_speed(gas_, rho_r));
            const double f_rho_l = mom_l;
            const double f_rho_r = mom_r;
            const double f_mom_l = mom_l * u_l + pressure(gas_, rho_l);
            const double f_mom_r = mom_r * u_r + pressure(gas_, rho_r);
            flux_rho_[static_cast<std::size_t>(i)] =
                0.5 * (f_rho_l + f_rho_r) - 0.5 * s * (rho_r - rho_l);
            flux_mom_[static_cast<std::size_t>(i)] =
                0.5 * (f_mom_l + f_mom_r) - 0.5 * s * (mom_r - mom_l);
        }

        int floor_hits = 0;
        const double lambda = dt / grid_.dx;
        for (int i = 0; i < n; ++i) {
            auto idx = static_cast<std::size_t>(i);
            state_.rho[idx] -= lambda * (flux_rho_[idx + 1] - flux_rho_[idx]);
            state_.mom[idx] -= lambda * (flux_mom_[idx + 1] - flux_mom_[idx]);
            if (state_.rho[idx] < density_floor) {
                state_.rho[idx] = density_floor;
                state_.mom[idx] = 0.0;
                ++floor_hits;
            }
            if (!std::isfinite(state_.rho[idx]) || !std::isfinite(state_.mom[idx]))
                throw std::runtime_error("fvm::step: non-finite state");
        }
        floor_hits_ += floor_hits;
        time_ += dt;
        return {dt, flux_rho_.front(), flux_mom_.front(), flux_rho_.back(), flux_mom_.back(),
                floor_hits};
    }

    void advance_to(double t_final, double cfl) {
        while (time_ < t_final) {
            step(cfl, t_final - time_);
        }
    }

    WaveProfile profile(WaveKind kind) const {
        WaveProfile out{kind, {}};
        out.samples.reserve(static_cast<std::size_t>(grid_.n_cells));
        for (int i = 0; i < grid_.n_cells; ++i) {
            auto idx = static_cast<std::size_t>(i);
            const double rho = state_.rho[idx];
            const double u = state_.mom[idx] / rho;
            out.samples.push_back({grid_.center(i) / time_, rho, u, pressure(gas_, rho)});
        }
        return out;
    }

    const Grid1D& grid() const { return grid_; }
    const GasParams& gas() const { return gas_; }
    const ConservedState& state() const { return state_; }
    double time() const { return time_; }
    int floor_hits() const { return floor_hits_; }

    double total_mass() const {
        double m = 0.0;
        for (double r : state_.rho) m += r;
        return m * grid_.dx;
    }
    double total_momentum() const {
        double m = 0.0;
        for (double q : state_.mom) m += q;
        return m * grid_.dx;
    }

private:
    Grid1D grid_;
    GasParams gas_;
    double far_rho_;
    double far_mom_;
    ConservedState state_;
    double time_ = 0.0;
    int floor_hits_ = 0;
    // scratch buffers reused across steps
    std::vector<double> ext_rho_, ext_mom_, flux_rho_, flux_mom_;
};

inline Solver init(const PistonProblem& p, Grid1D grid) {
    return Solver(grid, p.gas, 1.0, p.upstream_velocity());
}

/// Domain wide enough that no wave reaches the left boundary by t_final.
inline Grid1D suggested_grid(const PistonProblem& p, double t_final, int n_cells) {
    const double span = (sqrt2 + p.upstream_sound_speed()) * t_final;
    return Grid1D::make(-(1.5 * span + 0.5), n_cells);
}

inline WaveProfile run_to(const PistonProblem& p, Grid1D grid, double t_final, double cfl) {
    if (!(t_final > 0.0)) throw std::domain_error("fvm::run_to: t_final must be > 0");
    Solver solver = init(p, grid);
    solver.advance_to(t_final, cfl);
    return solver.profile(p.direction == Direction::Proceeding ? WaveKind::Shock
                                                               : WaveKind::Rarefaction1);
}

} // namespace fvm
} // namespace mcg
