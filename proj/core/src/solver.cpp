#include "dlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "dlab/fft.hpp"
#include "dlab/norms.hpp"
#include "dlab/spectral_ops.hpp"

namespace dlab {

namespace {

struct ModeTables {
    std::vector<double> k1, k2, k_sq;
    explicit ModeTables(const GridSpec& g)
        : k1(g.size()), k2(g.size()), k_sq(g.size()) {
        for (int i1 = 0; i1 < g.n; ++i1)
            for (int i2 = 0; i2 < g.n; ++i2) {
                std::size_t m = g.index(i1, i2);
                k1[m] = g.wavenumber(i1);
                k2[m] = g.wavenumber(i2);
                k_sq[m] = k1[m] * k1[m] + k2[m] * k2[m];
            }
    }
};

const ModeTables& tables_for(const GridSpec& g) {
    // Grids are small in count; keep one table per resolution.
    static std::vector<std::pair<int, ModeTables>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    for (auto& [n, t] : cache)
        if (n == g.n) return t;
    cache.emplace_back(g.n, ModeTables(g));
    return cache.back().second;
}

}  // namespace

VorticitySolver::VorticitySolver(SpectralField omega0, double nu, Forcing curl_forcing,
                                 Options opts)
    : grid_(omega0.grid()), nu_(nu), forcing_(std::move(curl_forcing)), opts_(opts) {
    if (!(nu > 0.0)) throw std::invalid_argument("VorticitySolver: nu must be > 0");
    if (!omega0.is_mean_free(1e-10))
        omega0 = omega0.subtract_mean();
    what_ = omega0.spectral();
    what_[0] = 0.0;
    record_sample(0.0);
}

SpectralField VorticitySolver::omega() const {
    return SpectralField::from_spectral(grid_, what_);
}

VelocityField VorticitySolver::velocity() const { return biot_savart(omega()); }

void VorticitySolver::request_snapshots(std::vector<double> times) {
    snapshot_times_ = std::move(times);
    std::sort(snapshot_times_.begin(), snapshot_times_.end());
}

VorticitySolver::Coeffs VorticitySolver::nonlinear(const Coeffs& what, double t) const {
    const auto& tab = tables_for(grid_);
    const std::size_t sz = grid_.size();
    const std::complex<double> I(0.0, 1.0);

    if (!opts_.advection) {
        Coeffs out(sz, 0.0);
        if (forcing_) {
            SpectralField g = forcing_(t);
            for (std::size_t m = 0; m < sz; ++m) out[m] = g.spectral()[m];
            out[0] = 0.0;
        }
        return out;
    }

    Coeffs u1(sz), u2(sz), wx(sz), wy(sz);
    for (std::size_t m = 0; m < sz; ++m) {
        std::complex<double> w = what[m];
        if (tab.k_sq[m] > 0.0) {
            u1[m] = -I * (-tab.k2[m]) * w / tab.k_sq[m];
            u2[m] = -I * (tab.k1[m]) * w / tab.k_sq[m];
        } else {
            u1[m] = u2[m] = 0.0;
        }
        wx[m] = I * tab.k1[m] * w;
        wy[m] = I * tab.k2[m] * w;
    }
    Coeffs pu1(sz), pu2(sz), pwx(sz), pwy(sz);
    fft::raw_inverse(grid_, u1.data(), pu1.data());
    fft::raw_inverse(grid_, u2.data(), pu2.data());
    fft::raw_inverse(grid_, wx.data(), pwx.data());
    fft::raw_inverse(grid_, wy.data(), pwy.data());
    // raw_inverse of raw-layout coefficients is fine here: the grid-origin
    // phases cancel in the pointwise product and return trip.
    Coeffs adv(sz);
    for (std::size_t m = 0; m < sz; ++m) {
        double a = pu1[m].real() * pwx[m].real() + pu2[m].real() * pwy[m].real();
        adv[m] = a;
    }
    Coeffs ahat(sz);
    fft::raw_forward(grid_, adv.data(), ahat.data());
    const double norm = 1.0 / (static_cast<double>(grid_.n) * grid_.n);
    const int cutoff = grid_.dealias_cutoff;
    Coeffs out(sz);
    for (std::size_t m = 0; m < sz; ++m) {
        bool keep = std::max(std::abs(tab.k1[m]), std::abs(tab.k2[m])) <= cutoff;
        out[m] = keep ? -ahat[m] * norm : 0.0;
    }
    if (forcing_) {
        SpectralField g = forcing_(t);
        for (std::size_t m = 0; m < sz; ++m) out[m] += g.spectral()[m];
    }
    out[0] = 0.0;
    return out;
}

double VorticitySolver::cfl_dt() const {
    const auto& tab = tables_for(grid_);
    const std::size_t sz = grid_.size();
    const std::complex<double> I(0.0, 1.0);
    Coeffs u1(sz), u2(sz);
    for (std::size_t m = 0; m < sz; ++m) {
        if (tab.k_sq[m] > 0.0) {
            u1[m] = -I * (-tab.k2[m]) * what_[m] / tab.k_sq[m];
            u2[m] = -I * (tab.k1[m]) * what_[m] / tab.k_sq[m];
        }
    }
    Coeffs p1(sz), p2(sz);
    fft::raw_inverse(grid_, u1.data(), p1.data());
    fft::raw_inverse(grid_, u2.data(), p2.data());
    double max_u = 0.0;
    for (std::size_t m = 0; m < sz; ++m)
        max_u = std::max(max_u, std::hypot(p1[m].real(), p2[m].real()));
    double dt = opts_.dt_max;
    if (max_u > 0.0) dt = std::min(dt, opts_.cfl_safety * grid_.spacing / max_u);
    return std::max(dt, dt_floor_);
}

void VorticitySolver::step(double dt) {
    const auto& tab = tables_for(grid_);
    const std::size_t sz = grid_.size();

    Coeffs E(sz), E2(sz);
    std::vector<double> e_full(sz), e_half(sz);
    for (std::size_t m = 0; m < sz; ++m) {
        e_half[m] = std::exp(-nu_ * tab.k_sq[m] * 0.5 * dt);
        e_full[m] = e_half[m] * e_half[m];
    }

    Coeffs n1 = nonlinear(what_, t_);
    Coeffs stage(sz);
    for (std::size_t m = 0; m < sz; ++m)
        stage[m] = e_half[m] * (what_[m] + 0.5 * dt * n1[m]);
    Coeffs n2 = nonlinear(stage, t_ + 0.5 * dt);
    for (std::size_t m = 0; m < sz; ++m)
        stage[m] = e_half[m] * what_[m] + 0.5 * dt * n2[m];
    Coeffs n3 = nonlinear(stage, t_ + 0.5 * dt);
    for (std::size_t m = 0; m < sz; ++m)
        stage[m] = e_full[m] * what_[m] + dt * e_half[m] * n3[m];
    Coeffs n4 = nonlinear(stage, t_ + dt);

    double check = 0.0;
    for (std::size_t m = 0; m < sz; ++m) {
        what_[m] = e_full[m] * what_[m] +
                   dt / 6.0 *
                       (e_full[m] * n1[m] + 2.0 * e_half[m] * (n2[m] + n3[m]) + n4[m]);
        check += std::norm(what_[m]);
    }
    what_[0] = 0.0;
    if (!std::isfinite(check))
        throw std::runtime_error("VorticitySolver: NaN/Inf detected at t=" + std::to_string(t_));
    t_ += dt;
    record_sample(dt);
}

void VorticitySolver::advance_to(double t_end) {
    if (t_end <= t_) return;
    dt_floor_ = (t_end - t_) / 1e7;
    std::size_t snap_idx = 0;
    while (snap_idx < snapshot_times_.size() && snapshot_times_[snap_idx] <= t_ + 1e-14) {
        snapshots_.emplace_back(t_, omega());
        ++snap_idx;
    }
    while (t_ < t_end - 1e-14) {
        if (steps_since_cfl_ == 0) dt_current_ = cfl_dt();
        steps_since_cfl_ = (steps_since_cfl_ + 1) % std::max(1, opts_.cfl_recheck_every);
        double dt = dt_current_;
        double stop = t_end;
        if (snap_idx < snapshot_times_.size())
            stop = std::min(stop, snapshot_times_[snap_idx]);
        dt = std::min(dt, stop - t_);
        step(dt);
        if (snap_idx < snapshot_times_.size() && t_ >= snapshot_times_[snap_idx] - 1e-14) {
            snapshots_.emplace_back(t_, omega());
            ++snap_idx;
        }
    }
}

void VorticitySolver::record_sample(double dt_used) {
    const auto& tab = tables_for(grid_);
    const std::size_t sz = grid_.size();
    DiagnosticsSample s;
    s.t = t_;
    s.dt = dt_used;
    const double pl = kTwoPi * kTwoPi;  // Plancherel factor
    double enst = 0.0, energy = 0.0, grad = 0.0;
    for (std::size_t m = 0; m < sz; ++m) {
        double a = std::norm(what_[m]);
        enst += a;
        grad += tab.k_sq[m] * a;
        if (tab.k_sq[m] > 0.0) energy += a / tab.k_sq[m];
    }
    s.enstrophy = pl * enst;
    s.grad_enstrophy = pl * grad;
    s.energy = 0.5 * pl * energy;
    {
        Coeffs phys(sz);
        fft::raw_inverse(grid_, what_.data(), phys.data());
        double l1 = 0.0;
        for (std::size_t m = 0; m < sz; ++m) l1 += std::abs(phys[m].real());
        s.l1 = l1 * grid_.cell_area();
    }
    if (forcing_) {
        SpectralField g = forcing_(t_);
        double fu = 0.0, fsq = 0.0, gw = 0.0;
        for (std::size_t m = 0; m < sz; ++m) {
            const auto& gh = g.spectral()[m];
            gw += (gh * std::conj(what_[m])).real();
            if (tab.k_sq[m] > 0.0) {
                fu += (gh * std::conj(what_[m])).real() / tab.k_sq[m];
                fsq += std::norm(gh) / tab.k_sq[m];
            }
        }
        s.f_dot_u = pl * fu;
        s.f_l2_sq = pl * fsq;
        s.g_dot_omega = pl * gw;
    }
    history_.push_back(s);
}

double VorticitySolver::interp_history(double t, double DiagnosticsSample::* field) const {
    if (history_.empty()) throw std::runtime_error("VorticitySolver: no samples");
    if (t <= history_.front().t) return history_.front().*field;
    if (t >= history_.back().t) return history_.back().*field;
    auto it = std::lower_bound(history_.begin(), history_.end(), t,
                               [](const DiagnosticsSample& s, double v) { return s.t < v; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    if (hi.t == lo.t) return hi.*field;
    double w = (t - lo.t) / (hi.t - lo.t);
    return lo.*field + w * (hi.*field - lo.*field);
}

double VorticitySolver::integrate_history(double t0, double t1,
                                          double DiagnosticsSample::* field) const {
    if (history_.size() < 2) throw std::runtime_error("VorticitySolver: insufficient samples");
    if (!(t0 <= t1)) throw std::invalid_argument("VorticitySolver: need t0 <= t1");
    // Exact integral of the piecewise-linear interpolant of the samples.
    double acc = 0.0;
    for (std::size_t i = 1; i < history_.size(); ++i) {
        double a = history_[i - 1].t, b = history_[i].t;
        double lo = std::max(a, t0), hi = std::min(b, t1);
        if (hi <= lo) continue;
        double fa = history_[i - 1].*field, fb = history_[i].*field;
        auto lerp = [&](double t) { return fa + (fb - fa) * (t - a) / (b - a); };
        acc += 0.5 * (lerp(lo) + lerp(hi)) * (hi - lo);
    }
    return acc;
}

double VorticitySolver::dissipation(double t0, double t1) const {
    return nu_ * integrate_history(t0, t1, &DiagnosticsSample::enstrophy);
}

double VorticitySolver::energy_balance_residual(double t) const {
    double e_t = interp_history(t, &DiagnosticsSample::energy);
    double e_0 = history_.front().energy;
    double zeta = dissipation(history_.front().t, t);
    double work = integrate_history(history_.front().t, t, &DiagnosticsSample::f_dot_u);
    return std::abs(e_t - e_0 + zeta - work);
}

double VorticitySolver::enstrophy_balance_residual(double r, double t) const {
    if (!(r < t)) throw std::invalid_argument("enstrophy_balance_residual: need r < t");
    double et = interp_history(t, &DiagnosticsSample::enstrophy);
    double er = interp_history(r, &DiagnosticsSample::enstrophy);
    double grad = integrate_history(r, t, &DiagnosticsSample::grad_enstrophy);
    double work = integrate_history(r, t, &DiagnosticsSample::g_dot_omega);
    return et - er + 2.0 * nu_ * grad - 2.0 * work;
}

double VorticitySolver::enstrophy_inequality_residual(double r, double t) const {
    if (!(r < t)) throw std::invalid_argument("enstrophy_inequality_residual: need r < t");
    double et = interp_history(t, &DiagnosticsSample::enstrophy);
    double er = interp_history(r, &DiagnosticsSample::enstrophy);
    double grad = integrate_history(r, t, &DiagnosticsSample::grad_enstrophy);
    double fsq = integrate_history(r, t, &DiagnosticsSample::f_l2_sq);
    return et - er + nu_ * grad - fsq / nu_;
}

EnstrophyDecayReport enstrophy_decay_check(const std::vector<const VorticitySolver*>& runs,
                                           double t) {
    EnstrophyDecayReport rep;
    rep.t = t;
    for (const auto* run : runs) {
        double enst = 0.0;
        // linear interpolation of the recorded enstrophy at t
        const auto& h = run->history();
        if (h.empty()) continue;
        if (t >= h.back().t)
            enst = h.back().enstrophy;
        else {
            auto it = std::lower_bound(h.begin(), h.end(), t,
                                       [](const DiagnosticsSample& s, double v) { return s.t < v; });
            if (it == h.begin())
                enst = h.front().enstrophy;
            else {
                const auto& hi = *it;
                const auto& lo = *(it - 1);
                double w = (t - lo.t) / (hi.t - lo.t);
                enst = lo.enstrophy + w * (hi.enstrophy - lo.enstrophy);
            }
        }
        rep.constant = std::max(rep.constant, t * run->nu() * enst);
    }
    return rep;
}

}  // namespace dlab
