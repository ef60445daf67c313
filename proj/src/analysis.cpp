#include "gcsent/analysis.hpp"

#include "gcsent/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace gcsent {

namespace {

int sign_of(double v, double floor) {
    if (v > floor) return 1;
    if (v < -floor) return -1;
    return 0;
}

double entanglement_at(const AmplitudeAxis &axis, double phi, double s, Variant variant) {
    return analyze({axis.family, axis.at(s), phi, variant}).entanglement;
}

SweepRow make_row(const SuperpositionSpec &s, double sweep_parameter) {
    const EntanglementReport r = analyze(s);
    SweepRow row;
    row.sweep_parameter = sweep_parameter;
    row.A = r.A;
    row.p = r.p;
    row.concurrence = r.concurrence;
    row.entanglement = r.entanglement;
    row.phi = s.phi;
    row.family = s.family;
    if (s.family == Family::LS) row.gamma = s.amp.gamma();
    row.variant = s.variant;
    return row;
}

} // namespace

std::vector<double> linspace(double lo, double hi, int steps) {
    if (steps < 1) throw DomainError(fmt::format("grid needs at least one point (got {})", steps));
    if (steps == 1) return {lo};
    std::vector<double> out(static_cast<std::size_t>(steps));
    const double h = (hi - lo) / (steps - 1);
    for (int i = 0; i < steps; ++i) out[static_cast<std::size_t>(i)] = lo + h * i;
    out.back() = hi;
    return out;
}

std::vector<SweepRow> sweep_concurrence_vs_A(std::span<const double> phis, std::span<const double> a_grid) {
    std::vector<SweepRow> rows;
    rows.reserve(phis.size() * a_grid.size());
    for (double phi : phis) {
        for (double A : a_grid) {
            if (!(A >= 1.0 - 1e-12 && A <= std::numbers::sqrt2 + 1e-12))
                throw DomainError(fmt::format("A = {} outside [1, sqrt 2]", A));
            SweepRow row;
            row.sweep_parameter = A;
            row.A = A;
            row.p = std::min(1.0, 2.0 / (A * A) - 1.0);
            // A = 1 with phi = pi is the null state; every A > 1 gives c = 1 there, so report the limit.
            try {
                row.concurrence = concurrence_closed(row.p, phi);
            } catch (const DegenerateStateError &) {
                row.concurrence = 1.0;
            }
            row.entanglement = entanglement_from_concurrence(row.concurrence);
            row.phi = phi;
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<SweepRow> sweep_E_vs_amplitude(std::span<const Family> families, double phi, std::span<const double> grid,
                                           Variant variant) {
    std::vector<SweepRow> rows;
    rows.reserve(families.size() * grid.size());
    for (Family f : families) {
        if (f == Family::LS) throw DomainError("logarithmic states are swept over |q| with sweep_ls");
        for (double b : grid) rows.push_back(make_row({f, Amplitude::beta(b), phi, variant}, b));
    }
    return rows;
}

std::vector<SweepRow> sweep_A_vs_amplitude(std::span<const Family> families, std::span<const double> grid, double phi) {
    return sweep_E_vs_amplitude(families, phi, grid);
}

std::vector<SweepRow> sweep_ls(std::span<const std::complex<double>> gammas, std::span<const double> q_grid, double phi,
                               Variant variant) {
    std::vector<SweepRow> rows;
    rows.reserve(gammas.size() * q_grid.size());
    for (std::complex<double> g : gammas) {
        for (double q : q_grid) {
            if (!(q > 0.0 && q < 1.0)) throw DomainError(fmt::format("|q| grid must lie in (0, 1) (got {})", q));
            rows.push_back(make_row({Family::LS, Amplitude::logarithmic(q, g), phi, variant}, q));
        }
    }
    return rows;
}

std::optional<double> ls_peak_q(std::complex<double> gamma) {
    const double q = std::sqrt(std::expm1(std::norm(gamma)));
    if (q < 1.0) return q;
    return std::nullopt;
}

double ls_gamma_limit() { return std::sqrt(std::numbers::ln2); }

std::vector<SuperpositionSpec> default_verification_grid() {
    constexpr double pi = std::numbers::pi;
    const std::vector<double> phases{0.0, pi / 4, pi / 2, 3 * pi / 4, pi};
    std::vector<SuperpositionSpec> out;
    for (Variant v : {Variant::Aligned, Variant::Swapped}) {
        for (double phi : phases) {
            for (Family f : {Family::CS, Family::SV, Family::ECS, Family::OCS})
                for (double b : {0.3, 0.7, 1.0, 1.5, 2.0}) {
                    // SV at |beta| = 2 decays like tanh(4)^{2n}: no cutoff within kMaxPhotonCutoff reaches 1e-12.
                    if (f == Family::SV && b > 1.5) continue;
                    out.push_back({f, Amplitude::beta(b), phi, v});
                }
            for (double g : {0.1, 0.5, 0.9})
                for (double q : {0.3, 0.5, 0.7, 0.9}) out.push_back({Family::LS, Amplitude::logarithmic(q, g), phi, v});
        }
    }
    return out;
}

double entanglement_derivative(const AmplitudeAxis &axis, double phi, double s, const ExtremaOptions &opts) {
    const double h = opts.relative_step * (s != 0.0 ? std::abs(s) : 1.0);
    return (entanglement_at(axis, phi, s + h, opts.variant) - entanglement_at(axis, phi, s - h, opts.variant)) / (2.0 * h);
}

std::vector<ExtremumReport> find_extrema_E(const AmplitudeAxis &axis, double phi, double lo, double hi,
                                           const ExtremaOptions &opts) {
    if (!(lo < hi)) throw DomainError(fmt::format("extremum search needs lo < hi (got [{}, {}])", lo, hi));
    if (opts.scan_steps < 2) throw DomainError("extremum scan needs at least two points");

    const std::vector<double> grid = linspace(lo, hi, opts.scan_steps);
    std::vector<ExtremumReport> out;

    std::size_t last = grid.size();
    int last_sign = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = entanglement_derivative(axis, phi, grid[i], opts);
        const int sg = sign_of(d, opts.derivative_floor);
        if (sg == 0) continue;
        if (last_sign != 0 && sg != last_sign) {
            double a = grid[last];
            double b = grid[i];
            while (b - a > opts.location_tol) {
                const double mid = 0.5 * (a + b);
                const double dm = entanglement_derivative(axis, phi, mid, opts);
                if (dm == 0.0) {
                    a = b = mid;
                    break;
                }
                ((dm > 0.0) == (last_sign > 0) ? a : b) = mid;
            }
            ExtremumReport r;
            r.location = 0.5 * (a + b);
            r.value = entanglement_at(axis, phi, r.location, opts.variant);
            r.kind = last_sign > 0 ? ExtremumKind::Max : ExtremumKind::Min;
            r.bracket_lo = grid[last];
            r.bracket_hi = grid[i];
            r.residual = std::abs(entanglement_derivative(axis, phi, r.location, opts));
            out.push_back(r);
        }
        last = i;
        last_sign = sg;
    }
    return out;
}

} // namespace gcsent
