#pragma once

#include "gcsent/entanglement.hpp"
#include "gcsent/state_families.hpp"

#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace gcsent {

/// One point of a parameter sweep. `family` is empty for sweeps over A itself;
/// `gamma` is set for logarithmic-state rows.
struct SweepRow {
    double sweep_parameter = 0;
    double A = 1;
    double p = 1;
    double concurrence = 0;
    double entanglement = 0;
    double phi = 0;
    std::optional<Family> family;
    std::optional<std::complex<double>> gamma;
    Variant variant = Variant::Aligned;
};

/// Maps a scalar sweep coordinate to an amplitude: |beta| (real beta) for beta
/// families, |q| at fixed gamma for the logarithmic family.
struct AmplitudeAxis {
    Family family = Family::CS;
    std::complex<double> gamma{};

    [[nodiscard]] Amplitude at(double s) const {
        return family == Family::LS ? Amplitude::logarithmic(s, gamma) : Amplitude::beta(s);
    }
};

enum class ExtremumKind { Max, Min };

struct ExtremumReport {
    double location = 0;
    double value = 0;
    ExtremumKind kind = ExtremumKind::Max;
    double bracket_lo = 0;
    double bracket_hi = 0;
    double residual = 0; ///< |dE/ds| at the location
};

inline constexpr int kDefaultSweepSteps = 400;

/// `steps` evenly spaced points from lo to hi inclusive.
[[nodiscard]] std::vector<double> linspace(double lo, double hi, int steps);

/// c(A, phi) with p = 2 A^-2 - 1. Every A must lie in [1, sqrt 2]. The null point
/// (A = 1, phi = pi) reports its limit c = 1.
[[nodiscard]] std::vector<SweepRow> sweep_concurrence_vs_A(std::span<const double> phis, std::span<const double> a_grid);

/// Full rows (A, p, c, E) per family along |beta| at relative phase phi.
[[nodiscard]] std::vector<SweepRow> sweep_E_vs_amplitude(std::span<const Family> families, double phi,
                                                         std::span<const double> grid,
                                                         Variant variant = Variant::Aligned);

[[nodiscard]] std::vector<SweepRow> sweep_A_vs_amplitude(std::span<const Family> families,
                                                         std::span<const double> grid, double phi = std::numbers::pi / 2);

/// Logarithmic-state rows along |q| for each gamma.
[[nodiscard]] std::vector<SweepRow> sweep_ls(std::span<const std::complex<double>> gammas,
                                             std::span<const double> q_grid, double phi,
                                             Variant variant = Variant::Aligned);

/// |q| = sqrt(e^{|gamma|^2} - 1) where the logarithmic state reaches p = 0, or none if |q| >= 1.
[[nodiscard]] std::optional<double> ls_peak_q(std::complex<double> gamma);

/// sqrt(ln 2): the largest |gamma| for which ls_peak_q exists.
[[nodiscard]] double ls_gamma_limit();

/// Families x amplitudes x phases x variants checked by `verify --grid default`:
/// |beta| in {0.3, 0.7, 1, 1.5, 2} for CS/ECS/OCS (SV stops at 1.5), |q| in {0.3, 0.5, 0.7, 0.9}
/// with gamma in {0.1, 0.5, 0.9} for LS, phi in {0, pi/4, pi/2, 3pi/4, pi}.
[[nodiscard]] std::vector<SuperpositionSpec> default_verification_grid();

struct ExtremaOptions {
    int scan_steps = kDefaultSweepSteps;
    double location_tol = 1e-10;
    double relative_step = 1e-6;
    double derivative_floor = 1e-8; ///< |dE/ds| below this is treated as flat
    Variant variant = Variant::Aligned;
};

/// dE/ds by central difference with a relative step.
[[nodiscard]] double entanglement_derivative(const AmplitudeAxis &axis, double phi, double s,
                                             const ExtremaOptions &opts = {});

/// Extrema of E(s) on [lo, hi] by scan and bisection on the numerical derivative,
/// in increasing order of location. Empty if E is monotone on the range.
[[nodiscard]] std::vector<ExtremumReport> find_extrema_E(const AmplitudeAxis &axis, double phi, double lo, double hi,
                                                         const ExtremaOptions &opts = {});

} // namespace gcsent
