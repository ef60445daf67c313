#pragma once

// Generalized coherent state families
//
//   |beta> = sum_n C_{kn} beta^{kn} |nk + m>
//
// for the coherent (CS), squeezed vacuum (SV), even/odd cat (ECS/OCS) and
// logarithmic (LS) states. Term weights are evaluated in the log domain; the
// cat basis parameters A, B and the parity overlap p follow from the split of
// the weights into even and odd ladder indices n.

#include <complex>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>

namespace gcsent {

enum class Family { CS, SV, ECS, OCS, LS };

/// Ladder structure of a family: term n lives on photon number n*k + m.
struct FamilySpec {
    Family id;
    int k;
    int m;
};

[[nodiscard]] constexpr FamilySpec family_spec(Family f) noexcept {
    switch (f) {
    case Family::CS: return {f, 1, 0};
    case Family::SV: return {f, 2, 0};
    case Family::ECS: return {f, 2, 0};
    case Family::OCS: return {f, 2, 1};
    case Family::LS: return {f, 1, 0};
    }
    return {f, 1, 0};
}

[[nodiscard]] std::string_view to_string(Family f) noexcept;

/// Parses "cs", "sv", "ecs", "ocs", "ls" (case-insensitive). Throws DomainError.
[[nodiscard]] Family parse_family(std::string_view name);

/// State amplitude. Beta families carry a complex beta; the logarithmic family
/// carries a real q (|q| < 1) and a complex gamma.
class Amplitude {
  public:
    Amplitude() = default;

    [[nodiscard]] static Amplitude beta(std::complex<double> b) noexcept {
        Amplitude a;
        a.beta_ = b;
        return a;
    }
    [[nodiscard]] static Amplitude logarithmic(double q, std::complex<double> gamma) noexcept {
        Amplitude a;
        a.log_ = true;
        a.q_ = q;
        a.gamma_ = gamma;
        return a;
    }

    [[nodiscard]] bool is_logarithmic() const noexcept { return log_; }
    [[nodiscard]] std::complex<double> beta() const noexcept { return beta_; }
    [[nodiscard]] double q() const noexcept { return q_; }
    [[nodiscard]] std::complex<double> gamma() const noexcept { return gamma_; }

    /// |beta| for beta families, |q| for the logarithmic family.
    [[nodiscard]] double magnitude() const noexcept { return log_ ? std::abs(q_) : std::abs(beta_); }

  private:
    bool log_ = false;
    std::complex<double> beta_{};
    double q_ = 0.0;
    std::complex<double> gamma_{};
};

/// Throws DomainError naming the violated constraint.
void validate(const FamilySpec &spec, const Amplitude &amp);

/// Derived two-dimensional cat basis quantities for one amplitude.
///
/// even_weight = A^-2 and odd_weight = B^-2 are kept explicitly since they
/// are more accurate than re-deriving them from A and B near the limits.
struct CatBasisParams {
    double A = 1.0;
    double B = std::numeric_limits<double>::infinity();
    double p = 1.0; ///< parity overlap <beta|(-1)^{1/k} beta> = A^-2 - B^-2
    double n_plus = 0.5;
    double n_minus = std::numeric_limits<double>::infinity();
    double even_weight = 1.0;
    double odd_weight = 0.0;
};

/// Builds the full parameter set from the even/odd sector weights.
/// odd_weight == 0 gives the B = +inf sentinel and p = 1.
[[nodiscard]] CatBasisParams cat_params_from_weights(double even_weight, double odd_weight) noexcept;

inline constexpr double kDefaultTailTol = 1e-14;
inline constexpr std::size_t kMaxSeriesTerms = 100000;

/// ln |C_{kn} beta^{kn}|^2. Returns -inf for exactly vanishing terms.
[[nodiscard]] double term_log_weight(const FamilySpec &spec, const Amplitude &amp, std::size_t n);

/// Phase of term n, e^{i k n arg beta} (LS: gamma/|gamma| at n = 0, sign(q)^n after).
[[nodiscard]] std::complex<double> term_phase(const FamilySpec &spec, const Amplitude &amp, std::size_t n);

/// Upper bound on sum_{j > n} weight(j). May be +inf while the terms are still growing.
[[nodiscard]] double tail_bound(const FamilySpec &spec, const Amplitude &amp, std::size_t n);

/// |1 - sum_n weight(n)| with the series cut once the tail bound drops below tail_tol.
[[nodiscard]] double normalization_residual(const FamilySpec &spec, const Amplitude &amp,
                                            double tail_tol = kDefaultTailTol);

/// A^-2 and B^-2 summed term by term over even and odd n.
[[nodiscard]] CatBasisParams a_from_series(const FamilySpec &spec, const Amplitude &amp,
                                           double tail_tol = kDefaultTailTol);

/// Closed-form A (and from it B, p) for each family.
[[nodiscard]] CatBasisParams a_closed_form(const FamilySpec &spec, const Amplitude &amp);

} // namespace gcsent
