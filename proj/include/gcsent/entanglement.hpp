#pragma once

// Two-mode superpositions of a generalized coherent state |beta> and its
// partner |beta'> = |(-1)^{1/k} beta>:
//
//   ALIGNED:  N [ |beta>|beta>  + e^{i phi} |beta'>|beta'> ]
//   SWAPPED:  N [ |beta>|beta'> + e^{i phi} |beta'>|beta>  ]
//
// Both live in the span of the product cat basis {|+>,|->}^2, so the
// concurrence reduces to a 2x2 determinant of the expansion coefficients.

#include "gcsent/state_families.hpp"

#include <array>
#include <complex>
#include <string_view>

namespace gcsent {

enum class Variant { Aligned, Swapped };

[[nodiscard]] std::string_view to_string(Variant v) noexcept;
[[nodiscard]] Variant parse_variant(std::string_view name);

struct SuperpositionSpec {
    Family family = Family::CS;
    Amplitude amp;
    double phi = 0.0;
    Variant variant = Variant::Aligned;

    [[nodiscard]] FamilySpec family_spec() const noexcept { return gcsent::family_spec(family); }
};

/// a: coefficients over {|++>, |-->, |+->, |-+>}; alpha: over the Bell basis G1..G4.
struct BellDecomposition {
    std::array<std::complex<double>, 4> a{};
    std::array<std::complex<double>, 4> alpha{};
    double norm = 0.0; ///< N, chosen so that sum |a_j|^2 = 1
};

struct EntanglementReport {
    double A = 1.0;
    double p = 1.0;
    double concurrence = 0.0;
    double x = 1.0;
    double entanglement = 0.0; ///< bits
    double norm = 0.0;
};

/// Expansion of the superposition in the product cat basis and the Bell basis.
/// Throws DegenerateStateError for the null state (p = 1 with phi = pi).
[[nodiscard]] BellDecomposition bell_coefficients(const SuperpositionSpec &s, const CatBasisParams &cat);

/// c = 2 |a1 a2 - a3 a4|.
[[nodiscard]] double concurrence_from_decomposition(const BellDecomposition &d);

/// c = |sum_j alpha_j^2|, the same quantity evaluated in the Bell basis.
[[nodiscard]] double concurrence_from_bell(const BellDecomposition &d);

/// c = (1 - p^2) / (1 + p^2 cos phi).
[[nodiscard]] double concurrence_closed(double p, double phi);

/// x = 1/2 + 1/2 sqrt(1 - c^2).
[[nodiscard]] double schmidt_weight(double c);

/// Binary entropy of x, in bits. Throws DomainError for c outside [0, 1].
[[nodiscard]] double entanglement_from_concurrence(double c);

/// Area of the parallelogram spanned by (a1, a3) and (a4, a2) for real coefficients.
[[nodiscard]] double parallelogram_area(const std::array<double, 4> &a) noexcept;

/// Closed-form A, p and c, cross-checked against the determinant route.
[[nodiscard]] EntanglementReport analyze(const SuperpositionSpec &s);

inline constexpr double kRouteAgreementTol = 1e-10;

} // namespace gcsent
