#include "gcsent/entanglement.hpp"

#include "gcsent/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace gcsent {

namespace {

using cplx = std::complex<double>;

// Squared norm below which the unnormalized superposition is treated as null.
constexpr double kNullNorm2 = 1e-28;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

} // namespace

std::string_view to_string(Variant v) noexcept { return v == Variant::Aligned ? "aligned" : "swapped"; }

Variant parse_variant(std::string_view name) {
    if (name == "aligned" || name == "ALIGNED") return Variant::Aligned;
    if (name == "swapped" || name == "SWAPPED") return Variant::Swapped;
    throw DomainError(fmt::format("unknown variant '{}' (expected aligned or swapped)", name));
}

BellDecomposition bell_coefficients(const SuperpositionSpec &s, const CatBasisParams &cat) {
    const double u = cat.even_weight;
    const double v = cat.odd_weight;
    const double cross = std::sqrt(u * v); // 1/(AB)
    const cplx e = std::polar(1.0, s.phi);
    const cplx plus = 1.0 + e;
    const cplx minus = 1.0 - e;

    BellDecomposition d;
    if (s.variant == Variant::Aligned)
        d.a = {plus * u, plus * v, minus * cross, minus * cross};
    else
        d.a = {plus * u, -plus * v, -minus * cross, minus * cross};

    double norm2 = 0.0;
    for (const cplx &aj : d.a) norm2 += std::norm(aj);
    if (norm2 < kNullNorm2)
        throw DegenerateStateError(
            fmt::format("superposition is the null vector (p = {}, phi = {}): amplitude zero with phi = pi", cat.p, s.phi));

    d.norm = 1.0 / std::sqrt(norm2);
    for (cplx &aj : d.a) aj *= d.norm;

    const double r = std::numbers::sqrt2 / 2.0;
    const cplx i(0.0, 1.0);
    d.alpha = {r * (d.a[0] + d.a[1]), i * r * (d.a[0] - d.a[1]), i * r * (d.a[2] + d.a[3]), r * (d.a[2] - d.a[3])};
    return d;
}

double concurrence_from_decomposition(const BellDecomposition &d) {
    const double c = 2.0 * std::abs(d.a[0] * d.a[1] - d.a[2] * d.a[3]);
    if (!(c <= 1.0 + 1e-9)) throw NumericalError(fmt::format("determinant concurrence {} exceeds 1", c));
    return std::min(c, 1.0);
}

double concurrence_from_bell(const BellDecomposition &d) {
    cplx sum = 0.0;
    for (const cplx &aj : d.alpha) sum += aj * aj;
    return std::min(std::abs(sum), 1.0);
}

double concurrence_closed(double p, double phi) {
    if (!(std::abs(p) <= 1.0 + 1e-12)) throw DomainError(fmt::format("parity overlap must satisfy -1 < p <= 1 (got {})", p));
    const double p2 = p * p;
    const double den = 1.0 + p2 * std::cos(phi);
    if (den < kNullNorm2)
        throw DegenerateStateError(fmt::format("null superposition (p = {}, phi = {})", p, phi));
    // 1 - p^2 and 1 + p^2 cos(pi) round identically, so phi = pi gives exactly 1.
    return std::clamp((1.0 - p2) / den, 0.0, 1.0);
}

double schmidt_weight(double c) {
    if (!(c >= 0.0 && c <= 1.0)) throw DomainError(fmt::format("concurrence must lie in [0, 1] (got {})", c));
    return 0.5 + 0.5 * std::sqrt((1.0 - c) * (1.0 + c));
}

double entanglement_from_concurrence(double c) {
    const double x = schmidt_weight(c);
    return -(xlog2x(x) + xlog2x(1.0 - x));
}

double parallelogram_area(const std::array<double, 4> &a) noexcept { return std::abs(a[0] * a[1] - a[2] * a[3]); }

EntanglementReport analyze(const SuperpositionSpec &s) {
    const CatBasisParams cat = a_closed_form(s.family_spec(), s.amp);
    const BellDecomposition d = bell_coefficients(s, cat);
    const double c_det = concurrence_from_decomposition(d);
    const double c = concurrence_closed(cat.p, s.phi);
    if (std::abs(c - c_det) > kRouteAgreementTol)
        throw NumericalError(fmt::format("closed-form concurrence {} disagrees with determinant {}", c, c_det));

    EntanglementReport r;
    r.A = cat.A;
    r.p = cat.p;
    r.concurrence = c;
    r.x = schmidt_weight(c);
    r.entanglement = entanglement_from_concurrence(c);
    r.norm = d.norm;
    return r;
}

} // namespace gcsent
