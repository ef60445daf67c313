#include "gcsent/state_families.hpp"

#include "gcsent/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace gcsent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// lgamma_r keeps the sign out of the global signgam, so this is reentrant.
double log_factorial(std::size_t n) {
    int sign = 0;
    return ::lgamma_r(static_cast<double>(n) + 1.0, &sign);
}

double log_cosh(double x) { return x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2; }

double log_sinh(double x) { return x + std::log(-std::expm1(-2.0 * x)) - std::numbers::ln2; }

// Neumaier compensated sum.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    [[nodiscard]] double value() const { return sum + comp; }
};

CatBasisParams make_params(double even_weight, double odd_weight, double p) {
    CatBasisParams out;
    out.even_weight = even_weight;
    out.odd_weight = odd_weight;
    out.A = 1.0 / std::sqrt(even_weight);
    out.B = odd_weight > 0.0 ? 1.0 / std::sqrt(odd_weight) : kInf;
    out.p = p;
    out.n_plus = out.A / 2.0;
    out.n_minus = out.B / 2.0;
    return out;
}

// Ratio bound on w_{j+1}/w_j for all j > n, or +inf when none below one is known.
double ratio_bound(const FamilySpec &spec, const Amplitude &amp, std::size_t n) {
    const double x = std::norm(amp.beta());
    const auto j = static_cast<double>(n);
    switch (spec.id) {
    case Family::CS: return x / (j + 2.0);
    case Family::ECS: return x * x / ((2.0 * j + 3.0) * (2.0 * j + 4.0));
    case Family::OCS: return x * x / ((2.0 * j + 4.0) * (2.0 * j + 5.0));
    case Family::SV: {
        const double t = std::tanh(x);
        return t * t;
    }
    case Family::LS: return amp.q() * amp.q();
    }
    return kInf;
}

template <typename F> CatBasisParams sum_series(const FamilySpec &spec, const Amplitude &amp, double tail_tol, F &&on_term) {
    CompensatedSum even, odd;
    for (std::size_t n = 0; n < kMaxSeriesTerms; ++n) {
        const double w = std::exp(term_log_weight(spec, amp, n));
        (n % 2 == 0 ? even : odd).add(w);
        on_term(w);
        if (tail_bound(spec, amp, n) < tail_tol) {
            const double u = even.value();
            const double v = odd.value();
            return make_params(u, v, u - v);
        }
    }
    const double tail = tail_bound(spec, amp, kMaxSeriesTerms - 1);
    throw TruncationError(fmt::format("{} series did not converge within {} terms (tail bound {:.3g} > {:.3g})",
                                      to_string(spec.id), kMaxSeriesTerms, tail, tail_tol),
                          tail, kMaxSeriesTerms);
}

} // namespace

std::string_view to_string(Family f) noexcept {
    switch (f) {
    case Family::CS: return "cs";
    case Family::SV: return "sv";
    case Family::ECS: return "ecs";
    case Family::OCS: return "ocs";
    case Family::LS: return "ls";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (Family f : {Family::CS, Family::SV, Family::ECS, Family::OCS, Family::LS})
        if (lower == to_string(f)) return f;
    throw DomainError(fmt::format("unknown family '{}' (expected cs, sv, ecs, ocs or ls)", name));
}

void validate(const FamilySpec &spec, const Amplitude &amp) {
    const FamilySpec expected = family_spec(spec.id);
    if (spec.k != expected.k || spec.m != expected.m)
        throw DomainError(fmt::format("family {} requires (k, m) = ({}, {})", to_string(spec.id), expected.k, expected.m));

    if (spec.id == Family::LS) {
        if (!amp.is_logarithmic()) throw DomainError("family ls requires a (q, gamma) amplitude");
        if (!std::isfinite(amp.q()) || !std::isfinite(amp.gamma().real()) || !std::isfinite(amp.gamma().imag()))
            throw DomainError("ls amplitude must be finite");
        if (!(std::abs(amp.q()) < 1.0)) throw DomainError(fmt::format("ls requires |q| < 1 (got q = {})", amp.q()));
        if (amp.q() == 0.0 && amp.gamma() == 0.0) throw DomainError("ls requires q != 0 or gamma != 0");
        return;
    }
    if (amp.is_logarithmic())
        throw DomainError(fmt::format("family {} requires a beta amplitude", to_string(spec.id)));
    if (!std::isfinite(amp.beta().real()) || !std::isfinite(amp.beta().imag()))
        throw DomainError("beta must be finite");
    if (spec.id == Family::OCS && amp.beta() == 0.0)
        throw DomainError("ocs requires |beta| > 0 (normalization divides by sinh(|beta|^2))");
}

CatBasisParams cat_params_from_weights(double even_weight, double odd_weight) noexcept {
    return make_params(even_weight, odd_weight, even_weight - odd_weight);
}

double term_log_weight(const FamilySpec &spec, const Amplitude &amp, std::size_t n) {
    validate(spec, amp);
    const auto dn = static_cast<double>(n);
    const double x = std::norm(amp.beta());
    switch (spec.id) {
    case Family::CS:
        if (x == 0.0) return n == 0 ? 0.0 : -kInf;
        return -x + dn * std::log(x) - log_factorial(n);
    case Family::SV: {
        if (n == 0) return -log_cosh(x);
        if (x == 0.0) return -kInf;
        const double t = std::tanh(x);
        return log_factorial(2 * n) - 2.0 * log_factorial(n) - log_cosh(x) + 2.0 * dn * std::log(t / 2.0);
    }
    case Family::ECS:
        if (n == 0) return -log_cosh(x);
        if (x == 0.0) return -kInf;
        return 2.0 * dn * std::log(x) - log_cosh(x) - log_factorial(2 * n);
    case Family::OCS:
        return (2.0 * dn + 1.0) * std::log(x) - log_sinh(x) - log_factorial(2 * n + 1);
    case Family::LS: {
        const double g = std::norm(amp.gamma());
        const double q2 = amp.q() * amp.q();
        const double log_d = std::log(g - std::log1p(-q2));
        if (n == 0) return g == 0.0 ? -kInf : std::log(g) - log_d;
        if (q2 == 0.0) return -kInf;
        return dn * std::log(q2) - std::log(dn) - log_d;
    }
    }
    return -kInf;
}

std::complex<double> term_phase(const FamilySpec &spec, const Amplitude &amp, std::size_t n) {
    if (spec.id == Family::LS) {
        if (n == 0) {
            const double g = std::abs(amp.gamma());
            return g == 0.0 ? std::complex<double>(1.0) : amp.gamma() / g;
        }
        return (amp.q() < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
    }
    if (amp.beta() == 0.0) return 1.0;
    return std::polar(1.0, static_cast<double>(spec.k) * static_cast<double>(n) * std::arg(amp.beta()));
}

double tail_bound(const FamilySpec &spec, const Amplitude &amp, std::size_t n) {
    const double next = term_log_weight(spec, amp, n + 1);
    if (next == -kInf) return 0.0;
    const double r = ratio_bound(spec, amp, n);
    if (!(r < 1.0)) return kInf;
    return std::exp(next) / (1.0 - r);
}

double normalization_residual(const FamilySpec &spec, const Amplitude &amp, double tail_tol) {
    CompensatedSum total;
    sum_series(spec, amp, tail_tol, [&](double w) { total.add(w); });
    return std::abs(1.0 - total.value());
}

CatBasisParams a_from_series(const FamilySpec &spec, const Amplitude &amp, double tail_tol) {
    return sum_series(spec, amp, tail_tol, [](double) {});
}

CatBasisParams a_closed_form(const FamilySpec &spec, const Amplitude &amp) {
    validate(spec, amp);
    const double x = std::norm(amp.beta());
    switch (spec.id) {
    case Family::CS: {
        const double p = std::exp(-2.0 * x);
        return make_params((1.0 + p) / 2.0, -std::expm1(-2.0 * x) / 2.0, p);
    }
    case Family::SV: {
        // 1 - tanh(2x) tanh(x) = 1 / cosh(2x)
        const double p = std::numbers::sqrt2 * std::exp(-x) / std::sqrt(1.0 + std::exp(-4.0 * x));
        double v = (1.0 - p) / 2.0;
        if (x < 1.0) {
            const double root = std::sqrt(std::cosh(2.0 * x));
            const double sh = std::sinh(x);
            v = sh * sh / (root * (root + 1.0));
        }
        return make_params((1.0 + p) / 2.0, v, p);
    }
    case Family::ECS: {
        const double e = std::exp(-x);
        const double p = 2.0 * std::cos(x) * e / (1.0 + e * e);
        double v = (1.0 - p) / 2.0;
        if (x < 1.0) {
            const double sh = std::sinh(x / 2.0);
            const double s = std::sin(x / 2.0);
            v = (sh * sh + s * s) / std::cosh(x);
        }
        return make_params((1.0 + p) / 2.0, v, p);
    }
    case Family::OCS: {
        const double e = std::exp(-x);
        const double p = 2.0 * std::sin(x) * e / (-std::expm1(-2.0 * x));
        double v = (1.0 - p) / 2.0;
        if (x < 1.0) {
            // sinh x - sin x = 2 sum_j x^{4j+3} / (4j+3)!
            double term = x * x * x / 6.0;
            double diff = 0.0;
            for (int j = 0; term > 1e-18 * diff || j == 0; ++j) {
                diff += term;
                const double d = 4.0 * j + 4.0;
                term *= x * x * x * x / (d * (d + 1.0) * (d + 2.0) * (d + 3.0));
            }
            v = diff / std::sinh(x);
        }
        return make_params((1.0 + p) / 2.0, v, p);
    }
    case Family::LS: {
        const double g = std::norm(amp.gamma());
        const double q2 = amp.q() * amp.q();
        const double d = g - std::log1p(-q2);
        const double u = (g - 0.5 * std::log1p(-q2 * q2)) / d;
        const double v = std::atanh(q2) / d;
        const double p = (g - std::log1p(q2)) / d;
        return make_params(u, v, p);
    }
    }
    return {};
}

} // namespace gcsent
