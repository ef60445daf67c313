#pragma once

// Brute-force verifier in a truncated photon-number space.
//
// Single-mode coefficients are generated by the term-to-term ratio of each
// family, independent of the log-gamma evaluation in state_families. The
// two-mode state is stored as its coefficient matrix over the ladder support
// {n k + m}, so the mode-1 reduced state is simply M M^dagger.

#include "gcsent/entanglement.hpp"
#include "gcsent/errors.hpp"
#include "gcsent/state_families.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <fmt/format.h>

namespace gcsent::oracle {

template <typename Real> using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real> using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real> using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

inline constexpr double kOracleTailTol = 1e-12;
inline constexpr int kMaxPhotonCutoff = 4096;

/// Truncated single-mode vector. coeffs(n) is the amplitude of photon number n*k + m.
template <typename Real> struct SingleModeVector {
    FamilySpec spec{};
    int nmax = 0;
    CVector<Real> coeffs;
    Real tail_mass = 0;

    [[nodiscard]] std::complex<Real> photon_amplitude(int photons) const {
        if (photons < spec.m || (photons - spec.m) % spec.k != 0) return {};
        const int n = (photons - spec.m) / spec.k;
        return n < coeffs.size() ? coeffs(n) : std::complex<Real>{};
    }
};

/// Two-mode state over the ladder support. amplitudes(n1, n2) multiplies |n1 k + m, n2 k + m>.
template <typename Real> struct TruncatedTwoModeState {
    FamilySpec spec{};
    int nmax = 0;
    CMatrix<Real> amplitudes;
    Real tail_mass = 0;      ///< probability discarded by truncating both modes
    Real norm2_before = 0;   ///< squared norm of the superposition before renormalization

    [[nodiscard]] std::complex<Real> amplitude(int n1, int n2) const {
        auto ladder = [&](int photons) {
            if (photons < spec.m || (photons - spec.m) % spec.k != 0) return -1;
            const int n = (photons - spec.m) / spec.k;
            return n < amplitudes.rows() ? n : -1;
        };
        const int i = ladder(n1);
        const int j = ladder(n2);
        return (i < 0 || j < 0) ? std::complex<Real>{} : amplitudes(i, j);
    }
};

template <typename Real> struct ReducedState {
    CMatrix<Real> matrix;
    Real trace = 0;
};

namespace detail {

template <typename Real> int ladder_terms(const FamilySpec &spec, int nmax) { return (nmax - spec.m) / spec.k + 1; }

// Unnormalized-by-truncation coefficients C_{kn} beta^{kn} from the ratio recurrence.
template <typename Real> CVector<Real> raw_coefficients(const FamilySpec &spec, const Amplitude &amp, int terms) {
    using C = std::complex<Real>;
    CVector<Real> c = CVector<Real>::Zero(terms);
    const C beta(static_cast<Real>(amp.beta().real()), static_cast<Real>(amp.beta().imag()));
    const Real x = std::norm(beta);
    const C beta2 = beta * beta;

    switch (spec.id) {
    case Family::CS:
        c(0) = std::exp(-x / 2);
        for (int n = 0; n + 1 < terms; ++n) c(n + 1) = c(n) * beta / std::sqrt(static_cast<Real>(n + 1));
        break;
    case Family::SV: {
        const Real tau = x == 0 ? Real(0.5) : std::tanh(x) / (2 * x);
        c(0) = 1 / std::sqrt(std::cosh(x));
        for (int n = 0; n + 1 < terms; ++n) {
            const Real dn = n;
            c(n + 1) = c(n) * std::sqrt((2 * dn + 1) * (2 * dn + 2)) / (dn + 1) * tau * beta2;
        }
        break;
    }
    case Family::ECS:
        c(0) = 1 / std::sqrt(std::cosh(x));
        for (int n = 0; n + 1 < terms; ++n) {
            const Real dn = n;
            c(n + 1) = c(n) * beta2 / std::sqrt((2 * dn + 1) * (2 * dn + 2));
        }
        break;
    case Family::OCS:
        c(0) = std::sqrt(x) / std::sqrt(std::sinh(x));
        for (int n = 0; n + 1 < terms; ++n) {
            const Real dn = n;
            c(n + 1) = c(n) * beta2 / std::sqrt((2 * dn + 2) * (2 * dn + 3));
        }
        break;
    case Family::LS: {
        const Real q = static_cast<Real>(amp.q());
        const C gamma(static_cast<Real>(amp.gamma().real()), static_cast<Real>(amp.gamma().imag()));
        const Real d = std::norm(gamma) - std::log1p(-q * q);
        c(0) = gamma / std::sqrt(d);
        if (terms > 1) c(1) = q / std::sqrt(d);
        for (int n = 1; n + 1 < terms; ++n) c(n + 1) = c(n) * q * std::sqrt(static_cast<Real>(n) / (n + 1));
        break;
    }
    }
    return c;
}

} // namespace detail

/// Truncated, renormalized |beta> (or its partner |(-1)^{1/k} beta> when `partner`).
/// Throws TruncationError when the discarded mass exceeds tail_tol.
template <typename Real>
SingleModeVector<Real> build_single_mode(const FamilySpec &spec, const Amplitude &amp, int nmax,
                                         double tail_tol = kOracleTailTol, bool partner = false) {
    validate(spec, amp);
    if (nmax < spec.m) throw DomainError(fmt::format("nmax = {} must be at least m = {}", nmax, spec.m));

    const int terms = detail::ladder_terms<Real>(spec, nmax);
    SingleModeVector<Real> out;
    out.spec = spec;
    out.nmax = nmax;
    out.coeffs = detail::raw_coefficients<Real>(spec, amp, terms);
    if (partner)
        for (int n = 1; n < terms; n += 2) out.coeffs(n) = -out.coeffs(n);

    const Real kept = out.coeffs.squaredNorm();
    out.tail_mass = std::max(Real(0), 1 - kept);
    if (out.tail_mass > static_cast<Real>(tail_tol))
        throw TruncationError(fmt::format("{} truncated at nmax = {} leaves tail mass {:.3g} > {:.3g}; increase nmax",
                                          to_string(spec.id), nmax, static_cast<double>(out.tail_mass), tail_tol),
                              static_cast<double>(out.tail_mass), static_cast<std::size_t>(terms));
    out.coeffs /= std::sqrt(kept);
    return out;
}

/// First cutoff whose single-mode tail is below tail_tol, growing the term count by 1.5x from 16.
template <typename Real>
int choose_nmax(const FamilySpec &spec, const Amplitude &amp, double tail_tol = kOracleTailTol,
                int cap = kMaxPhotonCutoff) {
    validate(spec, amp);
    double tail = 1.0;
    for (int terms = 16;; terms += terms / 2) {
        const int nmax = std::min(spec.m + spec.k * (terms - 1), cap);
        const CVector<Real> c = detail::raw_coefficients<Real>(spec, amp, detail::ladder_terms<Real>(spec, nmax));
        tail = static_cast<double>(std::max(Real(0), 1 - c.squaredNorm()));
        if (tail <= tail_tol) return nmax;
        if (nmax >= cap) break;
    }
    throw TruncationError(fmt::format("{} needs a photon cutoff above {} (tail mass {:.3g} > {:.3g})",
                                      to_string(spec.id), cap, tail, tail_tol),
                          tail, static_cast<std::size_t>(cap));
}

/// <beta | (-1)^{1/k} beta> from the two truncated vectors.
template <typename Real>
Real overlap_oracle(const FamilySpec &spec, const Amplitude &amp, int nmax, double tail_tol = kOracleTailTol) {
    const auto a = build_single_mode<Real>(spec, amp, nmax, tail_tol, false);
    const auto b = build_single_mode<Real>(spec, amp, nmax, tail_tol, true);
    return a.coeffs.dot(b.coeffs).real();
}

template <typename Real>
TruncatedTwoModeState<Real> build_superposition(const SuperpositionSpec &s, int nmax,
                                                double tail_tol = kOracleTailTol) {
    const FamilySpec spec = s.family_spec();
    const auto psi = build_single_mode<Real>(spec, s.amp, nmax, tail_tol, false);
    const auto partner = build_single_mode<Real>(spec, s.amp, nmax, tail_tol, true);
    const std::complex<Real> e = std::polar(Real(1), static_cast<Real>(s.phi));

    TruncatedTwoModeState<Real> out;
    out.spec = spec;
    out.nmax = nmax;
    out.tail_mass = psi.tail_mass * (2 - psi.tail_mass);
    if (s.variant == Variant::Aligned)
        out.amplitudes = psi.coeffs * psi.coeffs.transpose() + e * partner.coeffs * partner.coeffs.transpose();
    else
        out.amplitudes = psi.coeffs * partner.coeffs.transpose() + e * partner.coeffs * psi.coeffs.transpose();

    out.norm2_before = out.amplitudes.squaredNorm();
    if (out.norm2_before < Real(1e-28))
        throw DegenerateStateError("superposition is the null vector (amplitude zero with phi = pi)");
    out.amplitudes /= std::sqrt(out.norm2_before);
    return out;
}

/// Auto cutoff: each mode keeps tail_tol / 2 so the two-mode discarded mass t (2 - t) stays below tail_tol.
template <typename Real>
TruncatedTwoModeState<Real> build_superposition(const SuperpositionSpec &s, double tail_tol = kOracleTailTol) {
    return build_superposition<Real>(s, choose_nmax<Real>(s.family_spec(), s.amp, tail_tol / 2), tail_tol);
}

/// Mode-1 reduced density matrix. Throws NumericalError unless Hermitian (1e-12) with unit trace (1e-10).
template <typename Real> ReducedState<Real> reduced_state(const TruncatedTwoModeState<Real> &state) {
    ReducedState<Real> rho;
    rho.matrix = state.amplitudes * state.amplitudes.adjoint();
    rho.trace = rho.matrix.trace().real();
    const Real asym = (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
    // Trace slack covers summation error over a few thousand ladder terms.
    if (asym > Real(1e-12) || std::abs(rho.trace - 1) > Real(1e-10))
        throw NumericalError(fmt::format("reduced state not a density matrix (asymmetry {:.3g}, trace {})",
                                         static_cast<double>(asym), static_cast<double>(rho.trace)));
    return rho;
}

/// Eigenvalues of a reduced state, largest first. Throws NumericalError below -1e-12.
template <typename Real> RVector<Real> reduced_spectrum(const ReducedState<Real> &rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(rho.matrix, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("eigen-decomposition of the reduced state failed");
    RVector<Real> ev = solver.eigenvalues().reverse();
    if (ev.size() > 0 && ev(ev.size() - 1) < Real(-1e-12))
        throw NumericalError(fmt::format("reduced state has negative eigenvalue {:.3g}", static_cast<double>(ev(ev.size() - 1))));
    return ev;
}

template <typename Real> RVector<Real> reduced_spectrum(const TruncatedTwoModeState<Real> &state) {
    return reduced_spectrum(reduced_state(state));
}

/// -sum lambda log2 lambda over eigenvalues above the 1e-14 floor.
template <typename Real> Real entropy_from_spectrum(const RVector<Real> &ev) {
    Real s = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > Real(1e-14)) s -= ev(i) * std::log2(ev(i));
    return s;
}

/// von Neumann entropy of the mode-1 reduced state, in bits.
template <typename Real> Real entanglement_entropy(const TruncatedTwoModeState<Real> &state) {
    return entropy_from_spectrum(reduced_spectrum(state));
}

/// Pure-state I-concurrence sqrt(2 (1 - Tr rho^2)).
template <typename Real> Real concurrence_oracle(const ReducedState<Real> &rho) {
    const Real purity = rho.matrix.squaredNorm();
    return std::sqrt(std::max(Real(0), 2 * (1 - purity)));
}

template <typename Real> Real concurrence_oracle(const TruncatedTwoModeState<Real> &state) {
    return concurrence_oracle(reduced_state(state));
}

/// Every route to c and E for one superposition.
struct CrossCheck {
    double c_closed = 0;
    double c_determinant = 0;
    double c_bell = 0;
    double c_oracle = 0;
    double e_closed = 0;
    double e_oracle = 0;
    double third_eigenvalue = 0;
    double tail_mass = 0;
    int nmax = 0;

    [[nodiscard]] double closed_vs_determinant() const { return std::abs(c_closed - c_determinant); }
    [[nodiscard]] double concurrence_vs_oracle() const { return std::abs(c_closed - c_oracle); }
    [[nodiscard]] double entropy_vs_oracle() const { return std::abs(e_closed - e_oracle); }
};

template <typename Real = double>
CrossCheck cross_check(const SuperpositionSpec &s, double tail_tol = kOracleTailTol, int nmax = -1) {
    const CatBasisParams cat = a_closed_form(s.family_spec(), s.amp);
    const BellDecomposition d = bell_coefficients(s, cat);

    CrossCheck out;
    out.c_closed = concurrence_closed(cat.p, s.phi);
    out.c_determinant = concurrence_from_decomposition(d);
    out.c_bell = concurrence_from_bell(d);
    out.e_closed = entanglement_from_concurrence(out.c_closed);

    if (nmax < 0) nmax = choose_nmax<Real>(s.family_spec(), s.amp, tail_tol / 2);
    const auto state = build_superposition<Real>(s, nmax, tail_tol);
    const ReducedState<Real> rho = reduced_state(state);
    const RVector<Real> ev = reduced_spectrum(rho);
    out.c_oracle = static_cast<double>(concurrence_oracle(rho));
    out.e_oracle = static_cast<double>(entropy_from_spectrum(ev));
    out.third_eigenvalue = ev.size() > 2 ? static_cast<double>(ev(2)) : 0.0;
    out.tail_mass = static_cast<double>(state.tail_mass);
    out.nmax = nmax;
    return out;
}

} // namespace gcsent::oracle
