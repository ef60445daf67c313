#include "gcsent/errors.hpp"
#include "gcsent/fock_oracle.hpp"

#include "reference.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace gcsent;
using namespace gcsent::oracle;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

SuperpositionSpec spec(Family f, double beta, double phi, Variant v = Variant::Aligned) {
    return {f, Amplitude::beta(beta), phi, v};
}

} // namespace

TEST_CASE("single-mode vectors live on the family ladder", "[fock_oracle]") {
    const auto cs = build_single_mode<double>(family_spec(Family::CS), Amplitude::beta(1.0), 40);
    CHECK_THAT(cs.photon_amplitude(0).real(), WithinRel(std::exp(-0.5), 1e-14));
    CHECK_THAT(cs.photon_amplitude(3).real(), WithinRel(std::exp(-0.5) / std::sqrt(6.0), 1e-14));
    CHECK(cs.photon_amplitude(41) == std::complex<double>{});

    const auto ocs = build_single_mode<double>(family_spec(Family::OCS), Amplitude::beta(1.0), 41);
    for (int n = 0; n <= 41; n += 2) CHECK(ocs.photon_amplitude(n) == std::complex<double>{});
    CHECK_THAT(ocs.photon_amplitude(1).real(), WithinRel(1.0 / std::sqrt(std::sinh(1.0)), 1e-14));

    const auto sv = build_single_mode<double>(family_spec(Family::SV), Amplitude::beta(0.8), 200);
    for (int n = 1; n <= 199; n += 2) CHECK(sv.photon_amplitude(n) == std::complex<double>{});

    // LS: gamma on the vacuum, q^n / sqrt(n) above it
    const auto ls = build_single_mode<double>(family_spec(Family::LS), Amplitude::logarithmic(0.5, {0.0, 1.0}), 80);
    const double d = 1.0 - std::log(0.75);
    CHECK_THAT(ls.photon_amplitude(0).imag(), WithinRel(1.0 / std::sqrt(d), 1e-14));
    CHECK_THAT(ls.photon_amplitude(2).real(), WithinRel(0.25 / std::sqrt(2.0 * d), 1e-14));
}

TEST_CASE("recurrence coefficients match the log-domain weights", "[fock_oracle][property]") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> mag(0.05, 2.5);
    for (int i = 0; i < 40; ++i) {
        for (Family f : {Family::CS, Family::SV, Family::ECS, Family::OCS, Family::LS}) {
            const Amplitude amp = f == Family::LS ? Amplitude::logarithmic(mag(rng) / 2.6, mag(rng) / 2)
                                                  : Amplitude::beta(mag(rng));
            const FamilySpec fs = family_spec(f);
            const auto c = detail::raw_coefficients<double>(fs, amp, 60);
            for (int n = 0; n < 60; ++n) {
                const double w = std::exp(term_log_weight(fs, amp, static_cast<std::size_t>(n)));
                if (w < 1e-250) continue;
                CHECK_THAT(std::norm(c(n)), WithinRel(w, 1e-11));
            }
        }
    }
}

TEST_CASE("truncation beyond tolerance is an error, never silent", "[fock_oracle]") {
    const FamilySpec cs = family_spec(Family::CS);
    CHECK_THROWS_AS(build_single_mode<double>(cs, Amplitude::beta(2.0), 4), TruncationError);
    try {
        (void)build_single_mode<double>(cs, Amplitude::beta(2.0), 4);
    } catch (const TruncationError &e) {
        CHECK(e.tail_mass() > 0.3);
        CHECK(std::string(e.what()).find("nmax") != std::string::npos);
    }
    CHECK_THROWS_AS(build_superposition<double>(spec(Family::CS, 2.0, 0.0), 4), TruncationError);
    CHECK_THROWS_AS(build_single_mode<double>(family_spec(Family::OCS), Amplitude::beta(1.0), 0), DomainError);
    CHECK_THROWS_AS(choose_nmax<double>(family_spec(Family::SV), Amplitude::beta(2.0)), TruncationError);
    CHECK_THROWS_AS(choose_nmax<double>(family_spec(Family::LS), Amplitude::logarithmic(0.999, 0.1), 1e-12, 200),
                    TruncationError);
}

TEST_CASE("choose_nmax picks a cutoff meeting the tail tolerance", "[fock_oracle]") {
    for (Family f : {Family::CS, Family::SV, Family::ECS, Family::OCS}) {
        const FamilySpec fs = family_spec(f);
        const int nmax = choose_nmax<double>(fs, Amplitude::beta(1.5));
        CHECK((nmax - fs.m) % fs.k == 0);
        CHECK(build_single_mode<double>(fs, Amplitude::beta(1.5), nmax).tail_mass <= kOracleTailTol);
        CHECK(nmax <= kMaxPhotonCutoff);
    }
    CHECK(choose_nmax<double>(family_spec(Family::CS), Amplitude::beta(0.3)) == 15);
}

TEST_CASE("overlap oracle reproduces the closed-form parity overlap", "[fock_oracle][property]") {
    std::mt19937 rng(22);
    // SV past |beta| ~ 1.75 needs more than kMaxPhotonCutoff photons for a 1e-12 tail
    std::uniform_real_distribution<double> mag(0.05, 1.7);
    std::uniform_real_distribution<double> qd(0.05, 0.9);
    for (int i = 0; i < 30; ++i) {
        for (Family f : {Family::CS, Family::SV, Family::ECS, Family::OCS, Family::LS}) {
            const FamilySpec fs = family_spec(f);
            const Amplitude amp = f == Family::LS ? Amplitude::logarithmic(qd(rng), mag(rng)) : Amplitude::beta(mag(rng));
            const int nmax = choose_nmax<double>(fs, amp);
            CHECK_THAT(overlap_oracle<double>(fs, amp, nmax), WithinAbs(a_closed_form(fs, amp).p, 1e-11));
        }
    }
}

TEST_CASE("superposition norm before renormalization", "[fock_oracle]") {
    const auto st = build_superposition<double>(spec(Family::CS, 1.0, pi));
    // 2 (1 - e^-4) at 40 digits
    CHECK_THAT(st.norm2_before, WithinRel(1.963368722222532, 1e-11));
    CHECK_THAT(st.amplitudes.squaredNorm(), WithinAbs(1.0, 1e-14));
    CHECK_THROWS_AS(build_superposition<double>(spec(Family::ECS, 0.0, pi), 10), DegenerateStateError);
}

TEST_CASE("product and Bell-like limits", "[fock_oracle]") {
    SECTION("amplitude zero is a product state") {
        const auto st = build_superposition<double>(spec(Family::CS, 0.0, 0.3), 8);
        CHECK_THAT(entanglement_entropy(st), WithinAbs(0.0, 1e-14));
        CHECK_THAT(concurrence_oracle(st), WithinAbs(0.0, 1e-7));
    }
    SECTION("phi = pi gives one ebit") {
        for (Family f : {Family::CS, Family::SV, Family::ECS, Family::OCS}) {
            const auto st = build_superposition<double>(spec(f, 1.0, pi));
            CHECK_THAT(entanglement_entropy(st), WithinAbs(1.0, 1e-10));
            CHECK_THAT(concurrence_oracle(st), WithinAbs(1.0, 1e-10));
        }
    }
}

TEST_CASE("cross checks at known points", "[fock_oracle]") {
    SECTION("squeezed vacuum, |beta| = 1.2, phi = 0.8") {
        const auto cc = cross_check(spec(Family::SV, 1.2, 0.8));
        CHECK_THAT(cc.c_oracle, WithinAbs(0.8238452612761668, 1e-10));
        CHECK_THAT(cc.e_oracle, WithinAbs(0.7538967284332582, 1e-10));
        CHECK(cc.third_eigenvalue < 1e-12);
    }
    SECTION("coherent state, |beta| = 1, phi = pi/2") {
        const auto cc = cross_check(spec(Family::CS, 1.0, pi / 2, Variant::Swapped));
        CHECK_THAT(cc.c_oracle, WithinAbs(0.9816843611112658, 1e-10));
        CHECK_THAT(cc.e_oracle, WithinAbs(0.9736573763373619, 1e-10));
    }
}

TEST_CASE("extended precision instantiation agrees", "[fock_oracle]") {
    const auto s = spec(Family::ECS, 1.5, 1.1);
    const auto d = cross_check<double>(s);
    const auto l = cross_check<long double>(s);
    CHECK_THAT(l.e_oracle, WithinAbs(d.e_oracle, 1e-12));
    CHECK_THAT(l.e_oracle, WithinAbs(l.e_closed, 1e-12));
}

TEST_CASE("an unnormalized state is rejected by the density-matrix check", "[fock_oracle]") {
    auto st = build_superposition<double>(spec(Family::CS, 1.0, 0.2));
    st.amplitudes *= 1.001;
    CHECK_THROWS_AS(reduced_state(st), NumericalError);
    CHECK_THROWS_AS(entanglement_entropy(st), NumericalError);
}

TEST_CASE("reduced state has rank at most two and matches the closed form", "[fock_oracle][property]") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> mag(0.05, 1.7);
    std::uniform_real_distribution<double> phase(-pi, pi);
    std::uniform_real_distribution<double> qd(0.05, 0.9);
    std::bernoulli_distribution coin;
    for (int i = 0; i < 20; ++i) {
        for (Family f : {Family::CS, Family::SV, Family::ECS, Family::OCS, Family::LS}) {
            const Amplitude amp = f == Family::LS ? Amplitude::logarithmic(qd(rng), std::polar(mag(rng) / 2, phase(rng)))
                                                  : Amplitude::beta(std::polar(mag(rng), phase(rng)));
            const SuperpositionSpec s{f, amp, phase(rng), coin(rng) ? Variant::Aligned : Variant::Swapped};
            const auto cc = cross_check(s);
            CHECK(cc.third_eigenvalue < 1e-10);
            CHECK(cc.tail_mass < 1e-11);
            CHECK_THAT(cc.e_oracle, WithinAbs(cc.e_closed, 1e-8));
            CHECK_THAT(cc.c_oracle, WithinAbs(cc.c_closed, 1e-8));
            CHECK_THAT(cc.c_bell, WithinAbs(cc.c_closed, 1e-10));
        }
    }
}
