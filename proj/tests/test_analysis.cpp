#include "gcsent/analysis.hpp"
#include "gcsent/errors.hpp"

#include "reference.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

using namespace gcsent;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

const std::vector<Family> kBetaFamilies{Family::CS, Family::SV, Family::ECS, Family::OCS};

std::vector<SweepRow> rows_of(const std::vector<SweepRow> &rows, Family f) {
    std::vector<SweepRow> out;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [&](const SweepRow &r) { return r.family == f; });
    return out;
}

} // namespace

TEST_CASE("linspace", "[analysis]") {
    const auto g = linspace(1.0, 2.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 1.0);
    CHECK(g[2] == 1.5);
    CHECK(g.back() == 2.0);
    CHECK(linspace(0.3, 9.0, 1) == std::vector<double>{0.3});
    CHECK_THROWS_AS(linspace(0.0, 1.0, 0), DomainError);
}

TEST_CASE("concurrence versus A", "[analysis]") {
    const std::vector<double> phis{0.0, pi / 4, pi / 2, 3 * pi / 4, pi};
    const auto grid = linspace(1.0, sqrt2, kDefaultSweepSteps);
    const auto rows = sweep_concurrence_vs_A(phis, grid);
    REQUIRE(rows.size() == phis.size() * grid.size());

    SECTION("endpoints") {
        CHECK(rows.front().concurrence == 0.0); // phi = 0, A = 1
        CHECK_THAT(rows[grid.size() - 1].concurrence, WithinAbs(1.0, 1e-15)); // phi = 0, A = sqrt 2
        for (std::size_t i = 4 * grid.size(); i < rows.size(); ++i) CHECK(rows[i].concurrence == 1.0);
    }
    SECTION("curves are ordered by phi, lowest at 0") {
        for (std::size_t j = 1; j + 1 < grid.size(); ++j)
            for (std::size_t i = 0; i + 1 < phis.size(); ++i)
                CHECK(rows[i * grid.size() + j].concurrence < rows[(i + 1) * grid.size() + j].concurrence);
    }
    SECTION("rows carry no family") {
        CHECK_FALSE(rows.front().family.has_value());
        CHECK(rows.front().sweep_parameter == rows.front().A);
    }
    const std::vector<double> bad{0.9};
    CHECK_THROWS_AS(sweep_concurrence_vs_A(phis, bad), DomainError);
}

TEST_CASE("entanglement versus |beta| at phi = pi/2", "[analysis]") {
    const auto grid = linspace(0.01, 3.0, kDefaultSweepSteps);
    const auto rows = sweep_E_vs_amplitude(kBetaFamilies, pi / 2, grid);
    REQUIRE(rows.size() == 4 * grid.size());

    auto first_above = [&](Family f, double level) {
        for (const auto &r : rows_of(rows, f))
            if (r.entanglement > level) return r.sweep_parameter;
        return 1e9;
    };
    SECTION("CS reaches 0.99 bits before OCS") { CHECK(first_above(Family::CS, 0.99) < first_above(Family::OCS, 0.99)); }

    SECTION("ECS dips after its first maximum") {
        const auto ecs = rows_of(rows, Family::ECS);
        bool rising = false, dipped = false;
        for (std::size_t i = 1; i < ecs.size(); ++i) {
            if (ecs[i].entanglement > ecs[i - 1].entanglement) rising = true;
            if (rising && ecs[i].entanglement < ecs[i - 1].entanglement - 1e-6) dipped = true;
        }
        CHECK(dipped);
    }
    SECTION("CS is monotone") {
        const auto cs = rows_of(rows, Family::CS);
        for (std::size_t i = 1; i < cs.size(); ++i) CHECK(cs[i].entanglement >= cs[i - 1].entanglement);
    }
    const std::vector<Family> ls{Family::LS};
    CHECK_THROWS_AS(sweep_E_vs_amplitude(ls, pi / 2, grid), DomainError);
}

TEST_CASE("ECS at |beta| = sqrt(pi/2) carries one ebit", "[analysis]") {
    const std::vector<Family> ecs{Family::ECS};
    const std::vector<double> at{std::sqrt(pi / 2)};
    const auto rows = sweep_E_vs_amplitude(ecs, pi / 2, at);
    CHECK_THAT(rows[0].p, WithinAbs(0.0, 1e-15));
    CHECK_THAT(rows[0].entanglement, WithinAbs(1.0, 1e-12));
}

TEST_CASE("A approaches sqrt 2 at large amplitude", "[analysis]") {
    const std::vector<double> at{6.0};
    for (const auto &r : sweep_A_vs_amplitude(kBetaFamilies, at)) CHECK_THAT(r.A, WithinAbs(sqrt2, 1e-6));
    const std::vector<double> small{0.0};
    const std::vector<Family> even{Family::CS, Family::SV, Family::ECS};
    for (const auto &r : sweep_A_vs_amplitude(even, small)) CHECK(r.A == 1.0);
}

TEST_CASE("sweep rows re-validate through analyze", "[analysis][property]") {
    const auto grid = linspace(0.05, 2.5, 37);
    for (Variant v : {Variant::Aligned, Variant::Swapped}) {
        const auto rows = sweep_E_vs_amplitude(kBetaFamilies, 0.7, grid, v);
        const auto again = sweep_E_vs_amplitude(kBetaFamilies, 0.7, grid, v);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto r = analyze({*rows[i].family, Amplitude::beta(rows[i].sweep_parameter), rows[i].phi, v});
            CHECK(r.concurrence == rows[i].concurrence);
            CHECK(r.entanglement == rows[i].entanglement);
            CHECK(again[i].entanglement == rows[i].entanglement);
            CHECK(rows[i].variant == v);
        }
    }
}

TEST_CASE("logarithmic-state sweeps", "[analysis]") {
    const auto q = linspace(0.001, 0.999, kDefaultSweepSteps);

    SECTION("phi = pi is flat at one ebit") {
        const std::vector<std::complex<double>> g{0.1};
        for (const auto &r : sweep_ls(g, q, pi)) CHECK(r.entanglement == 1.0);
    }
    SECTION("gamma = 0.9 rises monotonically without a peak") {
        const std::vector<std::complex<double>> g{0.9};
        const auto rows = sweep_ls(g, q, pi / 2);
        for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].entanglement > rows[i - 1].entanglement);
        CHECK(rows.back().entanglement > 0.5);
        CHECK(rows.front().gamma == std::complex<double>(0.9));
    }
    SECTION("gamma = 0.1 peaks where ls_peak_q says") {
        const std::vector<std::complex<double>> g{0.1};
        const auto rows = sweep_ls(g, q, pi / 2);
        const auto best = std::max_element(rows.begin(), rows.end(), [](const SweepRow &a, const SweepRow &b) {
            return a.entanglement < b.entanglement;
        });
        REQUIRE(best != rows.begin());
        REQUIRE(best + 1 != rows.end());
        CHECK_THAT(best->sweep_parameter, WithinAbs(*ls_peak_q(0.1), q[1] - q[0]));
    }
    const std::vector<std::complex<double>> g{0.1};
    const std::vector<double> bad{1.0};
    CHECK_THROWS_AS(sweep_ls(g, bad, 0.0), DomainError);
}

TEST_CASE("ls_peak_q", "[analysis]") {
    // sqrt(e^0.01 - 1), 40-digit value
    CHECK_THAT(*ls_peak_q(0.1), WithinAbs(0.1002505216154413, 1e-15));
    CHECK_THAT(*ls_peak_q({0.0, 0.1}), WithinAbs(0.1002505216154413, 1e-15));
    CHECK_FALSE(ls_peak_q(0.9).has_value());
    // the boundary sits at sqrt(ln 2) = 0.8325546...
    CHECK_THAT(*ls_peak_q(0.832554), WithinAbs(1.0, 1e-5));
    CHECK_FALSE(ls_peak_q(0.832556).has_value());
    CHECK_THAT(ls_gamma_limit(), WithinAbs(0.832555, 1e-6));
}

TEST_CASE("ls_peak_q matches the grid argmax for |gamma| below the limit", "[analysis][property]") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> gdist(0.02, 0.8);
    const auto q = linspace(0.001, 0.999, kDefaultSweepSteps);
    const double h = q[1] - q[0];
    for (int i = 0; i < 25; ++i) {
        const std::vector<std::complex<double>> g{gdist(rng)};
        const auto rows = sweep_ls(g, q, pi / 2);
        const auto best = std::max_element(rows.begin(), rows.end(), [](const SweepRow &a, const SweepRow &b) {
            return a.entanglement < b.entanglement;
        });
        const double peak = *ls_peak_q(g[0]);
        if (peak > q.back() - h) continue; // peak past the last grid point
        CHECK_THAT(best->sweep_parameter, WithinAbs(peak, h));
    }
}

TEST_CASE("ECS extrema at phi = pi/2", "[analysis]") {
    const auto found = find_extrema_E({Family::ECS}, pi / 2, 0.5, 3.0);
    REQUIRE(found.size() >= 2);
    CHECK(found[0].kind == ExtremumKind::Max);
    CHECK_THAT(found[0].location, WithinAbs(std::sqrt(pi / 2), 1e-8));
    CHECK_THAT(found[0].value, WithinAbs(1.0, 1e-12));
    CHECK(found[1].kind == ExtremumKind::Min);
    // root of tan x = -tanh x, x = 2.365020372431352
    CHECK_THAT(found[1].location, WithinAbs(1.537862273557470, 1e-8));
    CHECK(found[1].value < 0.99);
    for (const auto &r : found) {
        CHECK(r.bracket_lo <= r.location);
        CHECK(r.location <= r.bracket_hi);
        CHECK(r.residual < 1e-6);
    }
}

TEST_CASE("ECS extrema satisfy their analytic conditions", "[analysis][property]") {
    // Past |beta| ~ 2.5 the oscillation in E is below 1e-7 and double-precision E no longer
    // pins the locations to 1e-8; the first two pairs are well conditioned.
    const auto found = find_extrema_E({Family::ECS}, pi / 2, 0.5, 2.5);
    REQUIRE(found.size() == 4);
    const double min_x = reference::ecs_first_min_x();
    CHECK_THAT(min_x, WithinAbs(2.365020372431352, 1e-12));
    // Maxima at cos x = 0, minima at tan x = -tanh x (x = |beta|^2), each root found independently.
    for (const auto &r : found) {
        const double x = r.location * r.location;
        const double n = std::floor(x / pi);
        double root = 0;
        if (r.kind == ExtremumKind::Max) {
            root = (n + 0.5) * pi;
        } else {
            root = reference::bisect([](double t) { return std::sin(t) * std::cosh(t) + std::cos(t) * std::sinh(t); },
                                     (n + 0.5) * pi + 1e-9, (n + 1) * pi - 1e-9);
        }
        CHECK_THAT(r.location, WithinAbs(std::sqrt(root), 1e-8));
    }
    // Extrema alternate, and the variant does not move them.
    for (std::size_t i = 1; i < found.size(); ++i) CHECK(found[i].kind != found[i - 1].kind);
    ExtremaOptions swapped;
    swapped.variant = Variant::Swapped;
    const auto again = find_extrema_E({Family::ECS}, pi / 2, 0.5, 2.5, swapped);
    REQUIRE(again.size() == found.size());
    for (std::size_t i = 0; i < found.size(); ++i) CHECK_THAT(again[i].location, WithinAbs(found[i].location, 1e-9));
}

TEST_CASE("monotone curves have no extrema", "[analysis]") {
    CHECK(find_extrema_E({Family::CS}, pi / 2, 0.1, 4.0).empty());
    CHECK(find_extrema_E({Family::SV}, pi / 2, 0.1, 3.0).empty());
    CHECK(find_extrema_E({Family::LS, 0.9}, pi / 2, 0.01, 0.99).empty());
    CHECK_THROWS_AS(find_extrema_E({Family::CS}, pi / 2, 2.0, 1.0), DomainError);
}

TEST_CASE("logarithmic-state peak from the extremum search", "[analysis]") {
    const auto found = find_extrema_E({Family::LS, 0.1}, pi / 2, 0.01, 0.99);
    REQUIRE_FALSE(found.empty());
    CHECK(found[0].kind == ExtremumKind::Max);
    CHECK_THAT(found[0].location, WithinAbs(0.1002505216154413, 1e-8));
}

TEST_CASE("default verification grid", "[analysis]") {
    const auto grid = default_verification_grid();
    CHECK(grid.size() == 310);
    std::map<Family, int> per_family;
    for (const auto &s : grid) ++per_family[s.family];
    CHECK(per_family[Family::SV] == 40);
    CHECK(per_family[Family::CS] == 50);
    CHECK(per_family[Family::LS] == 120);
}
