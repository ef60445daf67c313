#include "gcsent/cli.hpp"

#include "gcsent/errors.hpp"
#include "gcsent/fock_oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

namespace gcsent::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

double parse_number(std::string_view text, std::string_view what) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw ArgumentError(fmt::format("cannot parse {} '{}'", what, text));
    }
    if (used != s.size()) throw ArgumentError(fmt::format("cannot parse {} '{}'", what, text));
    return v;
}

std::vector<double> parse_phase_list(const std::string &text) {
    std::vector<double> out;
    for (const auto &item : split_list(text)) out.push_back(parse_phase(item));
    if (out.empty()) throw ArgumentError("empty phase list");
    return out;
}

// Unknown names are argument errors, not domain errors.
template <typename F> auto parse_name(F &&parse, const std::string &text) {
    try {
        return parse(text);
    } catch (const DomainError &e) {
        throw ArgumentError(e.what());
    }
}

Family family_arg(const std::string &text) {
    return parse_name([](const std::string &t) { return parse_family(t); }, text);
}

Variant variant_arg(const std::string &text) {
    return parse_name([](const std::string &t) { return parse_variant(t); }, text);
}

ordered_json number(double v) { return round_to_printed(v); }

ordered_json extremum_json(const ExtremumReport &r) {
    ordered_json j;
    j["location"] = number(r.location);
    j["value"] = number(r.value);
    j["kind"] = r.kind == ExtremumKind::Max ? "MAX" : "MIN";
    j["bracket"] = {number(r.bracket_lo), number(r.bracket_hi)};
    j["residual"] = number(r.residual);
    return j;
}

void write_json_rows(std::ostream &out, std::span<const SweepRow> rows) {
    ordered_json arr = ordered_json::array();
    for (const SweepRow &r : rows) {
        ordered_json j;
        j["family"] = family_label(r);
        j["variant"] = std::string(to_string(r.variant));
        j["phi"] = number(r.phi);
        j["sweep_param"] = number(r.sweep_parameter);
        j["A"] = number(r.A);
        j["p"] = number(r.p);
        j["concurrence"] = number(r.concurrence);
        j["entanglement"] = number(r.entanglement);
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
}

void write_file(const std::filesystem::path &path, const std::function<void(std::ostream &)> &body) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
    body(f);
    f.flush();
    if (!f) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

// Options shared by the point commands.
struct PointOptions {
    std::string family;
    std::optional<double> beta;
    double beta_phase = 0.0;
    std::optional<double> q;
    std::optional<double> gamma;
    double gamma_phase = 0.0;
    std::string phi = "0";
    std::string variant = "aligned";

    void attach(CLI::App *cmd, bool family_required = true) {
        auto *f = cmd->add_option("--family", family, "cs, sv, ecs, ocs or ls");
        if (family_required) f->required();
        auto *b = cmd->add_option("--beta", beta, "|beta| (beta families)");
        cmd->add_option("--beta-phase", beta_phase, "arg(beta) in radians");
        auto *qo = cmd->add_option("--q", q, "real q, |q| < 1 (ls)");
        auto *g = cmd->add_option("--gamma", gamma, "|gamma| (ls)");
        cmd->add_option("--gamma-phase", gamma_phase, "arg(gamma) in radians");
        b->excludes(qo)->excludes(g);
        cmd->add_option("--phi", phi, "relative phase: radians, 'pi' or '0.5pi'");
        cmd->add_option("--variant", variant, "aligned or swapped");
    }

    [[nodiscard]] SuperpositionSpec spec() const {
        const Family f = family_arg(family);
        SuperpositionSpec s;
        s.family = f;
        s.phi = parse_phase(phi);
        s.variant = variant_arg(variant);
        if (f == Family::LS) {
            if (beta) throw ArgumentError("family ls takes --q and --gamma, not --beta");
            if (!q) throw ArgumentError("family ls requires --q");
            s.amp = Amplitude::logarithmic(*q, std::polar(gamma.value_or(0.0), gamma_phase));
        } else {
            if (q || gamma) throw ArgumentError(fmt::format("family {} takes --beta, not --q/--gamma", family));
            if (!beta) throw ArgumentError(fmt::format("family {} requires --beta", family));
            s.amp = Amplitude::beta(std::polar(*beta, beta_phase));
        }
        return s;
    }
};

ordered_json amplitude_json(const Amplitude &a) {
    ordered_json j;
    if (a.is_logarithmic()) {
        j["q"] = number(a.q());
        j["gamma"] = number(std::abs(a.gamma()));
        j["gamma_phase"] = number(std::arg(a.gamma()));
    } else {
        j["beta"] = number(std::abs(a.beta()));
        j["beta_phase"] = number(std::arg(a.beta()));
    }
    return j;
}

int cmd_compute(const PointOptions &opts, std::ostream &out) {
    const SuperpositionSpec s = opts.spec();
    const EntanglementReport r = analyze(s);
    ordered_json j;
    j["family"] = std::string(to_string(s.family));
    j["amplitude"] = amplitude_json(s.amp);
    j["phi"] = number(s.phi);
    j["variant"] = std::string(to_string(s.variant));
    j["A"] = number(r.A);
    j["p"] = number(r.p);
    j["N"] = number(r.norm);
    j["concurrence"] = number(r.concurrence);
    j["x"] = number(r.x);
    j["entanglement_bits"] = number(r.entanglement);
    out << j.dump(2) << '\n';
    return kOk;
}

struct SweepOptions {
    std::string axis = "amplitude";
    std::string families = "cs";
    std::string phis = "0.5pi";
    std::string gammas;
    double from = 0.0;
    double to = 3.0;
    int steps = kDefaultSweepSteps;
    std::string variant = "aligned";
    std::string out_path;
    std::string format = "csv";
};

std::vector<SweepRow> sweep_rows(const SweepOptions &o) {
    const std::vector<double> grid = linspace(o.from, o.to, o.steps);
    const std::vector<double> phis = parse_phase_list(o.phis);
    const Variant variant = variant_arg(o.variant);
    if (o.axis == "A") return sweep_concurrence_vs_A(phis, grid);
    if (o.axis != "amplitude") throw ArgumentError(fmt::format("unknown sweep axis '{}' (expected A or amplitude)", o.axis));

    std::vector<SweepRow> rows;
    for (double phi : phis) {
        for (const auto &name : split_list(o.families)) {
            const Family f = family_arg(name);
            std::vector<SweepRow> part;
            if (f == Family::LS) {
                std::vector<std::complex<double>> gammas;
                for (const auto &g : split_list(o.gammas)) gammas.emplace_back(parse_number(g, "gamma"));
                if (gammas.empty()) throw ArgumentError("family ls requires --gamma");
                part = sweep_ls(gammas, grid, phi, variant);
            } else {
                const Family one[] = {f};
                part = sweep_E_vs_amplitude(one, phi, grid, variant);
            }
            rows.insert(rows.end(), part.begin(), part.end());
        }
    }
    return rows;
}

int cmd_sweep(const SweepOptions &o, std::ostream &out) {
    if (o.format != "csv" && o.format != "json") throw ArgumentError(fmt::format("unknown format '{}'", o.format));
    const std::vector<SweepRow> rows = sweep_rows(o);
    auto emit = [&](std::ostream &os) {
        if (o.format == "csv")
            write_csv(os, rows);
        else
            write_json_rows(os, rows);
    };
    if (o.out_path.empty())
        emit(out);
    else
        write_file(o.out_path, emit);
    return kOk;
}

struct VerifyOptions {
    PointOptions point;
    std::string grid;
    double tail_tol = oracle::kOracleTailTol;
    std::string nmax = "auto";
};

int cmd_verify(const VerifyOptions &o, std::ostream &out) {
    std::vector<SuperpositionSpec> specs;
    if (!o.grid.empty()) {
        if (o.grid != "default") throw ArgumentError(fmt::format("unknown grid '{}' (expected default)", o.grid));
        if (!o.point.family.empty()) throw ArgumentError("--grid and --family are mutually exclusive");
        specs = default_verification_grid();
    } else {
        if (o.point.family.empty()) throw ArgumentError("verify needs --grid default or a --family point");
        specs.push_back(o.point.spec());
    }
    int nmax = -1;
    if (o.nmax != "auto") {
        nmax = static_cast<int>(parse_number(o.nmax, "nmax"));
        if (nmax < 0) throw ArgumentError("--nmax must be non-negative or 'auto'");
    }

    double dev_det = 0, dev_c = 0, dev_e = 0, third = 0, tail = 0;
    for (const SuperpositionSpec &s : specs) {
        const oracle::CrossCheck r = oracle::cross_check<double>(s, o.tail_tol, nmax);
        dev_det = std::max(dev_det, r.closed_vs_determinant());
        dev_c = std::max(dev_c, r.concurrence_vs_oracle());
        dev_e = std::max(dev_e, r.entropy_vs_oracle());
        third = std::max(third, r.third_eigenvalue);
        tail = std::max(tail, r.tail_mass);
    }

    struct Line {
        const char *name;
        double value;
        double tol;
    };
    const Line lines[] = {
        {"closed vs determinant concurrence", dev_det, kRouteAgreementTol},
        {"closed vs oracle concurrence", dev_c, 1e-8},
        {"closed vs oracle entropy", dev_e, 1e-8},
        {"third reduced eigenvalue", third, 1e-10},
    };
    bool ok = true;
    out << fmt::format("points: {}\n", specs.size());
    for (const Line &l : lines) {
        const bool pass = l.value < l.tol;
        ok = ok && pass;
        out << fmt::format("{:<36} max {:.3e}  tol {:.0e}  {}\n", l.name, l.value, l.tol, pass ? "PASS" : "FAIL");
    }
    out << fmt::format("{:<36} max {:.3e}\n", "truncation tail mass", tail);
    out << (ok ? "result: PASS\n" : "result: FAIL\n");
    return ok ? kOk : kVerificationFailed;
}

struct ExtremaCliOptions {
    std::string family;
    std::string phi = "0.5pi";
    std::optional<double> from;
    std::optional<double> to;
    double gamma = 0.0;
    int steps = kDefaultSweepSteps;
    std::string variant = "aligned";
};

int cmd_extrema(const ExtremaCliOptions &o, std::ostream &out) {
    AmplitudeAxis axis;
    axis.family = family_arg(o.family);
    axis.gamma = o.gamma;
    const bool ls = axis.family == Family::LS;
    ExtremaOptions opts;
    opts.scan_steps = o.steps;
    opts.variant = variant_arg(o.variant);
    const auto found = find_extrema_E(axis, parse_phase(o.phi), o.from.value_or(ls ? 0.01 : 0.5),
                                      o.to.value_or(ls ? 0.99 : 3.0), opts);
    ordered_json arr = ordered_json::array();
    for (const auto &r : found) arr.push_back(extremum_json(r));
    out << arr.dump(2) << '\n';
    return kOk;
}

} // namespace

double parse_phase(std::string_view text) {
    std::string s(text);
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        std::string factor = s.substr(0, s.size() - 2);
        if (!factor.empty() && factor.back() == '*') factor.pop_back();
        if (factor.empty() || factor == "+") return kPi;
        if (factor == "-") return -kPi;
        return parse_number(factor, "phase") * kPi;
    }
    return parse_number(s, "phase");
}

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

double round_to_printed(double v) {
    if (!std::isfinite(v)) return v;
    return std::stod(format_number(v));
}

std::string family_label(const SweepRow &row) {
    if (!row.family) return "any";
    if (*row.family == Family::LS) return fmt::format("ls[gamma={}]", format_number(std::abs(row.gamma.value_or(0.0))));
    return std::string(to_string(*row.family));
}

void write_csv(std::ostream &out, std::span<const SweepRow> rows) {
    out << kCsvHeader << '\n';
    for (const SweepRow &r : rows)
        out << family_label(r) << ',' << to_string(r.variant) << ',' << format_number(r.phi) << ','
            << format_number(r.sweep_parameter) << ',' << format_number(r.A) << ',' << format_number(r.p) << ','
            << format_number(r.concurrence) << ',' << format_number(r.entanglement) << '\n';
}

std::vector<std::filesystem::path> write_figure_presets(const std::filesystem::path &dir) {
    const std::vector<double> phis{0.0, 0.25 * kPi, 0.5 * kPi, 0.75 * kPi, kPi};
    const std::vector<double> a_grid = linspace(1.0, std::numbers::sqrt2, kDefaultSweepSteps);
    const std::vector<double> beta_grid = linspace(0.01, 3.0, kDefaultSweepSteps);
    const std::vector<double> q_grid = linspace(0.001, 0.999, kDefaultSweepSteps);
    const std::vector<Family> families{Family::CS, Family::ECS, Family::SV, Family::OCS};

    const auto fig1 = sweep_concurrence_vs_A(phis, a_grid);
    const auto fig2 = sweep_A_vs_amplitude(families, beta_grid, 0.5 * kPi);
    const auto fig3 = sweep_E_vs_amplitude(families, 0.5 * kPi, beta_grid);
    std::vector<SweepRow> fig4;
    for (auto [gamma, phi] : {std::pair{0.1, 0.5 * kPi}, std::pair{0.9, 0.5 * kPi}, std::pair{0.1, kPi}}) {
        const std::complex<double> g[] = {gamma};
        const auto part = sweep_ls(g, q_grid, phi);
        fig4.insert(fig4.end(), part.begin(), part.end());
    }

    std::vector<std::filesystem::path> written;
    const std::vector<SweepRow> *figs[] = {&fig1, &fig2, &fig3, &fig4};
    for (int i = 0; i < 4; ++i) {
        const auto path = dir / fmt::format("fig{}.csv", i + 1);
        write_file(path, [&](std::ostream &os) { write_csv(os, *figs[i]); });
        written.push_back(path);
    }
    return written;
}

int run(std::span<const std::string> args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Closed-form and oracle entanglement of bipartite generalized coherent states", "gcsent"};
    app.require_subcommand(1);

    PointOptions compute_opts;
    auto *compute = app.add_subcommand("compute", "concurrence and entanglement of one superposition");
    compute_opts.attach(compute);

    SweepOptions sweep_opts;
    auto *sweep = app.add_subcommand("sweep", "sweep over A, |beta| or |q| and emit CSV/JSON rows");
    sweep->add_option("--axis", sweep_opts.axis, "A or amplitude");
    sweep->add_option("--family", sweep_opts.families, "comma-separated families");
    sweep->add_option("--phi", sweep_opts.phis, "comma-separated phases");
    sweep->add_option("--gamma", sweep_opts.gammas, "comma-separated |gamma| values (ls)");
    sweep->add_option("--from", sweep_opts.from, "grid start");
    sweep->add_option("--to", sweep_opts.to, "grid end");
    sweep->add_option("--steps", sweep_opts.steps, "grid points")->check(CLI::PositiveNumber);
    sweep->add_option("--variant", sweep_opts.variant, "aligned or swapped");
    sweep->add_option("--out", sweep_opts.out_path, "output file (default stdout)");
    sweep->add_option("--format", sweep_opts.format, "csv or json");

    std::string figures_dir;
    auto *figures = app.add_subcommand("figures", "write the fig1..fig4 preset CSV files");
    figures->add_option("--out-dir", figures_dir, fmt::format("output directory (default ${} or .)", kOutputDirEnv));

    VerifyOptions verify_opts;
    auto *verify = app.add_subcommand("verify", "compare closed form, determinant and Fock-space oracle");
    verify_opts.point.attach(verify, false);
    verify->add_option("--grid", verify_opts.grid, "'default' for the built-in grid");
    verify->add_option("--tail-tol", verify_opts.tail_tol, "oracle truncation tail tolerance");
    verify->add_option("--nmax", verify_opts.nmax, "photon cutoff per mode or 'auto'");

    ExtremaCliOptions extrema_opts;
    auto *extrema = app.add_subcommand("extrema", "locate maxima and minima of E along |beta| or |q|");
    extrema->add_option("--family", extrema_opts.family, "family")->required();
    extrema->add_option("--phi", extrema_opts.phi, "relative phase");
    extrema->add_option("--from", extrema_opts.from, "range start");
    extrema->add_option("--to", extrema_opts.to, "range end");
    extrema->add_option("--gamma", extrema_opts.gamma, "|gamma| (ls)");
    extrema->add_option("--steps", extrema_opts.steps, "scan points")->check(CLI::Range(2, 1000000));
    extrema->add_option("--variant", extrema_opts.variant, "aligned or swapped");

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidArguments;
    }

    try {
        if (compute->parsed()) return cmd_compute(compute_opts, out);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, out);
        if (figures->parsed()) {
            std::filesystem::path dir = figures_dir;
            if (dir.empty()) {
                const char *env = std::getenv(kOutputDirEnv);
                dir = (env && *env) ? env : ".";
            }
            for (const auto &p : write_figure_presets(dir)) out << p.string() << '\n';
            return kOk;
        }
        if (verify->parsed()) return cmd_verify(verify_opts, out);
        if (extrema->parsed()) return cmd_extrema(extrema_opts, out);
    } catch (const ArgumentError &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidArguments;
    } catch (const DomainError &e) {
        err << "domain error: " << e.what() << '\n';
        return kDomainError;
    } catch (const TruncationError &e) {
        err << "truncation failure: " << e.what() << '\n';
        return kTruncationFailure;
    } catch (const DegenerateStateError &e) {
        err << "null state: " << e.what() << '\n';
        return kNullState;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
    return kInternalError;
}

} // namespace gcsent::cli
