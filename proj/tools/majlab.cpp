#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "majlab/linalg.hpp"
#include "majlab/matrix_io.hpp"
#include "majlab/ncpoly.hpp"
#include "majlab/rng.hpp"
#include "majlab/search.hpp"
#include "majlab/spectral.hpp"
#include "majlab/taylor.hpp"

namespace {

using namespace majlab;

constexpr double kMarginTol = -1e-9;    // inequality margins must stay above
constexpr double kResidualTol = 1e-10;  // identity residuals must stay below
constexpr double kFanHoffmanTol = -1e-10;
constexpr double kTraceTol = 1e-9;
constexpr double kEqualityTol = 1e-9;

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Aggregates the most adversarial value seen per named check.
class CheckSet {
  public:
    // value must stay >= tol
    void at_least(const std::string& name, double value, double tol) {
        Rec& r = fetch(name, true, tol);
        r.worst = std::min(r.worst, value);
    }
    // value must stay <= tol
    void at_most(const std::string& name, double value, double tol) {
        Rec& r = fetch(name, false, tol);
        r.worst = std::max(r.worst, value);
    }

    bool all_pass() const {
        for (const Rec& r : recs_)
            if (!passes(r)) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json checks = nlohmann::json::array();
        int pass = 0, fail = 0;
        for (const Rec& r : recs_) {
            const bool ok = passes(r);
            (ok ? pass : fail) += 1;
            checks.push_back({{"name", r.name},
                              {"status", ok ? "pass" : "fail"},
                              {"margin", r.worst},
                              {"tolerance", r.tol},
                              {"direction", r.lower ? "at_least" : "at_most"}});
        }
        return nlohmann::json{{"checks", checks},
                              {"totals", {{"pass", pass}, {"fail", fail}, {"inconclusive", 0}}}};
    }

    void print(std::ostream& os) const {
        for (const Rec& r : recs_) {
            os << (passes(r) ? "PASS " : "FAIL ") << r.name << "  worst=" << fmt_g(r.worst)
               << (r.lower ? "  needs >= " : "  needs <= ") << fmt_g(r.tol) << "\n";
        }
    }

  private:
    struct Rec {
        std::string name;
        bool lower;
        double tol;
        double worst;
    };

    static bool passes(const Rec& r) { return r.lower ? r.worst >= r.tol : r.worst <= r.tol; }

    Rec& fetch(const std::string& name, bool lower, double tol) {
        for (Rec& r : recs_)
            if (r.name == name) return r;
        recs_.push_back(Rec{name, lower, tol,
                            lower ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity()});
        return recs_.back();
    }

    std::vector<Rec> recs_;
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out << text;
}

void emit_run_report(const std::string& subcommand, const nlohmann::json& config,
                     const CheckSet& checks, const std::string& out_path) {
    if (out_path.empty()) return;
    nlohmann::json j = checks.to_json();
    j["schema"] = "rr-1";
    j["subcommand"] = subcommand;
    j["config"] = config;
    write_text_file(out_path, j.dump(2) + "\n");
}

void run_k_checks(CheckSet& checks, const HermitianMatrix& a, const HermitianMatrix& b, int k) {
    const std::string suffix = "_k" + std::to_string(k);
    const double residual = k == 3   ? d3_identity_residual(a, b)
                            : k == 4 ? d4_identity_residual(a, b)
                                     : d5_identity_residual(a, b);
    checks.at_most("identity_residual" + suffix, residual, kResidualTol);
    if (k > 4) return;

    const ComparisonMargins cm = comparison_margins(a, b, k);
    for (const MarginRow& row : cm.rows) {
        checks.at_least("prefix_margin" + suffix, row.margin, kMarginTol);
        checks.at_least("certificate" + suffix, row.certificate, kMarginTol);
    }
    if (k == 3) checks.at_most("trace_identity" + suffix, cm.trace_residual, kTraceTol);
    checks.at_least("sigma_margin" + suffix, sigma_comparison(a, b, k).margin, kMarginTol);
}

void run_shared_checks(CheckSet& checks, Rng& rng, const HermitianMatrix& a,
                       const HermitianMatrix& b, int dim) {
    // Fan-Hoffman on a fresh general matrix
    const ComplexMatrix y = rand_general(rng, dim);
    const Spectrum lam_re = hermitian_eig(re_part(y)).spectrum;
    const Spectrum sv = singular_values(y);
    for (int j = 0; j < dim; ++j)
        checks.at_least("fan_hoffman", sv[j] - lam_re[j], kFanHoffmanTol);

    checks.at_least("golden_thompson_log_margin", golden_thompson_check(a, b).margin, kMarginTol);

    // commuting pair: both exponential spectra must coincide
    const double c0 = rng.gaussian();
    const double c1 = rng.gaussian();
    const HermitianMatrix bc = c1 * a + c0 * HermitianMatrix::identity(dim);
    const Spectrum lam_sum = hermitian_eig(a + bc).spectrum;
    const HermitianMatrix ehalf = expm_hermitian(0.5 * bc);
    const Spectrum lam_prod =
        hermitian_eig(re_part(ehalf.matrix() * expm_hermitian(a).matrix() * ehalf.matrix()))
            .spectrum;
    for (int j = 0; j < dim; ++j) {
        const double expected = std::exp(lam_sum[j]);
        checks.at_most("golden_thompson_commuting_equality",
                       std::abs(expected - lam_prod[j]) / (1.0 + std::abs(expected)),
                       kEqualityTol);
    }

    // double-commutator positivity at a random rank
    const HermitianMatrix f = rand_hermitian(rng, dim);
    const HermitianMatrix x = rand_hermitian(rng, dim);
    const int r = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(dim));
    checks.at_least("double_commutator_positivity",
                    double_comm_trace(top_projection(f, r), x, f), kMarginTol);
}

int run_verify(const std::string& kmode, const std::vector<int>& dims, int trials,
               std::uint64_t seed, const std::string& out, bool quiet) {
    CheckSet checks;
    std::uint64_t counter = 0;
    for (int dim : dims) {
        for (int t = 0; t < trials; ++t) {
            Rng rng(derive_stream(seed, counter++));
            const HermitianMatrix a = rand_hermitian(rng, dim);
            const HermitianMatrix b = rand_hermitian(rng, dim);
            if (kmode == "3" || kmode == "all") run_k_checks(checks, a, b, 3);
            if (kmode == "4" || kmode == "all") run_k_checks(checks, a, b, 4);
            if (kmode == "all") run_k_checks(checks, a, b, 5);
            run_shared_checks(checks, rng, a, b, dim);
        }
    }
    if (!quiet) checks.print(std::cout);
    emit_run_report("verify", {{"k", kmode}, {"dims", dims}, {"trials", trials}, {"seed", seed}},
                    checks, out);
    return checks.all_pass() ? 0 : 1;
}

int run_prove(int k, const std::string& out, bool quiet) {
    const IdentityCheck chk =
        k == 3 ? verify_identity_k3() : k == 4 ? verify_identity_k4() : verify_identity_k5();
    const std::string kk = std::to_string(k);
    if (!quiet || !chk.ok) {
        std::cout << "Q_" << kk << " = " << nc_to_string(nc_Qk(k)) << "\n";
        std::cout << "R_" << kk << " = " << nc_to_string(nc_Rk(k)) << "\n";
        std::cout << "D_" << kk << " = " << nc_to_string(nc_Dk(k)) << "\n";
        std::cout << "D_" << kk << " in H,X = " << nc_to_string(chk.lhs) << "\n";
        std::cout << "closed form = " << nc_to_string(chk.rhs) << "\n";
        std::cout << "diff = " << nc_to_string(chk.diff) << "\n";
    }
    CheckSet checks;
    checks.at_most("identity_k" + kk + "_word_diff", static_cast<double>(chk.diff.term_count()),
                   0.0);
    emit_run_report("prove", {{"k", k}}, checks, out);
    return chk.ok ? 0 : 1;
}

int run_hunt(const SearchConfig& cfg, const std::string& out, const std::string& trace_path,
             bool quiet) {
    std::vector<TraceRow> trace;
    const ViolationReport rep = hunt(cfg, trace_path.empty() ? nullptr : &trace);
    if (!quiet) {
        std::cout << "ensemble=" << to_string(cfg.ensemble) << " k=" << cfg.k << " dim=" << cfg.dim
                  << " restarts=" << cfg.num_restarts << " steps=" << cfg.steps_per_restart
                  << "\n";
        std::cout << "best_margin=" << fmt_g(rep.best_margin) << " best_restart="
                  << rep.best_restart << (rep.inconclusive ? " (inconclusive)" : "") << "\n";
        std::cout << "wall_seconds=" << fmt_g(rep.wall_seconds) << "\n";
    }
    if (!out.empty()) save_report(rep, out);
    if (!trace_path.empty()) {
        std::string csv = "restart,step,objective\n";
        char buf[64];
        for (const TraceRow& row : trace) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", row.restart, row.step, row.objective);
            csv += buf;
        }
        write_text_file(trace_path, csv);
    }
    return 0;
}

int run_trotter(double t, int nmax, int dim, bool commuting, std::uint64_t seed,
                const std::string& out, bool quiet) {
    Rng rng(derive_stream(seed, 0));
    HermitianMatrix a = rand_hermitian(rng, dim);
    HermitianMatrix b = HermitianMatrix::zero(dim);
    if (commuting) {
        const double c1 = rng.gaussian();
        const double c0 = rng.gaussian();
        b = c1 * a + c0 * HermitianMatrix::identity(dim);
        // Joint rescale to unit operator norm; keeps the pair commuting and
        // the absolute roundoff floor below 1e-12 at every splitting count.
        const Spectrum s = hermitian_eig(a + b).spectrum;
        const double top = std::max(std::abs(s[0]), std::abs(s[s.size() - 1]));
        const double sc = 1.0 / std::max(1.0, top);
        a = sc * a;
        b = sc * b;
    } else {
        b = rand_hermitian(rng, dim);
    }

    std::vector<int> ns;
    std::vector<double> errs;
    for (int n = 1; n <= nmax; n *= 2) {
        ns.push_back(n);
        errs.push_back(trotter_error(a, b, t, n));
    }

    std::string csv = "n,error\n";
    char buf[64];
    for (std::size_t i = 0; i < ns.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", ns[i], errs[i]);
        csv += buf;
    }
    if (out.empty()) {
        std::cout << csv;
    } else {
        write_text_file(out, csv);
    }

    CheckSet checks;
    if (commuting) {
        for (double e : errs) checks.at_most("commuting_error_floor", e, 1e-12);
    }
    for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
        if (errs[i] <= 1e-12) continue;
        checks.at_most("monotone_decrease", errs[i + 1] - errs[i], 0.0);
        if (ns[i] >= 8) checks.at_most("halving_ratio", errs[i + 1] / errs[i], 0.6);
    }
    if (!quiet) checks.print(std::cout);
    return checks.all_pass() ? 0 : 1;
}

int run_reverify(const std::string& in_path, bool quiet) {
    ViolationReport rep;
    try {
        rep = load_report(in_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    const ReverifyResult res = reverify(rep);
    if (!quiet) {
        std::cout << "reported=" << fmt_g(rep.best_margin)
                  << " recomputed=" << fmt_g(res.margin_default)
                  << " tightened=" << fmt_g(res.margin_tight) << "\n";
        std::cout << (res.persists ? "persists" : "does not persist")
                  << (res.inconclusive ? " (inconclusive band)" : "") << "\n";
    }
    return res.persists ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-order toolkit for Taylor coefficients of matrix exponentials"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string out;
    bool quiet = false;
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--out", out, "output file (JSON report, or CSV for trotter)");
    app.add_flag("--quiet", quiet, "suppress human-readable output");

    auto* verify = app.add_subcommand("verify", "run randomized inequality and identity checks");
    verify->fallthrough();
    std::string verify_k = "all";
    std::vector<int> dims{2, 3, 4};
    int trials = 100;
    verify->add_option("--k", verify_k, "order to check: 3, 4 or all")
        ->check(CLI::IsMember({"3", "4", "all"}));
    verify->add_option("--dims", dims, "matrix dimensions, comma separated")
        ->delimiter(',')
        ->check(CLI::Range(1, 64));
    verify->add_option("--trials", trials, "random pairs per dimension")
        ->check(CLI::NonNegativeNumber);

    auto* prove = app.add_subcommand("prove", "expand one commutator identity over rationals");
    prove->fallthrough();
    int prove_k = 3;
    prove->add_option("--k", prove_k, "order: 3, 4 or 5")
        ->required()
        ->check(CLI::IsMember({3, 4, 5}));

    auto* hunt_cmd = app.add_subcommand("hunt", "search for weak-majorization counterexamples");
    hunt_cmd->fallthrough();
    SearchConfig cfg;
    std::string ensemble_name = "gaussian";
    std::string trace_path;
    hunt_cmd->add_option("--k", cfg.k, "comparison order")->check(CLI::Range(3, 64));
    hunt_cmd->add_option("--dim", cfg.dim, "matrix dimension")->check(CLI::Range(1, 64));
    hunt_cmd->add_option("--restarts", cfg.num_restarts, "random restarts")
        ->check(CLI::PositiveNumber);
    hunt_cmd->add_option("--steps", cfg.steps_per_restart, "descent steps per restart")
        ->check(CLI::PositiveNumber);
    hunt_cmd->add_option("--step-size", cfg.step_size, "initial descent step length")
        ->check(CLI::PositiveNumber);
    hunt_cmd->add_option("--ensemble", ensemble_name, "gaussian, rank_deficient, near_commuting")
        ->check(CLI::IsMember({"gaussian", "rank_deficient", "near_commuting"}));
    hunt_cmd->add_option("--trace", trace_path, "write per-step objective CSV here");

    auto* trotter = app.add_subcommand("trotter", "splitting-error sweep for e^{t(A+B)}");
    trotter->fallthrough();
    double t_val = 1.0;
    int nmax = 128;
    int trotter_dim = 4;
    bool commuting = false;
    trotter->add_option("--t", t_val, "time parameter");
    trotter->add_option("--nmax", nmax, "largest splitting count (powers of two up to this)")
        ->check(CLI::Range(2, 1 << 20));
    trotter->add_option("--dim", trotter_dim, "matrix dimension")->check(CLI::Range(1, 64));
    trotter->add_flag("--commuting", commuting, "draw a commuting pair instead of a generic one");

    auto* reverify_cmd = app.add_subcommand("reverify", "recheck a saved search report");
    reverify_cmd->fallthrough();
    std::string in_path;
    reverify_cmd->add_option("--in", in_path, "report JSON to recheck")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(verify_k, dims, trials, seed, out, quiet);
        if (prove->parsed()) return run_prove(prove_k, out, quiet);
        if (hunt_cmd->parsed()) {
            cfg.rng_seed = seed;
            cfg.ensemble = ensemble_from_string(ensemble_name);
            return run_hunt(cfg, out, trace_path, quiet);
        }
        if (trotter->parsed())
            return run_trotter(t_val, nmax, trotter_dim, commuting, seed, out, quiet);
        if (reverify_cmd->parsed()) return run_reverify(in_path, quiet);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
