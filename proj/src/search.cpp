#include "majlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include "majlab/matrix_io.hpp"
#include "majlab/rng.hpp"
#include "majlab/spectral.hpp"

namespace majlab {

std::string to_string(Ensemble e) {
    switch (e) {
        case Ensemble::gaussian: return "gaussian";
        case Ensemble::rank_deficient: return "rank_deficient";
        case Ensemble::near_commuting: return "near_commuting";
    }
    throw std::logic_error("unreachable ensemble");
}

Ensemble ensemble_from_string(const std::string& s) {
    if (s == "gaussian") return Ensemble::gaussian;
    if (s == "rank_deficient") return Ensemble::rank_deficient;
    if (s == "near_commuting") return Ensemble::near_commuting;
    throw std::invalid_argument("unknown ensemble: " + s);
}

void SearchConfig::validate() const {
    if (k < 3) throw std::invalid_argument("search order k must be >= 3");
    if (dim < 1) throw std::invalid_argument("dim must be positive");
    if (num_restarts < 1) throw std::invalid_argument("num_restarts must be positive");
    if (steps_per_restart < 1) throw std::invalid_argument("steps_per_restart must be positive");
    if (!(step_size > 0.0)) throw std::invalid_argument("step_size must be positive");
}

namespace {

double int_pow(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

// Sorted k-th powers of the (sorted) eigenvalues of H. Odd powers preserve
// the order; even powers need a re-sort.
std::vector<double> power_spectrum(const Spectrum& lam_h, int k) {
    std::vector<double> out(lam_h.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = int_pow(lam_h[static_cast<int>(i)], k);
    if (k % 2 == 0) std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

std::vector<double> prefix_gaps(const Spectrum& upper, const std::vector<double>& lower) {
    std::vector<double> rows(lower.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        acc += upper[static_cast<int>(i)] - lower[i];
        rows[i] = acc;
    }
    return rows;
}

} // namespace

std::vector<double> prefix_margins(const HermitianMatrix& a, const HermitianMatrix& b, int k,
                                   const Tolerances& tol) {
    const HermitianMatrix h = a + b;
    const std::vector<double> hk = power_spectrum(hermitian_eig(h, tol).spectrum, k);
    const Spectrum lam_r = hermitian_eig(re_part(compute_Qk(a, b, k)), tol).spectrum;
    return prefix_gaps(lam_r, hk);
}

double margin_objective(const HermitianMatrix& a, const HermitianMatrix& b, int k,
                        const Tolerances& tol) {
    const std::vector<double> rows = prefix_margins(a, b, k, tol);
    return *std::min_element(rows.begin(), rows.end());
}

namespace {

int param_count(int n) { return 2 * n * n; }

// One Hermitian matrix occupies n*n reals: n diagonal entries, then the
// strict upper triangle row by row as (re, im) pairs.
HermitianMatrix params_to_matrix(const double* p, int n) {
    ComplexMatrix m(n);
    int idx = 0;
    for (int i = 0; i < n; ++i) m(i, i) = cx(p[idx++], 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double re = p[idx++];
            const double im = p[idx++];
            m(i, j) = cx(re, im);
            m(j, i) = cx(re, -im);
        }
    return re_part(m);
}

void matrix_to_params(const HermitianMatrix& h, double* p) {
    const int n = h.dim();
    int idx = 0;
    for (int i = 0; i < n; ++i) p[idx++] = h.matrix()(i, i).real();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            p[idx++] = h.matrix()(i, j).real();
            p[idx++] = h.matrix()(i, j).imag();
        }
}

void params_to_pair(const std::vector<double>& p, int n, HermitianMatrix& a, HermitianMatrix& b) {
    a = params_to_matrix(p.data(), n);
    b = params_to_matrix(p.data() + n * n, n);
}

HermitianMatrix cap_operator_norm(const HermitianMatrix& h, double cap, const Tolerances& tol) {
    const EigenDecomposition e = hermitian_eig(h, tol);
    const int n = h.dim();
    double top = 0.0;
    for (int i = 0; i < n; ++i) top = std::max(top, std::abs(e.spectrum[i]));
    if (top <= cap) return h;
    return (cap / top) * h;
}

HermitianMatrix drop_trailing_eigenvalues(const HermitianMatrix& h, const Tolerances& tol) {
    const EigenDecomposition e = hermitian_eig(h, tol);
    const int n = h.dim();
    const int keep = n - n / 2;
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cx s = 0.0;
            for (int r = 0; r < keep; ++r)
                s += e.vectors(i, r) * e.spectrum[r] * std::conj(e.vectors(j, r));
            m(i, j) = s;
        }
    return re_part(m);
}

void draw_pair(Rng& rng, const SearchConfig& cfg, const Tolerances& tol,
               HermitianMatrix& a, HermitianMatrix& b) {
    const int n = cfg.dim;
    switch (cfg.ensemble) {
        case Ensemble::gaussian:
            a = rand_hermitian(rng, n);
            b = rand_hermitian(rng, n);
            return;
        case Ensemble::rank_deficient:
            a = drop_trailing_eigenvalues(rand_hermitian(rng, n), tol);
            b = drop_trailing_eigenvalues(rand_hermitian(rng, n), tol);
            return;
        case Ensemble::near_commuting: {
            a = rand_hermitian(rng, n);
            const double c0 = rng.gaussian();
            const double c1 = rng.gaussian();
            const double c2 = rng.gaussian();
            const HermitianMatrix a2 = re_part(a.matrix() * a.matrix());
            const HermitianMatrix noise = rand_hermitian(rng, n, false);
            const HermitianMatrix raw =
                c0 * HermitianMatrix::identity(n) + c1 * a + c2 * a2 + 0.05 * noise;
            b = cap_operator_norm(raw, 2.0, tol);
            return;
        }
    }
    throw std::logic_error("unreachable ensemble");
}

struct RestartResult {
    double margin = 0.0;
    std::vector<double> params;
    std::vector<TraceRow> trace;
};

RestartResult run_restart(const SearchConfig& cfg, int restart, bool want_trace) {
    const Tolerances tol{};
    const int n = cfg.dim;
    Rng rng(derive_stream(cfg.rng_seed, static_cast<std::uint64_t>(restart)));

    HermitianMatrix a = HermitianMatrix::zero(n);
    HermitianMatrix b = HermitianMatrix::zero(n);
    draw_pair(rng, cfg, tol, a, b);

    std::vector<double> params(static_cast<std::size_t>(param_count(n)));
    matrix_to_params(a, params.data());
    matrix_to_params(b, params.data() + n * n);

    const auto objective = [&](const std::vector<double>& p) {
        HermitianMatrix ta = HermitianMatrix::zero(n);
        HermitianMatrix tb = HermitianMatrix::zero(n);
        params_to_pair(p, n, ta, tb);
        return margin_objective(ta, tb, cfg.k, tol);
    };

    RestartResult res;
    double cur = objective(params);
    res.margin = cur;
    res.params = params;
    if (want_trace) res.trace.push_back(TraceRow{restart, 0, cur});

    const double fd_h = 1e-6;
    std::vector<double> grad(params.size());
    std::vector<double> probe = params;
    std::vector<double> trial(params.size());

    for (int step = 1; step <= cfg.steps_per_restart; ++step) {
        double gnorm2 = 0.0;
        for (std::size_t j = 0; j < params.size(); ++j) {
            const double saved = probe[j];
            probe[j] = saved + fd_h;
            const double fp = objective(probe);
            probe[j] = saved - fd_h;
            const double fm = objective(probe);
            probe[j] = saved;
            grad[j] = (fp - fm) / (2.0 * fd_h);
            gnorm2 += grad[j] * grad[j];
        }
        const double gnorm = std::sqrt(gnorm2);
        if (gnorm < 1e-14) break;

        double s = cfg.step_size;
        bool improved = false;
        while (s >= 1e-8) {
            for (std::size_t j = 0; j < params.size(); ++j)
                trial[j] = params[j] - s * grad[j] / gnorm;
            const double ft = objective(trial);
            if (ft < cur) {
                params = trial;
                probe = trial;
                cur = ft;
                improved = true;
                break;
            }
            s *= 0.5;
        }
        if (!improved) break;
        if (cur < res.margin) {
            res.margin = cur;
            res.params = params;
        }
        if (want_trace) res.trace.push_back(TraceRow{restart, step, cur});
    }
    return res;
}

int thread_cap(int num_tasks) {
    int cap = 0;
    if (const char* env = std::getenv("MAJLAB_THREADS")) {
        cap = std::atoi(env);
        if (cap < 1) cap = 1;
    } else {
        cap = static_cast<int>(std::thread::hardware_concurrency());
        if (cap < 1) cap = 1;
    }
    return std::min(cap, num_tasks);
}

} // namespace

ViolationReport hunt(const SearchConfig& config, std::vector<TraceRow>* trace) {
    config.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Tolerances tol{};
    const int n = config.dim;
    const bool want_trace = trace != nullptr;

    std::vector<RestartResult> results(static_cast<std::size_t>(config.num_restarts));
    const int threads = thread_cap(config.num_restarts);
    if (threads <= 1) {
        for (int i = 0; i < config.num_restarts; ++i)
            results[static_cast<std::size_t>(i)] = run_restart(config, i, want_trace);
    } else {
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= config.num_restarts) return;
                results[static_cast<std::size_t>(i)] = run_restart(config, i, want_trace);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    int best = 0;
    for (int i = 1; i < config.num_restarts; ++i)
        if (results[static_cast<std::size_t>(i)].margin < results[static_cast<std::size_t>(best)].margin)
            best = i;

    HermitianMatrix a = HermitianMatrix::zero(n);
    HermitianMatrix b = HermitianMatrix::zero(n);
    params_to_pair(results[static_cast<std::size_t>(best)].params, n, a, b);

    ViolationReport rep;
    rep.config = config;
    rep.best_restart = best;
    rep.a = a.matrix();
    rep.b = b.matrix();
    rep.margins_per_r = prefix_margins(a, b, config.k, tol);
    rep.best_margin = *std::min_element(rep.margins_per_r.begin(), rep.margins_per_r.end());
    if (std::abs(rep.best_margin - results[static_cast<std::size_t>(best)].margin) > 1e-9)
        throw std::logic_error("search report failed self-verification");
    rep.inconclusive = std::abs(rep.best_margin) < 1e-8;

    const ComparisonMargins cm = comparison_margins(a, b, config.k, tol);
    rep.certificates.reserve(cm.rows.size());
    for (const MarginRow& row : cm.rows) rep.certificates.push_back(row.certificate);

    const std::vector<double> hk = power_spectrum(hermitian_eig(a + b, tol).spectrum, config.k);
    rep.sigma_margins = prefix_gaps(singular_values(compute_Qk(a, b, config.k), tol), hk);

    if (trace) {
        trace->clear();
        for (const RestartResult& r : results)
            trace->insert(trace->end(), r.trace.begin(), r.trace.end());
    }

    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace {

nlohmann::json config_to_json(const SearchConfig& c) {
    return nlohmann::json{{"k", c.k},
                          {"dim", c.dim},
                          {"num_restarts", c.num_restarts},
                          {"steps_per_restart", c.steps_per_restart},
                          {"step_size", c.step_size},
                          {"rng_seed", c.rng_seed},
                          {"ensemble", to_string(c.ensemble)}};
}

SearchConfig config_from_json(const nlohmann::json& j) {
    SearchConfig c;
    c.k = j.at("k").get<int>();
    c.dim = j.at("dim").get<int>();
    c.num_restarts = j.at("num_restarts").get<int>();
    c.steps_per_restart = j.at("steps_per_restart").get<int>();
    c.step_size = j.at("step_size").get<double>();
    c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
    c.ensemble = ensemble_from_string(j.at("ensemble").get<std::string>());
    return c;
}

} // namespace

nlohmann::json report_to_json(const ViolationReport& report) {
    return nlohmann::json{
        {"schema", "vr-1"},
        {"config", config_to_json(report.config)},
        {"rng", {{"algorithm", "splitmix64"}, {"streams", "derived from (seed, restart index)"}}},
        {"best_margin", report.best_margin},
        {"best_restart", report.best_restart},
        {"inconclusive", report.inconclusive},
        {"a", matrix_to_json(report.a)},
        {"b", matrix_to_json(report.b)},
        {"margins_per_r", report.margins_per_r},
        {"certificates", report.certificates},
        {"sigma_margins", report.sigma_margins},
        {"wall_seconds", report.wall_seconds}};
}

ViolationReport report_from_json(const nlohmann::json& j) {
    if (j.at("schema").get<std::string>() != "vr-1")
        throw std::invalid_argument("unsupported report schema");
    ViolationReport r;
    r.config = config_from_json(j.at("config"));
    r.best_margin = j.at("best_margin").get<double>();
    r.best_restart = j.at("best_restart").get<int>();
    r.inconclusive = j.at("inconclusive").get<bool>();
    r.a = matrix_from_json(j.at("a"));
    r.b = matrix_from_json(j.at("b"));
    r.margins_per_r = j.at("margins_per_r").get<std::vector<double>>();
    r.certificates = j.at("certificates").get<std::vector<double>>();
    r.sigma_margins = j.at("sigma_margins").get<std::vector<double>>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    return r;
}

void save_report(const ViolationReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << report_to_json(report).dump(2) << "\n";
}

ViolationReport load_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return report_from_json(j);
}

ReverifyResult reverify(const ViolationReport& report) {
    const HermitianMatrix a = re_part(report.a);
    const HermitianMatrix b = re_part(report.b);
    Tolerances tight{};
    tight.jacobi_tol /= 100.0;

    ReverifyResult res;
    res.margin_default = margin_objective(a, b, report.config.k, Tolerances{});
    res.margin_tight = margin_objective(a, b, report.config.k, tight);
    res.inconclusive = std::abs(report.best_margin) < 1e-8;

    const auto consistent = [&](double m) {
        if (res.inconclusive) return std::abs(m) < 1e-8;
        if (std::abs(m - report.best_margin) <= 1e-9) return true;
        if ((m < 0.0) != (report.best_margin < 0.0)) return false;
        return std::abs(m - report.best_margin) <=
               0.1 * std::max(std::abs(m), std::abs(report.best_margin));
    };
    res.persists = consistent(res.margin_default) && consistent(res.margin_tight);
    return res;
}

} // namespace majlab
