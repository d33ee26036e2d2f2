#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "majlab/linalg.hpp"
#include "majlab/taylor.hpp"

namespace majlab {

enum class Ensemble { gaussian, rank_deficient, near_commuting };

std::string to_string(Ensemble e);
Ensemble ensemble_from_string(const std::string& s);

struct SearchConfig {
    int k = 5;
    int dim = 3;
    int num_restarts = 100;
    int steps_per_restart = 20;
    double step_size = 0.1;
    std::uint64_t rng_seed = 0;
    Ensemble ensemble = Ensemble::gaussian;

    void validate() const; // throws std::invalid_argument
};

// Per-r prefix gaps sum_{i<=r} lambda_i(R_k) - sum_{i<=r} lambda_i(H^k),
// r = 1..n. lambda(H^k) is taken as the sorted k-th powers of lambda(H).
std::vector<double> prefix_margins(const HermitianMatrix& a, const HermitianMatrix& b, int k,
                                   const Tolerances& tol = {});

// min over r of prefix_margins; negative means counterexample candidate.
double margin_objective(const HermitianMatrix& a, const HermitianMatrix& b, int k,
                        const Tolerances& tol = {});

struct TraceRow {
    int restart;
    int step; // 0 is the initial draw
    double objective;
};

struct ViolationReport {
    SearchConfig config;
    double best_margin = 0.0;
    int best_restart = 0;
    bool inconclusive = false;
    ComplexMatrix a{1};
    ComplexMatrix b{1};
    std::vector<double> margins_per_r;
    std::vector<double> certificates;  // Tr(E_{k,r} D_k)
    std::vector<double> sigma_margins; // secondary: prefix gaps vs sigma(Q_k)
    double wall_seconds = 0.0;
};

// Multi-restart finite-difference descent on margin_objective. Deterministic
// for a fixed config: every restart owns the RNG stream derived from
// (rng_seed, restart index), and the reduction is by (margin, index).
// Restarts run in parallel up to MAJLAB_THREADS. If trace is non-null it
// receives one row per accepted step, ordered by restart.
ViolationReport hunt(const SearchConfig& config, std::vector<TraceRow>* trace = nullptr);

nlohmann::json report_to_json(const ViolationReport& report);
ViolationReport report_from_json(const nlohmann::json& j);
void save_report(const ViolationReport& report, const std::string& path);
ViolationReport load_report(const std::string& path);

struct ReverifyResult {
    bool persists = false;
    bool inconclusive = false;
    double margin_default = 0.0;
    double margin_tight = 0.0;
};

// Recompute the best margin from the stored pair, once at default tolerances
// and once with the eigensolver tolerance tightened 100x. The reported margin
// persists if both recomputations keep its sign and agree within 10% (or
// within 1e-9 absolute); reports inside the |margin| < 1e-8 noise band are
// inconclusive and persist iff the recomputations stay inside the band.
ReverifyResult reverify(const ViolationReport& report);

} // namespace majlab
