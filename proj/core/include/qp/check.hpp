#pragma once

#include "qp/algebra.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qp {

struct RunOptions {
    enum class Mode { Exact, Modular };
    Mode mode = Mode::Modular;
    bool classical = false; // assert only the hbar^0 slice (h = 0 specialization)
    int k_order = 3;
    int eps_order = 3;
    int trials = 3;
    uint64_t prime = kDefaultPrime;
    uint64_t seed = 1;
    bool require_exact = false; // exact mode: demand no truncation was hit
    std::string fixtures_dir = "fixtures";

    std::string mode_name() const
    {
        std::string m = mode == Mode::Exact ? "exact" : "modular";
        return classical ? m + "+classical" : m;
    }
};

/// One verifiable identity: lhs == rhs in the given algebra.
struct Identity {
    std::string label;
    const AlgebraSpec* A = nullptr;
    ExprPtr lhs, rhs;
};

struct CheckReport {
    std::string check;
    int l = 0;
    std::string algebra;
    std::string mode;
    int k_order = 0;
    int eps_order = 0;
    int trials = 0;
    uint64_t prime = 0;
    uint64_t seed = 0;
    bool pass = false;
    int identities = 0;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
    double sz_bound = 0.0; // Schwartz-Zippel failure probability bound
    int64_t max_degree = 0;
    long wall_ms = 0;
    std::string algebra_descriptor; // JSON object, emitted for reproducibility

    std::string to_json(bool with_timing = true) const;
};

/// Evaluate every identity in the requested mode. Modular mode samples
/// `trials` independent points per algebra and retries on degenerate ones.
CheckReport run_identities(const std::string& check, int l, const std::vector<Identity>& items,
                           const RunOptions& opt, std::vector<std::string> notes = {});

} // namespace qp
