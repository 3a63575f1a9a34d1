#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>

#include "paracone/vec.hpp"

namespace paracone {

/// Points x1, x2 in the domain and a convex weight lambda in [0, 1].
struct SampleTriple {
    Vec x1;
    Vec x2;
    double lambda = 0.0;
};

struct CheckParams {
    double C = 0.0;
    Vec k0;
    std::string alpha;
    std::string form;
    double tolerance = 1e-9;
};

/**
 * Outcome of a sampled inequality check.
 *
 * worst_slack is the smallest raw membership slack seen. A sample counts as a
 * violation when its slack is below -tolerance * (1 + magnitude), where
 * magnitude is the size of the terms that were combined; the witness is the
 * sample that exceeded its threshold by the most.
 */
struct CheckReport {
    bool passed = true;
    double worst_slack = std::numeric_limits<double>::infinity();
    std::optional<SampleTriple> witness;
    std::size_t samples_used = 0;
    CheckParams params;
    std::string note;

    // Internal bookkeeping for picking the witness across merges.
    double worst_excess = std::numeric_limits<double>::infinity();

    /// Records one sample. `threshold` is the (positive) allowed shortfall.
    void record(double slack, double threshold, const SampleTriple* triple = nullptr) {
        ++samples_used;
        worst_slack = std::min(worst_slack, slack);
        const double excess = slack + threshold;
        if (excess < 0.0) passed = false;
        if (excess < worst_excess) {
            worst_excess = excess;
            if (triple && excess < 0.0) witness = *triple;
        }
    }
};

/// Associative merge: min slack, first witness of the more violated side.
inline CheckReport merge(CheckReport a, const CheckReport& b) {
    a.passed = a.passed && b.passed;
    a.worst_slack = std::min(a.worst_slack, b.worst_slack);
    a.samples_used += b.samples_used;
    if (b.worst_excess < a.worst_excess) {
        a.worst_excess = b.worst_excess;
        if (b.witness) a.witness = b.witness;
    }
    if (!a.witness) a.witness = b.witness;
    return a;
}

}  // namespace paracone
