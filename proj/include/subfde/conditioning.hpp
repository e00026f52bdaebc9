#pragma once

#include "subfde/assembly.hpp"

#include <span>
#include <vector>

namespace subfde {

/// Diagonal dominance of one row: |d_m + p_m| against sum_{k<m} |d_k|.
struct RowMargin {
    int m = 0;
    double diag = 0.0;
    double offdiag = 0.0;
    double margin = 0.0;  // diag - offdiag
};

/// Sufficient well-conditioning test for the lower-triangular system: every
/// checked row must satisfy |d_m + p_m| >= sum_{k<m} |d_k| + delta with
/// delta > 0.
struct ConditioningReport {
    std::vector<RowMargin> rows;
    double delta = 0.0;  // smallest margin
    bool satisfied = false;
    /// min over rows of margin / (diag + offdiag)
    double alt_a = 0.0;
    /// min over rows of max(diag, offdiag)
    double alt_b = 0.0;
};

/// Rows with m < skip_prefix are fixed by initial conditions and ignored.
/// Throws std::invalid_argument when no row remains.
ConditioningReport check_conditioning(std::span<const AssembledRow> rows, int skip_prefix);

/// A-priori bound max(mu, fmax / delta) on |y_m|; mu is the largest
/// |prefix value|. Throws std::logic_error on an unsatisfied report.
double solution_bound(const ConditioningReport& report, double mu, double fmax);

}  // namespace subfde
