#include "subfde/conditioning.hpp"

#include "subfde/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace subfde {

ConditioningReport check_conditioning(std::span<const AssembledRow> rows, int skip_prefix) {
    ConditioningReport report;
    report.delta = std::numeric_limits<double>::infinity();
    report.alt_a = std::numeric_limits<double>::infinity();
    report.alt_b = std::numeric_limits<double>::infinity();
    for (const auto& row : rows) {
        if (row.m < skip_prefix) continue;
        RowMargin rm;
        rm.m = row.m;
        rm.diag = std::abs(row.pivot());
        CompensatedSum off;
        for (std::size_t k = 0; k + 1 < row.d.size(); ++k) off += std::abs(row.d[k]);
        rm.offdiag = off.value();
        rm.margin = rm.diag - rm.offdiag;
        report.delta = std::min(report.delta, rm.margin);
        const double total = rm.diag + rm.offdiag;
        report.alt_a = std::min(report.alt_a, total > 0.0 ? rm.margin / total : 0.0);
        report.alt_b = std::min(report.alt_b, std::max(rm.diag, rm.offdiag));
        report.rows.push_back(rm);
    }
    if (report.rows.empty()) throw std::invalid_argument("no rows to check");
    report.satisfied = report.delta > 0.0;
    return report;
}

double solution_bound(const ConditioningReport& report, double mu, double fmax) {
    if (!report.satisfied) throw std::logic_error("bound requires a satisfied conditioning report");
    return std::max(std::abs(mu), std::abs(fmax) / report.delta);
}

}  // namespace subfde
