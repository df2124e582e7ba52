#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "sigma/io.hpp"
#include "sigma/knowledge_base.hpp"
#include "sigma/matching.hpp"

namespace sigma {

/// Precision / recall / F of a predicted 1-1 matching against ground truth.
///
/// correct   = predictions (i, j) with gt(i) == j
/// recall    = correct / |domain(gt)|
/// precision = correct / #predictions whose KB1 entity has ground truth
/// An empty precision denominator reports 0 with `precision_defined` false.
struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    std::size_t gt_size = 0;
    std::size_t predicted = 0;  // all predictions
    std::size_t evaluated = 0;  // predictions with ground truth on the KB1 side
    std::size_t correct = 0;
    bool precision_defined = false;
};

/// Throws std::invalid_argument on empty ground truth.
EvalReport evaluate(std::span<const SurfacePair> predictions, std::span<const SurfacePair> gt);
EvalReport evaluate(std::span<const PredictedPair> predictions, std::span<const SurfacePair> gt);

/// Predictions with score >= cutoff.
EvalReport evaluate_at_threshold(std::span<const PredictedPair> predictions,
                                 std::span<const SurfacePair> gt, double cutoff);

/// Committed pairs in trace order, mapped to surface ids.
std::vector<PredictedPair> predicted_pairs(const Matching& m, const KnowledgeBase& first,
                                           const KnowledgeBase& second);

struct SweepRow {
    double threshold;
    EvalReport report;
};

struct Sweep {
    /// One row per distinct score, descending threshold.
    std::vector<SweepRow> rows;
    /// Row with the largest F (first such row); rows.size() when empty.
    std::size_t best = 0;
};

Sweep pr_sweep(std::span<const PredictedPair> predictions, std::span<const SurfacePair> gt);

struct CurveRow {
    std::size_t iteration;
    double score;
    double precision;  // cumulative, over predictions so far
    double recall;     // cumulative
    double window_precision;
    double window_gt_coverage;
    bool window_precision_defined;
};

/// Per-prediction curve: the score, cumulative P/R, and precision and
/// ground-truth coverage over the last `window` predictions (clamped to
/// the number seen so far).
std::vector<CurveRow> iteration_curve(std::span<const PredictedPair> predictions,
                                      std::span<const SurfacePair> gt, std::size_t window = 1000);

void write_sweep_csv(std::ostream& out, const Sweep& sweep);
void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows);

}  // namespace sigma
