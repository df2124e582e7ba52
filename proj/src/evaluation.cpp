#include "sigma/evaluation.hpp"

#include <algorithm>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include <fmt/format.h>

namespace sigma {

namespace {

using GtMap = std::unordered_map<std::string_view, std::string_view>;

GtMap make_gt_map(std::span<const SurfacePair> gt)
{
    if (gt.empty()) {
        throw std::invalid_argument("no ground truth");
    }
    GtMap map;
    map.reserve(gt.size());
    for (const auto& p : gt) {
        map.emplace(p.first, p.second);
    }
    return map;
}

// Classifies one prediction: -1 no gt info, 0 wrong, 1 correct.
int judge(const GtMap& gt, std::string_view first, std::string_view second)
{
    auto it = gt.find(first);
    if (it == gt.end()) {
        return -1;
    }
    return it->second == second ? 1 : 0;
}

void finish(EvalReport& r)
{
    r.precision_defined = r.evaluated > 0;
    r.precision = r.precision_defined ? static_cast<double>(r.correct) / r.evaluated : 0.0;
    r.recall = r.gt_size > 0 ? static_cast<double>(r.correct) / r.gt_size : 0.0;
    const double s = r.precision + r.recall;
    r.f_measure = s > 0.0 ? 2.0 * r.precision * r.recall / s : 0.0;
}

template <typename Pair>
EvalReport evaluate_impl(std::span<const Pair> predictions, const GtMap& gt)
{
    EvalReport r;
    r.gt_size = gt.size();
    r.predicted = predictions.size();
    for (const auto& p : predictions) {
        const int v = judge(gt, p.first, p.second);
        if (v >= 0) {
            ++r.evaluated;
            r.correct += static_cast<std::size_t>(v);
        }
    }
    finish(r);
    return r;
}

}  // namespace

EvalReport evaluate(std::span<const SurfacePair> predictions, std::span<const SurfacePair> gt)
{
    return evaluate_impl(predictions, make_gt_map(gt));
}

EvalReport evaluate(std::span<const PredictedPair> predictions, std::span<const SurfacePair> gt)
{
    return evaluate_impl(predictions, make_gt_map(gt));
}

EvalReport evaluate_at_threshold(std::span<const PredictedPair> predictions,
                                 std::span<const SurfacePair> gt, double cutoff)
{
    std::vector<PredictedPair> kept;
    for (const auto& p : predictions) {
        if (p.score >= cutoff) {
            kept.push_back(p);
        }
    }
    return evaluate(std::span<const PredictedPair>(kept), gt);
}

std::vector<PredictedPair> predicted_pairs(const Matching& m, const KnowledgeBase& first,
                                           const KnowledgeBase& second)
{
    std::vector<PredictedPair> out;
    out.reserve(m.size());
    for (const TraceEntry& t : m.trace()) {
        out.push_back({first.surface_id(t.pair.left), second.surface_id(t.pair.right), t.score,
                       t.iteration});
    }
    return out;
}

Sweep pr_sweep(std::span<const PredictedPair> predictions, std::span<const SurfacePair> gt)
{
    const GtMap map = make_gt_map(gt);
    std::vector<std::pair<double, int>> judged;
    judged.reserve(predictions.size());
    for (const auto& p : predictions) {
        judged.emplace_back(p.score, judge(map, p.first, p.second));
    }
    std::stable_sort(judged.begin(), judged.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    Sweep sweep;
    EvalReport acc;
    acc.gt_size = map.size();
    for (std::size_t x = 0; x < judged.size(); ++x) {
        ++acc.predicted;
        if (judged[x].second >= 0) {
            ++acc.evaluated;
            acc.correct += static_cast<std::size_t>(judged[x].second);
        }
        if (x + 1 < judged.size() && judged[x + 1].first == judged[x].first) {
            continue;
        }
        EvalReport row = acc;
        finish(row);
        sweep.rows.push_back({judged[x].first, row});
    }
    sweep.best = sweep.rows.size();
    double best_f = -1.0;
    for (std::size_t r = 0; r < sweep.rows.size(); ++r) {
        if (sweep.rows[r].report.f_measure > best_f) {
            best_f = sweep.rows[r].report.f_measure;
            sweep.best = r;
        }
    }
    return sweep;
}

std::vector<CurveRow> iteration_curve(std::span<const PredictedPair> predictions,
                                      std::span<const SurfacePair> gt, std::size_t window)
{
    const GtMap map = make_gt_map(gt);
    window = std::max<std::size_t>(window, 1);
    std::vector<int> judged;
    judged.reserve(predictions.size());
    std::vector<CurveRow> rows;
    rows.reserve(predictions.size());

    std::size_t cum_eval = 0;
    std::size_t cum_correct = 0;
    std::size_t win_eval = 0;
    std::size_t win_correct = 0;
    for (std::size_t x = 0; x < predictions.size(); ++x) {
        const int v = judge(map, predictions[x].first, predictions[x].second);
        judged.push_back(v);
        if (v >= 0) {
            ++cum_eval;
            ++win_eval;
            cum_correct += static_cast<std::size_t>(v);
            win_correct += static_cast<std::size_t>(v);
        }
        if (x >= window) {
            const int old = judged[x - window];
            if (old >= 0) {
                --win_eval;
                win_correct -= static_cast<std::size_t>(old);
            }
        }
        const std::size_t win_size = std::min(window, x + 1);
        CurveRow row{};
        row.iteration = predictions[x].iteration;
        row.score = predictions[x].score;
        row.precision = cum_eval > 0 ? static_cast<double>(cum_correct) / cum_eval : 0.0;
        row.recall = static_cast<double>(cum_correct) / map.size();
        row.window_precision_defined = win_eval > 0;
        row.window_precision = win_eval > 0 ? static_cast<double>(win_correct) / win_eval : 0.0;
        row.window_gt_coverage = static_cast<double>(win_eval) / win_size;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const Sweep& sweep)
{
    out << "threshold,precision,recall,f_measure,predicted,evaluated,correct,precision_defined,"
           "max_f\n";
    for (std::size_t r = 0; r < sweep.rows.size(); ++r) {
        const auto& row = sweep.rows[r];
        const auto& rep = row.report;
        out << fmt::format("{:.6f},{:.6f},{:.6f},{:.6f},{},{},{},{},{}\n", row.threshold,
                           rep.precision, rep.recall, rep.f_measure, rep.predicted, rep.evaluated,
                           rep.correct, rep.precision_defined ? 1 : 0, r == sweep.best ? 1 : 0);
    }
}

void write_curve_csv(std::ostream& out, const std::vector<CurveRow>& rows)
{
    out << "iteration,score,precision,recall,window_precision,window_gt_coverage,"
           "window_precision_defined\n";
    for (const auto& r : rows) {
        out << fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{}\n", r.iteration, r.score,
                           r.precision, r.recall, r.window_precision, r.window_gt_coverage,
                           r.window_precision_defined ? 1 : 0);
    }
}

}  // namespace sigma
