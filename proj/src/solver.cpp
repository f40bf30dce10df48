#include "seqssvm/solver.hpp"

#include <algorithm>
#include <cmath>

namespace seqssvm {

double default_tolerance(const std::vector<LabeledExample>& examples) {
    if (examples.empty()) return 0.1;
    double total = 0.0;
    for (const auto& ex : examples) total += ex.x.length();
    return 0.01 * total / static_cast<double>(examples.size());
}

SsvmSolver::SsvmSolver(FeatureSpacePtr space)
    : space_(std::move(space)), w_(space_->dimension(), 0.0) {}

void SsvmSolver::set_items(std::vector<TrainItem> items) {
    for (const auto& it : items) {
        if (!it.x) throw domain_error("null sequence in train item");
        if (it.x->length() == 0) throw domain_error("empty sequence in train item");
        if (static_cast<int>(it.y.size()) != it.x->length())
            throw domain_error("train item label length mismatch");
        for (int lab : it.y)
            if (lab < 0 || lab >= space_->label_count())
                throw domain_error("train item label out of range");
        if (!(it.cost > 0.0)) throw domain_error("train item cost must be positive");
    }
    const std::size_t n = items.size();
    for (std::size_t i = 0; i < items_.size(); ++i) {
        bool same = i < n && items_[i].y == items[i].y &&
                    (items_[i].x == items[i].x || *items_[i].x == *items[i].x);
        if (!same) {
            for (const auto& e : working_sets_[i])
                if (e.alpha != 0.0) axpy(-e.alpha, e.delta, w_);
            working_sets_[i].clear();
            alpha_sums_[i] = 0.0;
        } else if (items_[i].cost != items[i].cost && !working_sets_[i].empty()) {
            box_changed_ = true;
        }
    }
    working_sets_.resize(n);
    alpha_sums_.resize(n, 0.0);
    items_ = std::move(items);
    // Kept state can exceed a shrunken budget; rescale back into the box.
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha_sums_[i] > items_[i].cost) {
            double ratio = items_[i].cost / alpha_sums_[i];
            double sum = 0.0;
            for (auto& e : working_sets_[i]) {
                double step = e.alpha * (ratio - 1.0);
                if (step != 0.0) axpy(step, e.delta, w_);
                e.alpha *= ratio;
                sum += e.alpha;
            }
            alpha_sums_[i] = sum;
        }
    }
}

double SsvmSolver::working_set_slack(std::size_t i) const {
    double best = 0.0;
    for (const auto& e : working_sets_[i]) best = std::max(best, e.loss - dot(w_, e.delta));
    return best;
}

void SsvmSolver::inner_descent(std::size_t i, int rounds) {
    auto& ws = working_sets_[i];
    if (ws.empty()) return;
    const double cost = items_[i].cost;
    for (int r = 0; r < rounds; ++r) {
        for (auto& e : ws) {
            double g = e.loss - dot(w_, e.delta);
            double d = g / e.delta_sq;
            // Box: alpha stays >= 0 and the example's total stays <= cost.
            // Lower clamp last so alpha hits exact zero when pushed there.
            d = std::min(d, cost - alpha_sums_[i]);
            d = std::max(d, -e.alpha);
            if (d != 0.0) {
                e.alpha += d;
                alpha_sums_[i] += d;
                axpy(d, e.delta, w_);
            }
        }
        // Single-variable steps cannot move mass between entries once the
        // budget is tight, so equalize gradients with pair transfers too.
        for (std::size_t t = 0; t < ws.size(); ++t)
            if (!pairwise_transfer(i)) break;
    }
}

// Shifts dual mass from the lowest-gradient positive entry to the
// highest-gradient entry, maximizing the dual along that segment. Keeps both
// alpha bounds and the example's total mass intact.
bool SsvmSolver::pairwise_transfer(std::size_t i) {
    auto& ws = working_sets_[i];
    if (ws.size() < 2) return false;
    Entry* hi = nullptr;
    Entry* lo = nullptr;
    double g_hi = 0.0, g_lo = 0.0;
    for (auto& e : ws) {
        double g = e.loss - dot(w_, e.delta);
        if (!hi || g > g_hi) {
            hi = &e;
            g_hi = g;
        }
        if (e.alpha > 0.0 && (!lo || g < g_lo)) {
            lo = &e;
            g_lo = g;
        }
    }
    if (!hi || !lo || hi == lo || !(g_hi > g_lo)) return false;
    double curv = hi->delta_sq + lo->delta_sq - 2.0 * dot(hi->delta, lo->delta);
    double t = curv > 0.0 ? std::min((g_hi - g_lo) / curv, lo->alpha) : lo->alpha;
    if (!(t > 0.0)) return false;
    hi->alpha += t;
    lo->alpha -= t; // exact zero when t == lo->alpha
    axpy(t, hi->delta, w_);
    axpy(-t, lo->delta, w_);
    return true;
}

void SsvmSolver::prune() {
    for (auto& ws : working_sets_) {
        for (auto& e : ws) e.zero_passes = e.alpha == 0.0 ? e.zero_passes + 1 : 0;
        std::erase_if(ws, [](const Entry& e) { return e.zero_passes >= 2; });
    }
}

double SsvmSolver::dual_objective() const {
    double sum = 0.0;
    for (const auto& ws : working_sets_)
        for (const auto& e : ws) sum += e.alpha * e.loss;
    double nsq = 0.0;
    for (double v : w_) nsq += v * v;
    return sum - 0.5 * nsq;
}

std::vector<double> SsvmSolver::reconstructed_weights() const {
    std::vector<double> w(space_->dimension(), 0.0);
    for (const auto& ws : working_sets_)
        for (const auto& e : ws)
            if (e.alpha != 0.0) axpy(e.alpha, e.delta, w);
    return w;
}

SolveReport SsvmSolver::solve(const SolverConfig& cfg) {
    if (items_.empty()) throw domain_error("no training items");
    if (!(cfg.tol > 0.0)) throw config_error("tol must be positive");
    if (cfg.max_outer_passes < 1) throw config_error("max_outer_passes must be >= 1");
    if (cfg.dual_inner_iters < 1) throw config_error("dual_inner_iters must be >= 1");

    const auto& fs = *space_;
    if (box_changed_) {
        for (std::size_t i = 0; i < items_.size(); ++i) inner_descent(i, cfg.dual_inner_iters);
        box_changed_ = false;
    }
    SolveReport report;
    for (int pass = 1; pass <= cfg.max_outer_passes; ++pass) {
        double max_viol = 0.0;
        for (std::size_t i = 0; i < items_.size(); ++i) {
            const TrainItem& item = items_[i];
            auto lad = loss_augmented_decode(fs, w_, *item.x, item.y);
            double ref = dot(w_, joint_feature_map(fs, *item.x, item.y));
            double new_slack = lad.score - ref; // >= 0: the item's own labels are a candidate
            double viol = new_slack - working_set_slack(i);
            max_viol = std::max(max_viol, viol);
            if (viol > cfg.tol && lad.labels != item.y) {
                auto& ws = working_sets_[i];
                bool present = false;
                for (const auto& e : ws)
                    if (e.labels == lad.labels) {
                        present = true;
                        break;
                    }
                if (!present) {
                    Entry e;
                    e.labels = lad.labels;
                    e.delta = feature_delta(fs, *item.x, item.y, lad.labels);
                    e.loss = hamming_loss(item.y, lad.labels);
                    e.delta_sq = norm_sq(e.delta);
                    if (e.delta_sq > 0.0) ws.push_back(std::move(e));
                }
                inner_descent(i, cfg.dual_inner_iters);
            }
        }
        for (double v : w_)
            if (!std::isfinite(v)) throw numeric_error("non-finite weights during solve");

        PassStats stats;
        stats.pass = pass;
        stats.max_violation = max_viol;
        for (const auto& ws : working_sets_) stats.working_set_size += ws.size();
        if (cfg.record_objectives) {
            stats.dual_objective = dual_objective();
            double nsq = 0.0;
            for (double v : w_) nsq += v * v;
            double primal = 0.5 * nsq;
            for (const auto& item : items_)
                primal += item.cost * slack_of(fs, w_, *item.x, item.y);
            stats.primal_objective = primal;
        }
        report.passes.push_back(stats);
        report.final_max_violation = max_viol;
        prune();
        if (max_viol <= cfg.tol) {
            report.converged = true;
            break;
        }
    }
    // Snap w onto its working-set reconstruction so the identity is exact at
    // return and a converged re-solve is a bit-level no-op.
    w_ = reconstructed_weights();
    return report;
}

Model SsvmSolver::model() const { return Model(space_, w_); }

Model solve_ssvm(const std::vector<LabeledExample>& labeled, FeatureSpacePtr space,
                 const SolverConfig& cfg, SolveReport* report) {
    if (labeled.empty()) throw domain_error("empty labeled set");
    if (!(cfg.C > 0.0)) throw config_error("C must be positive");
    SsvmSolver solver(std::move(space));
    std::vector<TrainItem> items;
    items.reserve(labeled.size());
    for (const auto& ex : labeled) items.push_back({&ex.x, ex.y, cfg.C});
    solver.set_items(std::move(items));
    auto rep = solver.solve(cfg);
    if (report) *report = std::move(rep);
    return solver.model();
}

double primal_objective(const Model& model, const std::vector<LabeledExample>& labeled,
                        double per_example_C) {
    double nsq = 0.0;
    for (double v : model.weights) nsq += v * v;
    double slack = 0.0;
    for (const auto& ex : labeled) slack += slack_of(model, ex.x, ex.y);
    return 0.5 * nsq + per_example_C * slack;
}

} // namespace seqssvm
