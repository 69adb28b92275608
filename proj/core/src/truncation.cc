// Copyright 2026 The loccflat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "loccflat/errors.h"
#include "loccflat/synthesis.h"

namespace loccflat {

namespace {

// Absorbs rounding in the summed probabilities when comparing against 1 - epsilon.
constexpr double kRetentionSlack = 1e-12;
constexpr std::size_t kSearchBudget = 5'000'000;

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw DomainError("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
    }
}

void require_probabilities(const Protocol &p) {
    if (p.outcome_probs_psi.size() != p.outcome_probs_phi.size() || p.outcome_probs_psi.empty()) {
        throw DimensionError("protocol outcome tables are empty or inconsistent");
    }
}

std::vector<std::size_t> greedy_order(const Protocol &p) {
    const auto &ps = p.outcome_probs_psi;
    const auto &pf = p.outcome_probs_phi;
    std::vector<std::size_t> order(ps.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double ma = std::min(ps[a], pf[a]);
        double mb = std::min(ps[b], pf[b]);
        if (ma != mb) {
            return ma > mb;
        }
        double sa = ps[a] + pf[a];
        double sb = ps[b] + pf[b];
        if (sa != sb) {
            return sa > sb;
        }
        return a < b;
    });
    return order;
}

TruncatedMessagePlan make_plan(const Protocol &p, std::vector<std::size_t> kept, double epsilon, bool certified) {
    std::sort(kept.begin(), kept.end());
    TruncatedMessagePlan plan;
    plan.epsilon = epsilon;
    for (auto i : kept) {
        plan.retained_prob_psi += p.outcome_probs_psi[i];
        plan.retained_prob_phi += p.outcome_probs_phi[i];
    }
    plan.bits = message_bits(kept.size());
    plan.kept_outcomes = std::move(kept);
    plan.minimality_certified = certified;
    return plan;
}

TruncatedMessagePlan single_most_probable(const Protocol &p, double epsilon) {
    const auto &ps = p.outcome_probs_psi;
    const auto &pf = p.outcome_probs_phi;
    std::size_t best = 0;
    for (std::size_t i = 1; i < ps.size(); i++) {
        if (ps[i] + pf[i] > ps[best] + pf[best]) {
            best = i;
        }
    }
    return make_plan(p, {best}, epsilon, true);
}

std::size_t greedy_prefix_length(const Protocol &p, const std::vector<std::size_t> &order, double target) {
    double acc_psi = 0;
    double acc_phi = 0;
    for (std::size_t len = 0; len < order.size(); len++) {
        if (acc_psi + kRetentionSlack >= target && acc_phi + kRetentionSlack >= target && len > 0) {
            return len;
        }
        acc_psi += p.outcome_probs_psi[order[len]];
        acc_phi += p.outcome_probs_phi[order[len]];
    }
    return order.size();
}

// Depth-first search for a subset of exactly `size` items meeting both targets.
class SubsetSearch {
   public:
    SubsetSearch(const std::vector<double> &a, const std::vector<double> &b, double target)
        : a_(a), b_(b), target_(target), n_(a.size()) {
        // best_a_[pos][r]: sum of the r largest a-values among items pos..n-1.
        best_a_.assign(n_ + 1, {});
        best_b_.assign(n_ + 1, {});
        for (std::size_t pos = 0; pos <= n_; pos++) {
            best_a_[pos] = suffix_top_sums(a_, pos);
            best_b_[pos] = suffix_top_sums(b_, pos);
        }
    }

    std::optional<std::vector<std::size_t>> find(std::size_t size) {
        chosen_.clear();
        if (dfs(0, size, 0.0, 0.0)) {
            return chosen_;
        }
        return std::nullopt;
    }

    bool exhausted() const { return nodes_ >= kSearchBudget; }

   private:
    static std::vector<double> suffix_top_sums(const std::vector<double> &v, std::size_t pos) {
        std::vector<double> tail(v.begin() + static_cast<std::ptrdiff_t>(pos), v.end());
        std::sort(tail.begin(), tail.end(), std::greater<>());
        std::vector<double> sums(tail.size() + 1, 0.0);
        for (std::size_t r = 0; r < tail.size(); r++) {
            sums[r + 1] = sums[r] + tail[r];
        }
        return sums;
    }

    bool meets(double x) const { return x + kRetentionSlack >= target_; }

    bool dfs(std::size_t pos, std::size_t remaining, double sum_a, double sum_b) {
        if (remaining == 0) {
            return meets(sum_a) && meets(sum_b);
        }
        if (n_ - pos < remaining || ++nodes_ >= kSearchBudget) {
            return false;
        }
        if (!meets(sum_a + best_a_[pos][remaining]) || !meets(sum_b + best_b_[pos][remaining])) {
            return false;
        }
        chosen_.push_back(pos);
        if (dfs(pos + 1, remaining - 1, sum_a + a_[pos], sum_b + b_[pos])) {
            return true;
        }
        chosen_.pop_back();
        return dfs(pos + 1, remaining, sum_a, sum_b);
    }

    const std::vector<double> &a_;
    const std::vector<double> &b_;
    double target_;
    std::size_t n_;
    std::vector<std::vector<double>> best_a_;
    std::vector<std::vector<double>> best_b_;
    std::vector<std::size_t> chosen_;
    std::size_t nodes_ = 0;
};

}  // namespace

std::size_t message_bits(std::size_t kept) {
    if (kept == 0) {
        throw DomainError("message_bits: empty outcome set");
    }
    return ceil_log2(kept) + 1;
}

TruncatedMessagePlan greedy_truncate(const Protocol &p, double epsilon) {
    require_epsilon(epsilon);
    require_probabilities(p);
    if (epsilon == 1.0) {
        return single_most_probable(p, epsilon);
    }
    const auto order = greedy_order(p);
    const std::size_t len = greedy_prefix_length(p, order, 1.0 - epsilon);
    return make_plan(p, std::vector<std::size_t>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len)),
                     epsilon, false);
}

TruncatedMessagePlan epsilon_truncate(const Protocol &p, double epsilon) {
    TruncatedMessagePlan greedy = greedy_truncate(p, epsilon);
    if (epsilon == 1.0 || greedy.kept_outcomes.size() <= 1) {
        greedy.minimality_certified = true;
        return greedy;
    }
    const double target = 1.0 - epsilon;
    // Candidates in greedy order so that ties resolve towards the greedy choice.
    std::vector<std::size_t> order = greedy_order(p);
    std::erase_if(order, [&](std::size_t i) { return p.outcome_probs_psi[i] <= 0 && p.outcome_probs_phi[i] <= 0; });
    std::vector<double> a;
    std::vector<double> b;
    for (auto i : order) {
        a.push_back(p.outcome_probs_psi[i]);
        b.push_back(p.outcome_probs_phi[i]);
    }

    // No subset smaller than the top-s sums of either coordinate can work.
    std::vector<double> sa = a;
    std::vector<double> sb = b;
    std::sort(sa.begin(), sa.end(), std::greater<>());
    std::sort(sb.begin(), sb.end(), std::greater<>());
    std::size_t lower = 1;
    {
        double acc_a = 0;
        double acc_b = 0;
        for (std::size_t s = 1; s <= sa.size(); s++) {
            acc_a += sa[s - 1];
            acc_b += sb[s - 1];
            if (acc_a + kRetentionSlack >= target && acc_b + kRetentionSlack >= target) {
                lower = s;
                break;
            }
        }
    }

    SubsetSearch search(a, b, target);
    for (std::size_t size = lower; size < greedy.kept_outcomes.size(); size++) {
        if (auto found = search.find(size)) {
            std::vector<std::size_t> kept;
            for (auto pos : *found) {
                kept.push_back(order[pos]);
            }
            // Every smaller size was refuted exhaustively.
            return make_plan(p, std::move(kept), epsilon, true);
        }
        if (search.exhausted()) {
            return greedy;
        }
    }
    greedy.minimality_certified = true;
    return greedy;
}

}  // namespace loccflat
