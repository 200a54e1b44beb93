#include "wbl/minbox.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "wbl/rng.hpp"

namespace wbl {

MinBoxState::MinBoxState(int n, int64_t D, double alpha, int bias)
    : alpha_(alpha), bias_(bias) {
    if (n < 1 || D < 1 || bias < 0)
        throw InvalidConfig("MinBox: need n >= 1, D >= 1, b' >= 0");
    boxes_.assign(n, Box{D, 0, 0});
    for (int i = 0; i < n; ++i) push(i);
}

void MinBoxState::clean() {
    while (!heap_.empty()) {
        auto [d, ni] = heap_.top();
        int i = -ni;
        if (box_free(i) && active(i) && d == dang(i)) return;
        heap_.pop();
    }
}

std::optional<int> MinBoxState::maker_move_max_danger() {
    clean();
    if (heap_.empty()) return std::nullopt;
    int i = -heap_.top().second;
    heap_.pop();
    ++boxes_[i].w_M;
    ++total_M_;
    if (box_free(i) && active(i)) push(i);
    else if (!box_free(i) && active(i))
        frozen_max_ = std::max(frozen_max_, dang(i));
    return i;
}

int64_t MinBoxState::maker_grant(int i, int64_t count) {
    if (i < 0 || i >= n() || count < 0)
        throw InvalidConfig("MinBox: bad maker grant");
    int64_t room = boxes_[i].size - boxes_[i].w_M - boxes_[i].w_B;
    int64_t take = std::min(count, room);
    boxes_[i].w_M += take;
    total_M_ += take;
    if (take > 0) {
        if (box_free(i) && active(i)) push(i);
        else if (!box_free(i) && active(i))
            frozen_max_ = std::max(frozen_max_, dang(i));
    }
    return take;
}

void MinBoxState::breaker_claim_elements(
    const std::vector<std::pair<int, int64_t>>& alloc) {
    int64_t total = 0;
    for (auto [i, c] : alloc) {
        if (i < 0 || i >= n() || c < 0)
            throw InvalidConfig("MinBox: bad allocation entry");
        total += c;
    }
    if (total > bias_)
        throw OverBudget("breaker allocation of " + std::to_string(total) +
                         " exceeds bias " + std::to_string(bias_));
    std::vector<std::pair<int, int64_t>> acc(alloc); // cumulative per box
    std::sort(acc.begin(), acc.end());
    for (size_t a = 0; a < acc.size();) {
        size_t e = a;
        int64_t c = 0;
        while (e < acc.size() && acc[e].first == acc[a].first) c += acc[e++].second;
        int i = acc[a].first;
        if (boxes_[i].w_M + boxes_[i].w_B + c > boxes_[i].size)
            throw BoxFull("box " + std::to_string(i) + " cannot take " +
                          std::to_string(c) + " more elements");
        a = e;
    }
    for (auto [i, c] : alloc) {
        if (c == 0) continue;
        boxes_[i].w_B += c;
        total_B_ += c;
        if (box_free(i) && active(i)) push(i);
        else if (active(i)) frozen_max_ = std::max(frozen_max_, dang(i));
    }
}

int64_t MinBoxState::max_active_danger() {
    clean();
    int64_t m = frozen_max_;
    if (!heap_.empty()) m = std::max(m, heap_.top().first);
    return m == INT64_MIN ? 0 : m;
}

double MinBoxState::danger_bound() const {
    return (double)bias_ * (std::log((double)n()) + 1.0);
}

std::string FuzzReport::to_json() const {
    nlohmann::json j{{"schedules", schedules}, {"maker_moves", maker_moves},
                     {"violations", violations}, {"max_danger", max_danger},
                     {"bound", bound}};
    return j.dump();
}

FuzzReport minbox_fuzz(int n, int64_t D, double alpha, int bias,
                       int rounds_per_schedule, int schedules, uint64_t seed) {
    FuzzReport rep;
    rep.schedules = schedules;
    for (int s = 0; s < schedules; ++s) {
        Rng rng(derive_seed(seed, (uint64_t)s));
        MinBoxState st(n, D, alpha, bias);
        rep.bound = st.danger_bound();
        for (int r = 0; r < rounds_per_schedule; ++r) {
            // adversary turn: up to b' elements over a few random boxes,
            // sometimes concentrated, sometimes spread
            int64_t budget = (int64_t)rng.below((uint64_t)bias + 1);
            std::vector<std::pair<int, int64_t>> alloc;
            while (budget > 0) {
                int i = rng.below_int(n);
                int64_t room = st.box(i).size - st.box(i).w_M - st.box(i).w_B;
                if (room <= 0) { --budget; continue; } // wasted element
                int64_t c = rng.coin(0.5) ? std::min(budget, room)
                                          : std::min<int64_t>(1, room);
                alloc.push_back({i, c});
                budget -= c;
            }
            st.breaker_claim_elements(alloc);
            auto mv = st.maker_move_max_danger();
            if (!mv) break;
            ++rep.maker_moves;
            int64_t d = st.max_active_danger();
            rep.max_danger = std::max(rep.max_danger, d);
            if ((double)d > st.danger_bound()) ++rep.violations;
        }
    }
    return rep;
}

} // namespace wbl
