#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "wbl/minbox.hpp"
#include "wbl/rng.hpp"

using namespace wbl;

namespace {

// Independent of the heap: scan every box for the lowest-index free active
// box of maximum danger.
std::optional<int> naive_max_danger(const MinBoxState& st) {
    std::optional<int> best;
    for (int i = 0; i < st.n(); ++i) {
        if (!st.box_free(i) || !st.active(i)) continue;
        if (!best || st.dang(i) > st.dang(*best)) best = i;
    }
    return best;
}

} // namespace

TEST_CASE("danger formula") {
    MinBoxState st(3, 10, 1.0, 2);
    CHECK(st.dang(0) == 0); // fresh box
    st.breaker_claim_elements({{1, 2}});
    st.breaker_claim_elements({{1, 2}});
    st.breaker_claim_elements({{1, 1}});
    CHECK(st.box(1).w_B == 5);
    st.maker_move_max_danger(); // takes box 1 (danger 5)
    CHECK(st.box(1).w_M == 1);
    CHECK(st.dang(1) == 3); // 5 - 2*1
    MinBoxState neg(2, 10, 1.0, 2);
    neg.maker_move_max_danger();
    neg.maker_move_max_danger();
    neg.maker_move_max_danger();
    CHECK((neg.dang(0) + neg.dang(1)) == -6); // 3 maker elements, no breaker
}

TEST_CASE("maker picks lowest index among max danger") {
    MinBoxState st(3, 100, 1.0, 1);
    st.breaker_claim_elements({{0, 1}});
    st.breaker_claim_elements({{2, 1}});
    st.breaker_claim_elements({{1, 1}});
    st.breaker_claim_elements({{0, 1}});
    st.breaker_claim_elements({{2, 1}});
    st.breaker_claim_elements({{0, 1}});
    st.breaker_claim_elements({{2, 1}});
    // dangers (3, 1, 3)
    CHECK(st.dang(0) == 3);
    CHECK(st.dang(1) == 1);
    CHECK(st.dang(2) == 3);
    auto mv = st.maker_move_max_danger();
    REQUIRE(mv.has_value());
    CHECK(*mv == 0);
    CHECK(st.box(0).w_M == 1);
}

TEST_CASE("no free active box means no move") {
    MinBoxState inactive(4, 10, 0.0, 1); // active iff w_M < 0
    CHECK_FALSE(inactive.maker_move_max_danger().has_value());

    MinBoxState tiny(2, 1, 1.0, 1); // boxes fill after one element
    CHECK(tiny.maker_move_max_danger().has_value());
    CHECK(tiny.maker_move_max_danger().has_value());
    CHECK_FALSE(tiny.maker_move_max_danger().has_value());
}

TEST_CASE("breaker budget and capacity checks") {
    MinBoxState st(3, 4, 1.0, 3);
    CHECK_THROWS_AS(st.breaker_claim_elements({{0, 4}}), OverBudget);
    CHECK_THROWS_AS(st.breaker_claim_elements({{0, 2}, {1, 2}}), OverBudget);
    st.breaker_claim_elements({}); // "at most b" includes zero
    CHECK(st.total_breaker() == 0);
    st.breaker_claim_elements({{0, 3}});
    CHECK_THROWS_AS(st.breaker_claim_elements({{0, 2}}), BoxFull);
    // split entries for the same box must be counted together
    CHECK_THROWS_AS(st.breaker_claim_elements({{0, 1}, {0, 1}}), BoxFull);
    st.breaker_claim_elements({{0, 1}, {1, 2}});
    CHECK(st.total_breaker() == 6);
}

TEST_CASE("accounting invariant") {
    Rng rng(5);
    MinBoxState st(20, 8, 0.75, 4);
    int64_t claimed = 0;
    for (int r = 0; r < 200; ++r) {
        int64_t budget = (int64_t)rng.below(5);
        std::vector<std::pair<int, int64_t>> alloc;
        for (int64_t k = 0; k < budget; ++k) {
            int i = rng.below_int(20);
            if (st.box(i).w_M + st.box(i).w_B < st.box(i).size &&
                !std::count_if(alloc.begin(), alloc.end(),
                               [&](auto& p) { return p.first == i; }))
                alloc.push_back({i, 1});
        }
        for (auto& [i, c] : alloc) claimed += c;
        st.breaker_claim_elements(alloc);
        if (!st.maker_move_max_danger()) break;
    }
    CHECK(st.total_breaker() == claimed);
    int64_t sum_M = 0, sum_B = 0;
    for (int i = 0; i < 20; ++i) {
        sum_M += st.box(i).w_M;
        sum_B += st.box(i).w_B;
        CHECK(st.box(i).w_M + st.box(i).w_B <= st.box(i).size);
    }
    CHECK(sum_M == st.total_maker());
    CHECK(sum_B == st.total_breaker());
}

TEST_CASE("heap agrees with the naive argmax") {
    for (uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
        Rng rng(seed);
        MinBoxState st(50, 12, 0.6, 5);
        for (int r = 0; r < 400; ++r) {
            int64_t budget = (int64_t)rng.below(6);
            std::vector<std::pair<int, int64_t>> alloc;
            std::vector<int64_t> used(50, 0);
            while (budget > 0) {
                int i = rng.below_int(50);
                int64_t room = st.box(i).size - st.box(i).w_M -
                               st.box(i).w_B - used[i];
                if (room <= 0) { --budget; continue; }
                int64_t c = std::min(budget, rng.coin(0.5) ? room : 1);
                alloc.push_back({i, c});
                used[i] += c;
                budget -= c;
                if (budget > 0 && rng.coin(0.3)) break;
            }
            st.breaker_claim_elements(alloc);
            auto expect = naive_max_danger(st);
            auto got = st.maker_move_max_danger();
            REQUIRE(got == expect);
            if (!got) break;
            // max_active_danger dominates every currently active box
            bool any = false;
            int64_t m = INT64_MIN;
            for (int i = 0; i < st.n(); ++i)
                if (st.active(i)) { any = true; m = std::max(m, st.dang(i)); }
            if (any) CHECK(st.max_active_danger() >= m);
        }
    }
}

TEST_CASE("danger bound holds under fuzzed schedules") {
    for (int bias : {1, 10}) {
        auto rep = minbox_fuzz(100, 40, 0.5, bias, 300, 50, 77 + bias);
        CHECK(rep.violations == 0);
        CHECK((double)rep.max_danger <= bias * (std::log(100.0) + 1.0));
        CHECK(rep.maker_moves > 0);
        CHECK(rep.to_json().find("\"violations\":0") != std::string::npos);
    }
    auto big = minbox_fuzz(10000, 16, 0.5, 100, 100, 5, 9);
    CHECK(big.violations == 0);
}
