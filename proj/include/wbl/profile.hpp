#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wbl {

// All numeric constants from the strategy analyses live here. "paper" uses
// the exact values, which presuppose large n; "scaled" shrinks thresholds
// so the strategies can be smoke-tested at small n (best-effort, no
// correctness guarantee at that scale).
struct ConstantsProfile {
    std::string name;

    // unbiased cycle strategy
    int stage_exit_untouched;   // leave Stage I/II when |U_t| <= this (120)
    int cycle_slack;            // entry cycle misses at most this many (125)
    double vt_degree_frac;      // V_t threshold d_B(v, touched) >= frac*n (1/11)
    double extend_degree_frac;  // low-degree threshold in extensions (1/10)
    int extend_round_budget;    // rounds per extension (25)
    int stage5_round_cap;       // total extension rounds (4000)
    int n_floor;                // smallest n the profile is meant for

    // low-diameter tree builder
    double star_div1;           // s1 = n / (star_div1 * b)   (200)
    double star_div2;           // s2 = n / (star_div2 * b)   (100)
    double stage2_exit_mult;    // |V_i| <= mult * c2 * b     (50)
    double stage2_dB_mult;      // d_B(z_i,V_i) <= mult*c2*b  (20)
    double stage3_stop_mult;    // |W_i| <= mult * b          (400)
    double stage3_z0_frac;      // d_F(z_0) >= frac * n       (10/11)
    double stage3_zi_frac;      // d_F(z_i) >= frac * n       (9/10)
    double stage3_dB_mult;      // d_B(z_i) <= mult * b       (100)
    double stage1_dB_cap;       // d_B(center) <= cap * n     (0.2)

    // true: the analysis claims are hard assertions; false: logged warnings
    bool hard_asserts;

    int vt_threshold(int n) const {
        return (int)std::ceil(vt_degree_frac * n);
    }
};

inline ConstantsProfile paper_profile() {
    return ConstantsProfile{
        .name = "paper",
        .stage_exit_untouched = 120,
        .cycle_slack = 125,
        .vt_degree_frac = 1.0 / 11.0,
        .extend_degree_frac = 1.0 / 10.0,
        .extend_round_budget = 25,
        .stage5_round_cap = 4000,
        .n_floor = 2000,
        .star_div1 = 200.0,
        .star_div2 = 100.0,
        .stage2_exit_mult = 50.0,
        .stage2_dB_mult = 20.0,
        .stage3_stop_mult = 400.0,
        .stage3_z0_frac = 10.0 / 11.0,
        .stage3_zi_frac = 9.0 / 10.0,
        .stage3_dB_mult = 100.0,
        .stage1_dB_cap = 0.2,
        .hard_asserts = true,
    };
}

// Thresholds tied to the untouched-set size scale with n/n_floor; the
// star-size divisors shrink by 10x so trees grow at a few hundred vertices.
inline ConstantsProfile scaled_profile(int n) {
    ConstantsProfile p = paper_profile();
    double s = std::clamp((double)n / p.n_floor, 0.004, 1.0);
    p.name = "scaled";
    p.stage_exit_untouched = std::max(8, (int)std::lround(120 * s));
    p.cycle_slack = p.stage_exit_untouched + 5;
    p.stage5_round_cap = std::max(200, (int)std::lround(4000 * s));
    p.extend_round_budget = 25;
    p.n_floor = 30;
    p.star_div1 = 20.0;
    p.star_div2 = 10.0;
    p.stage2_exit_mult = 5.0;
    p.stage3_stop_mult = 10.0;
    p.hard_asserts = false;
    return p;
}

inline ConstantsProfile make_profile(const std::string& name, int n) {
    if (name == "paper") return paper_profile();
    if (name == "scaled") return scaled_profile(n);
    throw std::invalid_argument("unknown constants profile: " + name);
}

} // namespace wbl
