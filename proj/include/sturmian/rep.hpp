#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "sturmian/words.hpp"

namespace sturmian {

// Repetition profile of a word: r[n] is the length of the shortest prefix in
// which some length-n factor occurs twice (second occurrence ending at r[n],
// an earlier one starting at position <= r[n] - n).
struct RepProfile {
    size_t N = 0;                   // r computed for 1 <= n <= N
    std::vector<int64_t> r;         // r[n], index 0 unused
    std::vector<int64_t> lambda;    // ordered n with r(n) = 2n + 1
    std::vector<mpq_class> ratios;  // n_i / n_{i+1} over consecutive lambda elements
    size_t prefix_len = 0;          // letters consumed

    bool in_lambda(size_t n) const { return r[n] == 2 * static_cast<int64_t>(n) + 1; }
};

// Direct-definition evaluation of r(n, w): scan windows left to right and
// return the end of the first repeated one. Exact but O(|w| n); intended as a
// per-point oracle.
int64_t r_naive(const FiniteWord& w, size_t n);

// All of r(1..N) on a finite word via the longest-repeated-suffix function
// l(m) computed by a quadratic common-suffix recurrence (O(|w|^2) time,
// O(|w|) space). Reference oracle for r_profile.
std::vector<int64_t> r_oracle_all(const FiniteWord& w, size_t N);

// Longest-repeated-suffix values l(1..|w|) by the same quadratic recurrence.
std::vector<int64_t> repeated_suffix_oracle(const FiniteWord& w);

// Full profile via an online suffix automaton: r(n) = min{m : l(m) >= n}.
// Consumes stream letters lazily; hard cap of 64*N letters (Sturmian words
// need at most 2N + 1).
RepProfile r_profile(WordStream x, size_t N);

struct RepEstimate {
    mpq_class estimate;           // min of 1 + n_i/n_{i+1} in the tail window
    double value = 0.0;           // decimal rendering of estimate
    std::vector<mpq_class> detail;  // all windowed 1 + n_i/n_{i+1}
    double error_bar = 0.0;  // max(spread of last <= 5 ratios, last - min)
    size_t window_begin = 0;      // index of first lambda element used
};

// Tail-window liminf estimate of rep(x) = liminf(1 + n_i/n_{i+1}): minimum
// over the trailing `window` fraction of the consecutive-element ratios (at
// least two ratios). Needs >= 4 lambda elements.
RepEstimate rep_estimate(const RepProfile& profile, double window = 0.2);

}  // namespace sturmian
