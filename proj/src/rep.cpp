#include "sturmian/rep.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>
#include <unordered_map>

#include "sturmian/errors.hpp"

namespace sturmian {

int64_t r_naive(const FiniteWord& w, size_t n) {
    if (n == 0) throw DomainError("r_naive: n must be >= 1");
    if (n > w.size()) throw InsufficientData("r_naive: word shorter than n");
    // First start s (0-based) whose length-n window already occurred earlier;
    // then m = s + n (1-based end position).
    std::unordered_map<std::string_view, size_t> first;
    for (size_t s = 0; s + n <= w.size(); ++s) {
        std::string_view win(w.data() + s, n);
        auto [it, fresh] = first.emplace(win, s);
        if (!fresh) return static_cast<int64_t>(s + n);
    }
    throw InsufficientData("r_naive: no length-" + std::to_string(n) +
                           " repeat within " + std::to_string(w.size()) + " letters");
}

std::vector<int64_t> repeated_suffix_oracle(const FiniteWord& w) {
    size_t M = w.size();
    // l(m) = max_{j < m} (longest common suffix of w[1..m] and w[1..j]),
    // computed row by row: cur[j] = lcs(m, j).
    std::vector<int64_t> l(M + 1, 0);
    std::vector<int64_t> prev(M + 1, 0), cur(M + 1, 0);
    for (size_t m = 1; m <= M; ++m) {
        int64_t best = 0;
        for (size_t j = 1; j < m; ++j) {
            cur[j] = (w[m - 1] == w[j - 1]) ? prev[j - 1] + 1 : 0;
            if (cur[j] > best) best = cur[j];
        }
        l[m] = best;
        std::swap(prev, cur);
    }
    return l;
}

std::vector<int64_t> r_oracle_all(const FiniteWord& w, size_t N) {
    if (N == 0) throw DomainError("r_oracle_all: N must be >= 1");
    std::vector<int64_t> l = repeated_suffix_oracle(w);
    std::vector<int64_t> r(N + 1, 0);
    size_t n = 1;
    for (size_t m = 1; m <= w.size() && n <= N; ++m)
        while (n <= N && static_cast<int64_t>(n) <= l[m]) r[n++] = static_cast<int64_t>(m);
    if (n <= N)
        throw InsufficientData("r_oracle_all: r(" + std::to_string(n) +
                               ") unresolved within " + std::to_string(w.size()) + " letters");
    return r;
}

namespace {

// Suffix automaton over {0,1}; after each extension, len(link(last)) is the
// length of the longest suffix of the inserted prefix that also occurs
// ending strictly earlier.
class SuffixAutomaton {
  public:
    SuffixAutomaton() {
        states_.push_back({0, -1, {-1, -1}});  // root: length 0, no suffix link
        last_ = 0;
    }

    int64_t extend(char letter) {
        int c = letter - '0';
        int cur = static_cast<int>(states_.size());
        states_.push_back({states_[last_].len + 1, -1, {-1, -1}});
        int p = last_;
        while (p != -1 && states_[p].next[c] == -1) {
            states_[p].next[c] = cur;
            p = states_[p].link;
        }
        if (p == -1) {
            states_[cur].link = 0;
        } else {
            int q = states_[p].next[c];
            if (states_[p].len + 1 == states_[q].len) {
                states_[cur].link = q;
            } else {
                int clone = static_cast<int>(states_.size());
                State q_copy = states_[q];  // copy first: push_back may reallocate
                states_.push_back(q_copy);
                states_[clone].len = states_[p].len + 1;
                while (p != -1 && states_[p].next[c] == q) {
                    states_[p].next[c] = clone;
                    p = states_[p].link;
                }
                states_[q].link = clone;
                states_[cur].link = clone;
            }
        }
        last_ = cur;
        return states_[states_[cur].link].len;
    }

  private:
    struct State {
        int64_t len;
        int link;
        int next[2];
    };
    std::vector<State> states_;
    int last_;
};

}  // namespace

RepProfile r_profile(WordStream x, size_t N) {
    if (N == 0) throw DomainError("r_profile: N must be >= 1");
    RepProfile prof;
    prof.N = N;
    prof.r.assign(N + 1, 0);
    SuffixAutomaton sam;
    const size_t cap = 64 * N + 64;
    size_t next_n = 1;
    size_t m = 0;
    int64_t prev_l = 0;
    while (next_n <= N) {
        if (m >= cap)
            throw InsufficientData("r_profile: r(" + std::to_string(next_n) +
                                   ") unresolved within the 64*N letter cap");
        std::string_view pre = x.prefix(m + 1);
        ++m;
        int64_t l = sam.extend(pre[m - 1]);
        if (l > prev_l + 1)
            throw ConsistencyError("r_profile: repeated-suffix length jumped by more than 1");
        prev_l = l;
        while (next_n <= N && static_cast<int64_t>(next_n) <= l)
            prof.r[next_n++] = static_cast<int64_t>(m);
    }
    prof.prefix_len = m;
    for (size_t n = 1; n <= N; ++n)
        if (prof.in_lambda(n)) prof.lambda.push_back(static_cast<int64_t>(n));
    for (size_t i = 0; i + 1 < prof.lambda.size(); ++i) {
        mpq_class q(prof.lambda[i], prof.lambda[i + 1]);
        q.canonicalize();
        prof.ratios.push_back(q);
    }
    return prof;
}

RepEstimate rep_estimate(const RepProfile& profile, double window) {
    if (window <= 0.0 || window >= 1.0) throw DomainError("rep_estimate: window must be in (0,1)");
    // Keep only the trailing `window` fraction of the consecutive-element
    // ratios (at least two). Early ratios carry transients that a minimum
    // would latch onto; the liminf pattern recurs within the trailing ratios
    // because lambda elements grow geometrically.
    if (profile.lambda.size() < 4)
        throw InsufficientData("rep_estimate: need at least 3 lambda elements in the tail window");
    const size_t ratio_count = profile.lambda.size() - 1;
    size_t keep = static_cast<size_t>(std::ceil(window * static_cast<double>(ratio_count)));
    keep = std::min(std::max<size_t>(keep, 2), ratio_count);
    size_t skip = ratio_count - keep;
    RepEstimate est;
    est.window_begin = skip;
    for (size_t i = skip; i + 1 < profile.lambda.size(); ++i) {
        mpq_class ratio = 1 + mpq_class(profile.lambda[i], profile.lambda[i + 1]);
        ratio.canonicalize();
        if (est.detail.empty() || ratio < est.estimate) est.estimate = ratio;
        est.detail.push_back(ratio);
    }
    est.value = est.estimate.get_d();
    size_t tail = std::min<size_t>(5, est.detail.size());
    mpq_class lo = est.detail[est.detail.size() - tail], hi = lo;
    for (size_t i = est.detail.size() - tail; i < est.detail.size(); ++i) {
        lo = std::min(lo, est.detail[i]);
        hi = std::max(hi, est.detail[i]);
    }
    // The trailing spread misses a monotone transient whose minimum sits at
    // the front of the window; the min-vs-last gap covers that bias.
    est.error_bar = std::max(mpq_class(hi - lo).get_d(),
                             mpq_class(est.detail.back() - est.estimate).get_d());
    return est;
}

}  // namespace sturmian
