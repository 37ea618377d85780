#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sturmian/cf.hpp"
#include "sturmian/quadratic.hpp"
#include "sturmian/words.hpp"

namespace sturmian {

enum class Case { I, II, III };

const char* case_name(Case c);  // "i" / "ii" / "iii"
Case case_from_name(const std::string& s);

// Classification of a word at one level: x = W_k M_k M~_k... with W_k a
// nonempty suffix of M_k (case i) or of M_{k-1} (case iii), or
// x = W_k M_{k-1} M_k M~_k... with W_k a nonempty suffix of M_k (case ii).
struct LevelState {
    size_t k = 0;
    Case c = Case::I;
    mpz_class w_len;  // |W_k|
    mpz_class q_k, q_km1;
    // Multiplicity of the (i)->(i)/(ii) step leaving this level, when known.
    std::optional<unsigned long> t;
};

// A locating chain: cases at levels 1, 2, ..., with the annotations needed to
// reconstruct the word (t at each (i)->(i)/(ii) step; |W_1|). Optionally
// eventually periodic: cases[period_begin..] repeat forever.
struct Chain {
    std::vector<Case> cases;             // level k = index + 1
    std::map<size_t, unsigned long> t;   // keyed by the level of the (i)
    size_t w1_len = 1;
    static constexpr size_t kNoPeriod = static_cast<size_t>(-1);
    size_t period_begin = kNoPeriod;     // 0-based index into cases

    bool has_period() const { return period_begin != kNoPeriod; }
    size_t period_length() const { return cases.size() - period_begin; }
    // Case/annotation at level k >= 1, extending periodically when possible.
    Case case_at(size_t k) const;
    std::optional<unsigned long> t_at(size_t k) const;
};

// Golden-slope (all a_k = 1) chains: words over {a, b} with a = (i)(iii) and
// b = (ii), plus an optional leading level-1 (iii) outside the alphabet.
struct GoldenChain {
    bool leading_iii = false;
    std::string letters;         // finite part, over 'a'/'b'
    std::string period_letters;  // repeated forever; empty = finite chain
};

// Literal: "[(iii)] (a|b|a<n>|b<n>)* [ ( ... ) ]", e.g. "bab(b2a2)".
GoldenChain parse_golden_chain(const std::string& literal);
std::string format_golden_chain(const GoldenChain& g);
Chain golden_to_chain(const GoldenChain& g);
GoldenChain chain_to_golden(const Chain& chain);  // DomainError if not golden-shaped

// Decide the unique case/W_k of x at level k (requires about 3q_k + 2q_{k-1}
// letters). Throws NotSturmianError when no candidate matches,
// ConsistencyError if several do.
LevelState classify_level(WordStream x, StandardWordTable& table, size_t k);

struct ChainResult {
    Chain chain;
    std::vector<LevelState> states;  // levels 1..K
};

// Classify levels 1..K and validate every transition against the rules:
//   (i)->(i)/(ii):  w_{k+1} = w_k + t q_k + q_{k-1}, 1 <= t <= a_{k+1}-1
//   (i)->(iii), (iii)->(i)/(ii): w_{k+1} = w_k
//   (ii)->(i)/(ii): w_{k+1} = w_k + q_{k-1}
// Any other pair or width is a ConsistencyError.
ChainResult chain_of(WordStream x, const CFExpansion& cf, size_t K);

// LevelStates implied by a chain, without building any word (w_len by the
// recurrences above). Validates the chain against the slope.
std::vector<LevelState> states_from_chain(const CFExpansion& cf, const Chain& chain, size_t K);

// The unique word with the given chain (lazily grown; a finite chain throws
// InsufficientData past the prefix it determines).
WordStream synthesize(const CFExpansion& cf, const Chain& chain);

// Tags for predicted lambda elements: L1..L6 are the six two-level patterns
// (i)(i), (i)(ii), (i)(iii)(i), (i)(iii)(ii), (ii)(i), (ii)(ii); golden
// chains use only L3..L6. Boundary marks the level-1 (iii) special interval.
enum class LambdaTag { L1, L2, L3, L4, L5, L6, Boundary };

struct LambdaElement {
    mpz_class n;
    LambdaTag tag;
    size_t level;  // k of the pattern that produced it
};

struct LambdaPrediction {
    std::vector<LambdaElement> elements;  // sorted, deduplicated
    mpz_class lo, hi;                     // interval certified covered
};

// Lambda(x) on the interval the states determine. States must start at
// level 1 and be transition-valid (as produced by chain_of/states_from_chain).
LambdaPrediction predict_lambda(const std::vector<LevelState>& states, const CFExpansion& cf);

// Run-length view of a golden chain: c-prefix, a-chain lengths m_i, b-chain
// lengths l_j, and the (b^2 a^2)^e b a decomposition when the tail matches.
struct GoldenChainStats {
    std::string c_prefix;  // includes "(iii)" when present
    std::vector<size_t> m, l;
    std::optional<std::vector<size_t>> e;
};

GoldenChainStats chain_stats(const GoldenChain& g);

// Exact rep of a word whose golden chain is eventually periodic, as an
// element of Q(sqrt 5). Single-letter periods give 1 + phi; otherwise the
// minimum over the period's junction limits (patterns a->b and b->a), using
// the exact fixed point of the |W_k|/q_k recurrence along one period.
QuadraticNumber rep_exact_periodic_golden(const GoldenChain& g);

}  // namespace sturmian
