#pragma once

#include <gmpxx.h>

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sturmian/cf.hpp"
#include "sturmian/quadratic.hpp"

namespace sturmian {

// Words over the alphabet {'0', '1'} are plain strings.
using FiniteWord = std::string;

struct StandardLevel {
    FiniteWord m;   // M_k
    FiniteWord mt;  // M~_k = M_k M_{k-1} minus the last two letters (k >= 1)
    FiniteWord d;   // D_k:  M_k M_{k-1} = M~_k D_k
    FiniteWord dp;  // D'_k: M_{k-1} M_k = M~_k D'_k
};

// Standard words of a slope: M_0 = "0", M_1 = 0^{a_1 - 1} 1,
// M_{k+1} = M_k^{a_{k+1}} M_{k-1}; |M_k| = q_k. Levels build lazily.
class StandardWordTable {
  public:
    explicit StandardWordTable(CFExpansion cf) : cf_(std::move(cf)) {}

    // Level k >= 0 (fields mt/d/dp empty at k = 0).
    const StandardLevel& level(size_t k);
    size_t q(size_t k);  // |M_k| without forcing huge copies beyond built levels
    const CFExpansion& cf() const { return cf_; }

  private:
    CFExpansion cf_;
    std::vector<StandardLevel> levels_;
};

// Lazily grown infinite (or long finite) word; copies share the cache.
class WordStream {
  public:
    // Grower extends the cache to at least `target` letters or throws.
    using Grower = std::function<void(std::string&, size_t target)>;

    WordStream(Grower grow, std::string description);

    static WordStream literal(FiniteWord word);
    // c_theta = lim M_k.
    static WordStream characteristic(const CFExpansion& cf);
    // x_n = floor((n+1)theta + rho) - floor(n theta + rho), n = 0, 1, 2, ...
    // (or the ceiling variant). theta irrational in (0,1), rho in the same field.
    static WordStream mechanical(const QuadraticNumber& theta, const QuadraticNumber& rho,
                                 bool ceil_variant = false);

    // Letters x_1..x_n as a view into the shared cache (valid until next growth).
    std::string_view prefix(size_t n);
    char at(size_t n);  // x_n, 1-based
    const std::string& description() const { return state_->descr; }
    size_t cached_length() const { return state_->cache.size(); }

  private:
    struct State {
        std::string cache;
        Grower grow;
        std::string descr;
    };
    std::shared_ptr<State> state_;
};

// Length-L prefixes as finite words.
FiniteWord mechanical_prefix(const QuadraticNumber& theta, const QuadraticNumber& rho,
                             bool ceil_variant, size_t L);
FiniteWord characteristic_prefix(const CFExpansion& cf, size_t L);

// Number of distinct length-n factors of w (1 <= n <= |w|).
size_t subword_complexity(const FiniteWord& w, size_t n);

struct SturmianNumber {
    mpq_class partial_sum;  // sum_{k=1..terms} x_k / b^k
    mpq_class error_bound;  // 1 / (b^terms (b-1))
};
SturmianNumber sturmian_number(WordStream w, unsigned long b, size_t terms);

}  // namespace sturmian
