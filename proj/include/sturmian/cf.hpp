#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sturmian/quadratic.hpp"

namespace sturmian {

// Continued fraction expansion [0; a1, a2, ...] of a number in (0, 1].
// Three sources: a finite list (rational value), an eventually periodic list
// (quadratic irrational), or a deterministic generator with a known upper
// bound on the partial quotients.
class CFExpansion {
  public:
    enum class Kind { Finite, Periodic, Bounded };

    static CFExpansion finite(std::vector<unsigned long> quotients);
    static CFExpansion periodic(std::vector<unsigned long> preperiod,
                                std::vector<unsigned long> period);
    static CFExpansion bounded(std::function<unsigned long(size_t)> quotient_fn,
                               unsigned long bound, std::string description);

    // Partial quotient a_k, k >= 1. Throws SourceExhausted past the end of a
    // finite expansion.
    unsigned long quotient(size_t k) const;
    bool has_quotient(size_t k) const;

    Kind kind() const { return kind_; }
    bool is_periodic() const { return kind_ == Kind::Periodic; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    size_t finite_length() const;  // Finite only
    const std::vector<unsigned long>& preperiod() const { return pre_; }
    const std::vector<unsigned long>& period() const { return period_; }
    // Largest possible partial quotient (exact for finite/periodic).
    unsigned long bound() const;

    // Exact value. Finite -> rational, periodic -> quadratic irrational,
    // bounded -> DomainError.
    QuadraticNumber value() const;

    // Literal syntax: "[0;1,2,3]", "[0;1,(2,3)]" (parenthesised period),
    // or "quad:(a,b,c,d)" for (a + b*sqrt(d))/c reduced to its expansion.
    static CFExpansion parse(const std::string& text);
    std::string str() const;

  private:
    CFExpansion() = default;

    Kind kind_ = Kind::Finite;
    std::vector<unsigned long> pre_;
    std::vector<unsigned long> period_;  // Periodic only, nonempty
    std::function<unsigned long(size_t)> fn_;
    unsigned long bound_ = 0;
    std::string descr_;
};

struct Convergent {
    mpz_class p, q;
};

// Convergents p_k/q_k for k = 0..k_max (p_0/q_0 = 0/1,
// q_k = a_k q_{k-1} + q_{k-2} with q_{-1} = 0).
std::vector<Convergent> convergents(const CFExpansion& cf, size_t k_max);

// The interval with endpoints p_k/q_k and p_{k+1}/q_{k+1}, returned in
// ascending order. Its width is 1/(q_k q_{k+1}).
std::pair<mpq_class, mpq_class> eval_bracket(const CFExpansion& cf, size_t k);

// Expansion of a quadratic irrational in (0, 1); always eventually periodic.
CFExpansion quadratic_to_cf(const QuadraticNumber& x);

// [1; 1 + a_k, a_{k-1}, ..., a_1] for k >= 1. Satisfies
// mirror_value(cf, k) = 1 + q_{k-1} / (q_k + q_{k-1}).
mpq_class mirror_value(const CFExpansion& cf, size_t k);

// Value of the purely periodic expansion [0; overline(c_1, ..., c_p)].
QuadraticNumber periodic_cf_value(const std::vector<unsigned long>& period);

struct MinSpectrumResult {
    bool exact = false;
    QuadraticNumber value;              // meaningful when exact
    double estimate = 0.0;              // always set
    mpq_class estimate_rational;        // numeric path: min over the window
    size_t window_lo = 0, window_hi = 0;  // numeric path: k range scanned
    std::vector<QuadraticNumber> class_limits;  // exact path: one per residue class
};

// Smallest accumulation point of mirror_value(cf, k) as k grows: exact for
// periodic expansions, otherwise a windowed numeric estimate over
// k in [window_lo, window_hi].
MinSpectrumResult min_spectrum(const CFExpansion& cf, size_t window_lo = 10,
                               size_t window_hi = 60);

}  // namespace sturmian
