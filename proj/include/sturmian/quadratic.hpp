#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace sturmian {

// Exact element of a real quadratic field (or of Q): (a + b*sqrt(d)) / c
// with integers a, b, c (c > 0), d squarefree and >= 2 whenever b != 0.
// Rationals are stored with b == 0, d == 0. All arithmetic is exact; mixing
// two values with different nonzero d is a domain error.
class QuadraticNumber {
  public:
    QuadraticNumber() : a_(0), b_(0), c_(1), d_(0) {}
    QuadraticNumber(const mpz_class& integer) : a_(integer), b_(0), c_(1), d_(0) {}
    QuadraticNumber(long integer) : a_(integer), b_(0), c_(1), d_(0) {}
    QuadraticNumber(const mpq_class& r)
        : a_(r.get_num()), b_(0), c_(r.get_den()), d_(0) {}

    // (a + b*sqrt(d)) / c; d need not be squarefree, the square part of d is
    // folded into b during canonicalisation. Requires c != 0 and d >= 0.
    QuadraticNumber(mpz_class a, mpz_class b, mpz_class c, mpz_class d);

    // sqrt(d) for a non-square positive integer d.
    static QuadraticNumber sqrt_of(const mpz_class& d);
    // (sqrt(5) - 1) / 2, the golden slope.
    static QuadraticNumber golden();

    const mpz_class& a() const { return a_; }
    const mpz_class& b() const { return b_; }
    const mpz_class& c() const { return c_; }
    const mpz_class& d() const { return d_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    // Requires is_rational().
    mpq_class as_rational() const;

    QuadraticNumber operator-() const;
    QuadraticNumber operator+(const QuadraticNumber& o) const;
    QuadraticNumber operator-(const QuadraticNumber& o) const;
    QuadraticNumber operator*(const QuadraticNumber& o) const;
    QuadraticNumber operator/(const QuadraticNumber& o) const;
    QuadraticNumber inverse() const;
    // Galois conjugate (a - b*sqrt(d)) / c.
    QuadraticNumber conjugate() const;

    int sign() const;
    // Exact comparison; both sides must live in the same field (or be rational).
    int compare(const QuadraticNumber& o) const;
    bool operator==(const QuadraticNumber& o) const;
    bool operator!=(const QuadraticNumber& o) const { return !(*this == o); }
    bool operator<(const QuadraticNumber& o) const { return compare(o) < 0; }
    bool operator<=(const QuadraticNumber& o) const { return compare(o) <= 0; }
    bool operator>(const QuadraticNumber& o) const { return compare(o) > 0; }
    bool operator>=(const QuadraticNumber& o) const { return compare(o) >= 0; }

    // Exact floor (largest integer <= value).
    mpz_class floor() const;
    mpz_class ceil() const;

    double to_double() const;
    // Fixed-point decimal string, correctly rounded to `digits` fractional digits.
    std::string decimal(int digits = 6) const;
    // "(a+b*sqrt(d))/c" exact form.
    std::string str() const;

  private:
    void canonicalize();

    mpz_class a_, b_, c_, d_;
};

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x);

// Largest square factor extraction: n = s^2 * f with f squarefree (n > 0).
// Returns {s, f}. Falls back to leaving a non-squarefree remainder only if a
// prime factor above the trial-division bound appears squared, which cannot
// happen for inputs produced by this library's period discriminants.
struct SquareSplit {
    mpz_class root;       // s
    mpz_class squarefree; // f
};
SquareSplit split_square(const mpz_class& n);

}  // namespace sturmian
