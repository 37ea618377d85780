#include "sturmian/quadratic.hpp"

#include <ostream>

#include "sturmian/errors.hpp"

namespace sturmian {

namespace {

// floor(sqrt(n)) for n >= 0.
mpz_class isqrt(const mpz_class& n) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const mpz_class& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

}  // namespace

SquareSplit split_square(const mpz_class& n) {
    if (n <= 0) throw DomainError("split_square: argument must be positive");
    mpz_class rem = n;
    mpz_class root = 1;
    for (mpz_class p = 2; p * p <= rem && p < 1000000; ++p) {
        mpz_class p2 = p * p;
        while (mpz_divisible_p(rem.get_mpz_t(), p2.get_mpz_t())) {
            rem /= p2;
            root *= p;
        }
    }
    if (is_square(rem)) {
        root *= isqrt(rem);
        rem = 1;
    }
    return {root, rem};
}

QuadraticNumber::QuadraticNumber(mpz_class a, mpz_class b, mpz_class c, mpz_class d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (c_ == 0) throw DomainError("QuadraticNumber: zero denominator");
    if (d_ < 0) throw DomainError("QuadraticNumber: negative radicand");
    canonicalize();
}

void QuadraticNumber::canonicalize() {
    if (d_ == 0) {
        b_ = 0;
    } else if (d_ == 1) {
        a_ += b_;
        b_ = 0;
        d_ = 0;
    } else if (b_ == 0) {
        d_ = 0;
    } else {
        SquareSplit s = split_square(d_);
        if (s.root != 1) {
            b_ *= s.root;
            d_ = s.squarefree;
        }
        if (d_ == 1) {
            a_ += b_;
            b_ = 0;
            d_ = 0;
        }
    }
    if (c_ < 0) {
        c_ = -c_;
        a_ = -a_;
        b_ = -b_;
    }
    mpz_class g = gcd(gcd(a_, b_), c_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
    }
}

QuadraticNumber QuadraticNumber::sqrt_of(const mpz_class& d) {
    if (d <= 0 || is_square(d))
        throw DomainError("sqrt_of: need a positive non-square integer");
    return QuadraticNumber(0, 1, 1, d);
}

QuadraticNumber QuadraticNumber::golden() { return QuadraticNumber(-1, 1, 2, 5); }

mpq_class QuadraticNumber::as_rational() const {
    if (!is_rational()) throw DomainError("as_rational: value is irrational");
    mpq_class q(a_, c_);
    q.canonicalize();
    return q;
}

QuadraticNumber QuadraticNumber::operator-() const {
    QuadraticNumber r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
}

QuadraticNumber QuadraticNumber::conjugate() const {
    QuadraticNumber r = *this;
    r.b_ = -r.b_;
    return r;
}

QuadraticNumber QuadraticNumber::operator+(const QuadraticNumber& o) const {
    mpz_class d = d_;
    if (d_ != 0 && o.d_ != 0 && d_ != o.d_)
        throw DomainError("QuadraticNumber: mixing distinct quadratic fields");
    if (d == 0) d = o.d_;
    return QuadraticNumber(a_ * o.c_ + o.a_ * c_, b_ * o.c_ + o.b_ * c_, c_ * o.c_, d);
}

QuadraticNumber QuadraticNumber::operator-(const QuadraticNumber& o) const {
    return *this + (-o);
}

QuadraticNumber QuadraticNumber::operator*(const QuadraticNumber& o) const {
    mpz_class d = d_;
    if (d_ != 0 && o.d_ != 0 && d_ != o.d_)
        throw DomainError("QuadraticNumber: mixing distinct quadratic fields");
    if (d == 0) d = o.d_;
    mpz_class rad = (d_ != 0 && o.d_ != 0) ? d_ : mpz_class(0);
    // (a1 + b1 s)(a2 + b2 s) = a1 a2 + b1 b2 d + (a1 b2 + a2 b1) s
    return QuadraticNumber(a_ * o.a_ + b_ * o.b_ * rad, a_ * o.b_ + o.a_ * b_,
                           c_ * o.c_, d);
}

QuadraticNumber QuadraticNumber::inverse() const {
    if (is_zero()) throw DomainError("QuadraticNumber: division by zero");
    // 1 / ((a + b s)/c) = c (a - b s) / (a^2 - b^2 d)
    mpz_class norm = a_ * a_ - b_ * b_ * d_;
    return QuadraticNumber(c_ * a_, -c_ * b_, norm, d_);
}

QuadraticNumber QuadraticNumber::operator/(const QuadraticNumber& o) const {
    return *this * o.inverse();
}

int QuadraticNumber::sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 against b^2 d; sign follows the larger side.
    int big = cmp(a_ * a_, b_ * b_ * d_);
    if (big == 0) return 0;  // cannot happen for squarefree d >= 2, b != 0
    return big > 0 ? sa : sb;
}

int QuadraticNumber::compare(const QuadraticNumber& o) const {
    return (*this - o).sign();
}

bool QuadraticNumber::operator==(const QuadraticNumber& o) const {
    return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

mpz_class QuadraticNumber::floor() const {
    if (b_ == 0) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a_.get_mpz_t(), c_.get_mpz_t());
        return q;
    }
    // floor(b sqrt(d)): d squarefree >= 2, so b sqrt(d) is irrational.
    mpz_class s = isqrt(b_ * b_ * d_);
    if (b_ < 0) s = -s - 1;
    // a + b sqrt(d) lies strictly inside (a + s, a + s + 1).
    mpz_class q;
    mpz_class num = a_ + s;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), c_.get_mpz_t());
    return q;
}

mpz_class QuadraticNumber::ceil() const { return -((-*this).floor()); }

double QuadraticNumber::to_double() const {
    mpf_class v(0, 192);
    if (b_ != 0) {
        mpf_class s(d_, 192);
        mpf_sqrt(s.get_mpf_t(), s.get_mpf_t());
        v = mpf_class(b_, 192) * s;
    }
    v += mpf_class(a_, 192);
    v /= mpf_class(c_, 192);
    return v.get_d();
}

std::string QuadraticNumber::decimal(int digits) const {
    if (digits < 0) throw DomainError("decimal: negative digit count");
    size_t bits = mpz_sizeinbase(a_.get_mpz_t(), 2) + mpz_sizeinbase(b_.get_mpz_t(), 2) +
                  mpz_sizeinbase(c_.get_mpz_t(), 2) + 4 * digits + 96;
    mpf_class v(0, bits);
    if (b_ != 0) {
        mpf_class s(d_, bits);
        mpf_sqrt(s.get_mpf_t(), s.get_mpf_t());
        v = mpf_class(b_, bits) * s;
    }
    v += mpf_class(a_, bits);
    v /= mpf_class(c_, bits);
    bool neg = v < 0;
    if (neg) v = -v;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    v *= mpf_class(scale, bits);
    v += 0.5;
    mpz_class scaled;
    mpz_set_f(scaled.get_mpz_t(), v.get_mpf_t());  // truncates toward zero
    mpz_class ip = scaled / scale, fp = scaled % scale;
    std::string frac = fp.get_str();
    if (frac.size() < static_cast<size_t>(digits))
        frac.insert(0, static_cast<size_t>(digits) - frac.size(), '0');
    std::string out = ip.get_str();
    if (digits > 0) out += "." + frac;
    if (neg && (ip != 0 || fp != 0)) out.insert(0, "-");
    return out;
}

std::string QuadraticNumber::str() const {
    if (is_rational()) {
        if (c_ == 1) return a_.get_str();
        return a_.get_str() + "/" + c_.get_str();
    }
    std::string s = "(" + a_.get_str();
    s += (b_ >= 0 ? "+" : "-");
    mpz_class ab = abs(b_);
    if (ab != 1) s += ab.get_str() + "*";
    s += "sqrt(" + d_.get_str() + "))";
    if (c_ != 1) s += "/" + c_.get_str();
    return s;
}

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x) {
    return os << x.str();
}

}  // namespace sturmian
