#include "sturmian/cf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <tuple>

#include "sturmian/errors.hpp"

namespace sturmian {

namespace {

void check_quotients(const std::vector<unsigned long>& v, const char* what) {
    for (unsigned long a : v)
        if (a == 0) throw DomainError(std::string(what) + ": partial quotients must be >= 1");
}

}  // namespace

CFExpansion CFExpansion::finite(std::vector<unsigned long> quotients) {
    if (quotients.empty()) throw DomainError("CFExpansion::finite: empty expansion");
    check_quotients(quotients, "CFExpansion::finite");
    CFExpansion cf;
    cf.kind_ = Kind::Finite;
    cf.pre_ = std::move(quotients);
    return cf;
}

CFExpansion CFExpansion::periodic(std::vector<unsigned long> preperiod,
                                  std::vector<unsigned long> period) {
    if (period.empty()) throw DomainError("CFExpansion::periodic: empty period");
    check_quotients(preperiod, "CFExpansion::periodic");
    check_quotients(period, "CFExpansion::periodic");
    CFExpansion cf;
    cf.kind_ = Kind::Periodic;
    cf.pre_ = std::move(preperiod);
    cf.period_ = std::move(period);
    return cf;
}

CFExpansion CFExpansion::bounded(std::function<unsigned long(size_t)> quotient_fn,
                                 unsigned long bound, std::string description) {
    if (!quotient_fn) throw DomainError("CFExpansion::bounded: null generator");
    if (bound == 0) throw DomainError("CFExpansion::bounded: bound must be >= 1");
    CFExpansion cf;
    cf.kind_ = Kind::Bounded;
    cf.fn_ = std::move(quotient_fn);
    cf.bound_ = bound;
    cf.descr_ = std::move(description);
    return cf;
}

unsigned long CFExpansion::quotient(size_t k) const {
    if (k == 0) throw DomainError("CFExpansion::quotient: index starts at 1");
    switch (kind_) {
        case Kind::Finite:
            if (k > pre_.size())
                throw SourceExhausted("CFExpansion::quotient: finite expansion has " +
                                      std::to_string(pre_.size()) + " quotients");
            return pre_[k - 1];
        case Kind::Periodic:
            if (k <= pre_.size()) return pre_[k - 1];
            return period_[(k - 1 - pre_.size()) % period_.size()];
        case Kind::Bounded: {
            unsigned long a = fn_(k);
            if (a == 0 || a > bound_)
                throw DomainError("CFExpansion::quotient: generator value out of [1, bound]");
            return a;
        }
    }
    throw DomainError("CFExpansion::quotient: bad kind");
}

bool CFExpansion::has_quotient(size_t k) const {
    if (k == 0) return false;
    return kind_ != Kind::Finite || k <= pre_.size();
}

size_t CFExpansion::finite_length() const {
    if (kind_ != Kind::Finite)
        throw DomainError("CFExpansion::finite_length: expansion is infinite");
    return pre_.size();
}

unsigned long CFExpansion::bound() const {
    unsigned long b = 0;
    switch (kind_) {
        case Kind::Finite:
            for (unsigned long a : pre_) b = std::max(b, a);
            return b;
        case Kind::Periodic:
            for (unsigned long a : pre_) b = std::max(b, a);
            for (unsigned long a : period_) b = std::max(b, a);
            return b;
        case Kind::Bounded:
            return bound_;
    }
    return 0;
}

QuadraticNumber CFExpansion::value() const {
    switch (kind_) {
        case Kind::Finite: {
            mpq_class v(quotient(pre_.size()));
            for (size_t i = pre_.size(); i-- > 1;) v = quotient(i) + 1 / v;
            return QuadraticNumber(mpq_class(1) / v);
        }
        case Kind::Periodic: {
            QuadraticNumber tail = periodic_cf_value(period_);
            QuadraticNumber v = tail;
            for (size_t i = pre_.size(); i-- > 0;)
                v = (QuadraticNumber(mpz_class(pre_[i])) + v).inverse();
            return v;
        }
        case Kind::Bounded:
            throw DomainError("CFExpansion::value: bounded-stream expansion has no closed form");
    }
    throw DomainError("CFExpansion::value: bad kind");
}

std::vector<Convergent> convergents(const CFExpansion& cf, size_t k_max) {
    std::vector<Convergent> out;
    out.reserve(k_max + 1);
    mpz_class pm1 = 1, qm1 = 0;  // p_{-1}/q_{-1}
    mpz_class p = 0, q = 1;      // p_0/q_0
    out.push_back({p, q});
    for (size_t k = 1; k <= k_max; ++k) {
        mpz_class a(cf.quotient(k));
        mpz_class pn = a * p + pm1, qn = a * q + qm1;
        pm1 = p;
        qm1 = q;
        p = pn;
        q = qn;
        out.push_back({p, q});
    }
    return out;
}

std::pair<mpq_class, mpq_class> eval_bracket(const CFExpansion& cf, size_t k) {
    auto cv = convergents(cf, k + 1);
    mpq_class lo(cv[k].p, cv[k].q), hi(cv[k + 1].p, cv[k + 1].q);
    lo.canonicalize();
    hi.canonicalize();
    if (hi < lo) std::swap(lo, hi);
    return {lo, hi};
}

QuadraticNumber periodic_cf_value(const std::vector<unsigned long>& period) {
    if (period.empty()) throw DomainError("periodic_cf_value: empty period");
    check_quotients(period, "periodic_cf_value");
    // Convergents of the single-period finite expansion.
    mpz_class pm1 = 1, qm1 = 0, p = 0, q = 1;
    for (unsigned long c : period) {
        mpz_class a(c);
        mpz_class pn = a * p + pm1, qn = a * q + qm1;
        pm1 = p;
        qm1 = q;
        p = pn;
        q = qn;
    }
    // x = (p + x*pm1) / (q + x*qm1)  =>  qm1 x^2 + (q - pm1) x - p = 0.
    mpz_class bq = q - pm1;
    mpz_class disc = bq * bq + 4 * qm1 * p;
    return QuadraticNumber(-bq, 1, 2 * qm1, disc);
}

CFExpansion quadratic_to_cf(const QuadraticNumber& x) {
    if (x.is_rational())
        throw DomainError("quadratic_to_cf: value is rational, expansion not unique");
    if (x.sign() <= 0 || x >= QuadraticNumber(1))
        throw DomainError("quadratic_to_cf: value must lie in (0, 1)");
    std::vector<unsigned long> quotients;
    std::map<std::tuple<mpz_class, mpz_class, mpz_class>, size_t> seen;
    QuadraticNumber y = x;
    for (;;) {
        // y is the current irrational tail in (0, 1); canonical form keys the state.
        auto key = std::make_tuple(y.a(), y.b(), y.c());
        auto [it, fresh] = seen.emplace(key, quotients.size());
        if (!fresh) {
            size_t start = it->second;
            std::vector<unsigned long> pre(quotients.begin(), quotients.begin() + start);
            std::vector<unsigned long> per(quotients.begin() + start, quotients.end());
            return CFExpansion::periodic(std::move(pre), std::move(per));
        }
        QuadraticNumber z = y.inverse();
        mpz_class a = z.floor();
        if (a < 1 || !a.fits_ulong_p())
            throw DomainError("quadratic_to_cf: partial quotient out of range");
        quotients.push_back(a.get_ui());
        y = z - QuadraticNumber(a);
    }
}

mpq_class mirror_value(const CFExpansion& cf, size_t k) {
    if (k == 0) throw DomainError("mirror_value: level starts at 1");
    mpq_class r;
    if (k == 1) {
        r = mpq_class(1 + cf.quotient(1));
    } else {
        r = mpq_class(cf.quotient(1));
        for (size_t i = 2; i < k; ++i) r = cf.quotient(i) + 1 / r;
        r = (1 + cf.quotient(k)) + 1 / r;
    }
    mpq_class v = 1 + 1 / r;
    v.canonicalize();
    return v;
}

MinSpectrumResult min_spectrum(const CFExpansion& cf, size_t window_lo, size_t window_hi) {
    MinSpectrumResult res;
    if (cf.is_finite())
        throw DomainError("min_spectrum: slope must be irrational (infinite expansion)");
    if (cf.is_periodic()) {
        size_t s = cf.preperiod().size();
        size_t p = cf.period().size();
        // Limit of [0; a_k, a_{k-1}, ..., a_1] along k in a fixed residue class
        // mod p: the purely periodic expansion of the reversed window.
        res.exact = true;
        bool first = true;
        for (size_t r = 0; r < p; ++r) {
            size_t k = s + p + r;  // representative deep in the periodic part
            std::vector<unsigned long> rev(p);
            for (size_t i = 0; i < p; ++i) rev[i] = cf.quotient(k - i);
            QuadraticNumber eta = periodic_cf_value(rev);
            QuadraticNumber lim =
                QuadraticNumber(1) + eta / (QuadraticNumber(1) + eta);
            res.class_limits.push_back(lim);
            if (first || lim < res.value) {
                res.value = lim;
                first = false;
            }
        }
        res.estimate = res.value.to_double();
        return res;
    }
    // Bounded stream: scan a window of levels.
    if (window_lo == 0 || window_hi < window_lo)
        throw DomainError("min_spectrum: bad window");
    res.window_lo = window_lo;
    res.window_hi = window_hi;
    bool first = true;
    for (size_t k = window_lo; k <= window_hi; ++k) {
        mpq_class m = mirror_value(cf, k);
        if (first || m < res.estimate_rational) {
            res.estimate_rational = m;
            first = false;
        }
    }
    res.estimate = res.estimate_rational.get_d();
    return res;
}

// ---------------------------------------------------------------------------
// Literal parsing / formatting

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw ParseError("expected '" + std::string(1, c) + "' at offset " +
                             std::to_string(i) + " in \"" + s + "\"");
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    mpz_class integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw ParseError("expected integer at offset " + std::to_string(start) +
                             " in \"" + s + "\"");
        return mpz_class(s.substr(start, i - start));
    }
    unsigned long positive() {
        mpz_class v = integer();
        if (v <= 0 || !v.fits_ulong_p()) throw ParseError("quotient out of range in \"" + s + "\"");
        return v.get_ui();
    }
};

}  // namespace

CFExpansion CFExpansion::parse(const std::string& text) {
    Cursor c{text};
    c.skip_ws();
    if (text.compare(c.i, 5, "quad:") == 0) {
        c.i += 5;
        c.expect('(');
        mpz_class a = c.integer();
        c.expect(',');
        mpz_class b = c.integer();
        c.expect(',');
        mpz_class cc = c.integer();
        c.expect(',');
        mpz_class d = c.integer();
        c.expect(')');
        if (!c.done()) throw ParseError("trailing characters in \"" + text + "\"");
        return quadratic_to_cf(QuadraticNumber(a, b, cc, d));
    }
    c.expect('[');
    mpz_class a0 = c.integer();
    if (a0 != 0) throw ParseError("expansion must start with [0; ...]");
    c.expect(';');
    std::vector<unsigned long> pre, per;
    bool in_period = false, closed_period = false;
    for (;;) {
        if (!in_period && c.eat('(')) in_period = true;
        (in_period ? per : pre).push_back(c.positive());
        if (in_period && c.eat(')')) {
            closed_period = true;
            break;
        }
        if (!c.eat(',')) break;
    }
    if (in_period && !closed_period) throw ParseError("unclosed period in \"" + text + "\"");
    c.expect(']');
    if (!c.done()) throw ParseError("trailing characters in \"" + text + "\"");
    if (in_period) return CFExpansion::periodic(std::move(pre), std::move(per));
    return CFExpansion::finite(std::move(pre));
}

std::string CFExpansion::str() const {
    if (kind_ == Kind::Bounded)
        return descr_.empty() ? std::string("[0;<bounded stream>]") : descr_;
    std::ostringstream os;
    os << "[0;";
    for (size_t i = 0; i < pre_.size(); ++i) os << (i ? "," : "") << pre_[i];
    if (kind_ == Kind::Periodic) {
        if (!pre_.empty()) os << ",";
        os << "(";
        for (size_t i = 0; i < period_.size(); ++i) os << (i ? "," : "") << period_[i];
        os << ")";
    }
    os << "]";
    return os.str();
}

}  // namespace sturmian
