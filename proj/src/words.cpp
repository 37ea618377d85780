#include "sturmian/words.hpp"

#include <algorithm>

#include "sturmian/errors.hpp"

namespace sturmian {

const StandardLevel& StandardWordTable::level(size_t k) {
    while (levels_.size() <= k) {
        size_t next = levels_.size();
        StandardLevel lv;
        if (next == 0) {
            lv.m = "0";
        } else if (next == 1) {
            unsigned long a1 = cf_.quotient(1);
            lv.m.assign(a1 - 1, '0');
            lv.m += '1';
        } else {
            const std::string& mk = levels_[next - 1].m;
            const std::string& mk1 = levels_[next - 2].m;
            unsigned long a = cf_.quotient(next);
            lv.m.reserve(mk.size() * a + mk1.size());
            for (unsigned long i = 0; i < a; ++i) lv.m += mk;
            lv.m += mk1;
        }
        if (next >= 1) {
            const std::string& prev = levels_[next - 1].m;
            std::string fwd = lv.m + prev;   // M_k M_{k-1}
            std::string rev = prev + lv.m;   // M_{k-1} M_k
            lv.mt = fwd.substr(0, fwd.size() - 2);
            lv.d = fwd.substr(fwd.size() - 2);
            lv.dp = rev.substr(rev.size() - 2);
        }
        levels_.push_back(std::move(lv));
    }
    return levels_[k];
}

size_t StandardWordTable::q(size_t k) { return level(k).m.size(); }

WordStream::WordStream(Grower grow, std::string description) {
    state_ = std::make_shared<State>();
    state_->grow = std::move(grow);
    state_->descr = std::move(description);
}

std::string_view WordStream::prefix(size_t n) {
    State& st = *state_;
    if (st.cache.size() < n) {
        st.grow(st.cache, n);
        if (st.cache.size() < n)
            throw SourceExhausted("WordStream: source cannot supply " + std::to_string(n) +
                                  " letters (" + st.descr + ")");
    }
    return std::string_view(st.cache.data(), n);
}

char WordStream::at(size_t n) {
    if (n == 0) throw DomainError("WordStream::at: positions start at 1");
    return prefix(n)[n - 1];
}

WordStream WordStream::literal(FiniteWord word) {
    for (char c : word)
        if (c != '0' && c != '1') throw DomainError("WordStream::literal: letters must be 0/1");
    size_t len = word.size();
    auto grow = [w = std::move(word), len](std::string& cache, size_t target) {
        if (cache.empty()) cache = w;
        if (target > len)
            throw SourceExhausted("literal word has only " + std::to_string(len) + " letters");
    };
    return WordStream(std::move(grow), "literal[" + std::to_string(len) + "]");
}

WordStream WordStream::characteristic(const CFExpansion& cf) {
    auto table = std::make_shared<StandardWordTable>(cf);
    auto grow = [table](std::string& cache, size_t target) {
        size_t k = 1;
        while (table->q(k) < target) ++k;
        // Each M_k (k >= 1) is a prefix of M_{k+1}, so this only extends;
        // cache the whole level word to amortize letter-at-a-time readers.
        cache = table->level(k).m;
    };
    return WordStream(std::move(grow), "characteristic(" + cf.str() + ")");
}

WordStream WordStream::mechanical(const QuadraticNumber& theta, const QuadraticNumber& rho,
                                  bool ceil_variant) {
    if (theta.is_rational())
        throw DomainError("mechanical: slope must be irrational");
    if (theta.sign() <= 0 || theta >= QuadraticNumber(1))
        throw DomainError("mechanical: slope must lie in (0, 1)");
    if (!rho.is_rational() && rho.d() != theta.d())
        throw DomainError("mechanical: intercept must lie in the slope's field");
    struct Pos {
        QuadraticNumber value;  // n*theta + rho for the next needed n
        mpz_class ifloor;       // floor or ceil of value
        size_t n = 0;
    };
    auto pos = std::make_shared<Pos>();
    auto grow = [pos, theta, rho, ceil_variant](std::string& cache, size_t target) {
        if (pos->n == 0) {
            pos->value = rho;
            pos->ifloor = ceil_variant ? rho.ceil() : rho.floor();
        }
        while (cache.size() < target) {
            QuadraticNumber next = pos->value + theta;
            mpz_class nf = ceil_variant ? next.ceil() : next.floor();
            mpz_class diff = nf - pos->ifloor;
            if (diff != 0 && diff != 1)
                throw ConsistencyError("mechanical: letter outside {0,1}");
            cache += (diff == 1 ? '1' : '0');
            pos->value = std::move(next);
            pos->ifloor = std::move(nf);
            ++pos->n;
        }
    };
    std::string descr = std::string("mechanical(theta=") + theta.str() + ",rho=" + rho.str() +
                        "," + (ceil_variant ? "ceil" : "floor") + ")";
    return WordStream(std::move(grow), std::move(descr));
}

FiniteWord mechanical_prefix(const QuadraticNumber& theta, const QuadraticNumber& rho,
                             bool ceil_variant, size_t L) {
    if (L == 0) throw DomainError("mechanical_prefix: length must be >= 1");
    return FiniteWord(WordStream::mechanical(theta, rho, ceil_variant).prefix(L));
}

FiniteWord characteristic_prefix(const CFExpansion& cf, size_t L) {
    if (L == 0) throw DomainError("characteristic_prefix: length must be >= 1");
    return FiniteWord(WordStream::characteristic(cf).prefix(L));
}

size_t subword_complexity(const FiniteWord& w, size_t n) {
    if (n == 0) throw DomainError("subword_complexity: n must be >= 1");
    if (n > w.size()) throw DomainError("subword_complexity: n exceeds word length");
    std::vector<std::string_view> factors;
    factors.reserve(w.size() - n + 1);
    for (size_t i = 0; i + n <= w.size(); ++i)
        factors.emplace_back(w.data() + i, n);
    std::sort(factors.begin(), factors.end());
    factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
    return factors.size();
}

SturmianNumber sturmian_number(WordStream w, unsigned long b, size_t terms) {
    if (b < 2) throw DomainError("sturmian_number: base must be >= 2");
    if (terms == 0) throw DomainError("sturmian_number: need at least one term");
    std::string_view pre = w.prefix(terms);
    mpz_class num = 0;
    for (size_t k = 0; k < terms; ++k) {
        num *= b;
        num += (pre[k] == '1') ? 1 : 0;
    }
    mpz_class bpow;
    mpz_ui_pow_ui(bpow.get_mpz_t(), b, terms);
    SturmianNumber out;
    out.partial_sum = mpq_class(num, bpow);
    out.partial_sum.canonicalize();
    out.error_bound = mpq_class(1, bpow * (b - 1));
    out.error_bound.canonicalize();
    return out;
}

}  // namespace sturmian
