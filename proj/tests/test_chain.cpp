#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <initializer_list>
#include <utility>

#include "sturmian/cf.hpp"
#include "sturmian/chain.hpp"
#include "sturmian/errors.hpp"
#include "sturmian/rep.hpp"
#include "sturmian/words.hpp"

using namespace sturmian;

namespace {
const CFExpansion golden_cf = CFExpansion::periodic({}, {1});
const QuadraticNumber phi = QuadraticNumber::golden();

WordStream prepend(std::string head, WordStream tail) {
    return WordStream(
        [head, tail](std::string& cache, size_t target) mutable {
            if (target <= head.size()) {
                if (cache.empty()) cache = head;
                return;
            }
            std::string_view t = tail.prefix(target - head.size());
            cache.assign(head);
            cache.append(t);
        },
        "prefixed word");
}
}  // namespace

TEST_CASE("golden chain literals") {
    GoldenChain g = parse_golden_chain("bab(b2a2)");
    CHECK(!g.leading_iii);
    CHECK(g.letters == "bab");
    CHECK(g.period_letters == "bbaa");
    CHECK(format_golden_chain(g) == "bab(bbaa)");
    GoldenChain h = parse_golden_chain("(iii)a3(ab)");
    CHECK(h.leading_iii);
    CHECK(h.letters == "aaa");
    CHECK(h.period_letters == "ab");
    CHECK_THROWS_AS(parse_golden_chain("xyz"), ParseError);
    // round trip through the general chain representation
    Chain c = golden_to_chain(g);
    GoldenChain back = chain_to_golden(c);
    CHECK(back.letters + back.period_letters == g.letters + g.period_letters);
    CHECK(back.leading_iii == g.leading_iii);
}

TEST_CASE("golden letters map to cases") {
    Chain c = golden_to_chain(parse_golden_chain("ba(b)"));
    // b a b b b ... = (ii) (i)(iii) (ii) (ii) ...
    CHECK(c.case_at(1) == Case::II);
    CHECK(c.case_at(2) == Case::I);
    CHECK(c.case_at(3) == Case::III);
    CHECK(c.case_at(4) == Case::II);
    CHECK(c.case_at(9) == Case::II);
    Chain d = golden_to_chain(parse_golden_chain("(iii)a(b)"));
    CHECK(d.case_at(1) == Case::III);
    CHECK(d.case_at(2) == Case::I);
    CHECK(d.case_at(3) == Case::III);
    CHECK(d.case_at(4) == Case::II);
}

TEST_CASE("characteristic word sits in case ii at every level") {
    WordStream c = WordStream::characteristic(golden_cf);
    StandardWordTable table(golden_cf);
    for (size_t k = 1; k <= 8; ++k) {
        LevelState st = classify_level(c, table, k);
        CHECK(st.c == Case::II);
        CHECK(st.w_len == st.q_k);  // W_k = M_k
    }
    ChainResult cr = chain_of(c, golden_cf, 10);
    for (size_t k = 1; k <= 10; ++k) CHECK(cr.chain.case_at(k) == Case::II);
}

TEST_CASE("one-prepended characteristic word alternates i and iii") {
    WordStream x = prepend("1", WordStream::characteristic(golden_cf));
    ChainResult cr = chain_of(x, golden_cf, 9);
    for (size_t k = 1; k <= 9; ++k) {
        CHECK(cr.chain.case_at(k) == (k % 2 ? Case::I : Case::III));
        CHECK(cr.states[k - 1].w_len == 1);
    }
}

TEST_CASE("classification of a shifted word") {
    // x = 10101 M4 M5 ... : chain (ii)(i)(iii) then (ii) forever,
    // witness lengths 1, 2, 2, 2, 5, 10.
    StandardWordTable table(golden_cf);
    WordStream tail(
        [](std::string& cache, size_t target) {
            StandardWordTable t(golden_cf);
            size_t k = 4;
            std::string s;
            while (s.size() < target + 5) {
                s += t.level(k).m;
                ++k;
            }
            cache = "10101" + s;
        },
        "10101+M4M5...");
    LevelState l2 = classify_level(tail, table, 2);
    CHECK(l2.c == Case::I);
    CHECK(l2.w_len == 2);
    ChainResult cr = chain_of(tail, golden_cf, 6);
    Case expect[] = {Case::II, Case::I, Case::III, Case::II, Case::II, Case::II};
    long w_expect[] = {1, 2, 2, 2, 5, 10};
    for (size_t k = 1; k <= 6; ++k) {
        CHECK(cr.chain.case_at(k) == expect[k - 1]);
        CHECK(cr.states[k - 1].w_len == w_expect[k - 1]);
    }
}

TEST_CASE("synthesis inverts classification") {
    // b forever -> the characteristic word itself
    WordStream cw = synthesize(golden_cf, golden_to_chain(parse_golden_chain("(b)")));
    CHECK(cw.prefix(13) == "1011010110110");
    // a forever -> 1 c_phi
    WordStream ac = synthesize(golden_cf, golden_to_chain(parse_golden_chain("(a)")));
    CHECK(FiniteWord(ac.prefix(14)) == "1" + characteristic_prefix(golden_cf, 13));
    // Example chain b a (b): 10101 M4 M5 ...
    WordStream ex = synthesize(golden_cf, golden_to_chain(parse_golden_chain("ba(b)")));
    CHECK(ex.prefix(10) == "1010110110");
    // round trips on a mixed bag of literals
    for (std::string lit : {"(b)", "(a)", "ba(b)", "(iii)a(ab)", "bab(bbaa)", "a2b3(ab2)"}) {
        Chain chain = golden_to_chain(parse_golden_chain(lit));
        ChainResult cr = chain_of(synthesize(golden_cf, chain), golden_cf, 12);
        for (size_t k = 1; k <= 12; ++k) CHECK(cr.chain.case_at(k) == chain.case_at(k));
    }
    // a finite chain determines only a finite prefix
    Chain finite_chain = golden_to_chain(parse_golden_chain("bbb"));
    WordStream fw = synthesize(golden_cf, finite_chain);
    CHECK_THROWS_AS(fw.prefix(100000), InsufficientData);
}

TEST_CASE("general slope classification carries t annotations") {
    CFExpansion two = CFExpansion::periodic({}, {2});
    QuadraticNumber theta = two.value();
    WordStream x = WordStream::mechanical(theta, QuadraticNumber(mpq_class(1, 7)));
    ChainResult cr = chain_of(x, two, 8);
    for (size_t k = 1; k < 8; ++k) {
        if (cr.chain.case_at(k) == Case::I && cr.chain.case_at(k + 1) != Case::III) {
            auto t = cr.chain.t_at(k);
            REQUIRE(t.has_value());
            CHECK(*t == 1);  // a_{k+1} - 1 = 1 for [0;(2)]
        }
    }
    // states_from_chain reproduces the observed witness lengths
    auto states = states_from_chain(two, cr.chain, 8);
    for (size_t k = 0; k < 8; ++k) {
        CHECK(states[k].c == cr.states[k].c);
        CHECK(states[k].w_len == cr.states[k].w_len);
    }
}

TEST_CASE("transition table is enforced") {
    Chain bad;
    bad.cases = {Case::II, Case::III};  // (ii) -> (iii) is illegal
    bad.w1_len = 1;
    CHECK_THROWS_AS(states_from_chain(golden_cf, bad, 2), ConsistencyError);
    Chain bad2;
    bad2.cases = {Case::I, Case::I};  // golden slope has a_{k+1}-1 = 0: no (i)->(i)
    bad2.w1_len = 1;
    bad2.t[1] = 1;
    CHECK_THROWS_AS(states_from_chain(golden_cf, bad2, 2), ConsistencyError);
}

TEST_CASE("lambda prediction matches brute force on the golden examples") {
    // characteristic word: Lambda = {q_k - 1 : k >= 2}
    ChainResult cr = chain_of(WordStream::characteristic(golden_cf), golden_cf, 10);
    LambdaPrediction pred = predict_lambda(cr.states, golden_cf);
    auto cs = convergents(golden_cf, 12);
    for (const LambdaElement& e : pred.elements) {
        bool is_qm1 = false;
        for (size_t k = 2; k <= 12; ++k)
            if (e.n == cs[k].q - 1) is_qm1 = true;
        CHECK(is_qm1);
    }
    CHECK(pred.elements.size() >= 8);
    // 1 c_phi: per-level pair {q_{k+1} + |W_k| - 1, q_{k+2} - 1} with |W_k| = 1
    WordStream x = prepend("1", WordStream::characteristic(golden_cf));
    ChainResult cr2 = chain_of(x, golden_cf, 9);
    LambdaPrediction p2 = predict_lambda(cr2.states, golden_cf);
    RepProfile brute = r_profile(x, static_cast<size_t>(p2.hi.get_si()));
    std::vector<mpz_class> brute_in;
    for (int64_t n : brute.lambda)
        if (p2.lo <= n && n <= p2.hi) brute_in.emplace_back(n);
    REQUIRE(p2.elements.size() == brute_in.size());
    for (size_t i = 0; i < brute_in.size(); ++i) CHECK(p2.elements[i].n == brute_in[i]);
}

TEST_CASE("golden chain run statistics") {
    GoldenChainStats s = chain_stats(parse_golden_chain("(iii)b2ab2aba2b3(ab)"));
    CHECK(s.c_prefix == "(iii)bb");
    REQUIRE(s.m.size() >= 3);
    REQUIRE(s.l.size() >= 3);
    CHECK(s.m[0] == 1);
    CHECK(s.m[1] == 1);
    CHECK(s.m[2] == 2);
    CHECK(s.l[0] == 2);
    CHECK(s.l[1] == 1);
    CHECK(s.l[2] == 3);
    GoldenChainStats ab = chain_stats(parse_golden_chain("(ab)"));
    for (size_t v : ab.m) CHECK(v == 1);
    for (size_t v : ab.l) CHECK(v == 1);
    // (b^2 a^2)^e b a decomposition
    GoldenChainStats e = chain_stats(parse_golden_chain("b(b2a2b2a2b2a2bab2a2ba)"));
    REQUIRE(e.e.has_value());
    REQUIRE(e.e->size() >= 2);
    CHECK((*e.e)[0] == 3);
    CHECK((*e.e)[1] == 1);
}

TEST_CASE("exact rep of periodic golden chains") {
    // all-b chain: mu_max = 1 + phi
    CHECK(rep_exact_periodic_golden(parse_golden_chain("(b)")) == QuadraticNumber(1) + phi);
    CHECK(rep_exact_periodic_golden(parse_golden_chain("(a)")) == QuadraticNumber(1) + phi);
    // (ab): mu2 = 1 + 2 phi^3 = 2 sqrt(5) - 3
    QuadraticNumber mu2(mpz_class(-3), mpz_class(2), mpz_class(1), mpz_class(5));
    CHECK(rep_exact_periodic_golden(parse_golden_chain("(ab)")) == mu2);
    CHECK(mu2.decimal(6) == "1.472136");
    // (b^2 a^2): mu3 = 1 + phi^2 (phi^4 + phi^2 + 1) / (phi^5 + phi^3 + 1)
    QuadraticNumber p2 = phi * phi, p3 = p2 * phi, p4 = p3 * phi, p5 = p4 * phi;
    QuadraticNumber one(1);
    QuadraticNumber mu3 = one + p2 * (p4 + p2 + one) / (p5 + p3 + one);
    CHECK(rep_exact_periodic_golden(parse_golden_chain("(b2a2)")) == mu3);
    CHECK(mu3.decimal(6) == "1.440036");
    // the finite prefix does not change the value
    CHECK(rep_exact_periodic_golden(parse_golden_chain("abba(ab)")) == mu2);
    CHECK(rep_exact_periodic_golden(parse_golden_chain("(ba)")) == mu2);
    CHECK_THROWS_AS(rep_exact_periodic_golden(parse_golden_chain("ab")), DomainError);
}

TEST_CASE("exact rep agrees with the numeric estimate") {
    // (a3b) recurs its deciding junction only once per 7 levels, so its
    // letter-level profile needs a wider tail window than the default.
    for (auto [lit, window] : std::initializer_list<std::pair<const char*, double>>{
             {"(ab)", 0.2}, {"(b2a2)", 0.2}, {"(b2a2ba)", 0.2}, {"(a3b)", 0.6}}) {
        GoldenChain g = parse_golden_chain(lit);
        double exact = rep_exact_periodic_golden(g).to_double();
        WordStream w = synthesize(golden_cf, golden_to_chain(g));
        RepProfile p = r_profile(w, 60000);
        double est = rep_estimate(p, window).value;
        CHECK(std::abs(est - exact) < 2e-3);
    }
}
