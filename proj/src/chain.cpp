#include "sturmian/chain.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <sstream>

#include "sturmian/errors.hpp"

namespace sturmian {

const char* case_name(Case c) {
    switch (c) {
        case Case::I: return "i";
        case Case::II: return "ii";
        case Case::III: return "iii";
    }
    return "?";
}

Case case_from_name(const std::string& s) {
    if (s == "i") return Case::I;
    if (s == "ii") return Case::II;
    if (s == "iii") return Case::III;
    throw ParseError("unknown case name \"" + s + "\"");
}

Case Chain::case_at(size_t k) const {
    if (k == 0) throw DomainError("Chain::case_at: levels start at 1");
    size_t idx = k - 1;
    if (idx < cases.size()) return cases[idx];
    if (!has_period())
        throw InsufficientData("chain determines only " + std::to_string(cases.size()) +
                               " levels");
    size_t plen = period_length();
    return cases[period_begin + (idx - period_begin) % plen];
}

std::optional<unsigned long> Chain::t_at(size_t k) const {
    size_t idx = k - 1;
    size_t key = k;
    if (idx >= cases.size()) {
        if (!has_period())
            throw InsufficientData("chain determines only " + std::to_string(cases.size()) +
                                   " levels");
        size_t plen = period_length();
        key = period_begin + (idx - period_begin) % plen + 1;
    }
    auto it = t.find(key);
    if (it == t.end()) return std::nullopt;
    return it->second;
}

// ---------------------------------------------------------------------------
// Golden chains

GoldenChain parse_golden_chain(const std::string& literal) {
    GoldenChain g;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < literal.size() && std::isspace(static_cast<unsigned char>(literal[i]))) ++i;
    };
    skip_ws();
    if (literal.compare(i, 5, "(iii)") == 0) {
        g.leading_iii = true;
        i += 5;
    } else if (literal.compare(i, 3, "iii") == 0) {
        g.leading_iii = true;
        i += 3;
    }
    auto letters = [&](bool in_period) -> std::string {
        std::string out;
        for (;;) {
            skip_ws();
            if (i >= literal.size()) break;
            char c = literal[i];
            if (c == '(' || c == ')') break;
            if (c != 'a' && c != 'b')
                throw ParseError("golden chain: unexpected '" + std::string(1, c) + "' in \"" +
                                 literal + "\"");
            ++i;
            size_t count = 1;
            skip_ws();
            if (i < literal.size() && std::isdigit(static_cast<unsigned char>(literal[i]))) {
                count = 0;
                while (i < literal.size() && std::isdigit(static_cast<unsigned char>(literal[i])))
                    count = count * 10 + (literal[i++] - '0');
                if (count == 0) throw ParseError("golden chain: zero exponent in \"" + literal + "\"");
            }
            out.append(count, c);
        }
        if (out.empty() && in_period)
            throw ParseError("golden chain: empty period in \"" + literal + "\"");
        return out;
    };
    g.letters = letters(false);
    skip_ws();
    if (i < literal.size() && literal[i] == '(') {
        ++i;
        g.period_letters = letters(true);
        skip_ws();
        if (i >= literal.size() || literal[i] != ')')
            throw ParseError("golden chain: unclosed period in \"" + literal + "\"");
        ++i;
    }
    skip_ws();
    if (i < literal.size())
        throw ParseError("golden chain: trailing characters in \"" + literal + "\"");
    if (g.letters.empty() && g.period_letters.empty())
        throw ParseError("golden chain: no letters in \"" + literal + "\"");
    return g;
}

std::string format_golden_chain(const GoldenChain& g) {
    std::string out;
    if (g.leading_iii) out += "(iii)";
    out += g.letters;
    if (!g.period_letters.empty()) out += "(" + g.period_letters + ")";
    return out;
}

Chain golden_to_chain(const GoldenChain& g) {
    Chain chain;
    chain.w1_len = 1;
    if (g.leading_iii) chain.cases.push_back(Case::III);
    auto append = [&chain](const std::string& ls) {
        for (char c : ls) {
            if (c == 'a') {
                chain.cases.push_back(Case::I);
                chain.cases.push_back(Case::III);
            } else if (c == 'b') {
                chain.cases.push_back(Case::II);
            } else {
                throw DomainError("golden chain letters must be a/b");
            }
        }
    };
    append(g.letters);
    if (!g.period_letters.empty()) {
        chain.period_begin = chain.cases.size();
        append(g.period_letters);
    }
    return chain;
}

GoldenChain chain_to_golden(const Chain& chain) {
    if (!chain.t.empty())
        throw DomainError("chain_to_golden: t-annotations are impossible for slope phi");
    if (chain.w1_len != 1) throw DomainError("chain_to_golden: |W_1| must be 1 for slope phi");
    GoldenChain g;
    size_t i = 0;
    if (!chain.cases.empty() && chain.cases[0] == Case::III) {
        g.leading_iii = true;
        i = 1;
    }
    std::string all;
    std::optional<size_t> period_letter;  // index in `all` where the period starts
    while (i < chain.cases.size()) {
        if (chain.has_period() && i == chain.period_begin) period_letter = all.size();
        if (chain.cases[i] == Case::II) {
            all += 'b';
            i += 1;
        } else if (chain.cases[i] == Case::I) {
            if (i + 1 >= chain.cases.size()) break;  // incomplete trailing (i): drop
            if (chain.cases[i + 1] != Case::III)
                throw DomainError("chain_to_golden: (i) not followed by (iii)");
            if (chain.has_period() && i + 1 == chain.period_begin)
                throw DomainError("chain_to_golden: period splits an (i)(iii) pair");
            all += 'a';
            i += 2;
        } else {
            throw DomainError("chain_to_golden: unexpected (iii)");
        }
    }
    if (chain.has_period()) {
        if (!period_letter)
            throw DomainError("chain_to_golden: period does not align with letters");
        g.letters = all.substr(0, *period_letter);
        g.period_letters = all.substr(*period_letter);
        if (g.period_letters.empty())
            throw DomainError("chain_to_golden: empty period");
    } else {
        g.letters = all;
    }
    return g;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

// Start offsets (0-based) of all occurrences of pat in text with start <= max_start.
std::vector<size_t> kmp_occurrences(std::string_view text, std::string_view pat,
                                    size_t max_start) {
    std::vector<size_t> fail(pat.size(), 0);
    for (size_t i = 1; i < pat.size(); ++i) {
        size_t j = fail[i - 1];
        while (j > 0 && pat[i] != pat[j]) j = fail[j - 1];
        if (pat[i] == pat[j]) ++j;
        fail[i] = j;
    }
    std::vector<size_t> occ;
    size_t j = 0;
    for (size_t i = 0; i < text.size(); ++i) {
        while (j > 0 && text[i] != pat[j]) j = fail[j - 1];
        if (text[i] == pat[j]) ++j;
        if (j == pat.size()) {
            size_t start = i + 1 - pat.size();
            if (start <= max_start) occ.push_back(start);
            j = fail[j - 1];
        }
    }
    return occ;
}

bool is_suffix_prefix(std::string_view x_prefix, const std::string& of, size_t len) {
    if (len > of.size()) return false;
    return x_prefix.substr(0, len) == std::string_view(of).substr(of.size() - len);
}

}  // namespace

LevelState classify_level(WordStream x, StandardWordTable& table, size_t k) {
    if (k == 0) throw DomainError("classify_level: levels start at 1");
    const StandardLevel& lk = table.level(k);
    const StandardLevel& lk1 = table.level(k - 1);
    const std::string& mk = lk.m;
    const std::string& mk1 = lk1.m;
    std::string p1 = mk + lk.mt;  // continuation pattern M_k M~_k
    size_t qk = mk.size(), qk1 = mk1.size();
    size_t max_start = qk + qk1;  // case (ii) shifts the pattern by q_{k-1}
    size_t need = max_start + p1.size();
    std::string_view xp = x.prefix(need);

    struct Candidate {
        Case c;
        size_t w;
    };
    std::vector<Candidate> found;
    for (size_t s : kmp_occurrences(xp, p1, max_start)) {
        if (s == 0) continue;  // W_k must be nonempty
        if (s <= qk && is_suffix_prefix(xp, mk, s)) found.push_back({Case::I, s});
        if (s <= qk1 && is_suffix_prefix(xp, mk1, s)) found.push_back({Case::III, s});
        if (s > qk1) {
            size_t w = s - qk1;
            if (w >= 1 && w <= qk && xp.substr(w, qk1) == mk1 && is_suffix_prefix(xp, mk, w))
                found.push_back({Case::II, w});
        }
    }
    if (found.empty())
        throw NotSturmianError("classify_level: no case matches at level " + std::to_string(k) +
                               " (word is not Sturmian of this slope)");
    if (found.size() > 1)
        throw ConsistencyError("classify_level: " + std::to_string(found.size()) +
                               " cases match at level " + std::to_string(k));
    LevelState st;
    st.k = k;
    st.c = found[0].c;
    st.w_len = static_cast<unsigned long>(found[0].w);
    st.q_k = static_cast<unsigned long>(qk);
    st.q_km1 = static_cast<unsigned long>(qk1);
    return st;
}

// ---------------------------------------------------------------------------
// Transition validation shared by chain_of / states_from_chain

namespace {

// Validates the step from level k to k+1 and returns t when the step is
// (i)->(i)/(ii). a_next = a_{k+1}.
std::optional<unsigned long> validate_transition(const LevelState& cur, const LevelState& nxt,
                                                 unsigned long a_next) {
    const std::string at = " at level " + std::to_string(cur.k);
    auto fail = [&](const std::string& why) -> std::optional<unsigned long> {
        throw ConsistencyError("chain transition (" + std::string(case_name(cur.c)) + ")->(" +
                               case_name(nxt.c) + ")" + at + ": " + why);
    };
    switch (cur.c) {
        case Case::I:
            if (nxt.c == Case::III) {
                if (nxt.w_len != cur.w_len) return fail("expected |W| unchanged");
                return std::nullopt;
            } else {
                mpz_class diff = nxt.w_len - cur.w_len - cur.q_km1;
                if (diff <= 0 || !mpz_divisible_p(diff.get_mpz_t(), cur.q_k.get_mpz_t()))
                    return fail("|W| increment is not t*q_k + q_{k-1}");
                mpz_class tz = diff / cur.q_k;
                if (tz < 1 || tz + 1 > a_next)
                    return fail("t outside [1, a_{k+1}-1]");
                return tz.get_ui();
            }
        case Case::II:
            if (nxt.c == Case::III) return fail("(ii) cannot be followed by (iii)");
            if (nxt.w_len != cur.w_len + cur.q_km1)
                return fail("expected |W_{k+1}| = |W_k| + q_{k-1}");
            return std::nullopt;
        case Case::III:
            if (nxt.c == Case::III) return fail("(iii) cannot be followed by (iii)");
            if (nxt.w_len != cur.w_len) return fail("expected |W| unchanged");
            return std::nullopt;
    }
    return std::nullopt;
}

void check_w_range(const LevelState& st) {
    const mpz_class& limit = (st.c == Case::III) ? st.q_km1 : st.q_k;
    if (st.w_len < 1 || st.w_len > limit)
        throw ConsistencyError("|W_" + std::to_string(st.k) + "| out of range for case (" +
                               case_name(st.c) + ")");
}

}  // namespace

ChainResult chain_of(WordStream x, const CFExpansion& cf, size_t K) {
    if (K < 2) throw DomainError("chain_of: need K >= 2");
    StandardWordTable table(cf);
    ChainResult res;
    for (size_t k = 1; k <= K; ++k) {
        LevelState st = classify_level(x, table, k);
        check_w_range(st);
        res.states.push_back(std::move(st));
    }
    res.chain.w1_len = res.states[0].w_len.get_ui();
    for (size_t k = 1; k <= K; ++k) {
        res.chain.cases.push_back(res.states[k - 1].c);
        if (k < K) {
            auto t = validate_transition(res.states[k - 1], res.states[k], cf.quotient(k + 1));
            if (t) {
                res.states[k - 1].t = *t;
                res.chain.t[k] = *t;
            }
        }
    }
    return res;
}

std::vector<LevelState> states_from_chain(const CFExpansion& cf, const Chain& chain, size_t K) {
    if (K < 1) throw DomainError("states_from_chain: need K >= 1");
    auto cv = convergents(cf, K);
    std::vector<LevelState> states;
    for (size_t k = 1; k <= K; ++k) {
        LevelState st;
        st.k = k;
        st.c = chain.case_at(k);
        st.q_k = cv[k].q;
        st.q_km1 = cv[k - 1].q;
        if (k == 1) {
            if (st.c == Case::III && chain.w1_len != 1)
                throw DomainError("states_from_chain: level-1 (iii) forces |W_1| = 1");
            st.w_len = static_cast<unsigned long>(chain.w1_len);
        } else {
            const LevelState& prev = states.back();
            switch (prev.c) {
                case Case::I:
                    if (st.c == Case::III) {
                        st.w_len = prev.w_len;
                    } else {
                        auto t = chain.t_at(k - 1);
                        if (!t)
                            throw DomainError("states_from_chain: (i)->(" +
                                              std::string(case_name(st.c)) + ") at level " +
                                              std::to_string(k - 1) + " needs a t annotation");
                        st.w_len = prev.w_len + mpz_class(*t) * prev.q_k + prev.q_km1;
                    }
                    break;
                case Case::II:
                    st.w_len = prev.w_len + prev.q_km1;
                    break;
                case Case::III:
                    st.w_len = prev.w_len;
                    break;
            }
        }
        check_w_range(st);
        states.push_back(std::move(st));
        if (k >= 2) {
            auto t = validate_transition(states[k - 2], states[k - 1], cf.quotient(k));
            if (t) states[k - 2].t = *t;
        }
    }
    return states;
}

WordStream synthesize(const CFExpansion& cf, const Chain& chain) {
    struct SynthState {
        StandardWordTable table;
        Chain chain;
        size_t k = 0;
        std::string w;
        explicit SynthState(const CFExpansion& cf_, Chain c) : table(cf_), chain(std::move(c)) {}
    };
    auto ss = std::make_shared<SynthState>(cf, chain);
    auto determined = [](SynthState& s) -> std::string {
        const StandardLevel& lv = s.table.level(s.k);
        std::string out = s.w;
        if (s.chain.case_at(s.k) == Case::II) out += s.table.level(s.k - 1).m;
        out += lv.m;
        out += lv.mt;
        return out;
    };
    auto grow = [ss, determined](std::string& cache, size_t target) {
        SynthState& s = *ss;
        if (s.k == 0) {
            // Level 1 witness: suffix of M_1 (cases i/ii) or "0" = M_0 (case iii).
            Case c1 = s.chain.case_at(1);
            const std::string& m1 = s.table.level(1).m;
            if (c1 == Case::III) {
                if (s.chain.w1_len != 1)
                    throw DomainError("synthesize: level-1 (iii) forces |W_1| = 1");
                s.w = "0";
            } else {
                if (s.chain.w1_len < 1 || s.chain.w1_len > m1.size())
                    throw DomainError("synthesize: |W_1| out of [1, q_1]");
                s.w = m1.substr(m1.size() - s.chain.w1_len);
            }
            s.k = 1;
        }
        for (;;) {
            std::string pre = determined(s);
            if (pre.size() >= target) {
                if (cache.size() < pre.size()) cache = std::move(pre);
                return;
            }
            Case cur = s.chain.case_at(s.k);
            Case nxt = s.chain.case_at(s.k + 1);  // throws InsufficientData if exhausted
            unsigned long a_next = s.table.cf().quotient(s.k + 1);
            switch (cur) {
                case Case::I:
                    if (nxt != Case::III) {
                        auto t = s.chain.t_at(s.k);
                        if (!t)
                            throw DomainError("synthesize: (i)->(" + std::string(case_name(nxt)) +
                                              ") at level " + std::to_string(s.k) +
                                              " needs a t annotation");
                        if (*t < 1 || *t + 1 > a_next)
                            throw DomainError("synthesize: t outside [1, a_{k+1}-1] at level " +
                                              std::to_string(s.k));
                        for (unsigned long i = 0; i < *t; ++i) s.w += s.table.level(s.k).m;
                        s.w += s.table.level(s.k - 1).m;
                    }
                    break;
                case Case::II:
                    if (nxt == Case::III)
                        throw DomainError("synthesize: (ii) cannot be followed by (iii)");
                    s.w += s.table.level(s.k - 1).m;
                    break;
                case Case::III:
                    if (nxt == Case::III)
                        throw DomainError("synthesize: (iii) cannot be followed by (iii)");
                    break;
            }
            ++s.k;
        }
    };
    std::string descr = "synthesized(chain)";
    return WordStream(std::move(grow), std::move(descr));
}

// ---------------------------------------------------------------------------
// Lambda prediction

namespace {

void add_element(std::vector<LambdaElement>& out, mpz_class n, LambdaTag tag, size_t level) {
    out.push_back({std::move(n), tag, level});
}

}  // namespace

LambdaPrediction predict_lambda(const std::vector<LevelState>& states, const CFExpansion& cf) {
    size_t K = states.size();
    if (K < 2) throw DomainError("predict_lambda: need states for at least 2 levels");
    for (size_t i = 0; i < K; ++i)
        if (states[i].k != i + 1)
            throw DomainError("predict_lambda: states must cover levels 1..K contiguously");
    auto cv = convergents(cf, K + 1);
    LambdaPrediction pred;
    pred.lo = cv[1].q + cv[0].q - 1;
    pred.hi = pred.lo - 1;
    std::vector<LambdaElement>& el = pred.elements;
    size_t k = 1;
    if (states[0].c == Case::III) {
        // Level-1 boundary: Lambda on [q_1 + q_0 - 1, q_2 + q_1 - 2] is
        // {|W_1| + q_1 - 1} plus {q_2 - 1} when level 2 is case (i).
        add_element(el, states[0].w_len + cv[1].q - 1, LambdaTag::Boundary, 1);
        if (states[1].c == Case::I) add_element(el, cv[2].q - 1, LambdaTag::Boundary, 1);
        pred.hi = cv[2].q + cv[1].q - 2;
        k = 2;
    }
    while (k + 1 <= K) {
        const LevelState& s = states[k - 1];
        const LevelState& nx = states[k];
        const mpz_class& qk = cv[k].q;
        const mpz_class& qk1 = cv[k - 1].q;
        if (s.c == Case::I) {
            if (nx.c == Case::III) {
                if (k + 2 > K) break;
                Case c2 = states[k + 1].c;
                LambdaTag tag = (c2 == Case::I) ? LambdaTag::L3 : LambdaTag::L4;
                add_element(el, s.w_len + cv[k + 1].q - 1, tag, k);
                if (c2 == Case::I) add_element(el, cv[k + 2].q - 1, LambdaTag::L3, k);
                pred.hi = cv[k + 2].q + cv[k + 1].q - 2;
                k += 2;
            } else {
                if (!s.t)
                    throw DomainError("predict_lambda: missing t at level " + std::to_string(k));
                unsigned long t = *s.t;
                unsigned long a = cf.quotient(k + 1);
                LambdaTag tag = (nx.c == Case::I) ? LambdaTag::L1 : LambdaTag::L2;
                add_element(el, s.w_len + t * qk + qk1 - 1, tag, k);  // v_{t,k}
                if (nx.c == Case::II || t < a - 1) {
                    add_element(el, (t + 1) * qk + qk1 - 1, tag, k);            // u_{t+1,k}
                    add_element(el, s.w_len + (t + 1) * qk + qk1 - 1, tag, k);  // v_{t+1,k}
                }
                if (nx.c == Case::I) add_element(el, cv[k + 1].q - 1, LambdaTag::L1, k);  // u'_k
                pred.hi = cv[k + 1].q + qk - 2;
                k += 1;
            }
        } else if (s.c == Case::II) {
            LambdaTag tag = (nx.c == Case::I) ? LambdaTag::L5 : LambdaTag::L6;
            add_element(el, qk + qk1 - 1, tag, k);  // u_{1,k}
            if (nx.c == Case::II) {
                add_element(el, s.w_len + qk + qk1 - 1, LambdaTag::L6, k);  // v_{1,k}
            } else if (cf.quotient(k + 1) >= 2) {
                add_element(el, s.w_len + qk + qk1 - 1, LambdaTag::L5, k);
                add_element(el, cv[k + 1].q - 1, LambdaTag::L5, k);  // u'_k
            }
            pred.hi = cv[k + 1].q + qk - 2;
            k += 1;
        } else {
            throw ConsistencyError("predict_lambda: case (iii) outside an (i)(iii) pair at level " +
                                   std::to_string(k));
        }
    }
    std::sort(el.begin(), el.end(),
              [](const LambdaElement& a, const LambdaElement& b) { return a.n < b.n; });
    el.erase(std::unique(el.begin(), el.end(),
                         [](const LambdaElement& a, const LambdaElement& b) { return a.n == b.n; }),
             el.end());
    // Keep only the certified interval.
    while (!el.empty() && el.back().n > pred.hi) el.pop_back();
    return pred;
}

// ---------------------------------------------------------------------------
// Golden chain statistics

GoldenChainStats chain_stats(const GoldenChain& g) {
    std::string letters = g.letters;
    for (int rep = 0; rep < 2; ++rep) letters += g.period_letters;
    if (letters.find('a') == std::string::npos || letters.find('b') == std::string::npos)
        throw DomainError("chain_stats: tail uses a single letter, stats undefined");
    if (!g.period_letters.empty()) {
        bool has_a = g.period_letters.find('a') != std::string::npos;
        bool has_b = g.period_letters.find('b') != std::string::npos;
        if (!has_a || !has_b)
            throw DomainError("chain_stats: periodic tail uses a single letter, stats undefined");
    }
    GoldenChainStats out;
    if (g.leading_iii) out.c_prefix = "(iii)";
    // c(x) absorbs the initial a-run (if any) and the following b-run, so the
    // remaining runs alternate starting with an a-chain.
    size_t i = 0;
    size_t run_a = 0, run_b = 0;
    while (i < letters.size() && letters[i] == 'a') ++i, ++run_a;
    while (i < letters.size() && letters[i] == 'b') ++i, ++run_b;
    out.c_prefix += std::string(run_a, 'a') + std::string(run_b, 'b');
    while (i < letters.size()) {
        size_t ma = 0, lb = 0;
        while (i < letters.size() && letters[i] == 'a') ++i, ++ma;
        while (i < letters.size() && letters[i] == 'b') ++i, ++lb;
        if (ma) out.m.push_back(ma);
        if (lb) out.l.push_back(lb);
    }
    // (b^2 a^2)^e b a decomposition: anchor at the first "bbaa" and greedily
    // read blocks; incomplete trailing blocks are dropped.
    size_t anchor = letters.find("bbaa");
    if (anchor != std::string::npos) {
        std::vector<size_t> e;
        size_t pos = anchor;
        for (;;) {
            size_t blocks = 0;
            while (pos + 4 <= letters.size() && letters.compare(pos, 4, "bbaa") == 0) {
                ++blocks;
                pos += 4;
            }
            if (pos + 2 <= letters.size() && letters.compare(pos, 2, "ba") == 0) {
                e.push_back(blocks);
                pos += 2;
            } else {
                break;
            }
        }
        if (!e.empty()) out.e = std::move(e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact rep for eventually periodic golden chains

namespace {

QuadraticNumber qn_pow(const QuadraticNumber& x, size_t n) {
    QuadraticNumber acc(1);
    for (size_t i = 0; i < n; ++i) acc = acc * x;
    return acc;
}

}  // namespace

QuadraticNumber rep_exact_periodic_golden(const GoldenChain& g) {
    if (g.period_letters.empty())
        throw DomainError("rep_exact_periodic_golden: chain is not eventually periodic");
    const QuadraticNumber phi = QuadraticNumber::golden();
    const QuadraticNumber one(1);
    bool has_a = g.period_letters.find('a') != std::string::npos;
    bool has_b = g.period_letters.find('b') != std::string::npos;
    // Single-letter periods are the two extreme chains; both give 1 + phi.
    if (!has_a || !has_b) return one + phi;

    // Per-level flags along one period: 'a' occupies two levels (i)(iii),
    // 'b' one level (ii); omega_{j+1} = phi * (omega_j + [level j is (ii)] phi).
    std::vector<bool> is_b;
    for (char c : g.period_letters) {
        if (c == 'b') {
            is_b.push_back(true);
        } else {
            is_b.push_back(false);
            is_b.push_back(false);
        }
    }
    size_t p = is_b.size();
    // One period maps omega -> A*omega + C affinely; its fixed point is the
    // limit of |W_k|/q_k at the period's first level.
    QuadraticNumber A(1), C(0);
    const QuadraticNumber phi2 = phi * phi;
    for (size_t j = 0; j < p; ++j) {
        A = A * phi;
        C = C * phi;
        if (is_b[j]) C = C + phi2;
    }
    std::vector<QuadraticNumber> omega(2 * p + 2);
    omega[0] = C / (one - A);
    for (size_t j = 0; j < 2 * p + 1; ++j)
        omega[j + 1] = phi * (omega[j] + (is_b[j % p] ? phi : QuadraticNumber(0)));

    // Lambda limit descriptors over two periods: each element's value behaves
    // like coef * q_{anchor}. inv_phi = 1/phi = lim q_{k+1}/q_k.
    const QuadraticNumber inv_phi = one + phi;
    struct Elem {
        size_t anchor;
        QuadraticNumber coef;
        LambdaTag tag;
    };
    std::vector<Elem> elems;
    std::string two = g.period_letters + g.period_letters;
    size_t level = 0;
    for (size_t i = 0; i < two.size(); ++i) {
        char cur = two[i];
        char nxt = two[(i + 1) % two.size()];
        if (cur == 'a') {
            if (nxt == 'a') {
                elems.push_back({level, inv_phi + omega[level], LambdaTag::L3});
                elems.push_back({level, inv_phi * inv_phi, LambdaTag::L3});
            } else {
                elems.push_back({level, inv_phi + omega[level], LambdaTag::L4});
            }
            level += 2;
        } else {
            if (nxt == 'a') {
                elems.push_back({level, inv_phi, LambdaTag::L5});
            } else {
                elems.push_back({level, inv_phi, LambdaTag::L6});
                elems.push_back({level, inv_phi + omega[level], LambdaTag::L6});
            }
            level += 1;
        }
    }
    // Values must already be in increasing order (drop exact duplicates).
    auto value_cmp = [&phi](const Elem& x, const Elem& y) {
        // x.coef / phi^{x.anchor} vs y.coef / phi^{y.anchor}
        if (x.anchor <= y.anchor)
            return (x.coef * qn_pow(phi, y.anchor - x.anchor)).compare(y.coef);
        return x.coef.compare(y.coef * qn_pow(phi, x.anchor - y.anchor));
    };
    std::vector<Elem> seq;
    for (const Elem& e : elems) {
        if (!seq.empty()) {
            int c = value_cmp(seq.back(), e);
            if (c == 0) continue;
            if (c > 0)
                throw ConsistencyError("rep_exact_periodic_golden: candidate values out of order");
        }
        seq.push_back(e);
    }
    // rep = 1 + min over junction elements (a->b and b->a) of n_i / n_{i+1}.
    bool found = false;
    QuadraticNumber best;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq[i].anchor >= p) break;  // one full period of candidates suffices
        if (seq[i].tag != LambdaTag::L4 && seq[i].tag != LambdaTag::L5) continue;
        const Elem& a = seq[i];
        const Elem& b = seq[i + 1];
        QuadraticNumber ratio = a.coef * qn_pow(phi, b.anchor - a.anchor) / b.coef;
        if (!found || ratio < best) {
            best = ratio;
            found = true;
        }
    }
    if (!found)
        throw ConsistencyError("rep_exact_periodic_golden: no junction candidates found");
    return one + best;
}

}  // namespace sturmian
