// sturmian-lab: exact Sturmian repetition-spectrum toolkit, command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sturmian/cf.hpp"
#include "sturmian/chain.hpp"
#include "sturmian/errors.hpp"
#include "sturmian/quadratic.hpp"
#include "sturmian/rep.hpp"
#include "sturmian/spectrum.hpp"
#include "sturmian/words.hpp"

namespace {

using namespace sturmian;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitMismatch = 4;

struct SubjectOptions {
    std::string slope = "[0;(1)]";
    std::string rho;
    std::string variant = "floor";
    std::string chain;
};

void add_subject_flags(CLI::App* cmd, SubjectOptions& s, bool with_chain = true) {
    cmd->add_option("--slope", s.slope, "slope as a CF literal ([0;1,(2,3)]) or quad:(a,b,c,d)");
    cmd->add_option("--rho", s.rho, "intercept: integer, p/q, or quad:(a,b,c,d)");
    cmd->add_option("--variant", s.variant, "floor|ceil mechanical variant")
        ->check(CLI::IsMember({"floor", "ceil"}));
    if (with_chain) cmd->add_option("--chain", s.chain, "chain literal (golden) or JSON (general)");
}

QuadraticNumber parse_number(const std::string& text) {
    if (text.rfind("quad:", 0) == 0) {
        std::istringstream in(text.substr(5));
        char c;
        long a, b, cc, d;
        if (!(in >> c >> a >> c >> b >> c >> cc >> c >> d >> c))
            throw ParseError("bad quad literal \"" + text + "\"");
        return QuadraticNumber(mpz_class(a), mpz_class(b), mpz_class(cc), mpz_class(d));
    }
    if (text.find('/') != std::string::npos) {
        mpq_class q(text);
        q.canonicalize();
        return QuadraticNumber(q);
    }
    return QuadraticNumber(mpz_class(text));
}

Chain parse_chain_literal(const std::string& text, std::optional<GoldenChain>* golden_out) {
    if (!text.empty() && text[0] == '{') {
        json j = json::parse(text);
        Chain chain;
        for (const auto& c : j.at("cases")) chain.cases.push_back(case_from_name(c));
        if (j.contains("t"))
            for (auto& [k, v] : j.at("t").items())
                chain.t[static_cast<size_t>(std::stoul(k))] = v.get<unsigned long>();
        if (j.contains("w1")) chain.w1_len = j.at("w1").get<size_t>();
        if (j.contains("period_begin")) chain.period_begin = j.at("period_begin").get<size_t>();
        if (golden_out) *golden_out = std::nullopt;
        return chain;
    }
    GoldenChain g = parse_golden_chain(text);
    if (golden_out) *golden_out = g;
    return golden_to_chain(g);
}

struct Subject {
    CFExpansion cf;
    WordStream word;
    std::optional<GoldenChain> golden;
    std::optional<Chain> chain;
};

Subject resolve_subject(const SubjectOptions& s) {
    CFExpansion cf = CFExpansion::parse(s.slope);
    if (!s.chain.empty()) {
        std::optional<GoldenChain> golden;
        Chain chain = parse_chain_literal(s.chain, &golden);
        return Subject{cf, synthesize(cf, chain), golden, chain};
    }
    if (!s.rho.empty()) {
        QuadraticNumber theta = cf.value();
        return Subject{cf, WordStream::mechanical(theta, parse_number(s.rho), s.variant == "ceil"),
                       std::nullopt, std::nullopt};
    }
    return Subject{cf, WordStream::characteristic(cf), std::nullopt, std::nullopt};
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::ostream& open_output(const std::string& out, std::ofstream& file) {
    if (out.empty()) return std::cout;
    std::string path = out;
    const char* dir = std::getenv("STURMIAN_LAB_OUT");
    if (dir && *dir && path.find('/') == std::string::npos)
        path = std::string(dir) + "/" + path;
    file.open(path);
    if (!file) throw DomainError("cannot open output file " + path);
    return file;
}

int cmd_generate(const SubjectOptions& s, size_t length, const std::string& format,
                 const std::string& out) {
    Subject subj = resolve_subject(s);
    if (length > 1000000 && out.empty())
        throw DomainError("prefixes longer than 10^6 letters must go to --out");
    std::ofstream file;
    std::ostream& os = open_output(out, file);
    std::string_view w = subj.word.prefix(length);
    if (format == "json") {
        json j{{"source", subj.word.description()}, {"length", length}, {"word", std::string(w)}};
        os << j.dump() << "\n";
    } else {
        os << w << "\n";
    }
    return kExitOk;
}

int cmd_complexity(const SubjectOptions& s, size_t n, size_t length, const std::string& format) {
    Subject subj = resolve_subject(s);
    if (length == 0) length = std::max<size_t>(4 * n, 64);
    FiniteWord w(subj.word.prefix(length));
    size_t p = subword_complexity(w, n);
    if (format == "json")
        std::cout << json{{"n", n}, {"prefix", length}, {"complexity", p}}.dump() << "\n";
    else
        std::cout << "p(" << n << ") = " << p << " (prefix " << length << ")\n";
    return kExitOk;
}

int cmd_rep(const SubjectOptions& s, size_t depth, double window, const std::string& format) {
    Subject subj = resolve_subject(s);
    size_t n = depth_to_profile_n(subj.cf, depth);
    RepProfile prof = r_profile(subj.word, n);
    RepEstimate est = rep_estimate(prof, window);
    std::optional<QuadraticNumber> exact;
    if (subj.golden && !subj.golden->period_letters.empty())
        exact = rep_exact_periodic_golden(*subj.golden);
    if (format == "json") {
        json j{{"subject", subj.word.description()},
               {"depth", depth},
               {"profile_n", n},
               {"estimate", est.value},
               {"estimate_exact_ratio", est.estimate.get_str()},
               {"error_bar", est.error_bar},
               {"lambda_count", prof.lambda.size()}};
        if (exact) j["rep_exact"] = exact->str();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "rep estimate = " << fixed6(est.value) << " (" << est.estimate.get_str()
                  << "), error bar " << est.error_bar << ", lambda elements "
                  << prof.lambda.size() << "\n";
        if (exact)
            std::cout << "rep exact    = " << exact->decimal(6) << " = " << exact->str() << "\n";
    }
    return kExitOk;
}

int cmd_lambda(const SubjectOptions& s, size_t levels, bool diff, const std::string& format) {
    Subject subj = resolve_subject(s);
    if (diff) {
        LambdaDiffReport rep = verify_lambda(subj.word, subj.cf, levels);
        if (format == "json") {
            json j{{"levels", rep.levels},
                   {"lo", rep.lo.get_str()},
                   {"hi", rep.hi.get_str()},
                   {"matched", rep.matched},
                   {"mismatches", rep.missing.size() + rep.extra.size()}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << rep.missing.size() + rep.extra.size() << " mismatches ("
                      << rep.matched << " elements matched on [" << rep.lo << ", " << rep.hi
                      << "], levels " << rep.levels << ")\n";
        }
        return rep.ok() ? kExitOk : kExitMismatch;
    }
    ChainResult cr = chain_of(subj.word, subj.cf, levels);
    LambdaPrediction pred = predict_lambda(cr.states, subj.cf);
    if (format == "json") {
        json el = json::array();
        for (const LambdaElement& e : pred.elements)
            el.push_back({{"n", e.n.get_str()}, {"level", e.level}});
        std::cout << json{{"lo", pred.lo.get_str()}, {"hi", pred.hi.get_str()}, {"elements", el}}.dump()
                  << "\n";
    } else {
        std::cout << "Lambda on [" << pred.lo << ", " << pred.hi << "]:";
        for (const LambdaElement& e : pred.elements) std::cout << " " << e.n;
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_chain(const SubjectOptions& s, size_t levels, const std::string& format) {
    Subject subj = resolve_subject(s);
    ChainResult cr = chain_of(subj.word, subj.cf, levels);
    std::string golden_literal;
    try {
        golden_literal = format_golden_chain(chain_to_golden(cr.chain));
    } catch (const Error&) {
    }
    if (format == "json") {
        json cases = json::array();
        for (Case c : cr.chain.cases) cases.push_back(case_name(c));
        json t = json::object();
        for (auto& [k, v] : cr.chain.t) t[std::to_string(k)] = v;
        json j{{"cases", cases}, {"t", t}, {"w1", cr.chain.w1_len}};
        if (!golden_literal.empty()) j["golden"] = golden_literal;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "chain:";
        for (Case c : cr.chain.cases) std::cout << " (" << case_name(c) << ")";
        std::cout << "\n";
        if (!golden_literal.empty()) std::cout << "golden: " << golden_literal << "\n";
        std::cout << "w:";
        for (const LevelState& st : cr.states) std::cout << " " << st.w_len;
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_synth(const SubjectOptions& s, size_t length, const std::string& format,
              const std::string& out) {
    if (s.chain.empty()) throw DomainError("synth needs --chain");
    return cmd_generate(s, length, format, out);
}

int cmd_repx(const SubjectOptions& s, const std::string& format) {
    if (s.chain.empty()) throw DomainError("repx needs --chain");
    std::optional<GoldenChain> golden;
    parse_chain_literal(s.chain, &golden);
    if (!golden) throw DomainError("repx: exact rep needs a golden {a,b} chain");
    QuadraticNumber v = rep_exact_periodic_golden(*golden);
    if (format == "json")
        std::cout << json{{"chain", format_golden_chain(*golden)},
                          {"rep_exact", v.str()},
                          {"decimal", v.decimal(6)}}
                         .dump()
                  << "\n";
    else
        std::cout << "rep = " << v.decimal(6) << " = " << v.str() << "\n";
    return kExitOk;
}

int cmd_mu(const std::string& format) {
    MuTable t = mu_table();
    if (format == "json") {
        json arr = json::array();
        for (const MuEntry& e : t.entries)
            arr.push_back({{"name", e.name},
                           {"exact", e.exact.str()},
                           {"decimal", e.decimal},
                           {"family", e.chain_family}});
        std::cout << arr.dump() << "\n";
    } else if (format == "csv") {
        std::cout << "name,decimal,exact\n";
        for (const MuEntry& e : t.entries)
            std::cout << e.name << "," << e.decimal << "," << e.exact.str() << "\n";
    } else {
        for (const MuEntry& e : t.entries)
            std::cout << e.name << " = " << e.decimal << " = " << e.exact.str() << "  ["
                      << e.chain_family << "]\n";
    }
    return kExitOk;
}

int cmd_minspec(const std::string& slope, size_t samples, size_t depth, uint64_t seed,
                const std::string& format) {
    CFExpansion cf = CFExpansion::parse(slope);
    MinSpectrumReport rep = min_spectrum_check(cf, samples, depth, seed);
    if (format == "json") {
        std::cout << json{{"slope", cf.str()},
                          {"exact", rep.exact.str()},
                          {"exact_decimal", rep.exact.decimal(6)},
                          {"construction_estimate", rep.construction_estimate},
                          {"sampled_min", rep.sampled_min},
                          {"samples", rep.samples},
                          {"ok", rep.ok()}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "min spectrum exact = " << rep.exact.decimal(6) << " = " << rep.exact.str()
                  << "\nconstruction estimate = " << fixed6(rep.construction_estimate)
                  << "\nsampled min (" << rep.samples << " words) = " << fixed6(rep.sampled_min)
                  << "\n" << (rep.ok() ? "ok" : "MISMATCH") << "\n";
    }
    return rep.ok() ? kExitOk : kExitMismatch;
}

int cmd_scan(size_t count, size_t depth, uint64_t seed, double tolerance, const std::string& out,
             const std::string& format) {
    GapScanConfig cfg;
    cfg.count = count;
    cfg.depth = depth;
    cfg.seed = seed;
    cfg.tolerance = tolerance;
    GapScanResult res = gap_scan(cfg);
    std::vector<RunRecord> records;
    for (size_t i = 0; i < res.subjects.size(); ++i) {
        const GapScanSubject& s = res.subjects[i];
        RunRecord r;
        r.id = "scan-" + std::to_string(seed) + "-" + std::to_string(i);
        r.seed = seed;
        r.subject = s.chain;
        r.depth = depth;
        r.rep_estimate = s.estimate;
        if (s.exact) r.rep_exact = fixed6(*s.exact);
        if (s.gap >= 0) r.violations.push_back("gap" + std::to_string(s.gap));
        records.push_back(std::move(r));
    }
    if (!out.empty()) append_run_records(out, records);
    if (format == "json") {
        std::cout << json{{"count", count},
                          {"violations", res.violations()},
                          {"gap_counts", res.gap_counts}}
                         .dump()
                  << "\n";
    } else if (format == "csv") {
        std::cout << summary_csv(records);
    } else {
        std::cout << count << " chains scanned, " << res.violations()
                  << " gap violations (per gap: " << res.gap_counts[0] << ", "
                  << res.gap_counts[1] << ", " << res.gap_counts[2] << ")\n";
    }
    return res.violations() == 0 ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sturmian-lab: exact repetition-exponent toolkit for Sturmian words"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file overriding defaults");

    std::string format = "plain";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"plain", "json", "csv"}));

    SubjectOptions subj;
    size_t length = 100, n = 10, depth = 40, levels = 10, count = 500, samples = 10;
    double window = 0.2, tolerance = 0.002;
    uint64_t seed = 1;
    bool diff = false;
    std::string out, minspec_slope = "[0;(1)]";

    CLI::App* c_gen = app.add_subcommand("generate", "emit a word prefix");
    add_subject_flags(c_gen, subj);
    c_gen->add_option("--length", length, "prefix length");
    c_gen->add_option("--out", out, "output file");

    CLI::App* c_cx = app.add_subcommand("complexity", "subword complexity p(n)");
    add_subject_flags(c_cx, subj);
    c_cx->add_option("--n", n, "factor length")->required();
    c_cx->add_option("--length", length, "prefix length (default 4n)");

    CLI::App* c_rep = app.add_subcommand("rep", "repetition profile and rep estimate");
    add_subject_flags(c_rep, subj);
    c_rep->add_option("--depth", depth, "level depth for the profile");
    c_rep->add_option("--window", window, "tail window fraction");

    CLI::App* c_lam = app.add_subcommand("lambda", "predicted Lambda set (or --diff vs brute force)");
    add_subject_flags(c_lam, subj);
    c_lam->add_option("--levels", levels, "levels to classify");
    c_lam->add_flag("--diff", diff, "compare prediction against brute force");

    CLI::App* c_chain = app.add_subcommand("chain", "classify a word into its locating chain");
    add_subject_flags(c_chain, subj, false);
    c_chain->add_option("--levels", levels, "levels to classify");

    CLI::App* c_synth = app.add_subcommand("synth", "synthesize the word of a chain");
    add_subject_flags(c_synth, subj);
    c_synth->add_option("--length", length, "prefix length");
    c_synth->add_option("--out", out, "output file");

    CLI::App* c_repx = app.add_subcommand("repx", "exact rep of an eventually periodic golden chain");
    add_subject_flags(c_repx, subj);

    app.add_subcommand("mu", "the seven spectrum constants");

    CLI::App* c_min = app.add_subcommand("minspec", "minimum of the rep spectrum of a slope");
    c_min->add_option("--slope", minspec_slope, "slope CF literal");
    c_min->add_option("--samples", samples, "sampled intercepts");
    c_min->add_option("--depth", depth, "profile depth");
    c_min->add_option("--seed", seed, "RNG seed");

    CLI::App* c_scan = app.add_subcommand("scan", "gap-emptiness scan over random golden chains");
    c_scan->add_option("--count", count, "number of chains");
    c_scan->add_option("--depth", depth, "profile depth");
    c_scan->add_option("--seed", seed, "RNG seed");
    c_scan->add_option("--tolerance", tolerance, "gap shrink delta");
    c_scan->add_option("--out", out, "append JSONL run records here");

    // Accept app-wide options (--format, --config) after the subcommand too.
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("generate")) return cmd_generate(subj, length, format, out);
        if (app.got_subcommand("complexity")) return cmd_complexity(subj, n, length == 100 ? 0 : length, format);
        if (app.got_subcommand("rep")) return cmd_rep(subj, depth, window, format);
        if (app.got_subcommand("lambda")) return cmd_lambda(subj, levels, diff, format);
        if (app.got_subcommand("chain")) return cmd_chain(subj, levels, format);
        if (app.got_subcommand("synth")) return cmd_synth(subj, length, format, out);
        if (app.got_subcommand("repx")) return cmd_repx(subj, format);
        if (app.got_subcommand("mu")) return cmd_mu(format);
        if (app.got_subcommand("minspec")) return cmd_minspec(minspec_slope, samples, depth, seed, format);
        if (app.got_subcommand("scan")) return cmd_scan(count, depth, seed, tolerance, out, format);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
