#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sturmian/cf.hpp"
#include "sturmian/chain.hpp"
#include "sturmian/quadratic.hpp"
#include "sturmian/rep.hpp"
#include "sturmian/words.hpp"

namespace sturmian {

struct MuEntry {
    std::string name;
    QuadraticNumber exact;
    std::string decimal;       // 6 d.p.
    std::string chain_family;  // which chains attain it
};

struct MuTable {
    std::vector<MuEntry> entries;
    const MuEntry& at(const std::string& name) const;
};

// The seven distinguished constants: r_max, r1, mu_max, mu2, mu3, mu4, mu_min.
MuTable mu_table();

// Exact rep of the chain ((b^2 a^2)^d b a) repeated, d >= 1:
// 1 + (1/phi + phi + phi^6/(1-phi^{6d+3})
//        + phi^10 (1-phi^{6d}) / ((1-phi^6)(1-phi^{6d+3})))^{-1}.
QuadraticNumber mu4_family_value(size_t d);

// rep -> rep/(rep - 1), the irrationality exponent of the Sturmian number.
QuadraticNumber irrationality_exponent(const QuadraticNumber& rep);
mpq_class irrationality_exponent(const mpq_class& rep);

struct LambdaDiffReport {
    size_t levels = 0;     // levels actually compared
    mpz_class lo, hi;      // compared interval
    size_t matched = 0;    // elements agreeing
    std::vector<mpz_class> missing;  // predicted but absent from brute force
    std::vector<mpz_class> extra;    // brute force but not predicted
    bool ok() const { return missing.empty() && extra.empty(); }
};

// Brute-force Lambda (rep-engine) vs symbolic prediction (locating-chain) on
// the interval the chain certifies. K shrinks automatically so the brute
// pass stays within max_letters.
LambdaDiffReport verify_lambda(WordStream x, const CFExpansion& cf, size_t K,
                               size_t max_letters = 4000000);

// Profile size for a requested level depth: min(q_{depth+1} - 1, cap). The
// cap keeps desk-scale runs bounded; convergence is geometric in the level,
// so the cap does not hurt the documented tolerances.
size_t depth_to_profile_n(const CFExpansion& cf, size_t depth, size_t cap = 250000);

// Liminf estimate taken on the certified lambda elements of a locating chain
// instead of a letter-level profile: states are built through `depth` levels,
// the predicted elements replace profile.lambda, and the same trailing-window
// minimum runs over their consecutive ratios. Reaches depths far beyond what
// letter profiles can cover, so slow-recurring junction ratios stay visible.
RepEstimate rep_estimate_symbolic(const CFExpansion& cf, const Chain& chain, size_t depth,
                                  double window = 0.2);

// Random eventually periodic golden chain: fair letters, optional leading
// (iii), period of 1..6 letters. min_levels bounds the finite part from below.
GoldenChain sample_golden_chain(std::mt19937_64& rng, size_t min_levels);

struct GeneralSubject {
    CFExpansion cf;
    QuadraticNumber theta;
    QuadraticNumber rho;
    bool ceil_variant = false;
    std::string descr;
};

// Random quadratic slope (periodic expansion, quotients <= max_quotient) with
// a random rational intercept; resampled until level q-growth stays below
// q_cap at the requested level.
GeneralSubject sample_general_subject(std::mt19937_64& rng, size_t level, size_t q_cap,
                                      unsigned long max_quotient = 4);

struct GapScanConfig {
    size_t count = 500;
    size_t depth = 40;
    double tolerance = 0.002;
    uint64_t seed = 1;
    size_t workers = 0;  // 0 = hardware concurrency (capped at 8)
};

struct GapScanSubject {
    std::string chain;
    double estimate = 0.0;
    double error_bar = 0.0;
    std::optional<double> exact;  // periodic chains carry their exact rep
    int gap = -1;                 // 0/1/2 when the whole error bar sits in a gap
};

struct GapScanResult {
    std::vector<GapScanSubject> subjects;       // indexed by sample number
    std::array<size_t, 3> gap_counts{0, 0, 0};  // (mu4,mu3), (mu3,mu2), (mu2,mu_max)
    size_t violations() const { return gap_counts[0] + gap_counts[1] + gap_counts[2]; }
};

// Sample golden chains, estimate rep for each, and count estimates whose
// whole error bar falls inside one of the three gaps shrunk by `tolerance`.
GapScanResult gap_scan(const GapScanConfig& config);

struct MinSpectrumReport {
    QuadraticNumber exact;
    double exact_value = 0.0;
    double construction_estimate = 0.0;  // the isolated-(i)(iii) builder chain
    double sampled_min = 0.0;            // over mechanical words, random intercepts
    size_t samples = 0;
    bool construction_ok = false;  // |construction - exact| <= 5e-3
    bool sampled_ok = false;       // sampled_min >= exact - 1e-3
    bool ok() const { return construction_ok && sampled_ok; }
};

// Exact minimum of the rep spectrum of the slope (periodic expansions) versus
// sampled words and the equality-construction chain: all-(ii) cases with
// isolated (i)(iii) pairs at levels 2, 5, 10, ... (gaps 2j+1).
MinSpectrumReport min_spectrum_check(const CFExpansion& cf, size_t sample_count, size_t depth,
                                     uint64_t seed);

// The construction chain itself, covering levels 1..K.
Chain min_spectrum_construction_chain(const CFExpansion& cf, size_t K);

struct RunRecord {
    std::string id;
    uint64_t seed = 0;
    std::string subject;
    size_t depth = 0;
    std::optional<double> rep_estimate;
    std::optional<std::string> rep_exact;
    std::vector<int64_t> lambda_head;
    std::vector<std::string> violations;
};

// One JSON object per record, one per line.
std::string run_record_json(const RunRecord& rec);
void append_run_records(const std::string& path, const std::vector<RunRecord>& recs);
// "subject,depth,estimate,exact,abs_err" rows (header included).
std::string summary_csv(const std::vector<RunRecord>& recs);

}  // namespace sturmian
