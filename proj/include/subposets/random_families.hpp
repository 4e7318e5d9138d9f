#pragma once

#include <iosfwd>

#include "subposets/extremal.hpp"
#include "subposets/poset.hpp"

namespace subposets {

struct RandomFamilySample {
    int n = 0;
    double p = 0;
    std::uint64_t seed = 0;
    SetFamily family;
};

/// Keeps each subset of [n] independently with probability p; pinned generator
/// (splitmix64, 53-bit threshold test), bit-identical across platforms. n <= 24.
RandomFamilySample sample_family(int n, double p, std::uint64_t seed);

enum class EstimatorMode { automatic, exact, dilworth, greene_kleitman, heuristic };

struct PfreeEstimate {
    BigInt lower;      // size of a certified P-free subfamily
    BigInt upper;      // certified upper bound for the maximum
    bool exact;        // lower == upper == optimum
    std::string method;
    SetFamily witness;  // the P-free subfamily behind `lower`
};

/// Largest P-free subfamily of a sample. exact: search (<= 25 members);
/// dilworth: pattern chain:2; greene_kleitman: chain:t; heuristic: tree
/// patterns, level-union lower bound with greedy extension plus a
/// height-recursion upper bound.
PfreeEstimate largest_pfree_in_sample(const SetFamily& sample, const CatalogEntry& pattern,
                                      EstimatorMode mode);

struct ExperimentConfig {
    CatalogEntry pattern;
    std::vector<int> n_values;
    std::vector<double> p_values;       // absolute probabilities
    std::vector<double> c_over_n;       // alternative grid: p = c / n
    int trials = 1;
    std::uint64_t seed = 0;
    EstimatorMode mode = EstimatorMode::automatic;
    int jobs = 1;
};

ExperimentConfig parse_experiment_config(const std::string& json_text);

struct ExperimentCell {
    int n;
    double p;
    std::string p_spec;  // "0.5" or "c=2.0"
    int trials;
    double mean_value, min_value, max_value;
    double mean_normalized;  // mean / (p * binom(n, n/2))
    double mean_upper_normalized;
    bool certified_exact;
    double osthus_reference;  // 1 + e^{-c/2} for chain:2 with p = c/n, else 0
};

std::vector<ExperimentCell> run_experiment(const ExperimentConfig& config);
void write_experiment_csv(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<ExperimentCell>& cells);

struct DiamondRunReport {
    int n;
    double p;
    std::uint64_t seed;
    std::size_t sample_size;        // middle-3-layer part of the sample
    long long copies_found;         // diamond copies enumerated in it
    long long removals;             // elements removed (one per surviving copy)
    std::size_t final_size;
    bool certified_free;            // both the recount and the embedding check
    double three_pm;                // 3 p binom(n, n/2)
    BigInt census_full_middle3;     // exact diamond count in the full middle 3 layers
    double expected_copies;         // census * p^4
    double formula_copies;          // p^4 (n^2/8) binom(n, n/2)
};

/// Samples the middle three layers, removes one element from every diamond
/// copy, certifies the leftover diamond-free, and evaluates the copy-count
/// formula exactly. n <= 18.
DiamondRunReport diamond_lower_bound_run(int n, double p, std::uint64_t seed);

struct PiReport {
    double log_pi;        // natural log of the union bound
    bool vacuous;         // log_pi >= 0
    double log_factor_counts;    // log (a*+1)(b*+1)
    double log_factor_stage1;    // log C(2^n, a*) p^{a*}
    double log_factor_stage2;    // log C((4h-3)m, b*) p^{b*}
    double log_budget;           // eps^2 p m / (400 h^2), the per-factor allowance
    bool factor_ok[3];
    std::string exponent_exact;  // eps^2 p m / (100 h^2) as an exact rational string
    double log_exponent;         // its value
};

/// Evaluates the union bound
///   (a*+1)(b*+1) C(2^n,a*) p^{a*} C((4h-3)m, b*) p^{b*} e^{-eps^2 p m/(100h^2)}
/// with a* = |P| 2^n / n^{1.9}, b* = |P|(4h-3) m / (delta n), in log space with
/// 100-digit floats; the exponent itself is computed as an exact rational.
PiReport union_bound_pi(long long n, int h, int pattern_size, const Rational& delta,
                        const Rational& epsilon, const Rational& p);

}  // namespace subposets
