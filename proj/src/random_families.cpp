#include "subposets/random_families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "subposets/lattice.hpp"
#include "subposets/supersat.hpp"

namespace subposets {

using Float100 = boost::multiprecision::cpp_bin_float_100;

RandomFamilySample sample_family(int n, double p, std::uint64_t seed) {
    if (n < 0 || n > 24) throw CapacityError("sample_family limited to n <= 24");
    if (p < 0 || p > 1) throw DomainError("probability out of [0,1]");
    std::uint64_t threshold = std::uint64_t(p * 9007199254740992.0);  // p * 2^53
    SplitMix64 gen(seed);
    std::vector<SetWord> members;
    for (SetWord s = 0; s < (SetWord(1) << n); ++s)
        if ((gen.next() >> 11) < threshold) members.push_back(s);
    return RandomFamilySample{n, p, seed, SetFamily(GroundSet(n), std::move(members))};
}

namespace {

bool is_chain_pattern(const Poset& p) {
    for (int i = 0; i < p.size(); ++i)
        if (p.up_covers(i).size() > 1 || p.down_covers(i).size() > 1) return false;
    return p.height() == p.size();
}

bool is_upward_monotone_tree(const Poset& p) {
    if (!p.is_tree()) return false;
    int minima = 0;
    for (int i = 0; i < p.size(); ++i)
        if (p.down_covers(i).empty()) ++minima;
    if (minima != 1) return false;
    // every edge oriented away from the unique minimum
    int root = -1;
    for (int i = 0; i < p.size(); ++i)
        if (p.down_covers(i).empty()) root = i;
    for (int i = 0; i < p.size(); ++i)
        if (i != root && !p.leq(root, i)) return false;
    return true;
}

bool is_downward_monotone_tree(const Poset& p) { return is_upward_monotone_tree(p.dual()); }

long long max_branching(const Poset& p) {
    long long b = 1;
    for (int i = 0; i < p.size(); ++i)
        b = std::max<long long>(b, std::max(p.up_covers(i).size(), p.down_covers(i).size()));
    return b;
}

// d_k via the flow solver, short-circuited when k already covers everything
long long max_k_antichain_bound(const SetFamily& family, long long k) {
    if (k >= (long long)family.size()) return (long long)family.size();
    ExtremalResult r = max_ct_free(family, int(k) + 1);
    return r.value.convert_to<long long>();
}

// greedy P-free extension of a seed subfamily, scanning leftovers canonically;
// capped so large samples stay fast
SetFamily greedy_extend(const SetFamily& sample, const SetFamily& seed, const Poset& pattern,
                        std::size_t budget) {
    std::vector<SetWord> current(seed.members());
    std::size_t tried = 0;
    for (SetWord s : sample.members()) {
        if (tried >= budget) break;
        if (seed.contains(s)) continue;
        ++tried;
        std::vector<SetWord> trial = current;
        trial.push_back(s);
        SetFamily t(sample.ground(), trial);
        if (family_is_pfree(pattern, t, pattern.size())) current = std::move(trial);
    }
    return SetFamily(sample.ground(), current);
}

// certified upper bound for the largest P-free subfamily via the height
// recursion: forks bound by d_t, taller monotone trees by
// d_{2t^h} + bound(height-1); non-monotone trees fall back to |sample|
BigInt heuristic_upper_bound(const SetFamily& sample, const Poset& pattern) {
    const Poset* work = &pattern;
    Poset dualized = pattern.dual();
    if (is_downward_monotone_tree(pattern)) work = &dualized;
    if (!is_upward_monotone_tree(*work)) return BigInt(sample.size());
    long long t = max_branching(*work);
    int h = work->height();
    if (sample.empty()) return 0;
    BigInt total = 0;
    for (int level = h; level >= 2; --level) {
        double w = level == 2 ? double(t) : 2.0 * std::pow(double(t), double(level));
        long long fork_width =
            w > double(sample.size()) ? (long long)sample.size() : (long long)w;
        total += BigInt(max_k_antichain_bound(sample, fork_width));
        if (total > BigInt(sample.size())) return BigInt(sample.size());
    }
    return boost::multiprecision::min(total, BigInt(sample.size()));
}

}  // namespace

PfreeEstimate largest_pfree_in_sample(const SetFamily& sample, const CatalogEntry& pattern,
                                      EstimatorMode mode) {
    const Poset& pat = pattern.poset;
    if (mode == EstimatorMode::automatic) {
        if (pattern.name == "chain" && pattern.params[0] == 2)
            mode = EstimatorMode::dilworth;
        else if (pattern.name == "chain")
            mode = EstimatorMode::greene_kleitman;
        else if (sample.size() <= 25)
            mode = EstimatorMode::exact;
        else
            mode = EstimatorMode::heuristic;
    }
    PfreeEstimate out;
    switch (mode) {
        case EstimatorMode::exact: {
            ExtremalResult r = max_pfree_subfamily(sample, pat);
            out = {r.value, r.value, true, "exact", r.witness};
            break;
        }
        case EstimatorMode::dilworth: {
            if (!(pattern.name == "chain" && pattern.params[0] == 2))
                throw DomainError("dilworth mode needs the chain:2 pattern");
            ExtremalResult r = max_antichain(sample);
            out = {r.value, r.value, true, "dilworth", r.witness};
            break;
        }
        case EstimatorMode::greene_kleitman: {
            if (pattern.name != "chain")
                throw DomainError("greene-kleitman mode needs a chain pattern");
            ExtremalResult r = max_ct_free(sample, int(pattern.params[0]));
            out = {r.value, r.value, true, "greene-kleitman", r.witness};
            break;
        }
        case EstimatorMode::heuristic: {
            if (!pat.is_tree()) throw DomainError("heuristic mode needs a tree pattern");
            int h = pat.height();
            // union of the h-1 largest Mirsky levels is pattern-free by height
            auto levels = mirsky_levels(sample);
            int height = 0;
            for (int l : levels) height = std::max(height, l);
            std::vector<std::pair<long long, int>> sizes;
            for (int l = 1; l <= height; ++l)
                sizes.push_back({-(long long)std::count(levels.begin(), levels.end(), l), l});
            std::sort(sizes.begin(), sizes.end());
            std::vector<char> keep(height + 1, 0);
            for (int i = 0; i < std::min<int>(h - 1, int(sizes.size())); ++i)
                keep[sizes[i].second] = 1;
            std::vector<SetWord> seed;
            for (std::size_t i = 0; i < sample.size(); ++i)
                if (keep[levels[i]]) seed.push_back(sample[i]);
            SetFamily witness(sample.ground(), seed);
            if (sample.size() <= 4096)
                witness = greedy_extend(sample, witness, pat, 4096);
            if (!family_is_pfree(pat, witness, pat.size()))
                throw std::logic_error("heuristic witness fails the freeness check");
            out.lower = BigInt(witness.size());
            out.upper = heuristic_upper_bound(sample, pat);
            out.exact = out.lower == out.upper;
            out.method = "heuristic";
            out.witness = witness;
            break;
        }
        default:
            throw DomainError("unresolved estimator mode");
    }
    if (out.lower > out.upper) throw std::logic_error("estimator lower bound exceeds upper bound");
    return out;
}

// --- experiments ---------------------------------------------------------------

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw IoError(std::string("bad experiment config: ") + e.what());
    }
    ExperimentConfig cfg;
    cfg.pattern = parse_pattern_shorthand(j.value("pattern", "chain:2"));
    for (auto v : j.value("n", std::vector<int>{})) cfg.n_values.push_back(v);
    if (j.contains("p"))
        for (auto v : j["p"]) cfg.p_values.push_back(v.get<double>());
    if (j.contains("c_over_n"))
        for (auto v : j["c_over_n"]) cfg.c_over_n.push_back(v.get<double>());
    cfg.trials = j.value("trials", 1);
    cfg.seed = j.value("seed", std::uint64_t(0));
    std::string mode = j.value("mode", "auto");
    if (mode == "auto") cfg.mode = EstimatorMode::automatic;
    else if (mode == "exact") cfg.mode = EstimatorMode::exact;
    else if (mode == "dilworth") cfg.mode = EstimatorMode::dilworth;
    else if (mode == "gk") cfg.mode = EstimatorMode::greene_kleitman;
    else if (mode == "heuristic") cfg.mode = EstimatorMode::heuristic;
    else throw IoError("unknown estimator mode: " + mode);
    cfg.jobs = j.value("jobs", 1);
    if (cfg.trials < 1) throw DomainError("trials must be >= 1");
    if (cfg.n_values.empty()) throw DomainError("config needs at least one n");
    if (cfg.p_values.empty() && cfg.c_over_n.empty()) throw DomainError("config needs a p grid");
    for (double p : cfg.p_values)
        if (p <= 0 || p > 1) throw DomainError("grid probabilities must lie in (0,1]");
    return cfg;
}

std::vector<ExperimentCell> run_experiment(const ExperimentConfig& config) {
    std::vector<ExperimentCell> cells;
    struct Point {
        int n;
        double p;
        std::string spec;
        double c = 0;
    };
    std::vector<Point> grid;
    for (int n : config.n_values) {
        for (double p : config.p_values) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", p);
            grid.push_back({n, p, buf, 0});
        }
        for (double c : config.c_over_n) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "c=%g", c);
            double p = c / n;
            if (p <= 0 || p > 1) throw DomainError("c/n grid probability out of (0,1]");
            grid.push_back({n, p, buf, c});
        }
    }
    std::uint64_t cell_index = 0;
    for (const auto& pt : grid) {
        std::function<std::pair<double, double>(std::size_t)> trial =
            [&](std::size_t i) -> std::pair<double, double> {
            std::uint64_t s = derive_seed(config.seed, cell_index * 1000003ULL + i);
            auto smp = sample_family(pt.n, pt.p, s);
            PfreeEstimate est = largest_pfree_in_sample(smp.family, config.pattern, config.mode);
            return {est.lower.convert_to<double>(), est.upper.convert_to<double>()};
        };
        auto vals = parallel_map<std::pair<double, double>>(config.jobs, config.trials, trial);
        ExperimentCell cell;
        cell.n = pt.n;
        cell.p = pt.p;
        cell.p_spec = pt.spec;
        cell.trials = config.trials;
        double sum = 0, sumu = 0, mn = 1e300, mx = -1e300;
        for (auto [v, u] : vals) {
            sum += v;
            sumu += u;
            mn = std::min(mn, v);
            mx = std::max(mx, v);
        }
        cell.mean_value = sum / config.trials;
        cell.min_value = mn;
        cell.max_value = mx;
        double pm = pt.p * binomial(pt.n, pt.n / 2).convert_to<double>();
        cell.mean_normalized = cell.mean_value / pm;
        cell.mean_upper_normalized = (sumu / config.trials) / pm;
        EstimatorMode m = config.mode;
        if (m == EstimatorMode::automatic)
            m = config.pattern.name == "chain" ? EstimatorMode::dilworth : EstimatorMode::heuristic;
        cell.certified_exact = m != EstimatorMode::heuristic;
        cell.osthus_reference =
            (config.pattern.name == "chain" && config.pattern.params[0] == 2 && pt.c > 0)
                ? 1.0 + std::exp(-pt.c / 2)
                : 0.0;
        cells.push_back(cell);
        ++cell_index;
    }
    return cells;
}

void write_experiment_csv(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<ExperimentCell>& cells) {
    out << "pattern,n,p_spec,p,trials,seed,mean_value,min_value,max_value,"
           "mean_normalized,mean_upper_normalized,certified,osthus_reference\n";
    std::string pname = config.pattern.name;
    for (long long q : config.pattern.params) pname += ":" + std::to_string(q);
    char buf[512];
    for (const auto& c : cells) {
        std::snprintf(buf, sizeof buf, "%s,%d,%s,%.10g,%d,%llu,%.10g,%.10g,%.10g,%.10g,%.10g,%s,%.10g\n",
                      pname.c_str(), c.n, c.p_spec.c_str(), c.p, c.trials,
                      (unsigned long long)config.seed, c.mean_value, c.min_value, c.max_value,
                      c.mean_normalized, c.mean_upper_normalized,
                      c.certified_exact ? "exact" : "heuristic", c.osthus_reference);
        out << buf;
    }
}

// --- diamond construction --------------------------------------------------------

DiamondRunReport diamond_lower_bound_run(int n, double p, std::uint64_t seed) {
    if (n < 2 || n > 18) throw CapacityError("diamond run limited to 2 <= n <= 18");
    DiamondRunReport rep;
    rep.n = n;
    rep.p = p;
    rep.seed = seed;
    int k = n / 2;

    auto smp = sample_family(n, p, seed);
    std::vector<SetWord> mids;
    for (SetWord s : smp.family.members()) {
        int sz = set_size(s);
        if (sz >= k - 1 && sz <= k + 1) mids.push_back(s);
    }
    SetFamily fam(GroundSet(n), mids);
    rep.sample_size = fam.size();
    rep.three_pm = 3.0 * p * binomial(n, k).convert_to<double>();

    // within three layers every diamond copy is bottom at k-1, top at k+1,
    // both intermediate sets present
    std::vector<SetWord> bottoms, tops;
    for (SetWord s : fam.members()) {
        if (set_size(s) == k - 1) bottoms.push_back(s);
        if (set_size(s) == k + 1) tops.push_back(s);
    }
    std::vector<char> removed(std::size_t(1) << n, 0);
    long long copies = 0, removals = 0;
    for (SetWord a : bottoms) {
        for (SetWord b : tops) {
            if (!subset_of(a, b)) continue;
            // the two middles between a and b
            SetWord diff = b & ~a;
            int bits[2], bi = 0;
            for (int i = 0; i < n; ++i)
                if (diff & (SetWord(1) << i)) bits[bi++] = i;
            SetWord m1 = a | (SetWord(1) << bits[0]), m2 = a | (SetWord(1) << bits[1]);
            if (fam.contains(m1) && fam.contains(m2)) {
                ++copies;
                if (!removed[b]) {  // one element per copy; the top kills every copy through it
                    removed[b] = 1;
                    ++removals;
                }
            }
        }
    }
    rep.copies_found = copies;
    rep.removals = removals;
    std::vector<SetWord> final_members;
    for (SetWord s : fam.members())
        if (!removed[s]) final_members.push_back(s);
    SetFamily result(GroundSet(n), final_members);
    rep.final_size = result.size();

    // certification, twice: direct middle recount and the generic embedding search
    bool clean = true;
    for (SetWord a : result.members()) {
        if (set_size(a) != k - 1) continue;
        for (SetWord b : result.members()) {
            if (set_size(b) != k + 1 || !subset_of(a, b)) continue;
            SetWord diff = b & ~a;
            int cnt = 0;
            for (int i = 0; i < n; ++i)
                if ((diff & (SetWord(1) << i)) && result.contains(a | (SetWord(1) << i))) ++cnt;
            if (cnt >= 2) clean = false;
        }
    }
    bool embed_clean = !find_subposet(catalog("diamond", {2}).poset, result, false, 4).has_value();
    rep.certified_free = clean && embed_clean;

    rep.census_full_middle3 = binomial(n, k - 1) * binomial(n - k + 1, 2);
    double p4 = p * p * p * p;
    rep.expected_copies = rep.census_full_middle3.convert_to<double>() * p4;
    rep.formula_copies = p4 * (double(n) * n / 8.0) * binomial(n, k).convert_to<double>();
    return rep;
}

// --- the union bound ---------------------------------------------------------------

namespace {

// log Gamma by the Stirling series with argument shifting; ~1e-60 relative
Float100 lgamma_hp(Float100 z) {
    static const Float100 half_log_two_pi =
        Float100("0.91893853320467274178032973640561763986139747363778341281715");
    Float100 shift = 0;
    while (z < 64) {
        shift -= log(z);
        z += 1;
    }
    // Bernoulli term coefficients B_{2k} / (2k (2k-1))
    static const char* coeff[] = {
        "0.083333333333333333333333333333333333333333333333333",   // 1/12
        "-0.0027777777777777777777777777777777777777777777777778", // -1/360
        "0.00079365079365079365079365079365079365079365079365079", // 1/1260
        "-0.00059523809523809523809523809523809523809523809523810",
        "0.00084175084175084175084175084175084175084175084175084",
        "-0.0019175269175269175269175269175269175269175269175269",
        "0.0064102564102564102564102564102564102564102564102564",
        "-0.029550653594771241830065359477124183006535947712418",
    };
    Float100 out = (z - Float100(0.5)) * log(z) - z + half_log_two_pi;
    Float100 zpow = z;
    for (const char* c : coeff) {
        out += Float100(c) / zpow;
        zpow *= z * z;
    }
    return out + shift;
}

// dominant-term reading: indexes past the middle clamp to the central value
Float100 log_binomial_hp(const Float100& n, Float100 k) {
    if (k <= 0) return 0;
    if (k > n / 2) k = n / 2;
    return lgamma_hp(n + 1) - lgamma_hp(k + 1) - lgamma_hp(n - k + 1);
}

Float100 to_f100(const Rational& r) {
    return Float100(boost::multiprecision::numerator(r)) /
           Float100(boost::multiprecision::denominator(r));
}

}  // namespace

PiReport union_bound_pi(long long n, int h, int pattern_size, const Rational& delta,
                        const Rational& epsilon, const Rational& p) {
    if (n < 2 || h < 1 || pattern_size < 1) throw DomainError("union bound needs n >= 2, h,|P| >= 1");
    if (delta <= 0 || epsilon <= 0) throw DomainError("delta and epsilon must be positive");
    if (p <= 0 || p > 1) throw DomainError("p must lie in (0,1]");

    // m = C(n, n/2) exactly, then into 100-digit floats
    BigInt m_exact = binomial(int(n), int(n / 2));
    Float100 m(m_exact);
    Float100 two_n = exp(Float100(n) * log(Float100(2)));
    Float100 n19 = exp(Float100("1.9") * log(Float100(n)));
    Float100 a_star = Float100(pattern_size) * two_n / n19;
    Float100 b_star = Float100(pattern_size) * (4 * h - 3) * m / (to_f100(delta) * Float100(n));
    Float100 logp = log(to_f100(p));

    Rational exponent_rational = epsilon * epsilon * p * Rational(m_exact) / (100 * h * h);
    Rational budget_rational = epsilon * epsilon * p * Rational(m_exact) / (400 * h * h);

    Float100 f0 = log(a_star + 1) + log(b_star + 1);
    Float100 f1 = log_binomial_hp(two_n, a_star) + a_star * logp;
    Float100 f2 = log_binomial_hp((4 * h - 3) * m, b_star) + b_star * logp;
    Float100 ex = to_f100(exponent_rational);
    Float100 budget = to_f100(budget_rational);
    Float100 log_pi = f0 + f1 + f2 - ex;

    PiReport rep;
    rep.log_pi = log_pi.convert_to<double>();
    rep.vacuous = log_pi >= 0;
    rep.log_factor_counts = f0.convert_to<double>();
    rep.log_factor_stage1 = f1.convert_to<double>();
    rep.log_factor_stage2 = f2.convert_to<double>();
    rep.log_budget = budget.convert_to<double>();
    rep.factor_ok[0] = f0 <= budget;
    rep.factor_ok[1] = f1 <= budget;
    rep.factor_ok[2] = f2 <= budget;
    {
        std::ostringstream ss;
        ss << boost::multiprecision::numerator(exponent_rational) << "/"
           << boost::multiprecision::denominator(exponent_rational);
        rep.exponent_exact = ss.str();
    }
    rep.log_exponent = ex.convert_to<double>();
    return rep;
}

}  // namespace subposets
