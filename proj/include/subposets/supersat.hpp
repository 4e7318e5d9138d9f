#pragma once

#include "subposets/embed.hpp"
#include "subposets/lattice.hpp"

namespace subposets {

enum class Direction { down, up };

/// Per-member richness tags: type 1 = many related sets one level away,
/// type 2 = some level j >= 2 with many related sets, type 3 = neither.
/// Type 1 takes precedence when both hold.
struct TypeClassification {
    enum class Tag { type1, type2, type3 };
    Direction direction;
    Rational epsilon;
    std::vector<Tag> tags;
    std::vector<std::vector<int>> dist1;            // members one level away (witnesses)
    std::vector<int> type2_j;                       // offending j per member, 0 if none
    std::vector<std::vector<int>> type2_witnesses;  // members at that j
};

/// Thresholds: type 1 needs >= eps*n/30 members at distance 1, type 2 needs some
/// j >= 2 with >= eps*n^2/30 members; exact rational comparisons.
/// The family must lie inside the middle band.
TypeClassification classify_types(const SetFamily& family, const Rational& epsilon, Direction direction);

struct ForkReport {
    bool applicable = false;  // hypotheses verified
    std::string detail;       // first failing member/level when inapplicable
    bool bound_holds = false;
    BigInt family_size;
    Rational bound;  // (1+15eps)m, resp. (4+400eps)m
};

/// Hypotheses: every member has upper shadow <= eps*n at distance 1 and
/// <= eps*n^2 at every distance >= 2; conclusion |F| <= (1+15eps)·binom(n,n/2).
ForkReport check_fork_bound(const SetFamily& family, const Rational& epsilon);
/// Variant: upper shadow <= eps*n^4 at every distance >= 4; |F| <= (4+400eps)m.
ForkReport check_fork_plus_bound(const SetFamily& family, const Rational& epsilon);

// Asymptotic multiplicity constants, exposed for documentation and formula checks.
Rational wedge_delta(const Rational& eps);                 // eps^2 / (120(1+eps))
Rational yd_delta(const Rational& eps);                    // eps^2 / (960(1+eps/2))
Rational radius2_delta_star(const Rational& eps);          // min of the two at eps/3
Rational radius2_delta(const Rational& eps);               // delta_star / 200

struct FinderOptions {
    std::optional<long long> target_t;  // desk mode when set; strict paper mode otherwise
    std::optional<int> forced_hub;      // member index in the working family
    std::vector<int> avoid;             // members never selected (hub excepted)
};

/// Result of a supersaturation finder. In strict mode the family is trimmed to
/// the paper size exactly; in desk mode the size premise is only reported.
struct SupersatWitness {
    SetFamily working;                // banded (and possibly trimmed) family the run used
    std::vector<long long> degrees;   // auxiliary bipartite degrees per working member
    int hub = -1;
    std::vector<int> tops;            // the c-role members
    std::optional<BlowupEmbedding> embedding;
    long long achieved_t = 0;
    long long target_t = 0;
    bool shortfall = false;
    bool size_premise_met = false;
    std::vector<std::string> log;
};

/// Wedge blow-up finder. legs = down builds the pattern with tops above the hub
/// and leg sets below each top; legs = up builds the dual.
SupersatWitness find_wedge_blowup(const SetFamily& family, const Rational& epsilon,
                                  FinderOptions opt = {}, Direction legs = Direction::down);

/// Arm = up: hub below its tops, each top extended downward (legs) and upward
/// (arms); arm = down is the dual. Runs the wedge finder inside the rich
/// subfamily, the role-swap disjointification, then the per-type extension.
SupersatWitness find_yd_blowup(const SetFamily& family, const Rational& epsilon,
                               FinderOptions opt = {}, Direction arm = Direction::up);

/// Three-step disjointification record for the radius-2 finders.
struct SPlusAssembly {
    std::string pattern;  // s | splus | spp
    SetFamily working;
    int hub = -1;
    long long working_tau = 0;  // group size the two side copies were built with
    long long achieved_t = 0;
    long long target_t = 0;
    bool shortfall = false;
    bool size_premise_met = false;

    std::vector<int> side_b;                            // down-side tops (b roles)
    std::vector<std::vector<std::vector<int>>> legs_b;  // per b, per leg kind
    std::vector<int> side_d;                            // up-side tops (d roles)
    std::vector<std::vector<std::vector<int>>> legs_d;  // per d, per leg kind

    struct FilterStep {
        std::string what;
        std::vector<int> removed;  // member indices removed at this step
    };
    std::vector<FilterStep> filter_log;
    long long destroyed_count = 0;
    Rational destroyed_bound;     // 99|G_b|/100 at the time of step 3
    bool driver_inequality_holds = false;  // |G_d|·tau < (99 tau/200)^2, the asymptotic driver
    std::optional<BlowupEmbedding> embedding;
    std::vector<std::string> log;
};

/// Builds pattern(x, target_t) for pattern in {s, splus, spp}: two independent
/// side copies sharing the hub, then the three overlap-filter steps.
SPlusAssembly find_radius2_blowup(const std::string& pattern, const SetFamily& family,
                                  const Rational& epsilon,
                                  std::optional<long long> target_t);

/// Large-blow-up variant: rich = some level j >= 4 with >= eps*n^4/500 related
/// members, hub of maximal degree against the rich side, greedy distinct legs.
/// Patterns wedge (legs down) and vee (legs up).
struct SpecialWitness {
    SetFamily working;
    int hub = -1;
    std::vector<int> tops;
    std::optional<BlowupEmbedding> embedding;
    long long achieved_t = 0;
    bool size_premise_met = false;
    double target_n19 = 0;   // n^1.9 reference target
    double target_n191 = 0;  // n^1.91, the strengthened exponent
    std::vector<std::string> log;
};
SpecialWitness find_special_blowup(const std::string& pattern, const SetFamily& family,
                                   const Rational& epsilon,
                                   std::optional<long long> target_t = std::nullopt);

}  // namespace subposets
