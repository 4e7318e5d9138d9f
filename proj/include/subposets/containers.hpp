#pragma once

#include <functional>

#include "subposets/embed.hpp"

namespace subposets {

/// One step of the container loop, enough to replay and audit the run.
struct ContainerStep {
    long long t = 0;            // blow-up multiplicity of the chosen copy
    SetWord root_member = 0;    // image of the pattern root
    bool root_in_family = false;
    enum class Kind {
        delete_root,          // root not in the family, removed from G
        subphases,            // root in the family, t above threshold
        terminal_paper,       // root in the family, t below threshold
        terminal_no_copy,     // G holds no copy at any multiplicity
        terminal_root_below,  // root outside the family at t below threshold
    } kind = Kind::delete_root;
    struct Subphase {
        int base_elem;                 // pattern element this group stands for
        std::vector<SetWord> scanned;  // group images in canonical scan order
        int chosen = -1;               // index into scanned, -1 when none hit the family
    };
    std::vector<Subphase> subphases;
    std::vector<SetWord> deleted;
    std::vector<SetWord> added_to_fingerprint;
};

struct ContainerRun {
    int n = 0;
    long long threshold = 0;
    std::vector<SetWord> fingerprint;  // H in insertion order
    SetFamily f_of_h;
    std::vector<ContainerStep> trace;
    bool certified_no_copy = false;  // f(H) verified free of pattern(x, threshold)
};

/// The deterministic single-stage loop over G = start (default all of 2^[n]);
/// the family must be pattern-free. Fingerprint search caps at max(n, t_star).
ContainerRun run_single_stage(const SetFamily& family, const Poset& pattern, int root,
                              long long t_star, int lattice_cap = 7,
                              std::optional<SetFamily> start = std::nullopt);

/// Re-executes the loop answering every membership query from the fingerprint
/// alone; equals the f(H) of any run that produced this fingerprint.
/// Throws DomainError when H cannot be a fingerprint of any run.
ContainerRun replay_single_stage(const std::vector<SetWord>& fingerprint, const Poset& pattern,
                                 int root, long long t_star, int n,
                                 std::optional<SetFamily> start = std::nullopt);

struct TwoStageRun {
    ContainerRun stage1;  // threshold t1, universe 2^[n]
    ContainerRun stage2;  // threshold t2, universe f(H1)
};

TwoStageRun run_two_stage(const SetFamily& family, const Poset& pattern, int root, long long t1,
                          long long t2, int lattice_cap = 7);
TwoStageRun replay_two_stage(const std::vector<SetWord>& h1, const std::vector<SetWord>& h2,
                             const Poset& pattern, int root, long long t1, long long t2, int n);

/// Checks every contract of a finished run against the family it came from.
/// Throws std::logic_error with a description on the first violation.
void check_container_invariants(const ContainerRun& run, const SetFamily& family,
                                const Poset& pattern, int root);
void check_two_stage_invariants(const TwoStageRun& run, const SetFamily& family,
                                const Poset& pattern, int root);

struct CensusEntry {
    SetFamily container;  // H ∪ f(H)
    std::vector<SetWord> fingerprint;
    long long multiplicity = 0;
};

struct Census {
    std::vector<CensusEntry> entries;  // deduplicated, canonical order
    BigInt fingerprint_space;          // binom(2^n, <= |P| 2^n / t_star)
    std::size_t max_container_size = 0;
    std::size_t families_processed = 0;
    bool all_covered = false;  // every input family inside its container
};

Census container_census(int n, const Poset& pattern, int root, long long t_star,
                        const std::vector<SetFamily>& families, int jobs = 1);

/// Every pattern-free subfamily of 2^[n] (exhaustive; n <= 4).
std::vector<SetFamily> all_pfree_families(int n, const Poset& pattern);

}  // namespace subposets
