#include "subposets/containers.hpp"

#include <algorithm>
#include <map>

namespace subposets {

namespace {

// The loop is written once against a membership oracle: a live run asks the
// family, a replay asks the fingerprint (consuming it).
struct Oracle {
    std::function<bool(SetWord)> contains;
};

ContainerRun container_loop(SetFamily g, const Poset& pattern, int root, long long threshold,
                            const Oracle& oracle) {
    if (threshold < 2) throw DomainError("container threshold must be >= 2");
    ContainerRun run;
    run.n = g.n();
    run.threshold = threshold;
    long long t_cap = std::max<long long>(default_t_cap(g.n()), threshold);

    long long prev_t = t_cap;
    while (true) {
        auto [t, copy] = max_blowup_t(pattern, root, g, prev_t);
        ContainerStep step;
        step.t = t;
        if (t == 0) {
            step.kind = ContainerStep::Kind::terminal_no_copy;
            run.trace.push_back(step);
            run.f_of_h = g;
            break;
        }
        prev_t = t;  // G only shrinks, so the maximal multiplicity never grows

        const BlowupPoset& bp = copy->blowup;
        const auto& image = copy->emb.assignment;
        SetWord root_member = g[std::size_t(image[0])];
        step.root_member = root_member;
        step.root_in_family = oracle.contains(root_member);

        if (!step.root_in_family) {
            if (t < threshold) {
                step.kind = ContainerStep::Kind::terminal_root_below;
                run.trace.push_back(step);
                run.f_of_h = g;
                break;
            }
            step.kind = ContainerStep::Kind::delete_root;
            step.deleted.push_back(root_member);
            run.trace.push_back(step);
            g = g.without(root_member);
            continue;
        }
        if (t < threshold) {
            step.kind = ContainerStep::Kind::terminal_paper;
            step.added_to_fingerprint.push_back(root_member);
            run.trace.push_back(step);
            run.fingerprint.push_back(root_member);
            run.f_of_h = g.without(root_member);
            break;
        }

        // subphases: walk the base elements in blow-up scan order; the first
        // one is the root itself
        step.kind = ContainerStep::Kind::subphases;
        step.deleted.push_back(root_member);
        step.added_to_fingerprint.push_back(root_member);
        run.fingerprint.push_back(root_member);

        // chosen replica per base element, starting from the root replica
        std::vector<int> chosen_replica(bp.base.size(), -1);
        chosen_replica[bp.base.root().value_or(root)] = 0;

        // base elements in construction order (skip the root)
        std::vector<int> base_order;
        {
            std::vector<char> seen(bp.base.size(), 0);
            for (const auto& el : bp.elems)
                if (!seen[el.base_elem]) {
                    seen[el.base_elem] = 1;
                    base_order.push_back(el.base_elem);
                }
        }
        bool stopped = false;
        for (std::size_t oi = 1; oi < base_order.size() && !stopped; ++oi) {
            int u = base_order[oi];
            // tree parent of u = base element whose replica anchors u's group
            int parent_replica = -1;
            {
                const auto& any = bp.group(u, bp.groups_[u].begin()->first);
                int parent_base = bp.elems[bp.elems[any[0]].parent].base_elem;
                parent_replica = chosen_replica[parent_base];
            }
            const auto& grp = bp.group(u, parent_replica);
            ContainerStep::Subphase sp;
            sp.base_elem = u;
            std::vector<std::pair<SetWord, int>> scan;  // (member, blow-up elem)
            for (int bi : grp) scan.push_back({g[std::size_t(image[bi])], bi});
            std::sort(scan.begin(), scan.end(),
                      [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });
            for (const auto& [member, bi] : scan) sp.scanned.push_back(member);

            int hit = -1;
            for (std::size_t k = 0; k < scan.size(); ++k)
                if (oracle.contains(scan[k].first)) {
                    hit = int(k);
                    break;
                }
            sp.chosen = hit;
            if (hit < 0) {
                for (const auto& [member, bi] : scan) step.deleted.push_back(member);
                step.subphases.push_back(sp);
                stopped = true;
                break;
            }
            chosen_replica[u] = scan[std::size_t(hit)].second;
            run.fingerprint.push_back(scan[std::size_t(hit)].first);
            step.added_to_fingerprint.push_back(scan[std::size_t(hit)].first);
            for (int k = 0; k <= hit; ++k) step.deleted.push_back(scan[std::size_t(k)].first);
            step.subphases.push_back(sp);
        }
        if (!stopped)
            throw std::logic_error(
                "every subphase found a family element: the input contained a pattern copy");
        if ((long long)step.deleted.size() < t)
            throw std::logic_error("container step deleted fewer than t elements");

        std::vector<SetWord> remaining;
        {
            std::vector<SetWord> dels = step.deleted;
            std::sort(dels.begin(), dels.end());
            for (SetWord s : g.members())
                if (!std::binary_search(dels.begin(), dels.end(), s)) remaining.push_back(s);
        }
        g = SetFamily(g.ground(), remaining);
        run.trace.push_back(step);
    }
    return run;
}

SetFamily default_universe(int n, int lattice_cap) {
    if (n > lattice_cap)
        throw CapacityError("container runs over all of 2^[n] limited to n <= " +
                            std::to_string(lattice_cap) + " (override the cap to go higher)");
    return full_lattice(n);
}

}  // namespace

ContainerRun run_single_stage(const SetFamily& family, const Poset& pattern, int root,
                              long long t_star, int lattice_cap, std::optional<SetFamily> start) {
    if (!pattern.is_tree()) throw DomainError("container patterns must be tree posets");
    if (find_subposet(pattern, family, false, pattern.size()))
        throw DomainError("input family contains a copy of the pattern");
    SetFamily g = start ? *start : default_universe(family.n(), lattice_cap);
    Oracle oracle{[&family](SetWord s) { return family.contains(s); }};
    ContainerRun run = container_loop(std::move(g), pattern, root, t_star, oracle);
    auto [residual_t, residual] = max_blowup_t(pattern, root, run.f_of_h, t_star);
    run.certified_no_copy = residual_t < t_star;
    if (!run.certified_no_copy)
        throw std::logic_error("terminal family still holds a threshold blow-up copy");
    return run;
}

ContainerRun replay_single_stage(const std::vector<SetWord>& fingerprint, const Poset& pattern,
                                 int root, long long t_star, int n, std::optional<SetFamily> start) {
    SetFamily g = start ? *start : default_universe(n, kMaxEnumerationN);
    std::map<SetWord, bool> consumed;
    for (SetWord s : fingerprint) {
        if (consumed.count(s)) throw DomainError("fingerprint repeats a member");
        consumed[s] = false;
    }
    Oracle oracle{[&consumed](SetWord s) {
        auto it = consumed.find(s);
        if (it == consumed.end()) return false;
        it->second = true;
        return true;
    }};
    ContainerRun run = container_loop(std::move(g), pattern, root, t_star, oracle);
    for (const auto& [s, used] : consumed)
        if (!used)
            throw DomainError("fingerprint member " + format_member(s) +
                              " was never reached: not a fingerprint of any run");
    auto [residual_t, residual] = max_blowup_t(pattern, root, run.f_of_h, t_star);
    run.certified_no_copy = residual_t < t_star;
    return run;
}

TwoStageRun run_two_stage(const SetFamily& family, const Poset& pattern, int root, long long t1,
                          long long t2, int lattice_cap) {
    if (t1 <= t2) throw DomainError("two-stage thresholds need t1 > t2");
    TwoStageRun out;
    out.stage1 = run_single_stage(family, pattern, root, t1, lattice_cap);
    out.stage2 = run_single_stage(family, pattern, root, t2, lattice_cap, out.stage1.f_of_h);
    return out;
}

TwoStageRun replay_two_stage(const std::vector<SetWord>& h1, const std::vector<SetWord>& h2,
                             const Poset& pattern, int root, long long t1, long long t2, int n) {
    if (t1 <= t2) throw DomainError("two-stage thresholds need t1 > t2");
    TwoStageRun out;
    out.stage1 = replay_single_stage(h1, pattern, root, t1, n);
    out.stage2 = replay_single_stage(h2, pattern, root, t2, n, out.stage1.f_of_h);
    return out;
}

void check_container_invariants(const ContainerRun& run, const SetFamily& family,
                                const Poset& pattern, int root) {
    auto fail = [](const std::string& what) { throw std::logic_error("container invariant: " + what); };
    // H ⊆ F, H ∩ f(H) = ∅, F ⊆ H ∪ f(H)
    for (SetWord s : run.fingerprint) {
        if (!family.contains(s)) fail("fingerprint member outside the family");
        if (run.f_of_h.contains(s)) fail("fingerprint meets f(H)");
    }
    {
        std::vector<SetWord> h = run.fingerprint;
        std::sort(h.begin(), h.end());
        if (std::adjacent_find(h.begin(), h.end()) != h.end()) fail("fingerprint repeats");
        for (SetWord s : family.members())
            if (!std::binary_search(h.begin(), h.end(), s) && !run.f_of_h.contains(s))
                fail("family member escapes the container");
    }
    // fingerprint size bound: (|P|-1) * 2^n / t_star + 1
    {
        BigInt bound = (BigInt(pattern.size()) - 1) * (BigInt(1) << run.n) / run.threshold + 1;
        if (BigInt(run.fingerprint.size()) > bound) fail("fingerprint larger than (p-1)2^n/t*+1");
    }
    if (!run.certified_no_copy) fail("terminal family not certified copy-free");
    // per-step accounting
    for (const auto& step : run.trace) {
        if (step.kind == ContainerStep::Kind::subphases) {
            if ((long long)step.deleted.size() < step.t) fail("step deleted fewer than t");
            if ((long long)step.added_to_fingerprint.size() > pattern.size() - 1)
                fail("step added more than |P|-1 elements");
            for (SetWord s : step.added_to_fingerprint)
                if (!family.contains(s)) fail("step added a non-family element");
        }
    }
    (void)root;
}

void check_two_stage_invariants(const TwoStageRun& run, const SetFamily& family,
                                const Poset& pattern, int root) {
    auto fail = [](const std::string& what) { throw std::logic_error("two-stage invariant: " + what); };
    check_container_invariants(run.stage1, family, pattern, root);
    check_container_invariants(run.stage2, family, pattern, root);
    std::vector<SetWord> h1 = run.stage1.fingerprint, h2 = run.stage2.fingerprint;
    std::sort(h1.begin(), h1.end());
    std::sort(h2.begin(), h2.end());
    for (SetWord s : h2) {
        if (std::binary_search(h1.begin(), h1.end(), s)) fail("fingerprints intersect");
        if (!run.stage1.f_of_h.contains(s)) fail("H2 not inside f(H1)");
    }
    for (SetWord s : h1)
        if (run.stage2.f_of_h.contains(s)) fail("H1 meets g(H1 ∪ H2)");
    for (SetWord s : family.members()) {
        bool covered = std::binary_search(h1.begin(), h1.end(), s) ||
                       std::binary_search(h2.begin(), h2.end(), s) || run.stage2.f_of_h.contains(s);
        if (!covered) fail("family member escapes the two-stage container");
    }
    // |H2| <= (|P|-1) |f(H1)| / t2 + 1
    BigInt bound = (BigInt(pattern.size()) - 1) * BigInt(run.stage1.f_of_h.size()) /
                       run.stage2.threshold + 1;
    if (BigInt(h2.size()) > bound) fail("H2 larger than (p-1)|f(H1)|/t2+1");
}

Census container_census(int n, const Poset& pattern, int root, long long t_star,
                        const std::vector<SetFamily>& families, int jobs) {
    Census census;
    census.families_processed = families.size();
    census.fingerprint_space =
        binomial_sum(BigInt(1) << n, BigInt(pattern.size()) * (BigInt(1) << n) / t_star);

    struct RunOut {
        std::vector<SetWord> container;
        std::vector<SetWord> fingerprint;
        bool covered;
    };
    std::function<RunOut(std::size_t)> one = [&](std::size_t i) -> RunOut {
        ContainerRun run = run_single_stage(families[i], pattern, root, t_star, kMaxEnumerationN);
        std::vector<SetWord> cont = run.fingerprint;
        for (SetWord s : run.f_of_h.members()) cont.push_back(s);
        std::sort(cont.begin(), cont.end(), canonical_less);
        cont.erase(std::unique(cont.begin(), cont.end()), cont.end());
        bool covered = true;
        for (SetWord s : families[i].members())
            if (!std::binary_search(cont.begin(), cont.end(), s, canonical_less)) covered = false;
        return {cont, run.fingerprint, covered};
    };
    auto runs = parallel_map<RunOut>(jobs, families.size(), one);

    std::map<std::vector<SetWord>, CensusEntry> dedup;
    census.all_covered = true;
    for (auto& r : runs) {
        census.all_covered = census.all_covered && r.covered;
        census.max_container_size = std::max(census.max_container_size, r.container.size());
        auto it = dedup.find(r.container);
        if (it == dedup.end()) {
            CensusEntry e;
            e.container = SetFamily(GroundSet(n), r.container);
            e.fingerprint = r.fingerprint;
            e.multiplicity = 1;
            dedup.emplace(r.container, std::move(e));
        } else {
            ++it->second.multiplicity;
        }
    }
    for (auto& [key, entry] : dedup) census.entries.push_back(std::move(entry));
    return census;
}

std::vector<SetFamily> all_pfree_families(int n, const Poset& pattern) {
    if (n > 4) throw CapacityError("exhaustive family enumeration limited to n <= 4");
    std::size_t u = std::size_t(1) << n;
    std::vector<SetFamily> out;
    std::vector<SetWord> members;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << u); ++mask) {
        members.clear();
        for (std::size_t b = 0; b < u; ++b)
            if (mask >> b & 1) members.push_back(SetWord(b));
        SetFamily fam(GroundSet(n), members);
        if (family_is_pfree(pattern, fam, pattern.size())) out.push_back(std::move(fam));
    }
    return out;
}

}  // namespace subposets
