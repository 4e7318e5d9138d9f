#include "subposets/supersat.hpp"

#include <algorithm>
#include <cmath>

namespace subposets {

namespace {

Rational rational_m(int n) { return Rational(binomial(n, n / 2)); }

// per-member related sets bucketed by level distance, canonical order inside
struct ShadowProfile {
    std::vector<std::vector<std::vector<int>>> at;  // [member][j-1] = indices at distance j
    long long count(std::size_t i, int j) const {
        if (j < 1 || j > int(at[i].size())) return 0;
        return (long long)at[i][j - 1].size();
    }
};

ShadowProfile shadow_profile(const SetFamily& family, const FamilyRelations& rel, Direction dir) {
    std::size_t m = family.size();
    int n = family.n();
    ShadowProfile prof;
    prof.at.assign(m, {});
    for (std::size_t i = 0; i < m; ++i) {
        prof.at[i].assign(n + 1, {});
        const std::uint64_t* row = dir == Direction::down ? rel.sub_row(i) : rel.sup_row(i);
        int si = set_size(family[i]);
        for (std::size_t w = 0; w < rel.words; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                std::size_t j = w * 64 + b;
                int d = std::abs(set_size(family[j]) - si);
                prof.at[i][d - 1].push_back(int(j));
            }
        }
        while (!prof.at[i].empty() && prof.at[i].back().empty()) prof.at[i].pop_back();
    }
    return prof;
}

void require_in_band(const SetFamily& family, const char* who) {
    for (SetWord s : family.members())
        if (!SetFamily::size_in_middle_band(family.n(), set_size(s)))
            throw DomainError(std::string(who) + ": family member " + format_member(s) +
                              " lies outside the middle band");
}

}  // namespace

TypeClassification classify_types(const SetFamily& family, const Rational& epsilon, Direction direction) {
    require_in_band(family, "classify_types");
    int n = family.n();
    FamilyRelations rel(family);
    auto prof = shadow_profile(family, rel, direction);
    std::size_t m = family.size();

    TypeClassification out;
    out.direction = direction;
    out.epsilon = epsilon;
    out.tags.assign(m, TypeClassification::Tag::type3);
    out.dist1.assign(m, {});
    out.type2_j.assign(m, 0);
    out.type2_witnesses.assign(m, {});

    Rational thr1 = epsilon * n / 30;
    Rational thr2 = epsilon * n * n / 30;
    for (std::size_t i = 0; i < m; ++i) {
        out.dist1[i] = prof.count(i, 1) ? prof.at[i][0] : std::vector<int>{};
        if (Rational(prof.count(i, 1)) >= thr1 && prof.count(i, 1) >= 1) {
            out.tags[i] = TypeClassification::Tag::type1;
            continue;
        }
        for (int j = 2; j <= int(prof.at[i].size()); ++j) {
            if (Rational(prof.count(i, j)) >= thr2 && prof.count(i, j) >= 1) {
                out.tags[i] = TypeClassification::Tag::type2;
                out.type2_j[i] = j;
                out.type2_witnesses[i] = prof.at[i][j - 1];
                break;
            }
        }
    }
    return out;
}

namespace {

ForkReport fork_report_impl(const SetFamily& family, const Rational& epsilon, bool plus) {
    ForkReport rep;
    rep.family_size = BigInt(family.size());
    int n = family.n();
    Rational m = rational_m(n);
    rep.bound = plus ? (Rational(4) + 400 * epsilon) * m : (Rational(1) + 15 * epsilon) * m;

    for (SetWord s : family.members())
        if (!SetFamily::size_in_middle_band(n, set_size(s))) {
            rep.applicable = false;
            rep.detail = "member " + format_member(s) + " outside the middle band";
            return rep;
        }
    FamilyRelations rel(family);
    auto prof = shadow_profile(family, rel, Direction::up);
    Rational lim1 = epsilon * n;
    Rational lim2 = epsilon * n * n;
    Rational lim4 = epsilon * n * n * n * n;
    for (std::size_t i = 0; i < family.size(); ++i) {
        int maxj = int(prof.at[i].size());
        if (!plus) {
            if (Rational(prof.count(i, 1)) > lim1) {
                rep.applicable = false;
                rep.detail = "member " + format_member(family[i]) + " has upper shadow " +
                             std::to_string(prof.count(i, 1)) + " at distance 1";
                return rep;
            }
            for (int j = 2; j <= maxj; ++j)
                if (Rational(prof.count(i, j)) > lim2) {
                    rep.applicable = false;
                    rep.detail = "member " + format_member(family[i]) + " at distance " + std::to_string(j);
                    return rep;
                }
        } else {
            for (int j = 4; j <= maxj; ++j)
                if (Rational(prof.count(i, j)) > lim4) {
                    rep.applicable = false;
                    rep.detail = "member " + format_member(family[i]) + " at distance " + std::to_string(j);
                    return rep;
                }
        }
    }
    rep.applicable = true;
    rep.bound_holds = Rational(family.size()) <= rep.bound;
    return rep;
}

}  // namespace

ForkReport check_fork_bound(const SetFamily& family, const Rational& epsilon) {
    return fork_report_impl(family, epsilon, false);
}

ForkReport check_fork_plus_bound(const SetFamily& family, const Rational& epsilon) {
    return fork_report_impl(family, epsilon, true);
}

Rational wedge_delta(const Rational& eps) { return eps * eps / (120 * (1 + eps)); }
Rational yd_delta(const Rational& eps) { return eps * eps / (960 * (1 + eps / 2)); }
Rational radius2_delta_star(const Rational& eps) {
    return std::min(wedge_delta(eps / 3), yd_delta(eps / 3));
}
Rational radius2_delta(const Rational& eps) { return radius2_delta_star(eps) / 200; }

// --- shared finder plumbing ----------------------------------------------------

namespace {

struct Working {
    SetFamily family;
    bool premise_met = false;
    Rational threshold;
};

// band, then the paper-size premise: hard (and trimmed to exact size) in strict
// mode, advisory in desk mode
Working prepare_family(const SetFamily& input, const Rational& eps, const Rational& height_factor,
                       bool strict, std::vector<std::string>& log) {
    Working w;
    SetFamily banded = input.middle_band();
    w.threshold = (height_factor + eps) * rational_m(input.n());
    w.premise_met = Rational(banded.size()) >= w.threshold;
    if (strict) {
        if (!w.premise_met)
            throw DomainError("family too small: banded size " + std::to_string(banded.size()) +
                              " is below the required (h-1+eps)*binom(n,n/2)");
        w.family = banded.prefix(std::size_t(ceil_rational(w.threshold)));
        log.push_back("strict mode: trimmed banded family to " + std::to_string(w.family.size()));
    } else {
        w.family = banded;
        log.push_back(std::string("desk mode: size premise ") +
                      (w.premise_met ? "met" : "NOT met (advisory)") + ", banded size " +
                      std::to_string(banded.size()));
    }
    return w;
}

using Tag = TypeClassification::Tag;

// choose ascending t-subsets of per-top candidate pools, pools pairwise disjointified
// through the shared `used` set; deterministic backtracking with a node budget
struct GroupAssigner {
    const std::vector<std::vector<int>>& pools;
    long long t;
    std::vector<char>& used;
    long long budget;
    std::vector<std::vector<int>> picked;

    bool assign(std::size_t top) {
        if (top == pools.size()) return true;
        std::vector<int> avail;
        for (int c : pools[top])
            if (!used[c]) avail.push_back(c);
        if ((long long)avail.size() < t) return false;
        std::vector<int> idx(t);
        std::function<bool(int, int)> combos = [&](int pos, int from) -> bool {
            if (--budget <= 0) return false;
            if (pos == int(t)) {
                std::vector<int> chosen;
                for (int q = 0; q < int(t); ++q) chosen.push_back(avail[idx[q]]);
                for (int c : chosen) used[c] = 1;
                picked.push_back(chosen);
                if (assign(top + 1)) return true;
                picked.pop_back();
                for (int c : chosen) used[c] = 0;
                return false;
            }
            for (int i = from; i <= int(avail.size()) - (int(t) - pos); ++i) {
                idx[pos] = i;
                if (combos(pos + 1, i + 1)) return true;
                if (budget <= 0) return false;
            }
            return false;
        };
        return combos(0, 0);
    }
};

std::optional<std::vector<std::vector<int>>> assign_disjoint_groups(
    const std::vector<std::vector<int>>& pools, long long t, std::vector<char> used,
    long long budget = 2000000) {
    GroupAssigner ga{pools, t, used, budget, {}};
    if (!ga.assign(0)) return std::nullopt;
    return ga.picked;
}

// wedge attempt at a fixed t; returns (tops, legs) on success
struct WedgeCore {
    std::vector<long long> degrees;
    int hub = -1;
    std::vector<int> tops;
    std::vector<std::vector<int>> legs;
    bool ok = false;
    std::string note;
};

WedgeCore wedge_core(const SetFamily& fam, const TypeClassification& cls,
                     const FamilyRelations& rel, long long t, std::optional<int> forced_hub,
                     Direction legs_dir, const std::vector<int>& avoid) {
    WedgeCore core;
    std::size_t m = fam.size();
    // tops live above the hub when legs extend down, below it otherwise
    bool tops_above = legs_dir == Direction::down;
    std::vector<char> rich(m, 0);
    for (std::size_t i = 0; i < m; ++i) rich[i] = cls.tags[i] != Tag::type3;
    for (int i : avoid)
        if (i >= 0 && i < int(m)) rich[i] = 0;

    core.degrees.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t* row = tops_above ? rel.sup_row(i) : rel.sub_row(i);
        for (std::size_t w = 0; w < rel.words; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                if (rich[w * 64 + b]) ++core.degrees[i];
            }
        }
    }
    if (forced_hub) {
        core.hub = *forced_hub;
    } else {
        long long best = -1;
        for (std::size_t i = 0; i < m; ++i)
            if (core.degrees[i] > best) {
                best = core.degrees[i];
                core.hub = int(i);
            }
    }
    if (core.hub < 0) {
        core.note = "no hub candidate";
        return core;
    }
    // hub neighbours against the rich side, canonical order
    std::vector<int> nbr;
    {
        const std::uint64_t* row = tops_above ? rel.sup_row(core.hub) : rel.sub_row(core.hub);
        for (std::size_t w = 0; w < rel.words; ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                if (rich[w * 64 + b]) nbr.push_back(int(w * 64 + b));
            }
        }
    }
    std::vector<int> t1, t2;
    for (int j : nbr) (cls.tags[j] == Tag::type1 ? t1 : t2).push_back(j);
    const std::vector<int>& majority = t1.size() >= t2.size() ? t1 : t2;
    if ((long long)majority.size() < t) {
        core.note = "hub has only " + std::to_string(majority.size()) + " same-type neighbours";
        return core;
    }
    core.tops.assign(majority.begin(), majority.begin() + t);

    // per-top leg pools: the recorded witnesses for the top's own type
    std::vector<std::vector<int>> pools;
    for (int top : core.tops) {
        const auto& wit = cls.tags[top] == Tag::type1 ? cls.dist1[top] : cls.type2_witnesses[top];
        pools.push_back(wit);
    }
    std::vector<char> used(m, 0);
    used[core.hub] = 1;
    for (int top : core.tops) used[top] = 1;
    for (int i : avoid)
        if (i >= 0 && i < int(m)) used[i] = 1;
    auto legs = assign_disjoint_groups(pools, t, used);
    if (!legs) {
        core.note = "could not pick " + std::to_string(t) + " distinct legs per top";
        return core;
    }
    core.legs = *legs;
    core.ok = true;
    return core;
}

// assemble pattern(x,t) from hub/tops/legs; per-top arm lists optional (yd shapes)
BlowupEmbedding assemble_two_level(const SetFamily&, const Poset& pattern, int root_elem,
                                   int top_elem, const std::vector<int>& arm_elems, long long t,
                                   int hub, const std::vector<int>& tops,
                                   const std::vector<std::vector<std::vector<int>>>& arms) {
    BlowupPoset bp = blow_up(pattern, root_elem, t);
    std::vector<int> image(bp.result.size(), -1);
    image[0] = hub;
    const auto& top_group = bp.group(top_elem, 0);
    for (long long i = 0; i < t; ++i) {
        image[top_group[i]] = tops[i];
        for (std::size_t a = 0; a < arm_elems.size(); ++a) {
            const auto& leg_group = bp.group(arm_elems[a], top_group[i]);
            for (long long j = 0; j < t; ++j) image[leg_group[j]] = arms[i][a][j];
        }
    }
    BlowupEmbedding out{std::move(bp), Embedding{image}};
    return out;
}

}  // namespace

SupersatWitness find_wedge_blowup(const SetFamily& family, const Rational& epsilon,
                                  FinderOptions opt, Direction legs) {
    SupersatWitness out;
    bool strict = !opt.target_t.has_value();
    Working w = prepare_family(family, epsilon, Rational(1), strict, out.log);
    out.working = w.family;
    out.size_premise_met = w.premise_met;

    // tops need legs on the far side: classification direction matches the legs
    Direction cls_dir = legs;
    TypeClassification cls = classify_types(w.family, epsilon, cls_dir);
    FamilyRelations rel(w.family);

    long long start_t;
    if (opt.target_t) {
        out.target_t = *opt.target_t;
        if (out.target_t < 1) throw DomainError("target_t must be >= 1");
        start_t = out.target_t;
    } else {
        CatalogEntry wc = catalog("wedge");
        long long cap = 1;
        while (blow_up_size(wc.poset, wc.poset.require("x"), cap + 1) <= BigInt(w.family.size()))
            ++cap;
        start_t = cap;
        out.target_t = 0;
    }

    for (long long t = start_t; t >= 1; --t) {
        WedgeCore core = wedge_core(w.family, cls, rel, t, opt.forced_hub, legs);
        out.degrees = core.degrees;
        if (!core.ok) {
            out.log.push_back("t=" + std::to_string(t) + ": " + core.note);
            continue;
        }
        CatalogEntry pat = catalog(legs == Direction::down ? "wedge" : "vee");
        int root_elem = pat.poset.require("x");
        int top_elem = pat.poset.require("c");
        int leg_elem = pat.poset.require("a");
        std::vector<std::vector<std::vector<int>>> arms;
        for (auto& l : core.legs) arms.push_back({l});
        auto emb = assemble_two_level(w.family, pat.poset, root_elem, top_elem, {leg_elem}, t,
                                      core.hub, core.tops, arms);
        if (!validate_embedding(emb.blowup.result, w.family, emb.emb))
            throw std::logic_error("wedge finder produced an invalid embedding");
        out.hub = core.hub;
        out.tops = core.tops;
        out.embedding = std::move(emb);
        out.achieved_t = t;
        out.shortfall = opt.target_t && t < *opt.target_t;
        out.log.push_back("built blow-up with t=" + std::to_string(t) + " at hub " +
                          format_member(w.family[core.hub]));
        return out;
    }
    out.shortfall = true;
    out.log.push_back("no blow-up found at any t >= 1");
    return out;
}

namespace {

// swap-disjointification: with arms pointing up no leg may strictly contain any
// top (dually for arms pointing down); a swap exchanges the two roles, stays a
// valid copy, and strictly decreases the number of offending pairs
bool offends(const SetFamily& fam, Direction arm, int leg, int top) {
    if (leg == top || fam[leg] == fam[top]) return false;
    return arm == Direction::up ? subset_of(fam[top], fam[leg]) : subset_of(fam[leg], fam[top]);
}

long long count_offending(const SetFamily& fam, Direction arm, const std::vector<int>& tops,
                          const std::vector<std::vector<int>>& legs) {
    long long c = 0;
    for (const auto& group : legs)
        for (int a : group)
            for (int top : tops)
                if (offends(fam, arm, a, top)) ++c;
    return c;
}

void swap_disjointify(const SetFamily& fam, Direction arm, std::vector<int>& tops,
                      std::vector<std::vector<int>>& legs, std::vector<std::string>& log) {
    long long pairs = count_offending(fam, arm, tops, legs);
    long long swaps = 0;
    while (pairs > 0) {
        bool swapped = false;
        for (std::size_t g = 0; g < legs.size() && !swapped; ++g)
            for (std::size_t q = 0; q < legs[g].size() && !swapped; ++q)
                for (std::size_t r = 0; r < tops.size() && !swapped; ++r) {
                    int a = legs[g][q], c = tops[r];
                    if (offends(fam, arm, a, c)) {
                        // a takes over c's top slot (and c's legs); c becomes a leg of g
                        legs[g][q] = c;
                        tops[r] = a;
                        swapped = true;
                    }
                }
        if (!swapped) throw std::logic_error("offending pair count positive but no swap found");
        ++swaps;
        long long now = count_offending(fam, arm, tops, legs);
        if (now >= pairs) throw std::logic_error("swap failed to decrease the offending pair count");
        pairs = now;
    }
    if (swaps) log.push_back("swap loop: " + std::to_string(swaps) + " swaps");
}

}  // namespace

SupersatWitness find_yd_blowup(const SetFamily& family, const Rational& epsilon, FinderOptions opt,
                               Direction arm) {
    SupersatWitness out;
    bool strict = !opt.target_t.has_value();
    Working w = prepare_family(family, epsilon, Rational(2), strict, out.log);
    out.working = w.family;
    out.size_premise_met = w.premise_met;

    // rich side: tops must extend away from the hub (arm direction)
    TypeClassification arm_cls = classify_types(w.family, epsilon, arm);
    FamilyRelations rel(w.family);
    std::size_t m = w.family.size();

    // the rich subfamily the inner wedge runs in
    std::vector<int> star_members;
    for (std::size_t i = 0; i < m; ++i)
        if (arm_cls.tags[i] != Tag::type3) star_members.push_back(int(i));
    std::vector<SetWord> star_sets;
    for (int i : star_members) star_sets.push_back(w.family[i]);
    SetFamily star(w.family.ground(), star_sets);
    std::vector<int> star_to_w(star.size());
    for (std::size_t i = 0; i < star.size(); ++i) star_to_w[i] = int(w.family.find(star[i]));

    std::optional<int> star_hub;
    if (opt.forced_hub) {
        long idx = star.find(w.family[*opt.forced_hub]);
        if (idx < 0) {
            out.shortfall = true;
            out.log.push_back("forced hub is not in the rich subfamily");
            out.target_t = opt.target_t.value_or(0);
            return out;
        }
        star_hub = int(idx);
    }

    long long start_t;
    if (opt.target_t) {
        out.target_t = *opt.target_t;
        if (out.target_t < 1) throw DomainError("target_t must be >= 1");
        start_t = out.target_t;
    } else {
        CatalogEntry yc = catalog("yd");
        long long cap = 1;
        while (blow_up_size(yc.poset, yc.poset.require("x"), cap + 1) <= BigInt(w.family.size()))
            ++cap;
        start_t = cap;
        out.target_t = 0;
    }

    Direction inner_legs = arm == Direction::up ? Direction::down : Direction::up;

    for (long long t = start_t; t >= 1; --t) {
        // inner wedge with mono-typing headroom, falling back toward t
        std::optional<SupersatWitness> inner;
        for (long long ti = 2 * t; ti >= t; --ti) {
            FinderOptions iopt;
            iopt.target_t = ti;
            iopt.forced_hub = star_hub;
            SupersatWitness cand = find_wedge_blowup(star, epsilon / 2, iopt, inner_legs);
            if (cand.embedding && !cand.shortfall) {
                inner = std::move(cand);
                break;
            }
        }
        if (!inner) {
            out.log.push_back("t=" + std::to_string(t) + ": no inner wedge copy");
            continue;
        }
        // translate inner indices (over `star`, possibly trimmed further) into w indices
        const SetFamily& istar = inner->working;
        int hub = int(w.family.find(istar[inner->hub]));
        std::vector<int> tops;
        for (int c : inner->tops) tops.push_back(int(w.family.find(istar[c])));
        // legs per top from the inner embedding
        std::vector<std::vector<int>> legs;
        {
            const auto& bp = inner->embedding->blowup;
            const auto& img = inner->embedding->emb.assignment;
            int top_elem = bp.base.require("c"), leg_elem = bp.base.require("a");
            const auto& top_group = bp.group(top_elem, 0);
            for (int i = 0; i < int(top_group.size()); ++i) {
                std::vector<int> mine;
                for (int li : bp.group(leg_elem, top_group[i]))
                    mine.push_back(int(w.family.find(istar[img[li]])));
                legs.push_back(mine);
            }
        }
        // mono-type by the arm-direction tags, keep the majority, truncate to t
        std::vector<int> keep1, keep2;
        for (std::size_t i = 0; i < tops.size(); ++i)
            (arm_cls.tags[tops[i]] == Tag::type1 ? keep1 : keep2).push_back(int(i));
        const std::vector<int>& maj = keep1.size() >= keep2.size() ? keep1 : keep2;
        if ((long long)maj.size() < t) {
            out.log.push_back("t=" + std::to_string(t) + ": majority type among inner tops too small");
            continue;
        }
        std::vector<int> sel_tops;
        std::vector<std::vector<int>> sel_legs;
        for (long long i = 0; i < t; ++i) {
            sel_tops.push_back(tops[maj[i]]);
            auto l = legs[maj[i]];
            l.resize(t);
            sel_legs.push_back(l);
        }

        swap_disjointify(w.family, arm, sel_tops, sel_legs, out.log);

        // extend every top by t fresh arm-direction witnesses of its own type
        std::vector<std::vector<int>> pools;
        for (int top : sel_tops) {
            const auto& wit = arm_cls.tags[top] == Tag::type1 ? arm_cls.dist1[top]
                                                              : arm_cls.type2_witnesses[top];
            pools.push_back(wit);
        }
        std::vector<char> used(m, 0);
        used[hub] = 1;
        for (int c : sel_tops) used[c] = 1;
        for (const auto& g : sel_legs)
            for (int a : g) used[a] = 1;
        auto arms_opt = assign_disjoint_groups(pools, t, used);
        if (!arms_opt) {
            out.log.push_back("t=" + std::to_string(t) + ": could not extend tops");
            continue;
        }

        CatalogEntry pat = catalog("yd");
        Poset shape = arm == Direction::up ? pat.poset : pat.poset.dual();
        int root_elem = shape.require("x"), top_elem = shape.require("c");
        int leg_elem = shape.require("a"), arm_elem = shape.require("d");
        std::vector<std::vector<std::vector<int>>> arms;
        for (long long i = 0; i < t; ++i) arms.push_back({sel_legs[i], (*arms_opt)[i]});
        auto emb = assemble_two_level(w.family, shape, root_elem, top_elem, {leg_elem, arm_elem}, t,
                                      hub, sel_tops, arms);
        if (!validate_embedding(emb.blowup.result, w.family, emb.emb))
            throw std::logic_error("yd finder produced an invalid embedding");
        out.degrees = inner->degrees;
        out.hub = hub;
        out.tops = sel_tops;
        out.embedding = std::move(emb);
        out.achieved_t = t;
        out.shortfall = opt.target_t && t < *opt.target_t;
        out.log.push_back("built blow-up with t=" + std::to_string(t));
        return out;
    }
    out.shortfall = true;
    out.log.push_back("no blow-up found at any t >= 1");
    return out;
}

// --- radius-2 patterns: two independent side copies plus the filter dance --------

namespace {

struct SideCopy {
    std::vector<int> tops;
    std::vector<std::vector<std::vector<int>>> legs;  // per top, per leg kind
    std::vector<Direction> leg_dirs;
};

std::optional<SideCopy> build_side(const SetFamily& fam, const Rational& eps, long long tau,
                                   int hub, bool below, const std::string& pattern,
                                   std::vector<std::string>& log) {
    // below-side of s/splus is the vee shape; spp has the extra lower leg (dual yd).
    // above-side of s is the wedge shape; splus/spp take the yd shape.
    FinderOptions opt;
    opt.target_t = tau;
    opt.forced_hub = hub;
    bool two_legs = below ? pattern == "spp" : pattern != "s";
    if (!two_legs) {
        SupersatWitness wit = find_wedge_blowup(fam, eps, opt, below ? Direction::up : Direction::down);
        if (!wit.embedding || wit.shortfall) {
            log.push_back(std::string(below ? "below" : "above") + " side: wedge failed at tau=" +
                          std::to_string(tau));
            return std::nullopt;
        }
        SideCopy side;
        side.tops = wit.tops;
        const auto& bp = wit.embedding->blowup;
        const auto& img = wit.embedding->emb.assignment;
        int top_elem = bp.base.require("c"), leg_elem = bp.base.require("a");
        for (int tg : bp.group(top_elem, 0)) {
            std::vector<int> l;
            for (int li : bp.group(leg_elem, tg)) l.push_back(img[li]);
            side.legs.push_back({l});
        }
        side.leg_dirs = {below ? Direction::up : Direction::down};
        return side;
    }
    SupersatWitness wit = find_yd_blowup(fam, eps, opt, below ? Direction::down : Direction::up);
    if (!wit.embedding || wit.shortfall) {
        log.push_back(std::string(below ? "below" : "above") + " side: yd failed at tau=" +
                      std::to_string(tau));
        return std::nullopt;
    }
    SideCopy side;
    side.tops = wit.tops;
    const auto& bp = wit.embedding->blowup;
    const auto& img = wit.embedding->emb.assignment;
    int top_elem = bp.base.require("c");
    int leg_elem = bp.base.require("a"), arm_elem = bp.base.require("d");
    for (int tg : bp.group(top_elem, 0)) {
        std::vector<int> l1, l2;
        for (int li : bp.group(leg_elem, tg)) l1.push_back(img[li]);
        for (int li : bp.group(arm_elem, tg)) l2.push_back(img[li]);
        side.legs.push_back({l1, l2});
    }
    // yd arm up: legs are (a: down, d: up); arm down: (a: up, d: down)
    side.leg_dirs = below ? std::vector<Direction>{Direction::up, Direction::down}
                          : std::vector<Direction>{Direction::down, Direction::up};
    return side;
}

}  // namespace

SPlusAssembly find_radius2_blowup(const std::string& pattern, const SetFamily& family,
                                  const Rational& epsilon, std::optional<long long> target_t) {
    if (pattern != "s" && pattern != "splus" && pattern != "spp")
        throw DomainError("find_radius2_blowup supports patterns s, splus, spp");
    CatalogEntry entry = catalog(pattern);
    int h = entry.poset.height();

    SPlusAssembly out;
    out.pattern = pattern;
    bool strict = !target_t.has_value();
    Working w = prepare_family(family, epsilon, Rational(h - 1), strict, out.log);
    out.working = w.family;
    out.size_premise_met = w.premise_met;
    long long t0;
    if (target_t) {
        t0 = *target_t;
        if (t0 < 1) throw DomainError("target_t must be >= 1");
    } else {
        t0 = ceil_rational(radius2_delta(epsilon) * w.family.n());
        t0 = std::max<long long>(t0, 1);
        out.log.push_back("strict mode: paper target t = " + std::to_string(t0));
    }
    out.target_t = t0;

    FamilyRelations rel(w.family);
    std::size_t m = w.family.size();

    // hub candidates: rich on both sides
    std::vector<std::pair<long long, int>> hubs;
    for (std::size_t i = 0; i < m; ++i) {
        long long score = std::min(rel.sub_count(i), rel.sup_count(i));
        if (score >= t0) hubs.push_back({-score, int(i)});
    }
    std::sort(hubs.begin(), hubs.end());
    if (hubs.size() > 64) hubs.resize(64);

    for (long long tau = 2 * t0; tau <= 8 * t0; tau += 2 * t0) {
        for (auto [negscore, hub] : hubs) {
            SPlusAssembly attempt = out;
            attempt.hub = hub;
            attempt.working_tau = tau;
            auto below = build_side(w.family, epsilon, tau, hub, true, pattern, attempt.log);
            if (!below) continue;
            auto above = build_side(w.family, epsilon, tau, hub, false, pattern, attempt.log);
            if (!above) continue;

            auto& gb = below->tops;
            auto& legs_b = below->legs;
            auto& gd = above->tops;
            auto& legs_d = above->legs;

            auto in_list = [&](const std::vector<int>& list, int v) {
                return std::find(list.begin(), list.end(), v) != list.end();
            };

            // step 1: keep the first half of G_b, then purge each above-side leg of
            // the survivors, discarding exactly half of the leg
            {
                SPlusAssembly::FilterStep step{"halve below tops and clear above legs of them", {}};
                std::vector<int> removed(gb.begin() + tau / 2, gb.end());
                for (std::size_t i = tau / 2; i < legs_b.size(); ++i)
                    for (const auto& lk : legs_b[i]) removed.insert(removed.end(), lk.begin(), lk.end());
                gb.resize(tau / 2);
                legs_b.resize(tau / 2);
                bool ok = true;
                for (auto& per_top : legs_d)
                    for (auto& leg : per_top) {
                        std::vector<int> keep, drop;
                        for (int v : leg) (in_list(gb, v) ? drop : keep).push_back(v);
                        long long want_drop = (long long)leg.size() / 2;
                        if ((long long)drop.size() > want_drop) ok = false;
                        while ((long long)drop.size() < want_drop) {
                            drop.push_back(keep.back());
                            keep.pop_back();
                        }
                        leg = keep;
                        removed.insert(removed.end(), drop.begin(), drop.end());
                    }
                step.removed = removed;
                attempt.filter_log.push_back(step);
                if (!ok) {
                    attempt.log.push_back("step 1 overflow: above legs too entangled");
                    continue;
                }
            }
            // step 2: keep the first half of G_d, then purge each below-side leg
            {
                SPlusAssembly::FilterStep step{"halve above tops and clear below legs of them", {}};
                std::vector<int> removed(gd.begin() + tau / 2, gd.end());
                for (std::size_t i = tau / 2; i < legs_d.size(); ++i)
                    for (const auto& lk : legs_d[i]) removed.insert(removed.end(), lk.begin(), lk.end());
                gd.resize(tau / 2);
                legs_d.resize(tau / 2);
                bool ok = true;
                for (auto& per_top : legs_b)
                    for (auto& leg : per_top) {
                        std::vector<int> keep, drop;
                        for (int v : leg) (in_list(gd, v) ? drop : keep).push_back(v);
                        long long want_drop = (long long)leg.size() / 2;
                        if ((long long)drop.size() > want_drop) ok = false;
                        while ((long long)drop.size() < want_drop) {
                            drop.push_back(keep.back());
                            keep.pop_back();
                        }
                        leg = keep;
                        removed.insert(removed.end(), drop.begin(), drop.end());
                    }
                step.removed = removed;
                attempt.filter_log.push_back(step);
                if (!ok) {
                    attempt.log.push_back("step 2 overflow: below legs too entangled");
                    continue;
                }
            }
            // step 3: drop destroyed below-tops (a leg would fall under t0 after
            // removing the remaining above-side leg material), then clean survivors
            {
                std::vector<char> in_above(m, 0);
                for (const auto& per_top : legs_d)
                    for (const auto& leg : per_top)
                        for (int v : leg) in_above[v] = 1;
                SPlusAssembly::FilterStep step{"drop destroyed below tops and clear their legs", {}};
                std::vector<int> new_gb;
                std::vector<std::vector<std::vector<int>>> new_legs;
                long long destroyed = 0;
                for (std::size_t i = 0; i < gb.size(); ++i) {
                    bool dead = false;
                    std::vector<std::vector<int>> cleaned;
                    for (const auto& leg : legs_b[i]) {
                        std::vector<int> keep;
                        for (int v : leg)
                            if (!in_above[v]) keep.push_back(v);
                        if ((long long)keep.size() < t0) dead = true;
                        cleaned.push_back(keep);
                    }
                    if (dead) {
                        ++destroyed;
                        step.removed.push_back(gb[i]);
                        for (const auto& leg : legs_b[i])
                            step.removed.insert(step.removed.end(), leg.begin(), leg.end());
                    } else {
                        for (std::size_t k = 0; k < cleaned.size(); ++k)
                            for (int v : legs_b[i][k])
                                if (in_above[v]) step.removed.push_back(v);
                        new_gb.push_back(gb[i]);
                        new_legs.push_back(cleaned);
                    }
                }
                attempt.destroyed_count = destroyed;
                attempt.destroyed_bound = Rational(99 * (long long)gb.size(), 100);
                attempt.filter_log.push_back(step);
                if (Rational(destroyed) > attempt.destroyed_bound)
                    throw std::logic_error("destroyed-count bound violated");
                gb = new_gb;
                legs_b = new_legs;
            }
            // asymptotic driver: |G_d| * tau < (99 tau / 200)^2, reported
            attempt.driver_inequality_holds =
                Rational((long long)gd.size()) * tau < Rational(99 * tau, 200) * Rational(99 * tau, 200);

            if ((long long)gb.size() < t0) {
                attempt.log.push_back("fewer than t0 below tops survive");
                out = attempt;
                continue;
            }

            // assemble pattern(x, t0) from the survivors
            attempt.side_b = gb;
            attempt.legs_b = legs_b;
            attempt.side_d = gd;
            attempt.legs_d = legs_d;

            BlowupPoset bp = blow_up(entry.poset, entry.poset.require("x"), t0);
            std::vector<int> image(bp.result.size(), -1);
            image[0] = hub;
            int b_elem = bp.base.require("b"), d_elem = bp.base.require("d");
            const auto& b_group = bp.group(b_elem, 0);
            const auto& d_group = bp.group(d_elem, 0);
            std::vector<std::pair<int, int>> b_leg_elems, d_leg_elems;  // (base elem, leg kind)
            b_leg_elems.push_back({bp.base.require("a"), 0});
            if (pattern == "spp") b_leg_elems.push_back({bp.base.require("g"), 1});
            d_leg_elems.push_back({bp.base.require("e"), 0});
            if (pattern != "s") d_leg_elems.push_back({bp.base.require("f"), 1});
            for (long long i = 0; i < t0; ++i) {
                image[b_group[i]] = gb[i];
                for (auto [elem, kind] : b_leg_elems) {
                    const auto& grp = bp.group(elem, b_group[i]);
                    for (long long j = 0; j < t0; ++j) image[grp[j]] = legs_b[i][kind][j];
                }
                image[d_group[i]] = gd[i];
                for (auto [elem, kind] : d_leg_elems) {
                    const auto& grp = bp.group(elem, d_group[i]);
                    for (long long j = 0; j < t0; ++j) image[grp[j]] = legs_d[i][kind][j];
                }
            }
            BlowupEmbedding emb{std::move(bp), Embedding{image}};
            if (!validate_embedding(emb.blowup.result, w.family, emb.emb)) {
                attempt.log.push_back("assembled embedding failed validation");
                out = attempt;
                continue;
            }
            // the two sides must now be disjoint
            {
                std::vector<int> all;
                all.push_back(hub);
                for (std::size_t i = 0; i < gb.size(); ++i) {
                    all.push_back(gb[i]);
                    for (const auto& leg : legs_b[i]) all.insert(all.end(), leg.begin(), leg.end());
                }
                for (std::size_t i = 0; i < gd.size(); ++i) {
                    all.push_back(gd[i]);
                    for (const auto& leg : legs_d[i]) all.insert(all.end(), leg.begin(), leg.end());
                }
                std::sort(all.begin(), all.end());
                if (std::adjacent_find(all.begin(), all.end()) != all.end())
                    throw std::logic_error("side copies still overlap after the filter steps");
            }
            attempt.embedding = std::move(emb);
            attempt.achieved_t = t0;
            attempt.shortfall = false;
            attempt.log.push_back("assembled " + pattern + "(x," + std::to_string(t0) +
                                  ") with working tau=" + std::to_string(tau));
            return attempt;
        }
    }
    out.shortfall = true;
    out.log.push_back("no assembly reached t0");
    return out;
}

SpecialWitness find_special_blowup(const std::string& pattern, const SetFamily& family,
                                   const Rational& epsilon, std::optional<long long> target_t) {
    if (pattern != "wedge" && pattern != "vee")
        throw DomainError("find_special_blowup supports the wedge and vee patterns");
    Direction legs = pattern == "wedge" ? Direction::down : Direction::up;

    SpecialWitness out;
    bool strict = !target_t.has_value();
    std::vector<std::string> prep_log;
    // size premise 4(h-1+eps)m with h = 2: threshold (4 + 4 eps) m
    Working w = prepare_family(family, 4 * epsilon, Rational(4), strict, prep_log);
    out.log = prep_log;
    out.working = w.family;
    out.size_premise_met = w.premise_met;

    int n = w.family.n();
    out.target_n19 = std::pow(double(n), 1.9);
    out.target_n191 = std::pow(double(n), 1.91);

    FamilyRelations rel(w.family);
    auto prof = shadow_profile(w.family, rel, legs);
    std::size_t m = w.family.size();

    // rich members: some level j >= 4 with at least eps*n^4/500 related sets
    Rational theta = epsilon * n * n * n * n / 500;
    std::vector<char> rich(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (int j = 4; j <= int(prof.at[i].size()); ++j)
            if (Rational(prof.count(i, j)) >= theta && prof.count(i, j) >= 1) {
                rich[i] = 1;
                break;
            }

    std::vector<long long> degrees(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t* row = legs == Direction::down ? rel.sup_row(i) : rel.sub_row(i);
        for (std::size_t w2 = 0; w2 < rel.words; ++w2) {
            std::uint64_t bits = row[w2];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                if (rich[w2 * 64 + b]) ++degrees[i];
            }
        }
    }
    long long best = -1;
    int hub = -1;
    for (std::size_t i = 0; i < m; ++i)
        if (degrees[i] > best) {
            best = degrees[i];
            hub = int(i);
        }
    if (hub < 0 || best < 1) {
        out.log.push_back("no rich neighbours anywhere");
        return out;
    }
    out.hub = hub;

    std::vector<int> nbr;
    {
        const std::uint64_t* row = legs == Direction::down ? rel.sup_row(hub) : rel.sub_row(hub);
        for (std::size_t w2 = 0; w2 < rel.words; ++w2) {
            std::uint64_t bits = row[w2];
            while (bits) {
                int b = std::countr_zero(bits);
                bits &= bits - 1;
                if (rich[w2 * 64 + b]) nbr.push_back(int(w2 * 64 + b));
            }
        }
    }

    long long start_t = target_t.value_or(0);
    if (!target_t) {
        CatalogEntry wc = catalog("wedge");
        long long cap = 1;
        while (blow_up_size(wc.poset, wc.poset.require("x"), cap + 1) <= BigInt(m)) ++cap;
        start_t = std::min<long long>(cap, (long long)nbr.size());
    }
    for (long long t = start_t; t >= 1; --t) {
        if ((long long)nbr.size() < t) continue;
        std::vector<int> tops(nbr.begin(), nbr.begin() + t);
        // legs may be any related members, greedily (with backtracking) distinct
        std::vector<std::vector<int>> pools;
        for (int top : tops) {
            std::vector<int> pool;
            const std::uint64_t* row = legs == Direction::down ? rel.sub_row(top) : rel.sup_row(top);
            for (std::size_t w2 = 0; w2 < rel.words; ++w2) {
                std::uint64_t bits = row[w2];
                while (bits) {
                    int b = std::countr_zero(bits);
                    bits &= bits - 1;
                    pool.push_back(int(w2 * 64 + b));
                }
            }
            pools.push_back(pool);
        }
        std::vector<char> used(m, 0);
        used[hub] = 1;
        for (int c : tops) used[c] = 1;
        auto picked = assign_disjoint_groups(pools, t, used);
        if (!picked) continue;

        CatalogEntry pat = catalog(pattern == "wedge" ? "wedge" : "vee");
        int root_elem = pat.poset.require("x"), top_elem = pat.poset.require("c"),
            leg_elem = pat.poset.require("a");
        std::vector<std::vector<std::vector<int>>> arms;
        for (auto& l : *picked) arms.push_back({l});
        auto emb = assemble_two_level(w.family, pat.poset, root_elem, top_elem, {leg_elem}, t, hub,
                                      tops, arms);
        if (!validate_embedding(emb.blowup.result, w.family, emb.emb))
            throw std::logic_error("special finder produced an invalid embedding");
        out.tops = tops;
        out.embedding = std::move(emb);
        out.achieved_t = t;
        out.log.push_back("built blow-up with t=" + std::to_string(t) + "; reference targets n^1.9=" +
                          std::to_string(out.target_n19) + ", n^1.91=" + std::to_string(out.target_n191));
        return out;
    }
    out.log.push_back("no blow-up found");
    return out;
}

}  // namespace subposets
