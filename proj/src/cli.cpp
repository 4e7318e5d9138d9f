#include "subposets/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "subposets/containers.hpp"
#include "subposets/lattice.hpp"
#include "subposets/random_families.hpp"
#include "subposets/supersat.hpp"

namespace subposets::cli {

namespace {

using nlohmann::json;

CatalogEntry pattern_arg(const std::string& text) {
    if (std::filesystem::exists(text)) {
        Poset p = load_poset(text);
        return CatalogEntry{"file:" + text, {}, p};
    }
    if (text == "antichain") return catalog("chain", {2});
    return parse_pattern_shorthand(text);
}

int resolve_root(const CatalogEntry& entry, const std::string& flag) {
    if (!flag.empty()) return entry.poset.require(flag);
    if (entry.poset.root()) return *entry.poset.root();
    throw DomainError("pattern has no designated root; pass --root");
}

json family_json(const SetFamily& fam) {
    json arr = json::array();
    for (SetWord s : fam.members()) arr.push_back(format_member(s));
    return arr;
}

json embedding_json(const Poset& pattern, const SetFamily& fam, const Embedding& emb) {
    json obj = json::object();
    for (int i = 0; i < pattern.size(); ++i)
        obj[pattern.label(i)] = format_member(fam[std::size_t(emb.assignment[i])]);
    return obj;
}

json witness_json(const SupersatWitness& wit) {
    json j;
    j["achieved_t"] = wit.achieved_t;
    j["target_t"] = wit.target_t;
    j["shortfall"] = wit.shortfall;
    j["size_premise_met"] = wit.size_premise_met;
    if (wit.hub >= 0) j["hub"] = format_member(wit.working[wit.hub]);
    if (wit.embedding)
        j["assignment"] = embedding_json(wit.embedding->blowup.result, wit.working, wit.embedding->emb);
    j["ledger"] = wit.log;
    return j;
}

int default_jobs() {
    if (const char* env = std::getenv("SUBPOSETS_JOBS")) {
        int j = std::atoi(env);
        if (j >= 1) return j;
    }
    return 1;
}

std::uint64_t parse_seed(const std::string& s) { return std::strtoull(s.c_str(), nullptr, 10); }

struct Ctx {
    std::ostream& out;
    std::ostream& err;
    int jobs = 1;
    bool timing = false;
    bool i_know = false;
    std::function<int()> action;
};

void emit(Ctx& ctx, json j, std::chrono::steady_clock::time_point started) {
    if (ctx.timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
        j["runtime_ms"] = ms;
    }
    ctx.out << j.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"forbidden-subposet toolkit: exact solvers, blow-up searches,"
                 " fingerprint containers, and randomized experiments on set families"};
    app.require_subcommand(1);
    Ctx ctx{out, err, default_jobs(), false, false, {}};
    app.add_option("--jobs", ctx.jobs, "worker threads for parallel operations");
    app.add_flag("--timing", ctx.timing, "append runtime_ms to JSON output (breaks byte-reproducibility)");
    app.add_flag("--i-know", ctx.i_know, "acknowledge a capacity override");
    auto started = std::chrono::steady_clock::now();

    // ---- la ----
    {
        auto* c = app.add_subcommand("la", "largest pattern-free family in 2^[n] (exact search)");
        auto n = std::make_shared<int>(0);
        auto pat = std::make_shared<std::string>();
        c->add_option("--n", *n)->required();
        c->add_option("--pattern", *pat, "pattern file or shorthand (chain:t, wedge, ...)")->required();
        c->callback([&ctx, n, pat, started] {
            ctx.action = [&ctx, n, pat, started] {
                CatalogEntry entry = pattern_arg(*pat);
                ExtremalResult r = la_exact(*n, entry.poset);
                json j{{"value", r.value.str()}, {"method", r.method}, {"witness", family_json(r.witness)}};
                emit(ctx, j, started);
                return 0;
            };
        });
    }
    // ---- count ----
    {
        auto* c = app.add_subcommand("count", "number of pattern-free families in 2^[n] (exact)");
        auto n = std::make_shared<int>(0);
        auto pat = std::make_shared<std::string>();
        c->add_option("--n", *n)->required();
        c->add_option("--pattern", *pat)->required();
        c->callback([&ctx, n, pat, started] {
            ctx.action = [&ctx, n, pat, started] {
                CatalogEntry entry = pattern_arg(*pat);
                BigInt r = count_pfree(*n, entry.poset);
                emit(ctx, json{{"count", r.str()}}, started);
                return 0;
            };
        });
    }
    // ---- maxfree ----
    {
        auto* c = app.add_subcommand(
            "maxfree", "largest pattern-free subfamily of an explicit family"
                       " (antichain: Dilworth matching; chain:t: capped chain partition via flow)");
        auto fam = std::make_shared<std::string>();
        auto pat = std::make_shared<std::string>();
        c->add_option("--family", *fam)->required();
        c->add_option("--pattern", *pat, "antichain | chain:t | any pattern (exact search, small)")->required();
        c->callback([&ctx, fam, pat, started] {
            ctx.action = [&ctx, fam, pat, started] {
                SetFamily family = load_family(*fam);
                CatalogEntry entry = pattern_arg(*pat);
                ExtremalResult r = [&] {
                    if (entry.name == "chain" && entry.params[0] == 2) return max_antichain(family);
                    if (entry.name == "chain") return max_ct_free(family, int(entry.params[0]));
                    return max_pfree_subfamily(family, entry.poset);
                }();
                json j{{"value", r.value.str()}, {"method", r.method}, {"witness", family_json(r.witness)}};
                emit(ctx, j, started);
                return 0;
            };
        });
    }
    // ---- blowup ----
    {
        auto* c = app.add_subcommand("blowup", "materialize or size the rooted d-fold blow-up of a tree poset");
        auto pat = std::make_shared<std::string>();
        auto root = std::make_shared<std::string>();
        auto d = std::make_shared<long long>(2);
        auto mode = std::make_shared<std::string>("poset");
        c->add_option("--poset", *pat, "poset file or shorthand")->required();
        c->add_option("--root", *root);
        c->add_option("--d", *d)->required();
        c->add_option("--emit", *mode)->check(CLI::IsMember({"poset", "size"}));
        c->callback([&ctx, pat, root, d, mode, started] {
            ctx.action = [&ctx, pat, root, d, mode, started] {
                CatalogEntry entry = pattern_arg(*pat);
                int r = resolve_root(entry, *root);
                if (*mode == "size") {
                    emit(ctx, json{{"size", blow_up_size(entry.poset, r, *d).str()}}, started);
                } else {
                    BlowupPoset bp = blow_up(entry.poset, r, *d);
                    ctx.out << poset_to_json(bp.result) << '\n';
                }
                return 0;
            };
        });
    }
    // ---- embed ----
    {
        auto* c = app.add_subcommand("embed", "backtracking subposet / blow-up copy search in a family");
        auto pat = std::make_shared<std::string>();
        auto fam = std::make_shared<std::string>();
        auto root = std::make_shared<std::string>();
        auto blow = std::make_shared<std::string>();
        auto induced = std::make_shared<bool>(false);
        auto cap = std::make_shared<int>(kDefaultPatternCap);
        c->add_option("--pattern", *pat)->required();
        c->add_option("--family", *fam)->required();
        c->add_flag("--induced", *induced);
        c->add_option("--blowup", *blow, "t or 'max': search the rooted t-fold blow-up instead");
        c->add_option("--root", *root);
        c->add_option("--pattern-cap", *cap, "capacity override, needs --i-know");
        c->callback([&ctx, pat, fam, root, blow, induced, cap, started] {
            ctx.action = [&ctx, pat, fam, root, blow, induced, cap, started] {
                if (*cap != kDefaultPatternCap && !ctx.i_know)
                    throw DomainError("--pattern-cap override requires --i-know");
                CatalogEntry entry = pattern_arg(*pat);
                SetFamily family = load_family(*fam);
                if (blow->empty()) {
                    auto emb = find_subposet(entry.poset, family, *induced, *cap);
                    if (!emb) {
                        ctx.out << "NONE\n";
                        return 0;
                    }
                    emit(ctx, json{{"assignment", embedding_json(entry.poset, family, *emb)}}, started);
                    return 0;
                }
                int r = resolve_root(entry, *root);
                if (*blow == "max") {
                    auto [t, copy] = max_blowup_t(entry.poset, r, family, default_t_cap(family.n()));
                    if (!copy) {
                        ctx.out << "NONE\n";
                        return 0;
                    }
                    emit(ctx,
                         json{{"t", t},
                              {"assignment", embedding_json(copy->blowup.result, family, copy->emb)}},
                         started);
                    return 0;
                }
                long long t = std::atoll(blow->c_str());
                if (t < 1) throw DomainError("--blowup expects a positive integer or 'max'");
                auto copy = find_blowup_copy(entry.poset, r, t, family);
                if (!copy) {
                    ctx.out << "NONE\n";
                    return 0;
                }
                emit(ctx, json{{"assignment", embedding_json(copy->blowup.result, family, copy->emb)}},
                     started);
                return 0;
            };
        });
    }
    // ---- super ----
    {
        auto* c = app.add_subcommand("super", "supersaturation: rich-type classification, mass bounds,"
                                              " and constructive blow-up finders");
        c->require_subcommand(1);
        auto fam = std::make_shared<std::string>();
        auto eps = std::make_shared<std::string>("0.5");
        // find
        {
            auto* f = c->add_subcommand("find", "build pattern(x,t) in a family (wedge|vee|yd|s|splus|spp)");
            auto pat = std::make_shared<std::string>();
            auto target = std::make_shared<long long>(-1);
            auto special = std::make_shared<bool>(false);
            f->add_option("--pattern", *pat)->required();
            f->add_option("--family", *fam)->required();
            f->add_option("--epsilon", *eps);
            f->add_option("--target-t", *target, "desk mode target; omit for the strict size premise");
            f->add_flag("--special", *special, "use the level->=4 rich split (wedge/vee only)");
            f->callback([&ctx, pat, fam, eps, target, special, started] {
                ctx.action = [&ctx, pat, fam, eps, target, special, started] {
                    SetFamily family = load_family(*fam);
                    Rational e = parse_decimal(*eps);
                    std::optional<long long> t;
                    if (*target >= 1) t = *target;
                    json j;
                    if (*special) {
                        SpecialWitness wit = find_special_blowup(*pat, family, e, t);
                        j["achieved_t"] = wit.achieved_t;
                        j["size_premise_met"] = wit.size_premise_met;
                        j["reference_targets"] = {wit.target_n19, wit.target_n191};
                        if (wit.hub >= 0) j["hub"] = format_member(wit.working[wit.hub]);
                        if (wit.embedding)
                            j["assignment"] = embedding_json(wit.embedding->blowup.result, wit.working,
                                                             wit.embedding->emb);
                        j["ledger"] = wit.log;
                    } else if (*pat == "wedge" || *pat == "vee") {
                        FinderOptions opt;
                        opt.target_t = t;
                        j = witness_json(find_wedge_blowup(
                            family, e, opt, *pat == "wedge" ? Direction::down : Direction::up));
                    } else if (*pat == "yd" || *pat == "y") {
                        FinderOptions opt;
                        opt.target_t = t;
                        j = witness_json(find_yd_blowup(family, e, opt,
                                                        *pat == "yd" ? Direction::up : Direction::down));
                    } else if (*pat == "s" || *pat == "splus" || *pat == "spp") {
                        SPlusAssembly a = find_radius2_blowup(*pat, family, e, t);
                        j["achieved_t"] = a.achieved_t;
                        j["target_t"] = a.target_t;
                        j["shortfall"] = a.shortfall;
                        j["size_premise_met"] = a.size_premise_met;
                        j["working_tau"] = a.working_tau;
                        j["destroyed_count"] = a.destroyed_count;
                        if (a.hub >= 0) j["hub"] = format_member(a.working[a.hub]);
                        if (a.embedding)
                            j["assignment"] =
                                embedding_json(a.embedding->blowup.result, a.working, a.embedding->emb);
                        json steps = json::array();
                        for (const auto& st : a.filter_log) {
                            json s{{"what", st.what}, {"removed", json::array()}};
                            for (int v : st.removed) s["removed"].push_back(format_member(a.working[v]));
                            steps.push_back(s);
                        }
                        j["filter_steps"] = steps;
                        j["ledger"] = a.log;
                    } else {
                        throw DomainError("super find supports wedge|vee|yd|y|s|splus|spp");
                    }
                    emit(ctx, j, started);
                    return 0;
                };
            });
        }
        // classify
        {
            auto* f = c->add_subcommand("classify", "rich-type tags per member (1: many at distance one,"
                                                    " 2: many at some distance >= 2, 3: neither)");
            auto dir = std::make_shared<std::string>("down");
            f->add_option("--family", *fam)->required();
            f->add_option("--epsilon", *eps);
            f->add_option("--direction", *dir)->check(CLI::IsMember({"up", "down"}));
            f->callback([&ctx, fam, eps, dir, started] {
                ctx.action = [&ctx, fam, eps, dir, started] {
                    SetFamily family = load_family(*fam);
                    auto cls = classify_types(family, parse_decimal(*eps),
                                              *dir == "down" ? Direction::down : Direction::up);
                    json tags = json::object();
                    for (std::size_t i = 0; i < family.size(); ++i) {
                        int tag = cls.tags[i] == TypeClassification::Tag::type1   ? 1
                                  : cls.tags[i] == TypeClassification::Tag::type2 ? 2
                                                                                  : 3;
                        tags[format_member(family[i])] = tag;
                    }
                    emit(ctx, json{{"direction", *dir}, {"tags", tags}}, started);
                    return 0;
                };
            });
        }
        // check-fork / check-fork-plus
        for (bool plus : {false, true}) {
            auto* f = c->add_subcommand(plus ? "check-fork-plus" : "check-fork",
                                        plus ? "shadow hypotheses at distances >= 4 and the (4+400eps)m bound"
                                             : "shadow hypotheses and the (1+15eps)m size bound");
            f->add_option("--family", *fam)->required();
            f->add_option("--epsilon", *eps);
            f->callback([&ctx, fam, eps, plus, started] {
                ctx.action = [&ctx, fam, eps, plus, started] {
                    SetFamily family = load_family(*fam);
                    Rational e = parse_decimal(*eps);
                    ForkReport rep = plus ? check_fork_plus_bound(family, e) : check_fork_bound(family, e);
                    json j{{"applicable", rep.applicable},
                           {"bound_holds", rep.bound_holds},
                           {"family_size", rep.family_size.str()},
                           {"detail", rep.detail}};
                    std::ostringstream b;
                    b << rep.bound;
                    j["bound"] = b.str();
                    emit(ctx, j, started);
                    return 0;
                };
            });
        }
    }
    // ---- containers ----
    {
        auto* c = app.add_subcommand("containers", "fingerprint/container decompositions of pattern-free"
                                                   " families, their replay, and a container census");
        c->require_subcommand(1);
        auto pat = std::make_shared<std::string>();
        auto root = std::make_shared<std::string>();
        auto tstar = std::make_shared<long long>(2);
        auto cap = std::make_shared<int>(7);
        auto trace_steps = [](const ContainerRun& run, const SetFamily& fam) {
            json lines = json::array();
            for (const auto& st : run.trace) {
                json s;
                s["t"] = st.t;
                s["root"] = format_member(st.root_member);
                s["root_in_family"] = st.root_in_family;
                s["kind"] = int(st.kind);
                json sub = json::array();
                for (const auto& sp : st.subphases) {
                    json q{{"scanned", json::array()}, {"chosen", sp.chosen}};
                    for (SetWord w : sp.scanned) q["scanned"].push_back(format_member(w));
                    sub.push_back(q);
                }
                s["subphases"] = sub;
                lines.push_back(s);
            }
            (void)fam;
            return lines;
        };
        // run
        {
            auto* f = c->add_subcommand("run", "single-stage (or two-stage with --t1) container run");
            auto fam = std::make_shared<std::string>();
            auto t1 = std::make_shared<long long>(0);
            auto trace = std::make_shared<bool>(false);
            f->add_option("--pattern", *pat)->required();
            f->add_option("--root", *root);
            f->add_option("--t-star", *tstar);
            f->add_option("--t1", *t1, "first-stage threshold; makes the run two-stage");
            f->add_option("--family", *fam)->required();
            f->add_option("--lattice-cap", *cap, "capacity override, needs --i-know");
            f->add_flag("--trace", *trace, "emit the per-step trace as JSON lines");
            f->callback([&ctx, pat, root, tstar, t1, fam, cap, trace, trace_steps, started] {
                ctx.action = [&ctx, pat, root, tstar, t1, fam, cap, trace, trace_steps, started] {
                    if (*cap != 7 && !ctx.i_know) throw DomainError("--lattice-cap override requires --i-know");
                    CatalogEntry entry = pattern_arg(*pat);
                    int r = resolve_root(entry, *root);
                    SetFamily family = load_family(*fam);
                    json j;
                    if (*t1 > 0) {
                        TwoStageRun run = run_two_stage(family, entry.poset, r, *t1, *tstar, *cap);
                        check_two_stage_invariants(run, family, entry.poset, r);
                        json h1 = json::array(), h2 = json::array();
                        for (SetWord s : run.stage1.fingerprint) h1.push_back(format_member(s));
                        for (SetWord s : run.stage2.fingerprint) h2.push_back(format_member(s));
                        j["fingerprint1"] = h1;
                        j["fingerprint2"] = h2;
                        j["container"] = family_json(run.stage2.f_of_h);
                        if (*trace) {
                            j["trace1"] = trace_steps(run.stage1, family);
                            j["trace2"] = trace_steps(run.stage2, family);
                        }
                    } else {
                        ContainerRun run = run_single_stage(family, entry.poset, r, *tstar, *cap);
                        check_container_invariants(run, family, entry.poset, r);
                        json h = json::array();
                        for (SetWord s : run.fingerprint) h.push_back(format_member(s));
                        j["fingerprint"] = h;
                        j["f_of_h"] = family_json(run.f_of_h);
                        if (*trace) j["trace"] = trace_steps(run, family);
                    }
                    emit(ctx, j, started);
                    return 0;
                };
            });
        }
        // replay
        {
            auto* f = c->add_subcommand("replay", "reconstruct f(H) from a fingerprint alone");
            auto fp = std::make_shared<std::string>();
            auto n = std::make_shared<int>(0);
            f->add_option("--pattern", *pat)->required();
            f->add_option("--root", *root);
            f->add_option("--t-star", *tstar);
            f->add_option("--n", *n)->required();
            f->add_option("--fingerprint", *fp, "family file holding H in order")->required();
            f->callback([&ctx, pat, root, tstar, fp, n, started] {
                ctx.action = [&ctx, pat, root, tstar, fp, n, started] {
                    CatalogEntry entry = pattern_arg(*pat);
                    int r = resolve_root(entry, *root);
                    SetFamily h = load_family(*fp);
                    std::vector<SetWord> fingerprint(h.members());
                    ContainerRun run = replay_single_stage(fingerprint, entry.poset, r, *tstar, *n);
                    emit(ctx, json{{"f_of_h", family_json(run.f_of_h)}}, started);
                    return 0;
                };
            });
        }
        // census
        {
            auto* f = c->add_subcommand("census", "containers over a stream of pattern-free families");
            auto fam = std::make_shared<std::string>();
            auto all = std::make_shared<bool>(false);
            auto n = std::make_shared<int>(0);
            f->add_option("--pattern", *pat)->required();
            f->add_option("--root", *root);
            f->add_option("--t-star", *tstar);
            f->add_option("--family", *fam, "a single family file");
            f->add_flag("--all-pfree", *all, "every pattern-free family in 2^[n] (n <= 4)");
            f->add_option("--n", *n);
            f->callback([&ctx, pat, root, tstar, fam, all, n, started] {
                ctx.action = [&ctx, pat, root, tstar, fam, all, n, started] {
                    CatalogEntry entry = pattern_arg(*pat);
                    int r = resolve_root(entry, *root);
                    std::vector<SetFamily> families;
                    int nn = *n;
                    if (*all) {
                        if (nn <= 0) throw DomainError("--all-pfree needs --n");
                        families = all_pfree_families(nn, entry.poset);
                    } else if (!fam->empty()) {
                        families.push_back(load_family(*fam));
                        nn = families[0].n();
                    } else {
                        throw DomainError("census needs --family or --all-pfree");
                    }
                    Census census = container_census(nn, entry.poset, r, *tstar, families, ctx.jobs);
                    json j{{"families", census.families_processed},
                           {"distinct_containers", census.entries.size()},
                           {"max_container_size", census.max_container_size},
                           {"all_covered", census.all_covered},
                           {"fingerprint_space", census.fingerprint_space.str()}};
                    emit(ctx, j, started);
                    return 0;
                };
            });
        }
    }
    // ---- random ----
    {
        auto* c = app.add_subcommand("random", "random subfamilies of 2^[n]: estimators, experiments,"
                                               " the diamond construction, and the union-bound evaluator");
        c->require_subcommand(1);
        // experiment
        {
            auto* f = c->add_subcommand("experiment", "CSV of largest-pattern-free statistics over an (n,p) grid");
            auto cfg = std::make_shared<std::string>();
            auto out_path = std::make_shared<std::string>();
            f->add_option("--config", *cfg, "JSON config file")->required();
            f->add_option("--out", *out_path, "CSV path (default: standard output)");
            f->callback([&ctx, cfg, out_path] {
                ctx.action = [&ctx, cfg, out_path] {
                    std::ifstream in(*cfg);
                    if (!in) throw IoError("cannot open config: " + *cfg);
                    std::stringstream buf;
                    buf << in.rdbuf();
                    ExperimentConfig config = parse_experiment_config(buf.str());
                    if (config.jobs <= 1) config.jobs = ctx.jobs;
                    auto cells = run_experiment(config);
                    if (out_path->empty()) {
                        write_experiment_csv(ctx.out, config, cells);
                    } else {
                        std::ofstream f2(*out_path);
                        if (!f2) throw IoError("cannot write: " + *out_path);
                        write_experiment_csv(f2, config, cells);
                    }
                    return 0;
                };
            });
        }
        // diamond
        {
            auto* f = c->add_subcommand("diamond", "middle-3-layer sample, one removal per diamond copy,"
                                                   " certified diamond-free output");
            auto n = std::make_shared<int>(14);
            auto p = std::make_shared<double>(0.05);
            auto seed = std::make_shared<std::string>("0");
            f->add_option("--n", *n);
            f->add_option("--p", *p);
            f->add_option("--seed", *seed);
            f->callback([&ctx, n, p, seed, started] {
                ctx.action = [&ctx, n, p, seed, started] {
                    DiamondRunReport rep = diamond_lower_bound_run(*n, *p, parse_seed(*seed));
                    json j{{"n", rep.n},
                           {"p", rep.p},
                           {"sample_size", rep.sample_size},
                           {"copies_found", rep.copies_found},
                           {"removals", rep.removals},
                           {"final_size", rep.final_size},
                           {"certified_free", rep.certified_free},
                           {"three_pm", rep.three_pm},
                           {"census_full_middle3", rep.census_full_middle3.str()},
                           {"expected_copies", rep.expected_copies},
                           {"formula_copies", rep.formula_copies}};
                    emit(ctx, j, started);
                    return 0;
                };
            });
        }
        // pi
        {
            auto* f = c->add_subcommand("pi", "log-space union-bound evaluation with exact exponent");
            f->set_help_flag("--help", "print help");  // frees --h for the height parameter
            auto n = std::make_shared<long long>(50);
            auto h = std::make_shared<int>(2);
            auto psize = std::make_shared<int>(3);
            auto delta = std::make_shared<std::string>("0.01");
            auto eps = std::make_shared<std::string>("0.2");
            auto p = std::make_shared<std::string>("1");
            f->add_option("--n", *n);
            f->add_option("--h", *h);
            f->add_option("--pattern-size", *psize);
            f->add_option("--delta", *delta);
            f->add_option("--epsilon", *eps);
            f->add_option("--p", *p);
            f->callback([&ctx, n, h, psize, delta, eps, p, started] {
                ctx.action = [&ctx, n, h, psize, delta, eps, p, started] {
                    PiReport rep = union_bound_pi(*n, *h, *psize, parse_decimal(*delta),
                                                  parse_decimal(*eps), parse_decimal(*p));
                    json j{{"log_pi", rep.log_pi},
                           {"vacuous", rep.vacuous},
                           {"log_factor_counts", rep.log_factor_counts},
                           {"log_factor_stage1", rep.log_factor_stage1},
                           {"log_factor_stage2", rep.log_factor_stage2},
                           {"log_budget", rep.log_budget},
                           {"factor_ok", {rep.factor_ok[0], rep.factor_ok[1], rep.factor_ok[2]}},
                           {"exponent_exact", rep.exponent_exact},
                           {"log_exponent", rep.log_exponent}};
                    emit(ctx, j, started);
                    return 0;
                };
            });
        }
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }
    try {
        if (!ctx.action) {
            err << "no action resolved\n";
            return 1;
        }
        return ctx.action();
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return 3;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace subposets::cli
