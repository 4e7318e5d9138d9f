#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "subposets/cli.hpp"
#include "subposets/containers.hpp"
#include "subposets/lattice.hpp"
#include "subposets/random_families.hpp"
#include "subposets/supersat.hpp"

namespace py = pybind11;
using namespace subposets;

namespace {

SetFamily family_from_lists(int n, const std::vector<std::vector<int>>& sets) {
    std::vector<SetWord> members;
    for (const auto& s : sets) {
        SetWord m = 0;
        for (int e : s) {
            if (e < 1 || e > n) throw DomainError("element out of [1,n]");
            m |= SetWord(1) << (e - 1);
        }
        members.push_back(m);
    }
    return SetFamily(GroundSet(n), members);
}

std::vector<std::vector<int>> family_to_lists(const SetFamily& fam) {
    std::vector<std::vector<int>> out;
    for (SetWord s : fam.members()) {
        std::vector<int> one;
        for (int i = 0; i < fam.n(); ++i)
            if (s & (SetWord(1) << i)) one.push_back(i + 1);
        out.push_back(one);
    }
    return out;
}

Poset poset_arg(const std::string& shorthand) { return parse_pattern_shorthand(shorthand).poset; }

Direction parse_dir(const std::string& d) {
    if (d == "up") return Direction::up;
    if (d == "down") return Direction::down;
    throw DomainError("direction must be 'up' or 'down'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "set-family and poset-pattern algorithms: exact extremal solvers, blow-up"
              " searches, fingerprint containers, and randomized estimators";

    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<CapacityError>(m, "CapacityError");
    py::register_exception<IoError>(m, "IoError");

    py::class_<SetFamily>(m, "SetFamily")
        .def(py::init(&family_from_lists), py::arg("n"), py::arg("members"))
        .def_property_readonly("n", &SetFamily::n)
        .def("__len__", &SetFamily::size)
        .def("members", &family_to_lists)
        .def("middle_band", &SetFamily::middle_band)
        .def("complement_family", &SetFamily::complement_family)
        .def("__repr__", [](const SetFamily& f) {
            std::ostringstream ss;
            ss << "SetFamily(n=" << f.n() << ", size=" << f.size() << ")";
            return ss.str();
        });

    py::class_<Poset>(m, "Poset")
        .def_static(
            "build",
            [](const std::vector<std::string>& labels,
               const std::vector<std::pair<std::string, std::string>>& covers,
               const std::optional<std::string>& root) { return Poset::build(labels, covers, root); },
            py::arg("labels"), py::arg("covers"), py::arg("root") = std::nullopt)
        .def_property_readonly("height", &Poset::height)
        .def_property_readonly("is_tree", &Poset::is_tree)
        .def_property_readonly("labels", &Poset::labels)
        .def("dual", &Poset::dual)
        .def("to_json", &poset_to_json)
        .def("__len__", &Poset::size);

    m.def("catalog", [](const std::string& shorthand) { return poset_arg(shorthand); },
          "named pattern from a shorthand like 'chain:3', 'wedge', 'tree:2,3'");
    m.def("radius_and_centers", [](const Poset& p) {
        auto [r, centers] = radius_and_centers(p);
        std::vector<std::string> names;
        for (int c : centers) names.push_back(p.label(c));
        return std::make_pair(r, names);
    });
    m.def("reduce_equiv", &reduce_equiv, py::arg("poset"), py::arg("root"));

    m.def("full_lattice", &full_lattice);
    m.def("lattice_layers", &lattice_layers);
    m.def("lubell_mass", [](const SetFamily& f) {
        std::ostringstream ss;
        ss << lubell_mass(f);
        return ss.str();
    });
    m.def("upper_shadow_count", [](const SetFamily& f, const std::vector<int>& base, int j) {
        SetWord b = 0;
        for (int e : base) b |= SetWord(1) << (e - 1);
        return upper_shadow_count(f, b, j);
    });
    m.def("min_partition", [](const SetFamily& f) {
        MinPartition mp = min_partition(f);
        py::dict d;
        for (const auto& [s, c] : mp.chains_with_min) d[py::str(format_member(s))] = c.str();
        return py::make_tuple(d, mp.empty_count.str());
    });

    m.def("blow_up_size", [](const Poset& p, const std::string& root, long long d) {
        return blow_up_size(p, root, d).str();
    });
    m.def("blow_up", [](const Poset& p, const std::string& root, long long d) {
        return blow_up(p, root, d).result;
    });

    m.def(
        "find_subposet",
        [](const Poset& pattern, const SetFamily& fam, bool induced)
            -> std::optional<std::map<std::string, std::vector<int>>> {
            auto emb = find_subposet(pattern, fam, induced);
            if (!emb) return std::nullopt;
            std::map<std::string, std::vector<int>> out;
            auto lists = family_to_lists(fam);
            for (int i = 0; i < pattern.size(); ++i)
                out[pattern.label(i)] = lists[std::size_t(emb->assignment[i])];
            return out;
        },
        py::arg("pattern"), py::arg("family"), py::arg("induced") = false);
    m.def("max_blowup_t", [](const Poset& pattern, const std::string& root, const SetFamily& fam,
                             long long cap) { return max_blowup_t(pattern, pattern.require(root), fam, cap).first; });

    m.def("la_exact", [](int n, const Poset& pattern) {
        ExtremalResult r = la_exact(n, pattern);
        return py::make_tuple(r.value.str(), r.witness, r.method);
    });
    m.def("count_pfree", [](int n, const Poset& pattern) { return count_pfree(n, pattern).str(); });
    m.def("max_antichain", [](const SetFamily& f) {
        ExtremalResult r = max_antichain(f);
        return py::make_tuple(r.value.str(), r.witness, r.method);
    });
    m.def("max_ct_free", [](const SetFamily& f, int t) {
        ExtremalResult r = max_ct_free(f, t);
        return py::make_tuple(r.value.str(), r.witness, r.method);
    });
    m.def("mirsky_partition", [](const SetFamily& f, int k) -> std::optional<std::vector<SetFamily>> {
        return mirsky_partition(f, k);
    });

    m.def("classify_types", [](const SetFamily& f, const std::string& eps, const std::string& dir) {
        auto cls = classify_types(f, parse_decimal(eps), parse_dir(dir));
        std::vector<int> tags;
        for (auto t : cls.tags)
            tags.push_back(t == TypeClassification::Tag::type1   ? 1
                           : t == TypeClassification::Tag::type2 ? 2
                                                                 : 3);
        return tags;
    });
    m.def("check_fork_bound", [](const SetFamily& f, const std::string& eps) {
        ForkReport r = check_fork_bound(f, parse_decimal(eps));
        return py::make_tuple(r.applicable, r.bound_holds, r.detail);
    });
    m.def("check_fork_plus_bound", [](const SetFamily& f, const std::string& eps) {
        ForkReport r = check_fork_plus_bound(f, parse_decimal(eps));
        return py::make_tuple(r.applicable, r.bound_holds, r.detail);
    });
    m.def(
        "find_wedge_blowup",
        [](const SetFamily& f, const std::string& eps, std::optional<long long> target,
           const std::string& legs) {
            FinderOptions opt;
            opt.target_t = target;
            SupersatWitness w = find_wedge_blowup(f, parse_decimal(eps), opt, parse_dir(legs));
            return py::make_tuple(w.achieved_t, w.shortfall, w.size_premise_met);
        },
        py::arg("family"), py::arg("epsilon"), py::arg("target_t") = std::nullopt,
        py::arg("legs") = "down");
    m.def(
        "find_radius2_blowup",
        [](const std::string& pattern, const SetFamily& f, const std::string& eps,
           std::optional<long long> target) {
            SPlusAssembly a = find_radius2_blowup(pattern, f, parse_decimal(eps), target);
            return py::make_tuple(a.achieved_t, a.shortfall, a.destroyed_count);
        },
        py::arg("pattern"), py::arg("family"), py::arg("epsilon"),
        py::arg("target_t") = std::nullopt);

    py::class_<ContainerRun>(m, "ContainerRun")
        .def_property_readonly("fingerprint",
                               [](const ContainerRun& r) {
                                   std::vector<std::string> out;
                                   for (SetWord s : r.fingerprint) out.push_back(format_member(s));
                                   return out;
                               })
        .def_property_readonly("f_of_h", [](const ContainerRun& r) { return r.f_of_h; })
        .def_property_readonly("certified_no_copy",
                               [](const ContainerRun& r) { return r.certified_no_copy; });
    m.def("run_single_stage", [](const SetFamily& fam, const Poset& pattern, const std::string& root,
                                 long long t_star) {
        return run_single_stage(fam, pattern, pattern.require(root), t_star);
    });
    m.def("replay_single_stage", [](const std::vector<std::vector<int>>& fingerprint, int n,
                                    const Poset& pattern, const std::string& root, long long t_star) {
        SetFamily h = family_from_lists(n, fingerprint);
        std::vector<SetWord> fp(h.members());
        return replay_single_stage(fp, pattern, pattern.require(root), t_star, n);
    });

    m.def("sample_family", [](int n, double p, std::uint64_t seed) {
        return sample_family(n, p, seed).family;
    });
    m.def(
        "largest_pfree_in_sample",
        [](const SetFamily& sample, const std::string& pattern, const std::string& mode) {
            CatalogEntry entry = parse_pattern_shorthand(pattern);
            EstimatorMode m2 = EstimatorMode::automatic;
            if (mode == "exact") m2 = EstimatorMode::exact;
            else if (mode == "dilworth") m2 = EstimatorMode::dilworth;
            else if (mode == "gk") m2 = EstimatorMode::greene_kleitman;
            else if (mode == "heuristic") m2 = EstimatorMode::heuristic;
            PfreeEstimate est = largest_pfree_in_sample(sample, entry, m2);
            return py::make_tuple(est.lower.str(), est.upper.str(), est.exact, est.method);
        },
        py::arg("sample"), py::arg("pattern"), py::arg("mode") = "auto");
    m.def("diamond_lower_bound_run", [](int n, double p, std::uint64_t seed) {
        DiamondRunReport r = diamond_lower_bound_run(n, p, seed);
        py::dict d;
        d["sample_size"] = r.sample_size;
        d["final_size"] = r.final_size;
        d["certified_free"] = r.certified_free;
        d["copies_found"] = r.copies_found;
        d["three_pm"] = r.three_pm;
        return d;
    });
    m.def("union_bound_pi", [](long long n, int h, int psize, const std::string& delta,
                               const std::string& eps, const std::string& p) {
        PiReport r = union_bound_pi(n, h, psize, parse_decimal(delta), parse_decimal(eps),
                                    parse_decimal(p));
        py::dict d;
        d["log_pi"] = r.log_pi;
        d["vacuous"] = r.vacuous;
        d["factor_ok"] = std::vector<bool>{r.factor_ok[0], r.factor_ok[1], r.factor_ok[2]};
        d["exponent_exact"] = r.exponent_exact;
        return d;
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = subposets::cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
