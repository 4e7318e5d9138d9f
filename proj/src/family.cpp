#include "subposets/family.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace subposets {

SetFamily::SetFamily(GroundSet ground, std::vector<SetWord> members)
    : ground_(ground), members_(std::move(members)) {
    SetWord full = ground_.full_mask();
    for (SetWord s : members_)
        if ((s & ~full) != 0) throw DomainError("family member is not a subset of the ground set");
    std::sort(members_.begin(), members_.end(), canonical_less);
    auto dup = std::adjacent_find(members_.begin(), members_.end());
    if (dup != members_.end()) throw DomainError("duplicate family member: " + format_member(*dup));
}

bool SetFamily::contains(SetWord s) const { return find(s) >= 0; }

long SetFamily::find(SetWord s) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), s, canonical_less);
    if (it != members_.end() && *it == s) return long(it - members_.begin());
    return -1;
}

SetFamily SetFamily::without(SetWord s) const {
    std::vector<SetWord> rest;
    rest.reserve(members_.size());
    for (SetWord m : members_)
        if (m != s) rest.push_back(m);
    return SetFamily(ground_, std::move(rest));
}

SetFamily SetFamily::prefix(std::size_t count) const {
    std::vector<SetWord> head(members_.begin(), members_.begin() + std::min(count, members_.size()));
    return SetFamily(ground_, std::move(head));
}

SetFamily SetFamily::complement_family() const {
    SetWord full = ground_.full_mask();
    std::vector<SetWord> out;
    out.reserve(members_.size());
    for (SetWord m : members_) out.push_back(full & ~m);
    return SetFamily(ground_, std::move(out));
}

bool SetFamily::size_in_middle_band(int n, int k) {
    // k >= n/2 - n^(2/3)  <=>  (n-2k)^3 <= 8 n^2 when n-2k > 0
    long long lhs = n - 2LL * k;
    if (lhs > 0 && lhs * lhs * lhs > 8LL * n * n) return false;
    long long rhs = 2LL * k - n;
    if (rhs > 0 && rhs * rhs * rhs > 8LL * n * n) return false;
    return true;
}

SetFamily SetFamily::middle_band() const {
    std::vector<SetWord> kept;
    kept.reserve(members_.size());
    for (SetWord m : members_)
        if (size_in_middle_band(ground_.n, set_size(m))) kept.push_back(m);
    return SetFamily(ground_, std::move(kept));
}

SetFamily full_lattice(int n) {
    if (n < 0 || n > kMaxEnumerationN) throw CapacityError("full lattice limited to n <= 30");
    if (n > 26) throw CapacityError("full lattice materialization limited to n <= 26 by memory");
    std::vector<SetWord> all;
    all.reserve(std::size_t(1) << n);
    for (SetWord s = 0; s < (SetWord(1) << n); ++s) all.push_back(s);
    return SetFamily(GroundSet(n), std::move(all));
}

SetFamily lattice_layers(int n, int lo, int hi) {
    if (n < 0 || n > kMaxEnumerationN) throw CapacityError("layer enumeration limited to n <= 30");
    lo = std::max(lo, 0);
    hi = std::min(hi, n);
    std::vector<SetWord> out;
    for (int k = lo; k <= hi; ++k) {
        if (k == 0) {
            out.push_back(0);
            continue;
        }
        // Gosper's hack over k-subsets of [n].
        SetWord s = (SetWord(1) << k) - 1;
        SetWord limit = SetWord(1) << n;
        while (s < limit) {
            out.push_back(s);
            SetWord c = s & -s;
            SetWord r = s + c;
            if (r >= limit) break;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    return SetFamily(GroundSet(n), std::move(out));
}

FamilyRelations::FamilyRelations(const SetFamily& family) {
    count = family.size();
    words = (count + 63) / 64;
    sub.assign(count * words, 0);
    sup.assign(count * words, 0);
    const auto& m = family.members();
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            // canonical order sorts by size first, so only j < i can be below i
            if (subset_of(m[j], m[i]) && m[j] != m[i]) {
                sub[i * words + j / 64] |= 1ULL << (j % 64);
                sup[j * words + i / 64] |= 1ULL << (i % 64);
            }
        }
    }
}

std::size_t FamilyRelations::sub_count(std::size_t i) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(sub[i * words + w]);
    return c;
}

std::size_t FamilyRelations::sup_count(std::size_t i) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(sup[i * words + w]);
    return c;
}

namespace {

SetWord parse_member_line(const std::string& line, int n, int lineno) {
    if (line == "{}") return 0;
    if (line.rfind("0x", 0) == 0 || line.rfind("0X", 0) == 0) {
        SetWord v = 0;
        std::size_t idx = 0;
        try {
            v = std::stoull(line.substr(2), &idx, 16);
        } catch (const std::exception&) {
            throw IoError("line " + std::to_string(lineno) + ": bad hex member");
        }
        if (idx != line.size() - 2) throw IoError("line " + std::to_string(lineno) + ": bad hex member");
        return v;
    }
    SetWord mask = 0;
    int prev = 0;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int e;
        try {
            std::size_t idx = 0;
            e = std::stoi(tok, &idx);
            if (idx != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw IoError("line " + std::to_string(lineno) + ": bad element '" + tok + "'");
        }
        if (e < 1 || e > n) throw IoError("line " + std::to_string(lineno) + ": element out of [1," + std::to_string(n) + "]");
        if (e <= prev) throw IoError("line " + std::to_string(lineno) + ": elements must be strictly increasing");
        prev = e;
        mask |= SetWord(1) << (e - 1);
    }
    if (mask == 0) throw IoError("line " + std::to_string(lineno) + ": empty member must be written as {}");
    return mask;
}

std::string strip(const std::string& raw) {
    std::string s = raw;
    if (auto h = s.find('#'); h != std::string::npos) s.erase(h);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
    std::size_t b = s.find_first_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b);
}

}  // namespace

SetFamily parse_family(std::istream& in) {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<SetWord> members;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = strip(line);
        if (s.empty()) continue;
        if (n < 0) {
            if (s.rfind("n=", 0) != 0) throw IoError("family file must start with n=<k>");
            try {
                n = std::stoi(s.substr(2));
            } catch (const std::exception&) {
                throw IoError("bad ground set size: " + s);
            }
            if (n < 0 || n > 62) throw IoError("ground set size out of range");
            continue;
        }
        members.push_back(parse_member_line(s, n, lineno));
    }
    if (n < 0) throw IoError("family file missing n=<k> header");
    try {
        return SetFamily(GroundSet(n), std::move(members));
    } catch (const DomainError& e) {
        throw IoError(std::string("invalid family file: ") + e.what());
    }
}

SetFamily load_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open family file: " + path);
    return parse_family(in);
}

std::string format_member(SetWord s) {
    if (s == 0) return "{}";
    std::string out;
    for (int i = 0; i < 62; ++i) {
        if (s & (SetWord(1) << i)) {
            if (!out.empty()) out += ',';
            out += std::to_string(i + 1);
        }
    }
    return out;
}

void write_family(std::ostream& out, const SetFamily& family) {
    out << "n=" << family.n() << '\n';
    for (SetWord m : family.members()) out << format_member(m) << '\n';
}

}  // namespace subposets
