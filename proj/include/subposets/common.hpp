#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <functional>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace subposets {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Precondition / domain violations (CLI exit code 1).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Inputs beyond the documented desk-scale capacity (CLI exit code 2).
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// File / parse problems (CLI exit code 3).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

BigInt binomial(int n, int k);
BigInt factorial(int n);

/// Sum of binomial(n, j) for j = 0..k, the number of subsets of size at most k.
BigInt binomial_sum(const BigInt& n, const BigInt& k);

/// Parse a decimal string ("0.25", "3", "-1.5e2" is rejected) into an exact rational.
Rational parse_decimal(const std::string& text);

/// Exact ceiling of a nonnegative rational.
long long ceil_rational(const Rational& value);

// splitmix64; the pinned generator behind every randomized routine.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /// Uniform draw in [0,1) with 53 bits, IEEE-exact on every platform.
    double next_unit() { return double(next() >> 11) * 0x1.0p-53; }
};

/// Derived stream seed for trial `index` of a master seed; pinned, documented in the README.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master ^ (0xA5A5A5A55A5A5A5AULL + 0x9E3779B97F4A7C15ULL * (index + 1)));
    return g.next();
}

/// Run fn(i) for i in [0, count) on `jobs` threads; results land at index i,
/// so the outcome is independent of scheduling.
template <typename T>
std::vector<T> parallel_map(int jobs, std::size_t count, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(count);
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::thread> pool;
    std::size_t stride = std::max<std::size_t>(1, (count + jobs - 1) / jobs);
    for (int w = 0; w < jobs; ++w) {
        std::size_t lo = w * stride, hi = std::min(count, lo + stride);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
        });
    }
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace subposets
