#include "subposets/common.hpp"

namespace subposets {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt binomial_sum(const BigInt& n, const BigInt& k) {
    if (k < 0) return 0;
    BigInt total = 0, term = 1;  // term = binomial(n, j)
    for (BigInt j = 0; j <= k; ++j) {
        total += term;
        term *= (n - j);
        term /= (j + 1);
        if (term == 0) break;
    }
    return total;
}

Rational parse_decimal(const std::string& text) {
    std::string s = text;
    bool neg = false;
    std::size_t pos = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';
    BigInt num = 0, den = 1;
    bool any = false, frac = false;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c == '.') {
            if (frac) throw IoError("bad decimal: " + text);
            frac = true;
        } else if (c >= '0' && c <= '9') {
            num = num * 10 + (c - '0');
            if (frac) den *= 10;
            any = true;
        } else {
            throw IoError("bad decimal: " + text);
        }
    }
    if (!any) throw IoError("bad decimal: " + text);
    Rational r(num, den);
    return neg ? -r : r;
}

long long ceil_rational(const Rational& value) {
    BigInt n = boost::multiprecision::numerator(value);
    BigInt d = boost::multiprecision::denominator(value);
    BigInt q = n / d;
    if (q * d != n && n > 0) q += 1;
    return q.convert_to<long long>();
}

}  // namespace subposets
