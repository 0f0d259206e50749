#include "pzf/rational.hpp"

#include <cstdio>
#include <stdexcept>
#include <vector>

namespace pzf {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational pow2_rational(unsigned k) {
    BigInt n = 1;
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), k);
    return Rational(n);
}

std::string fraction_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string decimal_string(const Rational& q, int sig_digits) {
    // 4 bits per digit plus slack keeps the mpf conversion exact enough.
    mpf_class f(q, static_cast<unsigned>(sig_digits) * 4 + 64);
    std::vector<char> buf(static_cast<size_t>(sig_digits) + 64);
    gmp_snprintf(buf.data(), buf.size(), "%.*Fg", sig_digits, f.get_mpf_t());
    return std::string(buf.data());
}

Rational parse_fraction(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("rational: cannot parse '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("rational: zero denominator");
    q.canonicalize();
    return q;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace pzf
