#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace mukai {

// Exact arithmetic everywhere: reduction paths routinely produce vector
// entries far beyond 64 bits, so all lattice integers are GMP integers and
// all bounds/thresholds are GMP rationals.
using Int = mpz_class;
using Rat = mpq_class;

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw NumericError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int rat_ceil(const Rat& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// Largest integer b >= 0 with b*b <= q; q must be >= 0.
inline Int sqrt_floor(const Rat& q) {
    if (q < 0) throw NumericError("sqrt_floor of negative value");
    Int n = rat_floor(q);
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    // mpz_sqrt floors; floor(sqrt(floor(q))) == floor(sqrt(q)) for q >= 0.
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& a) {
    if (d == 0) return a == 0;
    return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline bool fits_long(const Int& a) { return a.fits_slong_p(); }

inline std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace mukai
