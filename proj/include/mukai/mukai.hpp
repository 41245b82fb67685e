#pragma once

#include <optional>
#include <string>
#include <utility>

#include "mukai/lattice.hpp"

namespace mukai {

struct MukaiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raw element (v0, v1, v2) of the even cohomology lattice. Any integer v0 is
// representable (intermediate move outputs); is_mukai_vector gates the
// vectors the theory admits.
struct MukaiVector {
    Int v0;
    DivisorClass v1;
    Int v2;

    MukaiVector() : v0(0), v2(0) {}
    MukaiVector(Int r, DivisorClass c1, Int a) : v0(std::move(r)), v1(std::move(c1)), v2(std::move(a)) {}

    bool operator==(const MukaiVector& o) const { return v0 == o.v0 && v1 == o.v1 && v2 == o.v2; }
    bool operator!=(const MukaiVector& o) const { return !(*this == o); }
    bool is_zero() const { return v0 == 0 && v2 == 0 && v1.is_zero(); }

    // gcd of all components; 0 only for the zero vector.
    Int content() const { return gcd(gcd(v0, v2), v1.content()); }

    friend MukaiVector operator*(const Int& n, const MukaiVector& v) {
        return MukaiVector(n * v.v0, n * v.v1, n * v.v2);
    }
    MukaiVector operator-() const { return MukaiVector(-v0, -v1, -v2); }

    std::string str() const;
};

// (v,w) = v1.w1 - v0*w2 - v2*w0
Int pairing(const SurfaceClass& s, const MukaiVector& v, const MukaiVector& w);
inline Int square(const SurfaceClass& s, const MukaiVector& v) { return pairing(s, v, v); }

// v0 > 0, or v0 = 0 with v1 effective nonzero, or v0 = v1 = 0 with v2 > 0.
bool is_mukai_vector(const SurfaceClass& s, const MukaiVector& v);

// v = m*w with w primitive; content decomposition.
std::pair<Int, MukaiVector> primitive_decomposition(const MukaiVector& v);

// (rk, c1, ch2 + eps*rk)
MukaiVector vector_of_sheaf(const SurfaceClass& s, const Int& rank, const DivisorClass& c1, const Int& ch2);

// |v| = (v0^2/4)(v,v) + v0^(2*eps+2)/2, defined for v0 > 0.
Rat discriminant_bound(const SurfaceClass& s, const MukaiVector& v);

// (2m^2k+2, 2m^2k-2); the second component only for Abelian surfaces.
std::pair<Int, std::optional<Int>> moduli_dims(const Int& m, const Int& k, SurfaceKind kind);

enum class TripleDefect {
    NotPrimitivePolarization,
    NotAmple,
    NotGeneric,
    NonPositiveSquare,
    RankZeroSecondComponentZero,
    ZeroVector,
    NotMukaiVector,
    SurfaceMismatch,
};
std::string defect_name(TripleDefect d);

struct TripleError : MukaiError {
    TripleDefect defect;
    TripleError(TripleDefect d, const std::string& msg) : MukaiError(msg), defect(d) {}
};

// A validated (m,k)-triple: H primitive ample and v-generic, v = m*w with w
// primitive of square 2k, and w2 != 0 when w has rank 0 and ns_rank > 1.
struct Triple {
    SurfaceClass surface;
    MukaiVector v;
    DivisorClass H;
    Int m;
    Int k;

    bool operator==(const Triple& o) const {
        return surface == o.surface && v == o.v && H == o.H;
    }
    bool operator!=(const Triple& o) const { return !(*this == o); }
    std::string str() const;
};

// nullopt when (surface, v, H) is a valid triple, otherwise the first
// violated condition. Implemented with the walls module's genericity test.
std::optional<TripleDefect> validate_triple(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h);

// Throws TripleError on any violated condition.
Triple make_triple(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h);

}  // namespace mukai
