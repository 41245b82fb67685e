#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "mukai/mukai.hpp"

namespace mukai {

struct WallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A wall D^perp in the ample cone. For rank-positive vectors D is the
// sign-normalized primitive defining divisor; for rank-0 vectors D is the
// divisor u2*v1 - v2*u1 attached to the producing pair.
struct Wall {
    struct RankPositiveBound {
        bool operator==(const RankPositiveBound&) const { return true; }
    };
    struct RankZeroPair {
        DivisorClass u1;
        Int u2;
        bool operator==(const RankZeroPair& o) const { return u1 == o.u1 && u2 == o.u2; }
    };

    DivisorClass D;
    Int dsq;
    std::variant<RankPositiveBound, RankZeroPair> provenance;

    bool operator==(const Wall& o) const { return D == o.D && dsq == o.dsq && provenance == o.provenance; }
};

struct Genericity {
    bool generic = false;
    std::optional<Wall> witness;  // a violating wall when not generic
};

// H.D != 0 for every D in W_v. Rank-1 lattices are generic for every v; on
// rank-2 lattices the rank-positive case reduces to one inequality against
// the primitive generator of H^perp and the rank-0 case to a finite pair
// enumeration. Requires H ample, v a Mukai vector, and (for ns_rank > 1)
// v2 != 0 whenever v0 = 0.
Genericity is_generic(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h);

// All walls meeting the segment [H1,H2], including walls through an
// endpoint; deduplicated by hyperplane and sorted lexicographically on the
// normalized defining divisor. Rank-2 only.
std::vector<Wall> walls_between(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h1,
                                const DivisorClass& h2);

// No wall meets [H1,H2] and both endpoints are generic. True on rank-1
// lattices for any two polarizations.
bool same_chamber(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h1, const DivisorClass& h2);

// One-sided criterion for membership in the v-chamber whose closure
// contains the fiber class: t >= |v|+1 (K3) resp. t >= |v| (Abelian)
// certifies suitability, anything below is unknown.
enum class Suitability { Suitable, Unknown };
Suitability is_suitable(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h);

// Exact maximum of d*(C^2+2)/(2*C.H) over effective curve classes C with
// 0 < C.H < d; nullopt when the set is empty.
std::optional<Rat> threshold_Md(const SurfaceClass& s, const DivisorClass& h, const Int& d);

// Integer points u1 with u1 and xi-u1 both effective-or-zero, in
// lexicographic coordinate order. Used by the rank-0 wall solver.
std::vector<DivisorClass> subpair_candidates(const SurfaceClass& s, const DivisorClass& xi);

}  // namespace mukai
