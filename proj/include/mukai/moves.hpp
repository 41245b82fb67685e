#pragma once

#include <variant>
#include <vector>

#include "mukai/jsonval.hpp"
#include "mukai/mukai.hpp"
#include "mukai/walls.hpp"

namespace mukai {

// Raw cohomological action of tensoring by a line bundle with first Chern
// class c1L: (v0, v1 + v0*c1L, v2 + v1.c1L + v0*c1L^2/2).
MukaiVector tensor(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& c1L);

enum class FMVariant { K3, Abelian, Rank0 };
std::string fm_variant_name(FMVariant v);

// Cohomological action of the relevant transform: (v2, -v1, v0), with the
// dual lattice of an Abelian surface identified with an isometric copy.
MukaiVector fm_dual(const SurfaceClass& s, const MukaiVector& v, FMVariant variant);

// Negates vectors of negative rank; flips (0,-xi,a) with anti-effective
// first component to (0,xi,a). Square-preserving.
MukaiVector canonicalize_sign(const SurfaceClass& s, const MukaiVector& v);

struct TensorLineBundle {
    DivisorClass c1;
};
struct TensorPowerOfH {
    Int d;
};
struct FMDual {
    FMVariant variant;
};
struct ChangePolarization {
    DivisorClass Hnew;
};
struct RetargetLattice {
    SurfaceClass target;
    MukaiVector v_new;
    DivisorClass H_new;
};
struct CanonicalizeSign {};

using Move = std::variant<TensorLineBundle, TensorPowerOfH, FMDual, ChangePolarization, RetargetLattice,
                          CanonicalizeSign>;

std::string move_name(const Move& m);

struct Check {
    std::string name;
    json witness;
    bool ok;
};

struct StepCertificate {
    Move move;
    Triple input;
    Triple output;
    std::vector<Check> checks;
    std::vector<std::string> assumptions;

    bool accepted() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
    const Check* first_failure() const {
        for (const auto& c : checks)
            if (!c.ok) return &c;
        return nullptr;
    }
};

struct MoveError : std::runtime_error {
    std::string check;
    MoveError(std::string check_name, const std::string& msg)
        : std::runtime_error(msg), check(std::move(check_name)) {}
};

// Evaluates every precondition of the move on the given triple and returns
// the certificate; never throws on a failed check.
StepCertificate check_move(const Triple& t, const Move& mv);

// check_move that insists on success: throws MoveError naming the first
// failed check.
std::pair<Triple, StepCertificate> apply_move(const Triple& t, const Move& mv);

// Certified micro-path connecting two triples with equal invariants through
// the elliptic preset of the common kind: twist up to the suitable range,
// retarget to the elliptic lattice, change polarization, tensor by a
// multiple of the fiber class, retarget to the target lattice, untwist.
// Empty when t1 == t2.
std::vector<StepCertificate> connect_via_elliptic(const Triple& t1, const Triple& t2);

// Gate of the rank-positive transform on a rank-1 lattice: n > 32 r^3 k
// for the full vector (r, n*h, a) with k = (v,v)/2.
bool fm_threshold_ok(const SurfaceClass& s, const MukaiVector& v);
Int fm_threshold_bound(const SurfaceClass& s, const MukaiVector& v);

}  // namespace mukai
