#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mukai/numeric.hpp"

namespace mukai {

struct LatticeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SurfaceKind { K3, Abelian };

inline int epsilon_of(SurfaceKind k) { return k == SurfaceKind::K3 ? 1 : 0; }
inline std::string kind_name(SurfaceKind k) { return k == SurfaceKind::K3 ? "K3" : "Abelian"; }

// A divisor class in coordinates of the surface's NS basis.
struct DivisorClass {
    std::vector<Int> coords;

    DivisorClass() = default;
    explicit DivisorClass(std::vector<Int> c) : coords(std::move(c)) {}
    static DivisorClass zero(int rank) { return DivisorClass(std::vector<Int>(rank, Int(0))); }

    int rank() const { return static_cast<int>(coords.size()); }
    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }
    bool operator==(const DivisorClass& o) const { return coords == o.coords; }
    bool operator!=(const DivisorClass& o) const { return !(*this == o); }

    DivisorClass operator-() const {
        DivisorClass r = *this;
        for (auto& c : r.coords) c = -c;
        return r;
    }
    DivisorClass operator+(const DivisorClass& o) const {
        if (coords.size() != o.coords.size()) throw LatticeError("divisor rank mismatch");
        DivisorClass r = *this;
        for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
        return r;
    }
    DivisorClass operator-(const DivisorClass& o) const { return *this + (-o); }
    friend DivisorClass operator*(const Int& n, const DivisorClass& d) {
        DivisorClass r = d;
        for (auto& c : r.coords) c *= n;
        return r;
    }

    // gcd of coordinates; 0 for the zero class.
    Int content() const {
        Int g = 0;
        for (const auto& c : coords) g = gcd(g, c);
        return g;
    }
    std::string str() const;
};

// A K3 or Abelian surface abstracted to its NS lattice (rank 1 or 2), one
// known ample class and the extremal generators of the effective cone.
struct SurfaceClass {
    SurfaceKind kind = SurfaceKind::K3;
    int ns_rank = 1;
    std::vector<std::vector<Int>> gram;  // symmetric, even diagonal, signature (1, ns_rank-1)
    std::vector<std::string> basis_labels;
    DivisorClass ample_ref;
    std::vector<DivisorClass> effective_gens;
    std::string name;  // preset name or empty for ad-hoc lattices

    int epsilon() const { return epsilon_of(kind); }
    bool operator==(const SurfaceClass& o) const {
        return kind == o.kind && ns_rank == o.ns_rank && gram == o.gram;
    }
    bool operator!=(const SurfaceClass& o) const { return !(*this == o); }

    void validate() const;
    std::string describe() const;
};

// Presets used throughout: rank-1 lattices [2l] and the two elliptic
// rank-2 lattices with basis (sigma, f).
SurfaceClass preset_rank1(SurfaceKind kind, const Int& l);
SurfaceClass preset_elliptic_k3();
SurfaceClass preset_elliptic_abelian();
// Resolves "rank1-k3-l<N>", "rank1-ab-l<N>", "elliptic-k3", "elliptic-ab".
std::optional<SurfaceClass> preset_by_name(const std::string& name);

Int intersect(const SurfaceClass& s, const DivisorClass& d, const DivisorClass& e);
inline Int self_intersect(const SurfaceClass& s, const DivisorClass& d) { return intersect(s, d, d); }

bool is_primitive(const DivisorClass& d);

// Membership in the cone cut out by ample_ref and the effective generators.
// Exact for the presets, whose effective cones are finitely generated.
bool is_ample(const SurfaceClass& s, const DivisorClass& d);

// D lies in the monoid of nonnegative integer combinations of effective_gens.
bool is_effective_or_zero(const SurfaceClass& s, const DivisorClass& d);
inline bool is_effective_nonzero(const SurfaceClass& s, const DivisorClass& d) {
    return !d.is_zero() && is_effective_or_zero(s, d);
}

// Primitive generator of H^perp in a rank-2 lattice, first nonzero
// coordinate positive. Requires H != 0; the result has negative square
// whenever H^2 > 0.
DivisorClass orthogonal_generator(const SurfaceClass& s, const DivisorClass& h);

// Divide by the content, then flip so the first nonzero coordinate is
// positive. Zero class yields zero.
DivisorClass normalize_direction(const DivisorClass& d);

}  // namespace mukai
