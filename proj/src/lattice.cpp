#include "mukai/lattice.hpp"

#include <sstream>

namespace mukai {

std::string DivisorClass::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) os << ",";
        os << coords[i];
    }
    os << ")";
    return os.str();
}

void SurfaceClass::validate() const {
    if (ns_rank != 1 && ns_rank != 2) throw LatticeError("ns_rank must be 1 or 2");
    if (static_cast<int>(gram.size()) != ns_rank) throw LatticeError("gram size mismatch");
    for (const auto& row : gram)
        if (static_cast<int>(row.size()) != ns_rank) throw LatticeError("gram row size mismatch");
    for (int i = 0; i < ns_rank; ++i) {
        if (!divides(2, gram[i][i])) throw LatticeError("gram diagonal must be even");
        for (int j = 0; j < ns_rank; ++j)
            if (gram[i][j] != gram[j][i]) throw LatticeError("gram must be symmetric");
    }
    if (ns_rank == 1) {
        if (gram[0][0] <= 0) throw LatticeError("rank-1 gram must be positive definite");
    } else {
        Int det = gram[0][0] * gram[1][1] - gram[0][1] * gram[0][1];
        if (det >= 0) throw LatticeError("rank-2 gram must have signature (1,1)");
    }
    if (ample_ref.rank() != ns_rank) throw LatticeError("ample_ref rank mismatch");
    if (self_intersect(*this, ample_ref) <= 0) throw LatticeError("ample_ref must have positive square");
    for (const auto& e : effective_gens) {
        if (e.rank() != ns_rank) throw LatticeError("effective generator rank mismatch");
        if (!e.is_zero() && intersect(*this, e, ample_ref) <= 0)
            throw LatticeError("effective generator must pair positively with ample_ref");
    }
}

std::string SurfaceClass::describe() const {
    if (!name.empty()) return name;
    std::ostringstream os;
    os << kind_name(kind) << " rank " << ns_rank << " gram [";
    for (int i = 0; i < ns_rank; ++i)
        for (int j = 0; j < ns_rank; ++j) os << gram[i][j] << (i == ns_rank - 1 && j == ns_rank - 1 ? "" : " ");
    os << "]";
    return os.str();
}

SurfaceClass preset_rank1(SurfaceKind kind, const Int& l) {
    if (l <= 0) throw LatticeError("rank1 preset needs l >= 1");
    SurfaceClass s;
    s.kind = kind;
    s.ns_rank = 1;
    s.gram = {{2 * l}};
    s.basis_labels = {"h"};
    s.ample_ref = DivisorClass({Int(1)});
    s.effective_gens = {DivisorClass({Int(1)})};
    s.name = std::string("rank1-") + (kind == SurfaceKind::K3 ? "k3" : "ab") + "-l" + l.get_str();
    s.validate();
    return s;
}

SurfaceClass preset_elliptic_k3() {
    SurfaceClass s;
    s.kind = SurfaceKind::K3;
    s.ns_rank = 2;
    s.gram = {{Int(-2), Int(1)}, {Int(1), Int(0)}};
    s.basis_labels = {"sigma", "f"};
    s.ample_ref = DivisorClass({Int(1), Int(3)});  // sigma + 3f
    s.effective_gens = {DivisorClass({Int(1), Int(0)}), DivisorClass({Int(0), Int(1)})};
    s.name = "elliptic-k3";
    s.validate();
    return s;
}

SurfaceClass preset_elliptic_abelian() {
    SurfaceClass s;
    s.kind = SurfaceKind::Abelian;
    s.ns_rank = 2;
    // sigma^2 = 0 for a section of an elliptic abelian surface.
    s.gram = {{Int(0), Int(1)}, {Int(1), Int(0)}};
    s.basis_labels = {"sigma", "f"};
    s.ample_ref = DivisorClass({Int(1), Int(1)});
    s.effective_gens = {DivisorClass({Int(1), Int(0)}), DivisorClass({Int(0), Int(1)})};
    s.name = "elliptic-ab";
    s.validate();
    return s;
}

std::optional<SurfaceClass> preset_by_name(const std::string& name) {
    if (name == "elliptic-k3") return preset_elliptic_k3();
    if (name == "elliptic-ab") return preset_elliptic_abelian();
    for (const char* prefix : {"rank1-k3-l", "rank1-ab-l"}) {
        std::string p(prefix);
        if (name.rfind(p, 0) == 0) {
            std::string num = name.substr(p.size());
            if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
            SurfaceKind kind = (p == "rank1-k3-l") ? SurfaceKind::K3 : SurfaceKind::Abelian;
            return preset_rank1(kind, Int(num));
        }
    }
    return std::nullopt;
}

Int intersect(const SurfaceClass& s, const DivisorClass& d, const DivisorClass& e) {
    if (d.rank() != s.ns_rank || e.rank() != s.ns_rank)
        throw LatticeError("intersect: coordinate length does not match ns_rank");
    Int acc = 0;
    for (int i = 0; i < s.ns_rank; ++i)
        for (int j = 0; j < s.ns_rank; ++j) acc += d.coords[i] * s.gram[i][j] * e.coords[j];
    return acc;
}

bool is_primitive(const DivisorClass& d) { return d.content() == 1; }

bool is_ample(const SurfaceClass& s, const DivisorClass& d) {
    if (d.rank() != s.ns_rank) throw LatticeError("is_ample: rank mismatch");
    if (self_intersect(s, d) <= 0) return false;
    if (intersect(s, d, s.ample_ref) <= 0) return false;
    for (const auto& e : s.effective_gens) {
        if (e.is_zero()) continue;
        if (intersect(s, d, e) <= 0) return false;
    }
    return true;
}

namespace {

// Solve c1*g1 + c2*g2 = d over the rationals and test for a nonnegative
// integer solution. Generators of the presets are linearly independent; the
// degenerate cases are handled for completeness.
bool cone_member(const SurfaceClass& s, const DivisorClass& d) {
    const auto& gens = s.effective_gens;
    if (d.is_zero()) return true;
    if (gens.empty()) return false;
    if (s.ns_rank == 1) {
        for (const auto& g : gens) {
            if (g.is_zero()) continue;
            if (divides(g.coords[0], d.coords[0])) {
                Int c = d.coords[0] / g.coords[0];
                if (c >= 0) return true;
            }
        }
        return false;
    }
    // rank 2
    if (gens.size() >= 2) {
        for (size_t i = 0; i < gens.size(); ++i) {
            for (size_t j = i + 1; j < gens.size(); ++j) {
                const auto& g1 = gens[i];
                const auto& g2 = gens[j];
                Int det = g1.coords[0] * g2.coords[1] - g1.coords[1] * g2.coords[0];
                if (det == 0) continue;
                Int n1 = d.coords[0] * g2.coords[1] - d.coords[1] * g2.coords[0];
                Int n2 = g1.coords[0] * d.coords[1] - g1.coords[1] * d.coords[0];
                if (!divides(det, n1) || !divides(det, n2)) continue;
                Int c1 = n1 / det, c2 = n2 / det;
                if (c1 >= 0 && c2 >= 0) return true;
            }
        }
    }
    // single usable generator (or all pairs degenerate)
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        Int num, den;
        if (g.coords[0] != 0) {
            den = g.coords[0];
            num = d.coords[0];
        } else {
            den = g.coords[1];
            num = d.coords[1];
        }
        if (!divides(den, num)) continue;
        Int c = num / den;
        if (c >= 0 && c * g.coords[0] == d.coords[0] && c * g.coords[1] == d.coords[1]) return true;
    }
    return false;
}

}  // namespace

bool is_effective_or_zero(const SurfaceClass& s, const DivisorClass& d) {
    if (d.rank() != s.ns_rank) throw LatticeError("is_effective_or_zero: rank mismatch");
    return cone_member(s, d);
}

DivisorClass normalize_direction(const DivisorClass& d) {
    Int c = d.content();
    if (c == 0) return d;
    DivisorClass r = d;
    for (auto& x : r.coords) x /= c;
    for (const auto& x : r.coords) {
        if (x == 0) continue;
        if (x < 0) return -r;
        break;
    }
    return r;
}

DivisorClass orthogonal_generator(const SurfaceClass& s, const DivisorClass& h) {
    if (s.ns_rank != 2) throw LatticeError("orthogonal_generator needs a rank-2 lattice");
    if (h.rank() != 2) throw LatticeError("orthogonal_generator: rank mismatch");
    if (h.is_zero()) throw LatticeError("orthogonal_generator: H must be nonzero");
    // D.H = x*(e1.H) + y*(e2.H); the kernel of this integral form is
    // generated by (e2.H, -e1.H)/gcd.
    Int a = intersect(s, DivisorClass({Int(1), Int(0)}), h);
    Int b = intersect(s, DivisorClass({Int(0), Int(1)}), h);
    DivisorClass d0({b, -a});
    d0 = normalize_direction(d0);
    if (d0.is_zero()) throw LatticeError("orthogonal_generator: degenerate pairing with H");
    return d0;
}

}  // namespace mukai
