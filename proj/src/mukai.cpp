#include "mukai/mukai.hpp"

#include <sstream>

namespace mukai {

std::string MukaiVector::str() const {
    std::ostringstream os;
    os << "(" << v0 << "," << v1.str() << "," << v2 << ")";
    return os.str();
}

std::string Triple::str() const {
    std::ostringstream os;
    os << "[" << surface.describe() << "; v=" << v.str() << "; H=" << H.str() << "; (m,k)=(" << m << "," << k
       << ")]";
    return os.str();
}

Int pairing(const SurfaceClass& s, const MukaiVector& v, const MukaiVector& w) {
    return intersect(s, v.v1, w.v1) - v.v0 * w.v2 - v.v2 * w.v0;
}

bool is_mukai_vector(const SurfaceClass& s, const MukaiVector& v) {
    if (v.v0 > 0) return true;
    if (v.v0 < 0) return false;
    if (!v.v1.is_zero()) return is_effective_nonzero(s, v.v1);
    return v.v2 > 0;
}

std::pair<Int, MukaiVector> primitive_decomposition(const MukaiVector& v) {
    if (v.is_zero()) throw MukaiError("primitive_decomposition of the zero vector");
    Int m = v.content();
    MukaiVector w(v.v0 / m, v.v1, v.v2 / m);
    for (auto& c : w.v1.coords) c /= m;
    return {m, w};
}

MukaiVector vector_of_sheaf(const SurfaceClass& s, const Int& rank, const DivisorClass& c1, const Int& ch2) {
    if (rank < 0) throw MukaiError("vector_of_sheaf needs rank >= 0");
    return MukaiVector(rank, c1, ch2 + Int(s.epsilon()) * rank);
}

Rat discriminant_bound(const SurfaceClass& s, const MukaiVector& v) {
    if (v.v0 <= 0) throw MukaiError("|v| is defined only for positive rank");
    Int sq = square(s, v);
    Rat first = make_rat(v.v0 * v.v0 * sq, 4);
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), v.v0.get_mpz_t(), 2 * s.epsilon() + 2);
    return first + make_rat(pw, 2);
}

std::pair<Int, std::optional<Int>> moduli_dims(const Int& m, const Int& k, SurfaceKind kind) {
    if (m < 1 || k < 1) throw MukaiError("moduli_dims needs m,k >= 1");
    Int dim_m = 2 * m * m * k + 2;
    if (kind == SurfaceKind::Abelian) return {dim_m, Int(2 * m * m * k - 2)};
    return {dim_m, std::nullopt};
}

std::string defect_name(TripleDefect d) {
    switch (d) {
        case TripleDefect::NotPrimitivePolarization: return "polarization not primitive";
        case TripleDefect::NotAmple: return "polarization not ample";
        case TripleDefect::NotGeneric: return "polarization not generic";
        case TripleDefect::NonPositiveSquare: return "primitive square not positive";
        case TripleDefect::RankZeroSecondComponentZero: return "rank-0 vector with w2 = 0 on a rank-2 lattice";
        case TripleDefect::ZeroVector: return "zero vector";
        case TripleDefect::NotMukaiVector: return "not a Mukai vector";
        case TripleDefect::SurfaceMismatch: return "coordinate length does not match the surface";
    }
    return "unknown";
}

}  // namespace mukai
