#include "mukai/mukai.hpp"
#include "mukai/walls.hpp"

namespace mukai {

std::optional<TripleDefect> validate_triple(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h) {
    if (v.v1.rank() != s.ns_rank || h.rank() != s.ns_rank) return TripleDefect::SurfaceMismatch;
    if (v.is_zero()) return TripleDefect::ZeroVector;
    if (!is_mukai_vector(s, v)) return TripleDefect::NotMukaiVector;
    if (!is_primitive(h)) return TripleDefect::NotPrimitivePolarization;
    if (!is_ample(s, h)) return TripleDefect::NotAmple;
    auto [m, w] = primitive_decomposition(v);
    Int sq = square(s, w);
    if (sq <= 0 || !divides(2, sq)) return TripleDefect::NonPositiveSquare;
    if (w.v0 == 0 && s.ns_rank > 1 && w.v2 == 0) return TripleDefect::RankZeroSecondComponentZero;
    if (!is_generic(s, v, h).generic) return TripleDefect::NotGeneric;
    return std::nullopt;
}

Triple make_triple(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h) {
    if (auto defect = validate_triple(s, v, h))
        throw TripleError(*defect, "invalid triple: " + defect_name(*defect));
    auto [m, w] = primitive_decomposition(v);
    Triple t;
    t.surface = s;
    t.v = v;
    t.H = h;
    t.m = m;
    t.k = square(s, w) / 2;
    return t;
}

}  // namespace mukai
