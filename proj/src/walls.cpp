#include "mukai/walls.hpp"

#include <algorithm>
#include <map>

namespace mukai {

namespace {

void check_generic_preconditions(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h) {
    if (v.v1.rank() != s.ns_rank || h.rank() != s.ns_rank)
        throw WallError("genericity: coordinate length does not match the surface");
    if (!is_ample(s, h)) throw WallError("genericity: H is not ample");
    if (!is_mukai_vector(s, v)) throw WallError("genericity: v is not a Mukai vector");
    if (v.v0 == 0 && s.ns_rank > 1 && v.v2 == 0)
        throw WallError("genericity: (0,v1,0) with ns_rank > 1 is unsupported");
}

bool lex_less(const DivisorClass& a, const DivisorClass& b) { return a.coords < b.coords; }

}  // namespace

std::vector<DivisorClass> subpair_candidates(const SurfaceClass& s, const DivisorClass& xi) {
    if (!is_effective_or_zero(s, xi)) throw WallError("subpair_candidates: xi must be effective");
    // The polytope {u1 in C, xi-u1 in C} has vertices 0, xi, t1*g1, t2*g2
    // (xi = t1*g1 + t2*g2); its coordinate bounding box is scanned and each
    // point tested exactly.
    std::vector<std::vector<Rat>> verts;
    auto push_vert = [&](std::vector<Rat> p) { verts.push_back(std::move(p)); };
    push_vert(std::vector<Rat>(s.ns_rank, Rat(0)));
    {
        std::vector<Rat> p;
        for (const auto& c : xi.coords) p.emplace_back(c);
        push_vert(p);
    }
    if (s.ns_rank == 2 && s.effective_gens.size() >= 2) {
        const auto& g1 = s.effective_gens[0];
        const auto& g2 = s.effective_gens[1];
        Int det = g1.coords[0] * g2.coords[1] - g1.coords[1] * g2.coords[0];
        if (det != 0) {
            Rat t1 = make_rat(xi.coords[0] * g2.coords[1] - xi.coords[1] * g2.coords[0], det);
            Rat t2 = make_rat(g1.coords[0] * xi.coords[1] - g1.coords[1] * xi.coords[0], det);
            push_vert({t1 * Rat(g1.coords[0]), t1 * Rat(g1.coords[1])});
            push_vert({t2 * Rat(g2.coords[0]), t2 * Rat(g2.coords[1])});
        }
    }
    std::vector<Int> lo(s.ns_rank), hi(s.ns_rank);
    for (int i = 0; i < s.ns_rank; ++i) {
        lo[i] = rat_floor(verts[0][i]);
        hi[i] = rat_ceil(verts[0][i]);
        for (const auto& p : verts) {
            lo[i] = std::min(lo[i], rat_floor(p[i]));
            hi[i] = std::max(hi[i], rat_ceil(p[i]));
        }
    }
    std::vector<DivisorClass> out;
    if (s.ns_rank == 1) {
        for (Int x = lo[0]; x <= hi[0]; ++x) {
            DivisorClass u({x});
            if (is_effective_or_zero(s, u) && is_effective_or_zero(s, xi - u)) out.push_back(u);
        }
    } else {
        for (Int x = lo[0]; x <= hi[0]; ++x)
            for (Int y = lo[1]; y <= hi[1]; ++y) {
                DivisorClass u({x, y});
                if (is_effective_or_zero(s, u) && is_effective_or_zero(s, xi - u)) out.push_back(u);
            }
    }
    return out;
}

Genericity is_generic(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h) {
    check_generic_preconditions(s, v, h);
    if (s.ns_rank == 1) return {true, std::nullopt};

    if (v.v0 > 0) {
        Rat bound = discriminant_bound(s, v);
        if (bound <= 0) return {true, std::nullopt};
        DivisorClass d0 = orthogonal_generator(s, h);
        Int dsq = self_intersect(s, d0);
        if (Rat(dsq) >= -bound) {
            // b=1 is the minimal violating multiple whenever any exists.
            return {false, Wall{d0, dsq, Wall::RankPositiveBound{}}};
        }
        return {true, std::nullopt};
    }

    // v0 = 0, v2 != 0: a wall through H needs u2*(xi.H) = v2*(u1.H) with
    // integral u2 and nonzero associated divisor.
    Int c = intersect(s, v.v1, h);
    if (c <= 0) throw WallError("genericity: effective v1 must pair positively with ample H");
    for (const auto& u1 : subpair_candidates(s, v.v1)) {
        Int rhs = v.v2 * intersect(s, u1, h);
        if (!divides(c, rhs)) continue;
        Int u2 = rhs / c;
        DivisorClass d = u2 * v.v1 - v.v2 * u1;
        if (d.is_zero()) continue;
        return {false, Wall{d, self_intersect(s, d), Wall::RankZeroPair{u1, u2}}};
    }
    return {true, std::nullopt};
}

namespace {

// Walls through a single polarization, deduplicated by hyperplane.
std::vector<Wall> walls_through(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h) {
    std::vector<Wall> out;
    if (v.v0 > 0) {
        Rat bound = discriminant_bound(s, v);
        if (bound <= 0) return out;
        DivisorClass d0 = orthogonal_generator(s, h);
        Int dsq = self_intersect(s, d0);
        if (Rat(dsq) >= -bound) out.push_back(Wall{d0, dsq, Wall::RankPositiveBound{}});
        return out;
    }
    Int c = intersect(s, v.v1, h);
    std::map<std::vector<Int>, Wall> seen;
    for (const auto& u1 : subpair_candidates(s, v.v1)) {
        Int rhs = v.v2 * intersect(s, u1, h);
        if (!divides(c, rhs)) continue;
        Int u2 = rhs / c;
        DivisorClass d = u2 * v.v1 - v.v2 * u1;
        if (d.is_zero()) continue;
        DivisorClass p = normalize_direction(d);
        if (!seen.count(p.coords)) seen.emplace(p.coords, Wall{d, self_intersect(s, d), Wall::RankZeroPair{u1, u2}});
    }
    for (auto& [_, w] : seen) out.push_back(w);
    return out;
}

struct SegmentFrame {
    // Integer matrix M sending D to (D.H1, D.H2) and the data of the
    // quadratic form in (u,w)-coordinates.
    Int m00, m01, m10, m11, det;
    Rat alpha, beta, gamma;
};

SegmentFrame make_frame(const SurfaceClass& s, const DivisorClass& h1, const DivisorClass& h2) {
    SegmentFrame f;
    DivisorClass e1({Int(1), Int(0)}), e2({Int(0), Int(1)});
    f.m00 = intersect(s, e1, h1);
    f.m01 = intersect(s, e2, h1);
    f.m10 = intersect(s, e1, h2);
    f.m11 = intersect(s, e2, h2);
    f.det = f.m00 * f.m11 - f.m01 * f.m10;
    if (f.det == 0) throw WallError("internal: degenerate segment frame");
    // Columns of adj(M) are det * M^{-1}(1,0) and det * M^{-1}(0,1).
    DivisorClass a({f.m11, -f.m10}), b({-f.m01, f.m00});
    Int det2 = f.det * f.det;
    f.alpha = make_rat(self_intersect(s, a), det2);
    f.gamma = make_rat(self_intersect(s, b), det2);
    f.beta = make_rat(intersect(s, a, b), det2);
    if (f.alpha >= 0 || f.gamma >= 0 || f.beta <= 0)
        throw WallError("internal: segment frame signs violated");
    return f;
}

}  // namespace

std::vector<Wall> walls_between(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h1,
                                const DivisorClass& h2) {
    check_generic_preconditions(s, v, h1);
    check_generic_preconditions(s, v, h2);
    if (s.ns_rank != 2) throw WallError("walls_between needs a rank-2 lattice");

    std::map<std::vector<Int>, Wall> seen;
    auto meets_segment = [&](const DivisorClass& d) {
        return intersect(s, d, h1) * intersect(s, d, h2) <= 0;
    };

    if (normalize_direction(h1) == normalize_direction(h2)) {
        // Degenerate segment: exactly the walls through the common ray.
        std::vector<Wall> out;
        for (auto& w : walls_through(s, v, h1))
            if (intersect(s, w.D, h1) == 0) out.push_back(w);
        std::sort(out.begin(), out.end(),
                  [](const Wall& a, const Wall& b) { return lex_less(normalize_direction(a.D), normalize_direction(b.D)); });
        return out;
    }

    if (v.v0 > 0) {
        Rat bound = discriminant_bound(s, v);
        if (bound > 0) {
            SegmentFrame f = make_frame(s, h1, h2);
            // On the wedge (D.H1)(D.H2) <= 0 the form satisfies
            // q <= alpha*u^2 and q <= gamma*w^2, so q >= -|v| pins (u,w)
            // into an explicit box.
            Int umax = sqrt_floor(bound / -f.alpha);
            Int wmax = sqrt_floor(bound / -f.gamma);
            for (Int u = -umax; u <= umax; ++u) {
                for (Int w = -wmax; w <= wmax; ++w) {
                    if (u * w > 0) continue;
                    if (u == 0 && w == 0) continue;
                    Int x = f.m11 * u - f.m01 * w;
                    Int y = -f.m10 * u + f.m00 * w;
                    if (!divides(f.det, x) || !divides(f.det, y)) continue;
                    DivisorClass d({x / f.det, y / f.det});
                    if (d.is_zero()) continue;
                    DivisorClass p = normalize_direction(d);
                    Int psq = self_intersect(s, p);
                    if (psq >= 0 || Rat(psq) < -bound) continue;
                    if (!meets_segment(p)) continue;
                    if (!seen.count(p.coords)) seen.emplace(p.coords, Wall{p, psq, Wall::RankPositiveBound{}});
                }
            }
        }
    } else {
        Int c1 = intersect(s, v.v1, h1);
        Int c2 = intersect(s, v.v1, h2);
        for (const auto& u1 : subpair_candidates(s, v.v1)) {
            // D.Hi = u2*ci - v2*(u1.Hi) changes sign over an explicit
            // integer interval of u2 values.
            Int e1 = v.v2 * intersect(s, u1, h1);
            Int e2 = v.v2 * intersect(s, u1, h2);
            Rat r1 = make_rat(e1, c1), r2 = make_rat(e2, c2);
            Int lo = rat_ceil(std::min(r1, r2));
            Int hi = rat_floor(std::max(r1, r2));
            for (Int u2 = lo; u2 <= hi; ++u2) {
                DivisorClass d = u2 * v.v1 - v.v2 * u1;
                if (d.is_zero()) continue;
                if (!meets_segment(d)) continue;
                DivisorClass p = normalize_direction(d);
                if (!seen.count(p.coords))
                    seen.emplace(p.coords, Wall{d, self_intersect(s, d), Wall::RankZeroPair{u1, u2}});
            }
        }
    }

    std::vector<Wall> out;
    for (auto& [_, w] : seen) out.push_back(w);
    std::sort(out.begin(), out.end(),
              [](const Wall& a, const Wall& b) { return lex_less(normalize_direction(a.D), normalize_direction(b.D)); });
    return out;
}

bool same_chamber(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h1, const DivisorClass& h2) {
    if (s.ns_rank == 1) {
        check_generic_preconditions(s, v, h1);
        check_generic_preconditions(s, v, h2);
        return true;
    }
    if (!walls_between(s, v, h1, h2).empty()) return false;
    return is_generic(s, v, h1).generic && is_generic(s, v, h2).generic;
}

namespace {

bool is_elliptic_preset(const SurfaceClass& s) {
    if (s.ns_rank != 2) return false;
    return s.gram == preset_elliptic_k3().gram || s.gram == preset_elliptic_abelian().gram;
}

}  // namespace

Suitability is_suitable(const SurfaceClass& s, const MukaiVector& v, const DivisorClass& h) {
    if (!is_elliptic_preset(s)) throw WallError("is_suitable: not an elliptic preset");
    if (v.v0 <= 0) throw WallError("is_suitable: needs positive rank");
    if (h.rank() != 2 || h.coords[0] != 1) throw WallError("is_suitable: H must be of the form sigma + t*f");
    Rat bound = discriminant_bound(s, v);
    Rat t(h.coords[1]);
    if (s.kind == SurfaceKind::K3) return t >= bound + 1 ? Suitability::Suitable : Suitability::Unknown;
    return t >= bound ? Suitability::Suitable : Suitability::Unknown;
}

std::optional<Rat> threshold_Md(const SurfaceClass& s, const DivisorClass& h, const Int& d) {
    if (d <= 0) throw WallError("threshold_Md: d must be positive");
    std::vector<DivisorClass> gens;
    for (const auto& g : s.effective_gens)
        if (!g.is_zero()) gens.push_back(g);
    for (const auto& g : gens)
        if (intersect(s, g, h) <= 0)
            throw WallError("threshold_Md: effective generator with nonpositive degree");
    std::optional<Rat> best;
    auto consider = [&](const DivisorClass& c) {
        Int deg = intersect(s, c, h);
        if (deg <= 0 || deg >= d) return;
        Rat val = make_rat(d * (self_intersect(s, c) + 2), 2 * deg);
        if (!best || val > *best) best = val;
    };
    if (gens.empty()) return best;
    if (gens.size() == 1 || s.ns_rank == 1) {
        Int g1h = intersect(s, gens[0], h);
        for (Int c = 1; c * g1h < d; ++c) consider(c * gens[0]);
        return best;
    }
    Int g1h = intersect(s, gens[0], h);
    Int g2h = intersect(s, gens[1], h);
    for (Int c1 = 0; c1 * g1h < d; ++c1)
        for (Int c2 = 0; c1 * g1h + c2 * g2h < d; ++c2) {
            if (c1 == 0 && c2 == 0) continue;
            consider(c1 * gens[0] + c2 * gens[1]);
        }
    return best;
}

}  // namespace mukai
