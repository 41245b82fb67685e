#include "mukai/planner.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace mukai {

namespace {

constexpr long kTwistSearchCap = 1000000;

Int twist_n(const Int& n, const Int& r, const Int& s) { return n + r * s; }
Int twist_a(const Int& a, const Int& n, const Int& r, const Int& l, const Int& s) {
    return a + 2 * l * n * s + r * l * s * s;
}

}  // namespace

std::vector<std::string> Path::assumptions() const {
    std::set<std::string> seen;
    std::vector<std::string> out;
    for (const auto& st : steps)
        for (const auto& a : st.assumptions)
            if (seen.insert(a).second) out.push_back(a);
    return out;
}

Int find_coprime_twist(const Int& r, const Int& n, const Int& a, const Int& l, const Int& N) {
    if (r <= 0) throw MukaiError("find_coprime_twist: r must be positive");
    if (gcd(gcd(r, n), a) != 1) throw MukaiError("find_coprime_twist: gcd(r,n,a) must be 1");
    Int k = l * n * n - r * a;
    if (k <= 0) throw MukaiError("find_coprime_twist: l*n^2 - r*a must be positive");
    Int s = N + 1;
    for (long guard = 0; guard < kTwistSearchCap; ++guard, ++s) {
        if (gcd(twist_n(n, r, s), twist_a(a, n, r, l, s)) == 1) return s;
    }
    throw MukaiError("find_coprime_twist: search cap exceeded");
}

Int find_even_twist(const Int& r, const Int& k, const Int& N) {
    if (r < 1 || k < 1) throw MukaiError("find_even_twist: r,k must be >= 1");
    Int sp;
    mpz_fdiv_q(sp.get_mpz_t(), N.get_mpz_t(), Int(2 * k).get_mpz_t());
    sp += 1;
    if (sp < 1) sp = 1;
    Int s = 2 * k * sp;
    Int ns = 1 + r * s;
    Int as = 2 * k * s + r * k * s * s;
    if (gcd(ns, as) != 1) throw MukaiError("find_even_twist: coprimality failed unexpectedly");
    if (!divides(2 * k, as)) throw MukaiError("find_even_twist: divisibility failed unexpectedly");
    return s;
}

Triple canonical_triple(SurfaceKind kind, const Int& m, const Int& k) {
    SurfaceClass s = preset_rank1(kind, k);
    MukaiVector v(Int(0), DivisorClass({m}), Int(0));
    return make_triple(s, v, DivisorClass({Int(1)}));
}

bool is_canonical(const Triple& t) {
    if (t.surface.ns_rank != 1) return false;
    if (t.surface.gram[0][0] != 2 * t.k) return false;
    if (t.H.coords[0] != 1) return false;
    return t.v.v0 == 0 && t.v.v2 == 0 && t.v.v1.coords[0] == t.m;
}

namespace {

struct Pipeline {
    Path path;
    Triple cur;
    SurfaceKind kind;
    Int m, k;

    explicit Pipeline(const Triple& t) : cur(t), kind(t.surface.kind), m(t.m), k(t.k) {
        path.start = t;
    }

    void emit(const Move& mv) {
        try {
            auto [next, cert] = apply_move(cur, mv);
            path.steps.push_back(cert);
            cur = next;
        } catch (const MoveError& e) {
            throw PlannerError(std::string("step ") + std::to_string(path.steps.size()) + ": " + e.what(),
                               e.check, static_cast<long>(path.steps.size()));
        }
    }
    void emit_all(const std::vector<StepCertificate>& certs) {
        for (const auto& c : certs) {
            path.steps.push_back(c);
            cur = c.output;
        }
    }

    MukaiVector prim() const { return primitive_decomposition(cur.v).second; }

    // Gate of the rank-positive dual for the full vector m*w on a rank-1
    // lattice, expressed on the primitive twist coefficient.
    Int dual_gate_primitive(const Int& r_w) const {
        Int mr = m * r_w;
        return 32 * mr * mr * mr * (m * m * k) / m;
    }

    // ---- Step 1: rank 0 to positive rank -------------------------------
    void step1() {
        if (cur.surface.ns_rank == 2) step1_pick_polarization();
        const SurfaceClass& s = cur.surface;
        MukaiVector v = cur.v;
        Int d_par = intersect(s, v.v1, cur.H);
        auto md = threshold_Md(s, cur.H, d_par);
        Int d = 0;
        for (long guard = 0;; ++guard, ++d) {
            if (guard > kTwistSearchCap) throw PlannerError("step 1: no admissible twist", "threshold_Md", -1);
            Int a_d = v.v2 + d * d_par;
            if (a_d < 1) continue;
            if (md && Rat(a_d) <= *md) continue;
            if (s.ns_rank == 2) {
                MukaiVector dual(a_d, -v.v1, Int(0));
                auto g1 = is_generic(s, MukaiVector(Int(0), v.v1, a_d), cur.H);
                auto g2 = is_generic(s, dual, cur.H);
                if (!g1.generic || !g2.generic) continue;
            }
            break;
        }
        if (d > 0) emit(TensorPowerOfH{d});
        emit(FMDual{FMVariant::Rank0});
        MukaiVector canon = canonicalize_sign(cur.surface, cur.v);
        if (canon != cur.v) emit(CanonicalizeSign{});
    }

    // On a rank-2 lattice the dual vector grows with the twist, and a fixed
    // polarization eventually lies on one of its walls. Walk deeper into
    // the chamber of H along x*H + Q until the dual-side genericity
    // becomes decidable in the positive.
    void step1_pick_polarization() {
        const SurfaceClass& s = cur.surface;
        DivisorClass companion = chamber_companion();
        Int x = 1;
        for (int iter = 0; iter < 200; ++iter, x *= 2) {
            DivisorClass cand = normalize_direction(x * cur.H + companion);
            if (!is_ample(s, cand)) continue;
            if (!same_chamber(s, cur.v, cur.H, cand)) continue;
            Int d_par = intersect(s, cur.v.v1, cand);
            auto md = threshold_Md(s, cand, d_par);
            Int a_min = cur.v.v2;
            {
                Int need = md ? rat_floor(*md) + 1 : Int(1);
                if (need < 1) need = 1;
                if (a_min < need) {
                    Int delta = need - cur.v.v2;
                    Int dsteps = (delta + d_par - 1) / d_par;
                    a_min = cur.v.v2 + dsteps * d_par;
                }
            }
            MukaiVector dual(a_min, -cur.v.v1, Int(0));
            if (!is_generic(s, dual, cand).generic) continue;
            if (cand != cur.H) emit(ChangePolarization{cand});
            return;
        }
        throw PlannerError("step 1: no dual-safe polarization found", "generic_for_dual", -1);
    }

    DivisorClass chamber_companion() const {
        const SurfaceClass& s = cur.surface;
        for (Int j = 2; j <= 64; ++j) {
            for (int axis = 0; axis < 2; ++axis) {
                for (int sign = -1; sign <= 1; sign += 2) {
                    DivisorClass delta = DivisorClass::zero(2);
                    delta.coords[axis] = sign;
                    DivisorClass cand = j * cur.H + delta;
                    if (!is_ample(s, cand)) continue;
                    if (same_chamber(s, cur.v, cur.H, cand)) return cand;
                }
            }
        }
        throw PlannerError("step 1: no chamber companion found", "same_chamber", -1);
    }

    // ---- Step 2: rank coprime to the first Chern class -----------------
    void step2() {
        MukaiVector w = prim();
        Int r = w.v0;
        // Twist until the first Chern class has positive square (and a
        // positive coefficient on rank-1 lattices).
        Int d = 0;
        for (long guard = 0;; ++guard, ++d) {
            if (guard > kTwistSearchCap) throw PlannerError("step 2: no admissible pre-twist", "structure", -1);
            MukaiVector wd = tensor(cur.surface, w, d * cur.H);
            if (cur.surface.ns_rank == 1) {
                if (wd.v1.coords[0] >= 1) break;
            } else if (self_intersect(cur.surface, wd.v1) > 0) {
                break;
            }
        }
        if (d > 0) emit(TensorPowerOfH{d});
        w = prim();
        Int g = gcd(r, w.v1.content());
        Int xi_sq = self_intersect(cur.surface, w.v1);
        Int lp = xi_sq / (2 * g * g);
        SurfaceClass target = preset_rank1(kind, lp);
        MukaiVector w_target(r, DivisorClass({g}), w.v2);
        Triple target_triple = make_triple(target, m * w_target, DivisorClass({Int(1)}));
        if (cur != target_triple) emit(RetargetLattice{target, m * w_target, DivisorClass({Int(1)})});

        Int gate = dual_gate_primitive(r);
        Int s_gate = (gate - g) / r + 1;
        if (s_gate < 0) s_gate = 0;
        Int s = find_coprime_twist(r, g, w.v2, lp, s_gate - 1);
        if (s != 0) emit(TensorPowerOfH{s});
        emit(FMDual{kind == SurfaceKind::K3 ? FMVariant::K3 : FMVariant::Abelian});
    }

    // ---- Step 3: rank a positive multiple of 2k -------------------------
    void step3() {
        MukaiVector w = prim();
        Int r = w.v0;
        Triple target = make_triple(preset_rank1(kind, k), m * MukaiVector(r, DivisorClass({Int(1)}), Int(0)),
                                    DivisorClass({Int(1)}));
        emit_all(connect_via_elliptic(cur, target));
        Int gate = dual_gate_primitive(r);
        Int sp_min;
        mpz_fdiv_q(sp_min.get_mpz_t(), (gate - 1).get_mpz_t(), Int(2 * k * r).get_mpz_t());
        sp_min += 1;
        if (sp_min < 1) sp_min = 1;
        Int s = find_even_twist(r, k, 2 * k * sp_min - 1);
        emit(TensorPowerOfH{s});
        emit(FMDual{kind == SurfaceKind::K3 ? FMVariant::K3 : FMVariant::Abelian});
    }

    // Gate of the final dual on the rank-0 side.
    bool step4_gate_ok(const Int& r_w) const {
        SurfaceClass xk = preset_rank1(kind, k);
        auto md = threshold_Md(xk, DivisorClass({Int(1)}), m * 2 * k);
        return !md || Rat(m * r_w) > *md;
    }

    // ---- Step 4: land on m(0,h,0) ---------------------------------------
    void step4() {
        MukaiVector w = prim();
        Int r = w.v0;
        Int p = r / (2 * k);
        Triple target = make_triple(preset_rank1(kind, k), m * MukaiVector(r, DivisorClass({Int(1)}), Int(0)),
                                    DivisorClass({Int(1)}));
        emit_all(connect_via_elliptic(cur, target));
        emit(FMDual{FMVariant::Rank0});
        emit(CanonicalizeSign{});
        emit(TensorPowerOfH{-p});
    }

    void run() {
        if (is_canonical(cur)) return;
        if (cur.v.v0 == 0) step1();
        {
            MukaiVector w = prim();
            if (gcd(w.v0, w.v1.content()) != 1) step2();
        }
        {
            MukaiVector w = prim();
            bool ready = divides(2 * k, w.v0) && gcd(w.v0, w.v1.content()) == 1 && step4_gate_ok(w.v0);
            if (!ready) step3();
        }
        step4();
        if (!is_canonical(cur)) throw PlannerError("pipeline did not reach the canonical triple", "chain", -1);
    }
};

}  // namespace

Path reduce_to_canonical(const Triple& t) {
    if (validate_triple(t.surface, t.v, t.H))
        throw PlannerError("reduce_to_canonical: invalid input triple", "input", -1);
    Pipeline pipe(t);
    pipe.run();
    pipe.path.end = pipe.cur;
    return pipe.path;
}

VerifyReport verify_path(const Path& p) {
    VerifyReport rep;
    rep.ok = true;
    std::set<std::string> assumed;

    auto push_ledger = [&](const Triple& t) {
        LedgerRow row;
        row.v_square = square(t.surface, t.v);
        if (!t.v.is_zero()) {
            auto [m, w] = primitive_decomposition(t.v);
            row.m = m;
            row.w_square = square(t.surface, w);
        }
        rep.ledger.push_back(row);
    };

    if (validate_triple(p.start.surface, p.start.v, p.start.H)) {
        rep.ok = false;
        rep.detail = "invalid start triple";
        return rep;
    }
    push_ledger(p.start);

    Triple cur = p.start;
    for (size_t i = 0; i < p.steps.size(); ++i) {
        const StepCertificate& st = p.steps[i];
        StepStatus status{i, move_name(st.move), true, ""};
        if (!(st.input == cur)) {
            status.ok = false;
            status.failed_check = "chain mismatch";
        } else {
            StepCertificate fresh = check_move(cur, st.move);
            if (!fresh.accepted()) {
                status.ok = false;
                status.failed_check = fresh.first_failure()->name;
            } else if (!(fresh.output == st.output)) {
                status.ok = false;
                status.failed_check = "chain mismatch";
            }
            for (const auto& a : fresh.assumptions)
                if (assumed.insert(a).second) rep.assumptions.push_back(a);
        }
        rep.ok = rep.ok && status.ok;
        rep.steps.push_back(status);
        cur = st.output;
        push_ledger(cur);
    }
    if (!(cur == p.end)) {
        rep.ok = false;
        rep.detail = "end mismatch";
    }
    return rep;
}

}  // namespace mukai
