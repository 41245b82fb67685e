#pragma once

#include "mukai/moves.hpp"

namespace mukai {

struct PlannerError : std::runtime_error {
    std::string check;
    long step_index;
    PlannerError(const std::string& msg, std::string check_name, long idx)
        : std::runtime_error(msg), check(std::move(check_name)), step_index(idx) {}
};

// Certified chain of moves; each step's input equals the previous step's
// output.
struct Path {
    Triple start;
    std::vector<StepCertificate> steps;
    Triple end;

    std::vector<std::string> assumptions() const;
};

// Minimal s > N with gcd(n + r*s, a + 2*l*n*s + r*l*s^2) = 1. Requires
// gcd(r,n,a) = 1, r > 0 and l*n^2 - r*a > 0; termination follows from the
// fact that every blocked s sits in one residue class per prime factor of
// l*n^2 - r*a.
Int find_coprime_twist(const Int& r, const Int& n, const Int& a, const Int& l, const Int& N);

// Minimal s = 2k*s' > N; then gcd(1 + r*s, 2*k*s + r*k*s^2) = 1 holds
// automatically (asserted) and the second component lies in 2kZ.
Int find_even_twist(const Int& r, const Int& k, const Int& N);

// Canonical target of the reduction on the given invariants.
Triple canonical_triple(SurfaceKind kind, const Int& m, const Int& k);
bool is_canonical(const Triple& t);

// Executable reduction to (rank1(kind,k), m(0,h,0), h): rank-0 vectors are
// dualized to positive rank, the rank is made coprime to the first Chern
// class, then a multiple of 2k, and the final dual-and-twist lands on the
// canonical vector. Every emitted step carries an accepted certificate.
Path reduce_to_canonical(const Triple& t);

struct StepStatus {
    size_t index;
    std::string move;
    bool ok;
    std::string failed_check;  // empty when ok
};

struct LedgerRow {
    Int m;
    Int w_square;
    Int v_square;
};

struct VerifyReport {
    bool ok = false;
    std::vector<StepStatus> steps;
    std::vector<LedgerRow> ledger;  // start node plus one row per step output
    std::vector<std::string> assumptions;
    std::string detail;  // non-step-level failure, e.g. "end mismatch"
};

// Replays every move with fresh precondition checks.
VerifyReport verify_path(const Path& p);

}  // namespace mukai
