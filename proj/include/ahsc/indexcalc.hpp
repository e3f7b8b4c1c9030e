#pragma once

// Exact algebra of index sets and index families: the bookkeeping devices
// recording (exponent, log-power) pairs of boundary asymptotic expansions.
// Exponents are exact affine expressions p + q*z (integer p, q >= 0) in the
// spectral parameter z, so integer-difference tests never touch floats.

#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ahsc/errors.hpp"

namespace ahsc {

/// Exponent p + q*z with integer offset p and z-multiplicity q >= 0.
struct Exponent {
    long long p = 0;
    int q = 0;
    friend bool operator==(const Exponent&, const Exponent&) = default;
    friend Exponent operator+(Exponent a, Exponent b) {
        return {a.p + b.p, a.q + b.q};
    }
};

/// A single (exponent, log power) pair.
struct IndexTerm {
    Exponent a;
    int l = 0;
    friend bool operator==(const IndexTerm&, const IndexTerm&) = default;
};

/// Numeric value of z used for ordering and for detecting accidental integer
/// relations between exponents of different z-multiplicity.  Such a collision
/// is an error unless `generic` is set, in which case z is treated as generic
/// and the exponents as unrelated.
struct ZetaContext {
    std::complex<double> zeta{0.6, 0.7};
    bool generic = false;

    double re(const Exponent& a) const {
        return static_cast<double>(a.p) + a.q * zeta.real();
    }
};

/// Finite index set together with the bound below which it is faithful
/// (every term with Re a < truncation is present), and the formal element
/// "infinity" (absorbing for sums, neutral for extended unions).
struct IndexSet {
    std::vector<IndexTerm> terms;
    double truncation = std::numeric_limits<double>::infinity();
    bool is_infinity = false;

    static IndexSet infinity() {
        IndexSet s;
        s.is_infinity = true;
        return s;
    }
    static IndexSet of(std::vector<IndexTerm> ts,
                       double M = std::numeric_limits<double>::infinity()) {
        IndexSet s;
        s.terms = std::move(ts);
        s.truncation = M;
        s.normalize();
        return s;
    }
    /// Sort canonically (by q, then p, then l) and drop exact duplicates.
    void normalize();
    friend bool operator==(const IndexSet&, const IndexSet&);
};

/// Index family for the three boundary faces, ordered left, right, front.
struct IndexFamily {
    IndexSet left, right, front;
};

/// Index family of a boundary-pairing operator: left and right faces only.
struct BoundaryIndexFamily {
    IndexSet left, right;
};

/// min Re a over the set; +infinity for the empty set and for infinity.
double re_min(const IndexSet& E, const ZetaContext& ctx);

/// {(a+b, k+l)}; infinity is absorbing; the empty set absorbs too (no pairs
/// form).  Truncation: min(M_E + min Re F, M_F + min Re E).
IndexSet sum(const IndexSet& E, const IndexSet& F, const ZetaContext& ctx);

/// Extended union: pairs with b - a a nonnegative integer contribute
/// {(a,k), (b,k+l+1)} (roles ordered so Re a <= Re b; equal exponents
/// contribute both orientations); unrelated pairs pass through unchanged.
/// Infinity and the empty set are neutral.  Truncation: min(M_E, M_F).
IndexSet ext_union(const IndexSet& E, const IndexSet& F, const ZetaContext& ctx);

/// Drop terms with Re a >= M and record the tighter truncation.
IndexSet truncate(const IndexSet& E, double M, const ZetaContext& ctx);

/// Composition on interior families:
/// (E1 ubar (F1+E3), F2 ubar (E2+F3), (E3+F3) ubar (E1+F2)).
/// Requires re_min(E2) + re_min(F1) > n; violations throw domain_error
/// carrying both Re values.
IndexFamily compose_families(const IndexFamily& E, const IndexFamily& F,
                             int n, const ZetaContext& ctx);

/// Composition against a boundary-pairing family:
/// (E1 ubar (I1+E3), I2), under re_min(E2) + re_min(I1) > n.
BoundaryIndexFamily compose_family_boundary(const IndexFamily& E,
                                            const BoundaryIndexFamily& I,
                                            int n, const ZetaContext& ctx);

/// The base family {z+1, z, 1} of the Neumann-series iterate.
IndexFamily q2_base_family();

struct NeumannViolation {
    int face = 0; // 0 left, 1 right, 2 front
    IndexTerm term;
};

struct NeumannReport {
    IndexFamily accumulated; // union over j = 1..J of the iterate families
    IndexFamily envelope;    // the closed-form candidate, materialized to Re < M
    bool contained = false;
    std::vector<NeumannViolation> violations;
};

/// Iterates compose_families on the base family J times, accumulates the
/// per-face union truncated at Re < M, and checks term-by-term dominance
/// against the closed-form envelope family
///   left  {(z+1+k, k)},  right {(z+k, k)},
///   front {(1+k, 0)} + {(2z+k, (k^2+k-2)/2), k >= 1}.
/// A term (a,k) is dominated when the envelope holds (a,k') with k <= k'.
NeumannReport neumann_envelope(const IndexFamily& base, int J, double M,
                               int n, const ZetaContext& ctx);

/// Text grammar (documented in the README): exponents `3`, `z`, `2z-1`;
/// sets `inf`, `{}`, `{(z,0),(z+1,1)}`, optional truncation suffix `@M`;
/// families `[{...},{...},{...}]`.  to_text(parse(s)) round-trips.
std::string to_text(const Exponent& a);
std::string to_text(const IndexSet& E);
std::string to_text(const IndexFamily& F);
IndexSet parse_index_set(const std::string& text);
IndexFamily parse_index_family(const std::string& text);

} // namespace ahsc
