#include "ahsc/indexcalc.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace ahsc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool term_less(const IndexTerm& u, const IndexTerm& v) {
    if (u.a.q != v.a.q) return u.a.q < v.a.q;
    if (u.a.p != v.a.p) return u.a.p < v.a.p;
    return u.l < v.l;
}

// b - a when it is an integer: exact for equal z-multiplicity; for unequal
// multiplicity an accidental numeric relation is an error unless the context
// declares z generic.
std::optional<long long> integer_diff(const Exponent& a, const Exponent& b,
                                      const ZetaContext& ctx) {
    if (a.q == b.q) return b.p - a.p;
    std::complex<double> d = std::complex<double>(static_cast<double>(b.p - a.p), 0.0) +
                             static_cast<double>(b.q - a.q) * ctx.zeta;
    if (std::abs(d.imag()) < 1e-9 && std::abs(d.real() - std::round(d.real())) < 1e-9) {
        if (!ctx.generic)
            throw domain_error("index sets: exponents " + to_text(a) + " and " + to_text(b) +
                               " are integer-related at this numeric z; pass the genericity "
                               "flag to treat z as generic");
    }
    return std::nullopt;
}

double add_bounds(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return kInf;
    return a + b;
}

} // namespace

void IndexSet::normalize() {
    std::sort(terms.begin(), terms.end(), term_less);
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
}

bool operator==(const IndexSet& E, const IndexSet& F) {
    return E.is_infinity == F.is_infinity && E.terms == F.terms &&
           E.truncation == F.truncation;
}

double re_min(const IndexSet& E, const ZetaContext& ctx) {
    if (E.is_infinity || E.terms.empty()) return kInf;
    double m = kInf;
    for (const auto& t : E.terms) m = std::min(m, ctx.re(t.a));
    return m;
}

IndexSet sum(const IndexSet& E, const IndexSet& F, const ZetaContext& ctx) {
    if (E.is_infinity || F.is_infinity) return IndexSet::infinity();
    IndexSet out;
    out.truncation = std::min(add_bounds(E.truncation, re_min(F, ctx)),
                              add_bounds(F.truncation, re_min(E, ctx)));
    for (const auto& e : E.terms)
        for (const auto& f : F.terms)
            out.terms.push_back({e.a + f.a, e.l + f.l});
    out.normalize();
    return out;
}

IndexSet ext_union(const IndexSet& E, const IndexSet& F, const ZetaContext& ctx) {
    double M = std::min(E.truncation, F.truncation);
    if (E.is_infinity || E.terms.empty()) {
        IndexSet out = F;
        out.is_infinity = F.is_infinity && E.is_infinity;
        if (!out.is_infinity) out.truncation = M;
        return out;
    }
    if (F.is_infinity || F.terms.empty()) {
        IndexSet out = E;
        out.truncation = M;
        return out;
    }
    IndexSet out;
    out.truncation = M;
    for (const auto& e : E.terms) {
        for (const auto& f : F.terms) {
            auto d = integer_diff(e.a, f.a, ctx);
            if (!d) {
                out.terms.push_back(e);
                out.terms.push_back(f);
            } else if (*d > 0) {
                out.terms.push_back(e);
                out.terms.push_back({f.a, e.l + f.l + 1});
            } else if (*d < 0) {
                out.terms.push_back(f);
                out.terms.push_back({e.a, e.l + f.l + 1});
            } else {
                out.terms.push_back(e);
                out.terms.push_back(f);
                out.terms.push_back({e.a, e.l + f.l + 1});
            }
        }
    }
    out.normalize();
    return out;
}

IndexSet truncate(const IndexSet& E, double M, const ZetaContext& ctx) {
    if (E.is_infinity) return E;
    IndexSet out;
    out.truncation = std::min(E.truncation, M);
    for (const auto& t : E.terms)
        if (ctx.re(t.a) < M) out.terms.push_back(t);
    out.normalize();
    return out;
}

namespace {

void check_hypothesis(double re2, double re1, int n, const char* what) {
    if (!(re2 + re1 > static_cast<double>(n))) {
        std::ostringstream os;
        os << what << ": composition hypothesis violated, Re E2 + Re F1 = " << re2
           << " + " << re1 << " is not > n = " << n;
        throw domain_error(os.str());
    }
}

} // namespace

IndexFamily compose_families(const IndexFamily& E, const IndexFamily& F,
                             int n, const ZetaContext& ctx) {
    check_hypothesis(re_min(E.right, ctx), re_min(F.left, ctx), n, "compose_families");
    IndexFamily out;
    out.left = ext_union(E.left, sum(F.left, E.front, ctx), ctx);
    out.right = ext_union(F.right, sum(E.right, F.front, ctx), ctx);
    out.front = ext_union(sum(E.front, F.front, ctx), sum(E.left, F.right, ctx), ctx);
    return out;
}

BoundaryIndexFamily compose_family_boundary(const IndexFamily& E,
                                            const BoundaryIndexFamily& I,
                                            int n, const ZetaContext& ctx) {
    check_hypothesis(re_min(E.right, ctx), re_min(I.left, ctx), n,
                     "compose_family_boundary");
    BoundaryIndexFamily out;
    out.left = ext_union(E.left, sum(I.left, E.front, ctx), ctx);
    out.right = I.right;
    return out;
}

IndexFamily q2_base_family() {
    IndexFamily f;
    f.left = IndexSet::of({{{1, 1}, 0}});
    f.right = IndexSet::of({{{0, 1}, 0}});
    f.front = IndexSet::of({{{1, 0}, 0}});
    return f;
}

namespace {

IndexSet plain_union(const IndexSet& E, const IndexSet& F) {
    if (E.is_infinity) return F;
    if (F.is_infinity) return E;
    IndexSet out;
    out.truncation = std::min(E.truncation, F.truncation);
    out.terms = E.terms;
    out.terms.insert(out.terms.end(), F.terms.begin(), F.terms.end());
    out.normalize();
    return out;
}

IndexSet envelope_face(int which, double M, const ZetaContext& ctx) {
    IndexSet out;
    out.truncation = M;
    if (which == 0 || which == 1) {
        long long shift = which == 0 ? 1 : 0; // left {(z+1+k,k)}, right {(z+k,k)}
        for (long long k = 0;; ++k) {
            Exponent a{shift + k, 1};
            if (ctx.re(a) >= M) break;
            out.terms.push_back({a, static_cast<int>(k)});
        }
    } else {
        for (long long k = 0;; ++k) {
            Exponent a{1 + k, 0};
            if (ctx.re(a) >= M) break;
            out.terms.push_back({a, 0});
        }
        for (long long k = 1;; ++k) {
            Exponent a{k, 2};
            if (ctx.re(a) >= M) break;
            out.terms.push_back({a, static_cast<int>((k * k + k - 2) / 2)});
        }
    }
    out.normalize();
    return out;
}

void check_face(int face, const IndexSet& acc, const IndexSet& env,
                std::vector<NeumannViolation>& out) {
    for (const auto& t : acc.terms) {
        bool ok = false;
        for (const auto& e : env.terms)
            if (e.a == t.a && t.l <= e.l) {
                ok = true;
                break;
            }
        if (!ok) out.push_back({face, t});
    }
}

} // namespace

NeumannReport neumann_envelope(const IndexFamily& base, int J, double M,
                               int n, const ZetaContext& ctx) {
    if (J < 1) throw domain_error("neumann_envelope: J must be >= 1");
    auto trunc_family = [&](const IndexFamily& f) {
        return IndexFamily{truncate(f.left, M, ctx), truncate(f.right, M, ctx),
                           truncate(f.front, M, ctx)};
    };
    IndexFamily iterate = trunc_family(base);
    IndexFamily acc = iterate;
    for (int j = 2; j <= J; ++j) {
        iterate = trunc_family(compose_families(iterate, base, n, ctx));
        acc.left = plain_union(acc.left, iterate.left);
        acc.right = plain_union(acc.right, iterate.right);
        acc.front = plain_union(acc.front, iterate.front);
    }
    NeumannReport rep;
    rep.accumulated = acc;
    rep.envelope = {envelope_face(0, M, ctx), envelope_face(1, M, ctx),
                    envelope_face(2, M, ctx)};
    check_face(0, acc.left, rep.envelope.left, rep.violations);
    check_face(1, acc.right, rep.envelope.right, rep.violations);
    check_face(2, acc.front, rep.envelope.front, rep.violations);
    rep.contained = rep.violations.empty();
    return rep;
}

// ---------------------------------------------------------------------------
// text grammar

std::string to_text(const Exponent& a) {
    std::ostringstream os;
    if (a.q == 0) {
        os << a.p;
        return os.str();
    }
    if (a.q == 1)
        os << "z";
    else
        os << a.q << "z";
    if (a.p > 0)
        os << "+" << a.p;
    else if (a.p < 0)
        os << a.p;
    return os.str();
}

std::string to_text(const IndexSet& E) {
    if (E.is_infinity) return "inf";
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < E.terms.size(); ++i) {
        if (i) os << ",";
        os << "(" << to_text(E.terms[i].a) << "," << E.terms[i].l << ")";
    }
    os << "}";
    if (std::isfinite(E.truncation)) os << "@" << E.truncation;
    return os.str();
}

std::string to_text(const IndexFamily& F) {
    return "[" + to_text(F.left) + "," + to_text(F.right) + "," + to_text(F.front) + "]";
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c))
            throw domain_error(std::string("index grammar: expected '") + c +
                               "' at position " + std::to_string(i) + " in \"" + s + "\"");
    }
    long long integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
            throw domain_error("index grammar: expected integer at position " +
                               std::to_string(start) + " in \"" + s + "\"");
        return std::stoll(s.substr(start, i - start));
    }
    double real() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        while (i < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
        if (i == start)
            throw domain_error("index grammar: expected number at position " +
                               std::to_string(start));
        return std::stod(s.substr(start, i - start));
    }

    // exponent: [int] | [int] z [(+|-) int] | z [(+|-) int]
    Exponent exponent() {
        skip_ws();
        Exponent a;
        bool have_coeff = false;
        long long coeff = 1;
        size_t save = i;
        if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) ||
                             s[i] == '+' || s[i] == '-')) {
            coeff = integer();
            have_coeff = true;
        }
        skip_ws();
        if (i < s.size() && s[i] == 'z') {
            ++i;
            a.q = static_cast<int>(coeff);
            if (!have_coeff) a.q = 1;
            if (a.q < 0) throw domain_error("index grammar: negative z-multiplicity");
            skip_ws();
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) a.p = integer();
            return a;
        }
        if (!have_coeff) {
            i = save;
            throw domain_error("index grammar: expected exponent at position " +
                               std::to_string(i) + " in \"" + s + "\"");
        }
        a.p = coeff;
        return a;
    }

    IndexSet set() {
        skip_ws();
        if (s.compare(i, 3, "inf") == 0) {
            i += 3;
            return IndexSet::infinity();
        }
        expect('{');
        IndexSet out;
        skip_ws();
        if (!eat('}')) {
            do {
                expect('(');
                IndexTerm t;
                t.a = exponent();
                expect(',');
                long long l = integer();
                if (l < 0) throw domain_error("index grammar: negative log power");
                t.l = static_cast<int>(l);
                expect(')');
                out.terms.push_back(t);
            } while (eat(','));
            expect('}');
        }
        if (eat('@')) out.truncation = real();
        out.normalize();
        return out;
    }

    IndexFamily family() {
        expect('[');
        IndexFamily f;
        f.left = set();
        expect(',');
        f.right = set();
        expect(',');
        f.front = set();
        expect(']');
        return f;
    }

    void finish() {
        skip_ws();
        if (i != s.size())
            throw domain_error("index grammar: trailing input at position " +
                               std::to_string(i) + " in \"" + s + "\"");
    }
};

} // namespace

IndexSet parse_index_set(const std::string& text) {
    Parser p(text);
    IndexSet out = p.set();
    p.finish();
    return out;
}

IndexFamily parse_index_family(const std::string& text) {
    Parser p(text);
    IndexFamily out = p.family();
    p.finish();
    return out;
}

} // namespace ahsc
