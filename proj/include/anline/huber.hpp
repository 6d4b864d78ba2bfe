#pragma once

// Discrete Huber pairs (A, A+) with A = C[T][1/S], rational localizations,
// the two generating cover types, and rank-one valuations.
//
// A+ is kept as a list of generators; comparisons are made in the monoid
// C^x * <generators>, which stands in for the integral closure.

#include <anline/berkovich.hpp>
#include <anline/polynomial.hpp>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace anline {

struct site_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Yun decomposition: p = lc * prod_i s_i^(i+1), s_i squarefree, monic, coprime.
inline std::vector<Polynomial> squarefree_decomposition(const Polynomial& p)
{
    std::vector<Polynomial> out;
    if (p.is_constant()) return out;
    const Polynomial dp = p.derivative();
    const Polynomial a0 = gcd(p, dp);
    Polynomial b = exact_quotient(p, a0);
    Polynomial c = exact_quotient(dp, a0);
    Polynomial d = c - b.derivative();
    while (!b.is_constant()) {
        Polynomial s = gcd(b, d);
        out.push_back(s);
        b = exact_quotient(b, s);
        c = exact_quotient(d, s);
        d = c - b.derivative();
    }
    while (!out.empty() && out.back().is_constant()) out.pop_back();
    return out;
}

/// Monic, squarefree, pairwise coprime polynomials over which every input
/// factors as lc * prod q^e.
inline std::vector<Polynomial> coprime_basis(const std::vector<Polynomial>& inputs)
{
    std::vector<Polynomial> work;
    for (const auto& p : inputs) {
        if (p.is_zero()) throw site_error("coprime basis of the zero polynomial");
        for (auto& s : squarefree_decomposition(p)) {
            if (!s.is_constant()) work.push_back(s.monic());
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < work.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < work.size() && !changed; ++j) {
                if (work[i] == work[j]) {
                    work.erase(work.begin() + static_cast<std::ptrdiff_t>(j));
                    changed = true;
                    break;
                }
                Polynomial g = gcd(work[i], work[j]);
                if (g.is_constant()) continue;
                Polynomial a = exact_quotient(work[i], g).monic();
                Polynomial b = exact_quotient(work[j], g).monic();
                work.erase(work.begin() + static_cast<std::ptrdiff_t>(j));
                work.erase(work.begin() + static_cast<std::ptrdiff_t>(i));
                for (auto* q : {&g, &a, &b}) {
                    if (!q->is_constant()) work.push_back(*q);
                }
                changed = true;
            }
        }
    }
    std::sort(work.begin(), work.end(), [](const Polynomial& a, const Polynomial& b) { return a.str() < b.str(); });
    return work;
}

/// Exponent of a squarefree basis element q in p (p nonzero).
inline int multiplicity(Polynomial p, const Polynomial& q)
{
    int e = 0;
    for (;;) {
        auto [quo, rem] = Polynomial::divmod(p, q);
        if (!rem.is_zero()) return e;
        p = std::move(quo);
        ++e;
    }
}

class HuberPair {
public:
    /// (C[T][1/S], C^x * <aplus>); 1 is always a generator.
    explicit HuberPair(std::vector<Polynomial> inverted = {}, std::vector<RationalFunction> aplus = {})
    {
        for (auto& s : inverted) {
            if (s.is_zero()) throw site_error("cannot invert 0");
        }
        inverted_ = coprime_basis(inverted);
        aplus_.push_back(RationalFunction(1));
        for (auto& a : aplus) add_aplus(a);
    }

    /// Coprime monic basis of the inverted multiplicative set.
    const std::vector<Polynomial>& inverted() const { return inverted_; }
    const std::vector<RationalFunction>& aplus() const { return aplus_; }

    /// h is invertible in A iff every root of h is a root of some inverted element.
    bool is_unit(const Polynomial& h) const
    {
        if (h.is_zero()) return false;
        Polynomial rest = h;
        for (const auto& s : inverted_) {
            for (;;) {
                Polynomial g = gcd(rest, s);
                if (g.is_constant()) break;
                rest = exact_quotient(rest, g);
            }
        }
        return rest.is_constant();
    }

    /// f lies in A when its reduced denominator is a unit.
    bool contains(const RationalFunction& f) const { return is_unit(f.den()); }

    HuberPair with_inverted(const Polynomial& s) const
    {
        if (s.is_zero()) throw site_error("cannot invert 0");
        HuberPair p = *this;
        if (!s.is_constant()) {
            auto all = inverted_;
            all.push_back(s);
            p.inverted_ = coprime_basis(all);
        }
        return p;
    }

    HuberPair with_aplus(const std::vector<RationalFunction>& gens) const
    {
        HuberPair p = *this;
        for (const auto& a : gens) {
            if (!p.contains(a)) throw site_error("A+ generator " + a.str() + " is not in A");
            p.add_aplus(a);
        }
        return p;
    }

    std::string str() const
    {
        std::string s = "ring=C[T] inverted=";
        for (std::size_t i = 0; i < inverted_.size(); ++i) s += (i ? "," : "") + inverted_[i].str();
        s += " aplus=";
        for (std::size_t i = 0; i < aplus_.size(); ++i) s += (i ? "," : "") + aplus_[i].str();
        return s;
    }

private:
    void add_aplus(const RationalFunction& a)
    {
        if (a.is_zero()) return; // 0 lies in every subring
        RationalFunction m = a;
        if (a.is_constant()) return; // scalars are in C^x already
        // strip the leading scalar so generators are compared up to C^x
        const GaussianRational lead = m.num().leading();
        m = m * RationalFunction(Polynomial(GaussianRational(1) / lead));
        if (std::find(aplus_.begin(), aplus_.end(), m) == aplus_.end()) aplus_.push_back(m);
    }

    std::vector<Polynomial> inverted_;
    std::vector<RationalFunction> aplus_;
};

/// Membership of h in C^x * <gens> (products with nonnegative exponents),
/// decided on exponent vectors over a common coprime basis.
inline bool in_aplus_monoid(const RationalFunction& h, const std::vector<RationalFunction>& gens, int max_exponent = 12)
{
    if (h.is_zero()) return true;
    std::vector<Polynomial> polys{h.num(), h.den()};
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        polys.push_back(g.num());
        polys.push_back(g.den());
    }
    std::vector<Polynomial> nonconst;
    for (auto& p : polys) {
        if (!p.is_constant()) nonconst.push_back(p);
    }
    const auto basis = coprime_basis(nonconst);
    auto vec = [&](const RationalFunction& f) {
        std::vector<int> v;
        for (const auto& q : basis) v.push_back(multiplicity(f.num(), q) - multiplicity(f.den(), q));
        return v;
    };
    const std::vector<int> target = vec(h);
    std::vector<std::vector<int>> g;
    for (const auto& x : gens) {
        if (x.is_zero()) continue;
        auto v = vec(x);
        if (std::any_of(v.begin(), v.end(), [](int e) { return e != 0; })) g.push_back(std::move(v));
    }
    // depth-first search over exponents n_j in [0, max_exponent]
    std::vector<int> acc(basis.size(), 0);
    std::function<bool(std::size_t)> search = [&](std::size_t j) {
        if (j == g.size()) return acc == target;
        for (int n = 0; n <= max_exponent; ++n) {
            if (search(j + 1)) return true;
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += g[j][k];
        }
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] -= (max_exponent + 1) * g[j][k];
        return false;
    };
    return search(0);
}

/// Every generator of `small` lies in the monoid of `big`.
inline bool aplus_included(const HuberPair& small, const HuberPair& big)
{
    for (const auto& a : small.aplus()) {
        if (!in_aplus_monoid(a, big.aplus())) return false;
    }
    return true;
}

/// Same ring (saturated inverted sets) and same A+ monoid.
inline bool equivalent(const HuberPair& a, const HuberPair& b)
{
    for (const auto& s : a.inverted()) {
        if (!b.is_unit(s)) return false;
    }
    for (const auto& s : b.inverted()) {
        if (!a.is_unit(s)) return false;
    }
    return aplus_included(a, b) && aplus_included(b, a);
}

/// `m` is a localization of `n`: n's inverted elements are units in m and
/// n's A+ generators lie in m's A+ monoid.
inline bool factors_through(const HuberPair& m, const HuberPair& n)
{
    for (const auto& s : n.inverted()) {
        if (!m.is_unit(s)) return false;
    }
    return aplus_included(n, m);
}

namespace detail {

inline Polynomial ideal_generator(const std::vector<Polynomial>& ps)
{
    Polynomial g;
    for (const auto& p : ps) g = gcd(g, p);
    return g;
}

} // namespace detail

/// (A[1/g], A+[f_1/g, ..., f_n/g]) for f_i, g generating the unit ideal of A.
inline HuberPair rational_localize(const HuberPair& P, const std::vector<Polynomial>& fs, const Polynomial& g)
{
    if (fs.empty()) throw site_error("rational localization needs at least one numerator");
    if (g.is_zero()) throw site_error("rational localization at g = 0");
    std::vector<Polynomial> all = fs;
    all.push_back(g);
    const Polynomial h = detail::ideal_generator(all);
    if (!P.is_unit(h)) throw site_error("f_i and g do not generate the unit ideal (gcd " + h.str() + ")");
    HuberPair out = P.with_inverted(g);
    std::vector<RationalFunction> gens;
    for (const auto& f : fs) gens.emplace_back(f, g);
    return out.with_aplus(gens);
}

/// (fs; g) followed by (hs; k) as a single localization:
/// numerators f_i k, g h_j, g k over g k. This family generates the unit
/// ideal of the base ring when gcd(g, k) is a unit there; otherwise the
/// combined localization is rejected by rational_localize.
inline std::pair<std::vector<Polynomial>, Polynomial> compose_localizations(const std::vector<Polynomial>& fs,
                                                                            const Polynomial& g,
                                                                            const std::vector<Polynomial>& hs,
                                                                            const Polynomial& k)
{
    std::vector<Polynomial> num;
    for (const auto& f : fs) num.push_back(f * k);
    for (const auto& h : hs) num.push_back(g * h);
    num.push_back(g * k);
    return {num, g * k};
}

enum class CoverKind { two_piece, zariski };

struct CoverMember {
    HuberPair pair;
    std::string description; // what was inverted or adjoined
};

struct CoverSpec {
    CoverKind kind = CoverKind::two_piece;
    HuberPair base;
    std::vector<RationalFunction> elements;
    std::vector<CoverMember> members;
    std::vector<Polynomial> certificate; // Bezout coefficients for the Zariski kind

    std::string str() const
    {
        std::string s = kind == CoverKind::two_piece ? "twopiece(" : "zariski(";
        for (std::size_t i = 0; i < elements.size(); ++i) s += (i ? ", " : "") + elements[i].str();
        return s + ")";
    }

    void write(std::ostream& os) const
    {
        os << "cover " << str() << " base " << base.str() << '\n';
        for (std::size_t i = 0; i < members.size(); ++i) {
            os << "  member " << i << " " << members[i].description << " : " << members[i].pair.str() << '\n';
        }
        if (!certificate.empty()) {
            os << "  certificate";
            for (std::size_t i = 0; i < certificate.size(); ++i) {
                os << (i ? " + " : " ") << "(" << certificate[i].str() << ")*(" << elements[i].str() << ")";
            }
            os << " = 1\n";
        }
    }
};

/// {(B, B+[f]), (B[1/f], B+[1/f])}.
inline CoverSpec two_piece_cover(const HuberPair& B, const RationalFunction& f)
{
    if (f.is_zero()) throw site_error("two-piece cover at f = 0");
    if (!B.contains(f)) throw site_error(f.str() + " is not an element of the ring");
    CoverSpec c;
    c.kind = CoverKind::two_piece;
    c.base = B;
    c.elements = {f};
    c.members.push_back({B.with_aplus({f}), "adjoin " + f.str()});
    const RationalFunction inv = RationalFunction(1) / f;
    c.members.push_back({B.with_inverted(f.num()).with_aplus({inv}), "invert " + f.str()});
    return c;
}

/// {(B[1/f_i], B+[1/f_i])} for f_i generating the unit ideal; the certificate
/// holds u_i with sum u_i f_i = 1 in A.
inline CoverSpec zariski_cover(const HuberPair& B, const std::vector<Polynomial>& fs)
{
    if (fs.empty()) throw site_error("Zariski cover needs at least one element");
    // fold the extended gcd: u_1 f_1 + ... + u_k f_k = g_k
    std::vector<Polynomial> u{Polynomial(1)};
    Polynomial g = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) {
        auto [h, a, b] = extended_gcd(g, fs[i]);
        for (auto& x : u) x = x * a;
        u.push_back(b);
        g = h;
    }
    if (g.is_zero() || !B.is_unit(g)) throw site_error("elements do not generate the unit ideal (gcd " + g.monic().str() + ")");
    if (!g.is_constant()) {
        // g is a unit of A but not a scalar; the certificate then lives in A
        throw site_error("unit-ideal certificate needs inverted denominators (gcd " + g.str() + "); not supported");
    }
    const GaussianRational inv = GaussianRational(1) / g.leading();
    for (auto& x : u) x = x * Polynomial(inv);
    CoverSpec c;
    c.kind = CoverKind::zariski;
    c.base = B;
    for (const auto& f : fs) c.elements.emplace_back(f);
    c.certificate = u;
    for (const auto& f : fs) {
        if (f.is_zero()) throw site_error("Zariski cover element is 0");
        c.members.push_back({B.with_inverted(f).with_aplus({RationalFunction(Polynomial(1), f)}), "invert " + f.str()});
    }
    return c;
}

/// Both generating cover types at f; the Zariski cover is added when a
/// unit-ideal family is supplied.
inline std::vector<CoverSpec> generate_covers(const HuberPair& B, const RationalFunction& f,
                                              const std::vector<Polynomial>& unit_family = {})
{
    std::vector<CoverSpec> out{two_piece_cover(B, f)};
    if (!unit_family.empty()) out.push_back(zariski_cover(B, unit_family));
    return out;
}

struct Refinement {
    bool refines = false;
    std::vector<std::size_t> assignment; // member of C1 -> member of C2
    std::optional<std::size_t> witness;  // first member of C1 that factors through nothing

    std::string str() const
    {
        if (!refines) return "refines=false witness=" + std::to_string(*witness);
        std::string s = "refines=true assignment=";
        for (std::size_t i = 0; i < assignment.size(); ++i) s += (i ? "," : "") + std::to_string(i) + "->" + std::to_string(assignment[i]);
        return s;
    }
};

/// Every member of c1 factors through some member of c2; same index preferred.
inline Refinement refines(const CoverSpec& c1, const CoverSpec& c2)
{
    Refinement r;
    for (std::size_t i = 0; i < c1.members.size(); ++i) {
        std::optional<std::size_t> hit;
        if (i < c2.members.size() && factors_through(c1.members[i].pair, c2.members[i].pair)) hit = i;
        for (std::size_t j = 0; !hit && j < c2.members.size(); ++j) {
            if (factors_through(c1.members[i].pair, c2.members[j].pair)) hit = j;
        }
        if (!hit) {
            r.witness = i;
            r.assignment.clear();
            return r;
        }
        r.assignment.push_back(*hit);
    }
    r.refines = true;
    return r;
}

/// Element of the value monoid gamma^Z u {0}: gamma^exponent, or 0.
struct ValuationValue {
    bool zero = false;
    long exponent = 0;

    static ValuationValue zero_value() { return {true, 0}; }

    friend ValuationValue operator*(const ValuationValue& a, const ValuationValue& b)
    {
        if (a.zero || b.zero) return zero_value();
        return {false, a.exponent + b.exponent};
    }
    friend bool operator==(const ValuationValue& a, const ValuationValue& b)
    {
        return a.zero == b.zero && (a.zero || a.exponent == b.exponent);
    }
    /// Order for gamma < 1: larger exponent means smaller value.
    friend bool operator<=(const ValuationValue& a, const ValuationValue& b)
    {
        if (a.zero) return true;
        if (b.zero) return false;
        return a.exponent >= b.exponent;
    }

    std::string str(const Rational& gamma) const
    {
        if (zero) return "0";
        return gamma.get_str() + "^" + std::to_string(exponent);
    }
};

inline ValuationValue max(const ValuationValue& a, const ValuationValue& b) { return a <= b ? b : a; }

class Valuation {
public:
    enum class Kind { trivial_at_point, trivial_generic, order_at_point };

    /// v(f) = 0 if f(z) = 0, else 1.
    static Valuation trivial_at(GaussianRational z) { return Valuation(Kind::trivial_at_point, std::move(z), Rational(1, 2)); }
    /// v(f) = 0 iff f = 0.
    static Valuation trivial_generic() { return Valuation(Kind::trivial_generic, {}, Rational(1, 2)); }
    /// v(f) = gamma^(order of vanishing of f at z).
    static Valuation order_at(GaussianRational z, Rational gamma)
    {
        if (sgn(gamma) <= 0 || gamma >= 1) throw site_error("valuation base gamma must lie in (0, 1)");
        return Valuation(Kind::order_at_point, std::move(z), std::move(gamma));
    }

    Kind kind() const { return kind_; }
    const GaussianRational& point() const { return z_; }
    const Rational& gamma() const { return gamma_; }

    /// Whether v extends to A = C[T][1/S].
    bool defined_on(const HuberPair& P) const
    {
        if (kind_ != Kind::trivial_at_point) return true;
        for (const auto& s : P.inverted()) {
            if (s(z_).is_zero()) return false;
        }
        return true;
    }

    ValuationValue operator()(const Polynomial& f) const
    {
        if (f.is_zero()) return ValuationValue::zero_value();
        switch (kind_) {
        case Kind::trivial_generic: return {false, 0};
        case Kind::trivial_at_point: return f(z_).is_zero() ? ValuationValue::zero_value() : ValuationValue{false, 0};
        case Kind::order_at_point: return {false, f.order_at(z_)};
        }
        return {};
    }

    /// Value of p/q; q must not have value 0.
    ValuationValue operator()(const RationalFunction& f) const
    {
        const ValuationValue n = (*this)(f.num());
        const ValuationValue d = (*this)(f.den());
        if (d.zero) throw site_error("valuation undefined at " + f.str());
        if (n.zero) return n;
        return {false, n.exponent - d.exponent};
    }

    std::string str() const
    {
        switch (kind_) {
        case Kind::trivial_generic: return "trivial generic";
        case Kind::trivial_at_point: return "trivial " + z_.str();
        case Kind::order_at_point: return "order " + z_.str() + " " + gamma_.get_str();
        }
        return "?";
    }

private:
    Valuation(Kind k, GaussianRational z, Rational gamma) : kind_(k), z_(std::move(z)), gamma_(std::move(gamma)) {}

    Kind kind_;
    GaussianRational z_;
    Rational gamma_;
};

struct ValuationReport {
    std::size_t pairs = 0;
    std::vector<std::string> violations;

    bool pass() const { return violations.empty(); }
};

/// v(0) = 0, v(1) = 1, v(ab) = v(a)v(b), v(a+b) <= max(v(a), v(b)) on all sample pairs.
inline ValuationReport valuation_axiom_check(const Valuation& v, const std::vector<Polynomial>& sample)
{
    ValuationReport rep;
    if (!v(Polynomial()).zero) rep.violations.push_back("v(0) != 0");
    if (!(v(Polynomial(1)) == ValuationValue{false, 0})) rep.violations.push_back("v(1) != 1");
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto va = v(sample[i]);
        for (std::size_t j = i; j < sample.size(); ++j) {
            const auto vb = v(sample[j]);
            ++rep.pairs;
            if (!(v(sample[i] * sample[j]) == va * vb)) {
                rep.violations.push_back("v(ab) != v(a)v(b) for a=" + sample[i].str() + " b=" + sample[j].str());
            }
            if (!(v(sample[i] + sample[j]) <= max(va, vb))) {
                rep.violations.push_back("v(a+b) > max for a=" + sample[i].str() + " b=" + sample[j].str());
            }
        }
    }
    return rep;
}

enum class SpaVerdict { member, not_member, outside_spa, not_defined };

inline const char* to_string(SpaVerdict s)
{
    switch (s) {
    case SpaVerdict::member: return "member";
    case SpaVerdict::not_member: return "not-member";
    case SpaVerdict::outside_spa: return "outside-spa";
    case SpaVerdict::not_defined: return "not-defined";
    }
    return "?";
}

/// v in U(f_1..f_n / g) of Spa(A, A+): v(A+) <= 1 first, then v(f_i) <= v(g) != 0.
inline SpaVerdict spa_membership(const Valuation& v, const HuberPair& P, const RationalSubsetSpec& R)
{
    if (!v.defined_on(P)) return SpaVerdict::not_defined;
    const ValuationValue one{false, 0};
    for (const auto& a : P.aplus()) {
        if (!(v(a) <= one)) return SpaVerdict::outside_spa;
    }
    const auto vg = v(R.denominator());
    if (vg.zero) return SpaVerdict::not_member;
    for (const auto& f : R.numerators()) {
        if (!(v(f) <= vg)) return SpaVerdict::not_member;
    }
    return SpaVerdict::member;
}

struct EquivalenceResult {
    bool equivalent = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness; // (a, b) with v(a) >= v(b) but not w(a) >= w(b) or vice versa
};

/// v(a) >= v(b) iff w(a) >= w(b) on all sample pairs.
inline EquivalenceResult equivalence_check(const Valuation& v, const Valuation& w, const std::vector<Polynomial>& sample)
{
    for (std::size_t i = 0; i < sample.size(); ++i) {
        for (std::size_t j = 0; j < sample.size(); ++j) {
            const bool a = v(sample[j]) <= v(sample[i]);
            const bool b = w(sample[j]) <= w(sample[i]);
            if (a != b) return {false, std::pair{i, j}};
        }
    }
    return {};
}

} // namespace anline
