#pragma once

// Group-valued Dedekind symbols, reciprocity functions, and the 1-cocycle
// algebra of the modular group.
//
// A reciprocity function assigns to every coprime pair (p,q) a value in a
// (not necessarily commutative) group G subject to
//
//     f(p,-q) = f(-p,q),    f(p,q) f(-q,p) = 1,    f(p,p+q) f(p+q,q) = f(p,q),
//
// and each such f determines a generalized Dedekind symbol D, the solution
// (unique once a base value is fixed) of
//
//     D(p,q+p) = D(p,q),    D(p,-q) = D(-p,q),    D(p,q) D(q,-p)^{-1} = f(p,q),
//
// recovered here by Euclidean descent.  The same data can be repackaged as a
// 1-cocycle of the modular group with values in a module of G-valued
// functions on the rational projective line; this file implements both
// directions of that dictionary, generic over the coefficient group, plus
// the concrete cocycle whose values are iterated-period transport series
// between cusps.
//
// Exact instances (free group on named generators, additive rationals) catch
// algebra mistakes at word level; numeric instances (additive complex,
// truncated series with tolerance) carry the analytic examples.

#include <complex>
#include <cstdlib>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncperiods/iterated_periods.hpp"
#include "ncperiods/modular_group.hpp"
#include "ncperiods/nc_series.hpp"
#include "ncperiods/rational.hpp"

namespace ncperiods {

// ---------------------------------------------------------------------------
// Coefficient groups.
//
// A coefficient group exposes: a nested Element type, identity(), op(a,b),
// inverse(a), equal(a,b), and str(a) for table export.  Group state (name
// tables, tolerances, series shapes) lives in the group object; elements stay
// plain values.

template <class G>
concept CoefficientGroup = requires(const G& g, const typename G::Element& a,
                                    const typename G::Element& b) {
    { g.identity() } -> std::convertible_to<typename G::Element>;
    { g.op(a, b) } -> std::convertible_to<typename G::Element>;
    { g.inverse(a) } -> std::convertible_to<typename G::Element>;
    { g.equal(a, b) } -> std::convertible_to<bool>;
};

/// Reduced word in a free group: (generator id, nonzero exponent) syllables
/// with distinct adjacent ids.  Equality of reduced words is equality in the
/// group, so every identity checked through FreeWord is word-level exact.
struct FreeWord {
    std::vector<std::pair<int, int>> syllables;

    bool is_identity() const { return syllables.empty(); }
    std::size_t length() const;  // sum of |exponent|
    FreeWord inverse() const;
    FreeWord operator*(const FreeWord& o) const;
    bool operator==(const FreeWord& o) const { return syllables == o.syllables; }
};

/// Free group on named generators.  Generators are created on first use and
/// shared between copies of the group object, so elements built anywhere in
/// one computation print consistently.
class FreeGroup {
public:
    using Element = FreeWord;

    FreeGroup();

    Element identity() const { return {}; }
    Element op(const Element& a, const Element& b) const { return a * b; }
    Element inverse(const Element& a) const { return a.inverse(); }
    bool equal(const Element& a, const Element& b) const { return a == b; }

    /// The generator with this name, created if it does not exist yet.
    Element generator(const std::string& name);
    std::size_t generator_count() const { return names_->size(); }

    /// "x2_5.y^-1", or "1" for the empty word.
    std::string str(const Element& w) const;

private:
    std::shared_ptr<std::vector<std::string>> names_;
    std::shared_ptr<std::map<std::string, int>> index_;
};

/// The rationals under addition, written multiplicatively: op is +, the
/// inverse is the negative, the identity is 0.  Exact.
struct RationalAddGroup {
    using Element = Rational;
    Element identity() const { return Element(0); }
    Element op(const Element& a, const Element& b) const { return a + b; }
    Element inverse(const Element& a) const { return -a; }
    bool equal(const Element& a, const Element& b) const { return a == b; }
    std::string str(const Element& a) const;
};

/// Complex numbers under addition with a mixed absolute/relative equality
/// tolerance: values of period polynomials grow like p^k across a grid, so a
/// purely absolute comparison would be meaningless at large arguments.
/// Identities that cancel large values down to zero are only meaningful
/// within the roundoff of the cancelled terms — the comparison sees the sum
/// alone, so pick tol to absorb |largest term| * 1e-15.
struct ComplexAddGroup {
    using Element = Complex;
    double tol = 1e-9;

    Element identity() const { return Element(0.0); }
    Element op(const Element& a, const Element& b) const { return a + b; }
    Element inverse(const Element& a) const { return -a; }
    bool equal(const Element& a, const Element& b) const {
        const double scale = std::max({1.0, std::abs(a), std::abs(b)});
        return std::abs(a - b) <= tol * scale;
    }
    std::string str(const Element& a) const;
};

/// Invertible truncated series (unit constant term) under the concatenation
/// product, with distance-based equality.
struct NCSeriesGroup {
    using Element = NCSeries;
    std::size_t letters = 1;
    std::size_t depth = 1;
    double tol = 1e-9;

    Element identity() const { return NCSeries::one(letters, depth); }
    Element op(const Element& a, const Element& b) const { return a * b; }
    Element inverse(const Element& a) const { return a.inverse(); }
    bool equal(const Element& a, const Element& b) const { return distance(a, b) <= tol; }
    std::string str(const Element& a) const { return a.to_json(); }
};

// ---------------------------------------------------------------------------
// Reciprocity functions and Dedekind symbols.

/// A function on coprime pairs with values in G.  Throws std::domain_error
/// when queried off the coprime lattice.
template <class G>
using PairFn = std::function<typename G::Element(long long, long long)>;

/// One failed identity instance: which equation, at which pair.
struct PairViolation {
    std::string equation;
    long long p = 0;
    long long q = 0;
};

/// Outcome of a grid validation.  Carries every violated instance so a fault
/// can be localized, not just detected.
struct ValidationReport {
    long long checks = 0;
    std::vector<PairViolation> violations;

    bool ok() const { return violations.empty(); }
    std::string str() const;
};

namespace detail {
inline bool coprime_ll(long long p, long long q) {
    return gcd_ll(std::llabs(p), std::llabs(q)) == 1;
}
inline void require_coprime(long long p, long long q, const char* who) {
    if (!coprime_ll(p, q))
        throw std::domain_error(std::string(who) + ": (" + std::to_string(p) + "," +
                                std::to_string(q) + ") is not a coprime pair");
}
}  // namespace detail

/// Check the three reciprocity equations, plus the derived unit values
/// f(1,1) = f(-1,1) = 1, on every coprime pair with |p|,|q| <= bound.
/// Equality is the group's own (exact or tolerance-based).
template <CoefficientGroup G>
ValidationReport validate_reciprocity(const G& g, const PairFn<G>& f, long long bound) {
    ValidationReport rep;
    auto check = [&](const char* label, long long p, long long q,
                     const typename G::Element& lhs, const typename G::Element& rhs) {
        ++rep.checks;
        if (!g.equal(lhs, rhs)) rep.violations.push_back({label, p, q});
    };
    for (long long p = -bound; p <= bound; ++p)
        for (long long q = -bound; q <= bound; ++q) {
            if (!detail::coprime_ll(p, q)) continue;
            check("f(p,-q) = f(-p,q)", p, q, f(p, -q), f(-p, q));
            check("f(p,q) f(-q,p) = 1", p, q, g.op(f(p, q), f(-q, p)), g.identity());
            check("f(p,p+q) f(p+q,q) = f(p,q)", p, q, g.op(f(p, p + q), f(p + q, q)),
                  f(p, q));
        }
    check("f(1,1) = 1", 1, 1, f(1, 1), g.identity());
    check("f(-1,1) = 1", -1, 1, f(-1, 1), g.identity());
    return rep;
}

/// Check the three symbol equations against the reciprocity function f on
/// every coprime pair with |p|,|q| <= bound.
template <CoefficientGroup G>
ValidationReport validate_symbol(const G& g, const PairFn<G>& D, const PairFn<G>& f,
                                 long long bound) {
    ValidationReport rep;
    auto check = [&](const char* label, long long p, long long q,
                     const typename G::Element& lhs, const typename G::Element& rhs) {
        ++rep.checks;
        if (!g.equal(lhs, rhs)) rep.violations.push_back({label, p, q});
    };
    for (long long p = -bound; p <= bound; ++p)
        for (long long q = -bound; q <= bound; ++q) {
            if (!detail::coprime_ll(p, q)) continue;
            check("D(p,q+p) = D(p,q)", p, q, D(p, q + p), D(p, q));
            check("D(p,-q) = D(-p,q)", p, q, D(p, -q), D(-p, q));
            check("D(p,q) D(q,-p)^-1 = f(p,q)", p, q,
                  g.op(D(p, q), g.inverse(D(q, -p))), f(p, q));
        }
    return rep;
}

/// The Dedekind symbol determined by f, base value D(0,1) := 1.  Computed by
/// Euclidean descent: reduce the second argument modulo the first (which
/// leaves D unchanged), then trade D(p,q) for f(p,q mod p) and D(q mod p,-p),
/// flipping both signs when the first argument goes negative.  The first
/// argument strictly decreases, so coprimality guarantees termination at
/// (0,±1).
template <CoefficientGroup G>
PairFn<G> reconstruct_symbol(const G& g, PairFn<G> f) {
    struct Descent {
        G group;
        PairFn<G> f;
        typename G::Element eval(long long p, long long q) const {
            detail::require_coprime(p, q, "reconstruct_symbol");
            if (p == 0) return group.identity();
            if (p < 0) return eval(-p, -q);
            const long long r = ((q % p) + p) % p;
            return group.op(f(p, r), eval(r, -p));
        }
    };
    auto d = std::make_shared<Descent>(Descent{g, std::move(f)});
    return [d](long long p, long long q) { return d->eval(p, q); };
}

/// One row of an exported symbol table.
struct SymbolRow {
    long long p = 0;
    long long q = 0;
    std::string value;
};

/// Tabulate a pair function over all coprime |p|,|q| <= bound in row-major
/// (p,q) order; values serialized by the group.  The deterministic order
/// makes the table diff- and hash-stable.
template <CoefficientGroup G>
std::vector<SymbolRow> tabulate_pair_function(const G& g, const PairFn<G>& fn,
                                              long long bound) {
    std::vector<SymbolRow> rows;
    for (long long p = -bound; p <= bound; ++p)
        for (long long q = -bound; q <= bound; ++q) {
            if (!detail::coprime_ll(p, q)) continue;
            rows.push_back({p, q, g.str(fn(p, q))});
        }
    return rows;
}

/// f identically the group identity; the smallest valid reciprocity function.
template <CoefficientGroup G>
PairFn<G> constant_reciprocity(const G& g) {
    return [g](long long p, long long q) {
        detail::require_coprime(p, q, "constant_reciprocity");
        return g.identity();
    };
}

/// The classical rational reciprocity value (p^2 + q^2 - 3pq + 1) / (12pq)
/// for p,q > 0, extended to the whole coprime lattice by the reciprocity
/// equations themselves (sign swaps and inversions), with f(1,0) := 0.
Rational classical_reciprocity_value(long long p, long long q);

/// The classical function packaged over the additive rationals.
PairFn<RationalAddGroup> classical_reciprocity(const RationalAddGroup& g);

/// A maximally unconstrained reciprocity function: on pairs 0 < p < q it
/// hands out a fresh named generator x{p}_{q} of the free group (memoized),
/// on 0 < q < p it applies f(p,q) = f(p-q,p)^{-1} f(p-q,q), and sign cases
/// reduce to the positive quadrant as in the classical extension.  Every
/// reciprocity identity then holds by word-level cancellation only — any
/// hidden commutativity assumption elsewhere in the algebra breaks it.
PairFn<FreeGroup> free_reciprocity(FreeGroup& g);

/// Additive reciprocity function of a cusp form of even integer weight with
/// trivial multiplier: f(p,q) = sum_s binom(k,s) (-q)^{k-s} p^s m_s, the
/// homogenized period polynomial, with moments m_s = int_0^inf z^s F dz
/// computed by adaptive quadrature once and reused.  Throws
/// std::domain_error unless the weight is an even integer >= 4 and the
/// multiplier is trivial (the integrand must be single-valued).
PairFn<ComplexAddGroup> period_polynomial_reciprocity(const ComplexAddGroup& g,
                                                      const CuspForm& form,
                                                      const QuadratureOptions& qopt = {});

// ---------------------------------------------------------------------------
// Modules over the modular group.
//
// A module is a coefficient group with a left action of unimodular matrices
// (acting through their image on cusps, so a global sign never matters).
// The matching right action is x|g := g^{-1} x.

template <class M>
concept GammaModule = CoefficientGroup<M> &&
    requires(const M& m, const typename M::Element& x, const UniModular& g) {
        { m.act(g, x) } -> std::convertible_to<typename M::Element>;
    };

/// The derived right action x|g = g^{-1} x.
template <GammaModule M>
typename M::Element act_right(const M& m, const typename M::Element& x,
                              const UniModular& g) {
    return m.act(g.inverse(), x);
}

/// Finitely supported maps from the rational projective line to G0, default
/// value the identity.  Exact whenever G0 is: equality compares supports.
/// The left action moves support points forward: (g f)(g x) = f(x).
template <CoefficientGroup G0>
struct MapModule {
    using El0 = typename G0::Element;
    struct CuspLess {
        bool operator()(const Cusp& a, const Cusp& b) const {
            return a.num != b.num ? a.num < b.num : a.den < b.den;
        }
    };
    using Element = std::map<Cusp, El0, CuspLess>;

    G0 base;

    Element identity() const { return {}; }

    Element op(const Element& a, const Element& b) const {
        Element out = a;
        for (const auto& [c, v] : b) {
            auto it = out.find(c);
            if (it == out.end()) {
                out.emplace(c, v);
            } else {
                it->second = base.op(it->second, v);
                if (base.equal(it->second, base.identity())) out.erase(it);
            }
        }
        return out;
    }

    Element inverse(const Element& a) const {
        Element out;
        for (const auto& [c, v] : a) out.emplace(c, base.inverse(v));
        return out;
    }

    Element act(const UniModular& g, const Element& a) const {
        Element out;
        for (const auto& [c, v] : a) out.emplace(act_cusp(g, c), v);
        return out;
    }

    bool equal(const Element& a, const Element& b) const {
        // Supports never store identity values, so sizes must agree.
        if (a.size() != b.size()) return false;
        for (auto ia = a.begin(), ib = b.begin(); ia != a.end(); ++ia, ++ib) {
            if (!(ia->first == ib->first)) return false;
            if (!base.equal(ia->second, ib->second)) return false;
        }
        return true;
    }

    El0 eval(const Element& a, const Cusp& c) const {
        auto it = a.find(c);
        return it == a.end() ? base.identity() : it->second;
    }
};

/// The cusps equality is sampled at in FnModule: a mix of integers, small
/// fractions, and the infinite cusp, enough to separate every function met
/// in the tests.
std::vector<Cusp> default_probe_cusps();

/// Maps from the rational projective line to G0 represented as closures, for
/// functions with infinite support (e.g. a reciprocity function viewed as a
/// function of cusps).  Structural equality of closures does not exist, so
/// equal() compares values on the probe set — exact per point, but only as
/// discriminating as the probes.
template <CoefficientGroup G0>
struct FnModule {
    using El0 = typename G0::Element;
    using Element = std::function<El0(const Cusp&)>;

    G0 base;
    std::vector<Cusp> probes = default_probe_cusps();

    Element identity() const {
        G0 b = base;
        return [b](const Cusp&) { return b.identity(); };
    }
    Element op(const Element& f, const Element& h) const {
        G0 b = base;
        return [b, f, h](const Cusp& c) { return b.op(f(c), h(c)); };
    }
    Element inverse(const Element& f) const {
        G0 b = base;
        return [b, f](const Cusp& c) { return b.inverse(f(c)); };
    }
    Element act(const UniModular& g, const Element& f) const {
        const UniModular gi = g.inverse();
        return [gi, f](const Cusp& c) { return f(act_cusp(gi, c)); };
    }
    bool equal(const Element& f, const Element& h) const {
        for (const Cusp& c : probes)
            if (!base.equal(f(c), h(c))) return false;
        return true;
    }
    El0 eval(const Element& f, const Cusp& c) const { return f(c); }
};

// ---------------------------------------------------------------------------
// Cocycles of the modular group.

enum class CocycleSide { left, right };

/// A 1-cocycle determined by its values at the two generators: X at the
/// order-2 generator, Y at the order-3 generator.  Left cocycles extend by
/// c(gh) = c(g) · g c(h), right cocycles by c(gh) = (c(g)|h) · c(h); the
/// word decomposition of the free product drives the extension, and values
/// are memoized by normal form.  Construction verifies the generator
/// relations (X · σX = 1 and the τ-triple product for the left side, their
/// mirrored forms for the right side) and throws std::invalid_argument on
/// violation.
///
/// Evaluators are immutable after construction; the memo table supports
/// concurrent reads only if no evaluation can insert, so share evaluators
/// across threads only after warming the values you need.
template <GammaModule M>
class GroupCocycle {
public:
    using Element = typename M::Element;

    GroupCocycle(const M* mod, CocycleSide side, Element at_sigma, Element at_tau,
                 bool check_relations = true)
        : mod_(mod), side_(side), x_(std::move(at_sigma)), y_(std::move(at_tau)) {
        if (check_relations) verify_relations();
    }

    CocycleSide side() const { return side_; }
    const M& module() const { return *mod_; }
    const Element& at_sigma() const { return x_; }
    const Element& at_tau() const { return y_; }

    /// Whether the pair additionally satisfies the Dedekind condition:
    /// Y = τX for a left cocycle, V = U|σ for a right one.
    bool is_dedekind() const {
        if (side_ == CocycleSide::left) return mod_->equal(mod_->act(tau_gen(), x_), y_);
        return mod_->equal(act_right(*mod_, x_, sigma_gen()), y_);
    }

    Element operator()(const UniModular& g) const {
        const GroupWord w = decompose(g);
        const std::string key = w.str();
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Element value = extend(w);
        memo_.emplace(key, value);
        return value;
    }

private:
    Element letter_value(Letter l) const {
        switch (l) {
        case Letter::S: return x_;
        case Letter::T: return y_;
        case Letter::T2:
        default:
            // Value at the squared generator via the cocycle law itself.
            if (side_ == CocycleSide::left)
                return mod_->op(y_, mod_->act(tau_gen(), y_));
            return mod_->op(act_right(*mod_, y_, tau_gen()), y_);
        }
    }

    Element extend(const GroupWord& w) const {
        Element acc = mod_->identity();
        if (side_ == CocycleSide::left) {
            UniModular prefix;
            for (Letter l : w.letters) {
                acc = mod_->op(acc, mod_->act(prefix, letter_value(l)));
                prefix = prefix * letter_matrix(l);
            }
        } else {
            for (Letter l : w.letters) {
                acc = mod_->op(act_right(*mod_, acc, letter_matrix(l)), letter_value(l));
            }
        }
        return acc;
    }

    void verify_relations() const {
        const UniModular s = sigma_gen(), t = tau_gen();
        bool ok_sigma, ok_tau;
        if (side_ == CocycleSide::left) {
            ok_sigma = mod_->equal(mod_->op(x_, mod_->act(s, x_)), mod_->identity());
            ok_tau = mod_->equal(
                mod_->op(y_, mod_->op(mod_->act(t, y_), mod_->act(t * t, y_))),
                mod_->identity());
        } else {
            ok_sigma = mod_->equal(mod_->op(act_right(*mod_, x_, s), x_), mod_->identity());
            ok_tau = mod_->equal(
                mod_->op(act_right(*mod_, y_, t * t),
                         mod_->op(act_right(*mod_, y_, t), y_)),
                mod_->identity());
        }
        if (!ok_sigma || !ok_tau)
            throw std::invalid_argument(
                std::string("pair_to_cocycle: generator pair violates the ") +
                (ok_sigma ? "order-3" : "order-2") + " relation");
    }

    const M* mod_;
    CocycleSide side_;
    Element x_, y_;
    mutable std::map<std::string, Element> memo_;
};

/// Package a generator pair as a cocycle evaluator (relations checked).
/// The module must outlive the evaluator.
template <GammaModule M>
GroupCocycle<M> pair_to_cocycle(const M& mod, typename M::Element at_sigma,
                                typename M::Element at_tau, CocycleSide side) {
    return GroupCocycle<M>(&mod, side, std::move(at_sigma), std::move(at_tau));
}

/// The side-swapping bijection c'(g) = (c(g^{-1}))^{-1}.  Applying it twice
/// returns the original cocycle, and it pairs the two Dedekind conditions
/// with each other.
template <GammaModule M>
GroupCocycle<M> left_right_convert(const GroupCocycle<M>& c) {
    const M& m = c.module();
    const CocycleSide flipped =
        c.side() == CocycleSide::left ? CocycleSide::right : CocycleSide::left;
    typename M::Element at_sigma = m.inverse(c(sigma_gen()));
    typename M::Element at_tau = m.inverse(c(tau_gen().inverse()));
    return GroupCocycle<M>(&m, flipped, std::move(at_sigma), std::move(at_tau));
}

/// The left Dedekind cocycle attached to a reciprocity function f, in the
/// closure module over f's group: X sends the cusp q/p to f(p,q) (the value
/// does not depend on the sign choice of the representative), and Y is the
/// translate τX, which works out to q/p -> f(q, q-p).  The input f is
/// validated on a small grid first and rejected with a witness if it fails;
/// the relation check of the returned pair then runs on the module's probe
/// cusps.
template <CoefficientGroup G0>
GroupCocycle<FnModule<G0>> reciprocity_to_dedekind_cocycle(const FnModule<G0>& mod,
                                                           PairFn<G0> f,
                                                           long long validate_bound = 6) {
    ValidationReport rep = validate_reciprocity(mod.base, f, validate_bound);
    if (!rep.ok())
        throw std::invalid_argument("reciprocity_to_dedekind_cocycle: " + rep.str());
    typename FnModule<G0>::Element X = [f](const Cusp& c) { return f(c.den, c.num); };
    typename FnModule<G0>::Element Y = [f](const Cusp& c) {
        return f(c.num, c.num - c.den);
    };
    return GroupCocycle<FnModule<G0>>(&mod, CocycleSide::left, std::move(X), std::move(Y));
}

// ---------------------------------------------------------------------------
// The transport-series cocycle.

/// Formal products of cusp-to-cusp transports: an element is an ordered list
/// of legs (a,b), standing for the product of the iterated-period series
/// J_a^b at a fixed family, depth, and base point t.  The group operation
/// concatenates legs (degenerate legs a == b are dropped, nothing else is
/// simplified), the inverse reverses the list and swaps every leg, and
/// matrices act on endpoints only — the base point t is untouched, which is
/// what distinguishes this action from the weight action on series.
/// Equality evaluates both sides to series (one transport per distinct leg,
/// cached) and compares within the module tolerance.
class PathChainModule {
public:
    struct Element {
        std::vector<std::pair<Cusp, Cusp>> legs;
        std::string str() const;
    };

    PathChainModule(const FormFamily& fam, Complex t, TransportOptions topt = {},
                    double tol = 1e-7);

    Element identity() const { return {}; }
    /// The single-leg chain for J_a^b (the identity chain when a == b).
    Element generator(const Cusp& a, const Cusp& b) const;

    Element op(const Element& l, const Element& r) const;
    Element inverse(const Element& x) const;
    Element act(const UniModular& g, const Element& x) const;
    bool equal(const Element& a, const Element& b) const;
    std::string str(const Element& x) const { return x.str(); }

    /// The series the chain stands for: the ordered product of its legs'
    /// transports.
    NCSeries evaluate(const Element& x) const;

    const FormFamily& family() const { return *fam_; }
    Complex base_point() const { return t_; }
    double tolerance() const { return tol_; }

private:
    const FormFamily* fam_;
    Complex t_;
    TransportOptions topt_;
    double tol_;
    mutable std::map<std::string, NCSeries> leg_cache_;
};

/// Residuals of the Dedekind-cocycle structure of the transports
/// X = J_0^inf, Y = J_1^0 at base point t in the closed lower half plane:
/// the order-2 relation X·σX = 1, the order-3 relation Y·τY·τ²Y = 1, the
/// Dedekind identity τX = Y, and the cusp-orbit cocycle law
/// J_{γ1γ2 a}^a = J_{γ1 a}^a · γ1 J_{γ2 a}^a on random short words γ1, γ2
/// (base cusps rotating through inf, 0, 1).  Products are evaluated
/// numerically factor by factor — no symbolic cancellation — so every
/// residual is a genuine transport identity check.
struct PathCocycleReport {
    double sigma_relation = 0.0;
    double tau_relation = 0.0;
    double dedekind_identity = 0.0;
    double law_worst = 0.0;
    int law_pairs = 0;

    double worst() const;
};

PathCocycleReport path_cocycle_check(const FormFamily& fam, Complex t,
                                     const TransportOptions& topt = {},
                                     int random_pairs = 20, unsigned seed = 20240601);

// ---------------------------------------------------------------------------
// Random instances for property tests.

/// A random modular-group element: a random reduced word of at most
/// max_letters letters, recomposed to a matrix.
UniModular random_modular_word(std::mt19937& rng, int max_letters);

/// A random generator pair (X, Y) in the finite-support free-group module
/// satisfying the cocycle relations exactly: X is built on 2-orbits of the
/// order-2 generator (value and inverse), Y on 3-orbits of the order-3
/// generator (two free values, third forced by the triple product).
std::pair<MapModule<FreeGroup>::Element, MapModule<FreeGroup>::Element>
random_relation_pair(FreeGroup& g, std::mt19937& rng, int orbits = 2);

}  // namespace ncperiods
