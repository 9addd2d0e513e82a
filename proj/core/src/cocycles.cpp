#include "ncperiods/cocycles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ncperiods/quadrature.hpp"

namespace ncperiods {

// ---------------------------------------------------------------------------
// Free group.

std::size_t FreeWord::length() const {
    std::size_t n = 0;
    for (const auto& [id, exp] : syllables) n += static_cast<std::size_t>(std::abs(exp));
    return n;
}

FreeWord FreeWord::inverse() const {
    FreeWord out;
    out.syllables.reserve(syllables.size());
    for (auto it = syllables.rbegin(); it != syllables.rend(); ++it)
        out.syllables.emplace_back(it->first, -it->second);
    return out;
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
    FreeWord out = *this;
    for (const auto& s : o.syllables) {
        if (!out.syllables.empty() && out.syllables.back().first == s.first) {
            out.syllables.back().second += s.second;
            if (out.syllables.back().second == 0) out.syllables.pop_back();
        } else {
            out.syllables.push_back(s);
        }
    }
    return out;
}

FreeGroup::FreeGroup()
    : names_(std::make_shared<std::vector<std::string>>()),
      index_(std::make_shared<std::map<std::string, int>>()) {}

FreeWord FreeGroup::generator(const std::string& name) {
    auto [it, inserted] = index_->try_emplace(name, static_cast<int>(names_->size()));
    if (inserted) names_->push_back(name);
    FreeWord w;
    w.syllables.emplace_back(it->second, 1);
    return w;
}

std::string FreeGroup::str(const FreeWord& w) const {
    if (w.is_identity()) return "1";
    std::string out;
    for (const auto& [id, exp] : w.syllables) {
        if (!out.empty()) out += ".";
        if (id >= 0 && id < static_cast<int>(names_->size()))
            out += (*names_)[static_cast<std::size_t>(id)];
        else
            out += "g" + std::to_string(id);
        if (exp != 1) out += "^" + std::to_string(exp);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Scalar groups.

std::string RationalAddGroup::str(const Element& a) const {
    std::ostringstream os;
    os << a;
    return os.str();
}

std::string ComplexAddGroup::str(const Element& a) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", a.real(), a.imag());
    return buf;
}

std::string ValidationReport::str() const {
    std::string out = std::to_string(checks) + " checks, " +
                      std::to_string(violations.size()) + " violations";
    std::size_t shown = 0;
    for (const auto& v : violations) {
        if (++shown > 8) {
            out += "; ...";
            break;
        }
        out += (shown == 1 ? ": " : "; ") + v.equation + " at (" + std::to_string(v.p) +
               "," + std::to_string(v.q) + ")";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reciprocity functions.

namespace {

// Reduce any coprime pair to the positive quadrant using the reciprocity
// equations themselves: f(p,q) = f(-q,p)^{-1} trades a negative second
// argument, its mirror trades a negative first one, and a double sign flip
// is free.  The boundary pairs are f(±1,0) = f10 and f(0,±1) = f10^{-1}
// (forced by f(p,q) f(-q,p) = 1 at (1,0)).  At most two steps reach the
// positive quadrant, where `positive` takes over.
template <class G, class Positive>
typename G::Element extend_signs(const G& g, const Positive& positive,
                                 const typename G::Element& f10, long long p,
                                 long long q, const char* who) {
    detail::require_coprime(p, q, who);
    if (q == 0) return f10;
    if (p == 0) return g.inverse(f10);
    if (p < 0 && q < 0) return extend_signs(g, positive, f10, -p, -q, who);
    if (p < 0) return g.inverse(extend_signs(g, positive, f10, q, -p, who));
    if (q < 0) return g.inverse(extend_signs(g, positive, f10, -q, p, who));
    return positive(p, q);
}

Rational classical_positive(long long p, long long q) {
    const Rational rp(p), rq(q);
    return (rp * rp + rq * rq - 3 * rp * rq + 1) / (12 * rp * rq);
}

long long binomial_ll(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long out = 1;
    for (long long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

}  // namespace

Rational classical_reciprocity_value(long long p, long long q) {
    static const RationalAddGroup g;
    return extend_signs(g, classical_positive, Rational(0), p, q,
                        "classical_reciprocity");
}

PairFn<RationalAddGroup> classical_reciprocity(const RationalAddGroup&) {
    return [](long long p, long long q) { return classical_reciprocity_value(p, q); };
}

PairFn<FreeGroup> free_reciprocity(FreeGroup& g) {
    struct State {
        FreeGroup group;
        std::map<std::pair<long long, long long>, FreeWord> memo;

        // Values on the positive quadrant.  Pairs with p < q get fresh
        // generators; pairs with p > q unwind one step of the subtractive
        // Euclidean algorithm through f(p,q) = f(p-q,p)^{-1} f(p-q,q), which
        // terminates because p + q strictly decreases and coprimality pins
        // the diagonal to (1,1), where the value is forced to the identity.
        FreeWord positive(long long p, long long q) {
            if (p == q) return {};
            const auto key = std::make_pair(p, q);
            if (auto it = memo.find(key); it != memo.end()) return it->second;
            FreeWord w;
            if (p < q)
                w = group.generator("x" + std::to_string(p) + "_" + std::to_string(q));
            else
                w = group.op(group.inverse(positive(p - q, p)), positive(p - q, q));
            memo.emplace(key, w);
            return w;
        }
    };
    auto st = std::make_shared<State>(State{g, {}});
    return [st](long long p, long long q) {
        return extend_signs(
            st->group, [st](long long a, long long b) { return st->positive(a, b); },
            FreeWord{}, p, q, "free_reciprocity");
    };
}

PairFn<ComplexAddGroup> period_polynomial_reciprocity(const ComplexAddGroup& g,
                                                      const CuspForm& form,
                                                      const QuadratureOptions& qopt) {
    const double w = form.weight();
    const long long k = std::llround(w) - 2;
    if (k < 2 || k % 2 != 0 || std::abs(w - static_cast<double>(k + 2)) > 1e-12)
        throw std::domain_error(
            "period_polynomial_reciprocity: weight must be an even integer >= 4");
    const Complex v_sigma = form.multiplier()(sigma_gen());
    const Complex v_theta = form.multiplier()(theta_gen());
    if (std::abs(v_sigma - 1.0) > 1e-12 || std::abs(v_theta - 1.0) > 1e-12)
        throw std::domain_error(
            "period_polynomial_reciprocity: multiplier must be trivial for a "
            "single-valued period polynomial");

    // Moments m_s = int_0^inf z^s F(z) dz, computed once; f is then the
    // homogenized polynomial sum_s binom(k,s) (-q)^{k-s} p^s m_s, finite and
    // sign-complete with no extension step needed.
    auto moments = std::make_shared<std::vector<Complex>>();
    moments->reserve(static_cast<std::size_t>(k) + 1);
    for (long long s = 0; s <= k; ++s) {
        const OneForm omega{&form, static_cast<double>(s), Complex(0.0)};
        moments->push_back(
            period_integral(omega, Cusp(0, 1), Cusp::infinity(), qopt).value);
    }
    return [g, moments, k](long long p, long long q) {
        detail::require_coprime(p, q, "period_polynomial_reciprocity");
        Complex acc(0.0);
        for (long long s = 0; s <= k; ++s) {
            const double coeff = static_cast<double>(binomial_ll(k, s)) *
                                 std::pow(static_cast<double>(-q),
                                          static_cast<double>(k - s)) *
                                 std::pow(static_cast<double>(p), static_cast<double>(s));
            acc += coeff * (*moments)[static_cast<std::size_t>(s)];
        }
        return acc;
    };
}

std::vector<Cusp> default_probe_cusps() {
    return {Cusp::infinity(), Cusp(0, 1),  Cusp(1, 1),  Cusp(-1, 1), Cusp(2, 1),
            Cusp(-2, 1),      Cusp(3, 1),  Cusp(1, 2),  Cusp(-1, 2), Cusp(3, 2),
            Cusp(2, 3),       Cusp(-5, 3), Cusp(5, 2),  Cusp(-8, 5), Cusp(13, 8)};
}

// ---------------------------------------------------------------------------
// Transport-series cocycle.

std::string PathChainModule::Element::str() const {
    if (legs.empty()) return "1";
    std::string out;
    for (const auto& [a, b] : legs) {
        if (!out.empty()) out += ".";
        out += "J(" + a.str() + "->" + b.str() + ")";
    }
    return out;
}

PathChainModule::PathChainModule(const FormFamily& fam, Complex t, TransportOptions topt,
                                 double tol)
    : fam_(&fam), t_(t), topt_(topt), tol_(tol) {}

PathChainModule::Element PathChainModule::generator(const Cusp& a, const Cusp& b) const {
    if (a == b) return {};
    Element out;
    out.legs.emplace_back(a, b);
    return out;
}

PathChainModule::Element PathChainModule::op(const Element& l, const Element& r) const {
    Element out;
    out.legs.reserve(l.legs.size() + r.legs.size());
    for (const auto& leg : l.legs)
        if (leg.first != leg.second) out.legs.push_back(leg);
    for (const auto& leg : r.legs)
        if (leg.first != leg.second) out.legs.push_back(leg);
    return out;
}

PathChainModule::Element PathChainModule::inverse(const Element& x) const {
    Element out;
    out.legs.reserve(x.legs.size());
    for (auto it = x.legs.rbegin(); it != x.legs.rend(); ++it)
        out.legs.emplace_back(it->second, it->first);
    return out;
}

PathChainModule::Element PathChainModule::act(const UniModular& g, const Element& x) const {
    Element out;
    out.legs.reserve(x.legs.size());
    for (const auto& [a, b] : x.legs) out.legs.emplace_back(act_cusp(g, a), act_cusp(g, b));
    return out;
}

NCSeries PathChainModule::evaluate(const Element& x) const {
    NCSeries out = NCSeries::one(fam_->size(), fam_->depth());
    for (const auto& [a, b] : x.legs) {
        const std::string key = a.str() + ">" + b.str();
        auto it = leg_cache_.find(key);
        if (it == leg_cache_.end())
            it = leg_cache_.emplace(key, iterated_period(*fam_, a, b, t_, topt_)).first;
        out = out * it->second;
    }
    return out;
}

bool PathChainModule::equal(const Element& a, const Element& b) const {
    return distance(evaluate(a), evaluate(b)) <= tol_;
}

double PathCocycleReport::worst() const {
    return std::max({sigma_relation, tau_relation, dedekind_identity, law_worst});
}

UniModular random_modular_word(std::mt19937& rng, int max_letters) {
    std::uniform_int_distribution<int> len(1, max_letters), pick(0, 2);
    GroupWord w;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
        switch (pick(rng)) {
        case 0: w.push(Letter::S); break;
        case 1: w.push(Letter::T); break;
        default: w.push(Letter::T2); break;
        }
    }
    return recompose(w);
}

PathCocycleReport path_cocycle_check(const FormFamily& fam, Complex t,
                                     const TransportOptions& topt, int random_pairs,
                                     unsigned seed) {
    const PathChainModule m(fam, t, topt);
    using El = PathChainModule::Element;
    const Cusp zero(0, 1), one_c(1, 1), inf = Cusp::infinity();
    const UniModular s = sigma_gen(), tau = tau_gen();
    const NCSeries unit = NCSeries::one(fam.size(), fam.depth());

    const El X = m.generator(zero, inf);
    const El Y = m.generator(one_c, zero);

    PathCocycleReport rep;
    rep.sigma_relation = distance(m.evaluate(m.op(X, m.act(s, X))), unit);
    rep.tau_relation = distance(
        m.evaluate(m.op(Y, m.op(m.act(tau, Y), m.act(tau * tau, Y)))), unit);
    rep.dedekind_identity = distance(m.evaluate(m.act(tau, X)), m.evaluate(Y));

    std::mt19937 rng(seed);
    const Cusp bases[3] = {inf, zero, one_c};
    for (int i = 0; i < random_pairs; ++i) {
        const UniModular g1 = random_modular_word(rng, 3);
        const UniModular g2 = random_modular_word(rng, 3);
        const Cusp a = bases[i % 3];
        const El lhs = m.generator(act_cusp(g1 * g2, a), a);
        const El rhs = m.op(m.generator(act_cusp(g1, a), a),
                            m.act(g1, m.generator(act_cusp(g2, a), a)));
        rep.law_worst = std::max(rep.law_worst, distance(m.evaluate(lhs), m.evaluate(rhs)));
        ++rep.law_pairs;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Random exact cocycle pairs.

std::pair<MapModule<FreeGroup>::Element, MapModule<FreeGroup>::Element>
random_relation_pair(FreeGroup& g, std::mt19937& rng, int orbits) {
    using MapEl = MapModule<FreeGroup>::Element;
    std::uniform_int_distribution<long long> num(-9, 9), den(0, 6);
    std::uniform_int_distribution<int> gen_pick(0, 2), sign_pick(0, 1), wlen(1, 3);
    const char* names[3] = {"a", "b", "c"};

    auto random_cusp = [&]() -> Cusp {
        while (true) {
            const long long n = num(rng), d = den(rng);
            if (d == 0) return Cusp::infinity();
            if (gcd_ll(std::llabs(n), d) == 1) return Cusp(n, d);
        }
    };
    auto random_word = [&]() -> FreeWord {
        while (true) {
            FreeWord w;
            const int n = wlen(rng);
            for (int i = 0; i < n; ++i) {
                const FreeWord x = g.generator(names[gen_pick(rng)]);
                w = w * (sign_pick(rng) ? x : x.inverse());
            }
            if (!w.is_identity()) return w;
        }
    };

    const UniModular s = sigma_gen(), t = tau_gen();
    MapEl X, Y;
    // X lives on 2-orbits {c, s c}: the value at s c is the inverse of the
    // value at c, which is exactly the order-2 relation pointwise.
    for (int placed = 0; placed < orbits;) {
        const Cusp c = random_cusp(), sc = act_cusp(s, c);
        if (X.count(c) || X.count(sc)) continue;
        const FreeWord w = random_word();
        X[c] = w;
        X[sc] = w.inverse();
        ++placed;
    }
    // Y lives on 3-orbits {c, t c, t^2 c}: two values are free, the third is
    // forced by the triple product; the cyclic shifts of the relation then
    // hold automatically.
    for (int placed = 0; placed < orbits;) {
        const Cusp c = random_cusp(), tc = act_cusp(t, c), t2c = act_cusp(t * t, c);
        if (Y.count(c) || Y.count(tc) || Y.count(t2c)) continue;
        const FreeWord w1 = random_word();
        FreeWord w2 = random_word();
        while ((w1 * w2).is_identity()) w2 = random_word();
        Y[c] = w1;
        Y[t2c] = w2;
        Y[tc] = (w1 * w2).inverse();
        ++placed;
    }
    return {X, Y};
}

}  // namespace ncperiods
