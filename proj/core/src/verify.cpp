#include "ncperiods/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ncperiods/cocycles.hpp"
#include "ncperiods/forms.hpp"
#include "ncperiods/iterated_periods.hpp"
#include "ncperiods/modular_group.hpp"
#include "ncperiods/multipliers.hpp"
#include "ncperiods/quadrature.hpp"
#include "ncperiods/rational.hpp"
#include "ncperiods/reciprocity.hpp"

namespace ncperiods {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using nlohmann::json;

std::string weight_tag(double w) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "w%.4g", w);
    return buf;
}

std::string form_label(const CuspForm& f) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "eta_power w=%.4g", f.weight());
    return buf;
}

QuadratureOptions quad_options(const Config& cfg) {
    QuadratureOptions opt;
    opt.tol = cfg.quad_tol;
    return opt;
}

TransportOptions transport_options(const Config& cfg) {
    TransportOptions opt;
    opt.tol = cfg.transport_tol;
    return opt;
}

// Deterministic per-check seeding: the sweeps must not change when another
// check adds or removes a draw, so every sweep owns its own engine.
std::mt19937 sweep_rng(const Config& cfg, std::uint32_t salt) {
    std::seed_seq seq{cfg.seed, salt};
    return std::mt19937(seq);
}

Complex random_upper_half_point(std::mt19937& rng, double re_span, double im_lo,
                                double im_hi) {
    std::uniform_real_distribution<double> re(-re_span, re_span);
    std::uniform_real_distribution<double> im(im_lo, im_hi);
    return Complex(re(rng), im(rng));
}

struct NamedGenerator {
    const char* name;
    UniModular g;
};

std::vector<NamedGenerator> generator_set() {
    return {{"sigma", sigma_gen()}, {"theta", theta_gen()}, {"tau", tau_gen()}};
}

}  // namespace

Report check_multiplier_values(const Config& cfg) {
    Report rep("multiplier-values");
    rep.set_config(cfg.snapshot());
    const double tol = 1e-12;
    for (double w : {0.5, 5.3, 12.0}) {
        const EtaPowerMultiplier v(w);
        const struct {
            const char* name;
            UniModular g;
            Complex expected;
        } cases[] = {
            {"sigma", sigma_gen(), std::polar(1.0, -kPi * w / 2)},
            {"theta", theta_gen(), std::polar(1.0, kPi * w / 6)},
            {"theta-sigma-theta", theta_sigma_theta(), std::polar(1.0, -kPi * w / 6)},
        };
        for (const auto& c : cases) {
            rep.add_residual("multiplier-values/" + weight_tag(w) + "/" + c.name,
                             "v(g) = unit phase exp(i pi w r(g) / 6)",
                             json{{"w", w}, {"g", c.name}}.dump(),
                             std::abs(v(c.g) - c.expected), tol);
        }
    }
    return rep;
}

Report check_automorphy_cocycle(const Config& cfg) {
    Report rep("automorphy-cocycle");
    rep.set_config(cfg.snapshot());
    const int triples = 100;
    const double tol = 1e-10;
    int windex = 0;
    for (double w : CuspForm::builtin_weights()) {
        const EtaPowerMultiplier mult(w);
        MultiplierFn v = [mult](const UniModular& g) { return mult(g); };
        auto rng = sweep_rng(cfg, 0x0c0c'0001u + static_cast<std::uint32_t>(windex++));
        double worst = 0.0;
        std::string worst_g, worst_d;
        Complex worst_z;
        for (int i = 0; i < triples; ++i) {
            const UniModular g = random_modular_word(rng, 6);
            const UniModular d = random_modular_word(rng, 6);
            const Complex z = random_upper_half_point(rng, 2.0, 0.1, 3.0);
            const double r = cocycle_residual(v, w, g, d, z);
            if (r > worst) {
                worst = r;
                worst_g = g.str();
                worst_d = d.str();
                worst_z = z;
            }
        }
        rep.add_residual("automorphy-cocycle/" + weight_tag(w),
                         "j(g d, z) = j(g, d z) j(d, z)",
                         json{{"w", w},
                              {"triples", triples},
                              {"worst_g", worst_g},
                              {"worst_d", worst_d},
                              {"worst_z", {worst_z.real(), worst_z.imag()}}}
                             .dump(),
                         worst, tol);
    }
    return rep;
}

Report check_modular_invariance(const Config& cfg) {
    Report rep("modular-invariance");
    rep.set_config(cfg.snapshot());
    const int points = 20;
    const double tol = 1e-8;
    int windex = 0;
    for (double w : CuspForm::builtin_weights()) {
        const CuspForm F(w, cfg.expansion_terms);
        rep.note_form(form_label(F), F.content_hash());
        const MultiplierFn v = F.multiplier_fn();
        for (const auto& [name, g] : generator_set()) {
            auto rng = sweep_rng(cfg, 0x1af0'0001u + static_cast<std::uint32_t>(windex++));
            double worst = 0.0;
            Complex worst_z;
            for (int i = 0; i < points; ++i) {
                const Complex z = random_upper_half_point(rng, 1.5, 0.15, 2.5);
                const Complex lhs = F.evaluate(act_moebius(g, z));
                const Complex rhs =
                    automorphy_factor(v, w, g, z, HalfPlane::upper) * F.evaluate(z);
                const double r =
                    std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
                if (r > worst) {
                    worst = r;
                    worst_z = z;
                }
            }
            rep.add_residual("modular-invariance/" + weight_tag(w) + "/" + name,
                             "F(g z) = v(g) (cz+d)^w F(z)",
                             json{{"w", w},
                                  {"g", name},
                                  {"points", points},
                                  {"worst_z", {worst_z.real(), worst_z.imag()}}}
                                 .dump(),
                             worst, tol);
        }
    }
    return rep;
}

std::complex<double> delta_moment_oracle(int s) {
    if (s < 0 || s > 10)
        throw std::domain_error("delta_moment_oracle: s must be in 0..10");
    // tau(n) = coefficient of q^{n-1} in prod (1-q^m)^24, exact integers.
    static const std::vector<double> tau = [] {
        const std::vector<BigInt> exact = eta_power_coefficients_exact(24, 48);
        std::vector<double> t(exact.size());
        for (std::size_t i = 0; i < exact.size(); ++i)
            t[i] = exact[i].convert_to<double>();
        return t;
    }();
    const auto T = [](int sv) {
        const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        double sum = 0.0;
        for (std::size_t n = 1; n <= tau.size(); ++n) {
            const double x = 2 * kPi * static_cast<double>(n);
            // Gamma(sv+1, x) = sv! e^{-x} sum_{j<=sv} x^j / j!
            double inner = 0.0, term = 1.0;
            for (int j = 0; j <= sv; ++j) {
                inner += term;
                term *= x / (j + 1);
            }
            double sfact = 1.0;
            for (int j = 2; j <= sv; ++j) sfact *= j;
            sum += tau[n - 1] * sfact * std::exp(-x) * inner / std::pow(x, sv + 1);
        }
        return ipow[(sv + 1) % 4] * sum;
    };
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    return T(s) - sign * T(10 - s);
}

Report check_moment_oracle(const Config& cfg) {
    Report rep("moment-oracle");
    rep.set_config(cfg.snapshot());
    const double tol = 1e-8;
    const CuspForm delta(12.0, std::max<std::size_t>(cfg.expansion_terms, 64));
    rep.note_form(form_label(delta), delta.content_hash());
    const QuadratureOptions qopt = quad_options(cfg);
    for (int s = 0; s <= 10; ++s) {
        const OneForm w{&delta, static_cast<double>(s), Complex(0.0, 0.0)};
        const QuadResult quad =
            period_integral(w, Cusp(0, 1), Cusp::infinity(), qopt);
        const Complex oracle = delta_moment_oracle(s);
        char id[32];
        std::snprintf(id, sizeof id, "moment-oracle/s%02d", s);
        rep.add_residual(id, "int_0^{i inf} Delta(z) z^s dz = Gamma-factor sum",
                         json{{"s", s}}.dump(),
                         std::abs(quad.value - oracle) / std::abs(oracle), tol);
    }
    return rep;
}

Report check_classical_reciprocity(const Config& cfg) {
    Report rep("classical-reciprocity");
    rep.set_config(cfg.snapshot());
    const long long bound = 200;
    const auto t0 = std::chrono::steady_clock::now();
    long long pairs = 0;
    std::vector<std::pair<long long, long long>> offenders;
    for (long long p = 1; p <= bound; ++p) {
        for (long long q = 1; q <= bound; ++q) {
            if (gcd_ll(p, q) != 1) continue;
            ++pairs;
            if (reciprocity_residual_classical(CoprimePair(p, q)) != 0 &&
                offenders.size() < 12)
                offenders.emplace_back(p, q);
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.add_exact("classical-reciprocity/grid",
                  "d(p,q) - d(q,-p) = (p^2 + q^2 - 3pq + 1) / 12pq, exact",
                  json{{"bound", bound}, {"pairs", pairs}}.dump(), offenders.empty());
    for (auto [p, q] : offenders)
        rep.add_exact("classical-reciprocity/offender/p" + std::to_string(p) + "q" +
                          std::to_string(q),
                      "d(p,q) - d(q,-p) = (p^2 + q^2 - 3pq + 1) / 12pq, exact",
                      json{{"p", p}, {"q", q}}.dump(), false);
    rep.add_residual("classical-reciprocity/runtime", "grid sweep runtime (seconds)",
                     json{{"pairs", pairs}}.dump(), seconds, 5.0);
    return rep;
}

Report check_weight_action(const Config& cfg) {
    Report rep("weight-action");
    rep.set_config(cfg.snapshot());
    const double tol = cfg.series_tolerance(1e-6);
    const TransportOptions topt = transport_options(cfg);
    const Complex t(0.0, -1.0);

    const CuspForm delta(12.0, cfg.expansion_terms);
    const CuspForm eta106(5.3, cfg.expansion_terms);
    rep.note_form(form_label(delta), delta.content_hash());
    rep.note_form(form_label(eta106), eta106.content_hash());

    const struct {
        const char* tag;
        std::vector<CuspForm> forms;
    } families[] = {
        {"delta", {delta}},
        {"delta+eta10.6", {delta, eta106}},
    };
    const NamedGenerator gens[] = {{"sigma", sigma_gen()},
                                   {"theta", theta_gen()},
                                   {"tau", tau_gen()},
                                   {"theta-sigma-theta", theta_sigma_theta()}};
    for (const auto& famdef : families) {
        const FormFamily fam(famdef.forms, cfg.depth);
        for (const auto& [name, g] : gens) {
            const double r =
                equivariance_residual(fam, g, Cusp(0, 1), Cusp::infinity(), t, topt);
            rep.add_residual(std::string("weight-action/") + famdef.tag + "/" + name,
                             "v_w(g)^{-1} (ct+d)^{k_w} J_0^inf(g t)[w] = "
                             "J_{g^{-1}0}^{g^{-1}inf}(t)[w]",
                             json{{"family", famdef.tag},
                                  {"g", name},
                                  {"depth", cfg.depth},
                                  {"t", {t.real(), t.imag()}}}
                                 .dump(),
                             r, tol);
        }
    }
    return rep;
}

Report check_reciprocity_series(const Config& cfg) {
    Report rep("reciprocity-series");
    rep.set_config(cfg.snapshot());
    const QuadratureOptions qopt = quad_options(cfg);
    const TransportOptions topt = transport_options(cfg);

    // Scalar three-term relation on the coprime grid, every built-in form.
    for (double w : CuspForm::builtin_weights()) {
        const FormFamily fam({CuspForm(w, cfg.expansion_terms)}, 1);
        rep.note_form(form_label(fam.form(0)), fam.form(0).content_hash());
        double worst = 0.0;
        long long wp = 0, wq = 0;
        for (long long p = 1; p <= 5; ++p)
            for (long long q = 1; q <= 5; ++q) {
                if (gcd_ll(p, q) != 1) continue;
                const double r = scalar_recursion_residual(fam, 0, p, q, qopt);
                if (r > worst) {
                    worst = r;
                    wp = p;
                    wq = q;
                }
            }
        rep.add_residual(
            "reciprocity-scalar/" + weight_tag(w),
            "s(p,q) = v(th)^{-1} s(p,q+p) + v(tst)^{-1} s(q+p,q)",
            json{{"w", w}, {"grid", 5}, {"worst_p", wp}, {"worst_q", wq}}.dump(), worst,
            1e-7);
    }

    // Full series recursion at depth, single-form family on the five pairs.
    const double series_tol = cfg.series_tolerance(1e-6);
    const CuspForm delta(12.0, cfg.expansion_terms);
    const FormFamily fam_delta({delta}, cfg.depth);
    for (auto [p, q] : {std::pair<long long, long long>{1, 1},
                        {1, 2},
                        {2, 1},
                        {2, 3},
                        {3, 2}}) {
        const double r = recursion_residual(fam_delta, p, q, topt);
        rep.add_residual("reciprocity-series/delta/p" + std::to_string(p) + "q" +
                             std::to_string(q),
                         "f(p,q) = v(th)*^{-1} f(p,q+p) . v(tst)*^{-1} f(q+p,q)",
                         json{{"p", p}, {"q", q}, {"depth", cfg.depth}}.dump(), r,
                         series_tol);
    }

    // The same recursion for the two-form family at depth 2.
    const FormFamily fam_two({delta, CuspForm(5.3, cfg.expansion_terms)},
                             std::min<std::size_t>(cfg.depth, 2));
    rep.add_residual("reciprocity-series/delta+eta10.6/p1q1",
                     "f(p,q) = v(th)*^{-1} f(p,q+p) . v(tst)*^{-1} f(q+p,q)",
                     json{{"p", 1}, {"q", 1}, {"depth", fam_two.depth()}}.dump(),
                     recursion_residual(fam_two, 1, 1, topt), series_tol);

    // Path inversion, interior and boundary evaluation points.
    rep.add_residual("reciprocity-inversion/interior",
                     "J_0^inf(t) . J_inf^0(t) = 1",
                     json{{"t", {0.0, -1.0}}, {"depth", cfg.depth}}.dump(),
                     inverse_identity_residual(fam_delta, Cusp(0, 1), Cusp::infinity(),
                                               Complex(0.0, -1.0), topt),
                     1e-8);
    rep.add_residual("reciprocity-inversion/boundary",
                     "J_0^inf(t) . J_inf^0(t) = 1",
                     json{{"t", {-2.0 / 3.0, 0.0}}, {"depth", cfg.depth}}.dump(),
                     inverse_identity_residual(fam_delta, Cusp(0, 1), Cusp::infinity(),
                                               Complex(-2.0 / 3.0, 0.0), topt),
                     1e-8);
    return rep;
}

Report check_path_cocycle(const Config& cfg) {
    Report rep("path-cocycle");
    rep.set_config(cfg.snapshot());
    const double tol = cfg.series_tolerance(1e-6);
    const CuspForm delta(12.0, cfg.expansion_terms);
    rep.note_form(form_label(delta), delta.content_hash());
    const FormFamily fam({delta}, cfg.depth);
    const Complex t(0.0, -1.0);
    const int pairs = 20;
    const PathCocycleReport pc =
        path_cocycle_check(fam, t, transport_options(cfg), pairs, cfg.seed);
    const std::string inputs =
        json{{"family", "delta"}, {"depth", cfg.depth}, {"t", {t.real(), t.imag()}}}
            .dump();
    rep.add_residual("path-cocycle/order-2", "X . sigma X = 1", inputs,
                     pc.sigma_relation, tol);
    rep.add_residual("path-cocycle/order-3", "Y . tau Y . tau^2 Y = 1", inputs,
                     pc.tau_relation, tol);
    rep.add_residual("path-cocycle/dedekind", "tau X = Y", inputs, pc.dedekind_identity,
                     tol);
    rep.add_residual("path-cocycle/law",
                     "J_{g1 g2 a}^a = J_{g1 a}^a . g1 J_{g2 a}^a",
                     json{{"family", "delta"}, {"depth", cfg.depth}, {"pairs", pc.law_pairs}}
                         .dump(),
                     pc.law_worst, tol);
    return rep;
}

Report check_composition_shuffle(const Config& cfg) {
    Report rep("composition-shuffle");
    rep.set_config(cfg.snapshot());
    const TransportOptions topt = transport_options(cfg);
    const Complex t(0.0, -1.0);

    const CuspForm delta(12.0, cfg.expansion_terms);
    rep.note_form(form_label(delta), delta.content_hash());
    const FormFamily fam_delta({delta}, cfg.depth);
    const struct {
        const char* tag;
        Complex c;
    } midpoints[] = {{"i-half", {0.0, 0.5}}, {"i", {0.0, 1.0}}, {"2i", {0.0, 2.0}}};
    for (const auto& m : midpoints) {
        rep.add_residual(std::string("composition/") + m.tag,
                         "J_0^inf = J_c^inf . J_0^c",
                         json{{"c", {m.c.real(), m.c.imag()}}, {"depth", cfg.depth}}
                             .dump(),
                         composition_residual(fam_delta, Cusp(0, 1), Cusp::infinity(), t,
                                              m.c, topt),
                         1e-8);
    }

    const CuspForm eta106(5.3, cfg.expansion_terms);
    rep.note_form(form_label(eta106), eta106.content_hash());
    const FormFamily fam_two({delta, eta106}, cfg.depth);
    const NCSeries J = iterated_period(fam_two, Cusp(0, 1), Cusp::infinity(), t, topt);
    rep.add_residual("shuffle/delta+eta10.6",
                     "J[u] J[v] = sum over shuffles of (u, v) of J[.]",
                     json{{"depth", cfg.depth}, {"t", {t.real(), t.imag()}}}.dump(),
                     shuffle_residual(J), cfg.series_tolerance(1e-7));
    return rep;
}

Report check_symbol_algebra(const Config& cfg) {
    Report rep("symbol-algebra");
    rep.set_config(cfg.snapshot());

    // Word-exact reconstruction over the free group: nothing can cancel by
    // accident, so the identities hold only if the algebra is right.
    {
        FreeGroup g;
        PairFn<FreeGroup> f = free_reciprocity(g);
        const ValidationReport vf = validate_reciprocity(g, f, 30);
        rep.add_exact("symbol-algebra/free/reciprocity",
                      "f(p,-q) = f(-p,q); f(p,q) f(-q,p) = 1; "
                      "f(p,p+q) f(p+q,q) = f(p,q)",
                      json{{"bound", 30}, {"checks", vf.checks}}.dump(), vf.ok());
        const PairFn<FreeGroup> D = reconstruct_symbol(g, f);
        const ValidationReport vd = validate_symbol(g, D, f, 30);
        rep.add_exact("symbol-algebra/free/symbol",
                      "D(p,q+p) = D(p,q); D(p,-q) = D(-p,q); "
                      "D(p,q) D(q,-p)^{-1} = f(p,q)",
                      json{{"bound", 30}, {"checks", vd.checks}}.dump(), vd.ok());
    }

    // Round-trip of the side-swapping conversion on random exact cocycles.
    {
        FreeGroup g;
        const MapModule<FreeGroup> mod{g};
        auto rng = sweep_rng(cfg, 0x5e5e'0001u);
        const int cocycles = 50;
        long long words = 0;
        bool ok = true;
        for (int i = 0; i < cocycles && ok; ++i) {
            auto [X, Y] = random_relation_pair(g, rng);
            const CocycleSide side = (i % 2) ? CocycleSide::right : CocycleSide::left;
            const auto c = pair_to_cocycle(mod, X, Y, side);
            const auto back = left_right_convert(left_right_convert(c));
            ok = ok && back.side() == c.side();
            for (int k = 0; k < 4 && ok; ++k) {
                const UniModular w = random_modular_word(rng, 5);
                ok = mod.equal(c(w), back(w));
                ++words;
            }
        }
        rep.add_exact("symbol-algebra/convert-round-trip",
                      "convert(convert(c)) = c",
                      json{{"cocycles", cocycles}, {"words", words}}.dump(), ok);
    }

    // The classical cocycle over the rationals: generator relations and the
    // Dedekind identity hold exactly at every cusp with small entries.
    {
        const FnModule<RationalAddGroup> mod{RationalAddGroup{}};
        const auto coc =
            reciprocity_to_dedekind_cocycle(mod, classical_reciprocity(mod.base));
        const auto X = coc(sigma_gen());
        const auto Y = coc(tau_gen());
        const auto order2 = mod.op(X, mod.act(sigma_gen(), X));
        const auto order3 =
            mod.op(Y, mod.op(mod.act(tau_gen(), Y),
                             mod.act(tau_gen() * tau_gen(), Y)));
        const auto tauX = mod.act(tau_gen(), X);

        long long checks = 0;
        bool ok2 = true, ok3 = true, okd = true;
        const long long bound = 30;
        auto visit = [&](const Cusp& c) {
            ++checks;
            if (order2(c) != 0) ok2 = false;
            if (order3(c) != 0) ok3 = false;
            if (tauX(c) != Y(c)) okd = false;
        };
        visit(Cusp::infinity());
        for (long long num = -bound; num <= bound; ++num)
            for (long long den = 1; den <= bound; ++den) {
                if (gcd_ll(num, den) != 1) continue;
                visit(Cusp(num, den));
            }
        const std::string inputs = json{{"bound", bound}, {"cusps", checks}}.dump();
        rep.add_exact("symbol-algebra/rational/order-2", "X + sigma X = 0", inputs, ok2);
        rep.add_exact("symbol-algebra/rational/order-3",
                      "Y + tau Y + tau^2 Y = 0", inputs, ok3);
        rep.add_exact("symbol-algebra/rational/dedekind", "tau X = Y", inputs, okd);
    }
    return rep;
}

const std::vector<Suite>& suites() {
    static const std::vector<Suite> table = {
        {"multiplier",
         "closed-form multiplier values, automorphy cocycle law, modular invariance",
         {&check_multiplier_values, &check_automorphy_cocycle,
          &check_modular_invariance}},
        {"lemma241", "moment oracle, transport weight action, composition and shuffle",
         {&check_moment_oracle, &check_weight_action, &check_composition_shuffle}},
        {"thm32",
         "reciprocity series: scalar three-term relation, recursion, inversion",
         {&check_reciprocity_series}},
        {"thm351", "path cocycle relations and the cocycle law", {&check_path_cocycle}},
        {"dedekind", "classical Dedekind reciprocity over exact rationals",
         {&check_classical_reciprocity}},
        {"cocycle",
         "exact symbol algebra: reconstruction, conversion round-trip, rational "
         "relations",
         {&check_symbol_algebra}},
        {"all", "every check in every suite",
         {&check_multiplier_values, &check_automorphy_cocycle, &check_modular_invariance,
          &check_moment_oracle, &check_classical_reciprocity, &check_weight_action,
          &check_reciprocity_series, &check_path_cocycle, &check_composition_shuffle,
          &check_symbol_algebra}},
    };
    return table;
}

bool suite_known(const std::string& name) {
    for (const Suite& s : suites())
        if (s.name == name) return true;
    return false;
}

Report run_suite(const std::string& name, const Config& cfg) {
    cfg.validate();
    const Suite* suite = nullptr;
    for (const Suite& s : suites())
        if (s.name == name) suite = &s;
    if (!suite) {
        std::string known;
        for (const Suite& s : suites()) known += (known.empty() ? "" : ", ") + s.name;
        throw ConfigError("unknown suite \"" + name + "\" (known: " + known + ")");
    }

    Report rep(name);
    rep.set_config(cfg.snapshot());
    std::vector<std::future<Report>> futures;
    futures.reserve(suite->checks.size());
    for (auto check : suite->checks)
        futures.push_back(std::async(std::launch::async, check, std::cref(cfg)));
    for (auto& f : futures) rep.absorb(f.get());
    return rep;
}

}  // namespace ncperiods
