// ncperiods: command line surface over the library.
//
//   forms list | forms inspect <w>     built-in eta-power forms
//   verify <suite>                     run a named check suite, report + exit code
//   compute period|iterate|reciprocity numeric values with error estimates
//   symbols                            exact rational symbol tables (CSV-friendly)
//
// Configuration comes from (in increasing precedence) built-in defaults, an
// optional key=value config file, the NCPERIODS_CACHE_DIR environment
// variable, and command line flags.  Exit codes: 0 success / all checks pass,
// 1 verification failure, 2 usage or configuration error, 3 numeric failure
// (non-convergence).
//
// Everything here is plumbing; the mathematics lives in the library.

#include <cctype>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "ncperiods/cache.hpp"
#include "ncperiods/cocycles.hpp"
#include "ncperiods/config.hpp"
#include "ncperiods/forms.hpp"
#include "ncperiods/iterated_periods.hpp"
#include "ncperiods/modular_group.hpp"
#include "ncperiods/quadrature.hpp"
#include "ncperiods/rational.hpp"
#include "ncperiods/reciprocity.hpp"
#include "ncperiods/report.hpp"
#include "ncperiods/verify.hpp"

using namespace ncperiods;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Small parsers for command line literals.

/// Complex literal: "1", "-2.5", "i", "-i", "1.5i", "1+2i", "0.3-0.7e-2i".
Complex parse_complex(std::string s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw std::invalid_argument("empty complex literal");

    auto to_double = [&s](const std::string& num) {
        if (num.empty() || num == "+") return 1.0;
        if (num == "-") return -1.0;
        try {
            std::size_t used = 0;
            const double v = std::stod(num, &used);
            if (used == num.size()) return v;
        } catch (const std::exception&) {
        }
        throw std::invalid_argument("bad complex literal \"" + s + "\"");
    };

    if (t.back() != 'i' && t.back() != 'I') return Complex(to_double(t), 0.0);

    t.pop_back();  // imaginary part, possibly preceded by a real part
    // Split at the last top-level +/- (not a leading sign, not an exponent).
    std::size_t split = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return Complex(0.0, to_double(t));
    return Complex(to_double(t.substr(0, split)), to_double(t.substr(split)));
}

/// Cusp literal: "inf" (or "oo", "infinity"), an integer, or "p/q".
Cusp parse_cusp(const std::string& s) {
    std::string lower;
    for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "inf" || lower == "+inf" || lower == "oo" || lower == "infinity")
        return Cusp::infinity();
    const auto slash = s.find('/');
    auto to_ll = [&s](const std::string& num) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(num, &used);
            if (used == num.size()) return v;
        } catch (const std::exception&) {
        }
        throw std::invalid_argument("bad cusp literal \"" + s + "\" (want inf, n or p/q)");
    };
    if (slash == std::string::npos) return Cusp(to_ll(s), 1);
    return Cusp(to_ll(s.substr(0, slash)), to_ll(s.substr(slash + 1)));
}

std::string fmt_complex(Complex z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g %+.17gi", z.real(), z.imag());
    return buf;
}

// ---------------------------------------------------------------------------
// Output plumbing: every command renders to a string in the configured
// format, which goes to stdout or to --output.

void emit(const Config& cfg, const std::string& output_file, const std::string& text) {
    if (output_file.empty()) {
        std::fputs(text.c_str(), stdout);
        if (!text.empty() && text.back() != '\n') std::fputc('\n', stdout);
        return;
    }
    std::ofstream os(output_file, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + output_file);
    os << text;
    if (!text.empty() && text.back() != '\n') os << '\n';
    (void)cfg;
}

json config_json(const Config& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.snapshot()) j[k] = v;
    return j;
}

/// All words over `letters` letters of length <= depth, shortlex order,
/// rendered the same way the series JSON renders them (digit strings).
std::vector<Word> enumerate_words(std::size_t letters, std::size_t depth) {
    std::vector<Word> words{{}};
    std::size_t first_of_len = 0;
    for (std::size_t n = 1; n <= depth; ++n) {
        const std::size_t end = words.size();
        for (std::size_t i = first_of_len; i < end; ++i)
            for (std::size_t j = 0; j < letters; ++j) {
                Word w = words[i];
                w.push_back(static_cast<int>(j));
                words.push_back(std::move(w));
            }
        first_of_len = end;
    }
    return words;
}

std::string word_key(const Word& w) {
    std::string key;
    for (int letter : w) key += static_cast<char>('0' + letter);
    return key;
}

/// Word-coefficient table in the configured format.  `meta` rides along in
/// the JSON output and as comment-ish header lines in pretty output.
std::string render_series(const Config& cfg, const NCSeries& J, const json& meta) {
    const auto words = enumerate_words(J.letters(), J.depth());
    switch (cfg.format) {
        case OutputFormat::json: {
            json j = meta;
            j["letters"] = J.letters();
            j["depth"] = J.depth();
            j["config"] = config_json(cfg);
            json table = json::object();
            for (const auto& w : words) {
                const Complex c = J.coeff(w);
                table[word_key(w)] = {c.real(), c.imag()};
            }
            j["coefficients"] = table;
            return j.dump(2);
        }
        case OutputFormat::csv: {
            std::string out = "word,re,im\n";
            for (const auto& w : words) {
                const Complex c = J.coeff(w);
                char buf[96];
                std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g\n",
                              csv_field(word_key(w)).c_str(), c.real(), c.imag());
                out += buf;
            }
            return out;
        }
        case OutputFormat::pretty:
            break;
    }
    std::string out;
    for (auto it = meta.begin(); it != meta.end(); ++it)
        out += it.key() + ": " + (it->is_string() ? it->get<std::string>() : it->dump()) +
               "\n";
    // The empty word needs a marker that cannot collide with the letter
    // digit "1" when the family has two or more members.
    out += "word        coefficient\n";
    for (const auto& w : words) {
        const Complex c = J.coeff(w);
        char buf[120];
        std::snprintf(buf, sizeof buf, "%-10s  %s\n",
                      w.empty() ? "(unit)" : word_key(w).c_str(), fmt_complex(c).c_str());
        out += buf;
    }
    return out;
}

// ---------------------------------------------------------------------------
// forms

int cmd_forms_list(const Config& cfg, const std::string& output_file) {
    std::vector<CuspForm> forms;
    for (double w : CuspForm::builtin_weights()) forms.emplace_back(w, cfg.expansion_terms);
    switch (cfg.format) {
        case OutputFormat::json: {
            json j = json::array();
            for (const auto& f : forms)
                j.push_back({{"w", f.weight()},
                             {"alpha", f.q_exponent()},
                             {"terms", f.terms()},
                             {"hash", hash_hex(f.content_hash())}});
            emit(cfg, output_file, j.dump(2));
            return 0;
        }
        case OutputFormat::csv: {
            std::string out = "w,alpha,terms,hash\n";
            for (const auto& f : forms) {
                char buf[120];
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu,%s\n", f.weight(),
                              f.q_exponent(), f.terms(),
                              hash_hex(f.content_hash()).c_str());
                out += buf;
            }
            emit(cfg, output_file, out);
            return 0;
        }
        case OutputFormat::pretty:
            break;
    }
    std::string out = "built-in eta-power forms (eta^{2w}, weight w, alpha = w/12)\n";
    for (const auto& f : forms) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  w = %-5.4g alpha = %-8.6g terms = %-4zu %s\n",
                      f.weight(), f.q_exponent(), f.terms(),
                      hash_hex(f.content_hash()).c_str());
        out += buf;
    }
    emit(cfg, output_file, out);
    return 0;
}

int cmd_forms_inspect(const Config& cfg, const std::string& output_file, double w) {
    const CuspForm f(w, cfg.expansion_terms);
    const EtaPowerMultiplier& v = f.multiplier();
    const Complex vs = v(sigma_gen());
    const Complex vt = v(theta_gen());
    const Complex vtst = v(theta_sigma_theta());
    const std::size_t lead = std::min<std::size_t>(8, f.coefficients().size());

    if (cfg.format == OutputFormat::json) {
        json j = json::parse(f.to_json());
        j["hash"] = hash_hex(f.content_hash());
        j["coefficients"] =
            std::vector<double>(f.coefficients().begin(), f.coefficients().begin() + lead);
        j["multiplier"] = {{"sigma", {vs.real(), vs.imag()}},
                           {"theta", {vt.real(), vt.imag()}},
                           {"theta_sigma_theta", {vtst.real(), vtst.imag()}}};
        emit(cfg, output_file, j.dump(2));
        return 0;
    }
    if (cfg.format == OutputFormat::csv) {
        std::string out = "m,b_m\n";
        for (std::size_t m = 0; m < f.coefficients().size(); ++m) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%zu,%.17g\n", m, f.coefficients()[m]);
            out += buf;
        }
        emit(cfg, output_file, out);
        return 0;
    }
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "eta^{2w} with w = %.6g\n  alpha       %.17g\n  terms       %zu\n"
                  "  hash        %s\n",
                  f.weight(), f.q_exponent(), f.terms(),
                  hash_hex(f.content_hash()).c_str());
    out += buf;
    out += "  b_0..b_" + std::to_string(lead - 1) + "   ";
    for (std::size_t m = 0; m < lead; ++m) {
        std::snprintf(buf, sizeof buf, "%.10g ", f.coefficients()[m]);
        out += buf;
    }
    out += "\n";
    std::snprintf(buf, sizeof buf,
                  "  v(sigma)    %s\n  v(theta)    %s\n  v(tst)      %s\n",
                  fmt_complex(vs).c_str(), fmt_complex(vt).c_str(),
                  fmt_complex(vtst).c_str());
    out += buf;
    emit(cfg, output_file, out);
    return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const Config& cfg, const std::string& output_file,
               const std::string& suite) {
    const Report rep = run_suite(suite, cfg);
    emit(cfg, output_file, rep.render(format_name(cfg.format)));
    return rep.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// compute

FormFamily family_from_config(const Config& cfg) {
    std::vector<CuspForm> forms;
    for (double w : cfg.family) forms.emplace_back(w, cfg.expansion_terms);
    return FormFamily(std::move(forms), cfg.depth);
}

int cmd_compute_period(const Config& cfg, const std::string& output_file, double w,
                       double k, bool k_given, const std::string& t_s,
                       const std::string& a_s, const std::string& b_s) {
    const CuspForm form(w, cfg.expansion_terms);
    const Complex t = parse_complex(t_s);
    const Cusp a = parse_cusp(a_s), b = parse_cusp(b_s);
    const OneForm one{&form, k_given ? k : form.weight() - 2.0, t};
    QuadratureOptions qopt;
    qopt.tol = cfg.quad_tol;

    QuadResult r{};
    if (!cfg.cache_dir.empty()) {
        QuadratureCache cache(cfg.cache_dir);
        r = cached_period_integral(cache, one, a, b, qopt);
    } else {
        r = period_integral(one, a, b, qopt);
    }

    const json meta{{"w", w},           {"k", one.k},
                    {"t", t_s},         {"a", a.str()},
                    {"b", b.str()},     {"value", {r.value.real(), r.value.imag()}},
                    {"err", r.err_estimate}, {"evals", r.evals}};
    if (cfg.format == OutputFormat::json) {
        json j = meta;
        j["config"] = config_json(cfg);
        emit(cfg, output_file, j.dump(2));
    } else if (cfg.format == OutputFormat::csv) {
        char buf[240];
        std::snprintf(buf, sizeof buf, "re,im,err,evals\n%.17g,%.17g,%.3g,%ld\n",
                      r.value.real(), r.value.imag(), r.err_estimate, r.evals);
        emit(cfg, output_file, buf);
    } else {
        char buf[280];
        std::snprintf(buf, sizeof buf,
                      "int_%s^%s f(z) (z - t)^k dz   w = %g, k = %g, t = %s\n"
                      "  value  %s\n  err    %.3g   (%ld evaluations)\n",
                      a.str().c_str(), b.str().c_str(), w, one.k, t_s.c_str(),
                      fmt_complex(r.value).c_str(), r.err_estimate, r.evals);
        emit(cfg, output_file, buf);
    }
    return 0;
}

int cmd_compute_iterate(const Config& cfg, const std::string& output_file,
                        const std::string& t_s, const std::string& a_s,
                        const std::string& b_s) {
    const FormFamily fam = family_from_config(cfg);
    const Complex t = parse_complex(t_s);
    const Cusp a = parse_cusp(a_s), b = parse_cusp(b_s);
    TransportOptions topt;
    topt.tol = cfg.transport_tol;

    NCSeries J = [&] {
        if (!cfg.cache_dir.empty()) {
            QuadratureCache cache(cfg.cache_dir);
            return cached_iterated_period(cache, fam, a, b, t, topt);
        }
        return iterated_period(fam, a, b, t, topt);
    }();

    json family = json::array();
    for (std::size_t j = 0; j < fam.size(); ++j) family.push_back(fam.form(j).weight());
    return emit(cfg, output_file,
                render_series(cfg, J,
                              json{{"kind", "iterated-period"},
                                   {"a", a.str()},
                                   {"b", b.str()},
                                   {"t", t_s},
                                   {"family", family}})),
           0;
}

int cmd_compute_reciprocity(const Config& cfg, const std::string& output_file,
                            long long p, long long q) {
    const FormFamily fam = family_from_config(cfg);
    TransportOptions topt;
    topt.tol = cfg.transport_tol;
    const ReciprocityValue rv = reciprocity_function(fam, p, q, topt);

    json family = json::array();
    for (std::size_t j = 0; j < fam.size(); ++j) family.push_back(fam.form(j).weight());
    json meta{{"kind", "reciprocity"},
              {"p", p},
              {"q", q},
              {"route", rv.route == ReciprocityRoute::direct ? "direct" : "extended"},
              {"family", family}};
    if (rv.endpoint_degenerate) meta["endpoint_degenerate"] = true;
    emit(cfg, output_file, render_series(cfg, rv.value, meta));
    return 0;
}

// ---------------------------------------------------------------------------
// symbols: exact rational tables of the classical reciprocity function or of
// the reconstructed symbol, in a diff-stable order.

int cmd_symbols(const Config& cfg, const std::string& output_file,
                const std::string& kind, long long bound) {
    const RationalAddGroup g;
    const PairFn<RationalAddGroup> f = classical_reciprocity(g);
    const PairFn<RationalAddGroup> fn =
        kind == "reciprocity" ? f : reconstruct_symbol(g, f);
    const std::vector<SymbolRow> rows = tabulate_pair_function(g, fn, bound);

    switch (cfg.format) {
        case OutputFormat::json: {
            json j = json::array();
            for (const auto& r : rows) j.push_back({{"p", r.p}, {"q", r.q}, {"value", r.value}});
            emit(cfg, output_file, j.dump(2));
            return 0;
        }
        case OutputFormat::pretty: {
            std::string out = kind + "(p, q) for coprime |p|, |q| <= " +
                              std::to_string(bound) + "\n";
            for (const auto& r : rows) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "  %4lld %4lld   %s\n", r.p, r.q,
                              r.value.c_str());
                out += buf;
            }
            emit(cfg, output_file, out);
            return 0;
        }
        case OutputFormat::csv:
            break;
    }
    std::string out = "p,q," + kind + "\n";
    for (const auto& r : rows)
        out += std::to_string(r.p) + "," + std::to_string(r.q) + "," +
               csv_field(r.value) + "\n";
    emit(cfg, output_file, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"period integrals, reciprocity functions and Dedekind cocycles "
                 "of eta-power cusp forms"};
    app.require_subcommand(1);

    // Global configuration flags; collected as strings and applied through
    // Config::set so the file and the flags share one parser and one
    // validation path.  Precedence: defaults < file < environment < flags.
    std::string config_file, output_file;
    std::vector<std::pair<std::string, std::string>> overrides;
    auto key_flag = [&](const std::string& flag, const std::string& key,
                        const std::string& help) {
        app.add_option_function<std::string>(
               flag, [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); },
               help)
            ->expected(1);
    };
    app.add_option("--config", config_file, "key=value configuration file");
    app.add_option("--output", output_file, "write the result to a file instead of stdout");
    key_flag("--quad-tol", "quad_tol", "absolute quadrature tolerance");
    key_flag("--transport-tol", "transport_tol", "series transport tolerance");
    key_flag("--terms", "terms", "q-expansion truncation length M");
    key_flag("--depth", "depth", "iterated-integral truncation depth N");
    key_flag("--family", "family", "comma-separated family weights, e.g. 12,5.3");
    key_flag("--cache-dir", "cache_dir", "quadrature cache directory");
    key_flag("--format", "format", "output format: pretty, json or csv");
    key_flag("--seed", "seed", "seed for randomized sweeps");
    app.add_flag_function(
        "--allow-depth4",
        [&overrides](std::int64_t) { overrides.emplace_back("allow_depth4", "1"); },
        "permit depth 4 (looser series tolerances apply)");

    auto* forms = app.add_subcommand("forms", "built-in form catalogue");
    forms->require_subcommand(1);
    forms->add_subcommand("list", "list the built-in weights");
    double inspect_w = 12.0;
    auto* inspect = forms->add_subcommand("inspect", "print one form in detail");
    inspect->add_option("w", inspect_w, "weight of the form")->required();

    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "multiplier, lemma241, thm32, thm351, dedekind, cocycle or all")
        ->required();

    auto* compute = app.add_subcommand("compute", "evaluate periods and reciprocity values");
    compute->require_subcommand(1);
    double period_w = 12.0, period_k = 0.0;
    std::string t_s, a_s = "0", b_s = "inf";
    auto* period = compute->add_subcommand("period", "one period integral");
    period->add_option("--w", period_w, "form weight")->required();
    auto* k_opt = period->add_option("--k", period_k, "exponent on (z - t); default w - 2");
    period->add_option("--t", t_s, "evaluation point, e.g. \"-1i\"")->required();
    period->add_option("--a", a_s, "path start cusp");
    period->add_option("--b", b_s, "path end cusp");

    auto* iterate = compute->add_subcommand("iterate", "iterated period series of the family");
    iterate->add_option("--t", t_s, "evaluation point")->required();
    iterate->add_option("--a", a_s, "path start cusp");
    iterate->add_option("--b", b_s, "path end cusp");

    long long rec_p = 1, rec_q = 1;
    auto* reciprocity = compute->add_subcommand("reciprocity", "noncommutative f(p, q)");
    reciprocity->add_option("--p", rec_p, "first entry, p > 0")->required();
    reciprocity->add_option("--q", rec_q, "second entry, coprime to p")->required();

    std::string sym_kind = "symbol";
    long long sym_bound = 10;
    auto* symbols = app.add_subcommand("symbols", "exact rational symbol tables");
    symbols->add_option("--kind", sym_kind, "reciprocity or symbol")
        ->check(CLI::IsMember({"reciprocity", "symbol"}));
    symbols->add_option("--bound", sym_bound, "tabulate coprime |p|, |q| <= bound")
        ->check(CLI::PositiveNumber);

    for (auto* sub : {forms, verify, compute, symbols}) sub->fallthrough();
    for (auto* sub : compute->get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        Config cfg = config_file.empty() ? Config{} : load_config_file(config_file);
        apply_env_overrides(cfg);
        for (const auto& [k, v] : overrides) cfg.set(k, v);
        cfg.validate();

        if (forms->parsed()) {
            if (inspect->parsed()) return cmd_forms_inspect(cfg, output_file, inspect_w);
            return cmd_forms_list(cfg, output_file);
        }
        if (verify->parsed()) return cmd_verify(cfg, output_file, suite);
        if (compute->parsed()) {
            if (period->parsed())
                return cmd_compute_period(cfg, output_file, period_w, period_k,
                                          k_opt->count() > 0, t_s, a_s, b_s);
            if (iterate->parsed())
                return cmd_compute_iterate(cfg, output_file, t_s, a_s, b_s);
            return cmd_compute_reciprocity(cfg, output_file, rec_p, rec_q);
        }
        return cmd_symbols(cfg, output_file, sym_kind, sym_bound);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: did not converge: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
