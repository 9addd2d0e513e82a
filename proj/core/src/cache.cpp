#include "ncperiods/cache.hpp"

#include <cstdio>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncperiods/report.hpp"  // hash_hex

namespace ncperiods {

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse17(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

// Checksum input: key and value fields in a fixed rendering, independent of
// any JSON library quirks, so files survive library upgrades.
std::string checksum_payload(const std::string& key, const CachedQuad& v) {
    return key + '|' + fmt17(v.value.real()) + '|' + fmt17(v.value.imag()) + '|' +
           fmt17(v.err_estimate) + '|' + std::to_string(v.evals);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t more) {
    // One 64-bit mixing round (splitmix64 finalizer) keeps producer hashes
    // from colliding when the same ingredients appear in a different order.
    h ^= more + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebULL;
    h ^= h >> 31;
    return h;
}

std::string word_digits(const Word& w) {
    std::string s;
    for (int d : w) s += static_cast<char>('0' + d);
    return s;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

QuadratureCache::QuadratureCache(const std::string& dir)
    : path_(dir + "/quadrature.jsonl") {
    load();
}

std::string QuadratureCache::key(std::uint64_t producer, const Cusp& a, const Cusp& b,
                                 Complex t, double tol) {
    return hash_hex(producer) + '|' + a.str() + '|' + b.str() + '|' + fmt17(t.real()) +
           '|' + fmt17(t.imag()) + '|' + fmt17(tol);
}

std::optional<CachedQuad> QuadratureCache::find(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) {
        ++misses_;
        return std::nullopt;
    }
    ++hits_;
    return it->second;
}

void QuadratureCache::store(const std::string& key, const CachedQuad& value) {
    map_.insert_or_assign(key, value);
    if (!path_.empty()) append_line(key, value);
}

void QuadratureCache::flush() {
    // Lines are written through an ofstream opened per append; nothing is
    // buffered here between calls.
}

void QuadratureCache::load() {
    std::ifstream in(path_);
    if (!in) return;  // no file yet: empty cache, nothing rebuilt

    std::vector<std::pair<std::string, CachedQuad>> loaded;
    std::string line;
    bool corrupt = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            corrupt = true;
            break;
        }
        try {
            const std::string key = j.at("key").get<std::string>();
            CachedQuad v;
            v.value = Complex(parse17(j.at("re").get<std::string>()),
                              parse17(j.at("im").get<std::string>()));
            v.err_estimate = parse17(j.at("err").get<std::string>());
            v.evals = j.at("evals").get<long>();
            if (j.at("crc").get<std::string>() !=
                hash_hex(fnv1a64(checksum_payload(key, v)))) {
                corrupt = true;
                break;
            }
            loaded.emplace_back(key, v);
        } catch (const nlohmann::json::exception&) {
            corrupt = true;
            break;
        }
    }
    in.close();

    if (corrupt) {
        // Never trust a file that failed its checksum, including the lines
        // that individually looked fine: start over.
        rebuilt_ = true;
        std::ofstream(path_, std::ios::trunc);
        return;
    }
    for (auto& [key, v] : loaded) map_.insert_or_assign(key, std::move(v));
}

void QuadratureCache::append_line(const std::string& key, const CachedQuad& v) {
    std::ofstream out(path_, std::ios::app);
    if (!out) throw std::runtime_error("quadrature cache: cannot append to " + path_);
    nlohmann::json j;
    j["key"] = key;
    j["re"] = fmt17(v.value.real());
    j["im"] = fmt17(v.value.imag());
    j["err"] = fmt17(v.err_estimate);
    j["evals"] = v.evals;
    j["crc"] = hash_hex(fnv1a64(checksum_payload(key, v)));
    out << j.dump() << '\n';
}

QuadResult cached_period_integral(QuadratureCache& cache, const OneForm& w,
                                  const Cusp& a, const Cusp& b,
                                  const QuadratureOptions& opt) {
    std::uint64_t producer = w.form->content_hash();
    producer = mix(producer, fnv1a64(fmt17(w.k)));
    const std::string key = QuadratureCache::key(producer, a, b, w.t, opt.tol);
    if (auto hit = cache.find(key))
        return QuadResult{hit->value, hit->err_estimate, hit->evals};
    const QuadResult r = period_integral(w, a, b, opt);
    cache.store(key, CachedQuad{r.value, r.err_estimate, r.evals});
    return r;
}

std::uint64_t family_hash(const FormFamily& fam) {
    std::uint64_t h = fnv1a64("form-family");
    for (std::size_t j = 0; j < fam.size(); ++j) h = mix(h, fam.form(j).content_hash());
    return mix(h, fam.depth());
}

NCSeries cached_iterated_period(QuadratureCache& cache, const FormFamily& fam,
                                const Cusp& a, const Cusp& b, Complex t,
                                const TransportOptions& opt) {
    const std::size_t l = fam.size();
    const std::size_t depth = fam.depth();
    if (a == b) return NCSeries::one(l, depth);

    const std::uint64_t fh = family_hash(fam);
    auto word_key = [&](const Word& w) {
        return QuadratureCache::key(mix(fh, fnv1a64(word_digits(w))), a, b, t, opt.tol);
    };

    // All-or-nothing: only a complete set of word coefficients reassembles
    // the series (a partial one would splice two different transports).
    NCSeries out = NCSeries::one(l, depth);
    bool complete = true;
    for (std::size_t n = 1; n <= depth && complete; ++n) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < n; ++i) count *= l;
        for (std::size_t idx = 0; idx < count; ++idx) {
            const Word w = index_to_word(idx, n, l);
            if (auto hit = cache.find(word_key(w))) {
                out.set_coeff(w, hit->value);
            } else {
                complete = false;
                break;
            }
        }
    }
    if (complete) return out;

    const NCSeries fresh = iterated_period(fam, a, b, t, opt);
    for (std::size_t n = 1; n <= depth; ++n) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < n; ++i) count *= l;
        for (std::size_t idx = 0; idx < count; ++idx) {
            const Word w = index_to_word(idx, n, l);
            cache.store(word_key(w), CachedQuad{fresh.coeff(w), opt.tol, 0});
        }
    }
    return fresh;
}

}  // namespace ncperiods
