#pragma once

// Disk cache for quadrature and transport results.
//
// Format: one JSON object per line in <dir>/quadrature.jsonl, each carrying
// its key, the value fields rendered with %.17g (so doubles round-trip to
// the identical bits), and a checksum over a canonical rendering of the
// payload.  A line that fails to parse or whose checksum disagrees marks
// the whole file untrusted: the cache restarts empty and the file is
// truncated -- a torn append must not feed a wrong digit into a report, and
// a cache that lied once is not worth salvaging entry by entry.
//
// Keys are pipe-joined from a 64-bit producer hash (the form's content
// hash, mixed with whatever else pins the integrand -- exponent, word) and
// the %.17g renderings of the endpoints, evaluation point, and tolerance.
// Hits therefore return exactly the bits that were stored, and distinct
// tolerances never alias.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "ncperiods/iterated_periods.hpp"
#include "ncperiods/quadrature.hpp"

namespace ncperiods {

std::uint64_t fnv1a64(std::string_view bytes);

/// One cached quadrature result; err/evals ride along so a hit can report
/// the same error estimate the original computation did.
struct CachedQuad {
    Complex value;
    double err_estimate = 0.0;
    long evals = 0;
};

class QuadratureCache {
public:
    /// Memory-only cache (no file behind it).
    QuadratureCache() = default;

    /// Backed by <dir>/quadrature.jsonl; loads whatever valid content is
    /// there.  The directory must exist.  Throws std::runtime_error when
    /// the file exists but cannot be opened for appending.
    explicit QuadratureCache(const std::string& dir);

    static std::string key(std::uint64_t producer, const Cusp& a, const Cusp& b,
                           Complex t, double tol);

    /// Tallies a hit or miss as a side effect.
    std::optional<CachedQuad> find(const std::string& key);

    /// Inserts (or overwrites) and, when file-backed, appends one line.
    void store(const std::string& key, const CachedQuad& value);

    std::size_t size() const { return map_.size(); }
    long hits() const { return hits_; }
    long misses() const { return misses_; }

    /// True when loading found corruption and dropped the stored file.
    bool rebuilt() const { return rebuilt_; }

    const std::string& path() const { return path_; }

    void flush();

private:
    std::unordered_map<std::string, CachedQuad> map_;
    std::string path_;  // empty: memory-only
    long hits_ = 0;
    long misses_ = 0;
    bool rebuilt_ = false;

    void load();
    void append_line(const std::string& key, const CachedQuad& v);
};

/// period_integral through the cache.  The producer hash mixes the form's
/// content hash with the exponent k, so moment integrals (k != weight-2)
/// never alias period-function entries for the same form.
QuadResult cached_period_integral(QuadratureCache& cache, const OneForm& w,
                                  const Cusp& a, const Cusp& b,
                                  const QuadratureOptions& opt = {});

/// Content hash of a family: every member form's hash plus the truncation
/// depth, mixed in order.
std::uint64_t family_hash(const FormFamily& fam);

/// iterated_period with each word coefficient cached as its own entry
/// (producer = family hash mixed with the word's digit string).  A full hit
/// reassembles the series without any transport; a partial hit recomputes
/// the whole series and overwrites.
NCSeries cached_iterated_period(QuadratureCache& cache, const FormFamily& fam,
                                const Cusp& a, const Cusp& b, Complex t,
                                const TransportOptions& opt = {});

}  // namespace ncperiods
