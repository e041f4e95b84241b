#ifndef FFH_GAP_SCAN_HPP
#define FFH_GAP_SCAN_HPP

// Batch classification of every point of bounded complexity: integer
// coordinates of degree <= H with coefficients in [-N, N].

#include "ffh/height.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <unordered_set>
#include <vector>

namespace ffh {

struct PointEnumSpec {
    std::size_t k = 1;
    std::size_t max_deg = 0;      // H
    unsigned long coeff_bound = 1;  // N
};

/// Every canonical point in the box, once, in first-seen odometer order
/// (coefficients run from -N to N, lowest coefficient of X0 fastest).
inline std::vector<ProjectivePoint> enumerate_points(const PointEnumSpec& spec) {
    std::vector<ProjectivePoint> out;
    if (spec.coeff_bound == 0 || spec.k == 0) return out;
    const std::size_t per = spec.max_deg + 1;
    const std::size_t slots = per * (spec.k + 1);
    const long n = static_cast<long>(spec.coeff_bound);
    std::vector<long> digits(slots, -n);
    std::unordered_set<ProjectivePoint, PointHash> seen;
    for (;;) {
        bool all_zero = true;
        for (long v : digits) all_zero = all_zero && v == 0;
        if (!all_zero) {
            std::vector<ZPoly> coords;
            for (std::size_t l = 0; l <= spec.k; ++l) {
                std::vector<Integer> c(per);
                for (std::size_t i = 0; i < per; ++i) c[i] = digits[l * per + i];
                coords.emplace_back(std::move(c));
            }
            ProjectivePoint p = ProjectivePoint::from_integer(std::move(coords));
            if (seen.insert(p).second) out.push_back(std::move(p));
        }
        std::size_t i = 0;
        while (i < slots && digits[i] == n) digits[i++] = -n;
        if (i == slots) break;
        ++digits[i];
    }
    return out;
}

struct ScanEntry {
    ProjectivePoint point;
    Verdict verdict;
    friend bool operator==(const ScanEntry&, const ScanEntry&) = default;
};

struct ScanReport {
    std::size_t total = 0;
    std::size_t preperiodic = 0;
    std::size_t positive_certified = 0;
    std::size_t undecided = 0;
    std::optional<Rational> min_positive_lower;
    std::vector<ScanEntry> entries;  // enumeration order

    // Run metadata; not part of the deterministic content.
    double wall_seconds = 0;
    unsigned workers = 1;

    std::vector<const ScanEntry*> undecided_entries() const {
        std::vector<const ScanEntry*> out;
        for (const auto& e : entries)
            if (std::holds_alternative<Undecided>(e.verdict)) out.push_back(&e);
        return out;
    }
};

/// Classifies every enumerated point with `workers` threads. The report does
/// not depend on the worker count.
inline ScanReport scan(const Endomorphism& f, const PointEnumSpec& spec, std::size_t budget, unsigned workers = 1,
                       const ClassifyOptions& opts = {}) {
    if (spec.k != f.k()) throw Error(Errc::DimensionMismatch, "scan dimension differs from the map");
    const auto start = std::chrono::steady_clock::now();
    const std::vector<ProjectivePoint> points = enumerate_points(spec);
    std::vector<std::optional<Verdict>> verdicts(points.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            try {
                verdicts[i] = classify(f, points[i], budget, opts);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next = points.size();
                return;
            }
        }
    };
    if (workers == 0) workers = 1;
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    ScanReport r;
    r.total = points.size();
    r.workers = workers;
    r.entries.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Verdict& v = *verdicts[i];
        if (std::holds_alternative<Preperiodic>(v)) {
            ++r.preperiodic;
        } else if (const auto* p = std::get_if<PositiveCertified>(&v)) {
            ++r.positive_certified;
            if (!r.min_positive_lower || p->lower < *r.min_positive_lower) r.min_positive_lower = p->lower;
        } else {
            ++r.undecided;
        }
        r.entries.push_back({points[i], v});
    }
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace ffh

#endif  // FFH_GAP_SCAN_HPP
