#include "qclmc/lowdisc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qclmc/rng.hpp"

namespace qclmc {

namespace {

constexpr int kDigits = 52;
constexpr double kPointMax = 1.0 - 0x1.0p-53;

// Base-2 radical inverse over 52 digits.
std::uint64_t radical_inverse_bits(std::uint64_t v) {
    std::uint64_t bits = 0;
    for (int i = 0; i < kDigits; ++i) {
        if ((v >> i) & 1u) bits |= 1ULL << (kDigits - 1 - i);
    }
    return bits;
}

// 1D Sobol point k in generation order: radical inverse of the Gray code.
std::uint64_t sobol_bits(std::uint64_t k) {
    return radical_inverse_bits(k ^ (k >> 1));
}

// Nested digit scrambling: the flip of digit d is keyed by the seed and by
// the path of original digits above d, so every dyadic interval is mapped
// onto a dyadic interval of the same depth.
std::uint64_t owen_scramble_bits(std::uint64_t bits, std::uint64_t seed) {
    std::uint64_t out = 0;
    std::uint64_t prefix = 1;  // leading sentinel bit encodes the depth
    for (int d = 0; d < kDigits; ++d) {
        const int shift = kDigits - 1 - d;
        const std::uint64_t bit = (bits >> shift) & 1u;
        const std::uint64_t flip = rng::mix(seed, prefix) & 1u;
        out |= (bit ^ flip) << shift;
        prefix = (prefix << 1) | bit;
    }
    return out;
}

double bits_to_unit(std::uint64_t bits) {
    return static_cast<double>(bits) * 0x1.0p-52;
}

}  // namespace

std::string to_string(SequenceKind kind) {
    switch (kind) {
        case SequenceKind::sobol_owen: return "sobol_owen";
        case SequenceKind::sobol_plain: return "sobol_plain";
        case SequenceKind::pseudo: return "pseudo";
        case SequenceKind::grid: return "grid";
    }
    return "unknown";
}

SequenceKind sequence_kind_from_string(const std::string& name) {
    if (name == "sobol_owen") return SequenceKind::sobol_owen;
    if (name == "sobol_plain") return SequenceKind::sobol_plain;
    if (name == "pseudo") return SequenceKind::pseudo;
    if (name == "grid") return SequenceKind::grid;
    throw std::invalid_argument("unknown sequence kind: " + name);
}

double sequence_point(SequenceKind kind, std::size_t k, std::size_t m, std::uint64_t seed) {
    switch (kind) {
        case SequenceKind::grid:
            return (2.0 * static_cast<double>(k) + 1.0) / (2.0 * static_cast<double>(m));
        case SequenceKind::sobol_plain:
            return bits_to_unit(sobol_bits(k));
        case SequenceKind::sobol_owen:
            return bits_to_unit(owen_scramble_bits(sobol_bits(k), seed));
        case SequenceKind::pseudo:
            return rng::to_unit(rng::mix(seed, k));
    }
    throw std::invalid_argument("unknown sequence kind");
}

UnitSequence generate_sequence(SequenceKind kind, std::size_t m, std::uint64_t seed) {
    if (m == 0) throw std::invalid_argument("generate_sequence: m must be positive");
    UnitSequence seq;
    seq.kind = kind;
    seq.seed = (kind == SequenceKind::grid) ? 0 : seed;
    seq.points.resize(m);
    for (std::size_t k = 0; k < m; ++k) seq.points[k] = sequence_point(kind, k, m, seed);
    return seq;
}

LevelSampleSet exp_inverse_transform(const UnitSequence& seq, double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("exp_inverse_transform: rate must be positive");
    LevelSampleSet out;
    out.rate = rate;
    out.source_kind = seq.kind;
    out.source_seed = seq.seed;
    out.levels.resize(seq.points.size());
    for (std::size_t k = 0; k < seq.points.size(); ++k) {
        const double x = std::min(seq.points[k], kPointMax);
        out.levels[k] = -std::log1p(-x) / rate;
    }
    return out;
}

DiscrepancyReport star_discrepancy(const UnitSequence& seq) {
    const std::size_t m = seq.count();
    if (m == 0) throw std::invalid_argument("star_discrepancy: empty sequence");
    std::vector<double> xs(seq.points);
    std::sort(xs.begin(), xs.end());
    // max(x_(i) - (i-1)/M, i/M - x_(i)) == 1/(2M) + |x_(i) - (2i-1)/(2M)|,
    // which is exact for the grid sequence in floating point.
    double dev = 0.0;
    const double md = static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double ref = (2.0 * static_cast<double>(i) + 1.0) / (2.0 * md);
        dev = std::max(dev, std::abs(xs[i] - ref));
    }
    return {1.0 / (2.0 * md) + dev, m, DiscrepancyKind::star};
}

DiscrepancyReport f_discrepancy_exponential(const LevelSampleSet& set) {
    const std::size_t m = set.levels.size();
    if (m == 0) throw std::invalid_argument("f_discrepancy_exponential: empty level set");
    if (!(set.rate > 0.0)) throw std::invalid_argument("f_discrepancy_exponential: rate must be positive");
    std::vector<double> v(set.levels);
    std::sort(v.begin(), v.end());
    const double r = set.rate;
    const double md = static_cast<double>(m);
    double sup = 0.0;
    double prev = 0.0;  // left end of the current constancy interval
    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i;
        while (j < m && v[j] == v[i]) ++j;
        // empirical tail (M - i)/M on (prev, v[i]]; compare against both ends
        const double tail = static_cast<double>(m - i) / md;
        sup = std::max(sup, std::abs(tail - std::exp(-r * v[i])));
        sup = std::max(sup, std::abs(tail - std::exp(-r * prev)));
        prev = v[i];
        i = j;
    }
    sup = std::max(sup, std::exp(-r * v[m - 1]));  // tail 0 beyond the last level
    return {sup, m, DiscrepancyKind::f_exponential};
}

double max_level(const LevelSampleSet& set) {
    if (set.levels.empty()) throw std::invalid_argument("max_level: empty level set");
    return *std::max_element(set.levels.begin(), set.levels.end());
}

DiscrepancyStudy discrepancy_convergence_study(SequenceKind kind,
                                               const std::vector<std::size_t>& m_list,
                                               double rate, unsigned runs,
                                               std::uint64_t seed) {
    if (m_list.empty()) throw std::invalid_argument("discrepancy_convergence_study: empty m list");
    if (runs == 0) throw std::invalid_argument("discrepancy_convergence_study: runs must be >= 1");
    DiscrepancyStudy study;
    std::vector<double> log_m, log_mean;
    for (std::size_t m : m_list) {
        std::vector<double> values(runs);
        double sum = 0.0;
        for (unsigned t = 0; t < runs; ++t) {
            const UnitSequence seq = generate_sequence(kind, m, rng::mix(seed, t));
            values[t] = f_discrepancy_exponential(exp_inverse_transform(seq, rate)).value;
            sum += values[t];
        }
        const double mean = sum / runs;
        for (unsigned t = 0; t < runs; ++t)
            study.rows.push_back({kind, m, t, values[t], mean});
        log_m.push_back(std::log(static_cast<double>(m)));
        log_mean.push_back(std::log(mean));
    }
    // OLS slope of log(mean) vs log(M)
    const std::size_t n = log_m.size();
    if (n >= 2) {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < n; ++i) { mx += log_m[i]; my += log_mean[i]; }
        mx /= n; my /= n;
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += (log_m[i] - mx) * (log_m[i] - mx);
            sxy += (log_m[i] - mx) * (log_mean[i] - my);
        }
        study.fitted_slope = sxy / sxx;
    }
    return study;
}

}  // namespace qclmc
