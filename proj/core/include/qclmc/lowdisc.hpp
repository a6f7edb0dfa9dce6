#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

// One-dimensional point sequences on [0,1), their exponential inverse
// transform, and exact star-/F-discrepancy evaluation.

namespace qclmc {

enum class SequenceKind { sobol_owen, sobol_plain, pseudo, grid };

std::string to_string(SequenceKind kind);
SequenceKind sequence_kind_from_string(const std::string& name);

/// Ordered points in [0,1) with their generator provenance.
struct UnitSequence {
    std::vector<double> points;
    SequenceKind kind = SequenceKind::pseudo;
    std::uint64_t seed = 0;

    std::size_t count() const { return points.size(); }
};

/// Exponential level samples L^(k) = -ln(1 - x^(k)) / rate.
struct LevelSampleSet {
    std::vector<double> levels;  // generation order, not sorted
    double rate = 1.0;
    SequenceKind source_kind = SequenceKind::pseudo;
    std::uint64_t source_seed = 0;
};

enum class DiscrepancyKind { star, f_exponential };

struct DiscrepancyReport {
    double value = 0.0;  // in [0,1]
    std::size_t m = 0;
    DiscrepancyKind kind = DiscrepancyKind::star;
};

/// Generate M points of the requested kind.
///
/// sobol_plain is the base-2 radical inverse in Gray-code order (the 1D Sobol
/// sequence); sobol_owen applies nested digit scrambling keyed by `seed`, which
/// keeps the dyadic net property at M = 2^m while distinct seeds give
/// statistically independent sequences. pseudo is a counter-based generator;
/// grid returns (2k-1)/(2M) and ignores the seed.
UnitSequence generate_sequence(SequenceKind kind, std::size_t m, std::uint64_t seed);

/// Value of the k-th point of a sequence (points are independent of each other).
double sequence_point(SequenceKind kind, std::size_t k, std::size_t m, std::uint64_t seed);

/// Elementwise L = -ln(1-x)/rate; input points are clamped to 1 - 2^-53 so
/// every level is finite.
LevelSampleSet exp_inverse_transform(const UnitSequence& seq, double rate);

/// Exact 1D star discrepancy, computed from the sorted points as
/// 1/(2M) + max_i |x_(i) - (2i-1)/(2M)|.
DiscrepancyReport star_discrepancy(const UnitSequence& seq);

/// Exact sup_{y >= 0} | (1/M) sum_k 1[y <= L^(k)] - exp(-rate*y) |.
/// The supremum is attained at a sample level or its left limit.
DiscrepancyReport f_discrepancy_exponential(const LevelSampleSet& levels);

/// Largest level of the set; equals ln(2M)/rate for the grid sequence.
double max_level(const LevelSampleSet& levels);

struct DiscrepancyStudyRow {
    SequenceKind kind;
    std::size_t m;
    unsigned run;
    double discrepancy;
    double mean_discrepancy;  // mean over runs at this m
};

struct DiscrepancyStudy {
    std::vector<DiscrepancyStudyRow> rows;
    /// OLS slope of log(mean discrepancy) against log(M).
    double fitted_slope = 0.0;
};

/// Average the F-discrepancy of freshly generated sequences over `runs`
/// independent seeds for each M in m_list. Run t uses the seed mix(seed, t)
/// for every M, mirroring "independent runs swept over M".
DiscrepancyStudy discrepancy_convergence_study(SequenceKind kind,
                                               const std::vector<std::size_t>& m_list,
                                               double rate, unsigned runs,
                                               std::uint64_t seed);

}  // namespace qclmc
