#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gue/counting.hpp"
#include "gue/kernels.hpp"
#include "gue/stats.hpp"

namespace gue {

enum class SamplerRoute { dense, tridiagonal };

std::string to_string(SamplerRoute route);
SamplerRoute parse_route(const std::string& text);

/// One GUE spectrum, normalised so that E|M_ij|^2 = 1/n (support -> [-2, 2]).
struct EigenSample {
    int n = 0;
    std::vector<double> eigenvalues;  // ascending
    std::uint64_t seed = 0;
    SamplerRoute route = SamplerRoute::dense;
};

/// Hermitian matrix with complex off-diagonal entries of variance 1/n (real and
/// imaginary parts 1/(2n) each) and real diagonal entries of variance 1/n.
Eigen::MatrixXcd sample_gue_matrix(int n, std::uint64_t seed);

/// Eigenvalues of sample_gue_matrix(n, seed) (Householder tridiagonalization
/// followed by implicit symmetric QR).
EigenSample sample_gue_dense(int n, std::uint64_t seed);

/// Same eigenvalue law from the beta = 2 Hermite tridiagonal model: diagonal
/// N(0, 1/n), off-diagonal chi_{2(n-k)} / sqrt(2n).
EigenSample sample_gue_tridiag(int n, std::uint64_t seed);

EigenSample sample_gue(int n, std::uint64_t seed, SamplerRoute route);

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;  // size n - 1
};

Tridiagonal sample_gue_tridiagonal_matrix(int n, std::uint64_t seed);

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL,
/// ascending. Throws std::runtime_error when an eigenvalue needs more than
/// 60 sweeps.
std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t);

/// Number of eigenvalues strictly below `shift` (Sturm sequence).
int sturm_count(const Tridiagonal& t, double shift);

struct CountRecord {
    std::vector<int> occupancy;
    double scaled_min = 0.0;  // n^{2/3} (lambda_min + 2)
    double scaled_max = 0.0;  // n^{2/3} (lambda_max - 2)
    double condition = 0.0;   // n^{2/3} (lambda_max / lambda_min + 1)
};

/// Half-open [a, b) counts over the realized windows, plus the extreme and
/// condition-number statistics of the sample.
CountRecord count_in_windows(const EigenSample& sample, const std::vector<ScaledWindow>& windows);

/// Parallel replicates; replicate r uses replicate_seed(seed, r).
std::vector<CountRecord> sample_records(int n, int reps, std::uint64_t seed, const std::vector<ScaledWindow>& windows,
                                        SamplerRoute route);

struct EmpiricalSummary {
    CountingDistribution distribution;
    std::vector<double> joint_standard_error;  // sqrt(p(1-p)/N) per cell
    ChiSquareResult independence;
    std::size_t samples = 0;
};

inline constexpr std::size_t kMinEmpiricalRecords = 1000;

/// Empirical occupancy tables with Monte Carlo standard errors and a Pearson
/// test of mutual independence. Needs at least 1000 records.
EmpiricalSummary empirical_joint_pmf(const std::vector<CountRecord>& records, const std::vector<ScaledWindow>& windows,
                                     const std::vector<int>& lmax);

struct ExtremePair {
    double scaled_min;
    double scaled_max;
};

std::vector<ExtremePair> extreme_pairs(int n, int reps, std::uint64_t seed,
                                       SamplerRoute route = SamplerRoute::tridiagonal);

struct ConditionStatistics {
    std::vector<double> values;
    std::vector<double> lambda_min;
    std::vector<double> lambda_max;
    int excluded = 0;  // replicates with lambda_min >= 0
};

ConditionStatistics condition_statistics(int n, int reps, std::uint64_t seed,
                                         SamplerRoute route = SamplerRoute::tridiagonal);

/// n^{2/3}(lambda_max / lambda_min + 1) split as
/// -1/2 [A + B] + (lambda_min + 2) / (2 lambda_min) [A + B],
/// A = n^{2/3}(lambda_max - 2), B = n^{2/3}(lambda_min + 2).
struct ConditionDecomposition {
    double statistic;
    double leading;
    double remainder;
};

ConditionDecomposition decompose_condition(int n, double lambda_min, double lambda_max);

}  // namespace gue
