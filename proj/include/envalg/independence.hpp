#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "envalg/classical.hpp"
#include "envalg/enveloping.hpp"

namespace envalg {

/// Outcome of a randomized Jacobian rank test. Each trial evaluates the
/// exact Jacobian at an integer point drawn from its own seed; the maximum
/// rank over trials is a lower bound on the transcendence degree and equals
/// it with high probability.
struct RankCertificate {
  std::string family;
  std::vector<std::string> labels;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> trial_seeds;
  std::vector<std::vector<Rational>> trial_points;
  std::vector<std::size_t> trial_ranks;
  std::size_t max_rank = 0;
  std::size_t target = 0;
  /// Every trial reached max_rank.
  bool stable = true;
  bool pass = false;
};

/// Seed of trial t: a SplitMix64 step from the base seed, so trials are
/// independent of how many came before.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// Rank of d f_1..d f_r at random points of g*. `target` defaults to
/// (dim g + ind g) / 2; pass iff the maximal rank equals it.
/// Throws std::invalid_argument for an empty family or trials < 1.
RankCertificate jacobian_rank(const std::vector<ClassicalPolynomial>& family, const std::vector<std::string>& labels,
                              int trials, std::uint64_t seed, std::optional<std::size_t> target = std::nullopt,
                              const std::string& family_name = "");

/// Jacobian rank of the top symbols of a chain's quantum generators.
RankCertificate transcendency_check(const CommutativeFamily& family, int trials, std::uint64_t seed);

/// Compares d_X S_A^{k,M}(X) with d_A S_X^{j,M}(A) at one pair of points,
/// for j = M-k-1 and j = M-k. Requires 1 <= k < M; throws std::invalid_argument.
struct DualityResult {
  int M = 0;
  int k = 0;
  std::vector<Rational> lhs;
  std::optional<std::vector<Rational>> rhs_shifted;  // j = M-k-1 (absent when negative)
  std::vector<Rational> rhs_plain;                   // j = M-k
  bool holds_shifted = false;
  bool holds_plain = false;
};

DualityResult brailov_duality(const AlgebraSpec& spec, int M, int k, const PointOnDual& x, const PointOnDual& a);

/// Tangent count for a rank-2 semisimple A at random X, with F_A spanned by
/// Tr(A X^M) (M <= m^2 suffices by Cayley-Hamilton) and Tr X^N.
///
/// g = [A, g] + g_A is a trace-orthogonal direct sum; `projection_dim` is the
/// dimension of the image of d_X F_A in [A, g] along g_A (equivalently
/// dim(d_X F_A + g_A) - dim g_A) and is compared with (dim g - dim g_A)/2.
/// `intersection_dim` is the plain subspace intersection d_X F_A ∩ [A, g],
/// reported for reference.
struct TangentIntersection {
  std::size_t dim_g = 0;
  std::size_t dim_stabilizer = 0;
  std::size_t ind_stabilizer = 0;         // Kirillov form
  std::size_t ind_stabilizer_blocks = 0;  // block decomposition
  std::string stabilizer_blocks;          // e.g. "gl(1)+gl(1)+gl(2)"
  std::size_t ind_g = 0;
  std::size_t half_orbit_dim = 0;
  std::size_t projection_dim = 0;    // maximum over trials
  std::size_t intersection_dim = 0;  // maximum over trials
  std::vector<std::size_t> trial_projection_dims;
  std::vector<std::size_t> trial_intersection_dims;
  std::vector<std::uint64_t> trial_seeds;
  bool pass = false;
};

/// Requires A numeric, in g, rank 2 and semisimple; throws std::invalid_argument otherwise.
TangentIntersection tangent_intersection(const AlgebraSpec& spec, const RationalMatrix& a, int trials,
                                         std::uint64_t seed);

/// Block decomposition of g_A for a rank-2 semisimple A, read off the
/// eigenvalue multiplicities: gl(mult) per eigenvalue for gl; for so/sp a
/// gl(1) for the pair +-lambda and so(m-2) or sp(n-1) for the kernel.
struct StabilizerBlocks {
  std::vector<std::string> blocks;
  std::size_t dimension = 0;
  std::size_t index = 0;
  std::string format() const;
};

StabilizerBlocks stabilizer_blocks(const AlgebraSpec& spec, const RationalMatrix& a);

/// ind g_A = dim g_A - max rank of (B, C) -> Tr(xi [B, C]) over random xi in g.
std::size_t stabilizer_index(const AlgebraSpec& spec, const RationalMatrix& a, int trials, std::uint64_t seed);

}  // namespace envalg
