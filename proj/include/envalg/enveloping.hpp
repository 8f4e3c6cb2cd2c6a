#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "envalg/linalg.hpp"
#include "envalg/pbw.hpp"
#include "envalg/shift_matrix.hpp"

namespace envalg {

/// Lazily extended table of the matrix-power elements
///   (X^M)_{ij} = sum over k_1..k_{M-1} in L of X_{i,k_1} X_{k_1,k_2} ... X_{k_{M-1},j}
/// for i, j in a label block L (the whole index set, or a subalgebra level).
/// Entries are normal-ordered; raw labels are canonicalized with their sign.
class MatrixPowers {
 public:
  MatrixPowers(EnvelopingPtr algebra, std::vector<int> labels);

  /// Shared table per (algebra, block); safe to call concurrently.
  static std::shared_ptr<MatrixPowers> of(const EnvelopingPtr& algebra, const std::vector<int>& labels);
  static std::shared_ptr<MatrixPowers> of(const EnvelopingPtr& algebra) {
    return of(algebra, algebra->spec().index_set());
  }

  const EnvelopingPtr& algebra() const { return algebra_; }
  const std::vector<int>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  /// (X^M)_{ij}; throws std::invalid_argument for M < 0, std::out_of_range
  /// for labels outside the block.
  const QPoly& entry(int M, int i, int j);
  const QPoly& entry_at(int M, std::size_t a, std::size_t b);
  std::size_t position(int label) const;

 private:
  void extend_to(int M);

  EnvelopingPtr algebra_;
  std::vector<int> labels_;
  std::mutex mutex_;
  std::deque<std::vector<QPoly>> table_;
};

QPoly matrix_power_element(const EnvelopingPtr& algebra, int M, int i, int j);

/// (X^M) = sum_i (X^M)_{ii} over the block (default: the whole index set).
QPoly casimir(const EnvelopingPtr& algebra, int M);
QPoly casimir(const EnvelopingPtr& algebra, int M, const std::vector<int>& labels);

/// (AX^M) = sum_{i,j} A_{ji} (X^M)_{ij} over the shift's label block.
QPoly shift_generator(const EnvelopingPtr& algebra, const RationalMatrix& a, int M, const std::vector<int>& labels);
QPoly shift_generator(const EnvelopingPtr& algebra, const RationalMatrix& a, int M);
/// Symbolic version; coefficients are polynomials in the shift parameters.
ParamNCPoly shift_generator(const EnvelopingPtr& algebra, const ShiftMatrix& a, int M);

/// (BX) = sum_{i,j} B_{ji} X_{ij}.
QPoly linear_element(const EnvelopingPtr& algebra, const RationalMatrix& b);

/// Basis of {B in g : [A,B] = 0}, as matrices over the index set, from the
/// exact null space in generator coordinates (deterministic order).
std::vector<RationalMatrix> stabilizer_basis(const AlgebraSpec& spec, const RationalMatrix& a);

/// Coordinates of g as matrices: defining_matrix of each canonical generator.
std::vector<RationalMatrix> algebra_basis(const AlgebraSpec& spec);

/// c with [(BX),(AX^N)] = c ([A,B] X^N): 1 for gl, 2 for so/sp, where (BX)
/// counts each generator once from (i,j) and once from its partner (-j,-i).
int centralizer_factor(const AlgebraSpec& spec);

/// [(BX),(AX^N)] - c ([A,B]X^N); zero for every B in g.
QPoly check_centralizer(const EnvelopingPtr& algebra, const RationalMatrix& a, const RationalMatrix& b, int N);

/// [X_{ij}, (X^M)_{kl}] minus its delta/epsilon expansion.
QPoly tensorial_residual(const EnvelopingPtr& algebra, int M, int i, int j, int k, int l);

// ---------------------------------------------------------------- chains

/// A descending chain of subalgebras with a shift at each step that needs one.
///
/// gl(n): steps k_i in {1,2}; levels gl(n), gl(n-k_1), ... down to gl(1) or
///   gl(0); level gl(m) uses the last m labels.
/// so(n): steps k_i in {1,2}; levels down to so(2); level so(m) uses the
///   labels -floor(m/2)..floor(m/2) (0 only for odd m), so a one-step drop
///   from even to odd size is not realizable and is rejected.
/// sp(n): the fixed chain sp(n) > sp(n-1) > ... > sp(1) > gl(1); every
///   level carries a shift.
struct ChainSpec {
  AlgebraSpec algebra;
  std::vector<int> steps;
  /// Shift designators, one per step (gl/so; empty where the step is 1) or
  /// one per level sp(n)..sp(1) (sp).
  std::vector<std::optional<std::string>> shifts;
  /// Optional expected level names, checked against the derived ones.
  std::vector<std::string> levels;
};

struct ChainLevel {
  std::string name;             // "gl(2)", "so(3)", ...
  int size = 0;                 // matrix size of the level (rank for sp)
  std::vector<int> labels;      // label block of the level
  int step = 0;                 // drop to the next level; 0 at the end
  std::optional<ShiftMatrix> shift;
};

/// Parses a chain file (JSON: algebra, steps, shifts, optional levels).
ChainSpec parse_chain_json(const std::string& text);
ChainSpec read_chain_file(const std::string& path);

/// Validates the chain and resolves its levels and shift matrices (rank 2,
/// semisimple, inside the level's matrix algebra). Throws std::invalid_argument.
std::vector<ChainLevel> chain_levels(const ChainSpec& chain);

struct FamilyMember {
  std::string label;
  std::string provenance;  // "casimir@gl(3)", "shift@gl(3)", "abelian@so(2)"
  QPoly element;
};

/// Named list of quantum generators; commutativity is a checked property.
struct CommutativeFamily {
  std::string name;
  AlgebraSpec spec;
  std::vector<FamilyMember> members;
};

CommutativeFamily chain_generators(const ChainSpec& chain);

// ---------------------------------------------------------------- propositions

/// [(X^M)_{ij},(X^N)_{kl}] - sum_{S=1}^M ((X^{M+N-S})_{il}(X^{S-1})_{kj} - (X^{S-1})_{il}(X^{N+M-S})_{kj}).
QPoly proposition1_residual(const EnvelopingPtr& algebra, int M, int N, int i, int j, int k, int l);

/// [(AX^M),(AX^N)] - sum_{S=1}^M sum_{P=1}^{S-1} [(AX^{P-1}),(AX^{M+N-P-1})].
QPoly proposition2_residual(const EnvelopingPtr& algebra, const RationalMatrix& a, int M, int N);

/// [(AX^M),(AX^N)] + sum_S sum_{ijkl} A_{ji}A_{lk}[(X^{S-1})_{il},(X^{N+M-S})_{kj}], the
/// intermediate form of the same identity.
QPoly proposition2_intermediate_residual(const EnvelopingPtr& algebra, const RationalMatrix& a, int M, int N);

/// Central coefficients C_0..C_D with
///   (X^D)_{ij} = sum_p C_p eps_i eps_j (X^p)_{-j,-i}   for all i, j,
/// where C_p is a polynomial in the nonzero trace Casimirs of filtration
/// degree at most D - p, found by exact linear solving.
///
/// In small algebras the powers (X^p) satisfy Cayley-Hamilton type
/// relations, so the C_p need not be unique; the solver then fixes the
/// leading coefficient to (-1)^D when that is consistent and reports whether
/// the system itself forces it.
struct CentralExpansion {
  int degree = 0;
  std::vector<QPoly> coefficients;          // C_0 .. C_degree
  std::vector<std::string> casimir_basis;   // monomials kept after pruning, e.g. "(X^2)^2"
  bool solvable = false;
  std::size_t solution_freedom = 0;         // null-space dimension of the system
  bool leading_determined = false;          // every solution has the same C_D
  bool leading_normalized = false;          // a solution with C_D = (-1)^D exists (and is returned)
};

CentralExpansion solve_central_expansion(const EnvelopingPtr& algebra, int degree);

/// (X^D)_{ij} - sum_p C_p eps_i eps_j (X^p)_{-j,-i} for a solved expansion.
QPoly proposition3_residual(const EnvelopingPtr& algebra, const CentralExpansion& c, int i, int j);

/// Sign of the epsilon part of the so/sp commutator of matrix powers that
/// the Leibniz expansion produces: kappa = eps_u eps_{-u} (+1 for so, -1 for sp).
int proposition4_derived_sign(const AlgebraSpec& spec);

/// [(X^M)_{ij},(X^N)_{kl}] - gl part - sign * sum_p C_p sum_S (
///   eps_{-l}eps_k (X^{M+p-S})_{i,-k}(X^{S-1})_{-l,j} - eps_{-k}eps_l (X^{S-1})_{i,-k}(X^{p+M-S})_{-l,j}),
/// with C_p the expansion of degree N.
QPoly proposition4_residual(const EnvelopingPtr& algebra, const CentralExpansion& cn, int M, int N, int i, int j,
                            int k, int l, int sign);

/// T1(a,b) = sum A_{ji}A_{lk}[(X^a)_{ij},(X^b)_{kl}] = [(AX^a),(AX^b)].
QPoly contraction_t1(const EnvelopingPtr& algebra, const RationalMatrix& a, int p, int q);
/// T2(a,b) = sum A_{jk}A_{li}[(X^a)_{ij},(X^b)_{kl}].
QPoly contraction_t2(const EnvelopingPtr& algebra, const RationalMatrix& a, int p, int q);

/// Left minus right side of the two paired recursions for T1(M,N) and
/// T2(M,N); `expansions[d]` must hold the central expansion of degree d for
/// d <= max(M, N). `sign` is the symmetry sign of A.
QPoly proposition5_residual_i(const EnvelopingPtr& algebra, const RationalMatrix& a,
                              const std::vector<CentralExpansion>& expansions, int M, int N);
QPoly proposition5_residual_ii(const EnvelopingPtr& algebra, const RationalMatrix& a,
                               const std::vector<CentralExpansion>& expansions, int M, int N, int sign);

}  // namespace envalg
