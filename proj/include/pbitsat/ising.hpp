#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pbitsat/formula.hpp"

namespace pbitsat {

class EncodeError : public std::runtime_error {
public:
  enum class Kind { EmptyClause, DegreeTooHigh, DimensionMismatch };

  EncodeError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

// Multilinear polynomial over {0,1} variables, keyed by sorted sets of
// 0-based variable indices. Products reduce with x*x = x, so a clause like
// (v OR -v) collapses to the zero polynomial on its own.
class PenaltyPoly {
public:
  using Term = std::vector<int>; // sorted, distinct

  static PenaltyPoly constant(std::int64_t c);
  static PenaltyPoly variable(int v);          // x_v
  static PenaltyPoly one_minus_variable(int v); // 1 - x_v

  PenaltyPoly& operator+=(const PenaltyPoly& other);
  PenaltyPoly& add_term(Term vars, std::int64_t coeff);
  PenaltyPoly operator*(const PenaltyPoly& other) const;

  int degree() const;
  bool empty() const { return terms_.empty(); }
  const std::map<Term, std::int64_t>& terms() const { return terms_; }

  std::int64_t eval01(const std::vector<std::uint8_t>& x) const;

private:
  std::map<Term, std::int64_t> terms_;
};

// Where each extension spin came from: either the Rosenberg product of two
// lower-index spins, or a chaining variable from splitting a wide clause.
struct AuxOrigin {
  enum class Kind { PairProduct, ClauseChain };
  Kind kind;
  int var_a = -1;       // PairProduct: the replaced pair (0-based spin indices)
  int var_b = -1;
  int clause_index = -1; // ClauseChain: source clause in the input formula
};

// Single allocator for every spin index beyond the originals. Rosenberg
// auxiliaries are shared per unordered pair across the whole formula; the
// enforcement weight accumulates 1 + sum |c| over the cubic terms it serves.
class AuxAllocator {
public:
  explicit AuxAllocator(int first_index) : next_index_(first_index) {}

  int substitute_pair(int var_a, int var_b, std::int64_t abs_coeff);
  int fresh_chain_var(int clause_index);

  // Rosenberg enforcement penalties, one per allocated pair:
  //   M * (x_a x_b - 2 x_a w - 2 x_b w + 3 w),  M = 1 + sum |c|
  // which is 0 exactly when w = x_a x_b and >= M otherwise.
  std::vector<PenaltyPoly> pair_penalties() const;

  int allocated() const { return next_index_ - first_index(); }
  const std::vector<AuxOrigin>& origins() const { return origins_; }

private:
  int first_index() const { return next_index_ - static_cast<int>(origins_.size()); }

  int next_index_;
  std::map<std::pair<int, int>, std::size_t> pair_slot_; // pair -> origins_ index
  std::vector<AuxOrigin> origins_;
  std::vector<int> origin_spin_;                 // origins_ index -> spin index
  std::vector<std::int64_t> pair_abs_sum_;       // aligned with origins_
};

// Quadratic Ising energy E(y) = E0 + h.y + 1/2 y^T J y over original spins
// followed by extension spins. All coefficients are exact integers scaled by
// 8; no floating point enters the encoding.
struct IsingModel {
  struct Coupling {
    int i, j; // i < j
    std::int64_t value_x8;
  };

  int n_orig = 0;
  int n_aux = 0;
  std::int64_t e0_x8 = 0;
  std::vector<std::int64_t> h_x8;
  std::vector<Coupling> couplings;
  std::vector<AuxOrigin> aux_origin;

  // Per-spin (neighbor, J_x8) lists derived from couplings.
  std::vector<std::vector<std::pair<int, std::int64_t>>> adjacency;

  int num_spins() const { return n_orig + n_aux; }
  void finalize(); // rebuild adjacency

  std::int64_t energy_x8(const SpinVector& y) const;           // pairwise loop
  std::int64_t energy_via_fields_x8(const SpinVector& y) const; // field accumulation
  double energy(const SpinVector& y) const;

  std::int64_t local_field_x8(const SpinVector& y, int i) const;
  // Effective field -h_i - sum_j J_ij y_j driving the p-bit update.
  double local_field(const SpinVector& y, int i) const;

  std::string debug_dump() const;
};

// Penalty that is 1 exactly on assignments falsifying the clause (expects
// 1..3 signed DIMACS-style literals over the extended variable space).
PenaltyPoly clause_penalty(const std::vector<int>& clause);

// Replace each cubic term c * x_a x_b x_c by c * w x_c using the allocator's
// shared auxiliary for the two smallest-index variables. Degree <= 2 input is
// returned unchanged.
PenaltyPoly quadratize(const PenaltyPoly& poly, AuxAllocator& alloc);

IsingModel encode_cnf(const CnfFormula& f);

// Exact min over all extension-spin assignments of E([s; z]), computed by
// exhaustive enumeration per connected component of the extension-spin
// coupling graph. Equal to 8 * violation_count for a correct encoding.
std::int64_t min_energy_over_aux_x8(const IsingModel& model, const SpinVector& s_orig);

} // namespace pbitsat
