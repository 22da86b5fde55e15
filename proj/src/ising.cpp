#include "pbitsat/ising.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace pbitsat {

// ---------------------------------------------------------------------------
// PenaltyPoly

PenaltyPoly PenaltyPoly::constant(std::int64_t c) {
  PenaltyPoly p;
  if (c != 0) p.terms_[{}] = c;
  return p;
}

PenaltyPoly PenaltyPoly::variable(int v) {
  PenaltyPoly p;
  p.terms_[{v}] = 1;
  return p;
}

PenaltyPoly PenaltyPoly::one_minus_variable(int v) {
  PenaltyPoly p;
  p.terms_[{}] = 1;
  p.terms_[{v}] = -1;
  return p;
}

PenaltyPoly& PenaltyPoly::add_term(Term vars, std::int64_t coeff) {
  if (coeff == 0) return *this;
  auto it = terms_.find(vars);
  if (it == terms_.end()) {
    terms_.emplace(std::move(vars), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

PenaltyPoly& PenaltyPoly::operator+=(const PenaltyPoly& other) {
  for (const auto& [vars, c] : other.terms_) add_term(vars, c);
  return *this;
}

PenaltyPoly PenaltyPoly::operator*(const PenaltyPoly& other) const {
  PenaltyPoly out;
  for (const auto& [va, ca] : terms_) {
    for (const auto& [vb, cb] : other.terms_) {
      // multilinear product: union of the index sets (x*x = x)
      Term u;
      u.reserve(va.size() + vb.size());
      std::set_union(va.begin(), va.end(), vb.begin(), vb.end(),
                     std::back_inserter(u));
      out.add_term(std::move(u), ca * cb);
    }
  }
  return out;
}

int PenaltyPoly::degree() const {
  int d = 0;
  for (const auto& [vars, c] : terms_)
    d = std::max(d, static_cast<int>(vars.size()));
  return d;
}

std::int64_t PenaltyPoly::eval01(const std::vector<std::uint8_t>& x) const {
  std::int64_t total = 0;
  for (const auto& [vars, c] : terms_) {
    bool on = true;
    for (int v : vars)
      if (!x[static_cast<std::size_t>(v)]) {
        on = false;
        break;
      }
    if (on) total += c;
  }
  return total;
}

// ---------------------------------------------------------------------------
// AuxAllocator

int AuxAllocator::substitute_pair(int var_a, int var_b, std::int64_t abs_coeff) {
  if (var_a > var_b) std::swap(var_a, var_b);
  auto key = std::make_pair(var_a, var_b);
  auto it = pair_slot_.find(key);
  if (it != pair_slot_.end()) {
    pair_abs_sum_[it->second] += abs_coeff;
    return origin_spin_[it->second];
  }
  int spin = next_index_++;
  pair_slot_.emplace(key, origins_.size());
  origins_.push_back({AuxOrigin::Kind::PairProduct, var_a, var_b, -1});
  origin_spin_.push_back(spin);
  pair_abs_sum_.push_back(abs_coeff);
  return spin;
}

int AuxAllocator::fresh_chain_var(int clause_index) {
  int spin = next_index_++;
  origins_.push_back({AuxOrigin::Kind::ClauseChain, -1, -1, clause_index});
  origin_spin_.push_back(spin);
  pair_abs_sum_.push_back(0);
  return spin;
}

std::vector<PenaltyPoly> AuxAllocator::pair_penalties() const {
  std::vector<PenaltyPoly> out;
  for (std::size_t k = 0; k < origins_.size(); ++k) {
    if (origins_[k].kind != AuxOrigin::Kind::PairProduct) continue;
    int a = origins_[k].var_a, b = origins_[k].var_b, w = origin_spin_[k];
    std::int64_t m = 1 + pair_abs_sum_[k];
    PenaltyPoly p;
    p.add_term({a, b}, m);
    p.add_term({std::min(a, w), std::max(a, w)}, -2 * m);
    p.add_term({std::min(b, w), std::max(b, w)}, -2 * m);
    p.add_term({w}, 3 * m);
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// clause penalty and quadratization

PenaltyPoly clause_penalty(const std::vector<int>& clause) {
  if (clause.empty())
    throw EncodeError(EncodeError::Kind::EmptyClause,
                      "empty clause has constant penalty 1; formula is unsatisfiable");
  PenaltyPoly p = PenaltyPoly::constant(1);
  for (int lit : clause) {
    int v = std::abs(lit) - 1;
    // falsity factor of the literal: 1-x for positive, x for negated
    p = p * (lit > 0 ? PenaltyPoly::one_minus_variable(v) : PenaltyPoly::variable(v));
  }
  return p;
}

PenaltyPoly quadratize(const PenaltyPoly& poly, AuxAllocator& alloc) {
  if (poly.degree() > 3)
    throw EncodeError(EncodeError::Kind::DegreeTooHigh,
                      "penalty of degree > 3 reached quadratization");
  PenaltyPoly out;
  for (const auto& [vars, c] : poly.terms()) {
    if (vars.size() < 3) {
      out.add_term(vars, c);
      continue;
    }
    // vars sorted ascending: substitute the two smallest-index variables
    int w = alloc.substitute_pair(vars[0], vars[1], std::llabs(c));
    out.add_term({std::min(vars[2], w), std::max(vars[2], w)}, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// encode_cnf

namespace {

// Tseitin-style split of a wide clause into 3-literal links. Chain variables
// are fresh extension spins; their literals use the extended 1-based ids.
std::vector<std::vector<int>> split_wide_clause(const std::vector<int>& clause,
                                                int clause_index,
                                                AuxAllocator& alloc) {
  std::vector<std::vector<int>> out;
  std::vector<int> rest(clause);
  while (rest.size() > 3) {
    int t = alloc.fresh_chain_var(clause_index);
    out.push_back({rest[0], rest[1], t + 1});
    std::vector<int> next;
    next.push_back(-(t + 1));
    next.insert(next.end(), rest.begin() + 2, rest.end());
    rest = std::move(next);
  }
  out.push_back(rest);
  return out;
}

} // namespace

IsingModel encode_cnf(const CnfFormula& f) {
  if (f.trivially_unsat())
    throw EncodeError(EncodeError::Kind::EmptyClause,
                      "formula contains an empty clause");

  AuxAllocator alloc(f.num_vars());
  PenaltyPoly total;

  for (std::size_t ci = 0; ci < f.num_clauses(); ++ci) {
    // normalize: drop duplicate literals, skip tautologies
    std::vector<int> lits;
    bool taut = false;
    for (int l : f.clause(ci)) {
      if (std::find(lits.begin(), lits.end(), l) != lits.end()) continue;
      if (std::find(lits.begin(), lits.end(), -l) != lits.end()) taut = true;
      lits.push_back(l);
    }
    if (taut) continue;

    std::vector<std::vector<int>> parts =
        lits.size() > 3 ? split_wide_clause(lits, static_cast<int>(ci), alloc)
                        : std::vector<std::vector<int>>{lits};
    for (const auto& part : parts) {
      PenaltyPoly p = clause_penalty(part);
      if (p.degree() > 2) p = quadratize(p, alloc);
      total += p;
    }
  }

  for (const auto& pen : alloc.pair_penalties()) total += pen;

  IsingModel model;
  model.n_orig = f.num_vars();
  model.n_aux = alloc.allocated();
  model.aux_origin = alloc.origins();
  model.h_x8.assign(static_cast<std::size_t>(model.num_spins()), 0);

  // 0/1 domain -> spin domain via x = (1+s)/2, everything times 8:
  //   a            -> 8a to e0
  //   a x_i        -> 4a to e0, 4a to h_i
  //   a x_i x_j    -> 2a to e0, 2a to h_i and h_j, 2a to J_ij
  std::map<std::pair<int, int>, std::int64_t> coupling;
  for (const auto& [vars, c] : total.terms()) {
    switch (vars.size()) {
      case 0:
        model.e0_x8 += 8 * c;
        break;
      case 1:
        model.e0_x8 += 4 * c;
        model.h_x8[static_cast<std::size_t>(vars[0])] += 4 * c;
        break;
      case 2: {
        model.e0_x8 += 2 * c;
        model.h_x8[static_cast<std::size_t>(vars[0])] += 2 * c;
        model.h_x8[static_cast<std::size_t>(vars[1])] += 2 * c;
        coupling[{vars[0], vars[1]}] += 2 * c;
        break;
      }
      default:
        throw EncodeError(EncodeError::Kind::DegreeTooHigh,
                          "cubic term survived quadratization");
    }
  }
  for (const auto& [pair, v] : coupling)
    if (v != 0) model.couplings.push_back({pair.first, pair.second, v});

  model.finalize();
  return model;
}

// ---------------------------------------------------------------------------
// IsingModel

void IsingModel::finalize() {
  adjacency.assign(static_cast<std::size_t>(num_spins()), {});
  for (const auto& c : couplings) {
    adjacency[static_cast<std::size_t>(c.i)].emplace_back(c.j, c.value_x8);
    adjacency[static_cast<std::size_t>(c.j)].emplace_back(c.i, c.value_x8);
  }
}

std::int64_t IsingModel::energy_x8(const SpinVector& y) const {
  if (y.size() != static_cast<std::size_t>(num_spins()))
    throw EncodeError(EncodeError::Kind::DimensionMismatch,
                      "spin vector length does not match model");
  std::int64_t e = e0_x8;
  for (std::size_t i = 0; i < y.size(); ++i) e += h_x8[i] * y[i];
  for (const auto& c : couplings)
    e += c.value_x8 * y[static_cast<std::size_t>(c.i)] * y[static_cast<std::size_t>(c.j)];
  return e;
}

std::int64_t IsingModel::energy_via_fields_x8(const SpinVector& y) const {
  if (y.size() != static_cast<std::size_t>(num_spins()))
    throw EncodeError(EncodeError::Kind::DimensionMismatch,
                      "spin vector length does not match model");
  std::int64_t e = e0_x8;
  std::int64_t pair_part = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    e += h_x8[i] * y[i];
    std::int64_t row = 0;
    for (const auto& [j, v] : adjacency[i]) row += v * y[static_cast<std::size_t>(j)];
    pair_part += row * y[i];
  }
  return e + pair_part / 2; // each coupling counted from both endpoints
}

double IsingModel::energy(const SpinVector& y) const {
  return static_cast<double>(energy_x8(y)) / 8.0;
}

std::int64_t IsingModel::local_field_x8(const SpinVector& y, int i) const {
  if (i < 0 || i >= num_spins())
    throw EncodeError(EncodeError::Kind::DimensionMismatch, "spin index out of range");
  std::int64_t acc = -h_x8[static_cast<std::size_t>(i)];
  for (const auto& [j, v] : adjacency[static_cast<std::size_t>(i)])
    acc -= v * y[static_cast<std::size_t>(j)];
  return acc;
}

double IsingModel::local_field(const SpinVector& y, int i) const {
  return static_cast<double>(local_field_x8(y, i)) / 8.0;
}

std::string IsingModel::debug_dump() const {
  std::ostringstream out;
  out << "ising model: " << n_orig << " original + " << n_aux << " extension spins\n";
  out << "e0 = " << e0_x8 << "/8\n";
  for (std::size_t i = 0; i < h_x8.size(); ++i)
    if (h_x8[i] != 0) out << "h[" << i << "] = " << h_x8[i] << "/8\n";
  for (const auto& c : couplings)
    out << "J[" << c.i << "," << c.j << "] = " << c.value_x8 << "/8\n";
  for (std::size_t k = 0; k < aux_origin.size(); ++k) {
    const auto& o = aux_origin[k];
    out << "aux " << (n_orig + static_cast<int>(k)) << ": ";
    if (o.kind == AuxOrigin::Kind::PairProduct)
      out << "product of spins " << o.var_a << " and " << o.var_b << "\n";
    else
      out << "chain variable for clause " << o.clause_index << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// exact minimization over extension spins

std::int64_t min_energy_over_aux_x8(const IsingModel& model, const SpinVector& s_orig) {
  if (s_orig.size() != static_cast<std::size_t>(model.n_orig))
    throw EncodeError(EncodeError::Kind::DimensionMismatch,
                      "expected original spins only");
  const int n = model.n_orig;
  const int total = model.num_spins();

  // base energy from the original block
  std::int64_t e = model.e0_x8;
  for (int i = 0; i < n; ++i) e += model.h_x8[static_cast<std::size_t>(i)] * s_orig[static_cast<std::size_t>(i)];
  for (const auto& c : model.couplings)
    if (c.i < n && c.j < n)
      e += c.value_x8 * s_orig[static_cast<std::size_t>(c.i)] * s_orig[static_cast<std::size_t>(c.j)];

  // connected components of the extension-extension coupling graph
  std::vector<int> comp(static_cast<std::size_t>(model.n_aux), -1);
  int n_comp = 0;
  for (int a = 0; a < model.n_aux; ++a) {
    if (comp[static_cast<std::size_t>(a)] != -1) continue;
    std::vector<int> stack{a};
    comp[static_cast<std::size_t>(a)] = n_comp;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (const auto& [j, v] : model.adjacency[static_cast<std::size_t>(n + cur)]) {
        (void)v;
        if (j < n) continue;
        int other = j - n;
        if (comp[static_cast<std::size_t>(other)] == -1) {
          comp[static_cast<std::size_t>(other)] = n_comp;
          stack.push_back(other);
        }
      }
    }
    ++n_comp;
  }

  std::vector<std::vector<int>> members(static_cast<std::size_t>(n_comp));
  for (int a = 0; a < model.n_aux; ++a)
    members[static_cast<std::size_t>(comp[static_cast<std::size_t>(a)])].push_back(n + a);

  SpinVector y(static_cast<std::size_t>(total), 1);
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = s_orig[static_cast<std::size_t>(i)];

  for (const auto& group : members) {
    if (group.size() > 30)
      throw EncodeError(EncodeError::Kind::DimensionMismatch,
                        "extension component too large to enumerate");
    std::int64_t best = 0;
    bool first = true;
    for (std::uint64_t mask = 0; mask < (1ULL << group.size()); ++mask) {
      for (std::size_t b = 0; b < group.size(); ++b)
        y[static_cast<std::size_t>(group[b])] = (mask >> b) & 1 ? 1 : -1;
      // contribution of this component: its fields plus every coupling
      // touching it. A neighbor outside the group is always an original spin
      // (extension spins in other components are never coupled to this one).
      std::int64_t part = 0;
      for (int spin : group) {
        part += model.h_x8[static_cast<std::size_t>(spin)] * y[static_cast<std::size_t>(spin)];
        for (const auto& [j, v] : model.adjacency[static_cast<std::size_t>(spin)]) {
          if (j >= n && j < spin) continue; // internal coupling, counted from the other end
          part += v * y[static_cast<std::size_t>(spin)] * y[static_cast<std::size_t>(j)];
        }
      }
      if (first || part < best) {
        best = part;
        first = false;
      }
    }
    e += best;
  }
  return e;
}

} // namespace pbitsat
