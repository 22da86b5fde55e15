#include "pbitsat/formula.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pbitsat {

CnfFormula::CnfFormula(int num_vars, std::vector<std::vector<int>> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  if (num_vars_ < 0) throw std::invalid_argument("negative variable count");
  pos_occ_.resize(static_cast<std::size_t>(num_vars_));
  neg_occ_.resize(static_cast<std::size_t>(num_vars_));
  for (std::size_t ci = 0; ci < clauses_.size(); ++ci) {
    const auto& c = clauses_[ci];
    if (c.empty()) has_empty_clause_ = true;
    for (int l : c) {
      int v = std::abs(l);
      if (l == 0 || v > num_vars_)
        throw std::out_of_range("literal " + std::to_string(l) +
                                " out of range for " + std::to_string(num_vars_) +
                                " variables");
      auto& occ = l > 0 ? pos_occ_ : neg_occ_;
      occ[static_cast<std::size_t>(v) - 1].push_back(static_cast<int>(ci));
    }
  }
}

CnfFormula CnfFormula::from_dimacs(const DimacsDocument& doc) {
  return CnfFormula(doc.num_vars, doc.clauses);
}

DimacsDocument CnfFormula::to_dimacs() const {
  DimacsDocument doc;
  doc.num_vars = num_vars_;
  doc.clauses = clauses_;
  doc.has_empty_clause = has_empty_clause_;
  return doc;
}

const std::vector<int>& CnfFormula::occurrences(int lit) const {
  int v = std::abs(lit);
  if (lit == 0 || v > num_vars_)
    throw std::out_of_range("literal out of range");
  return lit > 0 ? pos_occ_[static_cast<std::size_t>(v) - 1]
                 : neg_occ_[static_cast<std::size_t>(v) - 1];
}

SpinVector spin_of_bool(const BoolAssignment& x) {
  SpinVector s(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    s[i] = x[i] ? std::int8_t{1} : std::int8_t{-1};
  return s;
}

BoolAssignment bool_of_spin(const SpinVector& s) {
  BoolAssignment x(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) x[i] = s[i] > 0 ? 1 : 0;
  return x;
}

bool is_spin_vector(const SpinVector& s) {
  for (auto v : s)
    if (v != 1 && v != -1) return false;
  return true;
}

int violation_indicator(const std::vector<int>& clause, const SpinVector& s) {
  for (int l : clause)
    if (literal_true(l, s)) return 0;
  return 1;
}

int violation_count(const CnfFormula& f, const SpinVector& s) {
  if (s.size() != static_cast<std::size_t>(f.num_vars()))
    throw std::invalid_argument("spin vector length does not match formula");
  int total = 0;
  for (const auto& c : f.clauses()) total += violation_indicator(c, s);
  return total;
}

} // namespace pbitsat
