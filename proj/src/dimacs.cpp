#include "pbitsat/dimacs.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pbitsat {

namespace {

bool parse_int(const std::string& tok, long& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  long v = std::strtol(tok.c_str(), &end, 10);
  if (errno != 0 || end != tok.c_str() + tok.size()) return false;
  out = v;
  return true;
}

// Dedup repeated literals (stable, first occurrence wins) and detect
// tautologies. Clause stays in place either way so indices are stable.
void finish_clause(DimacsDocument& doc, std::vector<int>& lits) {
  std::vector<int> clause;
  clause.reserve(lits.size());
  bool taut = false;
  for (int l : lits) {
    if (std::find(clause.begin(), clause.end(), l) != clause.end()) continue;
    if (std::find(clause.begin(), clause.end(), -l) != clause.end()) taut = true;
    clause.push_back(l);
  }
  if (clause.empty()) doc.has_empty_clause = true;
  if (taut) doc.tautological.push_back(doc.clauses.size());
  doc.clauses.push_back(std::move(clause));
  lits.clear();
}

} // namespace

DimacsDocument parse_dimacs(std::istream& in) {
  DimacsDocument doc;
  bool header_seen = false;
  long declared_clauses = -1;
  std::vector<int> pending;
  std::string line;
  bool trailer = false; // SATLIB files may end with a '%' trailer

  while (!trailer && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos) continue;

    if (line[pos] == 'c') {
      doc.comments.push_back(line.substr(pos));
      continue;
    }
    if (line[pos] == '%') {
      trailer = true;
      break;
    }
    if (line[pos] == 'p') {
      if (header_seen) {
        doc.warnings.push_back("duplicate 'p' line ignored: " + line);
        continue;
      }
      std::istringstream hs(line.substr(pos));
      std::string p, fmt;
      long nv = -1, nc = -1;
      hs >> p >> fmt >> nv >> nc;
      if (hs.fail() || p != "p" || fmt != "cnf" || nv < 0 || nc < 0)
        throw DimacsError(DimacsError::Kind::MalformedHeader,
                          "malformed problem line: " + line);
      doc.num_vars = static_cast<int>(nv);
      declared_clauses = nc;
      header_seen = true;
      continue;
    }

    if (!header_seen)
      throw DimacsError(DimacsError::Kind::MalformedHeader,
                        "clause data before 'p cnf' header");

    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (tok == "%") {
        trailer = true;
        break;
      }
      long lit;
      if (!parse_int(tok, lit))
        throw DimacsError(DimacsError::Kind::InvalidToken,
                          "unexpected token '" + tok + "'");
      if (lit == 0) {
        finish_clause(doc, pending);
        continue;
      }
      long v = lit < 0 ? -lit : lit;
      if (v > doc.num_vars)
        throw DimacsError(DimacsError::Kind::LiteralOutOfRange,
                          "literal " + std::to_string(lit) + " exceeds declared " +
                              std::to_string(doc.num_vars) + " variables");
      pending.push_back(static_cast<int>(lit));
    }
  }

  if (!header_seen)
    throw DimacsError(DimacsError::Kind::MalformedHeader, "missing 'p cnf' header");
  if (!pending.empty())
    throw DimacsError(DimacsError::Kind::UnterminatedClause,
                      "end of input inside a clause (missing terminating 0)");
  if (declared_clauses >= 0 &&
      declared_clauses != static_cast<long>(doc.clauses.size()))
    doc.warnings.push_back("header declares " + std::to_string(declared_clauses) +
                           " clauses, found " + std::to_string(doc.clauses.size()));
  return doc;
}

DimacsDocument parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

DimacsDocument parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw DimacsError(DimacsError::Kind::IoError, "cannot open " + path);
  return parse_dimacs(in);
}

void write_dimacs(const DimacsDocument& doc, std::ostream& out) {
  for (const auto& c : doc.comments) out << c << '\n';
  out << "p cnf " << doc.num_vars << ' ' << doc.clauses.size() << '\n';
  for (const auto& clause : doc.clauses) {
    for (int l : clause) out << l << ' ';
    out << "0\n";
  }
}

std::string write_dimacs(const DimacsDocument& doc) {
  std::ostringstream out;
  write_dimacs(doc, out);
  return out.str();
}

void write_dimacs_file(const DimacsDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw DimacsError(DimacsError::Kind::IoError, "cannot write " + path);
  write_dimacs(doc, out);
}

} // namespace pbitsat
