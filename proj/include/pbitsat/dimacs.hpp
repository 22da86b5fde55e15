#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbitsat {

// Parsed DIMACS CNF file. Variables are 1-indexed here, exactly as in the
// file format; everything downstream works 0-indexed, and this module is the
// boundary between the two conventions.
struct DimacsDocument {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<std::string> comments;          // 'c' lines, kept verbatim
  std::vector<std::size_t> tautological;      // indices of clauses with l and -l
  bool has_empty_clause = false;
  std::vector<std::string> warnings;          // e.g. header/body clause count mismatch
};

class DimacsError : public std::runtime_error {
public:
  enum class Kind {
    MalformedHeader,
    LiteralOutOfRange,
    UnterminatedClause,
    InvalidToken,
    IoError,
  };

  DimacsError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

DimacsDocument parse_dimacs(std::istream& in);
DimacsDocument parse_dimacs(const std::string& text);
DimacsDocument parse_dimacs_file(const std::string& path);

void write_dimacs(const DimacsDocument& doc, std::ostream& out);
std::string write_dimacs(const DimacsDocument& doc);
void write_dimacs_file(const DimacsDocument& doc, const std::string& path);

} // namespace pbitsat
