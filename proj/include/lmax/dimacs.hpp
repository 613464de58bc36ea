// DIMACS CNF / WCNF reading and writing, and MaxSAT-Evaluation style output.
#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lmax/core.hpp"

namespace lmax {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class InputFormat { Cnf, Wcnf };

struct ParseOptions {
  /// Strict: literals beyond the declared variable count and clause-count
  /// mismatches are errors. Lenient: the universe grows as needed.
  bool strict = true;
};

struct ParsedInstance {
  InputFormat format = InputFormat::Wcnf;
  Var num_vars_declared = 0;
  std::size_t num_clauses_declared = 0;
  /// Absent for plain CNF and legacy "p wcnf nv nc" headers.
  std::optional<Cost> top;
  WCNF wcnf;
  std::vector<std::string> warnings;
};

ParsedInstance parse_wcnf(std::istream& in, const ParseOptions& opts = {});
ParsedInstance parse_cnf(std::istream& in, const ParseOptions& opts = {});
/// Dispatches on the "p" line.
ParsedInstance parse_dimacs(std::istream& in, const ParseOptions& opts = {});

ParsedInstance parse_wcnf(std::string_view text, const ParseOptions& opts = {});
ParsedInstance parse_cnf(std::string_view text, const ParseOptions& opts = {});
ParsedInstance parse_dimacs(std::string_view text, const ParseOptions& opts = {});

/// Canonical text: header, hard clauses, then soft clauses in index order.
std::string write_instance(const ParsedInstance& inst);
/// WCNF with the given top (must exceed the total soft weight).
std::string write_wcnf(const WCNF& f, Cost top);
std::string write_wcnf(const WCNF& f);

enum class SolveStatus { Optimum, HardUnsat, Unknown };

std::string write_solution(const MaxSatSolution& sol, SolveStatus status);

int exit_code(SolveStatus status);

}  // namespace lmax
