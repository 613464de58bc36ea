#include "lmax/dimacs.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace lmax {
namespace {

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_int(std::string_view tok, std::size_t line, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + std::string(tok) + "'");
  return v;
}

struct Header {
  InputFormat format;
  Var nv;
  std::size_t nc;
  std::optional<Cost> top;
};

Header parse_header(const std::vector<std::string_view>& toks, std::size_t line) {
  if (toks.size() < 4) throw ParseError(line, "malformed header");
  Header h{};
  if (toks[1] == "cnf") {
    if (toks.size() != 4) throw ParseError(line, "malformed header: expected 'p cnf <vars> <clauses>'");
    h.format = InputFormat::Cnf;
  } else if (toks[1] == "wcnf") {
    if (toks.size() > 5) throw ParseError(line, "malformed header: too many fields");
    h.format = InputFormat::Wcnf;
  } else {
    throw ParseError(line, "malformed header: unknown format '" + std::string(toks[1]) + "'");
  }
  long long nv = parse_int<long long>(toks[2], line, "variable count");
  long long nc = parse_int<long long>(toks[3], line, "clause count");
  if (nv < 0 || nc < 0) throw ParseError(line, "malformed header: negative count");
  if (nv > INT32_MAX) throw ParseError(line, "malformed header: variable count too large");
  h.nv = static_cast<Var>(nv);
  h.nc = static_cast<std::size_t>(nc);
  if (toks.size() == 5) {
    Cost top = parse_int<Cost>(toks[4], line, "top weight");
    if (top == 0) throw ParseError(line, "malformed header: top must be positive");
    h.top = top;
  }
  return h;
}

ParsedInstance parse_impl(std::istream& in, const ParseOptions& opts, std::optional<InputFormat> expect) {
  ParsedInstance inst;
  std::optional<Header> header;
  std::string raw;
  std::size_t lineno = 0;

  // clause under construction (may span lines)
  std::vector<Lit> lits;
  std::optional<Cost> weight;
  bool in_clause = false;
  std::size_t clause_line = 0;
  std::size_t clauses_read = 0;

  auto finish_clause = [&](std::size_t line) {
    std::vector<Lit> sorted = lits;
    std::sort(sorted.begin(), sorted.end());
    bool duplicate = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    if (duplicate && header->format == InputFormat::Cnf && opts.strict)
      throw ParseError(line, "repeated literal in cnf clause (weighted line in a cnf file?)");
    Clause c(std::move(lits));
    lits.clear();
    if (header->format == InputFormat::Cnf) {
      inst.wcnf.add_soft(std::move(c), 1);
    } else if (header->top && *weight == *header->top) {
      inst.wcnf.add_hard(std::move(c));
    } else {
      inst.wcnf.add_soft(std::move(c), *weight);
    }
    ++clauses_read;
    in_clause = false;
    weight.reset();
  };

  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    if (toks[0][0] == 'c' && !in_clause) continue;
    if (toks[0] == "p") {
      if (header) throw ParseError(lineno, "duplicate header");
      if (in_clause) throw ParseError(lineno, "header inside a clause");
      header = parse_header(toks, lineno);
      if (expect && header->format != *expect)
        throw ParseError(lineno, expect == InputFormat::Cnf ? "expected 'p cnf' header" : "expected 'p wcnf' header");
      inst.format = header->format;
      inst.num_vars_declared = header->nv;
      inst.num_clauses_declared = header->nc;
      inst.top = header->top;
      if (header->format == InputFormat::Cnf) inst.top.reset();
      inst.wcnf.num_vars = header->nv;
      continue;
    }
    if (toks[0] == "h") throw ParseError(lineno, "h-prefixed (2022+) WCNF format is not supported");
    if (!header) throw ParseError(lineno, "clause before header");

    for (auto tok : toks) {
      if (!in_clause) {
        in_clause = true;
        clause_line = lineno;
        if (header->format == InputFormat::Wcnf) {
          if (!tok.empty() && tok[0] == '-') throw ParseError(lineno, "negative weight");
          Cost w = parse_int<Cost>(tok, lineno, "weight");
          if (w == 0) throw ParseError(lineno, "weight 0");
          if (header->top && w > *header->top) throw ParseError(lineno, "weight exceeds top");
          weight = w;
          continue;
        }
      }
      long long d = parse_int<long long>(tok, lineno, "literal");
      if (d == 0) {
        finish_clause(lineno);
        continue;
      }
      long long v = d < 0 ? -d : d;
      if (v > INT32_MAX) throw ParseError(lineno, "variable index too large");
      if (static_cast<Var>(v) > inst.num_vars_declared) {
        if (opts.strict) throw ParseError(lineno, "variable " + std::to_string(v) + " exceeds declared count");
        inst.wcnf.num_vars = std::max(inst.wcnf.num_vars, static_cast<Var>(v));
      }
      lits.push_back(Lit::from_dimacs(d));
    }
  }
  if (!header) throw ParseError(lineno, "missing header");
  if (in_clause) throw ParseError(clause_line, "missing terminating 0");
  if (clauses_read != header->nc) {
    std::string msg = "declared " + std::to_string(header->nc) + " clauses, read " + std::to_string(clauses_read);
    if (opts.strict) throw ParseError(lineno, msg);
    inst.warnings.push_back(msg);
  }
  if (header->top && header->format == InputFormat::Wcnf) {
    Cost total = inst.wcnf.total_soft_weight();
    if (*header->top <= total)
      inst.warnings.push_back("top " + std::to_string(*header->top) + " does not exceed total soft weight " +
                              std::to_string(total));
  }
  return inst;
}

void write_lits(std::ostringstream& os, const Clause& c) {
  for (Lit l : c) os << l.to_dimacs() << ' ';
  os << "0\n";
}

}  // namespace

ParsedInstance parse_wcnf(std::istream& in, const ParseOptions& opts) { return parse_impl(in, opts, InputFormat::Wcnf); }
ParsedInstance parse_cnf(std::istream& in, const ParseOptions& opts) { return parse_impl(in, opts, InputFormat::Cnf); }
ParsedInstance parse_dimacs(std::istream& in, const ParseOptions& opts) { return parse_impl(in, opts, std::nullopt); }

ParsedInstance parse_wcnf(std::string_view text, const ParseOptions& opts) {
  std::istringstream in{std::string(text)};
  return parse_wcnf(in, opts);
}
ParsedInstance parse_cnf(std::string_view text, const ParseOptions& opts) {
  std::istringstream in{std::string(text)};
  return parse_cnf(in, opts);
}
ParsedInstance parse_dimacs(std::string_view text, const ParseOptions& opts) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in, opts);
}

std::string write_instance(const ParsedInstance& inst) {
  std::ostringstream os;
  const WCNF& f = inst.wcnf;
  std::size_t nc = f.hard.size() + f.soft.size();
  Var nv = std::max(inst.num_vars_declared, f.num_vars);
  if (inst.format == InputFormat::Cnf) {
    if (!f.hard.empty()) throw std::invalid_argument("cnf output cannot carry hard clauses");
    os << "p cnf " << nv << ' ' << nc << '\n';
    for (const auto& s : f.soft) {
      if (s.weight != 1) throw std::invalid_argument("cnf output requires unit weights");
      write_lits(os, s.clause);
    }
    return os.str();
  }
  if (!inst.top) {
    if (!f.hard.empty()) throw std::invalid_argument("legacy wcnf output cannot carry hard clauses");
    os << "p wcnf " << nv << ' ' << nc << '\n';
  } else {
    os << "p wcnf " << nv << ' ' << nc << ' ' << *inst.top << '\n';
    for (const auto& c : f.hard) {
      os << *inst.top << ' ';
      write_lits(os, c);
    }
  }
  for (const auto& s : f.soft) {
    os << s.weight << ' ';
    write_lits(os, s.clause);
  }
  return os.str();
}

std::string write_wcnf(const WCNF& f, Cost top) {
  if (top <= f.total_soft_weight()) throw std::invalid_argument("top must exceed the total soft weight");
  ParsedInstance inst;
  inst.format = InputFormat::Wcnf;
  inst.num_vars_declared = f.num_vars;
  inst.top = top;
  inst.wcnf = f;
  return write_instance(inst);
}

std::string write_wcnf(const WCNF& f) { return write_wcnf(f, checked_add(f.total_soft_weight(), 1)); }

std::string write_solution(const MaxSatSolution& sol, SolveStatus status) {
  std::ostringstream os;
  switch (status) {
    case SolveStatus::HardUnsat:
      os << "s UNSATISFIABLE\n";
      break;
    case SolveStatus::Unknown:
      os << "s UNKNOWN\n";
      break;
    case SolveStatus::Optimum:
      os << "o " << sol.cost << "\ns OPTIMUM FOUND\nv";
      for (Var v = 1; v <= sol.model.num_vars(); ++v) os << ' ' << (sol.model.value(v) ? "" : "-") << v;
      os << " 0\n";
      break;
  }
  return os.str();
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimum:
      return 0;
    case SolveStatus::HardUnsat:
      return 20;
    case SolveStatus::Unknown:
      return 0;
  }
  return 1;
}

}  // namespace lmax
