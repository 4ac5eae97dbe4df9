#pragma once

// End-to-end driver: source text -> symbolic analysis -> grammar -> automata
// -> reports.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "heaplive/frontend.hpp"
#include "heaplive/grammar.hpp"
#include "heaplive/nfa.hpp"
#include "heaplive/transfer.hpp"

namespace heaplive {

struct Analysis {
  Program program;
  SymbolicAnalysis symbolic;
  std::map<FnArg, AffineForm> constraints;
  Grammar grammar;       // useless nonterminals removed
  Grammar approximated;  // strongly regular
  AutomataStore automata;
};

/// Throws AffineError if some transfer equation is not affine in σ.
Analysis analyze(Program p);
Analysis analyze_source(std::string_view text);

struct Query {
  ProgramPoint point = kNoPoint;
  std::string var;
  std::string pattern;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "14:w:10"; an empty pattern ("14:w:") means ε. Throws UsageError.
Query parse_query(std::string_view text);

struct RunConfig {
  std::string input;
  bool dump_equations = false;
  bool dump_grammar = false;
  bool dump_annotations = false;
  std::optional<std::string> emit_dot_dir;
  std::optional<Query> query;
  bool nullify_report = false;
  std::size_t depth = 3;
  bool trace = false;
  bool check_soundness = false;
  std::optional<std::string> json_out;

  bool any_action() const;
};

struct AutomatonSummary {
  std::string name;
  std::size_t states = 0;
  std::size_t edges = 0;
  std::size_t finals = 0;

  bool operator==(const AutomatonSummary&) const = default;
};

struct PointSummary {
  ProgramPoint pi = kNoPoint;
  std::vector<AutomatonSummary> vars;

  bool operator==(const PointSummary&) const = default;
};

struct EquationEntry {
  std::string fn;
  int index = 0;
  std::string rhs;

  bool operator==(const EquationEntry&) const = default;
};

struct CandidateEntry {
  ProgramPoint pi = kNoPoint;
  std::string var;
  std::string pattern;
  std::string status;

  bool operator==(const CandidateEntry&) const = default;
};

struct SoundnessSummary {
  std::vector<ProgramPoint> checked;
  std::vector<ProgramPoint> skipped;
  std::size_t paths = 0;
  std::vector<std::string> violations;  // "pi=N v.α"

  bool operator==(const SoundnessSummary&) const = default;
};

struct AnalysisReport {
  std::vector<PointSummary> points;
  std::vector<EquationEntry> equations;
  std::vector<CandidateEntry> candidates;
  std::optional<SoundnessSummary> soundness;

  bool operator==(const AnalysisReport&) const = default;
};

AnalysisReport build_report(const Analysis& a, const RunConfig& cfg);
std::string report_to_json(const AnalysisReport& r);
/// Throws std::invalid_argument on malformed input.
AnalysisReport report_from_json(std::string_view text);

/// Runs every action selected in cfg, writing human-readable output to out
/// and diagnostics to err. Returns 0 on success, 1 on an analysis or runtime
/// fault, 2 on a usage, parse or validation error.
int run_pipeline(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace heaplive
