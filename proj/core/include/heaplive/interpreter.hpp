#pragma once

// Reference evaluator with a traced, boxed heap. Every dereference of a
// reference that was reached from a variable is logged as a link use along
// the access path that reached it.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "heaplive/access_pattern.hpp"
#include "heaplive/frontend.hpp"
#include "heaplive/nfa.hpp"

namespace heaplive {

using NodeId = int;

/// Path a value was reached by, and the step at which the root variable
/// occurrence was evaluated.
struct Origin {
  RootedPath path;
  int root_step = 0;

  bool operator==(const Origin&) const = default;
};

struct Value {
  enum class Kind { Num, Bool, Nil, Pair };

  Kind kind = Kind::Nil;
  std::int64_t num = 0;
  bool truth = false;
  NodeId node = -1;  // boxed numbers, Nil and pairs
  std::optional<Origin> origin;
};

struct HeapNode {
  enum class Kind { Pair, Nil, Num };

  NodeId id = 0;
  Kind kind = Kind::Nil;
  std::int64_t num = 0;
  std::vector<Value> children;  // pair: {car, cdr} as stored by cons
};

struct TraceEvent {
  enum class Kind { Visit, Use };

  Kind kind = Kind::Visit;
  int step = 0;
  // Visit
  ProgramPoint point = kNoPoint;
  std::map<std::string, NodeId> env;  // -1 for booleans
  // Use
  RootedPath via;
  int root_step = 0;
  NodeId node = -1;

  /// "visit pN @step" or "use v.PATTERN @step"
  std::string str() const;
};

struct Trace {
  std::vector<TraceEvent> events;

  std::string dump() const;
};

class RuntimeFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Evaluation {
  Value result;
  Trace trace;
  std::vector<HeapNode> heap;
};

/// Eager left-to-right evaluation of a validated program. The final result
/// is walked completely, since the whole result is needed. Throws
/// RuntimeFault on car/cdr of a non-pair, + on a non-number, a non-boolean
/// if-condition, or when max_steps is exceeded.
Evaluation evaluate_program(const Program& p, int max_steps = 1'000'000);

/// "(cons 4 Nil)", "#t", "7".
std::string render_value(const Evaluation& ev, const Value& v);

/// Paths rooted at variables in scope at π and used at or after the visit of
/// π, closed under prefixes. Throws std::invalid_argument unless π was
/// visited exactly once.
std::set<RootedPath> collect_dynamic_live_paths(const Trace& t, ProgramPoint pi);

/// Number of visits of π in t.
int visit_count(const Trace& t, ProgramPoint pi);

struct Violation {
  ProgramPoint point = kNoPoint;
  RootedPath path;

  bool operator==(const Violation&) const = default;
};

struct SoundnessReport {
  std::vector<ProgramPoint> checked;
  std::vector<ProgramPoint> skipped;  // not visited exactly once
  std::size_t paths_checked = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Every dynamic path v.α at each listed point must be accepted by the
/// automaton for (π, v).
SoundnessReport check_soundness(const AutomataStore& automata, const Trace& t,
                                const std::vector<ProgramPoint>& points);

}  // namespace heaplive
