#pragma once

// Nullification candidates: links v.α under which nothing is live at π.
// No alias or availability check is made, so every candidate is reported as
// unsafe-unchecked.

#include <string>
#include <vector>

#include "heaplive/access_pattern.hpp"
#include "heaplive/nfa.hpp"

namespace heaplive {

inline constexpr const char* kUnsafeUnchecked = "unsafe-unchecked";

struct Candidate {
  ProgramPoint point = kNoPoint;
  RootedPath path;
  std::string status = kUnsafeUnchecked;

  /// "pi=14 w.0 [unsafe-unchecked]"
  std::string str() const;

  auto operator<=>(const Candidate&) const = default;
  bool operator==(const Candidate&) const = default;
};

/// For each variable in scope at π (in scope order) and each canonical α with
/// |α| <= depth such that no accepted string has α as a prefix, the shortest
/// such α along each branch. Throws std::out_of_range for an unknown point.
std::vector<Candidate> nullification_candidates(const AutomataStore& automata, ProgramPoint pi,
                                                std::size_t depth);

}  // namespace heaplive
