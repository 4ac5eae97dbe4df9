#pragma once

// Backward liveness transformers: XP for primitives, XE for expressions and
// the per-argument transfer equations XF of user functions.

#include <map>
#include <string>

#include "heaplive/frontend.hpp"
#include "heaplive/symbolic.hpp"

namespace heaplive {

/// Liveness of the i-th (1-based) operand of prim given the liveness s of
/// its result. Throws std::invalid_argument for a bad index.
SymbolicSet xp_transfer(Primitive prim, int i, const SymbolicSet& s);

/// Environment just before e, given liveness s of e's value and env after e.
/// Records the result in store at point(e) (and recursively for sub-terms).
LivenessEnv xe_analyze(const Expr& e, const SymbolicSet& s, const LivenessEnv& env,
                       AnnotationStore& store);

/// XF_f,i(σ) right-hand sides, keyed by (f, i).
using XfEquationSet = std::map<FnArg, SymbolicSet>;

/// Analyses every function body once with the formal σ; body annotations go
/// into store.
XfEquationSet xf_derive_equations(const Program& p, AnnotationStore& store);

/// Analyses the main expression with σ_pgm as the result liveness.
LivenessEnv analyze_main(const Program& p, AnnotationStore& store);

/// "xf[app,1](σ) = {ε} ∪ ..." one equation per line, ordered by (f, i).
std::string format_equations(const XfEquationSet& eqs);

struct SymbolicAnalysis {
  XfEquationSet equations;
  AnnotationStore store;
  LivenessEnv main_env;
};

SymbolicAnalysis analyze_program(const Program& p);

}  // namespace heaplive
