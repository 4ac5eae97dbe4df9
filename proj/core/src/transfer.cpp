#include "heaplive/transfer.hpp"

#include <stdexcept>

namespace heaplive {

SymbolicSet xp_transfer(Primitive prim, int i, const SymbolicSet& s) {
  if (i < 1 || i > primitive_arity(prim)) {
    throw std::invalid_argument("operand " + std::to_string(i) + " out of range for " +
                                std::string(primitive_name(prim)));
  }
  switch (prim) {
    case Primitive::Car:
      return SymbolicSet::epsilon() | SymbolicSet::word({Symbol::Zero}) * s;
    case Primitive::Cdr:
      return SymbolicSet::epsilon() | SymbolicSet::word({Symbol::One}) * s;
    case Primitive::Cons:
      return SymbolicSet::word({i == 1 ? Symbol::BarZero : Symbol::BarOne}) * s;
    case Primitive::IsNull:
    case Primitive::IsPair:
    case Primitive::Plus:
      return SymbolicSet::epsilon();
  }
  return {};
}

namespace {

LivenessEnv analyze(const Expr& e, const SymbolicSet& s, const LivenessEnv& env,
                    AnnotationStore& store) {
  switch (e.kind) {
    case ExprKind::Const:
    case ExprKind::Nil:
      return env;
    case ExprKind::Var:
      return env_add(env, e.name, s);
    case ExprKind::Prim: {
      LivenessEnv cur = env;
      for (int i = static_cast<int>(e.args.size()); i >= 1; --i) {
        cur = xe_analyze(e.args[i - 1], xp_transfer(e.prim, i, s), cur, store);
      }
      return cur;
    }
    case ExprKind::Call: {
      LivenessEnv cur = env;
      for (int i = static_cast<int>(e.args.size()); i >= 1; --i) {
        cur = xe_analyze(e.args[i - 1], SymbolicSet::xf_app({e.name, i}, s), cur, store);
      }
      return cur;
    }
    case ExprKind::If: {
      LivenessEnv else_env = xe_analyze(e.args[2], s, env, store);
      LivenessEnv then_env = xe_analyze(e.args[1], s, else_env, store);
      return xe_analyze(e.args[0], SymbolicSet::epsilon(), env_union(else_env, then_env), store);
    }
    case ExprKind::Let: {
      LivenessEnv body_env = xe_analyze(e.args[1], s, env, store);
      SymbolicSet bound = env_lookup_patterns(body_env, e.name);
      return xe_analyze(e.args[0], bound, env_remove_binding(body_env, e.name), store);
    }
  }
  return env;
}

}  // namespace

LivenessEnv xe_analyze(const Expr& e, const SymbolicSet& s, const LivenessEnv& env,
                       AnnotationStore& store) {
  LivenessEnv out = analyze(e, s, env, store);
  store.record(e.point, out);
  return out;
}

XfEquationSet xf_derive_equations(const Program& p, AnnotationStore& store) {
  XfEquationSet eqs;
  for (const auto& d : p.definitions) {
    LivenessEnv env = xe_analyze(d.body, SymbolicSet::sigma(), {}, store);
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      eqs[{d.name, static_cast<int>(i + 1)}] = env_lookup_patterns(env, d.params[i]);
    }
  }
  return eqs;
}

LivenessEnv analyze_main(const Program& p, AnnotationStore& store) {
  return xe_analyze(p.main, SymbolicSet::sigma_pgm(), {}, store);
}

std::string format_equations(const XfEquationSet& eqs) {
  std::string out;
  for (const auto& [key, rhs] : eqs) {
    out += "xf[" + key.str() + "](σ) = " + rhs.str() + "\n";
  }
  return out;
}

SymbolicAnalysis analyze_program(const Program& p) {
  SymbolicAnalysis a;
  a.equations = xf_derive_equations(p, a.store);
  a.main_env = analyze_main(p, a.store);
  return a;
}

}  // namespace heaplive
