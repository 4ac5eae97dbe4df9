#include "heaplive/interpreter.hpp"

#include <unordered_map>

namespace heaplive {

std::string TraceEvent::str() const {
  if (kind == Kind::Visit) return "visit p" + std::to_string(point) + " @" + std::to_string(step);
  return "use " + via.str() + " @" + std::to_string(step);
}

std::string Trace::dump() const {
  std::string out;
  for (const auto& e : events) out += e.str() + "\n";
  return out;
}

namespace {

struct Binding {
  Value value;
  bool transparent = false;  // parameters keep the caller's origin
};

using Env = std::unordered_map<std::string, Binding>;

class Evaluator {
 public:
  Evaluator(const Program& p, int max_steps) : p_(p), max_steps_(max_steps) {}

  Evaluation run() {
    Env env;
    Value result = eval(p_.main, env);
    walk_result(result);
    return {result, std::move(trace_), std::move(heap_)};
  }

 private:
  int tick() {
    if (++step_ > max_steps_) throw RuntimeFault("step limit exceeded");
    return step_;
  }

  int visit(const Expr& e, const Env& env) {
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Visit;
    ev.step = tick();
    ev.point = e.point;
    for (const auto& [name, b] : env) ev.env[name] = b.value.node;
    trace_.events.push_back(std::move(ev));
    return step_;
  }

  void use(const Value& v) {
    if (!v.origin) return;
    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Use;
    ev.step = tick();
    ev.via = v.origin->path;
    ev.root_step = v.origin->root_step;
    ev.node = v.node;
    trace_.events.push_back(std::move(ev));
  }

  Value alloc_num(std::int64_t n) {
    HeapNode node{static_cast<NodeId>(heap_.size()), HeapNode::Kind::Num, n, {}};
    heap_.push_back(node);
    Value v;
    v.kind = Value::Kind::Num;
    v.num = n;
    v.node = node.id;
    return v;
  }

  Value alloc_nil() {
    HeapNode node{static_cast<NodeId>(heap_.size()), HeapNode::Kind::Nil, 0, {}};
    heap_.push_back(node);
    Value v;
    v.kind = Value::Kind::Nil;
    v.node = node.id;
    return v;
  }

  Value alloc_pair(Value car, Value cdr) {
    HeapNode node{static_cast<NodeId>(heap_.size()), HeapNode::Kind::Pair, 0, {car, cdr}};
    heap_.push_back(node);
    Value v;
    v.kind = Value::Kind::Pair;
    v.node = node.id;
    return v;
  }

  static Value boolean(bool b) {
    Value v;
    v.kind = Value::Kind::Bool;
    v.truth = b;
    return v;
  }

  // The value stored in field `which` of a pair, reached through `via`.
  Value field(const Value& pair, int which) {
    Value child = heap_[pair.node].children[which];
    if (pair.origin) {
      Origin o = *pair.origin;
      o.path.pattern.push_back(which == 0 ? Symbol::Zero : Symbol::One);
      child.origin = o;
    }
    return child;
  }

  std::string where(const Expr& e) const {
    return " at " + std::to_string(e.loc.line) + ":" + std::to_string(e.loc.column);
  }

  Value eval(const Expr& e, const Env& env) {
    int here = visit(e, env);
    switch (e.kind) {
      case ExprKind::Const: return alloc_num(e.value);
      case ExprKind::Nil: return alloc_nil();
      case ExprKind::Var: {
        const Binding& b = env.at(e.name);
        Value v = b.value;
        if (!b.transparent) v.origin = Origin{{e.name, AccessPattern{}}, here};
        return v;
      }
      case ExprKind::Prim: return eval_prim(e, env);
      case ExprKind::If: {
        Value c = eval(e.args[0], env);
        if (c.kind != Value::Kind::Bool) throw RuntimeFault("if condition is not a boolean" + where(e));
        return eval(e.args[c.truth ? 1 : 2], env);
      }
      case ExprKind::Let: {
        Value bound = eval(e.args[0], env);
        bound.origin.reset();
        Env inner = env;
        inner[e.name] = Binding{bound, false};
        return eval(e.args[1], inner);
      }
      case ExprKind::Call: {
        const FunctionDef* f = p_.find(e.name);
        std::vector<Value> args;
        for (const auto& a : e.args) args.push_back(eval(a, env));
        Env callee;
        for (std::size_t i = 0; i < args.size(); ++i) callee[f->params[i]] = Binding{args[i], true};
        return eval(f->body, callee);
      }
    }
    return {};
  }

  Value eval_prim(const Expr& e, const Env& env) {
    std::vector<Value> a;
    for (const auto& arg : e.args) a.push_back(eval(arg, env));
    switch (e.prim) {
      case Primitive::Car:
      case Primitive::Cdr:
        use(a[0]);
        if (a[0].kind != Value::Kind::Pair) {
          throw RuntimeFault(std::string(primitive_name(e.prim)) + " of a non-pair" + where(e));
        }
        return field(a[0], e.prim == Primitive::Car ? 0 : 1);
      case Primitive::Cons: return alloc_pair(a[0], a[1]);
      case Primitive::IsNull:
        use(a[0]);
        return boolean(a[0].kind == Value::Kind::Nil);
      case Primitive::IsPair:
        use(a[0]);
        return boolean(a[0].kind == Value::Kind::Pair);
      case Primitive::Plus:
        use(a[0]);
        use(a[1]);
        if (a[0].kind != Value::Kind::Num || a[1].kind != Value::Kind::Num) {
          throw RuntimeFault("+ of a non-number" + where(e));
        }
        return alloc_num(a[0].num + a[1].num);
    }
    return {};
  }

  void walk_result(const Value& v) {
    use(v);
    if (v.kind != Value::Kind::Pair) return;
    walk_result(field(v, 0));
    walk_result(field(v, 1));
  }

  const Program& p_;
  int max_steps_;
  int step_ = 0;
  Trace trace_;
  std::vector<HeapNode> heap_;
};

}  // namespace

Evaluation evaluate_program(const Program& p, int max_steps) {
  return Evaluator(p, max_steps).run();
}

std::string render_value(const Evaluation& ev, const Value& v) {
  switch (v.kind) {
    case Value::Kind::Num: return std::to_string(v.num);
    case Value::Kind::Bool: return v.truth ? "#t" : "#f";
    case Value::Kind::Nil: return "Nil";
    case Value::Kind::Pair: {
      const auto& node = ev.heap[v.node];
      return "(cons " + render_value(ev, node.children[0]) + " " +
             render_value(ev, node.children[1]) + ")";
    }
  }
  return "?";
}

int visit_count(const Trace& t, ProgramPoint pi) {
  int n = 0;
  for (const auto& e : t.events) {
    if (e.kind == TraceEvent::Kind::Visit && e.point == pi) ++n;
  }
  return n;
}

std::set<RootedPath> collect_dynamic_live_paths(const Trace& t, ProgramPoint pi) {
  const TraceEvent* at = nullptr;
  for (const auto& e : t.events) {
    if (e.kind != TraceEvent::Kind::Visit || e.point != pi) continue;
    if (at) throw std::invalid_argument("point " + std::to_string(pi) + " visited more than once");
    at = &e;
  }
  if (!at) throw std::invalid_argument("point " + std::to_string(pi) + " not visited");
  std::set<RootedPath> out;
  for (const auto& e : t.events) {
    if (e.kind != TraceEvent::Kind::Use || e.root_step < at->step) continue;
    if (!at->env.contains(e.via.var)) continue;
    AccessPattern prefix;
    out.insert({e.via.var, prefix});
    for (Symbol s : e.via.pattern.symbols()) {
      prefix.push_back(s);
      out.insert({e.via.var, prefix});
    }
  }
  return out;
}

SoundnessReport check_soundness(const AutomataStore& automata, const Trace& t,
                                const std::vector<ProgramPoint>& points) {
  SoundnessReport r;
  for (ProgramPoint pi : points) {
    if (visit_count(t, pi) != 1) {
      r.skipped.push_back(pi);
      continue;
    }
    r.checked.push_back(pi);
    for (const auto& path : collect_dynamic_live_paths(t, pi)) {
      ++r.paths_checked;
      const Nfa* n = automata.find(pi, path.var);
      if (!n || !accepts(*n, path.pattern)) r.violations.push_back({pi, path});
    }
  }
  return r;
}

}  // namespace heaplive
