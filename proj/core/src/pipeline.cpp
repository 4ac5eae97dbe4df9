#include "heaplive/pipeline.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "heaplive/interpreter.hpp"
#include "heaplive/nullify.hpp"

namespace heaplive {

Analysis analyze(Program p) {
  Analysis a;
  a.program = std::move(p);
  a.symbolic = analyze_program(a.program);
  a.constraints = decompose_equations(a.symbolic.equations);
  a.grammar = eliminate_useless_nonterminals(build_grammar(a.constraints, a.symbolic.store, a.program));
  a.approximated = approximate_strongly_regular(a.grammar);
  a.automata.scopes = main_scopes(a.program);
  for (const auto& [pi, scope] : a.automata.scopes) {
    const LivenessEnv* env = a.symbolic.store.find(pi);
    if (!env) continue;
    for (const auto& [v, s] : *env) {
      a.automata.automata[pi].emplace(v, liveness_automaton(a.approximated, Nonterminal::s_point(pi, v)));
    }
  }
  return a;
}

Analysis analyze_source(std::string_view text) { return analyze(load_program(text)); }

Query parse_query(std::string_view text) {
  auto c1 = text.find(':');
  auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw UsageError("query must look like POINT:VAR:PATTERN, got '" + std::string(text) + "'");
  }
  Query q;
  auto num = text.substr(0, c1);
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), q.point);
  if (ec != std::errc() || ptr != num.data() + num.size()) {
    throw UsageError("bad program point in query: '" + std::string(num) + "'");
  }
  q.var = std::string(text.substr(c1 + 1, c2 - c1 - 1));
  q.pattern = std::string(text.substr(c2 + 1));
  if (q.var.empty()) throw UsageError("empty variable name in query");
  return q;
}

bool RunConfig::any_action() const {
  return dump_equations || dump_grammar || dump_annotations || emit_dot_dir || query ||
         nullify_report || trace || check_soundness || json_out;
}

namespace {

AutomatonSummary summarize(const std::string& name, const Nfa& n) {
  return {name, n.states().size(), n.edges().size(), n.finals().size()};
}

const Nfa& automaton_or_empty(const AutomataStore& s, ProgramPoint pi, const std::string& v) {
  static const Nfa empty;
  const Nfa* n = s.find(pi, v);
  return n ? *n : empty;
}

}  // namespace

AnalysisReport build_report(const Analysis& a, const RunConfig& cfg) {
  AnalysisReport r;
  for (const auto& [pi, scope] : a.automata.scopes) {
    PointSummary ps{pi, {}};
    for (const auto& v : scope) ps.vars.push_back(summarize(v, automaton_or_empty(a.automata, pi, v)));
    r.points.push_back(std::move(ps));
  }
  for (const auto& [key, rhs] : a.symbolic.equations) r.equations.push_back({key.fn, key.index, rhs.str()});
  if (cfg.nullify_report) {
    for (const auto& [pi, scope] : a.automata.scopes) {
      for (const auto& c : nullification_candidates(a.automata, pi, cfg.depth)) {
        r.candidates.push_back({c.point, c.path.var, c.path.pattern.str(), c.status});
      }
    }
  }
  if (cfg.check_soundness) {
    Evaluation ev = evaluate_program(a.program);
    SoundnessReport s = check_soundness(a.automata, ev.trace, main_points(a.program));
    SoundnessSummary sum{s.checked, s.skipped, s.paths_checked, {}};
    for (const auto& v : s.violations) {
      sum.violations.push_back("pi=" + std::to_string(v.point) + " " + v.path.str());
    }
    r.soundness = std::move(sum);
  }
  return r;
}

using nlohmann::ordered_json;

std::string report_to_json(const AnalysisReport& r) {
  ordered_json j;
  j["points"] = ordered_json::array();
  for (const auto& p : r.points) {
    ordered_json vars = ordered_json::array();
    for (const auto& v : p.vars) {
      vars.push_back({{"name", v.name}, {"states", v.states}, {"edges", v.edges}, {"finals", v.finals}});
    }
    j["points"].push_back({{"pi", p.pi}, {"vars", std::move(vars)}});
  }
  j["equations"] = ordered_json::array();
  for (const auto& e : r.equations) {
    j["equations"].push_back({{"fn", e.fn}, {"index", e.index}, {"rhs", e.rhs}});
  }
  j["candidates"] = ordered_json::array();
  for (const auto& c : r.candidates) {
    j["candidates"].push_back(
        {{"pi", c.pi}, {"var", c.var}, {"pattern", c.pattern}, {"status", c.status}});
  }
  if (r.soundness) {
    const auto& s = *r.soundness;
    j["soundness"] = {{"checked", s.checked},
                      {"skipped", s.skipped},
                      {"paths", s.paths},
                      {"violations", s.violations}};
  } else {
    j["soundness"] = nullptr;
  }
  return j.dump(2) + "\n";
}

AnalysisReport report_from_json(std::string_view text) {
  AnalysisReport r;
  try {
    auto j = ordered_json::parse(text);
    for (const auto& p : j.at("points")) {
      PointSummary ps{p.at("pi").get<ProgramPoint>(), {}};
      for (const auto& v : p.at("vars")) {
        ps.vars.push_back({v.at("name").get<std::string>(), v.at("states").get<std::size_t>(),
                           v.at("edges").get<std::size_t>(), v.at("finals").get<std::size_t>()});
      }
      r.points.push_back(std::move(ps));
    }
    for (const auto& e : j.at("equations")) {
      r.equations.push_back(
          {e.at("fn").get<std::string>(), e.at("index").get<int>(), e.at("rhs").get<std::string>()});
    }
    for (const auto& c : j.at("candidates")) {
      r.candidates.push_back({c.at("pi").get<ProgramPoint>(), c.at("var").get<std::string>(),
                              c.at("pattern").get<std::string>(), c.at("status").get<std::string>()});
    }
    if (const auto& s = j.at("soundness"); !s.is_null()) {
      r.soundness = SoundnessSummary{s.at("checked").get<std::vector<ProgramPoint>>(),
                                     s.at("skipped").get<std::vector<ProgramPoint>>(),
                                     s.at("paths").get<std::size_t>(),
                                     s.at("violations").get<std::vector<std::string>>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
  return r;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
}

void run_query(const Analysis& a, const Query& q, std::ostream& out) {
  if (!a.automata.in_scope(q.point, q.var)) {
    throw UsageError("unknown query target: no variable '" + q.var + "' at program point " +
                     std::to_string(q.point));
  }
  AccessPattern alpha;
  try {
    alpha = parse_canonical_query(q.pattern);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Nfa* n = a.automata.find(q.point, q.var);
  out << ((n && accepts(*n, alpha)) ? "LIVE" : "DEAD") << "\n";
}

}  // namespace

int run_pipeline(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!cfg.any_action()) throw UsageError("no output action selected");
    Analysis a = analyze(load_program(read_file(cfg.input)));

    if (cfg.dump_equations) out << format_equations(a.symbolic.equations);
    if (cfg.dump_annotations) {
      for (const auto& [pi, env] : a.symbolic.store.entries()) {
        out << "p" << pi << ": " << env_str(env) << "\n";
      }
    }
    if (cfg.dump_grammar) out << a.grammar.dump();
    if (cfg.emit_dot_dir) {
      std::filesystem::path dir(*cfg.emit_dot_dir);
      std::filesystem::create_directories(dir);
      for (const auto& [pi, scope] : a.automata.scopes) {
        for (const auto& v : scope) {
          std::string name = "p" + std::to_string(pi) + "_" + v;
          write_file(dir / (name + ".dot"), to_dot(automaton_or_empty(a.automata, pi, v), name));
        }
      }
    }
    if (cfg.query) run_query(a, *cfg.query, out);

    AnalysisReport report = build_report(a, cfg);
    if (cfg.nullify_report) {
      for (const auto& c : report.candidates) {
        out << "pi=" << c.pi << " " << c.var << "." << c.pattern << " [" << c.status << "]\n";
      }
    }
    if (cfg.trace) out << evaluate_program(a.program).trace.dump();
    if (report.soundness) {
      const auto& s = *report.soundness;
      out << "soundness: " << s.checked.size() << " points checked, " << s.skipped.size()
          << " skipped, " << s.paths << " paths, " << s.violations.size() << " violations\n";
      for (const auto& v : s.violations) out << "violation " << v << "\n";
    }
    if (cfg.json_out) write_file(*cfg.json_out, report_to_json(report));
    return 0;
  } catch (const ParseError& e) {
    err << cfg.input << ":" << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << cfg.input << ":" << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const RuntimeFault& e) {
    err << "runtime fault: " << e.what() << "\n";
    return 1;
  } catch (const AffineError& e) {
    err << "analysis fault: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "analysis fault: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace heaplive
