// Command-line front end for the heap liveness analyzer.

#include <iostream>

#include <CLI11.hpp>

#include "heaplive/pipeline.hpp"

int main(int argc, char** argv) {
  heaplive::RunConfig cfg;
  std::string query;
  std::string dot_dir;
  std::string json_out;

  CLI::App app{"Static heap liveness analysis for a first-order list language"};
  app.add_option("input", cfg.input, "Program source file")->required();
  app.add_flag("--dump-equations", cfg.dump_equations, "Print the transfer equations of every function argument");
  app.add_flag("--dump-annotations", cfg.dump_annotations, "Print the symbolic liveness environment at every point");
  app.add_flag("--dump-grammar", cfg.dump_grammar, "Print the liveness grammar");
  app.add_option("--emit-dot", dot_dir, "Write one Graphviz file per (point, variable) into DIR");
  app.add_option("--query", query, "Membership query POINT:VAR:PATTERN, prints LIVE or DEAD");
  app.add_flag("--nullify-report", cfg.nullify_report, "List nullification candidates");
  app.add_option("--depth", cfg.depth, "Pattern length bound for --nullify-report")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--trace", cfg.trace, "Run the program and print its link-use trace");
  app.add_flag("--check-soundness", cfg.check_soundness,
               "Run the program and check dynamic live paths against the automata");
  app.add_option("--json-out", json_out, "Write a JSON report");

  try {
    app.parse(argc, argv);
    if (!dot_dir.empty()) cfg.emit_dot_dir = dot_dir;
    if (!json_out.empty()) cfg.json_out = json_out;
    if (!query.empty()) cfg.query = heaplive::parse_query(query);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const heaplive::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return heaplive::run_pipeline(cfg, std::cout, std::cerr);
}
