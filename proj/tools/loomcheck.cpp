// Command-line front end: load a program, run each query through the
// analyzer, emit verdict lines and optional trace/DOT/JSON renderings.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loomcheck/engine.hpp"
#include "loomcheck/export.hpp"
#include "loomcheck/loopcheck.hpp"
#include "loomcheck/parser.hpp"

namespace {

int severity(const loomcheck::Verdict& v) {
  using loomcheck::Classification;
  if (v.predicted()) return 2;
  if (v.budget_exhausted()) return 3;
  if (*v.terminated() == Classification::Flounders) return 4;
  return 0;
}

std::string dot_path_for(const std::string& base, std::size_t index,
                         std::size_t total) {
  if (total <= 1) return base;
  auto dot = base.find_last_of('.');
  if (dot == std::string::npos || dot == 0)
    return base + ".q" + std::to_string(index);
  return base.substr(0, dot) + ".q" + std::to_string(index) + base.substr(dot);
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "loomcheck - runs logic-program queries by building SLDNF trees with\n"
      "ancestor lists and predicts non-termination from chains of loop goals"};

  std::string program_path;
  std::vector<std::string> query_texts;
  std::string query_file;
  std::uint64_t budget = loomcheck::kDefaultBudget;
  std::size_t threshold = loomcheck::kDefaultThreshold;
  bool trace = false;
  std::string dot_path;
  std::string json_path;

  app.add_option("program", program_path, "program file (one clause per '.')")
      ->required();
  app.add_option("--query", query_texts, "query atom (repeatable)");
  app.add_option("--query-file", query_file, "file with one query atom per line");
  app.add_option("--budget", budget, "expansion budget per query")
      ->envname("LOOMCHECK_BUDGET")
      ->check(CLI::Range(std::uint64_t(1), std::uint64_t(-1)))
      ->capture_default_str();
  app.add_option("--threshold", threshold,
                 "loop-goal chain length that triggers a prediction")
      ->check(CLI::Range(std::size_t(2), std::size_t(-1)))
      ->capture_default_str();
  app.add_flag("--trace", trace, "print one line per expansion");
  app.add_option("--dot", dot_path, "write the forest as Graphviz DOT");
  app.add_option("--json", json_path, "write verdict records as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::ifstream in(program_path, std::ios::binary);
  if (!in) {
    std::cerr << "loomcheck: cannot open '" << program_path << "'\n";
    return 1;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  loomcheck::Program program;
  try {
    program = loomcheck::parse_program(buf.str());
  } catch (const loomcheck::ParseError& e) {
    std::cerr << "loomcheck: " << program_path << ": " << e.what() << "\n";
    return 1;
  }

  if (!query_file.empty()) {
    std::ifstream qf(query_file);
    if (!qf) {
      std::cerr << "loomcheck: cannot open '" << query_file << "'\n";
      return 1;
    }
    std::string line;
    while (std::getline(qf, line)) {
      auto begin = line.find_first_not_of(" \t\r");
      if (begin == std::string::npos || line[begin] == '%') continue;
      query_texts.push_back(line);
    }
  }
  if (query_texts.empty()) {
    std::cerr << "loomcheck: no queries given (use --query or --query-file)\n";
    return 1;
  }

  std::vector<loomcheck::Atom> queries;
  for (const auto& text : query_texts) {
    try {
      queries.push_back(loomcheck::parse_query(text));
    } catch (const loomcheck::ParseError& e) {
      std::cerr << "loomcheck: query '" << text << "': " << e.what() << "\n";
      return 1;
    }
  }

  nlohmann::json records = nlohmann::json::array();
  int exit_code = 0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const loomcheck::Atom& query = queries[i];
    loomcheck::Verdict verdict =
        loomcheck::predict(program, query, budget, threshold);

    if (trace || !dot_path.empty()) {
      // re-run the plain engine up to the point the predictor stopped so the
      // renderings show exactly the forest the verdict was drawn from
      loomcheck::DerivationForest forest = loomcheck::run(
          program, query, std::max<std::uint64_t>(verdict.expansions_used, 1));
      if (trace) std::cout << loomcheck::render_trace(forest);
      if (!dot_path.empty()) {
        std::string path = dot_path_for(dot_path, i, queries.size());
        if (!write_file(path, loomcheck::render_dot(forest))) {
          std::cerr << "loomcheck: cannot write '" << path << "'\n";
          return 1;
        }
      }
    }

    std::cout << loomcheck::verdict_line(query, verdict) << "\n";
    records.push_back(
        loomcheck::verdict_json(query, verdict, budget, threshold));
    exit_code = std::max(exit_code, severity(verdict));
  }

  if (!json_path.empty()) {
    if (!write_file(json_path, records.dump(2) + "\n")) {
      std::cerr << "loomcheck: cannot write '" << json_path << "'\n";
      return 1;
    }
  }
  return exit_code;
}
