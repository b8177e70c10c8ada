#include "skelpot/cli/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace skelpot;
using cli::ExitCode;
using cli::json;

namespace {

constexpr const char *kBuiltinPrefix = "builtin:";

json load_scenario(const std::string &source) {
  if (source.rfind(kBuiltinPrefix, 0) == 0) {
    const std::string name = source.substr(std::string(kBuiltinPrefix).size());
    const auto &table = cli::builtin_scenarios();
    auto it = table.find(name);
    if (it == table.end())
      throw io::SchemaError("no built-in scenario named \"" + name + "\"");
    return it->second;
  }
  std::ifstream in(source);
  if (!in)
    throw io::SchemaError("cannot read scenario file \"" + source + "\"");
  return json::parse(in);
}

std::size_t lp_cap_from_env() {
  const char *raw = std::getenv("SKELPOT_MAX_LP_VARS");
  if (raw == nullptr || *raw == '\0')
    return 512;
  std::string s(raw);
  if (!std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      s.size() > 9)
    throw io::SchemaError("SKELPOT_MAX_LP_VARS must be a non-negative integer, got \"" + s + "\"");
  return static_cast<std::size_t>(std::stoul(s));
}

void write_file(const fs::path &path, const std::string &body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
}

int fail(const std::exception &e) {
  std::cerr << cli::error_json(e).dump() << '\n';
  return static_cast<int>(cli::classify(e));
}

int run(const std::string &source, const std::string &out_dir, const std::string &bbox,
        const std::string &format) {
  try {
    cli::RunOptions opts;
    opts.bbox = parse_rat(bbox);
    if (opts.bbox <= 0)
      throw io::SchemaError("--bbox must be positive");
    opts.max_lp_vars = lp_cap_from_env();
    const json scenario = load_scenario(source);
    const cli::RunOutput out = cli::run_scenario(scenario, opts);

    fs::create_directories(out_dir);
    std::vector<std::string> written;
    if (format != "svg") {
      write_file(fs::path(out_dir) / "result.json", out.result.dump(2) + "\n");
      written.push_back("result.json");
    }
    if (format != "json")
      for (const auto &[name, doc] : out.svgs) {
        write_file(fs::path(out_dir) / name, doc);
        written.push_back(name);
      }
    for (const auto &w : written)
      std::cout << (fs::path(out_dir) / w).string() << '\n';
    return static_cast<int>(ExitCode::Ok);
  } catch (const std::exception &e) {
    return fail(e);
  }
}

int list_scenarios() {
  for (const auto &[name, s] : cli::builtin_scenarios())
    std::cout << kBuiltinPrefix << name << '\t' << s["kind"].get<std::string>() << '\n';
  return static_cast<int>(ExitCode::Ok);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact envelopes, Monge-Ampere measures, skeleton retractions and monomial test ideals"};
  app.require_subcommand(1);

  std::string source, out_dir = ".", bbox = "3", format = "both";
  auto *run_cmd = app.add_subcommand("run", "Run a scenario file (or builtin:NAME)");
  run_cmd->add_option("file", source, "Scenario JSON file or builtin:NAME")->required();
  run_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run_cmd->add_option("--bbox", bbox, "Half-width of the SVG viewport, a rational")
      ->capture_default_str();
  run_cmd->add_option("--format", format, "Outputs to write")
      ->check(CLI::IsMember({"json", "svg", "both"}))
      ->capture_default_str();
  auto *list_cmd = app.add_subcommand("list-scenarios", "List the built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0)
      return app.exit(e);
    std::cerr << json{{"error",
                       {{"code", static_cast<int>(ExitCode::Validation)},
                        {"category", "validation"},
                        {"message", e.what()}}}}
                     .dump()
              << '\n';
    return static_cast<int>(ExitCode::Validation);
  }
  if (*list_cmd)
    return list_scenarios();
  return run(source, out_dir, bbox, format);
}
