// Command-line front end: corrdyn run|validate|spectrum <config> [--out-dir DIR]

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "corrdyn/errors.hpp"
#include "corrdyn/runner.hpp"

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kParse = 2, kNumeric = 3, kSizeCap = 4 };

int fail(int code, const std::string& what) {
  // One line, so scripts can grep for the prefix.
  std::string line = what;
  for (char& c : line)
    if (c == '\n') c = ' ';
  std::cerr << "error: " << line << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlator-hierarchy dynamics of coupled spin-1/2 systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  auto add_command = [&](const char* name, const char* help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("config", config_path, "JSON run configuration")->required();
    cmd->add_option("--out-dir", out_dir, "Directory for result files");
    return cmd;
  };
  CLI::App* run = add_command("run", "Run every task listed in the config");
  CLI::App* validate = add_command("validate", "Compare the hierarchy against exact evolution");
  CLI::App* spectrum = add_command("spectrum", "Generator frequencies and broadened spectral density");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kParse, e.what());
  }

  try {
    const corrdyn::RunConfig cfg = corrdyn::load_config(config_path);
    std::vector<std::filesystem::path> written;
    if (run->parsed())
      written = corrdyn::run(cfg, out_dir);
    else if (validate->parsed())
      written = corrdyn::run_tasks(cfg, {corrdyn::Task::Validate}, out_dir);
    else if (spectrum->parsed())
      written = corrdyn::run_tasks(cfg, {corrdyn::Task::Spectrum}, out_dir);
    for (const auto& p : written) std::cout << p.string() << "\n";
    return kOk;
  } catch (const corrdyn::ParseError& e) {
    return fail(kParse, e.what());
  } catch (const corrdyn::NumericError& e) {
    return fail(kNumeric, e.what());
  } catch (const corrdyn::SizeLimitError& e) {
    return fail(kSizeCap, e.what());
  } catch (const std::exception& e) {
    return fail(kFailure, e.what());
  }
}
