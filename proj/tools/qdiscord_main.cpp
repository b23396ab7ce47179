/**
 * This code is part of qdiscord.
 *
 * This code is licensed under the Apache License, Version 2.0. You may obtain
 * a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <iostream>

#include "CLI11.hpp"
#include "qdiscord/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"discord lower bounds via broadcast-fidelity semidefinite programs"};
  app.require_subcommand(1);

  std::string run_config, validate_config, csv_path;
  CLI::App* run = app.add_subcommand("run", "solve a sweep described by a config file");
  run->add_option("config", run_config, "config file")->required();
  CLI::App* val = app.add_subcommand("validate", "check a config file without solving");
  val->add_option("config", validate_config, "config file")->required();
  CLI::App* sum = app.add_subcommand("summarize", "per-level statistics of a result CSV");
  sum->add_option("csv", csv_path, "result CSV produced by run")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      qdiscord::ExperimentConfig config = qdiscord::parse_config_file(run_config);
      return qdiscord::run_experiment(config, std::cout);
    }
    if (val->parsed()) {
      qdiscord::ExperimentConfig config = qdiscord::parse_config_file(validate_config);
      std::vector<std::string> diags = qdiscord::validate(config);
      for (const std::string& d : diags) std::cout << d << "\n";
      bool hard = false;
      for (const std::string& d : diags)
        if (d.find("note ") == std::string::npos) hard = true;
      if (!hard) std::cout << "config ok\n";
      return hard ? 1 : 0;
    }
    if (sum->parsed()) {
      auto rows = qdiscord::read_csv_file(csv_path);
      auto table = qdiscord::summarize(rows);
      qdiscord::print_summary(std::cout, table);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
