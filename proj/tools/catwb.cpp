// catwb COMMAND FILE [TERM...]

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "catwb/cli/commands.hpp"

namespace cli = catwb::cli;

int main(int argc, char **argv) {
  CLI::App app{"Reflect finite presheaves into product-preserving ones"};

  std::string command, file;
  std::vector<std::string> terms;
  cli::Flags flags;
  std::string engine = "nbe", format = "text";

  std::string commands;
  for (const auto &c : cli::commandNames())
    commands += (commands.empty() ? "" : ", ") + c;
  app.add_option("command", command, "One of: " + commands)
      ->required()
      ->check(CLI::IsMember(cli::commandNames()));
  app.add_option("file", file, ".cat document, or - for stdin")->required();
  app.add_option("terms", terms, "TERM operands of normalize and equal");
  app.add_option("--budget-size", flags.budgetSize, "Largest term size explored")
      ->check(CLI::Range(1, 64));
  app.add_option("--budget-iters", flags.budgetIters, "Merge/iteration budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--engine", engine, "nbe or saturation")
      ->check(CLI::IsMember({"nbe", "saturation"}));
  app.add_option("--format", format, "text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--seed", flags.seed, "Seed for sampled terms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return cli::kUsageExit;
  }
  flags.engine = engine == "saturation" ? catwb::completion::EngineMode::Saturation
                                        : catwb::completion::EngineMode::Nbe;
  flags.format = format == "structured" ? cli::Flags::Format::Structured : cli::Flags::Format::Text;

  std::stringstream text;
  if (file == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      std::cerr << "catwb: cannot read " << file << "\n";
      return cli::kUsageExit;
    }
    text << in.rdbuf();
  }

  try {
    auto rep = cli::runSource(command, text.str(), file, terms, flags);
    std::cout << rep.render();
    return rep.exitCode();
  } catch (const cli::UsageError &e) {
    std::cerr << "catwb: " << e.what() << "\n";
    return cli::kUsageExit;
  }
}
