#pragma once

// The subcommands of the catwb driver, as library calls.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "catwb/cli/dsl.hpp"
#include "catwb/cli/report.hpp"

namespace catwb::cli {

/// A bad command line: unknown command, missing or malformed arguments, or
/// a document without what the command needs. Exit code 64.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

constexpr int kUsageExit = 64;

/// validate, yoneda-check, counterexample, build-theory, normalize, equal,
/// adjunction-check, lambek-demo, eqlz-demo.
const std::vector<std::string> &commandNames();

/// `args` are the TERM operands of normalize and equal; without them the
/// document's query blocks are run.
Report run(const std::string &command, const Workspace &ws, const std::vector<std::string> &args,
           const Flags &flags, const std::string &source = "");

/// Parses and analyzes `text` first. A document with diagnostics yields a
/// report with one failing `parse` check listing them.
Report runSource(const std::string &command, std::string_view text, const std::string &source,
                 const std::vector<std::string> &args, const Flags &flags);

} // namespace catwb::cli
