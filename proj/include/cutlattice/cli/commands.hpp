#pragma once

#include <iosfwd>
#include <string>

#include "cutlattice/model.hpp"
#include "cutlattice/traceio.hpp"

namespace cutlattice::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

/// A trace read from disk, named by its `name=` header or the file stem.
struct LoadedTrace {
  std::string name;
  TraceDocument document;
};

/// Throws InputError if the file cannot be read or does not parse.
LoadedTrace load_trace(const std::string& path);

/// Entry point for `gen | partition | traverse | verify | bench`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cutlattice::cli
